// Clinician search view: free-text box + ranked result list. Results render
// in exactly the API's order with its numbers verbatim; an unknown-term 404
// shows a distinct notice, and a network failure shows a retry banner while
// preserving the query text.

import { ApiClient, ApiError, LatestGate, StatementDoc } from "../api.js";
import { clear, el } from "../dom.js";
import { renderNumber } from "../weights.js";
import { feedbackControl } from "./feedback.js";

export interface SearchViewOptions {
  onSelect?: (statement: StatementDoc) => void;
  limit?: number;
}

export function searchView(api: ApiClient, options: SearchViewOptions = {}): HTMLElement {
  const gate = new LatestGate();
  const input = el("input", {
    class: "search-input",
    type: "search",
    placeholder: "diseases, symptoms, drugs, genes...",
  }) as HTMLInputElement;
  const button = el("button", { class: "search-button" }, "Search");
  const notice = el("div", { class: "notice hidden" });
  const results = el("ol", { class: "search-results" });

  const showNotice = (kind: "unknown-term" | "network" | "none", message = "") => {
    notice.className = `notice ${kind === "none" ? "hidden" : kind}`;
    clear(notice);
    if (kind === "unknown-term") {
      notice.append(`No known term matches that query. (${message})`);
    } else if (kind === "network") {
      notice.append(
        `Service unreachable — your query is preserved. `,
        el("button", { class: "retry", onclick: () => void run() }, "retry"),
      );
    }
  };

  const run = async () => {
    const query = input.value.trim();
    if (!query) {
      showNotice("none");
      return; // input validation: no request for an empty query
    }
    try {
      const docs = await gate.run("search", () => api.search(query, options.limit ?? 10));
      if (docs === null) return; // stale response discarded
      showNotice("none");
      clear(results);
      for (const doc of docs) {
        results.append(resultRow(api, doc, options));
      }
    } catch (err) {
      if (err instanceof ApiError && err.isNoMatch) {
        clear(results);
        showNotice("unknown-term", err.message);
      } else {
        showNotice("network", String(err));
      }
    }
  };

  button.addEventListener("click", () => void run());
  input.addEventListener("keydown", (ev) => {
    if ((ev as KeyboardEvent).key === "Enter") void run();
  });

  return el(
    "section",
    { class: "search-view" },
    el("div", { class: "search-bar" }, input, button),
    notice,
    results,
  );
}

function resultRow(api: ApiClient, doc: StatementDoc, options: SearchViewOptions): HTMLElement {
  const triple = el(
    "span",
    { class: "triple" },
    el("span", { class: "subject" }, doc.s),
    " ",
    el("span", { class: "predicate" }, doc.p),
    " ",
    el("span", { class: "object" }, doc.o),
  );
  const relevance = el(
    "span",
    { class: "relevance", title: "relevance" },
    renderNumber(doc.relevance ?? doc.weight),
  );
  const row = el(
    "li",
    { class: "result" },
    triple,
    relevance,
    feedbackControl(api, doc),
    el("span", { class: "prov" }, doc.prov),
  );
  triple.addEventListener("click", () => options.onSelect?.(doc));
  return row;
}
