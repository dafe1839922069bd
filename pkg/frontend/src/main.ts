// Single-page wiring: hash routes #/search, #/explore/<termId>,
// #/hypothesis share one ApiClient against the configured service base URL.

import { ApiClient, StatementDoc } from "./api.js";
import { clear, el } from "./dom.js";
import { builderView } from "./views/builder.js";
import { exploreView } from "./views/explore.js";
import { searchView } from "./views/search.js";

declare global {
  interface Window {
    LHC_API_BASE?: string;
  }
}

export function mount(root: HTMLElement, api: ApiClient): void {
  const nav = el(
    "nav",
    { class: "top-nav" },
    el("a", { href: "#/search" }, "Search"),
    el("a", { href: "#/hypothesis" }, "Hypotheses"),
    el("span", { class: "health" }),
  );
  const outlet = el("main", { class: "outlet" });
  root.append(nav, outlet);

  const health = nav.querySelector(".health") as HTMLElement;
  api
    .health()
    .then((doc) => {
      health.textContent = `${doc.statements} statements, ${doc.terms} terms`;
    })
    .catch(() => {
      health.textContent = "service offline";
    });

  const openExplore = (statement: StatementDoc) => {
    window.location.hash = `#/explore/${encodeURIComponent(statement.s)}`;
  };

  let frameTimer: ReturnType<typeof setInterval> | null = null;

  const route = () => {
    if (frameTimer) {
      clearInterval(frameTimer);
      frameTimer = null;
    }
    clear(outlet);
    const hash = window.location.hash || "#/search";
    if (hash.startsWith("#/explore/")) {
      const termId = decodeURIComponent(hash.slice("#/explore/".length));
      const view = exploreView(api, termId);
      outlet.append(view.root);
      frameTimer = setInterval(() => view.renderFrame(), 40);
    } else if (hash.startsWith("#/hypothesis")) {
      outlet.append(builderView(api, openExplore).root);
    } else {
      outlet.append(searchView(api, { onSelect: openExplore }));
    }
  };

  window.addEventListener("hashchange", route);
  route();
}

if (typeof document !== "undefined" && document.getElementById("app")) {
  const base = window.LHC_API_BASE ?? "";
  mount(document.getElementById("app") as HTMLElement, new ApiClient(base));
}
