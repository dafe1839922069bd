// Explore view against intercepted neighborhood payloads: expansion merges
// subgraphs, derived edges are visually distinguished, and re-expanding a
// node adds nothing new.

import { describe, expect, it } from "vitest";

import { exploreView } from "../src/views/explore.js";
import { fakeApi, flush, ok } from "./helpers.js";

const ABACAVIR = {
  terms: [
    { id: "t:abacavir", label: "Abacavir", kind: "entity" },
    { id: "t:lipodystrophy", label: "Lipodystrophy", kind: "entity" },
  ],
  statements: [
    {
      s: "t:abacavir",
      p: "t:has_adverse_effect",
      o: "t:lipodystrophy",
      prov: "linked.nt",
      weight: 1.0,
      predicate_label: "has_adverse_effect",
      derived: false,
    },
    {
      s: "t:abacavir",
      p: "t:similarto",
      o: "t:zidovudine",
      prov: "derived:similarity",
      weight: 0.6,
      predicate_label: "similarTo",
      derived: true,
    },
  ],
};

const LIPO = {
  terms: [{ id: "t:hiv", label: "HIV", kind: "entity" }],
  statements: [
    { s: "t:lipodystrophy", p: "t:relatedto", o: "t:hiv", prov: "corpus:x", weight: 0.22, derived: false },
  ],
};

function responder(url: string): unknown {
  if (url.includes("t%3Aabacavir")) return ok(ABACAVIR);
  if (url.includes("t%3Alipodystrophy")) return ok(LIPO);
  return { ok: false, data: null, error: "unknown term", __status: 404 };
}

describe("explore view", () => {
  it("expanding the seed renders its neighborhood", async () => {
    const { api } = fakeApi(responder);
    const view = exploreView(api, "t:abacavir");
    document.body.replaceChildren(view.root);
    await flush();
    view.renderFrame();
    expect(view.graph.nodes.has("t:lipodystrophy")).toBe(true);
    const labels = [...view.root.querySelectorAll(".node-label")].map((n) => n.textContent);
    expect(labels).toContain("Lipodystrophy");
  });

  it("derived edges are visually distinguished from source edges", async () => {
    const { api } = fakeApi(responder);
    const view = exploreView(api, "t:abacavir");
    document.body.replaceChildren(view.root);
    await flush();
    view.renderFrame();
    const derived = view.root.querySelectorAll("line.edge-derived");
    const source = view.root.querySelectorAll("line.edge-source");
    expect(derived.length).toBe(1);
    expect(source.length).toBe(1);
  });

  it("expanding a neighbor merges its subgraph", async () => {
    const { api } = fakeApi(responder);
    const view = exploreView(api, "t:abacavir");
    await flush();
    await view.expand("t:lipodystrophy");
    expect(view.graph.nodes.has("t:hiv")).toBe(true);
    expect(view.graph.endpointsPresent()).toBe(true);
  });

  it("re-expanding an expanded node adds no duplicates", async () => {
    const { api, requests } = fakeApi(responder);
    const view = exploreView(api, "t:abacavir");
    await flush();
    const nodes = view.graph.nodes.size;
    const edges = view.graph.edges.size;
    await view.expand("t:abacavir");
    expect(view.graph.nodes.size).toBe(nodes);
    expect(view.graph.edges.size).toBe(edges);
    expect(requests.length).toBe(2); // one per expand call, none hidden
  });

  it("unknown terms render an inline notice", async () => {
    const { api } = fakeApi(responder);
    const view = exploreView(api, "t:abacavir");
    await flush();
    await view.expand("t:ghost");
    const notice = view.root.querySelector(".notice") as HTMLElement;
    expect(notice.className).not.toContain("hidden");
    expect(notice.textContent).toContain("unknown term");
  });
});
