// Interactive neighborhood graph: click a node to expand it (fetch + merge
// its neighborhood), slide the radius, follow derived similarTo edges.
// Derived edges render dashed; edge thickness tracks weight; the selected
// edge gets a feedback control.

import { ApiClient, ApiError, StatementDoc } from "../api.js";
import { clear, el, svgEl } from "../dom.js";
import { GraphViewModel } from "../graph.js";
import { layoutStep } from "../layout.js";
import { edgeThickness } from "../weights.js";
import { feedbackControl } from "./feedback.js";

const WIDTH = 640;
const HEIGHT = 440;

export interface ExploreView {
  root: HTMLElement;
  graph: GraphViewModel;
  expand(termId: string): Promise<void>;
  renderFrame(): void;
}

export function exploreView(api: ApiClient, seedTerm: string): ExploreView {
  const graph = new GraphViewModel();
  const svg = svgEl("svg", {
    viewBox: `0 0 ${WIDTH} ${HEIGHT}`,
    class: "graph-canvas",
  });
  const edgeLayer = svgEl("g");
  const nodeLayer = svgEl("g");
  svg.append(edgeLayer, nodeLayer);
  const inline = el("div", { class: "notice hidden" });
  const detail = el("div", { class: "edge-detail" });
  const radiusInput = el("input", {
    type: "range",
    min: "1",
    max: "2",
    value: "1",
    class: "radius-slider",
  }) as HTMLInputElement;

  const radius = (): 1 | 2 => (radiusInput.value === "2" ? 2 : 1);

  async function expand(termId: string): Promise<void> {
    try {
      const doc = await api.neighborhood(termId, radius());
      graph.expanded.add(termId);
      graph.merge(doc);
      inline.className = "notice hidden";
      renderFrame();
    } catch (err) {
      inline.className = "notice unknown-term";
      clear(inline);
      inline.append(err instanceof ApiError ? err.message : String(err));
    }
  }

  function select(edgeKey: string): void {
    graph.selection = edgeKey;
    clear(detail);
    const edge = graph.edges.get(edgeKey);
    if (!edge) return;
    const doc: StatementDoc = {
      s: edge.s,
      p: edge.p,
      o: edge.o,
      prov: edge.prov,
      weight: edge.weight,
      predicate_label: edge.predicateLabel,
      derived: edge.derived,
    };
    detail.append(
      el("span", { class: "triple" }, `${edge.s} —${edge.predicateLabel}→ ${edge.o}`),
      feedbackControl(api, doc, {
        onWeight: (_st, weight) => {
          graph.setWeight(edgeKey, weight);
          renderFrame();
        },
      }),
    );
  }

  function renderFrame(): void {
    layoutStep(graph, WIDTH, HEIGHT);
    clear(edgeLayer);
    clear(nodeLayer);
    for (const edge of graph.edges.values()) {
      const a = graph.nodes.get(edge.s);
      const b = graph.nodes.get(edge.o);
      if (!a || !b) continue;
      const line = svgEl("line", {
        x1: String(a.x),
        y1: String(a.y),
        x2: String(b.x),
        y2: String(b.y),
        "stroke-width": String(edgeThickness(edge.weight)),
        class: `edge ${edge.derived ? "edge-derived" : "edge-source"}${
          graph.selection === edge.key ? " edge-selected" : ""
        }`,
      });
      line.addEventListener("click", () => select(edge.key));
      edgeLayer.append(line);
    }
    for (const node of graph.nodes.values()) {
      const g = svgEl("g", { class: `node kind-${node.kind}` });
      const circle = svgEl("circle", {
        cx: String(node.x),
        cy: String(node.y),
        r: graph.expanded.has(node.id) ? "9" : "7",
      });
      const text = svgEl("text", {
        x: String(node.x + 10),
        y: String(node.y + 4),
        class: "node-label",
      });
      text.textContent = node.label;
      g.append(circle, text);
      g.addEventListener("click", () => void expand(node.id));
      nodeLayer.append(g);
    }
  }

  const root = el(
    "section",
    { class: "explore-view" },
    el("div", { class: "explore-controls" }, el("label", {}, "radius "), radiusInput),
    inline,
    svg as unknown as HTMLElement,
    detail,
  );
  void expand(seedTerm);
  return { root, graph, expand, renderFrame };
}
