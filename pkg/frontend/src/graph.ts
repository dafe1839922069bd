// View model for the neighborhood graph: nodes and edges merged from any
// number of /neighborhood responses, plus selection and pending-feedback
// bookkeeping. Merging is idempotent and every edge's endpoints are
// guaranteed present (endpoint nodes are synthesized from the edge when the
// payload didn't list them).

import { NeighborhoodDoc, StatementDoc, keyString, statementKey } from "./api.js";

export interface GraphNode {
  id: string;
  label: string;
  kind: string;
  x: number;
  y: number;
  vx: number;
  vy: number;
}

export interface GraphEdge {
  key: string;
  s: string;
  p: string;
  o: string;
  prov: string;
  predicateLabel: string;
  weight: number;
  derived: boolean;
}

export class GraphViewModel {
  readonly nodes = new Map<string, GraphNode>();
  readonly edges = new Map<string, GraphEdge>();
  selection: string | null = null;
  readonly pendingFeedback = new Set<string>();
  readonly expanded = new Set<string>();

  merge(doc: NeighborhoodDoc): void {
    for (const term of doc.terms) {
      this.ensureNode(term.id, term.label, term.kind);
    }
    for (const st of doc.statements) {
      this.ensureNode(st.s, st.s, "entity");
      this.ensureNode(st.o, st.o, "entity");
      const key = keyString(statementKey(st));
      this.edges.set(key, {
        key,
        s: st.s,
        p: st.p,
        o: st.o,
        prov: st.prov,
        predicateLabel: st.predicate_label ?? st.p,
        weight: st.weight,
        derived: st.derived ?? st.prov.startsWith("derived:"),
      });
    }
  }

  private ensureNode(id: string, label: string, kind: string): void {
    const existing = this.nodes.get(id);
    if (existing) {
      // a term listing carries the real label; prefer it over a synthesized one
      if (label !== id && existing.label === existing.id) existing.label = label;
      return;
    }
    // deterministic spiral placement keeps layout reproducible before forces run
    const n = this.nodes.size;
    const angle = n * 2.399963; // golden angle
    const radius = 30 + 18 * Math.sqrt(n);
    this.nodes.set(id, {
      id,
      label,
      kind,
      x: 300 + radius * Math.cos(angle),
      y: 220 + radius * Math.sin(angle),
      vx: 0,
      vy: 0,
    });
  }

  setWeight(key: string, weight: number): void {
    const edge = this.edges.get(key);
    if (edge) edge.weight = weight;
  }

  edgesOf(nodeId: string): GraphEdge[] {
    return [...this.edges.values()].filter((e) => e.s === nodeId || e.o === nodeId);
  }

  endpointsPresent(): boolean {
    return [...this.edges.values()].every((e) => this.nodes.has(e.s) && this.nodes.has(e.o));
  }
}

export function edgeFromStatement(st: StatementDoc): GraphEdge {
  const key = keyString(statementKey(st));
  return {
    key,
    s: st.s,
    p: st.p,
    o: st.o,
    prov: st.prov,
    predicateLabel: st.predicate_label ?? st.p,
    weight: st.weight,
    derived: st.derived ?? st.prov.startsWith("derived:"),
  };
}
