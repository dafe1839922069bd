// Small force-directed layout: spring attraction along edges, inverse-square
// repulsion between nodes, mild centering. One step per animation frame.

import { GraphViewModel } from "./graph.js";

const REPULSION = 12000;
const SPRING = 0.02;
const SPRING_LENGTH = 110;
const CENTERING = 0.01;
const DAMPING = 0.85;

export function layoutStep(graph: GraphViewModel, width: number, height: number): void {
  const nodes = [...graph.nodes.values()];
  for (let i = 0; i < nodes.length; i++) {
    for (let j = i + 1; j < nodes.length; j++) {
      const a = nodes[i];
      const b = nodes[j];
      const dx = a.x - b.x;
      const dy = a.y - b.y;
      const d2 = Math.max(dx * dx + dy * dy, 25);
      const force = REPULSION / d2;
      const d = Math.sqrt(d2);
      a.vx += (dx / d) * force * 0.01;
      a.vy += (dy / d) * force * 0.01;
      b.vx -= (dx / d) * force * 0.01;
      b.vy -= (dy / d) * force * 0.01;
    }
  }
  for (const edge of graph.edges.values()) {
    const a = graph.nodes.get(edge.s);
    const b = graph.nodes.get(edge.o);
    if (!a || !b) continue;
    const dx = b.x - a.x;
    const dy = b.y - a.y;
    const d = Math.max(Math.sqrt(dx * dx + dy * dy), 1);
    const stretch = (d - SPRING_LENGTH) * SPRING;
    a.vx += (dx / d) * stretch;
    a.vy += (dy / d) * stretch;
    b.vx -= (dx / d) * stretch;
    b.vy -= (dy / d) * stretch;
  }
  for (const node of nodes) {
    node.vx += (width / 2 - node.x) * CENTERING;
    node.vy += (height / 2 - node.y) * CENTERING;
    node.vx *= DAMPING;
    node.vy *= DAMPING;
    node.x += node.vx;
    node.y += node.vy;
    node.x = Math.max(20, Math.min(width - 20, node.x));
    node.y = Math.max(20, Math.min(height - 20, node.y));
  }
}
