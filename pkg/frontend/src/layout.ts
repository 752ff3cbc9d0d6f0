// Force-directed placement. Runs synchronously for a fixed number of
// ticks so the result is deterministic, and respects per-vertex pinning:
// a pinned vertex keeps exactly the coordinates the user dragged it to.

import {
  forceCenter,
  forceCollide,
  forceLink,
  forceManyBody,
  forceSimulation,
} from "d3";
import { VertexPos } from "./session";

interface SimNode {
  id: string;
  x?: number;
  y?: number;
  fx?: number | null;
  fy?: number | null;
}

export interface LayoutGraph {
  vertices: string[];
  links: [string, string][];
}

export function runLayout(
  graph: LayoutGraph,
  positions: Map<string, VertexPos>,
  width: number,
  height: number,
  ticks = 200,
): void {
  const nodes: SimNode[] = graph.vertices.map((id) => {
    const pos = positions.get(id);
    const node: SimNode = { id };
    if (pos) {
      node.x = pos.x;
      node.y = pos.y;
      if (pos.pinned) {
        node.fx = pos.x;
        node.fy = pos.y;
      }
    }
    return node;
  });
  const links = graph.links
    .filter(([a, b]) => a !== b)
    .map(([source, target]) => ({ source, target }));

  const sim = forceSimulation(nodes)
    .force("charge", forceManyBody().strength(-380))
    .force(
      "link",
      forceLink(links)
        .id((node) => (node as SimNode).id)
        .distance(130),
    )
    .force("center", forceCenter(width / 2, height / 2))
    .force("collide", forceCollide(34))
    .stop();
  sim.tick(ticks);

  const margin = 30;
  for (const node of nodes) {
    const pinned = positions.get(node.id)?.pinned ?? false;
    const x = pinned
      ? (node.x as number)
      : Math.max(margin, Math.min(width - margin, node.x as number));
    const y = pinned
      ? (node.y as number)
      : Math.max(margin, Math.min(height - margin, node.y as number));
    positions.set(node.id, { x, y, pinned });
  }
}

export function pin(positions: Map<string, VertexPos>, id: string, x: number, y: number): void {
  positions.set(id, { x, y, pinned: true });
}

export function unpin(positions: Map<string, VertexPos>, id: string): void {
  const pos = positions.get(id);
  if (pos) positions.set(id, { ...pos, pinned: false });
}
