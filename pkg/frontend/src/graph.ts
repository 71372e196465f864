/**
 * SVG rendering of a topic's schema subgraph.
 *
 * Concepts are drawn as circles, predicates as triangles, and links as
 * arrows. Elements belonging to the query under execution get the
 * "highlight" class, which the stylesheet paints dark red. The highlight
 * set is exactly what the caller passes in, nothing is added.
 */

import type { TopicGraph } from "./api.js";
import type { QueryElements } from "./sparql.js";

const SVG_NS = "http://www.w3.org/2000/svg";
const WIDTH = 800;
const HEIGHT = 560;
const RADIUS = 230;
const NODE_RADIUS = 14;

interface Placed {
  x: number;
  y: number;
}

function layout(count: number): Placed[] {
  const cx = WIDTH / 2;
  const cy = HEIGHT / 2;
  const out: Placed[] = [];
  for (let i = 0; i < count; i += 1) {
    const angle = (2 * Math.PI * i) / Math.max(count, 1) - Math.PI / 2;
    out.push({ x: cx + RADIUS * Math.cos(angle), y: cy + RADIUS * Math.sin(angle) });
  }
  return out;
}

function svgElement(tag: string, attrs: Record<string, string>): SVGElement {
  const el = document.createElementNS(SVG_NS, tag) as SVGElement;
  for (const [key, value] of Object.entries(attrs)) {
    el.setAttribute(key, value);
  }
  return el;
}

function trianglePoints(x: number, y: number): string {
  const r = NODE_RADIUS + 2;
  const top = `${x},${y - r}`;
  const left = `${x - r * 0.87},${y + r * 0.5}`;
  const right = `${x + r * 0.87},${y + r * 0.5}`;
  return `${top} ${left} ${right}`;
}

export function renderTopicGraph(
  container: HTMLElement,
  graph: TopicGraph,
  highlight: QueryElements,
): void {
  container.textContent = "";
  if (graph.nodes.length === 0) {
    const empty = document.createElement("p");
    empty.className = "empty-state";
    empty.textContent = "This topic has no schema subgraph to draw.";
    container.appendChild(empty);
    return;
  }

  const svg = svgElement("svg", {
    viewBox: `0 0 ${WIDTH} ${HEIGHT}`,
    class: "topic-graph",
    role: "img",
  });

  const defs = svgElement("defs", {});
  const marker = svgElement("marker", {
    id: "arrow",
    viewBox: "0 0 8 8",
    refX: "7",
    refY: "4",
    markerWidth: "7",
    markerHeight: "7",
    orient: "auto-start-reverse",
  });
  marker.appendChild(svgElement("path", { d: "M0,0 L8,4 L0,8 z", class: "graph-arrowhead" }));
  defs.appendChild(marker);
  svg.appendChild(defs);

  const positions = new Map<string, Placed>();
  const placed = layout(graph.nodes.length);
  graph.nodes.forEach((node, i) => positions.set(node.id, placed[i]));

  for (const edge of graph.edges) {
    const from = positions.get(edge.source);
    const to = positions.get(edge.target);
    if (!from || !to) {
      continue;
    }
    const dx = to.x - from.x;
    const dy = to.y - from.y;
    const length = Math.hypot(dx, dy) || 1;
    const trim = NODE_RADIUS + 6;
    svg.appendChild(
      svgElement("line", {
        x1: String(from.x + (dx / length) * trim),
        y1: String(from.y + (dy / length) * trim),
        x2: String(to.x - (dx / length) * trim),
        y2: String(to.y - (dy / length) * trim),
        class: "graph-edge",
        "marker-end": "url(#arrow)",
        "data-count": String(edge.count),
      }),
    );
  }

  graph.nodes.forEach((node) => {
    const pos = positions.get(node.id)!;
    const highlighted =
      node.kind === "concept"
        ? highlight.concepts.has(node.id)
        : highlight.predicates.has(node.id);
    const classes = `node ${node.kind}${highlighted ? " highlight" : ""}`;
    const shape =
      node.kind === "concept"
        ? svgElement("circle", {
            cx: String(pos.x),
            cy: String(pos.y),
            r: String(NODE_RADIUS),
            class: classes,
          })
        : svgElement("polygon", {
            points: trianglePoints(pos.x, pos.y),
            class: classes,
          });
    shape.setAttribute("data-id", node.id);
    shape.setAttribute("data-kind", node.kind);
    svg.appendChild(shape);

    const label = svgElement("text", {
      x: String(pos.x),
      y: String(pos.y + NODE_RADIUS + 14),
      class: "node-label",
      "text-anchor": "middle",
    });
    label.textContent = node.label;
    svg.appendChild(label);
  });

  container.appendChild(svg);
}
