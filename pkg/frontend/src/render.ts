// SVG rendering of the superquiver.  Styling rules:
//   even vertex   -> solid disk
//   odd vertex    -> disk with a cross through it
//   frozen vertex -> additionally boxed
//   multiplicity  -> arrow label "×k"
//   loops         -> self-arcs (odd vertices only)

import { Point } from "./layout";
import { QuiverState, VertexState } from "./api";

const SVG_NS = "http://www.w3.org/2000/svg";
const RADIUS = 16;

function el(tag: string, attrs: Record<string, string>): SVGElement {
  const node = document.createElementNS(SVG_NS, tag);
  for (const [key, value] of Object.entries(attrs)) {
    node.setAttribute(key, value);
  }
  return node;
}

function vertexGroup(v: VertexState, p: Point, mutable: boolean): SVGElement {
  const g = el("g", {
    class: `vertex ${v.parity}${v.frozen ? " frozen" : ""}${mutable ? " mutable" : ""}`,
    "data-label": v.label,
    transform: `translate(${p.x},${p.y})`,
  });
  if (v.frozen) {
    g.appendChild(
      el("rect", {
        x: String(-RADIUS - 4),
        y: String(-RADIUS - 4),
        width: String(2 * RADIUS + 8),
        height: String(2 * RADIUS + 8),
        fill: "none",
        stroke: "#555",
        "stroke-width": "1.5",
      }),
    );
  }
  g.appendChild(
    el("circle", {
      r: String(RADIUS),
      fill: v.parity === "even" ? "#3d6fb5" : "#fff",
      stroke: "#234",
      "stroke-width": "2",
    }),
  );
  if (v.parity === "odd") {
    const d = RADIUS * Math.SQRT1_2;
    for (const sign of [1, -1]) {
      g.appendChild(
        el("line", {
          x1: String(-d),
          y1: String(-d * sign),
          x2: String(d),
          y2: String(d * sign),
          stroke: "#234",
          "stroke-width": "1.5",
        }),
      );
    }
  }
  const text = el("text", {
    y: String(RADIUS + 16),
    "text-anchor": "middle",
    class: "vertex-label",
  });
  text.textContent = v.label;
  g.appendChild(text);
  return g;
}

function arrowPath(a: Point, b: Point): string {
  const dx = b.x - a.x;
  const dy = b.y - a.y;
  const d = Math.max(Math.hypot(dx, dy), 1e-6);
  const sx = a.x + (dx / d) * (RADIUS + 2);
  const sy = a.y + (dy / d) * (RADIUS + 2);
  const tx = b.x - (dx / d) * (RADIUS + 8);
  const ty = b.y - (dy / d) * (RADIUS + 8);
  return `M ${sx} ${sy} L ${tx} ${ty}`;
}

function loopPath(p: Point): string {
  const r = RADIUS;
  return (
    `M ${p.x - r * 0.5} ${p.y - r * 0.85} ` +
    `C ${p.x - r * 1.8} ${p.y - r * 3}, ${p.x + r * 1.8} ${p.y - r * 3}, ` +
    `${p.x + r * 0.5} ${p.y - r * 0.85}`
  );
}

export function renderQuiver(
  svg: SVGSVGElement,
  quiver: QuiverState,
  positions: Map<number, Point>,
  onVertexClick: (label: string) => void,
): void {
  svg.innerHTML =
    '<defs><marker id="arrowhead" markerWidth="8" markerHeight="8" ' +
    'refX="6" refY="3" orient="auto">' +
    '<path d="M0,0 L6,3 L0,6 z" fill="#234"/></marker></defs>';

  for (const arrow of quiver.arrows) {
    const a = positions.get(arrow.src)!;
    const b = positions.get(arrow.dst)!;
    svg.appendChild(
      el("path", {
        d: arrowPath(a, b),
        class: "arrow",
        fill: "none",
        stroke: "#234",
        "stroke-width": "1.8",
        "marker-end": "url(#arrowhead)",
      }),
    );
    if (arrow.mult > 1) {
      const label = el("text", {
        x: String((a.x + b.x) / 2 + 8),
        y: String((a.y + b.y) / 2 - 6),
        class: "mult-label",
      });
      label.textContent = `×${arrow.mult}`;
      svg.appendChild(label);
    }
  }

  for (const loop of quiver.loops) {
    const p = positions.get(loop.vertex)!;
    svg.appendChild(
      el("path", {
        d: loopPath(p),
        class: "loop",
        fill: "none",
        stroke: "#234",
        "stroke-width": "1.5",
        "marker-end": "url(#arrowhead)",
      }),
    );
    if (loop.count > 1) {
      const label = el("text", {
        x: String(p.x),
        y: String(p.y - RADIUS * 3.2),
        "text-anchor": "middle",
        class: "mult-label",
      });
      label.textContent = `×${loop.count}`;
      svg.appendChild(label);
    }
  }

  const legal = new Set(
    quiver.vertices.filter((v) => !v.frozen).map((v) => v.label),
  );
  for (const v of quiver.vertices) {
    const g = vertexGroup(v, positions.get(v.id)!, legal.has(v.label));
    if (legal.has(v.label)) {
      g.addEventListener("click", () => onVertexClick(v.label));
      (g as unknown as HTMLElement).style.cursor = "pointer";
    } else {
      (g as unknown as HTMLElement).style.opacity = "0.75";
    }
    svg.appendChild(g);
  }
}
