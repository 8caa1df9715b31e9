// Small force-directed layout.  Purely cosmetic: positions are never sent
// back to the service or written into quiver files.

import { QuiverState } from "./api";

export interface Point {
  x: number;
  y: number;
}

export interface LayoutOptions {
  width: number;
  height: number;
  iterations?: number;
  /** Pinned positions (e.g. from dragging) that the solver must not move. */
  pinned?: Map<number, Point>;
  seed?: number;
}

/** Deterministic pseudo-random stream so layouts are reproducible. */
function mulberry32(seed: number): () => number {
  let a = seed >>> 0;
  return () => {
    a = (a + 0x6d2b79f5) >>> 0;
    let t = a;
    t = Math.imul(t ^ (t >>> 15), t | 1);
    t ^= t + Math.imul(t ^ (t >>> 7), t | 61);
    return ((t ^ (t >>> 14)) >>> 0) / 4294967296;
  };
}

export function forceLayout(
  quiver: QuiverState,
  options: LayoutOptions,
): Map<number, Point> {
  const { width, height } = options;
  const iterations = options.iterations ?? 200;
  const pinned = options.pinned ?? new Map<number, Point>();
  const rand = mulberry32(options.seed ?? 42);

  const ids = quiver.vertices.map((v) => v.id);
  const pos = new Map<number, Point>();
  for (const id of ids) {
    const pin = pinned.get(id);
    pos.set(
      id,
      pin
        ? { ...pin }
        : { x: width * (0.2 + 0.6 * rand()), y: height * (0.2 + 0.6 * rand()) },
    );
  }
  if (ids.length <= 1) return pos;

  const area = width * height;
  const k = Math.sqrt(area / ids.length) * 0.6;
  const edges = quiver.arrows.map((a) => [a.src, a.dst] as const);

  for (let step = 0; step < iterations; step++) {
    const temp = 0.1 * Math.min(width, height) * (1 - step / iterations);
    const disp = new Map<number, Point>(ids.map((id) => [id, { x: 0, y: 0 }]));

    for (let i = 0; i < ids.length; i++) {
      for (let j = i + 1; j < ids.length; j++) {
        const a = pos.get(ids[i])!;
        const b = pos.get(ids[j])!;
        let dx = a.x - b.x;
        let dy = a.y - b.y;
        let d = Math.hypot(dx, dy);
        if (d < 1e-6) {
          dx = rand() - 0.5;
          dy = rand() - 0.5;
          d = Math.hypot(dx, dy);
        }
        const force = (k * k) / d;
        const da = disp.get(ids[i])!;
        const db = disp.get(ids[j])!;
        da.x += (dx / d) * force;
        da.y += (dy / d) * force;
        db.x -= (dx / d) * force;
        db.y -= (dy / d) * force;
      }
    }

    for (const [s, t] of edges) {
      if (s === t) continue;
      const a = pos.get(s)!;
      const b = pos.get(t)!;
      const dx = a.x - b.x;
      const dy = a.y - b.y;
      const d = Math.max(Math.hypot(dx, dy), 1e-6);
      const force = (d * d) / k;
      const da = disp.get(s)!;
      const db = disp.get(t)!;
      da.x -= (dx / d) * force;
      da.y -= (dy / d) * force;
      db.x += (dx / d) * force;
      db.y += (dy / d) * force;
    }

    for (const id of ids) {
      if (pinned.has(id)) continue;
      const p = pos.get(id)!;
      const d = disp.get(id)!;
      const len = Math.max(Math.hypot(d.x, d.y), 1e-6);
      const amount = Math.min(len, temp);
      p.x += (d.x / len) * amount;
      p.y += (d.y / len) * amount;
      p.x = Math.min(width - 30, Math.max(30, p.x));
      p.y = Math.min(height - 30, Math.max(30, p.y));
    }
  }
  return pos;
}
