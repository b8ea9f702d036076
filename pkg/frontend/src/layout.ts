// Graph layout. Small graphs get a force-directed layout with a seeded
// PRNG so the picture is the same on every load; past the display cap the
// overflow collapses into a count badge, and very large graphs fall back
// to a layered arrangement by BFS depth from the first node.

import type { GraphDoc } from './types.js';

export const DISPLAY_CAP = 150;
export const FORCE_LIMIT = 150;

export interface LaidOutNode {
  id: number;
  x: number;
  y: number;
}

export interface Layout {
  nodes: LaidOutNode[];
  hiddenCount: number;
  mode: 'force' | 'layered';
}

/** Deterministic 32-bit PRNG (mulberry32). */
export function mulberry32(seed: number): () => number {
  let a = seed >>> 0;
  return () => {
    a = (a + 0x6d2b79f5) >>> 0;
    let t = a;
    t = Math.imul(t ^ (t >>> 15), t | 1);
    t ^= t + Math.imul(t ^ (t >>> 7), t | 61);
    return ((t ^ (t >>> 14)) >>> 0) / 4294967296;
  };
}

export function layoutGraph(doc: GraphDoc, width = 900, height = 600,
                            cap = DISPLAY_CAP): Layout {
  const shown = doc.nodes.slice(0, cap);
  const hiddenCount = doc.nodes.length - shown.length;
  if (shown.length > FORCE_LIMIT) {
    return { nodes: layered(doc, shown, width, height), hiddenCount, mode: 'layered' };
  }
  return { nodes: force(doc, shown, width, height), hiddenCount, mode: 'force' };
}

function force(doc: GraphDoc, shown: GraphDoc['nodes'], width: number,
               height: number): LaidOutNode[] {
  const rand = mulberry32(42);
  const ids = shown.map((n) => n.id);
  const index = new Map(ids.map((id, i) => [id, i]));
  const xs = ids.map(() => rand() * width);
  const ys = ids.map(() => rand() * height);
  const edges = doc.edges
    .filter((e) => index.has(e.src) && index.has(e.dst))
    .map((e) => [index.get(e.src)!, index.get(e.dst)!] as const);

  const n = ids.length;
  if (n === 1) {
    return [{ id: ids[0], x: width / 2, y: height / 2 }];
  }
  const area = width * height;
  const k = Math.sqrt(area / n);
  let temperature = width / 10;
  for (let iter = 0; iter < 150; iter += 1) {
    const dx = new Array(n).fill(0);
    const dy = new Array(n).fill(0);
    for (let i = 0; i < n; i += 1) {
      for (let j = i + 1; j < n; j += 1) {
        let ex = xs[i] - xs[j];
        let ey = ys[i] - ys[j];
        let dist = Math.hypot(ex, ey);
        if (dist < 0.01) {
          // deterministic nudge for coincident nodes
          ex = 0.01 * (i - j);
          ey = 0.01;
          dist = Math.hypot(ex, ey);
        }
        const repulse = (k * k) / dist;
        dx[i] += (ex / dist) * repulse;
        dy[i] += (ey / dist) * repulse;
        dx[j] -= (ex / dist) * repulse;
        dy[j] -= (ey / dist) * repulse;
      }
    }
    for (const [a, b] of edges) {
      const ex = xs[a] - xs[b];
      const ey = ys[a] - ys[b];
      const dist = Math.max(Math.hypot(ex, ey), 0.01);
      const attract = (dist * dist) / k;
      dx[a] -= (ex / dist) * attract;
      dy[a] -= (ey / dist) * attract;
      dx[b] += (ex / dist) * attract;
      dy[b] += (ey / dist) * attract;
    }
    for (let i = 0; i < n; i += 1) {
      const disp = Math.max(Math.hypot(dx[i], dy[i]), 0.01);
      xs[i] += (dx[i] / disp) * Math.min(disp, temperature);
      ys[i] += (dy[i] / disp) * Math.min(disp, temperature);
      xs[i] = Math.min(width - 30, Math.max(30, xs[i]));
      ys[i] = Math.min(height - 30, Math.max(30, ys[i]));
    }
    temperature *= 0.95;
  }
  return ids.map((id, i) => ({ id, x: xs[i], y: ys[i] }));
}

function layered(doc: GraphDoc, shown: GraphDoc['nodes'], width: number,
                 height: number): LaidOutNode[] {
  const ids = shown.map((n) => n.id);
  const present = new Set(ids);
  const forward = new Map<number, number[]>();
  for (const edge of doc.edges) {
    if (present.has(edge.src) && present.has(edge.dst)) {
      const outgoing = forward.get(edge.src) ?? [];
      outgoing.push(edge.dst);
      forward.set(edge.src, outgoing);
    }
  }
  const depth = new Map<number, number>();
  const queue = [ids[0]];
  depth.set(ids[0], 0);
  while (queue.length) {
    const node = queue.shift()!;
    for (const next of forward.get(node) ?? []) {
      if (!depth.has(next)) {
        depth.set(next, depth.get(node)! + 1);
        queue.push(next);
      }
    }
  }
  for (const id of ids) {
    if (!depth.has(id)) {
      depth.set(id, 0);
    }
  }
  const byLayer = new Map<number, number[]>();
  for (const id of ids) {
    const d = depth.get(id)!;
    const layer = byLayer.get(d) ?? [];
    layer.push(id);
    byLayer.set(d, layer);
  }
  const layerCount = Math.max(...byLayer.keys()) + 1;
  const out: LaidOutNode[] = [];
  for (const [d, layer] of [...byLayer.entries()].sort((a, b) => a[0] - b[0])) {
    layer.sort((a, b) => a - b);
    layer.forEach((id, i) => {
      out.push({
        id,
        x: ((i + 1) / (layer.length + 1)) * width,
        y: ((d + 1) / (layerCount + 1)) * height,
      });
    });
  }
  out.sort((a, b) => a.id - b.id);
  return out;
}
