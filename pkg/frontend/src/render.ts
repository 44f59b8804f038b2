/** Pure SVG rendering of a view state.
 *
 * Every committed edge carries data-edge="u-v" and every vertex
 * data-vertex="v", so tests can recover the rendered graph from the
 * markup itself instead of trusting the state object that produced it.
 */

import type { ViewState } from "./state.js";
import { X_STEP, Y_STEP, type Point } from "./layout.js";

const R = 12;
const MARGIN = 40;

function esc(s: string): string {
  return s.replace(/&/g, "&amp;").replace(/</g, "&lt;").replace(/>/g, "&gt;");
}

/** Positions for preview-only vertices, hung below their anchor. */
function previewPositions(
  placed: Record<number, Point>,
  edges: [number, number][],
): Record<number, Point> {
  const pos: Record<number, Point> = { ...placed };
  let pending = edges.slice();
  let offset = 0;
  while (pending.length) {
    const rest: [number, number][] = [];
    let progress = false;
    for (const [u, v] of pending) {
      const known = pos[u] ? u : pos[v] ? v : null;
      if (known === null) {
        rest.push([u, v]);
        continue;
      }
      const other = known === u ? v : u;
      if (!pos[other]) {
        const base = pos[known]!;
        pos[other] = { x: base.x + (offset % 3) * (X_STEP / 2), y: base.y + Y_STEP };
        offset += 1;
      }
      progress = true;
    }
    if (!progress) break; // disconnected preview edge, should not happen
    pending = rest;
  }
  return pos;
}

export function renderSvg(vs: ViewState): string {
  const tree = vs.summary.tree;
  const layout = vs.layout;
  const copy = vs.selectedCopy !== null ? vs.copies[vs.selectedCopy] : undefined;
  const copyVertices = new Set<number>();
  if (copy) {
    for (const [u, v] of copy.copy_edges) {
      copyVertices.add(u);
      copyVertices.add(v);
    }
    for (const [v] of copy.copy_mult) copyVertices.add(v);
  }
  const preview =
    vs.selectedGrowth !== null ? vs.previews[vs.selectedGrowth] : undefined;
  const pos = preview
    ? previewPositions(layout, preview.new_edges)
    : ({ ...layout } as Record<number, Point>);

  let maxX = 0;
  let maxY = 0;
  for (const p of Object.values(pos)) {
    maxX = Math.max(maxX, p.x);
    maxY = Math.max(maxY, p.y);
  }
  const w = maxX + 2 * MARGIN;
  const h = maxY + 2 * MARGIN + (vs.banner ? 30 : 0);
  const at = (v: number): Point => {
    const p = pos[v];
    if (!p) throw new Error(`vertex ${v} has no layout position`);
    return { x: p.x + MARGIN, y: p.y + MARGIN + (vs.banner ? 30 : 0) };
  };

  const parts: string[] = [];
  parts.push(
    `<svg xmlns="http://www.w3.org/2000/svg" width="${w}" height="${h}" viewBox="0 0 ${w} ${h}">`,
  );
  if (vs.banner) {
    parts.push(
      `<text x="${MARGIN}" y="24" class="banner" fill="#a33">${esc(vs.banner)}</text>`,
    );
  }
  for (const [u, v] of tree.edges) {
    const [a, b] = u < v ? [u, v] : [v, u];
    const pu = at(u);
    const pv = at(v);
    parts.push(
      `<line data-edge="${a}-${b}" x1="${pu.x}" y1="${pu.y}" x2="${pv.x}" y2="${pv.y}" stroke="#444" stroke-width="2"/>`,
    );
  }
  if (preview) {
    for (const [u, v] of preview.new_edges) {
      const pu = at(u);
      const pv = at(v);
      parts.push(
        `<line class="preview" x1="${pu.x}" y1="${pu.y}" x2="${pv.x}" y2="${pv.y}" stroke="#2a6" stroke-width="2" stroke-dasharray="6 4"/>`,
      );
    }
  }
  const fresh = new Set(vs.freshVertices);
  for (let v = 0; v < tree.vertices; v += 1) {
    const p = at(v);
    const classes = ["vertex"];
    if (fresh.has(v)) classes.push("new");
    const fill = copyVertices.has(v) ? "#bbb" : "#fff";
    parts.push(
      `<g data-vertex="${v}" class="${classes.join(" ")}">` +
        `<circle cx="${p.x}" cy="${p.y}" r="${R}" fill="${fill}" stroke="#222" stroke-width="1.5"/>` +
        `<text x="${p.x}" y="${p.y + 4}" text-anchor="middle" font-size="11">${v}</text>` +
        `</g>`,
    );
  }
  if (preview) {
    for (let v = tree.vertices; v < preview.vertices; v += 1) {
      const p = at(v);
      parts.push(
        `<g class="vertex preview"><circle cx="${p.x}" cy="${p.y}" r="${R}" fill="none" stroke="#2a6" stroke-width="1.5" stroke-dasharray="4 3"/>` +
          `<text x="${p.x}" y="${p.y + 4}" text-anchor="middle" font-size="11" fill="#2a6">${v}</text></g>`,
      );
    }
  }
  parts.push("</svg>");
  return parts.join("\n");
}

/** Committed edges present in rendered markup, normalized and sorted. */
export function edgesInSvg(svg: string): [number, number][] {
  const out: [number, number][] = [];
  for (const m of svg.matchAll(/data-edge="(\d+)-(\d+)"/g)) {
    out.push([Number(m[1]), Number(m[2])]);
  }
  return out.sort((a, b) => a[0] - b[0] || a[1] - b[1]);
}

/** Vertices present in rendered markup, sorted. */
export function verticesInSvg(svg: string): number[] {
  const out: number[] = [];
  for (const m of svg.matchAll(/data-vertex="(\d+)"/g)) {
    out.push(Number(m[1]));
  }
  return out.sort((a, b) => a - b);
}
