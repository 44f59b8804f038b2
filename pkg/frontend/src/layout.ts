/** Deterministic layered tree layout rooted at a center vertex.
 *
 * The same tree always produces the same positions: the root is the
 * smallest-numbered center, children are visited in vertex order, and
 * leaves take consecutive horizontal slots.  Growth therefore never moves
 * a vertex that was already present unless the center itself shifts.
 */

import type { TreeDoc } from "./api.js";

export interface Point {
  x: number;
  y: number;
}

export type Layout = Record<number, Point>;

export const X_STEP = 60;
export const Y_STEP = 70;

function adjacency(tree: TreeDoc): number[][] {
  const adj: number[][] = Array.from({ length: tree.vertices }, () => []);
  for (const [u, v] of tree.edges) {
    adj[u]!.push(v);
    adj[v]!.push(u);
  }
  for (const nbrs of adj) nbrs.sort((a, b) => a - b);
  return adj;
}

/** Smallest-numbered center: peel leaves until one or two vertices stay. */
export function treeCenter(tree: TreeDoc): number {
  if (tree.vertices === 1) return 0;
  const adj = adjacency(tree);
  const degree = adj.map((nbrs) => nbrs.length);
  let layer = degree.flatMap((d, v) => (d === 1 ? [v] : []));
  let remaining = tree.vertices;
  while (remaining > 2) {
    const next: number[] = [];
    for (const leaf of layer) {
      degree[leaf] = 0;
      remaining -= 1;
      for (const nbr of adj[leaf]!) {
        if (degree[nbr]! > 1) {
          degree[nbr] = degree[nbr]! - 1;
          if (degree[nbr] === 1) next.push(nbr);
        }
      }
    }
    layer = next;
  }
  return Math.min(...degree.flatMap((d, v) => (d > 0 ? [v] : [])));
}

export function layoutTree(tree: TreeDoc): Layout {
  const root = treeCenter(tree);
  const adj = adjacency(tree);
  const pos: Layout = {};
  let nextSlot = 0;

  const place = (v: number, parent: number, depth: number): number => {
    const children = adj[v]!.filter((c) => c !== parent);
    if (children.length === 0) {
      const x = nextSlot * X_STEP;
      nextSlot += 1;
      pos[v] = { x, y: depth * Y_STEP };
      return x;
    }
    let sum = 0;
    for (const c of children) sum += place(c, v, depth + 1);
    const x = sum / children.length;
    pos[v] = { x, y: depth * Y_STEP };
    return x;
  };
  place(root, -1, 0);
  return pos;
}
