import { describe, expect, it } from "vitest";
import { layoutTree, treeCenter } from "../src/layout.js";
import type { TreeDoc } from "../src/api.js";

const path = (n: number): TreeDoc => ({
  vertices: n,
  edges: Array.from({ length: n - 1 }, (_, i) => [i, i + 1] as [number, number]),
});

const star = (n: number): TreeDoc => ({
  vertices: n,
  edges: Array.from({ length: n - 1 }, (_, i) => [0, i + 1] as [number, number]),
});

describe("treeCenter", () => {
  it("picks the middle of a path", () => {
    expect(treeCenter(path(5))).toBe(2);
    expect(treeCenter(path(7))).toBe(3);
  });

  it("breaks two-vertex-center ties toward the smaller label", () => {
    expect(treeCenter(path(2))).toBe(0);
    expect(treeCenter(path(4))).toBe(1);
  });

  it("handles stars and singletons", () => {
    expect(treeCenter(star(6))).toBe(0);
    expect(treeCenter({ vertices: 1, edges: [] })).toBe(0);
  });
});

describe("layoutTree", () => {
  it("gives every vertex a position", () => {
    const tree: TreeDoc = {
      vertices: 7,
      edges: [[0, 1], [1, 2], [0, 3], [3, 4], [0, 5], [5, 6]],
    };
    const pos = layoutTree(tree);
    for (let v = 0; v < tree.vertices; v += 1) {
      expect(pos[v]).toBeDefined();
    }
  });

  it("is deterministic across calls and edge orderings", () => {
    const a = layoutTree({ vertices: 5, edges: [[0, 1], [1, 2], [2, 3], [3, 4]] });
    const b = layoutTree({ vertices: 5, edges: [[3, 4], [0, 1], [2, 3], [1, 2]] });
    expect(a).toEqual(b);
  });

  it("roots the drawing at the center with children below", () => {
    const pos = layoutTree(path(5));
    expect(pos[2]!.y).toBe(0);
    expect(pos[1]!.y).toBeGreaterThan(0);
    expect(pos[0]!.y).toBeGreaterThan(pos[1]!.y);
  });

  it("keeps distinct leaves at distinct x slots", () => {
    const pos = layoutTree(star(6));
    const xs = [1, 2, 3, 4, 5].map((v) => pos[v]!.x);
    expect(new Set(xs).size).toBe(5);
  });
});
