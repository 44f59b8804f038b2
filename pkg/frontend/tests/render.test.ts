import { describe, expect, it } from "vitest";
import type { ViewState } from "../src/state.js";
import { edgesInSvg, renderSvg, verticesInSvg } from "../src/render.js";
import { layoutTree } from "../src/layout.js";

function view(partial: Partial<ViewState>): ViewState {
  const tree = { vertices: 3, edges: [[0, 1], [0, 2]] as [number, number][] };
  return {
    sessionId: "s1",
    summary: {
      id: "s1",
      ell: 1,
      kind: "amoeba",
      steps: 0,
      tree,
      vertices: 3,
      alive_copies: 1,
      undo_depth: 0,
    },
    copies: [],
    layout: layoutTree(tree),
    selectedCopy: null,
    selectedGrowth: null,
    previews: [],
    freshVertices: [],
    banner: null,
    ...partial,
  };
}

describe("renderSvg", () => {
  it("renders exactly the committed vertices and edges", () => {
    const svg = renderSvg(view({}));
    expect(edgesInSvg(svg)).toEqual([[0, 1], [0, 2]]);
    expect(verticesInSvg(svg)).toEqual([0, 1, 2]);
  });

  it("draws previews dashed without adding committed edges", () => {
    const svg = renderSvg(
      view({
        selectedGrowth: 0,
        previews: [{ index: 0, new_edges: [[1, 3], [3, 4]], vertices: 5 }],
      }),
    );
    expect(edgesInSvg(svg)).toEqual([[0, 1], [0, 2]]);
    expect(svg).toContain("stroke-dasharray");
  });

  it("shades the selected copy and tags fresh vertices", () => {
    const svg = renderSvg(
      view({
        copies: [
          {
            index: 0,
            dead: false,
            min_cost: 1,
            copy_edges: [[0, 1]],
            copy_mult: [[0, 1]],
          },
        ],
        selectedCopy: 0,
        freshVertices: [2],
      }),
    );
    expect(svg).toContain('fill="#bbb"');
    expect(svg).toContain('class="vertex new"');
  });

  it("shows the banner text", () => {
    const svg = renderSvg(view({ banner: "confining tree reached" }));
    expect(svg).toContain("confining tree reached");
  });
});
