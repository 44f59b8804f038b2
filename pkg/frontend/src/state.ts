/** View state and the interaction controller.
 *
 * One mutating request is in flight at a time; every request carries the
 * sequence number current when it started, and a response whose sequence
 * no longer matches is discarded instead of clobbering newer state.
 */

import {
  ApiError,
  Client,
  type CopyInfo,
  type GrowthPreview,
  type SessionSummary,
} from "./api.js";
import { layoutTree, type Layout } from "./layout.js";

export interface ViewState {
  sessionId: string;
  summary: SessionSummary;
  copies: CopyInfo[];
  layout: Layout;
  selectedCopy: number | null;
  selectedGrowth: number | null;
  previews: GrowthPreview[];
  /** vertices added by the latest mutation, the only ones to animate */
  freshVertices: number[];
  banner: string | null;
}

/** Edge list as rendered, normalized for comparison with the server. */
export function renderedEdges(vs: ViewState): [number, number][] {
  return vs.summary.tree.edges
    .map(([u, v]): [number, number] => (u < v ? [u, v] : [v, u]))
    .sort((a, b) => a[0] - b[0] || a[1] - b[1]);
}

export class Controller {
  private seq = 0;
  private mutating = false;
  public view: ViewState | null = null;

  constructor(private readonly client: Client) {}

  async create(body: Record<string, unknown>): Promise<ViewState> {
    const summary = await this.client.createSession(body);
    return this.adopt(summary, []);
  }

  async sync(sessionId?: string): Promise<ViewState> {
    const id = sessionId ?? this.require().sessionId;
    const seq = this.seq;
    const summary = await this.client.getState(id);
    if (seq !== this.seq && this.view) return this.view; // stale
    return this.adopt(summary, []);
  }

  /** Select a copy and fetch its growth previews (dashed edges). */
  async selectCopy(index: number): Promise<ViewState> {
    const vs = this.require();
    const listing = await this.client.listGrowths(vs.sessionId, index);
    vs.selectedCopy = index;
    vs.previews = listing.growths;
    vs.selectedGrowth = listing.growths.length ? 0 : null;
    vs.banner = listing.growths.length ? null : `copy ${index} is dead`;
    return vs;
  }

  selectGrowth(index: number): ViewState {
    const vs = this.require();
    if (index < 0 || index >= vs.previews.length) {
      throw new RangeError(`growth index ${index} out of range`);
    }
    vs.selectedGrowth = index;
    return vs;
  }

  async apply(): Promise<ViewState> {
    const vs = this.require();
    if (vs.selectedCopy === null || vs.selectedGrowth === null) {
      vs.banner = "pick a copy and a growth first";
      return vs;
    }
    return this.mutate(() =>
      this.client.apply(vs.sessionId, vs.selectedCopy!, vs.selectedGrowth!),
    );
  }

  async undoOnce(): Promise<ViewState> {
    const vs = this.require();
    return this.mutate(() => this.client.undo(vs.sessionId));
  }

  async autoRun(
    steps: number,
    strategy: "first" | "random" = "first",
    seed?: number,
  ): Promise<ViewState> {
    const vs = this.require();
    const out = await this.mutate(() =>
      this.client.auto(vs.sessionId, steps, strategy, seed),
    );
    if (out.summary.alive_copies === 0) {
      out.banner = "confining tree reached";
    }
    return out;
  }

  exportLog(): Promise<string> {
    return this.client.exportLog(this.require().sessionId);
  }

  private require(): ViewState {
    if (!this.view) throw new Error("no session yet");
    return this.view;
  }

  private async mutate(call: () => Promise<SessionSummary>): Promise<ViewState> {
    const vs = this.require();
    if (this.mutating) return vs; // one in-flight mutation only
    this.mutating = true;
    const seq = ++this.seq;
    const before = vs.summary.vertices;
    try {
      const summary = await call();
      if (seq !== this.seq) return this.view!; // a newer mutation won
      const fresh = [];
      for (let v = before; v < summary.vertices; v += 1) fresh.push(v);
      return await this.adopt(summary, fresh);
    } catch (err) {
      if (err instanceof ApiError && err.status === 409) {
        vs.banner = err.message.includes("start")
          ? "already at the start tree"
          : "copy is dead";
        return vs;
      }
      throw err;
    } finally {
      this.mutating = false;
    }
  }

  private async adopt(summary: SessionSummary, fresh: number[]): Promise<ViewState> {
    const copies = await this.client.listCopies(summary.id);
    return this.install(summary, copies, fresh);
  }

  private install(
    summary: SessionSummary,
    copies: CopyInfo[],
    fresh: number[],
  ): ViewState {
    this.view = {
      sessionId: summary.id,
      summary,
      copies,
      layout: layoutTree(summary.tree),
      selectedCopy: null,
      selectedGrowth: null,
      previews: [],
      freshVertices: fresh,
      banner: summary.alive_copies === 0 ? "confining tree reached" : null,
    };
    return this.view;
  }
}
