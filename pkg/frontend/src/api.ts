/** Typed client for the explorer-service HTTP API. */

export interface TreeDoc {
  vertices: number;
  edges: [number, number][];
}

export interface SessionSummary {
  id: string;
  ell: number;
  kind: "amoeba" | "colony";
  steps: number;
  tree: TreeDoc;
  vertices: number;
  alive_copies: number;
  undo_depth: number;
}

export interface AutoResult extends SessionSummary {
  outcome: "ConfiningReached" | "BudgetExhausted";
  steps_taken: number;
  reached_confining: boolean;
}

export interface CopyInfo {
  index: number;
  dead: boolean;
  min_cost: number;
  copy_edges: [number, number][];
  copy_mult: [number, number][];
  member?: number;
}

export interface GrowthPreview {
  index: number;
  new_edges: [number, number][];
  vertices: number;
}

export interface GrowthList {
  copy: number;
  copy_vertices: number[];
  cost: number;
  growths: GrowthPreview[];
}

export interface Classification {
  verdict: "Mortal" | "Immortal" | "Unknown";
  certificate: Record<string, unknown>;
}

export class ApiError extends Error {
  constructor(
    public readonly status: number,
    detail: string,
  ) {
    super(detail);
  }
}

async function unwrap<T>(res: Response): Promise<T> {
  if (res.ok) {
    return (await res.json()) as T;
  }
  let detail = res.statusText;
  try {
    const body = (await res.json()) as { detail?: string };
    if (body.detail) detail = body.detail;
  } catch {
    /* non-JSON error body; keep the status text */
  }
  throw new ApiError(res.status, detail);
}

export class Client {
  constructor(private readonly base: string) {}

  private url(path: string): string {
    return this.base.replace(/\/$/, "") + path;
  }

  createSession(body: Record<string, unknown>): Promise<SessionSummary> {
    return this.post("/sessions", body);
  }

  getState(id: string): Promise<SessionSummary> {
    return this.get(`/sessions/${id}`);
  }

  async listCopies(id: string): Promise<CopyInfo[]> {
    const doc = await this.get<{ copies: CopyInfo[] }>(`/sessions/${id}/copies`);
    return doc.copies;
  }

  listGrowths(id: string, copy: number): Promise<GrowthList> {
    return this.get(`/sessions/${id}/copies/${copy}/growths`);
  }

  apply(id: string, copy: number, growth: number): Promise<SessionSummary> {
    return this.post(`/sessions/${id}/apply`, { copy, growth });
  }

  undo(id: string): Promise<SessionSummary> {
    return this.post(`/sessions/${id}/undo`, {});
  }

  auto(
    id: string,
    steps: number,
    strategy: "first" | "random" = "first",
    seed?: number,
  ): Promise<AutoResult> {
    const body: Record<string, unknown> = { steps, strategy };
    if (seed !== undefined) body.seed = seed;
    return this.post(`/sessions/${id}/auto`, body);
  }

  async exportLog(id: string): Promise<string> {
    const res = await fetch(this.url(`/sessions/${id}/log`));
    if (!res.ok) throw new ApiError(res.status, res.statusText);
    return res.text();
  }

  classify(id: string, budget: Record<string, number> = {}): Promise<Classification> {
    return this.post(`/sessions/${id}/classify`, budget);
  }

  private async get<T>(path: string): Promise<T> {
    return unwrap<T>(await fetch(this.url(path)));
  }

  private async post<T>(path: string, body: unknown): Promise<T> {
    const res = await fetch(this.url(path), {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify(body),
    });
    return unwrap<T>(res);
  }
}
