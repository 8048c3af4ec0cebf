// Typed client for the analogy service. All scoring happens server-side;
// the UI only displays what the API returns.

export type Algo = "cosadd" | "cosmul" | "bolukbasi";
export type Mode = "constrained" | "unconstrained";
export type Cutoff = number | "all";

export interface QueryParams {
  a: string;
  b: string;
  c: string;
  algo: Algo;
  mode: Mode;
  topn: number;
  delta: number;
  cutoff: Cutoff;
}

export interface Candidate {
  token: string;
  score: number;
  rank: number;
}

export interface EchoedParams {
  model: string;
  a: string;
  b: string;
  c: string;
  algo: Algo;
  mode: Mode;
  topn: number;
  delta: number;
  epsilon: number;
  cutoff: Cutoff;
}

export interface QueryResponse {
  params: EchoedParams;
  candidates: Candidate[];
  evaluated_count: number;
  timing_ms: number;
}

export interface RankResponse {
  term: string;
  rank: number | null;
  status: "ranked" | "absent";
}

export interface SweepRequest {
  a: string;
  b: string;
  c: string;
  deltas: number[];
  cutoffs: Cutoff[];
  mode: Mode;
}

export interface SweepResponse {
  params: {
    deltas: number[];
    cutoffs: Cutoff[];
    mode: Mode;
    [key: string]: unknown;
  };
  grid: (string | null)[][];
}

export interface VocabResponse {
  status: "found" | "filtered" | "unknown";
  rank: number | null;
}

export interface MetaResponse {
  model: string;
  vocab_size: number;
  dim: number;
  algorithms: Algo[];
  modes: Mode[];
}

export class ApiError extends Error {
  constructor(
    public status: number,
    public reason: string,
    message: string,
  ) {
    super(message);
  }
}

async function check<T>(resp: Response): Promise<T> {
  if (!resp.ok) {
    let reason = "http_error";
    let message = `HTTP ${resp.status}`;
    try {
      const body = await resp.json();
      if (body.detail) {
        reason = body.detail.reason ?? reason;
        message = body.detail.message ?? message;
      }
    } catch {
      // non-JSON error body; keep defaults
    }
    throw new ApiError(resp.status, reason, message);
  }
  return resp.json() as Promise<T>;
}

export class ApiClient {
  constructor(private baseUrl: string) {}

  async meta(): Promise<MetaResponse> {
    return check(await fetch(`${this.baseUrl}/api/meta`));
  }

  async query(params: QueryParams): Promise<QueryResponse> {
    const qs = new URLSearchParams({
      a: params.a,
      b: params.b,
      c: params.c,
      algo: params.algo,
      mode: params.mode,
      topn: String(params.topn),
      delta: String(params.delta),
      cutoff: String(params.cutoff),
    });
    return check(await fetch(`${this.baseUrl}/api/query?${qs}`));
  }

  async rank(params: QueryParams, term: string): Promise<RankResponse> {
    const qs = new URLSearchParams({
      a: params.a,
      b: params.b,
      c: params.c,
      term,
      algo: params.algo,
      mode: params.mode,
      delta: String(params.delta),
      cutoff: String(params.cutoff),
    });
    return check(await fetch(`${this.baseUrl}/api/rank?${qs}`));
  }

  async sweep(req: SweepRequest): Promise<SweepResponse> {
    return check(
      await fetch(`${this.baseUrl}/api/sweep`, {
        method: "POST",
        headers: { "Content-Type": "application/json" },
        body: JSON.stringify(req),
      }),
    );
  }

  async vocab(token: string, cutoff: Cutoff): Promise<VocabResponse> {
    const qs = new URLSearchParams({ token, cutoff: String(cutoff) });
    return check(await fetch(`${this.baseUrl}/api/vocab?${qs}`));
  }
}
