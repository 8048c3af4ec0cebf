import type { Algo, Cutoff, Mode, QueryParams, QueryResponse } from "./api.js";

export interface AlgoSelection {
  algo: Algo;
  mode: Mode;
}

export interface HistoryEntry {
  // every displayed result carries its complete parameter provenance
  params: QueryParams;
  response: QueryResponse;
}

// One explorer session: current terms, selected (algorithm, mode) columns,
// parameter controls, and an append-only history of past results.
export class ExplorerSession {
  a = "";
  b = "";
  c = "";
  selections: AlgoSelection[] = [{ algo: "cosadd", mode: "constrained" }];
  delta = 1.0;
  cutoff: Cutoff = "all";
  topn = 10;
  private history_: HistoryEntry[] = [];
  private seq = 0;

  get history(): readonly HistoryEntry[] {
    return this.history_;
  }

  setTerms(a: string, b: string, c: string): void {
    this.a = a;
    this.b = b;
    this.c = c;
  }

  toggleSelection(algo: Algo, mode: Mode): void {
    const i = this.selections.findIndex((s) => s.algo === algo && s.mode === mode);
    if (i >= 0) {
      this.selections.splice(i, 1);
    } else {
      this.selections.push({ algo, mode });
    }
  }

  paramsFor(sel: AlgoSelection): QueryParams {
    return {
      a: this.a,
      b: this.b,
      c: this.c,
      algo: sel.algo,
      mode: sel.mode,
      topn: this.topn,
      delta: this.delta,
      cutoff: this.cutoff,
    };
  }

  record(params: QueryParams, response: QueryResponse): void {
    this.history_.push({ params, response });
  }

  // Monotone sequence numbers let panels drop stale in-flight responses
  // once newer parameters have been submitted.
  nextSeq(): number {
    return ++this.seq;
  }

  isCurrent(seq: number): boolean {
    return seq === this.seq;
  }
}
