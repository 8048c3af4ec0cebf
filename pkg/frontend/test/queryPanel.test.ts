import { afterEach, describe, expect, it } from "vitest";
import { ApiClient, ApiError } from "../src/api.js";
import type { QueryResponse } from "../src/api.js";
import {
  columnFromResponse,
  describeError,
  renderQueryPanel,
  runQueryPanel,
} from "../src/queryPanel.js";
import { ExplorerSession } from "../src/session.js";
import { BASE_URL } from "./config.js";

const api = new ApiClient(BASE_URL);

function makeSession(): ExplorerSession {
  const session = new ExplorerSession();
  session.setTerms("man", "doctor", "woman");
  return session;
}

const realFetch = globalThis.fetch;
afterEach(() => {
  globalThis.fetch = realFetch;
});

describe("query panel", () => {
  it("displays exactly the scores the API returned", async () => {
    const session = makeSession();
    session.selections = [
      { algo: "cosadd", mode: "constrained" },
      { algo: "bolukbasi", mode: "unconstrained" },
    ];
    const columns = await runQueryPanel(session, api);
    expect(columns).not.toBeNull();
    for (const col of columns!) {
      const raw = await api.query(col.params);
      expect(col.rows.map((r) => r.token)).toEqual(
        raw.candidates.map((x) => x.token),
      );
      expect(col.rows.map((r) => r.score)).toEqual(
        raw.candidates.map((x) => x.score),
      );
      expect(col.rows.map((r) => r.rank)).toEqual(
        raw.candidates.map((x) => x.rank),
      );
    }
  });

  it("makes exactly two API calls for cosadd in both modes", async () => {
    const session = makeSession();
    session.selections = [
      { algo: "cosadd", mode: "constrained" },
      { algo: "cosadd", mode: "unconstrained" },
    ];
    let calls = 0;
    globalThis.fetch = ((input: RequestInfo | URL, init?: RequestInit) => {
      calls += 1;
      return realFetch(input, init);
    }) as typeof fetch;
    const columns = await runQueryPanel(session, api);
    expect(calls).toBe(2);
    expect(columns).toHaveLength(2);
    expect(columns![0].error).toBeNull();
    expect(columns![1].error).toBeNull();
  });

  it("discards responses that a newer submission superseded", async () => {
    const session = makeSession();
    const stale = runQueryPanel(session, api);
    // second submission starts before the first resolves
    const fresh = runQueryPanel(session, api);
    expect(await stale).toBeNull();
    expect(await fresh).not.toBeNull();
  });

  it("keeps history append-only with full parameter provenance", async () => {
    const session = makeSession();
    session.selections = [{ algo: "cosmul", mode: "unconstrained" }];
    await runQueryPanel(session, api);
    expect(session.history).toHaveLength(1);
    const first = session.history[0];
    expect(first.params).toMatchObject({
      a: "man",
      b: "doctor",
      c: "woman",
      algo: "cosmul",
      mode: "unconstrained",
      topn: 10,
      delta: 1.0,
      cutoff: "all",
    });
    const firstSnapshot = JSON.stringify(first);

    session.setTerms("king", "queen", "man");
    session.topn = 3;
    await runQueryPanel(session, api);
    expect(session.history).toHaveLength(2);
    // the earlier entry is untouched by later queries
    expect(JSON.stringify(session.history[0])).toBe(firstSnapshot);
    expect(session.history[1].params.a).toBe("king");
    expect(session.history[1].params.topn).toBe(3);
  });

  it("flags input terms that reappear as answers", () => {
    const params = new ExplorerSession();
    params.setTerms("man", "doctor", "woman");
    const response: QueryResponse = {
      params: {
        model: "toy", a: "man", b: "doctor", c: "woman",
        algo: "cosadd", mode: "unconstrained", topn: 2,
        delta: 1.0, epsilon: 0.001, cutoff: "all",
      },
      candidates: [
        { token: "doctor", score: 2.0, rank: 1 },
        { token: "nurse", score: 1.5, rank: 2 },
      ],
      evaluated_count: 20,
      timing_ms: 0.1,
    };
    const col = columnFromResponse(
      params.paramsFor({ algo: "cosadd", mode: "unconstrained" }),
      response,
    );
    expect(col.rows[0].isInput).toBe(true);
    expect(col.rows[1].isInput).toBe(false);

    const root = document.createElement("div");
    renderQueryPanel(root, [col]);
    const flagged = root.querySelectorAll("tr.input-term");
    expect(flagged).toHaveLength(1);
    expect(flagged[0].textContent).toContain("doctor");
  });

  it("renders unknown and filtered terms as distinct errors", async () => {
    const session = makeSession();
    session.setTerms("man", "doctor", "zzz_not_a_word");
    const unknownCols = await runQueryPanel(session, api);
    expect(unknownCols![0].error).toContain("not in the vocabulary");

    // query terms resolve against the full vocabulary, so the filtered
    // wording only appears for errors carrying that reason
    const filtered = describeError(
      new ApiError(400, "filtered_token", "token 'nurse' beyond cutoff"),
    );
    expect(filtered).toContain("filtered out by the cutoff");

    const root = document.createElement("div");
    renderQueryPanel(root, unknownCols!);
    expect(root.querySelector("p.error")?.textContent).toContain(
      "not in the vocabulary",
    );
  });
});
