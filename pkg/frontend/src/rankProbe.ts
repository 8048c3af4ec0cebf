import type { ApiClient, Candidate, QueryParams } from "./api.js";

export interface ProbeResult {
  term: string;
  params: QueryParams;
  // null rank = the term is not in the candidate list at all (excluded as
  // an input term, cut off, or zeroed out) — shown explicitly, never as 0
  rank: number | null;
  context: Candidate[];
}

// Rank of a specific term plus the top of the list for scale: "rank 51839"
// means little without seeing what ranks 1..N look like.
export async function probeRank(
  api: ApiClient,
  params: QueryParams,
  term: string,
  contextN = 5,
): Promise<ProbeResult> {
  const [ranked, top] = await Promise.all([
    api.rank(params, term),
    api.query({ ...params, topn: contextN }),
  ]);
  return { term, params, rank: ranked.rank, context: top.candidates };
}

export function renderProbe(root: HTMLElement, result: ProbeResult): void {
  root.replaceChildren();
  const line = document.createElement("p");
  line.className = "probe-rank";
  line.textContent =
    result.rank === null
      ? `"${result.term}" is absent from the ${result.params.mode} candidate list`
      : `"${result.term}" ranks ${result.rank} under ${result.params.algo} (${result.params.mode})`;
  root.appendChild(line);

  const list = document.createElement("ol");
  list.className = "probe-context";
  for (const cand of result.context) {
    const li = document.createElement("li");
    li.textContent = `${cand.token} (${cand.score.toFixed(4)})`;
    list.appendChild(li);
  }
  root.appendChild(list);
}
