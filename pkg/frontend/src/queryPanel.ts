import type { ApiClient, Candidate, QueryParams, QueryResponse } from "./api.js";
import { ApiError } from "./api.js";
import type { ExplorerSession } from "./session.js";

export interface ResultRow extends Candidate {
  // the D==B phenomenon: input terms showing up as answers get flagged
  isInput: boolean;
}

export interface ResultColumn {
  params: QueryParams;
  echoed: QueryResponse["params"] | null;
  rows: ResultRow[];
  error: string | null;
}

export function columnFromResponse(
  params: QueryParams,
  response: QueryResponse,
): ResultColumn {
  const inputs = new Set([params.a, params.b, params.c]);
  return {
    params,
    echoed: response.params,
    rows: response.candidates.map((cand) => ({
      ...cand,
      isInput: inputs.has(cand.token),
    })),
    error: null,
  };
}

export function describeError(err: unknown): string {
  if (err instanceof ApiError) {
    if (err.reason === "filtered_token") {
      return `term is in the vocabulary but filtered out by the cutoff: ${err.message}`;
    }
    if (err.reason === "unknown_token") {
      return `term is not in the vocabulary: ${err.message}`;
    }
    return err.message;
  }
  return String(err);
}

// One API call per selected (algorithm, mode) pair; results land in the
// session history. Resolves to null when a newer submission superseded us.
export async function runQueryPanel(
  session: ExplorerSession,
  api: ApiClient,
): Promise<ResultColumn[] | null> {
  const seq = session.nextSeq();
  const columns = await Promise.all(
    session.selections.map(async (sel): Promise<ResultColumn> => {
      const params = session.paramsFor(sel);
      try {
        const response = await api.query(params);
        session.record(params, response);
        return columnFromResponse(params, response);
      } catch (err) {
        return { params, echoed: null, rows: [], error: describeError(err) };
      }
    }),
  );
  return session.isCurrent(seq) ? columns : null;
}

export function paramCaption(p: QueryParams): string {
  const delta = p.algo === "bolukbasi" ? ` δ=${p.delta}` : "";
  return `${p.algo} / ${p.mode}${delta} cutoff=${p.cutoff} top-${p.topn}`;
}

export function renderQueryPanel(
  root: HTMLElement,
  columns: ResultColumn[],
): void {
  root.replaceChildren();
  for (const col of columns) {
    const div = document.createElement("div");
    div.className = "result-column";
    const caption = document.createElement("h3");
    // full parameter provenance stays adjacent to every result
    caption.textContent = paramCaption(col.params);
    div.appendChild(caption);
    if (col.error !== null) {
      const msg = document.createElement("p");
      msg.className = "error";
      msg.textContent = col.error;
      div.appendChild(msg);
    } else {
      const table = document.createElement("table");
      for (const row of col.rows) {
        const tr = document.createElement("tr");
        if (row.isInput) tr.className = "input-term";
        const cells = [String(row.rank), row.token, row.score.toFixed(4)];
        for (const text of cells) {
          const td = document.createElement("td");
          td.textContent = text;
          tr.appendChild(td);
        }
        table.appendChild(tr);
      }
      div.appendChild(table);
    }
    root.appendChild(div);
  }
}
