import type { ApiClient, Cutoff, Mode, SweepResponse } from "./api.js";
import type { ExplorerSession } from "./session.js";

export const EMPTY_CELL = "∅";

export interface SweepResult {
  deltas: number[];
  cutoffs: Cutoff[];
  mode: Mode;
  // grid[i][j] = top-1 token at (cutoffs[i], deltas[j]); null = no candidate
  // survived that cell's filters
  grid: (string | null)[][];
}

export function sweepResultFrom(response: SweepResponse): SweepResult {
  return {
    deltas: response.params.deltas,
    cutoffs: response.params.cutoffs,
    mode: response.params.mode,
    grid: response.grid,
  };
}

export async function runSweep(
  session: ExplorerSession,
  api: ApiClient,
  deltas: number[],
  cutoffs: Cutoff[],
  mode: Mode,
): Promise<SweepResult> {
  const response = await api.sweep({
    a: session.a,
    b: session.b,
    c: session.c,
    deltas,
    cutoffs,
    mode,
  });
  return sweepResultFrom(response);
}

// Clicking a cell pulls that cell's (delta, cutoff) into the live query
// controls, so a surprising sweep answer is one click from a full ranking.
export type CellHandler = (delta: number, cutoff: Cutoff) => void;

export function applyCell(
  session: ExplorerSession,
  delta: number,
  cutoff: Cutoff,
): void {
  session.delta = delta;
  session.cutoff = cutoff;
}

export function renderSweepPanel(
  root: HTMLElement,
  result: SweepResult,
  onCell: CellHandler,
): void {
  root.replaceChildren();
  const table = document.createElement("table");
  table.className = "sweep-grid";

  const head = document.createElement("tr");
  const corner = document.createElement("th");
  corner.textContent = "cutoff \\ δ";
  head.appendChild(corner);
  for (const d of result.deltas) {
    const th = document.createElement("th");
    th.textContent = d.toFixed(2);
    head.appendChild(th);
  }
  table.appendChild(head);

  result.cutoffs.forEach((cutoff, i) => {
    const tr = document.createElement("tr");
    const label = document.createElement("th");
    label.textContent = String(cutoff);
    tr.appendChild(label);
    result.deltas.forEach((delta, j) => {
      const td = document.createElement("td");
      const cell = result.grid[i][j];
      if (cell === null) {
        td.textContent = EMPTY_CELL;
        td.className = "empty-cell";
      } else {
        td.textContent = cell;
        td.className = "sweep-cell";
        td.addEventListener("click", () => onCell(delta, cutoff));
      }
      tr.appendChild(td);
    });
    table.appendChild(tr);
  });
  root.appendChild(table);
}
