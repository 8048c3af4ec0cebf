import { describe, expect, it } from "vitest";
import { ApiClient } from "../src/api.js";
import type { Cutoff } from "../src/api.js";
import { ExplorerSession } from "../src/session.js";
import {
  applyCell,
  renderSweepPanel,
  runSweep,
  type SweepResult,
} from "../src/sweepPanel.js";
import { BASE_URL } from "./config.js";

const api = new ApiClient(BASE_URL);

const DELTAS = [0.5, 1.0, 1.5];
const CUTOFFS: Cutoff[] = [5, 10, "all"];

describe("sweep panel", () => {
  it("shows exactly the grid the API returned", async () => {
    const session = new ExplorerSession();
    session.setTerms("man", "doctor", "woman");
    const result = await runSweep(session, api, DELTAS, CUTOFFS, "constrained");

    const raw = await api.sweep({
      a: "man", b: "doctor", c: "woman",
      deltas: DELTAS, cutoffs: CUTOFFS, mode: "constrained",
    });
    expect(result.grid).toEqual(raw.grid);
    expect(result.grid).toHaveLength(CUTOFFS.length);
    expect(result.grid[0]).toHaveLength(DELTAS.length);
    expect(result.deltas).toEqual(DELTAS);
  });

  it("renders rows as cutoffs and columns as deltas, with empty markers", () => {
    const result: SweepResult = {
      deltas: [0.5, 1.0],
      cutoffs: [10, "all"],
      mode: "constrained",
      grid: [
        [null, "nurse"],
        ["midwife", "doctor"],
      ],
    };
    const root = document.createElement("div");
    renderSweepPanel(root, result, () => {});
    const rows = root.querySelectorAll("tr");
    expect(rows).toHaveLength(3); // header + 2 cutoffs
    expect(rows[1].querySelector("th")?.textContent).toBe("10");
    expect(rows[2].querySelector("th")?.textContent).toBe("all");
    const cells1 = rows[1].querySelectorAll("td");
    expect(cells1[0].className).toBe("empty-cell");
    expect(cells1[0].textContent).not.toBe("");
    expect(cells1[1].textContent).toBe("nurse");
  });

  it("loads a clicked cell's delta and cutoff into the session", () => {
    const session = new ExplorerSession();
    const result: SweepResult = {
      deltas: [0.5, 1.2],
      cutoffs: [10, "all"],
      mode: "constrained",
      grid: [
        ["a", "b"],
        ["c", "d"],
      ],
    };
    const root = document.createElement("div");
    renderSweepPanel(root, result, (delta, cutoff) => {
      applyCell(session, delta, cutoff);
    });
    const rows = root.querySelectorAll("tr");
    const target = rows[1].querySelectorAll("td")[1]; // cutoff=10, delta=1.2
    target.dispatchEvent(new MouseEvent("click", { bubbles: true }));
    expect(session.delta).toBe(1.2);
    expect(session.cutoff).toBe(10);
  });
});
