import { ApiClient } from "./api.js";
import type { Algo, Cutoff, Mode } from "./api.js";
import { PRESETS } from "./presets.js";
import { probeRank, renderProbe } from "./rankProbe.js";
import { ExplorerSession } from "./session.js";
import { applyCell, renderSweepPanel, runSweep } from "./sweepPanel.js";
import { runQueryPanel, renderQueryPanel } from "./queryPanel.js";

const ALGOS: Algo[] = ["cosadd", "cosmul", "bolukbasi"];
const MODES: Mode[] = ["constrained", "unconstrained"];
const SWEEP_DELTAS = [0.5, 0.8, 1.0, 1.2];
const SWEEP_CUTOFFS: Cutoff[] = [10000, 50000, "all"];

function el<T extends HTMLElement>(id: string): T {
  const node = document.getElementById(id);
  if (node === null) throw new Error(`missing element #${id}`);
  return node as T;
}

function readControls(session: ExplorerSession): void {
  session.setTerms(
    el<HTMLInputElement>("term-a").value.trim(),
    el<HTMLInputElement>("term-b").value.trim(),
    el<HTMLInputElement>("term-c").value.trim(),
  );
  session.delta = Number(el<HTMLInputElement>("delta").value);
  session.topn = Number(el<HTMLInputElement>("topn").value);
  const cutoff = el<HTMLInputElement>("cutoff").value.trim();
  session.cutoff = cutoff === "" || cutoff === "all" ? "all" : Number(cutoff);
}

function writeControls(session: ExplorerSession): void {
  el<HTMLInputElement>("delta").value = String(session.delta);
  el<HTMLInputElement>("cutoff").value = String(session.cutoff);
}

export function wireUp(baseUrl: string): ExplorerSession {
  const api = new ApiClient(baseUrl);
  const session = new ExplorerSession();

  const selectionBox = el<HTMLElement>("selections");
  for (const algo of ALGOS) {
    for (const mode of MODES) {
      const label = document.createElement("label");
      const box = document.createElement("input");
      box.type = "checkbox";
      box.checked = session.selections.some(
        (s) => s.algo === algo && s.mode === mode,
      );
      box.addEventListener("change", () => session.toggleSelection(algo, mode));
      label.appendChild(box);
      label.appendChild(document.createTextNode(` ${algo} / ${mode}`));
      selectionBox.appendChild(label);
    }
  }

  const presetBox = el<HTMLElement>("presets");
  for (const preset of PRESETS) {
    const button = document.createElement("button");
    button.textContent = preset.label;
    button.addEventListener("click", () => {
      el<HTMLInputElement>("term-a").value = preset.a;
      el<HTMLInputElement>("term-b").value = preset.b;
      el<HTMLInputElement>("term-c").value = preset.c;
      el<HTMLInputElement>("probe-term").value = preset.probe;
    });
    presetBox.appendChild(button);
  }

  el<HTMLButtonElement>("run-query").addEventListener("click", async () => {
    readControls(session);
    const columns = await runQueryPanel(session, api);
    // null means a newer submission superseded this one; leave the DOM alone
    if (columns !== null) {
      renderQueryPanel(el("query-results"), columns);
    }
  });

  el<HTMLButtonElement>("run-probe").addEventListener("click", async () => {
    readControls(session);
    const term = el<HTMLInputElement>("probe-term").value.trim();
    const sel = session.selections[0] ?? { algo: "cosadd", mode: "constrained" };
    const result = await probeRank(api, session.paramsFor(sel), term);
    renderProbe(el("probe-results"), result);
  });

  el<HTMLButtonElement>("run-sweep").addEventListener("click", async () => {
    readControls(session);
    const mode = session.selections[0]?.mode ?? "constrained";
    const result = await runSweep(session, api, SWEEP_DELTAS, SWEEP_CUTOFFS, mode);
    renderSweepPanel(el("sweep-results"), result, (delta, cutoff) => {
      applyCell(session, delta, cutoff);
      writeControls(session);
    });
  });

  return session;
}

if (typeof document !== "undefined" && document.getElementById("run-query")) {
  void wireUp("");
}
