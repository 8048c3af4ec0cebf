"""Analogy test-set parsing and constrained vs unconstrained accuracy."""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path
from typing import Optional, Sequence, Union

import numpy as np

from .engine import (
    Algorithm,
    AnalogyQuery,
    BolukbasiDir,
    ConstraintMode,
    CosAdd,
    CosMul,
    _chunks,
    _unit,
    solve,
)
from .store import EmbeddingSet, LookupStatus, VocabView


class DatasetFormatError(ValueError):
    """Raised for malformed analogy dataset files."""


Quadruple = tuple[str, str, str, str]


@dataclass(frozen=True)
class Category:
    name: str
    quadruples: tuple[Quadruple, ...]


@dataclass(frozen=True)
class AnalogyDataset:
    categories: tuple[Category, ...]

    @property
    def total(self) -> int:
        return sum(len(c.quadruples) for c in self.categories)


@dataclass(frozen=True)
class CategoryResult:
    name: str
    evaluated: int
    skipped_oov: int
    correct: int

    @property
    def accuracy(self) -> float:
        return self.correct / self.evaluated if self.evaluated else 0.0


@dataclass(frozen=True)
class EvalReport:
    per_category: tuple[CategoryResult, ...]
    micro: float
    macro: float
    algorithm: Algorithm
    mode: ConstraintMode


@dataclass(frozen=True)
class ErrorBreakdown:
    """How unconstrained errors split: did the engine hand back an input?"""

    returned_b: int
    returned_c: int
    returned_other: int


@dataclass(frozen=True)
class ModeComparison:
    algorithm: Algorithm
    constrained: EvalReport
    unconstrained: EvalReport
    constrained_errors: ErrorBreakdown
    unconstrained_errors: ErrorBreakdown


def parse_dataset(path: Union[str, Path]) -> AnalogyDataset:
    """Parse the questions-words convention: ": name" headers, 4-token lines."""
    categories: list[Category] = []
    name: Optional[str] = None
    quads: list[Quadruple] = []
    seen: set[str] = set()

    def close():
        if name is not None:
            if not quads:
                raise DatasetFormatError(f"category {name!r} has no quadruples")
            categories.append(Category(name, tuple(quads)))

    with open(path, "r", encoding="utf-8") as f:
        for lineno, raw in enumerate(f, start=1):
            line = raw.strip()
            if not line:
                continue
            if line.startswith(": "):
                close()
                name = line[2:].strip()
                if name in seen:
                    raise DatasetFormatError(f"duplicate category {name!r}")
                seen.add(name)
                quads = []
                continue
            parts = line.split()
            if len(parts) != 4:
                raise DatasetFormatError(
                    f"line {lineno}: expected 4 tokens, got {len(parts)}"
                )
            if name is None:
                raise DatasetFormatError(f"line {lineno}: quadruple before any category")
            quads.append((parts[0], parts[1], parts[2], parts[3]))
    close()
    if not categories:
        raise DatasetFormatError("no categories in dataset")
    return AnalogyDataset(tuple(categories))


def _predict(
    view: VocabView, quad: Quadruple, algo: Algorithm, mode: ConstraintMode
) -> Optional[str]:
    """Top-1 answer, or None when any of the 4 tokens is OOV for the view."""
    if any(view.lookup(t).status != LookupStatus.FOUND for t in quad):
        return None
    query = AnalogyQuery(quad[0], quad[1], quad[2], algo, mode, view, top_n=1)
    return solve(query).candidates[0].token


def _predict_batch(
    view: VocabView,
    quads: Sequence[Quadruple],
    algo: Algorithm,
    mode: ConstraintMode,
) -> list[Optional[str]]:
    """Top-1 answers for many quadruples, sharing the big cosine matmul.

    Only for the additive/multiplicative objectives; predictions match the
    per-quadruple solve() path, including the low-rank tie-break.
    """
    base = view.base
    resolved: list[Optional[tuple[int, int, int]]] = []
    for quad in quads:
        hits = [view.lookup(t) for t in quad]
        if any(h.status != LookupStatus.FOUND for h in hits):
            resolved.append(None)
        else:
            resolved.append((hits[0].index, hits[1].index, hits[2].index))
    live = [k for k, r in enumerate(resolved) if r is not None]
    if not live:
        return [None] * len(quads)
    unique = sorted({i for k in live for i in resolved[k]})
    col = {i: j for j, i in enumerate(unique)}
    targets = np.column_stack([_unit(base, i) for i in unique])
    cand = view.admitted
    best_score = np.full(len(quads), -np.inf)
    best_idx = np.full(len(quads), -1, dtype=np.int64)
    for sl in _chunks(cand.size):
        rows = cand[sl]
        cos = (base.vectors[rows].astype(np.float64) @ targets) / base.norms[rows][:, None]
        for k in live:
            ia, ib, ic = resolved[k]
            ca, cb, cc = cos[:, col[ia]], cos[:, col[ib]], cos[:, col[ic]]
            if isinstance(algo, CosAdd):
                s = cc - ca + cb
            else:
                if algo.shifted:
                    s = ((1 + cc) / 2 * (1 + cb) / 2) / ((1 + ca) / 2 + algo.epsilon)
                else:
                    s = (cc * cb) / (ca + algo.epsilon)
            if mode == ConstraintMode.EXCLUDE_INPUTS:
                s[np.isin(rows, (ia, ib, ic))] = -np.inf
            m = int(np.argmax(s))
            if s[m] > best_score[k]:  # strict: ties keep the lower base rank
                best_score[k] = s[m]
                best_idx[k] = rows[m]
    return [
        base.tokens[int(best_idx[k])] if r is not None and best_idx[k] >= 0 else None
        for k, r in enumerate(resolved)
    ]


def evaluate(
    emb: EmbeddingSet,
    view: VocabView,
    ds: AnalogyDataset,
    algo: Algorithm,
    mode: ConstraintMode,
) -> EvalReport:
    report, _ = _evaluate_detailed(view, ds, algo, mode)
    return report


def _evaluate_detailed(
    view: VocabView, ds: AnalogyDataset, algo: Algorithm, mode: ConstraintMode
) -> tuple[EvalReport, list[tuple[Quadruple, Optional[str]]]]:
    results: list[CategoryResult] = []
    predictions: list[tuple[Quadruple, Optional[str]]] = []
    batched = isinstance(algo, (CosAdd, CosMul))
    for cat in ds.categories:
        evaluated = skipped = correct = 0
        if batched:
            preds = _predict_batch(view, cat.quadruples, algo, mode)
        else:
            preds = [_predict(view, quad, algo, mode) for quad in cat.quadruples]
        for quad, pred in zip(cat.quadruples, preds):
            predictions.append((quad, pred))
            if pred is None:
                skipped += 1
                continue
            evaluated += 1
            if pred == quad[3]:
                correct += 1
        results.append(CategoryResult(cat.name, evaluated, skipped, correct))
    total_eval = sum(r.evaluated for r in results)
    total_correct = sum(r.correct for r in results)
    micro = total_correct / total_eval if total_eval else 0.0
    scored = [r for r in results if r.evaluated > 0]
    macro = sum(r.accuracy for r in scored) / len(scored) if scored else 0.0
    return EvalReport(tuple(results), micro, macro, algo, mode), predictions


def _breakdown(preds: list[tuple[Quadruple, Optional[str]]]) -> ErrorBreakdown:
    rb = rc = other = 0
    for quad, pred in preds:
        if pred is None or pred == quad[3]:
            continue
        if pred == quad[1]:
            rb += 1
        elif pred == quad[2]:
            rc += 1
        else:
            other += 1
    return ErrorBreakdown(rb, rc, other)


def compare_modes(
    emb: EmbeddingSet,
    view: VocabView,
    ds: AnalogyDataset,
    algorithms: Sequence[Algorithm],
) -> list[ModeComparison]:
    out = []
    for algo in algorithms:
        con, con_preds = _evaluate_detailed(view, ds, algo, ConstraintMode.EXCLUDE_INPUTS)
        unc, unc_preds = _evaluate_detailed(view, ds, algo, ConstraintMode.UNCONSTRAINED)
        out.append(
            ModeComparison(
                algorithm=algo,
                constrained=con,
                unconstrained=unc,
                constrained_errors=_breakdown(con_preds),
                unconstrained_errors=_breakdown(unc_preds),
            )
        )
    return out


def render_report(report: EvalReport) -> str:
    lines = [
        f"algorithm={report.algorithm.name} mode={report.mode.value}",
        f"{'category':<30} {'eval':>6} {'oov':>6} {'correct':>8} {'acc':>7}",
    ]
    for r in report.per_category:
        lines.append(
            f"{r.name:<30} {r.evaluated:>6} {r.skipped_oov:>6} "
            f"{r.correct:>8} {r.accuracy:>7.4f}"
        )
    lines.append(f"micro={report.micro:.4f} macro={report.macro:.4f}")
    return "\n".join(lines)


def report_records(report: EvalReport) -> list[dict]:
    """One structured record per category, matching the report fields."""
    return [
        {
            "category": r.name,
            "evaluated": r.evaluated,
            "skipped_oov": r.skipped_oov,
            "correct": r.correct,
            "accuracy": r.accuracy,
            "algorithm": report.algorithm.name,
            "mode": report.mode.value,
        }
        for r in report.per_category
    ]
