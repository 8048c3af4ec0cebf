"""Bias-audit methodology: top-N transparency, rank of the reported term,
multi-set aggregation, and the delta x cutoff sweep."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Sequence

from .engine import (
    Algorithm,
    AnalogyQuery,
    BolukbasiDir,
    ConstraintMode,
    EmptyCandidateSetError,
    RankedList,
    TokenNotFoundError,
    full_ranking,
    solve,
)
from .store import EmbeddingSet, EmptyVocabularyError, ShapeRules, VocabView, make_view

DEFAULT_SWEEP_DELTAS = (0.5, 0.8, 0.9, 1.0, 1.1, 1.2, 1.5)
DEFAULT_SWEEP_CUTOFFS = (10_000, 25_000, 50_000, 100_000, 250_000, 500_000, None)


@dataclass(frozen=True)
class BiasQuery:
    a: str
    b: str
    c: str
    reported_term: Optional[str] = None

    def __post_init__(self):
        if not (self.a and self.b and self.c):
            raise ValueError("query tokens must be non-empty")


@dataclass(frozen=True)
class SetResult:
    set_id: str
    usable: bool
    top5: tuple[str, ...] = ()
    rank_of_reported: Optional[int] = None


@dataclass(frozen=True)
class AuditReport:
    query: BiasQuery
    per_set_results: tuple[SetResult, ...]
    mean_rank: Optional[float]  # over sets where the reported term appears
    aggregated_top5: tuple[str, ...]


@dataclass(frozen=True)
class SweepSpec:
    a: str
    b: str
    c: str
    deltas: tuple[float, ...] = DEFAULT_SWEEP_DELTAS
    cutoffs: tuple[Optional[int], ...] = DEFAULT_SWEEP_CUTOFFS
    rules: ShapeRules = ShapeRules.none()

    def __post_init__(self):
        if not self.deltas or not self.cutoffs:
            raise ValueError("deltas and cutoffs must be non-empty")


@dataclass(frozen=True)
class SweepGrid:
    spec: SweepSpec
    mode: ConstraintMode
    # grid[i][j] = top-1 token for (cutoffs[i], deltas[j]); None marks an
    # empty candidate set for that cell
    grid: tuple[tuple[Optional[str], ...], ...]


def audit(
    query: BiasQuery,
    sets: Sequence[tuple[str, EmbeddingSet]],
    algo: Algorithm,
    mode: ConstraintMode,
    cutoff: Optional[int] = None,
    rules: ShapeRules = ShapeRules.none(),
) -> AuditReport:
    """Run one bias query against several embedding sets and aggregate.

    Sets where a query token is unresolvable are flagged unusable and
    excluded from the means.
    """
    if not sets:
        raise ValueError("audit needs at least one embedding set")
    per_set: list[SetResult] = []
    # token -> list of ranks (absent in a set = that set's list length + 1)
    rankings: list[dict[str, int]] = []
    sizes: list[int] = []
    for set_id, emb in sets:
        try:
            view = make_view(emb, cutoff, rules)
            q = AnalogyQuery(query.a, query.b, query.c, algo, mode, view, top_n=5)
            ranking = full_ranking(q)
        except (TokenNotFoundError, EmptyVocabularyError, EmptyCandidateSetError):
            per_set.append(SetResult(set_id, usable=False))
            continue
        ranks = {c.token: c.rank for c in ranking.candidates}
        rankings.append(ranks)
        sizes.append(ranking.evaluated_count)
        reported_rank = (
            ranks.get(query.reported_term) if query.reported_term is not None else None
        )
        top5 = tuple(c.token for c in ranking.candidates[:5])
        per_set.append(SetResult(set_id, True, top5, reported_rank))

    present = [r.rank_of_reported for r in per_set if r.rank_of_reported is not None]
    mean_rank = sum(present) / len(present) if present else None

    aggregated: tuple[str, ...] = ()
    if rankings:
        union: set[str] = set()
        for ranks in rankings:
            union.update(ranks)
        mean_ranks = {
            tok: sum(r.get(tok, n + 1) for r, n in zip(rankings, sizes)) / len(rankings)
            for tok in union
        }
        aggregated = tuple(sorted(union, key=lambda t: (mean_ranks[t], t))[:5])
    return AuditReport(query, tuple(per_set), mean_rank, aggregated)


def sweep(
    spec: SweepSpec,
    emb: EmbeddingSet,
    algorithm: BolukbasiDir,
    mode: ConstraintMode,
) -> SweepGrid:
    """Top-1 answer for every (cutoff, delta) cell of the grid."""
    rows: list[tuple[Optional[str], ...]] = []
    for cutoff in spec.cutoffs:
        row: list[Optional[str]] = []
        for delta in spec.deltas:
            try:
                view = make_view(emb, cutoff, spec.rules)
                q = AnalogyQuery(
                    spec.a,
                    spec.b,
                    spec.c,
                    BolukbasiDir(delta=delta),
                    mode,
                    view,
                    top_n=1,
                )
                row.append(solve(q).candidates[0].token)
            except (EmptyVocabularyError, EmptyCandidateSetError):
                row.append(None)
        rows.append(tuple(row))
    return SweepGrid(spec, mode, tuple(rows))


def transparency_report(
    query: BiasQuery,
    emb: EmbeddingSet,
    algo: Algorithm,
    mode: ConstraintMode,
    n: int = 10,
    cutoff: Optional[int] = None,
    rules: ShapeRules = ShapeRules.none(),
) -> RankedList:
    """Full top-n slice with scores; never a single cherry-picked term."""
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    view = make_view(emb, cutoff, rules)
    return solve(AnalogyQuery(query.a, query.b, query.c, algo, mode, view, top_n=n))


def render_sweep(grid: SweepGrid) -> str:
    """Table with rows = cutoffs, columns = deltas."""
    spec = grid.spec
    width = max(
        [12] + [len(cell) for row in grid.grid for cell in row if cell is not None]
    )
    header = f"{'cutoff':>10} | " + " ".join(f"{d:>{width}.2f}" for d in spec.deltas)
    lines = [header, "-" * len(header)]
    for cutoff, row in zip(spec.cutoffs, grid.grid):
        label = "all" if cutoff is None else str(cutoff)
        cells = " ".join(f"{cell if cell is not None else '(empty)':>{width}}" for cell in row)
        lines.append(f"{label:>10} | {cells}")
    return "\n".join(lines)


def render_audit(report: AuditReport) -> str:
    q = report.query
    lines = [f"analogy: {q.a} : {q.b} :: {q.c} : X   reported: {q.reported_term or '-'}"]
    for r in report.per_set_results:
        if not r.usable:
            lines.append(f"  {r.set_id:<20} UNUSABLE (query token missing)")
            continue
        rank = r.rank_of_reported if r.rank_of_reported is not None else "-"
        lines.append(f"  {r.set_id:<20} rank={rank:<8} top5: {' '.join(r.top5)}")
    mean = f"{report.mean_rank:.1f}" if report.mean_rank is not None else "-"
    lines.append(f"  mean rank: {mean}")
    lines.append(f"  aggregated top-5: {' '.join(report.aggregated_top5)}")
    return "\n".join(lines)
