"""Analogy scoring and ranking under three formulas and two constraint modes.

All scoring accumulates in double precision regardless of storage width.
Ties in every ranking are broken toward the lower base-vocabulary rank
(the more frequent word), which makes rankings fully deterministic.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Iterator, Optional, Union

import numpy as np

from .store import EmbeddingSet, LookupStatus, VocabView

CHUNK_ROWS = 262_144


class TokenNotFoundError(KeyError):
    def __init__(self, token: str):
        super().__init__(token)
        self.token = token

    def __str__(self) -> str:
        return f"token {self.token!r} not found in the embedding set"


class EmptyCandidateSetError(ValueError):
    """No candidates remain after view filtering and mode exclusions."""


@dataclass(frozen=True)
class CosAdd:
    """cos(d,c) - cos(d,a) + cos(d,b), the classic additive objective."""

    name = "cosadd"


@dataclass(frozen=True)
class CosMul:
    """Multiplicative objective; cosines are shifted into [0,1] so no
    single term can dominate and the denominator stays positive.

    shifted=False evaluates the raw-cosine variant, for experimentation.
    """

    epsilon: float = 0.001
    shifted: bool = True
    name = "cosmul"


@dataclass(frozen=True)
class BolukbasiDir:
    """Direction-matching score cos(a-c, b-d), gated by ||b-d|| <= delta."""

    delta: float = 1.0
    name = "bolukbasi"

    def __post_init__(self):
        if self.delta <= 0:
            raise ValueError(f"delta must be > 0, got {self.delta}")


Algorithm = Union[CosAdd, CosMul, BolukbasiDir]


class ConstraintMode(str, Enum):
    EXCLUDE_INPUTS = "constrained"
    UNCONSTRAINED = "unconstrained"


@dataclass(frozen=True)
class AnalogyQuery:
    a: str
    b: str
    c: str
    algorithm: Algorithm
    mode: ConstraintMode
    view: VocabView
    top_n: int = 10

    def __post_init__(self):
        if self.top_n < 1:
            raise ValueError(f"top_n must be >= 1, got {self.top_n}")


@dataclass(frozen=True)
class ScoredCandidate:
    token: str
    score: float
    rank: int  # 1-based


@dataclass(frozen=True)
class RankedList:
    query: AnalogyQuery
    candidates: tuple[ScoredCandidate, ...]
    evaluated_count: int


@dataclass(frozen=True)
class PairResult:
    b: str
    d: str
    score: float


# --- scalar scoring --------------------------------------------------------


def cosine(u: np.ndarray, v: np.ndarray) -> float:
    u = np.asarray(u, dtype=np.float64)
    v = np.asarray(v, dtype=np.float64)
    if u.shape != v.shape:
        raise ValueError(f"dimension mismatch: {u.shape} vs {v.shape}")
    nu, nv = np.linalg.norm(u), np.linalg.norm(v)
    if nu == 0.0 or nv == 0.0:
        raise ValueError("cosine undefined for the zero vector")
    return float(np.dot(u, v) / (nu * nv))


def score_cosadd(a: np.ndarray, b: np.ndarray, c: np.ndarray, d: np.ndarray) -> float:
    return cosine(d, c) - cosine(d, a) + cosine(d, b)


def score_cosmul(
    a: np.ndarray,
    b: np.ndarray,
    c: np.ndarray,
    d: np.ndarray,
    epsilon: float = 0.001,
    shifted: bool = True,
) -> float:
    if epsilon <= 0:
        raise ValueError(f"epsilon must be > 0, got {epsilon}")
    ca, cb, cc = cosine(d, a), cosine(d, b), cosine(d, c)
    if shifted:
        ca, cb, cc = (1 + ca) / 2, (1 + cb) / 2, (1 + cc) / 2
    return (cc * cb) / (ca + epsilon)


def score_bolukbasi(
    a: np.ndarray, c: np.ndarray, b: np.ndarray, d: np.ndarray, delta: float = 1.0
) -> float:
    """Single-pair direction score; zero-difference pairs score 0."""
    if delta <= 0:
        raise ValueError(f"delta must be > 0, got {delta}")
    ac = np.asarray(a, dtype=np.float64) - np.asarray(c, dtype=np.float64)
    b64 = np.asarray(b, dtype=np.float64)
    d64 = np.asarray(d, dtype=np.float64).reshape(1, -1)
    return float(_bolukbasi_scores(ac, b64, d64, delta)[0])


def _bolukbasi_scores(
    ac: np.ndarray, b: np.ndarray, cand: np.ndarray, delta: float
) -> np.ndarray:
    """Direction scores of b against every row of cand.

    Shared by solve() and pair_search() so identical (b, d) pairs produce
    bitwise-identical scores on both routes.
    """
    diff = b[None, :] - cand
    sq = np.einsum("ij,ij->i", diff, diff)
    scores = np.zeros(cand.shape[0], dtype=np.float64)
    acn = np.linalg.norm(ac)
    if acn == 0.0:
        return scores
    mask = (sq > 0.0) & (sq <= delta * delta)
    if np.any(mask):
        # einsum keeps per-row summation order independent of batch size,
        # so scores stay bitwise-stable across the solve and pair routes
        dots = np.einsum("ij,j->i", diff[mask], ac)
        scores[mask] = dots / (acn * np.sqrt(sq[mask]))
    return scores


# --- vectorized candidate scoring ------------------------------------------


def _resolve(base: EmbeddingSet, token: str) -> int:
    i = base.index_of(token)
    if i is None:
        raise TokenNotFoundError(token)
    return i


def _candidate_indices(query: AnalogyQuery, ia: int, ib: int, ic: int) -> np.ndarray:
    cand = query.view.admitted
    if query.mode == ConstraintMode.EXCLUDE_INPUTS:
        cand = cand[~np.isin(cand, [ia, ib, ic])]
    if cand.size == 0:
        raise EmptyCandidateSetError("no candidates remain after constraints")
    return cand


def _chunks(n: int) -> Iterator[slice]:
    for start in range(0, n, CHUNK_ROWS):
        yield slice(start, min(start + CHUNK_ROWS, n))


def _cosines_to(base: EmbeddingSet, cand: np.ndarray, targets: np.ndarray) -> np.ndarray:
    """Cosine of every candidate row against each unit column of targets."""
    out = np.empty((cand.size, targets.shape[1]), dtype=np.float64)
    for sl in _chunks(cand.size):
        rows = cand[sl]
        block = base.vectors[rows].astype(np.float64)
        out[sl] = (block @ targets) / base.norms[rows][:, None]
    return out


def _unit(base: EmbeddingSet, i: int) -> np.ndarray:
    n = base.norms[i]
    if n == 0.0:
        raise ValueError(f"zero vector for token {base.tokens[i]!r}")
    return base.vectors[i].astype(np.float64) / n


def _score_candidates(query: AnalogyQuery, cand: np.ndarray) -> np.ndarray:
    base = query.view.base
    ia, ib, ic = (_resolve(base, t) for t in (query.a, query.b, query.c))
    algo = query.algorithm
    if isinstance(algo, BolukbasiDir):
        ac = base.vectors[ia].astype(np.float64) - base.vectors[ic].astype(np.float64)
        b = base.vectors[ib].astype(np.float64)
        scores = np.empty(cand.size, dtype=np.float64)
        for sl in _chunks(cand.size):
            block = base.vectors[cand[sl]].astype(np.float64)
            scores[sl] = _bolukbasi_scores(ac, b, block, algo.delta)
        return scores
    targets = np.column_stack([_unit(base, i) for i in (ia, ib, ic)])
    cos = _cosines_to(base, cand, targets)
    ca, cb, cc = cos[:, 0], cos[:, 1], cos[:, 2]
    if isinstance(algo, CosAdd):
        return cc - ca + cb
    if isinstance(algo, CosMul):
        if algo.shifted:
            ca, cb, cc = (1 + ca) / 2, (1 + cb) / 2, (1 + cc) / 2
        return (cc * cb) / (ca + algo.epsilon)
    raise TypeError(f"unknown algorithm {algo!r}")


def _full_order(query: AnalogyQuery) -> tuple[np.ndarray, np.ndarray]:
    """(candidate indices, scores) sorted by score desc, base rank asc."""
    base = query.view.base
    ia, ib, ic = (_resolve(base, t) for t in (query.a, query.b, query.c))
    cand = _candidate_indices(query, ia, ib, ic)
    scores = _score_candidates(query, cand)
    # cand is ascending by base rank, so a stable sort yields the tie-break
    order = np.argsort(-scores, kind="stable")
    return cand[order], scores[order]


def solve(query: AnalogyQuery) -> RankedList:
    """Rank every admitted candidate and return the top_n slice."""
    idx, scores = _full_order(query)
    base = query.view.base
    n = min(query.top_n, idx.size)
    cands = tuple(
        ScoredCandidate(base.tokens[int(idx[k])], float(scores[k]), k + 1)
        for k in range(n)
    )
    return RankedList(query=query, candidates=cands, evaluated_count=int(idx.size))


def full_ranking(query: AnalogyQuery) -> RankedList:
    """solve() extended to the entire candidate set."""
    idx, scores = _full_order(query)
    base = query.view.base
    cands = tuple(
        ScoredCandidate(base.tokens[int(i)], float(s), k + 1)
        for k, (i, s) in enumerate(zip(idx, scores))
    )
    return RankedList(query=query, candidates=cands, evaluated_count=int(idx.size))


def rank_of(query: AnalogyQuery, token: str) -> Optional[int]:
    """1-based position of token in the full ranking, or None if the token
    is not in the candidate set (unknown, filtered out, or mode-excluded)."""
    base = query.view.base
    i = base.index_of(token)
    if i is None:
        return None
    idx, _ = _full_order(query)
    where = np.nonzero(idx == i)[0]
    if where.size == 0:
        return None
    return int(where[0]) + 1


def pair_search(
    a: str, c: str, view: VocabView, delta: float = 1.0, limit: int = 10
) -> list[PairResult]:
    """Top pairs (b, d) over admitted x admitted, b != d, by direction score.

    Exhaustive O(V^2 * dim); pairs failing ||b-d|| <= delta never appear.
    """
    if limit < 1:
        raise ValueError(f"limit must be >= 1, got {limit}")
    if delta <= 0:
        raise ValueError(f"delta must be > 0, got {delta}")
    base = view.base
    ia, ic = _resolve(base, a), _resolve(base, c)
    ac = base.vectors[ia].astype(np.float64) - base.vectors[ic].astype(np.float64)
    admitted = view.admitted
    cand = base.vectors[admitted].astype(np.float64)
    b_idx: list[np.ndarray] = []
    d_idx: list[np.ndarray] = []
    vals: list[np.ndarray] = []
    for k, bi in enumerate(admitted):
        scores = _bolukbasi_scores(ac, cand[k], cand, delta)
        diff = cand[k][None, :] - cand
        sq = np.einsum("ij,ij->i", diff, diff)
        keep = (sq > 0.0) & (sq <= delta * delta)
        keep &= admitted != bi
        if not np.any(keep):
            continue
        d_sel = admitted[keep]
        b_idx.append(np.full(d_sel.size, bi, dtype=np.int64))
        d_idx.append(d_sel)
        vals.append(scores[keep])
    if not vals:
        return []
    bs = np.concatenate(b_idx)
    ds = np.concatenate(d_idx)
    ss = np.concatenate(vals)
    order = np.lexsort((ds, bs, -ss))[: min(limit, ss.size)]
    return [
        PairResult(base.tokens[int(bs[k])], base.tokens[int(ds[k])], float(ss[k]))
        for k in order
    ]
