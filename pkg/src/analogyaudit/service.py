"""HTTP service over one loaded embedding set.

Every response echoes the complete effective parameter set; nothing is
applied silently. The loaded model is immutable, so request handling is
read-only and safe under concurrency.
"""

from __future__ import annotations

import time
from typing import Optional, Union

from fastapi import FastAPI, HTTPException, Request
from fastapi.exceptions import RequestValidationError
from fastapi.responses import JSONResponse

from .audit import SweepSpec, sweep
from .engine import (
    AnalogyQuery,
    BolukbasiDir,
    ConstraintMode,
    EmptyCandidateSetError,
    TokenNotFoundError,
    pair_search,
    rank_of,
    solve,
)
from .params import (
    ALGO_NAMES,
    DEFAULT_DELTA,
    DEFAULT_EPSILON,
    DEFAULT_TOPN,
    MODE_NAMES,
    cutoff_label,
    make_algorithm,
    make_mode,
    parse_cutoff,
)
from .store import (
    EmbeddingSet,
    EmptyVocabularyError,
    LookupStatus,
    ShapeRules,
    VocabView,
    make_view,
)


def _bad(reason: str, message: str) -> HTTPException:
    return HTTPException(status_code=400, detail={"reason": reason, "message": message})


class ServerState:
    """Loaded sets keyed by id, view cache, and a request counter."""

    def __init__(self, cutoff_max: Optional[int] = None):
        self.sets: dict[str, EmbeddingSet] = {}
        self.cutoff_max = cutoff_max
        self.requests = 0
        self._views: dict[tuple[str, Optional[int]], VocabView] = {}

    def add(self, model_id: str, emb: EmbeddingSet) -> None:
        if model_id in self.sets:
            raise ValueError(f"duplicate model id {model_id!r}")
        self.sets[model_id] = emb

    def default_id(self) -> str:
        return next(iter(self.sets))

    def effective_cutoff(self, cutoff: Optional[int]) -> Optional[int]:
        if self.cutoff_max is None:
            return cutoff
        if cutoff is None:
            return self.cutoff_max
        return min(cutoff, self.cutoff_max)

    def view(self, model_id: str, cutoff: Optional[int]) -> VocabView:
        key = (model_id, cutoff)
        if key not in self._views:
            self._views[key] = make_view(self.sets[model_id], cutoff, ShapeRules.none())
        return self._views[key]


def create_app(state: ServerState) -> FastAPI:
    app = FastAPI(title="analogyaudit")

    @app.exception_handler(RequestValidationError)
    async def on_validation_error(request: Request, exc: RequestValidationError):
        return JSONResponse(
            status_code=400,
            content={"detail": {"reason": "invalid_params", "message": str(exc.errors())}},
        )

    def resolve_common(algo: str, mode: str, cutoff: Union[str, None],
                       delta: float, epsilon: float):
        try:
            algorithm = make_algorithm(algo, delta=delta, epsilon=epsilon)
            constraint = make_mode(mode)
            cut = state.effective_cutoff(parse_cutoff(cutoff))
        except ValueError as exc:
            raise _bad("invalid_params", str(exc))
        return algorithm, constraint, cut

    def query_view(model_id: str, cut: Optional[int]) -> VocabView:
        try:
            return state.view(model_id, cut)
        except EmptyVocabularyError as exc:
            raise _bad("empty_vocabulary", str(exc))

    def echo(model_id: str, **params) -> dict:
        return {"model": model_id, **params}

    @app.get("/api/meta")
    def meta():
        state.requests += 1
        model_id = state.default_id()
        emb = state.sets[model_id]
        return {
            "model": model_id,
            "vocab_size": emb.size,
            "dim": emb.dim,
            "algorithms": list(ALGO_NAMES),
            "modes": list(MODE_NAMES),
            "cutoff_max": cutoff_label(state.cutoff_max),
        }

    @app.get("/api/query")
    def query(
        a: str,
        b: str,
        c: str,
        algo: str = "cosadd",
        mode: str = "constrained",
        topn: int = DEFAULT_TOPN,
        delta: float = DEFAULT_DELTA,
        epsilon: float = DEFAULT_EPSILON,
        cutoff: Optional[str] = None,
    ):
        state.requests += 1
        model_id = state.default_id()
        algorithm, constraint, cut = resolve_common(algo, mode, cutoff, delta, epsilon)
        view = query_view(model_id, cut)
        start = time.perf_counter()
        try:
            if topn < 1:
                raise _bad("invalid_params", f"topn must be >= 1, got {topn}")
            result = solve(AnalogyQuery(a, b, c, algorithm, constraint, view, top_n=topn))
        except TokenNotFoundError as exc:
            raise _bad(_token_reason(view, exc.token), str(exc))
        except EmptyCandidateSetError as exc:
            raise _bad("empty_candidates", str(exc))
        elapsed_ms = (time.perf_counter() - start) * 1000.0
        return {
            "params": echo(
                model_id,
                a=a, b=b, c=c,
                algo=algo, mode=mode, topn=topn,
                delta=delta, epsilon=epsilon, cutoff=cutoff_label(cut),
            ),
            "candidates": [
                {"token": x.token, "score": x.score, "rank": x.rank}
                for x in result.candidates
            ],
            "evaluated_count": result.evaluated_count,
            "timing_ms": elapsed_ms,
        }

    @app.get("/api/rank")
    def rank(
        a: str,
        b: str,
        c: str,
        term: str,
        algo: str = "cosadd",
        mode: str = "constrained",
        delta: float = DEFAULT_DELTA,
        epsilon: float = DEFAULT_EPSILON,
        cutoff: Optional[str] = None,
    ):
        state.requests += 1
        model_id = state.default_id()
        algorithm, constraint, cut = resolve_common(algo, mode, cutoff, delta, epsilon)
        view = query_view(model_id, cut)
        try:
            position = rank_of(
                AnalogyQuery(a, b, c, algorithm, constraint, view), term
            )
        except TokenNotFoundError as exc:
            raise _bad(_token_reason(view, exc.token), str(exc))
        except EmptyCandidateSetError as exc:
            raise _bad("empty_candidates", str(exc))
        return {
            "params": echo(
                model_id,
                a=a, b=b, c=c, term=term,
                algo=algo, mode=mode,
                delta=delta, epsilon=epsilon, cutoff=cutoff_label(cut),
            ),
            "term": term,
            "rank": position,
            "status": "ranked" if position is not None else "absent",
        }

    @app.get("/api/pairs")
    def pairs(
        a: str,
        c: str,
        delta: float = DEFAULT_DELTA,
        cutoff: Optional[str] = None,
        limit: int = 10,
    ):
        state.requests += 1
        model_id = state.default_id()
        try:
            cut = state.effective_cutoff(parse_cutoff(cutoff))
        except ValueError as exc:
            raise _bad("invalid_params", str(exc))
        view = query_view(model_id, cut)
        try:
            results = pair_search(a, c, view, delta=delta, limit=limit)
        except TokenNotFoundError as exc:
            raise _bad(_token_reason(view, exc.token), str(exc))
        except ValueError as exc:
            raise _bad("invalid_params", str(exc))
        return {
            "params": echo(model_id, a=a, c=c, delta=delta,
                           cutoff=cutoff_label(cut), limit=limit),
            "pairs": [{"b": p.b, "d": p.d, "score": p.score} for p in results],
        }

    @app.post("/api/sweep")
    def run_sweep(body: dict):
        state.requests += 1
        model_id = state.default_id()
        emb = state.sets[model_id]
        try:
            a, b, c = body["a"], body["b"], body["c"]
        except KeyError as exc:
            raise _bad("invalid_params", f"missing field {exc}")
        mode_name = body.get("mode", "constrained")
        deltas = tuple(float(d) for d in body.get("deltas", [])) or None
        cutoffs = body.get("cutoffs")
        try:
            constraint = make_mode(mode_name)
            spec_kwargs = {}
            if deltas:
                spec_kwargs["deltas"] = deltas
            if cutoffs is not None:
                spec_kwargs["cutoffs"] = tuple(
                    state.effective_cutoff(parse_cutoff(k)) for k in cutoffs
                )
            spec = SweepSpec(a=a, b=b, c=c, **spec_kwargs)
        except ValueError as exc:
            raise _bad("invalid_params", str(exc))
        try:
            grid = sweep(spec, emb, BolukbasiDir(), constraint)
        except TokenNotFoundError as exc:
            raise _bad("unknown_token", str(exc))
        return {
            "params": echo(
                model_id,
                a=a, b=b, c=c, mode=mode_name, algo="bolukbasi",
                deltas=list(spec.deltas),
                cutoffs=[cutoff_label(k) for k in spec.cutoffs],
            ),
            "grid": [list(row) for row in grid.grid],
        }

    @app.get("/api/vocab")
    def vocab(token: str, cutoff: Optional[str] = None):
        state.requests += 1
        model_id = state.default_id()
        try:
            cut = state.effective_cutoff(parse_cutoff(cutoff))
        except ValueError as exc:
            raise _bad("invalid_params", str(exc))
        view = query_view(model_id, cut)
        result = view.lookup(token)
        rank = result.index
        if rank is None and result.status == LookupStatus.FILTERED:
            rank = state.sets[model_id].index_of(token)
        return {
            "params": echo(model_id, token=token, cutoff=cutoff_label(cut)),
            "status": result.status.value,
            "rank": rank,
        }

    return app


def _token_reason(view: VocabView, token: str) -> str:
    # the unknown vs filtered-out distinction matters: filtered words have
    # silently changed published results
    status = view.lookup(token).status
    return "filtered_token" if status == LookupStatus.FILTERED else "unknown_token"
