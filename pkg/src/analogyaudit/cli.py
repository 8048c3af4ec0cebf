"""Command-line interface: query, eval, audit, sweep, serve.

Exit codes: 0 success, 1 I/O or format errors, 2 resolution/usage errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Optional

from . import audit as audit_mod
from . import harness
from .engine import (
    AnalogyQuery,
    BolukbasiDir,
    EmptyCandidateSetError,
    TokenNotFoundError,
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
    parse_format,
)
from .store import (
    EmbeddingFormatError,
    EmbeddingSet,
    EmptyVocabularyError,
    LoadOptions,
    ShapeRules,
    load,
    make_view,
)

EXIT_OK = 0
EXIT_IO = 1
EXIT_RESOLUTION = 2


def _load_model(path: str, format_name: str, normalize: bool = True,
                lowercase: bool = False) -> EmbeddingSet:
    opts = LoadOptions(
        format=parse_format(format_name), normalize=normalize, lowercase=lowercase
    )
    return load(path, opts)


def _add_model_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--model", required=True, help="embedding file path")
    p.add_argument("--format", default="bin", choices=["bin", "txt", "glove"])
    p.add_argument("--no-normalize", action="store_true")
    p.add_argument("--lowercase", action="store_true")


def _add_query_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--algo", default="cosadd", choices=list(ALGO_NAMES))
    p.add_argument("--mode", default="constrained", choices=list(MODE_NAMES))
    p.add_argument("--delta", type=float, default=None,
                   help=f"bolukbasi threshold (default {DEFAULT_DELTA})")
    p.add_argument("--epsilon", type=float, default=DEFAULT_EPSILON)
    p.add_argument("--cutoff", default="all",
                   help='vocabulary cutoff, an integer or "all"')
    p.add_argument("--json", action="store_true", dest="as_json")


def _effective_delta(args) -> float:
    if args.delta is not None and args.algo != "bolukbasi":
        print("warning: --delta only applies to bolukbasi; ignored", file=sys.stderr)
        return DEFAULT_DELTA
    return args.delta if args.delta is not None else DEFAULT_DELTA


def _query_echo(args, delta: float, cutoff: Optional[int]) -> dict:
    return {
        "a": args.a, "b": args.b, "c": args.c,
        "algo": args.algo, "mode": args.mode, "topn": args.topn,
        "delta": delta, "epsilon": args.epsilon, "cutoff": cutoff_label(cutoff),
    }


def cmd_query(args) -> int:
    emb = _load_model(args.model, args.format, not args.no_normalize, args.lowercase)
    delta = _effective_delta(args)
    cutoff = parse_cutoff(args.cutoff)
    algo = make_algorithm(args.algo, delta=delta, epsilon=args.epsilon)
    view = make_view(emb, cutoff, ShapeRules.none())
    query = AnalogyQuery(args.a, args.b, args.c, algo, make_mode(args.mode),
                         view, top_n=args.topn)
    result = solve(query)
    payload = {
        "params": _query_echo(args, delta, cutoff),
        "candidates": [
            {"token": x.token, "score": x.score, "rank": x.rank}
            for x in result.candidates
        ],
        "evaluated_count": result.evaluated_count,
    }
    if args.as_json:
        print(json.dumps(payload))
    else:
        p = payload["params"]
        print(" ".join(f"{k}={v}" for k, v in p.items()))
        print(f"evaluated_count={result.evaluated_count}")
        for x in result.candidates:
            print(f"{x.rank:>4}  {x.score: .6f}  {x.token}")
    return EXIT_OK


def cmd_eval(args) -> int:
    emb = _load_model(args.model, args.format, not args.no_normalize, args.lowercase)
    ds = harness.parse_dataset(args.dataset)
    cutoff = parse_cutoff(args.cutoff)
    view = make_view(emb, cutoff, ShapeRules.none())
    delta = _effective_delta(args)
    algo = make_algorithm(args.algo, delta=delta, epsilon=args.epsilon)
    if args.both_modes:
        comparisons = harness.compare_modes(emb, view, ds, [algo])
        cmp = comparisons[0]
        for report in (cmp.constrained, cmp.unconstrained):
            if args.as_json:
                for rec in harness.report_records(report):
                    print(json.dumps(rec))
            else:
                print(harness.render_report(report))
        for label, bd in (("constrained", cmp.constrained_errors),
                          ("unconstrained", cmp.unconstrained_errors)):
            print(f"{label} errors: returned_b={bd.returned_b} "
                  f"returned_c={bd.returned_c} other={bd.returned_other}")
        return EXIT_OK
    report = harness.evaluate(emb, view, ds, algo, make_mode(args.mode))
    if args.as_json:
        for rec in harness.report_records(report):
            print(json.dumps(rec))
        print(json.dumps({"micro": report.micro, "macro": report.macro}))
    else:
        print(harness.render_report(report))
    return EXIT_OK


def _rules_from_config(cfg: dict) -> ShapeRules:
    r = cfg.get("rules", {})
    return ShapeRules(
        max_len_20=bool(r.get("max_len_20", False)),
        no_punctuation=bool(r.get("no_punctuation", False)),
        no_uppercase=bool(r.get("no_uppercase", False)),
    )


def cmd_audit(args) -> int:
    cfg = json.loads(Path(args.config).read_text())
    queries = cfg.get("queries", [])
    if not queries:
        print("error: audit config has no queries", file=sys.stderr)
        return EXIT_RESOLUTION
    models = cfg.get("models", [])
    if not models:
        print("error: audit config has no models", file=sys.stderr)
        return EXIT_RESOLUTION
    sets = []
    for m in models:
        emb = _load_model(m["path"], m.get("format", "bin"),
                          m.get("normalize", True), m.get("lowercase", False))
        sets.append((m.get("id", Path(m["path"]).stem), emb))
    algo = make_algorithm(
        cfg.get("algo", "cosadd"),
        delta=float(cfg.get("delta", DEFAULT_DELTA)),
        epsilon=float(cfg.get("epsilon", DEFAULT_EPSILON)),
    )
    mode = make_mode(cfg.get("mode", "unconstrained"))
    cutoff = parse_cutoff(cfg.get("cutoff", "all"))
    rules = _rules_from_config(cfg)
    for q in queries:
        bq = audit_mod.BiasQuery(q["a"], q["b"], q["c"], q.get("reported"))
        report = audit_mod.audit(bq, sets, algo, mode, cutoff=cutoff, rules=rules)
        if args.as_json:
            print(json.dumps({
                "query": {"a": bq.a, "b": bq.b, "c": bq.c, "reported": bq.reported_term},
                "algo": cfg.get("algo", "cosadd"), "mode": mode.value,
                "cutoff": cutoff_label(cutoff),
                "per_set": [
                    {"set": r.set_id, "usable": r.usable, "top5": list(r.top5),
                     "rank_of_reported": r.rank_of_reported}
                    for r in report.per_set_results
                ],
                "mean_rank": report.mean_rank,
                "aggregated_top5": list(report.aggregated_top5),
            }))
        else:
            print(audit_mod.render_audit(report))
    return EXIT_OK


def cmd_sweep(args) -> int:
    emb = _load_model(args.model, args.format, not args.no_normalize, args.lowercase)
    spec_kwargs = {}
    if args.deltas:
        spec_kwargs["deltas"] = tuple(float(x) for x in args.deltas.split(","))
    if args.cutoffs:
        spec_kwargs["cutoffs"] = tuple(parse_cutoff(x) for x in args.cutoffs.split(","))
    spec = audit_mod.SweepSpec(a=args.a, b=args.b, c=args.c, **spec_kwargs)
    grid = audit_mod.sweep(spec, emb, BolukbasiDir(), make_mode(args.mode))
    if args.as_json:
        print(json.dumps({
            "a": spec.a, "b": spec.b, "c": spec.c,
            "mode": grid.mode.value, "algo": "bolukbasi",
            "deltas": list(spec.deltas),
            "cutoffs": [cutoff_label(k) for k in spec.cutoffs],
            "grid": [list(row) for row in grid.grid],
        }))
    else:
        print(f"a={spec.a} b={spec.b} c={spec.c} algo=bolukbasi mode={grid.mode.value}")
        print(audit_mod.render_sweep(grid))
    return EXIT_OK


def cmd_serve(args) -> int:
    import uvicorn

    from .service import ServerState, create_app

    emb = _load_model(args.model, args.format, not args.no_normalize, args.lowercase)
    state = ServerState(cutoff_max=parse_cutoff(args.cutoff_max))
    state.add(Path(args.model).stem, emb)
    app = create_app(state)
    uvicorn.run(app, host=args.host, port=args.port, log_level="warning")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="analogyaudit")
    sub = parser.add_subparsers(dest="command", required=True)

    q = sub.add_parser("query", help="run one analogy query")
    _add_model_flags(q)
    q.add_argument("--a", required=True)
    q.add_argument("--b", required=True)
    q.add_argument("--c", required=True)
    q.add_argument("--topn", type=int, default=DEFAULT_TOPN)
    _add_query_flags(q)
    q.set_defaults(func=cmd_query)

    e = sub.add_parser("eval", help="accuracy on an analogy test set")
    _add_model_flags(e)
    e.add_argument("--dataset", required=True)
    e.add_argument("--both-modes", action="store_true",
                   help="compare constrained vs unconstrained with error breakdown")
    _add_query_flags(e)
    e.set_defaults(func=cmd_eval)

    a = sub.add_parser("audit", help="bias audit from a JSON config")
    a.add_argument("--config", required=True)
    a.add_argument("--json", action="store_true", dest="as_json")
    a.set_defaults(func=cmd_audit)

    s = sub.add_parser("sweep", help="delta x cutoff sweep (bolukbasi)")
    _add_model_flags(s)
    s.add_argument("--a", required=True)
    s.add_argument("--b", required=True)
    s.add_argument("--c", required=True)
    s.add_argument("--mode", default="constrained", choices=list(MODE_NAMES))
    s.add_argument("--deltas", help="comma-separated thresholds")
    s.add_argument("--cutoffs", help='comma-separated cutoffs, integers or "all"')
    s.add_argument("--json", action="store_true", dest="as_json")
    s.set_defaults(func=cmd_sweep)

    v = sub.add_parser("serve", help="run the HTTP service")
    _add_model_flags(v)
    v.add_argument("--host", default="127.0.0.1")
    v.add_argument("--port", type=int, default=8000)
    v.add_argument("--cutoff-max", default="all",
                   help="cap the effective cutoff for all requests")
    v.set_defaults(func=cmd_serve)
    return parser


def main(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (FileNotFoundError, OSError, EmbeddingFormatError,
            harness.DatasetFormatError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    except (TokenNotFoundError, EmptyCandidateSetError, EmptyVocabularyError,
            ValueError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_RESOLUTION


if __name__ == "__main__":
    sys.exit(main())
