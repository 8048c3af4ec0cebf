import numpy as np
import pytest

from analogyaudit.audit import (
    AuditReport,
    BiasQuery,
    SweepSpec,
    audit,
    render_audit,
    render_sweep,
    sweep,
    transparency_report,
)
from analogyaudit.engine import (
    AnalogyQuery,
    BolukbasiDir,
    ConstraintMode,
    CosAdd,
    full_ranking,
    solve,
)
from analogyaudit.store import EmbeddingSet, ShapeRules, make_view
from analogyaudit.synthetic import random_set

QUERY = ("w00000", "w00001", "w00002")


def set_with_reported_at_rank(seed: int, rank: int) -> EmbeddingSet:
    """Random set where token "reported" sits at the given unconstrained rank."""
    for s in range(seed, seed + 50):
        emb = random_set(40, 8, seed=s)
        view = make_view(emb)
        q = AnalogyQuery(*QUERY, CosAdd(), ConstraintMode.UNCONSTRAINED, view)
        target = full_ranking(q).candidates[rank - 1].token
        if target in QUERY:
            continue  # an input word holds that rank; try another seed
        tokens = ["reported" if t == target else t for t in emb.tokens]
        return EmbeddingSet(tokens, emb.vectors, normalized=emb.normalized)
    raise AssertionError("no suitable seed found")


class TestAudit:
    def test_reported_at_top1(self):
        emb = set_with_reported_at_rank(seed=100, rank=1)
        query = BiasQuery(*QUERY, reported_term="reported")
        report = audit(query, [("s0", emb)], CosAdd(), ConstraintMode.UNCONSTRAINED)
        assert report.mean_rank == 1.0
        assert report.aggregated_top5[0] == "reported"

    def test_mean_rank_over_five_sets(self):
        ranks = [1, 2, 2, 2, 3]
        sets = [(f"s{i}", set_with_reported_at_rank(seed=200 + i, rank=r))
                for i, r in enumerate(ranks)]
        query = BiasQuery(*QUERY, reported_term="reported")
        report = audit(query, sets, CosAdd(), ConstraintMode.UNCONSTRAINED)
        assert [r.rank_of_reported for r in report.per_set_results] == ranks
        assert report.mean_rank == 2.0
        assert len(report.aggregated_top5) <= 5

    def test_unusable_set_flagged_and_excluded(self):
        good = set_with_reported_at_rank(seed=300, rank=2)
        missing = random_set(10, 8, seed=301)  # only has w00000..w00009
        tokens = [t if t != "w00001" else "other" for t in missing.tokens]
        missing = EmbeddingSet(tokens, missing.vectors, normalized=True)
        query = BiasQuery(*QUERY, reported_term="reported")
        report = audit(query, [("good", good), ("bad", missing)],
                       CosAdd(), ConstraintMode.UNCONSTRAINED)
        by_id = {r.set_id: r for r in report.per_set_results}
        assert by_id["bad"].usable is False
        assert report.mean_rank == 2.0

    def test_determinism(self):
        sets = [("s0", set_with_reported_at_rank(seed=400, rank=3))]
        query = BiasQuery(*QUERY, reported_term="reported")
        a = audit(query, sets, CosAdd(), ConstraintMode.UNCONSTRAINED)
        b = audit(query, sets, CosAdd(), ConstraintMode.UNCONSTRAINED)
        assert a == b

    def test_reported_input_term_rank_depends_on_mode(self, small_set):
        # querying a : b :: a with reported = b: rank 1 unconstrained,
        # absent under the input-exclusion mode
        query = BiasQuery("w00003", "w00007", "w00003", reported_term="w00007")
        unc = audit(query, [("s", small_set)], CosAdd(), ConstraintMode.UNCONSTRAINED)
        con = audit(query, [("s", small_set)], CosAdd(), ConstraintMode.EXCLUDE_INPUTS)
        assert unc.per_set_results[0].rank_of_reported == 1
        assert con.per_set_results[0].rank_of_reported is None

    def test_requires_a_set(self):
        with pytest.raises(ValueError):
            audit(BiasQuery("a", "b", "c"), [], CosAdd(), ConstraintMode.UNCONSTRAINED)

    def test_render_smoke(self):
        emb = set_with_reported_at_rank(seed=500, rank=1)
        report = audit(BiasQuery(*QUERY, reported_term="reported"),
                       [("s0", emb)], CosAdd(), ConstraintMode.UNCONSTRAINED)
        text = render_audit(report)
        assert "reported" in text and "mean rank" in text


class TestSweep:
    def test_cells_equal_direct_solve(self, small_set):
        spec = SweepSpec(*QUERY, deltas=(0.8, 1.0, 1.2), cutoffs=(10, 25, None))
        grid = sweep(spec, small_set, BolukbasiDir(), ConstraintMode.EXCLUDE_INPUTS)
        for i, cutoff in enumerate(spec.cutoffs):
            for j, delta in enumerate(spec.deltas):
                view = make_view(small_set, cutoff)
                direct = solve(AnalogyQuery(*QUERY, BolukbasiDir(delta=delta),
                                            ConstraintMode.EXCLUDE_INPUTS, view,
                                            top_n=1))
                assert grid.grid[i][j] == direct.candidates[0].token

    def test_grid_dimensions(self, small_set):
        spec = SweepSpec(*QUERY, deltas=(0.9, 1.1), cutoffs=(5, 10, 20))
        grid = sweep(spec, small_set, BolukbasiDir(), ConstraintMode.UNCONSTRAINED)
        assert len(grid.grid) == 3
        assert all(len(row) == 2 for row in grid.grid)

    def test_empty_cell_marker(self):
        tokens = ["UPPER", "w1", "w2", "w3", "w4"]
        vecs = np.eye(5, dtype=np.float32)
        emb = EmbeddingSet(tokens, vecs, normalized=True)
        spec = SweepSpec("w1", "w2", "w3", deltas=(1.0,), cutoffs=(1, None),
                         rules=ShapeRules(no_uppercase=True))
        grid = sweep(spec, emb, BolukbasiDir(), ConstraintMode.UNCONSTRAINED)
        assert grid.grid[0][0] is None      # cutoff 1 admits only "UPPER"
        assert grid.grid[1][0] is not None

    def test_render_orientation(self, small_set):
        spec = SweepSpec(*QUERY, deltas=(0.8, 1.2), cutoffs=(10, None))
        grid = sweep(spec, small_set, BolukbasiDir(), ConstraintMode.UNCONSTRAINED)
        lines = render_sweep(grid).splitlines()
        # header row carries the deltas, one body row per cutoff
        assert "0.80" in lines[0] and "1.20" in lines[0]
        assert lines[2].strip().startswith("10")
        assert lines[3].strip().startswith("all")


class TestTransparency:
    def test_n1_equals_solve_top1(self, small_set):
        view = make_view(small_set)
        q = AnalogyQuery(*QUERY, CosAdd(), ConstraintMode.EXCLUDE_INPUTS, view, top_n=1)
        direct = solve(q)
        report = transparency_report(BiasQuery(*QUERY), small_set, CosAdd(),
                                     ConstraintMode.EXCLUDE_INPUTS, n=1)
        assert report.candidates == direct.candidates

    def test_prefix_of_full_ranking(self, small_set):
        view = make_view(small_set)
        full = full_ranking(AnalogyQuery(*QUERY, CosAdd(),
                                         ConstraintMode.UNCONSTRAINED, view))
        report = transparency_report(BiasQuery(*QUERY), small_set, CosAdd(),
                                     ConstraintMode.UNCONSTRAINED, n=7)
        assert report.candidates == full.candidates[:7]
