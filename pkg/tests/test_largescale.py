"""Large-scale reproductions against the real GoogleNews embeddings.

Skipped unless ANALOGYAUDIT_GOOGLENEWS points at the
GoogleNews-vectors-negative300.bin file (~3.5 GB). The accuracy checks
additionally need ANALOGYAUDIT_QUESTIONS pointing at the standard Google
analogy question file. Expect several minutes of runtime.
"""

import os

import pytest

from analogyaudit.audit import SweepSpec, sweep
from analogyaudit.engine import (
    AnalogyQuery,
    BolukbasiDir,
    ConstraintMode,
    CosAdd,
    CosMul,
    solve,
)
from analogyaudit.harness import evaluate, parse_dataset
from analogyaudit.store import (
    Format,
    LoadOptions,
    LookupStatus,
    ShapeRules,
    load,
    make_view,
)

GOOGLENEWS = os.environ.get("ANALOGYAUDIT_GOOGLENEWS")
QUESTIONS = os.environ.get("ANALOGYAUDIT_QUESTIONS")

pytestmark = pytest.mark.skipif(
    not GOOGLENEWS, reason="set ANALOGYAUDIT_GOOGLENEWS to run large-scale checks"
)


@pytest.fixture(scope="module")
def news():
    return load(GOOGLENEWS, LoadOptions(Format.WORD2VEC_BINARY, normalize=True))


def test_googlenews_dimensions(news):
    assert news.size == 3_000_000
    assert news.dim == 300


def test_cutoff_50k_excludes_reported_professions(news):
    view = make_view(news, cutoff=50_000)
    for token in ("gynecologist", "computer_programmer"):
        assert view.lookup(token).status == LookupStatus.FILTERED


@pytest.mark.parametrize("algo", [CosAdd(), CosMul()])
@pytest.mark.parametrize(
    "query,constrained_answer,unconstrained_answer",
    [
        (("man", "doctor", "woman"), "gynecologist", "doctor"),
        (("he", "doctor", "she"), "nurse", "doctor"),
        (("man", "computer_programmer", "woman"), "homemaker", "computer_programmer"),
    ],
)
def test_headline_analogies(news, algo, query, constrained_answer,
                            unconstrained_answer):
    view = make_view(news)
    con = solve(AnalogyQuery(*query, algo, ConstraintMode.EXCLUDE_INPUTS, view, top_n=1))
    unc = solve(AnalogyQuery(*query, algo, ConstraintMode.UNCONSTRAINED, view, top_n=1))
    assert con.candidates[0].token == constrained_answer
    assert unc.candidates[0].token == unconstrained_answer


def test_bolukbasi_sweep_cells(news):
    spec = SweepSpec("man", "doctor", "woman", deltas=(1.0, 1.2),
                     cutoffs=(10_000, 50_000), rules=ShapeRules.all())
    grid = sweep(spec, news, BolukbasiDir(), ConstraintMode.EXCLUDE_INPUTS)
    assert grid.grid[1][0] == "midwife"   # cutoff 50,000, delta 1.0
    assert grid.grid[0][1] == "woman"     # cutoff 10,000, delta 1.2


def test_extreme_delta_unconstrained_returns_doctor(news):
    view = make_view(news, cutoff=50_000, rules=ShapeRules.all())
    result = solve(AnalogyQuery("man", "doctor", "woman", BolukbasiDir(delta=0.5),
                                ConstraintMode.UNCONSTRAINED, view, top_n=1))
    assert result.candidates[0].token == "doctor"


@pytest.mark.skipif(not QUESTIONS, reason="set ANALOGYAUDIT_QUESTIONS")
@pytest.mark.parametrize(
    "algo,constrained_micro,unconstrained_micro",
    [(CosAdd(), 0.74, 0.21), (CosMul(), 0.75, 0.47)],
)
def test_google_analogy_micro_accuracy(news, algo, constrained_micro,
                                       unconstrained_micro):
    ds = parse_dataset(QUESTIONS)
    assert len(ds.categories) == 14
    assert ds.total == 19_544
    view = make_view(news)
    con = evaluate(news, view, ds, algo, ConstraintMode.EXCLUDE_INPUTS)
    unc = evaluate(news, view, ds, algo, ConstraintMode.UNCONSTRAINED)
    assert con.micro == pytest.approx(constrained_micro, abs=0.02)
    assert unc.micro == pytest.approx(unconstrained_micro, abs=0.02)
