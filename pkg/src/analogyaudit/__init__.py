"""Embedding analogy engine and bias-audit toolkit."""

from .engine import (
    AnalogyQuery,
    BolukbasiDir,
    ConstraintMode,
    CosAdd,
    CosMul,
    PairResult,
    RankedList,
    ScoredCandidate,
    cosine,
    full_ranking,
    pair_search,
    rank_of,
    score_bolukbasi,
    score_cosadd,
    score_cosmul,
    solve,
)
from .store import (
    EmbeddingSet,
    Format,
    LoadOptions,
    LookupStatus,
    ShapeRules,
    VocabView,
    load,
    lookup,
    make_view,
    save,
)

__version__ = "0.1.0"
