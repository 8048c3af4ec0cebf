"""Deterministic synthetic embedding sets for testing and demos."""

from __future__ import annotations

import numpy as np

from .harness import AnalogyDataset, Category
from .store import EmbeddingSet


def random_set(v: int, dim: int, seed: int, normalize: bool = True) -> EmbeddingSet:
    rng = np.random.default_rng(seed)
    vectors = rng.standard_normal((v, dim)).astype(np.float32)
    tokens = [f"w{i:05d}" for i in range(v)]
    emb = EmbeddingSet(tokens, vectors, normalized=False)
    return emb.normalized_copy() if normalize else emb


def perfect_offset_fixture(
    n_categories: int = 3, pairs_per_category: int = 5, seed: int = 7
) -> tuple[EmbeddingSet, AnalogyDataset]:
    """Embedding set whose analogy relations are exact shared vector offsets.

    Each base word sits on its own axis; each category adds a fixed offset
    along a dedicated axis, so the additive argmax provably lands on the
    intended word. Left unnormalized to keep the offsets exact.
    """
    rng = np.random.default_rng(seed)
    n_pairs = n_categories * pairs_per_category
    dim = n_pairs + n_categories
    tokens: list[str] = []
    rows: list[np.ndarray] = []
    categories: list[Category] = []
    pair_words: list[list[tuple[str, str]]] = []
    word = 0
    for k in range(n_categories):
        pairs: list[tuple[str, str]] = []
        offset = np.zeros(dim, dtype=np.float32)
        offset[n_pairs + k] = 0.75 + 0.05 * k
        for _ in range(pairs_per_category):
            base = np.zeros(dim, dtype=np.float32)
            base[word] = 1.0 + 0.01 * float(rng.random())
            w_a, w_b = f"base{word:03d}", f"deriv{word:03d}"
            tokens += [w_a, w_b]
            rows += [base, base + offset]
            pairs.append((w_a, w_b))
            word += 1
        pair_words.append(pairs)
    for k in range(n_categories):
        quads = []
        pairs = pair_words[k]
        for i, (a, b) in enumerate(pairs):
            c, d = pairs[(i + 1) % len(pairs)]
            quads.append((a, b, c, d))
        categories.append(Category(f"cat{k}", tuple(quads)))
    emb = EmbeddingSet(tokens, np.stack(rows), normalized=False)
    return emb, AnalogyDataset(tuple(categories))


def correlated_offset_fixture(
    n_categories: int = 2, pairs_per_category: int = 4
) -> tuple[EmbeddingSet, AnalogyDataset]:
    """Fixture reproducing the D==B failure mode of unconstrained queries.

    Base words within a category share a strong common component (so the
    query terms a and c are similar, as in real embeddings) and the pair
    offsets are long and only weakly correlated. The constrained argmax is
    still the intended word, but the unconstrained argmax is the input b.
    """
    alpha2, rho, t = 0.8, 0.2, 3.0
    alpha, beta = np.sqrt(alpha2), np.sqrt(1 - alpha2)
    n_pairs = n_categories * pairs_per_category
    dim = 2 * n_categories + 2 * n_pairs
    tokens: list[str] = []
    rows: list[np.ndarray] = []
    categories: list[Category] = []
    word = 0
    for k in range(n_categories):
        q_axis, g_axis = 2 * k, 2 * k + 1
        pairs: list[tuple[str, str]] = []
        for _ in range(pairs_per_category):
            e_axis = 2 * n_categories + 2 * word
            h_axis = e_axis + 1
            base = np.zeros(dim, dtype=np.float32)
            base[q_axis], base[e_axis] = alpha, beta
            offset = np.zeros(dim, dtype=np.float32)
            offset[g_axis] = t * np.sqrt(rho)
            offset[h_axis] = t * np.sqrt(1 - rho)
            w_a, w_b = f"base{word:03d}", f"deriv{word:03d}"
            tokens += [w_a, w_b]
            rows += [base, base + offset]
            pairs.append((w_a, w_b))
            word += 1
        quads = []
        for i, (a, b) in enumerate(pairs):
            c, d = pairs[(i + 1) % len(pairs)]
            quads.append((a, b, c, d))
        categories.append(Category(f"cat{k}", tuple(quads)))
    emb = EmbeddingSet(tokens, np.stack(rows), normalized=False)
    return emb, AnalogyDataset(tuple(categories))


def toy_model(seed: int = 11) -> EmbeddingSet:
    """Small named-token model for CLI and service smoke tests."""
    words = [
        "man", "woman", "king", "queen", "doctor", "nurse", "he", "she",
        "cat", "dog", "animal", "paris", "france", "tokyo", "japan",
        "short", "shorter", "new", "newer", "gold",
    ]
    rng = np.random.default_rng(seed)
    vectors = rng.standard_normal((len(words), 16)).astype(np.float32)
    return EmbeddingSet(words, vectors).normalized_copy()
