"""Loading, saving, and filtered views of word-embedding sets.

Supported on-disk formats are the two word2vec conventions (binary and
text, both with a "<V> <dim>" header) and GloVe-style headerless text.
Token order in the file is taken to be descending frequency rank.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path
from typing import Optional, Union

import numpy as np

WORD_SHAPE_RE = re.compile(r"[A-Za-z0-9_]+")


class EmbeddingFormatError(ValueError):
    """Raised for malformed embedding files or invalid save requests."""


class EmptyVocabularyError(ValueError):
    """Raised when a view (or a load) admits no tokens at all."""


class Format(str, Enum):
    WORD2VEC_BINARY = "word2vec-binary"
    WORD2VEC_TEXT = "word2vec-text"
    HEADERLESS_TEXT = "headerless-text"


def _check_token(text: str) -> str:
    if not text:
        raise EmbeddingFormatError("empty token")
    if " " in text or "\n" in text or "\x00" in text:
        raise EmbeddingFormatError(f"token contains a delimiter byte: {text!r}")
    return text


@dataclass(frozen=True)
class LoadOptions:
    format: Format = Format.WORD2VEC_BINARY
    normalize: bool = True
    lowercase: bool = False


class EmbeddingSet:
    """Immutable vocabulary + vector matrix; row order = frequency rank."""

    def __init__(self, tokens: list[str], vectors: np.ndarray, normalized: bool = False):
        if len(tokens) < 1:
            raise EmbeddingFormatError("an embedding set needs at least one token")
        vectors = np.ascontiguousarray(vectors, dtype=np.float32)
        if vectors.ndim != 2 or vectors.shape[1] < 1:
            raise EmbeddingFormatError(f"bad vector matrix shape {vectors.shape}")
        if vectors.shape[0] != len(tokens):
            raise EmbeddingFormatError(
                f"{len(tokens)} tokens but {vectors.shape[0]} vectors"
            )
        for t in tokens:
            _check_token(t)
        index: dict[str, int] = {}
        for i, t in enumerate(tokens):
            if t in index:
                raise EmbeddingFormatError(f"duplicate token {t!r}")
            index[t] = i
        vectors.setflags(write=False)
        self.tokens: tuple[str, ...] = tuple(tokens)
        self.vectors = vectors
        self.normalized = normalized
        self._index = index
        # float64 row norms, cached for cosine kernels
        self.norms = np.linalg.norm(vectors.astype(np.float64), axis=1)
        self.norms.setflags(write=False)

    @property
    def size(self) -> int:
        return len(self.tokens)

    @property
    def dim(self) -> int:
        return int(self.vectors.shape[1])

    def index_of(self, token: str) -> Optional[int]:
        return self._index.get(token)

    def __contains__(self, token: str) -> bool:
        return token in self._index

    def normalized_copy(self) -> "EmbeddingSet":
        if self.normalized:
            return self
        return EmbeddingSet(list(self.tokens), _normalize_rows(self.vectors), normalized=True)


def _normalize_rows(vectors: np.ndarray) -> np.ndarray:
    norms = np.linalg.norm(vectors.astype(np.float64), axis=1)
    if np.any(norms == 0.0):
        i = int(np.argmin(norms))
        raise EmbeddingFormatError(f"zero vector at row {i}, cannot normalize")
    return (vectors.astype(np.float64) / norms[:, None]).astype(np.float32)


@dataclass(frozen=True)
class ShapeRules:
    """Word-shape filters applied on top of a frequency cutoff."""

    max_len_20: bool = False
    no_punctuation: bool = False
    no_uppercase: bool = False

    @classmethod
    def all(cls) -> "ShapeRules":
        return cls(max_len_20=True, no_punctuation=True, no_uppercase=True)

    @classmethod
    def none(cls) -> "ShapeRules":
        return cls()

    def admits(self, token: str) -> bool:
        if self.max_len_20 and len(token) >= 20:
            return False
        if self.no_punctuation and not WORD_SHAPE_RE.fullmatch(token):
            return False
        if self.no_uppercase and any(ch.isupper() for ch in token):
            return False
        return True


class LookupStatus(str, Enum):
    FOUND = "found"
    FILTERED = "filtered"  # in the base set but not admitted by the view
    UNKNOWN = "unknown"


@dataclass(frozen=True)
class LookupResult:
    status: LookupStatus
    index: Optional[int] = None


class VocabView:
    """Restriction of an EmbeddingSet to its most frequent words plus shape rules.

    Never copies vector data; holds only the admitted index set.
    """

    def __init__(self, base: EmbeddingSet, cutoff: Optional[int], rules: ShapeRules):
        if cutoff is not None and cutoff < 1:
            raise ValueError(f"cutoff must be >= 1, got {cutoff}")
        self.base = base
        self.cutoff = cutoff
        self.rules = rules
        prefix = base.size if cutoff is None else min(cutoff, base.size)
        admitted = [i for i in range(prefix) if rules.admits(base.tokens[i])]
        if not admitted:
            raise EmptyVocabularyError(
                f"view with cutoff={cutoff} and rules {rules} admits no tokens"
            )
        self.admitted = np.asarray(admitted, dtype=np.int64)
        self.admitted.setflags(write=False)
        self._admitted_set = frozenset(admitted)

    @property
    def size(self) -> int:
        return int(self.admitted.shape[0])

    def admits_index(self, i: int) -> bool:
        return i in self._admitted_set

    def lookup(self, token: str) -> LookupResult:
        i = self.base.index_of(token)
        if i is None:
            return LookupResult(LookupStatus.UNKNOWN)
        if i not in self._admitted_set:
            return LookupResult(LookupStatus.FILTERED)
        return LookupResult(LookupStatus.FOUND, index=i)


def make_view(
    base: EmbeddingSet,
    cutoff: Optional[int] = None,
    rules: ShapeRules = ShapeRules.none(),
) -> VocabView:
    return VocabView(base, cutoff, rules)


def lookup(view: VocabView, token: str) -> LookupResult:
    return view.lookup(token)


# --- on-disk formats -------------------------------------------------------


def load(path: Union[str, Path], opts: LoadOptions = LoadOptions()) -> EmbeddingSet:
    path = Path(path)
    if opts.format == Format.WORD2VEC_BINARY:
        tokens, vectors = _read_binary(path)
    elif opts.format == Format.WORD2VEC_TEXT:
        tokens, vectors = _read_text(path, headerless=False)
    elif opts.format == Format.HEADERLESS_TEXT:
        tokens, vectors = _read_text(path, headerless=True)
    else:
        raise EmbeddingFormatError(f"unknown format {opts.format!r}")

    if opts.lowercase:
        tokens, vectors = _lowercase_merge(tokens, vectors)
    if opts.normalize:
        vectors = _normalize_rows(vectors)
    return EmbeddingSet(tokens, vectors, normalized=opts.normalize)


def save(emb: EmbeddingSet, path: Union[str, Path], format: Format) -> None:
    path = Path(path)
    if format == Format.WORD2VEC_BINARY:
        with open(path, "wb") as f:
            f.write(f"{emb.size} {emb.dim}\n".encode("utf-8"))
            for i, token in enumerate(emb.tokens):
                f.write(token.encode("utf-8"))
                f.write(b"\x20")
                f.write(emb.vectors[i].tobytes())
                f.write(b"\x0a")
    elif format in (Format.WORD2VEC_TEXT, Format.HEADERLESS_TEXT):
        with open(path, "w", encoding="utf-8") as f:
            if format == Format.WORD2VEC_TEXT:
                f.write(f"{emb.size} {emb.dim}\n")
            for i, token in enumerate(emb.tokens):
                # shortest decimal that round-trips the exact float32 value
                vals = " ".join(
                    np.format_float_positional(v, unique=True, trim="0")
                    for v in emb.vectors[i]
                )
                f.write(f"{token} {vals}\n")
    else:
        raise EmbeddingFormatError(f"unknown format {format!r}")


def _parse_header(line: bytes) -> tuple[int, int]:
    parts = line.split()
    if len(parts) != 2:
        raise EmbeddingFormatError(f"malformed header {line!r}")
    try:
        v, dim = int(parts[0]), int(parts[1])
    except ValueError as exc:
        raise EmbeddingFormatError(f"malformed header {line!r}") from exc
    if v < 1 or dim < 1:
        raise EmbeddingFormatError(f"header declares V={v}, dim={dim}")
    return v, dim


def _read_binary(path: Path) -> tuple[list[str], np.ndarray]:
    data = path.read_bytes()
    nl = data.find(b"\n")
    if nl < 0:
        raise EmbeddingFormatError("missing header line")
    v, dim = _parse_header(data[:nl])
    width = 4 * dim
    tokens: list[str] = []
    vectors = np.empty((v, dim), dtype=np.float32)
    pos = nl + 1
    for row in range(v):
        # one optional record separator; both writer conventions occur
        if pos < len(data) and data[pos : pos + 1] == b"\x0a":
            pos += 1
        sp = data.find(b"\x20", pos)
        if sp < 0:
            raise EmbeddingFormatError(f"truncated file: no token delimiter at record {row}")
        try:
            token = data[pos:sp].decode("utf-8")
        except UnicodeDecodeError as exc:
            raise EmbeddingFormatError(f"non-UTF-8 token at record {row}") from exc
        _check_token(token)
        pos = sp + 1
        if pos + width > len(data):
            raise EmbeddingFormatError(f"truncated vector payload at record {row}")
        vectors[row] = np.frombuffer(data, dtype="<f4", count=dim, offset=pos)
        pos += width
        tokens.append(token)
    if data[pos:].strip(b"\x0a"):
        raise EmbeddingFormatError("trailing bytes after the declared records")
    return tokens, vectors


def _read_text(path: Path, headerless: bool) -> tuple[list[str], np.ndarray]:
    with open(path, "r", encoding="utf-8") as f:
        lines = [ln.rstrip("\n") for ln in f]
    lines = [ln for ln in lines if ln]
    if not lines:
        raise EmbeddingFormatError("empty file")
    if headerless:
        v, dim = len(lines), len(lines[0].split()) - 1
        if dim < 1:
            raise EmbeddingFormatError("first line has no vector values")
        body = lines
    else:
        v, dim = _parse_header(lines[0].encode("utf-8"))
        body = lines[1:]
        if len(body) != v:
            raise EmbeddingFormatError(f"header declares {v} rows, file has {len(body)}")
    tokens: list[str] = []
    vectors = np.empty((v, dim), dtype=np.float32)
    for row, line in enumerate(body):
        parts = line.split(" ")
        if len(parts) != dim + 1:
            raise EmbeddingFormatError(
                f"line {row}: expected {dim} values, got {len(parts) - 1}"
            )
        _check_token(parts[0])
        tokens.append(parts[0])
        try:
            vectors[row] = np.asarray(parts[1:], dtype=np.float32)
        except ValueError as exc:
            raise EmbeddingFormatError(f"line {row}: bad float value") from exc
    return tokens, vectors


def _lowercase_merge(tokens: list[str], vectors: np.ndarray) -> tuple[list[str], np.ndarray]:
    # on collision the more frequent (earlier) token wins
    keep: list[int] = []
    out_tokens: list[str] = []
    seen: set[str] = set()
    for i, t in enumerate(tokens):
        low = t.lower()
        if low in seen:
            continue
        seen.add(low)
        keep.append(i)
        out_tokens.append(low)
    return out_tokens, vectors[keep]
