"""Parameter parsing shared by the CLI and the HTTP service."""

from __future__ import annotations

from typing import Optional, Union

from .engine import Algorithm, BolukbasiDir, ConstraintMode, CosAdd, CosMul
from .store import Format

ALGO_NAMES = ("cosadd", "cosmul", "bolukbasi")
MODE_NAMES = ("constrained", "unconstrained")
FORMAT_ALIASES = {
    "bin": Format.WORD2VEC_BINARY,
    "txt": Format.WORD2VEC_TEXT,
    "glove": Format.HEADERLESS_TEXT,
}

DEFAULT_TOPN = 10
DEFAULT_DELTA = 1.0
DEFAULT_EPSILON = 0.001


def make_algorithm(name: str, delta: float = DEFAULT_DELTA, epsilon: float = DEFAULT_EPSILON) -> Algorithm:
    if name == "cosadd":
        return CosAdd()
    if name == "cosmul":
        return CosMul(epsilon=epsilon)
    if name == "bolukbasi":
        return BolukbasiDir(delta=delta)
    raise ValueError(f"unknown algorithm {name!r}, expected one of {ALGO_NAMES}")


def make_mode(name: str) -> ConstraintMode:
    if name == "constrained":
        return ConstraintMode.EXCLUDE_INPUTS
    if name == "unconstrained":
        return ConstraintMode.UNCONSTRAINED
    raise ValueError(f"unknown mode {name!r}, expected one of {MODE_NAMES}")


def parse_cutoff(value: Union[str, int, None]) -> Optional[int]:
    """"all" (or None) means the full vocabulary."""
    if value is None or value == "all":
        return None
    cutoff = int(value)
    if cutoff < 1:
        raise ValueError(f"cutoff must be >= 1, got {cutoff}")
    return cutoff


def cutoff_label(cutoff: Optional[int]) -> Union[str, int]:
    return "all" if cutoff is None else cutoff


def parse_format(name: str) -> Format:
    if name in FORMAT_ALIASES:
        return FORMAT_ALIASES[name]
    return Format(name)
