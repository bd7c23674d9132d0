"""The five normalized similarity measures plus the signed length variant.

All measures operate on Unicode scalar values (code points), never bytes,
and apply no case folding or whitespace normalization of their own.  The
both-empty conventions (score 1, signed delta 0) are chosen so that
"identical texts => 1" holds universally.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Mapping

import numpy as np

__all__ = [
    "EditCosts",
    "UNIT_COSTS",
    "CITED_TOOL_COSTS",
    "SignedLengthDelta",
    "levenshtein_distance",
    "levenshtein_ratio",
    "length_similarity",
    "signed_length_delta",
    "char_set_sorensen",
    "char_set_jaccard",
    "cosine_similarity",
]


@dataclass(frozen=True)
class EditCosts:
    """Weighted edit-operation costs (positive integers)."""

    insert: int = 1
    delete: int = 1
    substitute: int = 1

    def __post_init__(self) -> None:
        for name in ("insert", "delete", "substitute"):
            value = getattr(self, name)
            if not isinstance(value, int) or value <= 0:
                raise ValueError(f"{name} cost must be a positive integer, got {value!r}")


UNIT_COSTS = EditCosts(1, 1, 1)
# Replicates the widely used C edit-distance tool that weights substitutions
# as a delete plus an insert when computing its ratio.
CITED_TOOL_COSTS = EditCosts(1, 1, 2)


@dataclass(frozen=True)
class SignedLengthDelta:
    """Signed length-change ratio in [-1, 1]; positive means the published
    text is longer.  ``both_empty`` flags the degenerate 0-vs-0 case."""

    value: float
    both_empty: bool = False


# Inputs at or above both thresholds take the vectorized row kernel.
_NUMPY_MIN_SIDE = 32
_NUMPY_MIN_AREA = 4096


def _distance_rows(a: str, b: str, ci: int, cd: int, cs: int) -> int:
    """Rolling-row dynamic program: O(len(a)*len(b)) time, O(len(b)) memory."""
    n = len(b)
    prev = [j * ci for j in range(n + 1)]
    for i, ach in enumerate(a, 1):
        cur = [i * cd] + [0] * n
        for j, bch in enumerate(b, 1):
            cur[j] = min(
                prev[j] + cd,
                cur[j - 1] + ci,
                prev[j - 1] + (0 if ach == bch else cs),
            )
        prev = cur
    return prev[n]


def _distance_numpy(a: str, b: str, ci: int, cd: int, cs: int) -> int:
    """Vectorized rolling row.

    The in-row insertion recurrence cur[j] = min(cand[j], cur[j-1] + ci) is
    solved in closed form as ci*j + running-min of (cand[j] - ci*j).
    """
    acodes = np.frombuffer(a.encode("utf-32-le"), dtype=np.uint32)
    bcodes = np.frombuffer(b.encode("utf-32-le"), dtype=np.uint32)
    n = bcodes.size
    ladder = np.arange(n + 1, dtype=np.int64) * ci
    prev = ladder.copy()
    cand = np.empty(n + 1, dtype=np.int64)
    for i in range(acodes.size):
        sub = prev[:-1] + np.where(bcodes == acodes[i], 0, cs)
        np.minimum(prev[1:] + cd, sub, out=cand[1:])
        cand[0] = (i + 1) * cd
        cand -= ladder
        np.minimum.accumulate(cand, out=cand)
        cand += ladder
        prev, cand = cand, prev
    return int(prev[n])


def levenshtein_distance(a: str, b: str, costs: EditCosts = UNIT_COSTS) -> int:
    """Minimal weighted cost of edits converting ``a`` into ``b``."""
    ci, cd, cs = costs.insert, costs.delete, costs.substitute
    # Swapping operands swaps the roles of insertion and deletion; keep the
    # shorter string as the row so memory stays O(min(n, m)).
    if len(b) > len(a):
        a, b = b, a
        ci, cd = cd, ci
    if not b:
        return len(a) * cd
    if a == b:
        return 0
    if len(b) >= _NUMPY_MIN_SIDE and len(a) * len(b) >= _NUMPY_MIN_AREA:
        try:
            return _distance_numpy(a, b, ci, cd, cs)
        except UnicodeEncodeError:
            pass  # lone surrogates cannot encode; fall through
    return _distance_rows(a, b, ci, cd, cs)


def levenshtein_ratio(a: str, b: str, costs: EditCosts = UNIT_COSTS) -> float:
    """(combined length - distance) / combined length; both empty -> 1.

    Bounded to [0, 1] whenever insert and delete cost 1 (distance then never
    exceeds the combined length).
    """
    total = len(a) + len(b)
    if total == 0:
        return 1.0
    return (total - levenshtein_distance(a, b, costs)) / total


def length_similarity(a: str, b: str) -> float:
    """1 - |len(a) - len(b)| / max length; both empty -> 1."""
    la, lb = len(a), len(b)
    if la == 0 and lb == 0:
        return 1.0
    return 1.0 - abs(la - lb) / max(la, lb)


def signed_length_delta(preprint: str, published: str) -> SignedLengthDelta:
    """(len(published) - len(preprint)) / max length, keeping the polarity."""
    lpre, lpub = len(preprint), len(published)
    if lpre == 0 and lpub == 0:
        return SignedLengthDelta(0.0, both_empty=True)
    return SignedLengthDelta((lpub - lpre) / max(lpre, lpub))


def char_set_sorensen(a: str, b: str) -> float:
    """2 * |shared unique code points| / (|unique(a)| + |unique(b)|)."""
    ua, ub = set(a), set(b)
    if not ua and not ub:
        return 1.0
    return 2.0 * len(ua & ub) / (len(ua) + len(ub))


def char_set_jaccard(a: str, b: str) -> float:
    """|shared unique code points| / |unique code points of either text|."""
    ua, ub = set(a), set(b)
    if not ua and not ub:
        return 1.0
    return len(ua & ub) / len(ua | ub)


def cosine_similarity(a: Mapping[str, int], b: Mapping[str, int]) -> float:
    """Normalized dot product over raw term counts.

    Either vector empty -> 0, except both empty -> 1.
    """
    if not a and not b:
        return 1.0
    if not a or not b:
        return 0.0
    for counts in (a, b):
        for term, count in counts.items():
            if count <= 0:
                raise ValueError(f"term count must be positive: {term!r} -> {count!r}")
    if a == b:
        return 1.0  # exact, where sqrt round-trips would shave an ulp
    if len(b) < len(a):
        a, b = b, a
    dot = sum(count * b.get(term, 0) for term, count in a.items())
    norm_a = math.sqrt(sum(c * c for c in a.values()))
    norm_b = math.sqrt(sum(c * c for c in b.values()))
    # Rounding can push the quotient a hair past 1 for near-identical vectors.
    return min(1.0, dot / (norm_a * norm_b))
