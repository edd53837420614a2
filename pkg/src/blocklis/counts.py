"""Count vectors and the norm-based LCS lower bounds built on them.

For strings ``x`` and ``y`` the number of matching pairs ``(i, j)`` with
``x[i] == y[j]`` is the inner product of their count vectors.  Splitting the
inner product into elementwise min/max gives

    <a, b> <= max_c min(a_c, b_c) * (|a|_1 + |b|_1)

and since ``c^k`` is a common subsequence whenever both strings hold ``k``
copies of ``c``, the match count divided by ``|x| + |y|`` never exceeds the
LCS length.
"""
from __future__ import annotations

from collections import Counter
from collections.abc import Mapping, Sequence
from dataclasses import dataclass
from fractions import Fraction
from typing import Hashable, NamedTuple

import numpy as np

from .errors import InvalidInputError

__all__ = [
    "CountVector",
    "Rational",
    "count_vector",
    "inner_product",
    "min_count_lower_bound",
    "holder_bound",
    "match_lower_bound_d",
]


@dataclass(frozen=True)
class CountVector:
    """Sparse symbol -> occurrence-count map.  Absent symbols count zero."""

    counts: Mapping[Hashable, int]

    def __post_init__(self):
        for sym, c in self.counts.items():
            if c < 1:
                raise InvalidInputError(f"count for {sym!r} must be >= 1, got {c}")

    def __getitem__(self, sym) -> int:
        return self.counts.get(sym, 0)

    def __len__(self) -> int:
        return len(self.counts)

    def l1(self) -> int:
        return sum(self.counts.values())

    @classmethod
    def from_counts(cls, counts: Mapping[Hashable, int]) -> "CountVector":
        """Build from a map that may contain zero entries; zeros are dropped."""
        return cls({k: int(v) for k, v in counts.items() if v})


class Rational(NamedTuple):
    """Unreduced non-negative rational ``num/den``.

    Kept unreduced so reports show the raw ``|z| / (|x| + |y|)`` pair.
    """

    num: int
    den: int

    @property
    def fraction(self) -> Fraction:
        return Fraction(self.num, self.den)

    def __ceil__(self) -> int:
        return -(-self.num // self.den)

    def __float__(self) -> float:
        return self.num / self.den

    def as_dict(self) -> dict:
        return {"num": self.num, "den": self.den}


def count_vector(s: Sequence) -> CountVector:
    if isinstance(s, (bytes, bytearray)):
        # dense path for the byte alphabet
        dense = np.bincount(np.frombuffer(bytes(s), dtype=np.uint8), minlength=256)
        return CountVector({int(b): int(dense[b]) for b in np.flatnonzero(dense)})
    return CountVector(dict(Counter(s)))


def inner_product(a: CountVector, b: CountVector) -> int:
    if len(a) > len(b):
        a, b = b, a
    return sum(c * b[sym] for sym, c in a.counts.items())


def min_count_lower_bound(a: CountVector, b: CountVector) -> int:
    """Largest ``k`` such that some symbol occurs at least ``k`` times in both."""
    if len(a) > len(b):
        a, b = b, a
    return max((min(c, b[sym]) for sym, c in a.counts.items()), default=0)


def holder_bound(a: CountVector, b: CountVector) -> int:
    return min_count_lower_bound(a, b) * (a.l1() + b.l1())


def match_lower_bound_d(match_count: int, len_x: int, len_y: int) -> Rational:
    """Return ``d = match_count / (len_x + len_y)`` as an exact rational.

    For equal lengths ``n`` this is ``|z| / 2n``.  ``d`` never exceeds the LCS
    length, so ``ceil(d)`` is also a valid lower bound.

    Raises
    ------
    InvalidInputError
        If both lengths are zero but ``match_count`` is not.
    """
    if match_count < 0 or len_x < 0 or len_y < 0:
        raise InvalidInputError("match_count and lengths must be non-negative")
    total = len_x + len_y
    if total == 0:
        if match_count:
            raise InvalidInputError(
                f"match_count={match_count} with two empty sequences")
        return Rational(0, 1)
    return Rational(match_count, total)
