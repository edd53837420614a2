"""Reduction from LCS to Block-LIS.

Block ``i`` of the block sequence lists every position ``j`` of ``y`` with
``y[j] == x[i]``.  Choosing at most one value per block so that the chosen
values strictly increase is the same as choosing a common subsequence, so the
longest such selection has exactly the LCS length.

Storage is compact.  The occurrence index is one array of ``y`` positions
grouped by symbol, plus the offset of each symbol's run.  A block is a
``(start, length)`` slice of that array, so blocks for equal symbols alias the
same run and memory stays ``O(|x| + |y|)`` however large ``|z|`` gets.
"""
from __future__ import annotations

import re
from collections.abc import Iterable, Sequence
from dataclasses import dataclass, field
from functools import cached_property
from numbers import Integral
from typing import Hashable

import numpy as np

from .counts import count_vector, inner_product
from .errors import InvalidInputError

__all__ = [
    "OccurrenceIndex",
    "BlockSequence",
    "build_occurrence_index",
    "build_block_sequence",
    "match_count",
    "tokenize_pair",
    "split_stdin",
]

_EMPTY = np.zeros(0, dtype=np.int64)


def _direct_codes(s) -> np.ndarray | None:
    """Codes for sequences whose symbols are small non-negative ints, else None."""
    if isinstance(s, (bytes, bytearray)):
        return np.frombuffer(bytes(s), dtype=np.uint8).astype(np.int64)
    if not isinstance(s, (list, tuple, np.ndarray)):
        return None
    if len(s) == 0:
        return _EMPTY
    if not isinstance(s, np.ndarray) and not all(type(c) is int for c in s):
        return None
    arr = np.asarray(s)
    if arr.ndim != 1 or arr.dtype.kind not in "iu":
        return None
    if arr.min() < 0 or arr.max() >= max(256, 2 * len(arr)):
        return None
    return arr.astype(np.int64, copy=False)


@dataclass(frozen=True, eq=False)
class OccurrenceIndex:
    """Positions of every symbol of ``y`` (the inverse map of ``y``).

    ``order[starts[c]:starts[c + 1]]`` lists, ascending, the positions of the
    symbol with code ``c``.  ``codes`` maps symbols to codes, or is None when
    symbols are small non-negative ints that serve as their own codes.
    """

    order: np.ndarray
    starts: np.ndarray
    codes: dict | None
    length: int

    @property
    def alphabet(self) -> int:
        return len(self.starts) - 1

    def code_of(self, sym) -> int:
        if self.codes is not None:
            return self.codes.get(sym, -1)
        if isinstance(sym, Integral) and 0 <= sym < self.alphabet:
            return int(sym)
        return -1

    def encode(self, x: Sequence) -> np.ndarray:
        """Codes of the symbols of ``x``; ``-1`` for symbols absent from ``y``."""
        if self.codes is None:
            direct = _direct_codes(x)
            if direct is not None:
                return np.where(direct < self.alphabet, direct, -1)
        get = self.code_of
        return np.fromiter((get(c) for c in x), dtype=np.int64, count=len(x))

    def __getitem__(self, sym) -> list[int]:
        c = self.code_of(sym)
        if c < 0:
            return []
        return self.order[self.starts[c]:self.starts[c + 1]].tolist()

    @cached_property
    def positions(self) -> dict:
        """Symbol -> ascending position list, for symbols occurring in ``y``."""
        counts = np.diff(self.starts)
        if self.codes is None:
            syms = np.flatnonzero(counts).tolist()
        else:
            syms = [s for s, c in self.codes.items() if counts[c]]
        return {s: self[s] for s in syms}


def build_occurrence_index(y: Sequence[Hashable]) -> OccurrenceIndex:
    codes_y = _direct_codes(y)
    codes = None
    if codes_y is None:
        codes = {}
        codes_y = np.fromiter((codes.setdefault(c, len(codes)) for c in y),
                              dtype=np.int64, count=len(y))
        alphabet = max(len(codes), 1)
    else:
        alphabet = max(256, int(codes_y.max()) + 1) if len(codes_y) else 256
    counts = np.bincount(codes_y, minlength=alphabet)
    starts = np.zeros(alphabet + 1, dtype=np.int64)
    np.cumsum(counts, out=starts[1:])
    # a stable sort keeps each run ascending; numpy radix-sorts 16-bit keys
    keys = codes_y.astype(np.uint16) if alphabet <= 1 << 16 else codes_y
    order = np.argsort(keys, kind="stable").astype(np.int64, copy=False)
    return OccurrenceIndex(order, starts, codes, len(y))


@dataclass(frozen=True, eq=False)
class BlockSequence:
    """Ordered blocks of strictly increasing non-negative integers.

    Block ``i`` is ``values[starts[i]:starts[i] + lengths[i]]``.  Blocks built
    from one occurrence index share its position array.  Treat as read-only.
    """

    values: np.ndarray
    starts: np.ndarray
    lengths: np.ndarray
    match_count: int
    n_y: int = 0
    # set by constructors that guarantee well-formed blocks
    validated: bool = field(default=False)

    def __len__(self) -> int:
        return len(self.lengths)

    @property
    def max_block(self) -> int:
        return int(self.lengths.max()) if len(self.lengths) else 0

    @cached_property
    def blocks(self) -> list[list[int]]:
        """Blocks as lists; equal slices are the same list object."""
        shared: dict = {}
        out = []
        for s, n in zip(self.starts.tolist(), self.lengths.tolist()):
            b = shared.get((s, n))
            if b is None:
                b = shared[(s, n)] = self.values[s:s + n].tolist()
            out.append(b)
        return out

    @classmethod
    def from_blocks(cls, blocks: Iterable[Iterable[int]], validate: bool = True
                    ) -> "BlockSequence":
        """Wrap arbitrary blocks, validating them unless told not to."""
        bl = [b if isinstance(b, (list, tuple)) else list(b) for b in blocks]
        if validate:
            validate_blocks(bl)
        lengths = np.fromiter(map(len, bl), dtype=np.int64, count=len(bl))
        total = int(lengths.sum())
        values = np.fromiter((v for b in bl for v in b), dtype=np.int64, count=total)
        starts = np.zeros(len(bl), dtype=np.int64)
        if len(bl) > 1:
            np.cumsum(lengths[:-1], out=starts[1:])
        top = int(values.max()) if total else -1
        return cls(values, starts, lengths, total, top + 1, validated=validate)


def validate_blocks(blocks: Sequence[Sequence[int]]) -> None:
    """Raise InvalidInputError unless every block strictly increases from >= 0.

    Aliased blocks are checked once.
    """
    seen = set()
    for i, b in enumerate(blocks):
        if not b or id(b) in seen:
            continue
        seen.add(id(b))
        prev = -1
        for v in b:
            if not isinstance(v, Integral) or v <= prev:
                raise InvalidInputError(
                    f"block {i} is not a strictly increasing list of "
                    f"non-negative integers: {list(b)!r}")
            prev = v


def build_block_sequence(x: Sequence[Hashable], idx: OccurrenceIndex) -> BlockSequence:
    codes = idx.encode(x)
    present = codes >= 0
    safe = np.where(present, codes, 0)
    starts = idx.starts[safe]
    lengths = np.where(present, idx.starts[safe + 1] - starts, 0)
    return BlockSequence(idx.order, starts, lengths, int(lengths.sum()), idx.length,
                         validated=True)


def match_count(x: Sequence[Hashable], y: Sequence[Hashable]) -> int:
    """Number of pairs ``(i, j)`` with ``x[i] == y[j]``, without building blocks."""
    return inner_product(count_vector(x), count_vector(y))


def tokenize_pair(a: bytes, b: bytes) -> tuple[list[int], list[int]]:
    """Map ASCII-whitespace separated tokens of both inputs to dense ids.

    Ids are assigned in first-seen order over ``a`` then ``b`` with one shared
    dictionary, so equal tokens get equal ids across the two sequences.
    """
    vocab: dict[bytes, int] = {}

    def ids(data: bytes) -> list[int]:
        return [vocab.setdefault(tok, len(vocab)) for tok in data.split()]

    return ids(a), ids(b)


_BLANK_LINE = re.compile(rb"\r?\n[ \t\r\f\v]*\n")


def split_stdin(data: bytes, mode: str) -> tuple[bytes, bytes]:
    """Split a combined stdin payload into its two sequences.

    Bytes mode separates at the first NUL byte; tokens mode at the first blank
    line.  A payload with no separator is an error.
    """
    if mode == "bytes":
        a, sep, b = data.partition(b"\0")
        if not sep:
            raise InvalidInputError("stdin input in bytes mode needs a NUL separator")
        return a, b
    m = _BLANK_LINE.search(data)
    if m is None:
        raise InvalidInputError("stdin input in tokens mode needs a blank-line separator")
    return data[: m.start()], data[m.end():]
