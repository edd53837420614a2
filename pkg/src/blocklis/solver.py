"""Exact Block-LIS solver and monotone-set certificates.

The solver is patience sorting over the concatenated blocks.  ``tails[t]``
holds the smallest value that ends a strictly increasing selection of length
``t + 1``.  Each block is fed in *decreasing* order: a value can then only
extend selections ending in earlier blocks, because every value of its own
block already seen is larger.  Total work is ``O(|z| log l)`` for answer ``l``.
"""
from __future__ import annotations

from bisect import bisect_left
from collections.abc import Callable, Sequence
from dataclasses import dataclass
from numbers import Real
from typing import Optional

import numpy as np

from .errors import InvalidInputError
from .reduction import BlockSequence, validate_blocks

__all__ = [
    "Certificate",
    "SolverSpec",
    "exact_block_lis",
    "exact_solver_spec",
    "verify_certificate",
    "is_monotone",
]


@dataclass(frozen=True)
class Certificate:
    """Monotone set of ``(block_index, value)`` pairs.

    Under the LCS reduction each pair is ``(i, j)`` with ``x[i] == y[j]``.
    """

    pairs: tuple[tuple[int, int], ...]

    def __len__(self) -> int:
        return len(self.pairs)

    def __iter__(self):
        return iter(self.pairs)


@dataclass(frozen=True)
class SolverSpec:
    """An ``(alpha, beta)``-approximate Block-LIS solver.

    ``solve(z, lam)`` must return a value in
    ``[reslis(z) / alpha - additive_budget, reslis(z)]``.  ``lam`` is the
    additive-error parameter chosen by the estimator; exact solvers ignore it.
    """

    alpha: float
    additive_budget: float
    solve: Callable[[BlockSequence, float], Real]
    name: str = "custom"

    def __post_init__(self):
        if self.alpha < 1:
            raise InvalidInputError(f"alpha must be >= 1, got {self.alpha}")
        if self.additive_budget < 0:
            raise InvalidInputError("additive_budget must be non-negative")


def exact_block_lis(
    z: BlockSequence | Sequence[Sequence[int]],
    want_certificate: bool = False,
    validate: bool = True,
) -> tuple[int, Optional[Certificate]]:
    """Longest strictly increasing selection taking at most one value per block.

    Parameters
    ----------
    z : BlockSequence or list of blocks
        Each block must be a strictly increasing list of non-negative ints.
    want_certificate : bool
        Also return a witness selection.  Costs ``O(|z|)`` extra memory.
    validate : bool
        Check block well-formedness first.  Skipped for BlockSequences whose
        constructor already guarantees it.

    Returns
    -------
    (length, certificate)
        ``certificate`` is None unless requested.

    Raises
    ------
    InvalidInputError
        If a block is not strictly increasing.
    """
    if not isinstance(z, BlockSequence):
        z = BlockSequence.from_blocks(z, validate=validate)
    elif validate and not z.validated:
        validate_blocks(z.blocks)

    tails: list[int] = []
    if not want_certificate:
        for values, _ in _descending_chunks(z, with_blocks=False):
            for v in values:
                k = bisect_left(tails, v)
                if k == len(tails):
                    tails.append(v)
                elif v < tails[k]:
                    tails[k] = v
        return len(tails), None

    # link[k] = (block, value, link[k-1]) for the selection ending at tails[k]
    link: list = []
    for values, owners in _descending_chunks(z, with_blocks=True):
        for v, i in zip(values, owners):
            k = bisect_left(tails, v)
            prev = link[k - 1] if k else None
            if k == len(tails):
                tails.append(v)
                link.append((i, v, prev))
            elif v < tails[k]:
                tails[k] = v
                link[k] = (i, v, prev)

    pairs = []
    node = link[-1] if link else None
    while node is not None:
        pairs.append((node[0], node[1]))
        node = node[2]
    pairs.reverse()
    return len(tails), Certificate(tuple(pairs))


_CHUNK = 1 << 16


def _descending_chunks(z: BlockSequence, with_blocks: bool):
    """Yield the blocks' values, each block reversed, as contiguous int lists.

    Chunks hold whole blocks (or one oversized block) so peak memory stays
    near ``_CHUNK`` values however large ``|z|`` is.  With ``with_blocks``
    each chunk comes with the owning block index of every value.
    """
    lengths = z.lengths
    if not z.match_count:
        return
    ends = np.cumsum(lengths)
    lo = 0
    while lo < len(lengths):
        base = int(ends[lo - 1]) if lo else 0
        hi = max(int(np.searchsorted(ends, base + _CHUNK, side="right")), lo + 1)
        lens = lengths[lo:hi]
        total = int(ends[hi - 1]) - base
        if total:
            # value k of the chunk is values[last index of its block - offset within block]
            offsets = ends[lo:hi] - lens - base
            last = z.starts[lo:hi] + lens - 1
            idx = np.repeat(last + offsets, lens) - np.arange(total)
            owners = np.repeat(np.arange(lo, hi), lens).tolist() if with_blocks else None
            yield z.values[idx].tolist(), owners
        lo = hi


def exact_solver_spec() -> SolverSpec:
    """The exact solver as a ``(1, 0)``-approximation."""

    def solve(z: BlockSequence, lam: float) -> int:
        return exact_block_lis(z)[0]

    return SolverSpec(alpha=1, additive_budget=0, solve=solve, name="exact")


def is_monotone(pairs: Sequence[tuple[int, int]]) -> bool:
    """Both coordinates strictly increase along ``pairs``."""
    return all(a[0] < b[0] and a[1] < b[1] for a, b in zip(pairs, pairs[1:]))


def verify_certificate(x: Sequence, y: Sequence, cert: Certificate | Sequence,
                       claimed: int) -> bool:
    pairs = list(cert.pairs if isinstance(cert, Certificate) else cert)
    if len(pairs) != claimed:
        return False
    if not is_monotone(pairs):
        return False
    for i, j in pairs:
        if not (0 <= i < len(x) and 0 <= j < len(y)) or x[i] != y[j]:
            return False
    return True
