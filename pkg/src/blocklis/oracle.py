"""Quadratic dynamic-programming LCS, used as ground truth."""
from __future__ import annotations

from collections.abc import Sequence

from .errors import SizeGuardError
from .solver import Certificate

DEFAULT_DP_GUARD = 10**8


def _check_guard(x, y, guard):
    cells = len(x) * len(y)
    if guard is not None and cells > guard:
        raise SizeGuardError(cells, guard)


def dp_lcs(x: Sequence, y: Sequence, guard: int | None = DEFAULT_DP_GUARD) -> int:
    """LCS length via the textbook recurrence, two rolling rows."""
    _check_guard(x, y, guard)
    prev = [0] * (len(y) + 1)
    for xi in x:
        cur = [0]
        left = 0
        for j, yj in enumerate(y):
            if xi == yj:
                left = prev[j] + 1
            else:
                up = prev[j + 1]
                if up > left:
                    left = up
            cur.append(left)
        prev = cur
    return prev[-1]


def dp_table(x: Sequence, y: Sequence, guard: int | None = DEFAULT_DP_GUARD) -> list[list[int]]:
    """Full ``(|x|+1) x (|y|+1)`` table; ``table[i][j]`` = LCS of the prefixes."""
    _check_guard(x, y, guard)
    table = [[0] * (len(y) + 1)]
    for i, xi in enumerate(x):
        prev = table[i]
        cur = [0]
        for j, yj in enumerate(y):
            cur.append(prev[j] + 1 if xi == yj else max(prev[j + 1], cur[j]))
        table.append(cur)
    return table


def dp_lcs_certificate(x: Sequence, y: Sequence,
                       guard: int | None = DEFAULT_DP_GUARD) -> Certificate:
    table = dp_table(x, y, guard)
    i, j = len(x), len(y)
    pairs = []
    while i and j:
        if x[i - 1] == y[j - 1]:
            pairs.append((i - 1, j - 1))
            i -= 1
            j -= 1
        elif table[i - 1][j] >= table[i][j - 1]:
            i -= 1
        else:
            j -= 1
    pairs.reverse()
    return Certificate(tuple(pairs))
