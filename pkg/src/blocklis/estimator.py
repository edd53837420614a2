"""LCS estimation through a pluggable Block-LIS solver.

The pipeline:

1. index the positions of every symbol of ``y``;
2. compute the match count ``|z|`` and the lower bound ``d = |z| / (|x| + |y|)``;
3. run the solver on the block sequence with ``lam = d / (n log2 n)``;
4. report the larger of ``ceil(d)`` and the solver output.

:func:`approximate_lcs` first restricts both strings to one shared random
index set kept at a fixed rate.
"""
from __future__ import annotations

import math
import time
from collections.abc import Callable, Sequence
from dataclasses import dataclass, field
from fractions import Fraction
from numbers import Real

import numpy as np

from .counts import Rational, match_lower_bound_d
from .errors import EstimatorError, InvalidInputError
from .reduction import build_block_sequence, build_occurrence_index
from .solver import SolverSpec

__all__ = [
    "EstimatorParams",
    "LcsEstimate",
    "default_lambda",
    "estimate_lcs",
    "subsample_pair",
    "approximate_lcs",
    "make_rng",
]


def default_lambda(d: Rational, n: float) -> float:
    """``d / (n log2 n)``, with ``log2`` clamped to at least 1 for tiny ``n``."""
    if d.num == 0:
        return 0.0
    return float(d) / (n * max(math.log2(n), 1.0))


@dataclass(frozen=True)
class EstimatorParams:
    lambda_policy: Callable[[Rational, float], float] = default_lambda
    subsample_rate: Fraction | float = 1
    seed: int = 0

    def __post_init__(self):
        if not 0 < self.subsample_rate <= 1:
            raise InvalidInputError(
                f"subsample_rate must lie in (0, 1], got {self.subsample_rate}")


@dataclass
class LcsEstimate:
    """Result bundle of one estimation run.

    ``elapsed`` holds wall seconds per stage and is excluded from equality.
    """

    n_x: int
    n_y: int
    match_count: int
    d: Rational
    lam: float
    solver_output: Real
    estimate: Real
    solver: str = "exact"
    solver_skipped: bool = False
    rate: Fraction | float = 1
    kept: int | None = None
    seed: int | None = None
    elapsed: dict = field(default_factory=dict, compare=False)

    @property
    def d_ceil(self) -> int:
        return math.ceil(self.d)


def make_rng(seed: int) -> np.random.Generator:
    """Counter-based Philox generator; streams replay across platforms."""
    return np.random.Generator(np.random.Philox(seed))


def estimate_lcs(x: Sequence, y: Sequence, solver: SolverSpec,
                 params: EstimatorParams | None = None) -> LcsEstimate:
    params = params or EstimatorParams()
    elapsed = {}

    t0 = time.perf_counter()
    idx = build_occurrence_index(y)
    t1 = time.perf_counter()
    z = build_block_sequence(x, idx)
    t2 = time.perf_counter()
    d = match_lower_bound_d(z.match_count, len(x), len(y))
    n = (len(x) + len(y)) / 2
    lam = params.lambda_policy(d, n) if n else 0.0
    elapsed["index"] = t1 - t0
    elapsed["blocks"] = t2 - t1

    if z.match_count == 0:
        return LcsEstimate(len(x), len(y), 0, d, lam, 0, 0, solver=solver.name,
                           solver_skipped=True, elapsed=elapsed)

    t3 = time.perf_counter()
    try:
        out = solver.solve(z, lam)
    except Exception as e:
        raise EstimatorError("solve", e) from e
    elapsed["solve"] = time.perf_counter() - t3

    estimate = max(math.ceil(d), out)
    return LcsEstimate(len(x), len(y), z.match_count, d, lam, out, estimate,
                       solver=solver.name, elapsed=elapsed)


def _restrict(s: Sequence, mask: np.ndarray, kept: list[int]) -> Sequence:
    if isinstance(s, (bytes, bytearray)):
        return np.frombuffer(bytes(s), dtype=np.uint8)[mask].tobytes()
    if isinstance(s, str):
        return "".join(s[i] for i in kept)
    return [s[i] for i in kept]


def subsample_pair(x: Sequence, y: Sequence, rate: Fraction | float, seed: int):
    """Keep each index of ``range(n)`` independently with probability ``rate``.

    One index set is drawn and applied to both strings, which must therefore
    have equal length.  Returns ``(x_U, y_U, U)``; deterministic in
    ``(rate, seed, n)``.
    """
    if not 0 < rate <= 1:
        raise InvalidInputError(f"rate must lie in (0, 1], got {rate}")
    if len(x) != len(y):
        raise InvalidInputError(
            f"subsampling needs equal lengths, got {len(x)} and {len(y)}; "
            "pad the inputs or use rate 1")
    n = len(x)
    if rate == 1:
        return x, y, list(range(n))
    mask = make_rng(seed).random(n) < float(rate)
    kept = np.flatnonzero(mask).tolist()
    return _restrict(x, mask, kept), _restrict(y, mask, kept), kept


def approximate_lcs(x: Sequence, y: Sequence, solver: SolverSpec,
                    params: EstimatorParams | None = None) -> LcsEstimate:
    """Subsample, then estimate.  The estimate is *not* rescaled by the rate."""
    params = params or EstimatorParams()
    t0 = time.perf_counter()
    if params.subsample_rate == 1:
        xu, yu, kept = x, y, None
    else:
        xu, yu, kept = subsample_pair(x, y, params.subsample_rate, params.seed)
    t1 = time.perf_counter()
    est = estimate_lcs(xu, yu, solver, params)
    est.rate = params.subsample_rate
    est.kept = len(xu) if kept is None else len(kept)
    est.seed = params.seed
    est.elapsed["subsample"] = t1 - t0
    return est
