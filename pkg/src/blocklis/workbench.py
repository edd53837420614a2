"""Instance generators and the benchmark harness."""
from __future__ import annotations

import json
import math
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from fractions import Fraction

import numpy as np

from .counts import Rational, count_vector, holder_bound, min_count_lower_bound
from .errors import InvalidFamilyError, InvalidInputError, SizeGuardError
from .estimator import EstimatorParams, approximate_lcs, make_rng
from .oracle import DEFAULT_DP_GUARD, dp_lcs
from .reduction import match_count
from .solver import exact_solver_spec

KINDS = ("random", "permutation", "planted", "repeated")
METHODS = ("exact", "estimate", "bounds")

# symbol id -> byte; readable letters first so small instances print nicely
SYMBOLS = (b"abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ0123456789"
           + bytes(b for b in range(256) if not chr(b).isalnum() or b > 127))
assert len(SYMBOLS) == 256 and len(set(SYMBOLS)) == 256


@dataclass(frozen=True)
class InstanceFamily:
    kind: str
    n: int
    sigma: int = 4
    planted_len: int = 0
    seed: int = 0

    def __post_init__(self):
        if self.kind not in KINDS:
            raise InvalidFamilyError(f"kind must be one of {KINDS}, got {self.kind!r}")
        if self.n < 0:
            raise InvalidFamilyError(f"n must be >= 0, got {self.n}")
        if self.sigma < 1:
            raise InvalidFamilyError(f"sigma must be >= 1, got {self.sigma}")
        if self.kind == "planted" and not 0 <= self.planted_len <= self.n:
            raise InvalidFamilyError(
                f"planted_len must lie in [0, n={self.n}], got {self.planted_len}")

    def alphabet_size(self) -> int:
        return {"random": self.sigma, "permutation": self.n,
                "planted": 3 * self.sigma, "repeated": 1}[self.kind]

    def as_dict(self) -> dict:
        return asdict(self)


def _encode(ids: np.ndarray, alphabet: int):
    if alphabet <= 256:
        return np.frombuffer(SYMBOLS, dtype=np.uint8)[ids].tobytes()
    return ids.tolist()


def generate(family: InstanceFamily):
    """Return the deterministic string pair ``(x, y)`` for ``family``.

    Pairs over at most 256 symbols come back as ``bytes``; larger alphabets as
    lists of ints.

    ``planted`` embeds one random string of ``planted_len`` signal symbols at
    random increasing positions in both outputs.  The remaining positions of
    ``x`` and ``y`` use two separate noise alphabets, disjoint from each other
    and from the signal, so the LCS is exactly ``planted_len``.
    """
    f = family
    rng = make_rng(f.seed)
    n = f.n
    if f.kind == "random":
        x = rng.integers(0, f.sigma, n)
        y = rng.integers(0, f.sigma, n)
    elif f.kind == "permutation":
        x = rng.permutation(n)
        y = rng.permutation(n)
    elif f.kind == "repeated":
        x = y = np.zeros(n, dtype=np.int64)
    else:
        signal = rng.integers(0, f.sigma, f.planted_len)
        strings = []
        for noise_base in (f.sigma, 2 * f.sigma):
            s = noise_base + rng.integers(0, f.sigma, n)
            pos = np.sort(rng.choice(n, size=f.planted_len, replace=False))
            s[pos] = signal
            strings.append(s)
        x, y = strings
    alphabet = f.alphabet_size()
    return _encode(np.asarray(x), alphabet), _encode(np.asarray(y), alphabet)


@dataclass
class BenchRecord:
    family: dict
    method: str
    rate: str = "1"
    n_x: int = 0
    n_y: int = 0
    match_count: int = 0
    d: Rational = Rational(0, 1)
    d_ceil: int = 0
    min_count: int = 0
    holder: int = 0
    estimate: int | None = None
    solver_output: int | None = None
    kept: int | None = None
    dp_truth: int | None = None
    bounds_only: bool = False
    violations: list = field(default_factory=list)
    error: str | None = None
    elapsed: dict = field(default_factory=dict, compare=False)

    def to_dict(self, timings: bool = True) -> dict:
        out = {}
        for k, v in asdict(self).items():
            if k == "elapsed" and not timings:
                continue
            out[k] = self.d.as_dict() if k == "d" else v
        return out

    @classmethod
    def from_dict(cls, data: dict) -> "BenchRecord":
        data = dict(data)
        data["d"] = Rational(data["d"]["num"], data["d"]["den"])
        return cls(**data)


@dataclass
class SuiteConfig:
    families: list
    methods: tuple = ("exact",)
    rate: Fraction = Fraction(1)
    dp_guard: int = DEFAULT_DP_GUARD


_SETTINGS_KEYS = {"methods", "rate", "dp_guard"}
_FAMILY_KEYS = {"kind", "n", "sigma", "planted_len", "seed"}


def parse_rate(text) -> Fraction:
    try:
        rate = Fraction(str(text))
    except (ValueError, ZeroDivisionError):
        raise InvalidInputError(f"rate {text!r} is not a rational or decimal") from None
    if not 0 < rate <= 1:
        raise InvalidInputError(f"rate must lie in (0, 1], got {text}")
    return rate


def parse_suite(text: str) -> SuiteConfig:
    """Parse a line-delimited JSON suite.

    Every line holding a ``kind`` key describes one instance family.  At most
    one other line carries suite settings: ``methods``, ``rate``, ``dp_guard``.
    Blank lines and lines starting with ``#`` are ignored.
    """
    families, settings = [], None
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        try:
            obj = json.loads(line)
        except json.JSONDecodeError as e:
            raise InvalidInputError(f"line {lineno}: invalid JSON ({e.msg})") from None
        if not isinstance(obj, dict):
            raise InvalidInputError(f"line {lineno}: expected a JSON object")
        allowed = _FAMILY_KEYS if "kind" in obj else _SETTINGS_KEYS
        for key in obj:
            if key not in allowed:
                raise InvalidInputError(f"line {lineno}: unknown key {key!r}")
        if "kind" in obj:
            try:
                families.append(InstanceFamily(**obj))
            except TypeError as e:
                raise InvalidInputError(f"line {lineno}: {e}") from None
            except InvalidFamilyError as e:
                raise InvalidInputError(f"line {lineno}: {e}") from None
        else:
            if settings is not None:
                raise InvalidInputError(f"line {lineno}: duplicate settings line")
            settings = obj

    cfg = SuiteConfig(families)
    settings = settings or {}
    if "methods" in settings:
        methods = settings["methods"]
        if not isinstance(methods, list) or not methods:
            raise InvalidInputError("key 'methods' must be a non-empty list")
        for m in methods:
            if m not in METHODS:
                raise InvalidInputError(f"key 'methods': unknown method {m!r}")
        cfg.methods = tuple(methods)
    if "rate" in settings:
        cfg.rate = parse_rate(settings["rate"])
    if "dp_guard" in settings:
        if not isinstance(settings["dp_guard"], int) or settings["dp_guard"] < 0:
            raise InvalidInputError("key 'dp_guard' must be a non-negative integer")
        cfg.dp_guard = settings["dp_guard"]
    return cfg


def run_cell(family: InstanceFamily, method: str, rate: Fraction = Fraction(1),
             dp_guard: int = DEFAULT_DP_GUARD) -> BenchRecord:
    """One (family, method) measurement.  Failures land in ``record.error``."""
    rec = BenchRecord(family=family.as_dict(), method=method,
                      rate=str(rate) if method == "estimate" else "1")
    try:
        if method not in METHODS:
            raise InvalidInputError(f"unknown method {method!r}")
        t0 = time.perf_counter()
        x, y = generate(family)
        rec.elapsed["generate"] = time.perf_counter() - t0
        rec.n_x, rec.n_y = len(x), len(y)

        t0 = time.perf_counter()
        cx, cy = count_vector(x), count_vector(y)
        rec.match_count = match_count(x, y)
        rec.min_count = min_count_lower_bound(cx, cy)
        rec.holder = holder_bound(cx, cy)
        rec.d = Rational(rec.match_count, len(x) + len(y)) if x or y else Rational(0, 1)
        rec.d_ceil = math.ceil(rec.d)
        rec.elapsed["bounds"] = time.perf_counter() - t0

        if method == "bounds":
            rec.estimate = rec.d_ceil
        else:
            params = EstimatorParams(subsample_rate=rate if method == "estimate" else 1,
                                     seed=family.seed)
            est = approximate_lcs(x, y, exact_solver_spec(), params)
            rec.estimate = int(est.estimate)
            rec.solver_output = int(est.solver_output)
            rec.kept = est.kept
            rec.elapsed.update(est.elapsed)

        t0 = time.perf_counter()
        try:
            rec.dp_truth = dp_lcs(x, y, guard=dp_guard)
            rec.elapsed["dp"] = time.perf_counter() - t0
        except SizeGuardError:
            rec.bounds_only = True
        if rec.dp_truth is not None:
            for name in ("min_count", "d_ceil", "estimate"):
                if getattr(rec, name) > rec.dp_truth:
                    rec.violations.append(name)
    except Exception as e:  # contained per cell by contract
        rec.error = f"{type(e).__name__}: {e}"
    return rec


def _run_cell_args(args):
    return run_cell(*args)


def iter_suite(config: SuiteConfig, jobs: int = 1):
    """Yield one record per (family, method) cell, family-major.

    With ``jobs > 1`` cells run in worker processes; yield order is unchanged.
    """
    cells = [(f, m, config.rate, config.dp_guard)
             for f in config.families for m in config.methods]
    if jobs <= 1 or len(cells) <= 1:
        for c in cells:
            yield run_cell(*c)
        return
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        yield from pool.map(_run_cell_args, cells)


def run_suite(config: SuiteConfig, jobs: int = 1) -> list[BenchRecord]:
    return list(iter_suite(config, jobs))
