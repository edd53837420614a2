"""Command-line interface: ``blocklis {exact,estimate,bounds,gen,bench}``.

Every command prints one JSON report line.  Exit codes: 0 success, 2 usage or
input error, 3 internal invariant violation.
"""
from __future__ import annotations

import argparse
import math
import os
import sys
import time
from pathlib import Path

from .counts import (count_vector, holder_bound, inner_product, match_lower_bound_d,
                     min_count_lower_bound)
from .errors import BlockLisError, InvalidInputError, InvariantViolation
from .estimator import EstimatorParams, approximate_lcs
from .reduction import (build_block_sequence, build_occurrence_index, split_stdin,
                        tokenize_pair)
from .report import CliReport, rational, record_line
from .solver import exact_block_lis, exact_solver_spec, verify_certificate
from .workbench import InstanceFamily, KINDS, generate, iter_suite, parse_rate, parse_suite

EXIT_OK, EXIT_USAGE, EXIT_INTERNAL = 0, 2, 3
U64_MAX = 2**64 - 1


class UsageError(InvalidInputError):
    pass


def _read(path: str) -> bytes:
    try:
        return Path(path).read_bytes()
    except OSError as e:
        raise UsageError(f"cannot read {path}: {e.strerror or e}") from None


def load_pair(paths: list[str], mode: str):
    """Read the two input sequences and the input descriptor for the report."""
    if paths == ["-"]:
        a, b = split_stdin(sys.stdin.buffer.read(), mode)
    elif len(paths) == 2 and "-" not in paths:
        a, b = _read(paths[0]), _read(paths[1])
    else:
        raise UsageError("give two input paths, or a single '-' to read both from stdin")
    if mode == "tokens":
        x, y = tokenize_pair(a, b)
    else:
        x, y = a, b
    inputs = {"a": paths[0], "b": paths[-1] if len(paths) == 2 else "-",
              "mode": mode, "len_x": len(x), "len_y": len(y)}
    return x, y, inputs


def _seconds(d: dict) -> dict:
    return {k: round(v, 6) for k, v in d.items()}


def cmd_exact(args) -> CliReport:
    x, y, inputs = load_pair(args.inputs, args.mode)
    t0 = time.perf_counter()
    z = build_block_sequence(x, build_occurrence_index(y))
    t1 = time.perf_counter()
    length, cert = exact_block_lis(z, want_certificate=args.certificate)
    t2 = time.perf_counter()
    d = match_lower_bound_d(z.match_count, len(x), len(y))
    if math.ceil(d) > length:
        raise InvariantViolation(f"ceil(d)={math.ceil(d)} exceeds exact length {length}")
    result = {"length": length, "match_count": z.match_count,
              "d": rational(d), "d_ceil": math.ceil(d)}
    if cert is not None:
        if not verify_certificate(x, y, cert, length):
            raise InvariantViolation("solver emitted an invalid certificate")
        result["certificate"] = [list(p) for p in cert.pairs]
    return CliReport("exact", inputs, result,
                     _seconds({"reduce": t1 - t0, "solve": t2 - t1}))


def cmd_estimate(args) -> CliReport:
    x, y, inputs = load_pair(args.inputs, args.mode)
    if args.rate != 1 and len(x) != len(y):
        raise UsageError(
            f"--rate {args.rate} needs equal-length inputs, got {len(x)} and {len(y)}")
    params = EstimatorParams(subsample_rate=args.rate, seed=args.seed)
    est = approximate_lcs(x, y, exact_solver_spec(), params)
    if est.estimate < est.d_ceil:
        raise InvariantViolation("estimate below ceil(d)")
    result = {"estimate": int(est.estimate), "solver_output": int(est.solver_output),
              "solver_skipped": est.solver_skipped, "match_count": est.match_count,
              "d": rational(est.d), "d_ceil": est.d_ceil, "rate": rational(args.rate),
              "kept": est.kept, "seed": args.seed}
    return CliReport("estimate", inputs, result, _seconds(est.elapsed))


def cmd_bounds(args) -> CliReport:
    x, y, inputs = load_pair(args.inputs, args.mode)
    t0 = time.perf_counter()
    cx, cy = count_vector(x), count_vector(y)
    mc = inner_product(cx, cy)
    d = match_lower_bound_d(mc, len(x), len(y))
    result = {"match_count": mc, "d": rational(d), "d_ceil": math.ceil(d),
              "min_count": min_count_lower_bound(cx, cy), "holder": holder_bound(cx, cy)}
    return CliReport("bounds", inputs, result,
                     _seconds({"bounds": time.perf_counter() - t0}))


def cmd_gen(args) -> CliReport:
    try:
        fam = InstanceFamily(args.kind, args.n, args.sigma, args.planted_len, args.seed)
    except InvalidInputError as e:
        raise UsageError(str(e)) from None
    x, y = generate(fam)
    mode = "bytes" if isinstance(x, bytes) else "tokens"
    for path, s in zip(args.outputs, (x, y)):
        data = s if mode == "bytes" else (" ".join(map(str, s)) + "\n").encode()
        try:
            Path(path).write_bytes(data)
        except OSError as e:
            raise UsageError(f"cannot write {path}: {e.strerror or e}") from None
    inputs = {"family": fam.as_dict(), "out_a": args.outputs[0], "out_b": args.outputs[1]}
    return CliReport("gen", inputs, {"mode": mode, "len_x": len(x), "len_y": len(y)})


def cmd_bench(args) -> CliReport:
    cfg = parse_suite(_read(args.config).decode("utf-8"))
    if args.dp_guard is not None:
        cfg.dp_guard = args.dp_guard
    counts = {"records": 0, "errors": 0, "bounds_only": 0, "violations": 0}
    t0 = time.perf_counter()
    try:
        out = open(args.out, "w", encoding="utf-8")
    except OSError as e:
        raise UsageError(f"cannot write {args.out}: {e.strerror or e}") from None
    with out:
        for rec in iter_suite(cfg, jobs=args.jobs):
            out.write(record_line(rec, args.timings) + "\n")
            out.flush()
            counts["records"] += 1
            counts["errors"] += rec.error is not None
            counts["bounds_only"] += rec.bounds_only
            counts["violations"] += bool(rec.violations)
    inputs = {"config": args.config, "out": args.out, "jobs": args.jobs,
              "methods": list(cfg.methods), "rate": rational(cfg.rate),
              "dp_guard": cfg.dp_guard}
    report = CliReport("bench", inputs, counts,
                       _seconds({"total": time.perf_counter() - t0}))
    if counts["violations"]:
        args._exit = EXIT_INTERNAL
    return report


def _seed(text: str) -> int:
    try:
        seed = int(text, 0)
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid seed {text!r}") from None
    if not 0 <= seed <= U64_MAX:
        raise argparse.ArgumentTypeError("seed must be an unsigned 64-bit integer")
    return seed


def _rate(text: str):
    try:
        return parse_rate(text)
    except InvalidInputError as e:
        raise argparse.ArgumentTypeError(str(e)) from None


def _positive(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError("must be >= 1")
    return v


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="blocklis", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, inputs=True):
        if inputs:
            sp.add_argument("inputs", nargs="+", metavar="FILE",
                            help="two input paths, or '-' to read both from stdin")
            sp.add_argument("--mode", choices=("bytes", "tokens"), default="bytes")
        sp.add_argument("--out", help="write the report here instead of stdout")
        sp.add_argument("--no-timings", dest="timings", action="store_false",
                        help="omit wall-clock timings (for reproducible reports)")

    sp = sub.add_parser("exact", help="exact LCS through the Block-LIS solver")
    common(sp)
    sp.add_argument("--certificate", action="store_true",
                    help="include a monotone (i, j) witness")
    sp.set_defaults(func=cmd_exact)

    env_seed = os.environ.get("BLOCKLIS_SEED")
    sp = sub.add_parser("estimate", help="subsample then estimate the LCS")
    common(sp)
    sp.add_argument("--rate", type=_rate, default=_rate("1"))
    sp.add_argument("--seed", type=_seed, default=env_seed if env_seed is not None else "0",
                    help="defaults to $BLOCKLIS_SEED, else 0")
    sp.set_defaults(func=cmd_estimate)

    sp = sub.add_parser("bounds", help="match count and linear-time lower bounds")
    common(sp)
    sp.set_defaults(func=cmd_bounds)

    sp = sub.add_parser("gen", help="write a generated instance pair")
    sp.add_argument("outputs", nargs=2, metavar="OUT")
    sp.add_argument("--kind", choices=KINDS, required=True)
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--sigma", type=int, default=4)
    sp.add_argument("--planted-len", type=int, default=0)
    sp.add_argument("--seed", type=_seed, default=env_seed if env_seed is not None else "0")
    common(sp, inputs=False)
    sp.set_defaults(func=cmd_gen)

    sp = sub.add_parser("bench", help="run a benchmark suite")
    sp.add_argument("config", help="line-delimited JSON suite description")
    sp.add_argument("--out", required=True, help="where to stream bench records")
    sp.add_argument("--jobs", type=_positive, default=1)
    sp.add_argument("--dp-guard", type=int, default=None,
                    help="max dp cells for ground truth (overrides the suite)")
    sp.add_argument("--no-timings", dest="timings", action="store_false")
    sp.set_defaults(func=cmd_bench)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    args._exit = EXIT_OK
    try:
        report = args.func(args)
    except InvariantViolation as e:
        print(f"blocklis: internal error: {e}", file=sys.stderr)
        return EXIT_INTERNAL
    except (InvalidInputError, OSError) as e:
        print(f"blocklis: error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except BlockLisError as e:
        print(f"blocklis: internal error: {e}", file=sys.stderr)
        return EXIT_INTERNAL
    if not args.timings:
        report.timings = None
    line = report.to_line() + "\n"
    if args.command != "bench" and args.out:
        Path(args.out).write_text(line, encoding="utf-8")
    else:
        sys.stdout.write(line)
    return args._exit


if __name__ == "__main__":
    sys.exit(main())
