import io
import json
import subprocess
import sys

import pytest

from blocklis import cli, dp_lcs
from blocklis.report import CliReport


@pytest.fixture
def pair(tmp_path):
    def make(a: bytes, b: bytes):
        pa, pb = tmp_path / "a.txt", tmp_path / "b.txt"
        pa.write_bytes(a)
        pb.write_bytes(b)
        return str(pa), str(pb)
    return make


def run(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    report = CliReport.from_line(out) if out.strip() else None
    return code, report, err


def test_exact_fixture(capsys, pair):
    code, rep, _ = run(capsys, "exact", *pair(b"abcabc", b"cbacba"), "--certificate")
    assert code == 0
    r = rep.result
    assert r["length"] == 3 and r["match_count"] == 12
    assert r["d"] == {"num": 12, "den": 12} and r["d_ceil"] == 1
    assert len(r["certificate"]) == 3
    assert set(rep.timings) == {"reduce", "solve"}


def test_exact_identical_and_empty(capsys, pair):
    assert run(capsys, "exact", *pair(b"hello world", b"hello world"))[1].result["length"] == 11
    assert run(capsys, "exact", *pair(b"", b""))[1].result["length"] == 0


def test_bytes_mode_keeps_trailing_newline(capsys, pair):
    rep = run(capsys, "exact", *pair(b"ab\n", b"ab\n"))[1]
    assert rep.inputs["len_x"] == 3 and rep.result["length"] == 3


def test_tokens_mode(capsys, pair):
    rep = run(capsys, "exact", *pair(b"a rose is a rose", b"a rose\tby any name"),
              "--mode", "tokens")[1]
    assert rep.inputs["len_x"] == 5 and rep.inputs["len_y"] == 5
    assert rep.result["length"] == 2


def test_stdin_input(capsys, monkeypatch):
    monkeypatch.setattr(sys, "stdin", io.TextIOWrapper(io.BytesIO(b"abcabc\0cbacba")))
    rep = run(capsys, "exact", "-")[1]
    assert rep.result["length"] == 3 and rep.inputs["b"] == "-"
    monkeypatch.setattr(sys, "stdin", io.TextIOWrapper(io.BytesIO(b"x y z\n\ny z\n")))
    rep = run(capsys, "exact", "-", "--mode", "tokens")[1]
    assert rep.result["length"] == 2


def test_stdin_without_separator(capsys, monkeypatch):
    monkeypatch.setattr(sys, "stdin", io.TextIOWrapper(io.BytesIO(b"abc")))
    code, _, err = run(capsys, "exact", "-")
    assert code == 2 and "NUL" in err


def test_unreadable_file(capsys, tmp_path):
    missing = str(tmp_path / "nope.txt")
    code, rep, err = run(capsys, "exact", missing, missing)
    assert code == 2 and rep is None and missing in err


def test_wrong_input_count(capsys, pair):
    a, _ = pair(b"a", b"b")
    assert run(capsys, "bounds", a)[0] == 2


def test_estimate_rate_one_matches_exact(capsys, pair):
    files = pair(b"the quick brown fox", b"the lazy dog jumps")
    ex = run(capsys, "exact", *files)[1].result
    est = run(capsys, "estimate", *files)[1].result
    assert est["estimate"] == ex["length"]
    assert est["match_count"] == ex["match_count"] and est["d"] == ex["d"]
    assert est["rate"] == {"num": 1, "den": 1}


def test_estimate_subsampled_planted(capsys, tmp_path):
    a, b = str(tmp_path / "p_a"), str(tmp_path / "p_b")
    assert run(capsys, "gen", "--kind", "planted", "--n", "200", "--planted-len", "100",
               "--seed", "4", a, b)[0] == 0
    rep = run(capsys, "estimate", a, b, "--rate", "1/2", "--seed", "8")[1]
    assert rep.result["estimate"] <= 100
    assert rep.result["rate"] == {"num": 1, "den": 2} and rep.result["kept"] < 200


def test_estimate_unequal_lengths_with_rate_is_usage_error(capsys, pair):
    code, rep, err = run(capsys, "estimate", *pair(b"abc", b"ab"), "--rate", "0.5")
    assert code == 2 and rep is None and "equal-length" in err


def test_estimate_disjoint(capsys, pair):
    rep = run(capsys, "estimate", *pair(b"abc", b"xyz"))[1]
    assert rep.result["estimate"] == 0 and rep.result["solver_skipped"]


def test_bad_rate_is_usage_error(pair):
    with pytest.raises(SystemExit) as info:
        cli.main(["estimate", *pair(b"a", b"a"), "--rate", "0"])
    assert info.value.code == 2


def test_seed_from_environment(capsys, pair, monkeypatch):
    monkeypatch.setenv("BLOCKLIS_SEED", "123")
    rep = run(capsys, "estimate", *pair(b"abcd" * 10, b"dcba" * 10), "--rate", "0.5")[1]
    assert rep.result["seed"] == 123
    monkeypatch.delenv("BLOCKLIS_SEED")
    assert run(capsys, "estimate", *pair(b"ab", b"ab"))[1].result["seed"] == 0


def test_bounds(capsys, pair):
    r = run(capsys, "bounds", *pair(b"abcabc", b"cbacba"))[1].result
    assert r == {"match_count": 12, "d": {"num": 12, "den": 12}, "d_ceil": 1,
                 "min_count": 2, "holder": 24}
    n = 9
    r = run(capsys, "bounds", *pair(b"a" * n, b"a" * n))[1].result
    assert r["match_count"] == n * n and r["min_count"] == n
    r = run(capsys, "bounds", *pair(b"abc", b"def"))[1].result
    assert r["match_count"] == r["d"]["num"] == r["d_ceil"] == r["min_count"] == r["holder"] == 0


def test_gen(capsys, tmp_path):
    a, b = tmp_path / "a", tmp_path / "b"
    code, rep, _ = run(capsys, "gen", "--kind", "repeated", "--n", "5", str(a), str(b))
    assert code == 0 and a.read_bytes() == b.read_bytes() == b"aaaaa"
    assert rep.inputs["family"]["kind"] == "repeated"

    run(capsys, "gen", "--kind", "permutation", "--n", "4", "--seed", "6", str(a), str(b))
    first = (a.read_bytes(), b.read_bytes())
    run(capsys, "gen", "--kind", "permutation", "--n", "4", "--seed", "6", str(a), str(b))
    assert (a.read_bytes(), b.read_bytes()) == first


def test_gen_planted_then_exact(capsys, tmp_path):
    a, b = str(tmp_path / "a"), str(tmp_path / "b")
    run(capsys, "gen", "--kind", "planted", "--n", "200", "--planted-len", "100", a, b)
    rep = run(capsys, "exact", a, b)[1]
    assert rep.result["length"] == 100
    assert dp_lcs(open(a, "rb").read(), open(b, "rb").read()) == 100


def test_gen_large_alphabet_writes_tokens(capsys, tmp_path):
    a, b = str(tmp_path / "a"), str(tmp_path / "b")
    rep = run(capsys, "gen", "--kind", "permutation", "--n", "1000", a, b)[1]
    assert rep.result["mode"] == "tokens"
    ex = run(capsys, "bounds", a, b, "--mode", "tokens")[1]
    assert ex.result["match_count"] == 1000


def test_gen_invalid_family(capsys, tmp_path):
    code, _, err = run(capsys, "gen", "--kind", "planted", "--n", "3", "--planted-len", "5",
                       str(tmp_path / "a"), str(tmp_path / "b"))
    assert code == 2 and "planted_len" in err


def _bench(capsys, tmp_path, text, *extra):
    cfg, out = tmp_path / "suite.jsonl", tmp_path / "records.jsonl"
    cfg.write_text(text)
    code, rep, err = run(capsys, "bench", str(cfg), "--out", str(out), *extra)
    lines = out.read_text().splitlines() if out.exists() else []
    return code, rep, [json.loads(line) for line in lines], err


def test_bench_empty_suite(capsys, tmp_path):
    code, rep, records, _ = _bench(capsys, tmp_path, "")
    assert code == 0 and records == [] and rep.result["records"] == 0


def test_bench_three_cells(capsys, tmp_path):
    code, rep, records, _ = _bench(capsys, tmp_path,
                                   '{"kind": "random", "n": 30, "seed": 1}\n'
                                   '{"kind": "permutation", "n": 30, "seed": 2}\n'
                                   '{"kind": "repeated", "n": 7}\n', "--no-timings")
    assert code == 0 and len(records) == 3 and rep.result["records"] == 3
    assert all(r["schema_version"] == "1" and "elapsed" not in r for r in records)
    assert all(r["d_ceil"] <= r["dp_truth"] for r in records)
    assert records[2]["estimate"] == 7


def test_bench_guard_exceeded(capsys, tmp_path):
    code, rep, records, _ = _bench(capsys, tmp_path,
                                   '{"kind": "random", "n": 100, "seed": 1}\n'
                                   '{"kind": "random", "n": 5, "seed": 1}\n',
                                   "--dp-guard", "1000")
    assert code == 0
    assert [r["bounds_only"] for r in records] == [True, False]
    assert records[0]["dp_truth"] is None and rep.result["bounds_only"] == 1


def test_bench_bad_config(capsys, tmp_path):
    code, rep, _, err = _bench(capsys, tmp_path, '{"kind": "random", "n": 5, "bogus": 1}\n')
    assert code == 2 and "bogus" in err


def test_bench_jobs(capsys, tmp_path):
    text = '{"methods": ["exact", "bounds"]}\n' + "".join(
        f'{{"kind": "random", "n": 40, "seed": {s}}}\n' for s in range(3))
    code, _, par, _ = _bench(capsys, tmp_path, text, "--jobs", "2", "--no-timings")
    _, _, ser, _ = _bench(capsys, tmp_path, text, "--no-timings")
    assert code == 0 and par == ser and len(par) == 6


def test_invariant_violation_exits_3(capsys, pair, monkeypatch):
    from blocklis.solver import Certificate
    monkeypatch.setattr(cli, "exact_block_lis",
                        lambda z, want_certificate=False: (3, Certificate(((0, 0),) * 3)))
    code, rep, err = run(capsys, "exact", *pair(b"abcabc", b"cbacba"), "--certificate")
    assert code == 3 and "invalid certificate" in err


def test_report_round_trip(capsys, pair):
    _, rep, _ = run(capsys, "estimate", *pair(b"abcabc", b"cbacba"))
    again = CliReport.from_line(rep.to_line())
    assert again == rep and again.to_line() == rep.to_line()


def test_out_flag_and_module_entry(tmp_path, pair):
    a, b = pair(b"abc", b"abd")
    out = tmp_path / "rep.jsonl"
    subprocess.run([sys.executable, "-m", "blocklis.cli", "bounds", a, b,
                    "--out", str(out)], check=True)
    assert CliReport.from_line(out.read_text()).result["match_count"] == 2
