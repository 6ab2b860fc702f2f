import csv
import io
import json
import subprocess
import sys

import pytest

from hyperturan.cli import EXIT_FOUND, EXIT_INEXACT, EXIT_OK, EXIT_USAGE, main
from hyperturan.constructions import loose_extremal
from hyperturan.hypercore import Hypergraph, read_hg, write_hg


@pytest.fixture(autouse=True)
def isolated_cache(tmp_path, monkeypatch):
    monkeypatch.setenv("TURAN_CACHE", str(tmp_path / "cache.jsonl"))
    return tmp_path / "cache.jsonl"


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_formula_rows(capsys):
    code, out, _ = run(capsys, "formula", "--kind", "loose", "--r", "3", "--lengths", "3,3", "--n", "12")
    assert code == EXIT_OK
    rows = list(csv.DictReader(io.StringIO(out)))
    assert rows[0]["value"] == "136" and rows[0]["t"] == "3" and rows[0]["lengths"] == "3,3"

    code, out, _ = run(capsys, "formula", "--kind", "linear", "--r", "3", "--lengths", "4", "--n", "15", "--format", "tsv")
    header, row = out.splitlines()
    assert dict(zip(header.split("\t"), row.split("\t")))["value"] == "103"


def test_formula_range_and_md(capsys):
    code, out, _ = run(capsys, "formula", "--kind", "matching", "--r", "3", "--s", "1", "--n-range", "4..7", "--format", "md")
    lines = out.splitlines()
    assert code == EXIT_OK and len(lines) == 2 + 4
    assert lines[0].startswith("| n |")


def test_formula_preserves_length_order(capsys):
    _, a, _ = run(capsys, "formula", "--kind", "loose", "--r", "3", "--lengths", "4,3", "--n", "20")
    _, b, _ = run(capsys, "formula", "--kind", "loose", "--r", "3", "--lengths", "3,4", "--n", "20")
    ra, rb = next(csv.DictReader(io.StringIO(a))), next(csv.DictReader(io.StringIO(b)))
    assert ra["lengths"] == "4,3" and rb["lengths"] == "3,4" and ra["value"] == rb["value"]


def test_formula_errors(capsys):
    code, _, err = run(capsys, "formula", "--kind", "lcycle", "--r", "3", "--lengths", "4", "--n", "20")
    assert code == EXIT_USAGE and "(3, 4)" in err
    code, _, err = run(capsys, "formula", "--kind", "graph", "--lengths", "4", "--n", "20")
    assert code == EXIT_USAGE and "k >= 2" in err
    assert run(capsys, "formula", "--kind", "loose", "--r", "2", "--lengths", "3", "--n", "9")[0] == EXIT_USAGE
    assert run(capsys, "formula", "--kind", "loose", "--r", "3", "--n", "9")[0] == EXIT_USAGE
    assert run(capsys, "formula", "--kind", "nope")[0] == EXIT_USAGE
    assert run(capsys, "formula", "--kind", "loose", "--r", "3", "--lengths", "3", "--n-range", "9..4")[0] == EXIT_USAGE


def test_csv_byte_stable(capsys):
    argv = ("formula", "--kind", "linear", "--r", "4", "--lengths", "4,4", "--n-range", "9..14")
    assert run(capsys, *argv)[1] == run(capsys, *argv)[1]


@pytest.mark.parametrize(
    "argv, edges",
    [
        (["--kind", "loose", "--r", "3", "--lengths", "4", "--n", "10"], 37),
        (["--kind", "linear", "--r", "3", "--lengths", "4,4", "--n", "20"], 475),
        (["--kind", "graph", "--lengths", "3", "--n", "9"], 4),
    ],
)
def test_construct(capsys, tmp_path, argv, edges):
    out = tmp_path / "g.hg"
    code, text, _ = run(capsys, "construct", *argv, "--out", str(out))
    assert code == EXIT_OK and "agree" in text
    assert read_hg(out).m == edges


def test_construct_matching_two_files(capsys, tmp_path):
    out = tmp_path / "m.hg"
    code, _, _ = run(capsys, "construct", "--kind", "matching", "--r", "3", "--s", "1", "--n", "7", "--out", str(out))
    assert code == EXIT_OK
    assert read_hg(tmp_path / "m.A.hg").m == 10
    assert read_hg(tmp_path / "m.B.hg").m == 15


def test_construct_infeasible(capsys, tmp_path):
    code, _, err = run(capsys, "construct", "--kind", "loose", "--r", "3", "--lengths", "3,3", "--n", "5", "--out", str(tmp_path / "x.hg"))
    assert code == EXIT_USAGE and "n >= 6" in err


def test_construct_check_roundtrip(capsys, tmp_path):
    out = tmp_path / "ext.hg"
    run(capsys, "construct", "--kind", "loose", "--r", "3", "--lengths", "3,3", "--n", "12", "--out", str(out))
    assert read_hg(out) == loose_extremal(12, 3, [3, 3])
    code, text, _ = run(capsys, "check", "--input", str(out), "--kind", "loose", "--lengths", "3,3")
    assert code == EXIT_OK and text.strip() == "FREE"


def test_check_contains(capsys, tmp_path):
    k9 = tmp_path / "k9.hg"
    write_hg(k9, Hypergraph.complete(9, 3))
    wit = tmp_path / "w.json"
    code, text, _ = run(capsys, "check", "--input", str(k9), "--kind", "loose", "--lengths", "3", "--witness-out", str(wit))
    assert code == EXIT_FOUND and text.startswith("CONTAINS")
    data = json.loads(wit.read_text())
    assert data["parts"][0]["kind"] == "loose" and len(data["parts"][0]["edges"]) == 3

    pair = tmp_path / "pair.hg"
    write_hg(pair, Hypergraph.from_edges(6, 3, [(1, 2, 3), (4, 5, 6)]))
    assert run(capsys, "check", "--input", str(pair), "--kind", "matching", "--s", "1")[0] == EXIT_FOUND
    assert run(capsys, "check", "--input", str(pair), "--spec", "linear:1,linear:1")[0] == EXIT_FOUND
    assert run(capsys, "check", "--input", str(pair), "--kind", "berge", "--lengths", "2")[0] == EXIT_OK


def test_check_errors(capsys, tmp_path):
    bad = tmp_path / "bad.hg"
    bad.write_text("3 5 2\n1 2 3\n1 2 9\n")
    code, _, err = run(capsys, "check", "--input", str(bad), "--kind", "loose", "--lengths", "2")
    assert code == EXIT_USAGE and "line 3" in err
    good = tmp_path / "good.hg"
    write_hg(good, Hypergraph.complete(5, 3))
    assert run(capsys, "check", "--input", str(good), "--kind", "loose", "--r", "4", "--lengths", "2")[0] == EXIT_USAGE
    assert run(capsys, "check", "--input", str(good), "--spec", "loose-2")[0] == EXIT_USAGE
    assert run(capsys, "check", "--input", str(tmp_path / "missing.hg"), "--kind", "loose", "--lengths", "2")[0] == EXIT_USAGE


def test_oracle_and_cache(capsys, isolated_cache, tmp_path):
    code, out, _ = run(capsys, "oracle", "--kind", "linear", "--r", "3", "--lengths", "2", "--n", "6")
    assert code == EXIT_OK and out.startswith("value=4\texact=true\tmode=exhaustive")
    assert isolated_cache.exists()
    code, again, _ = run(capsys, "oracle", "--kind", "linear", "--r", "3", "--lengths", "2", "--n", "6")
    assert "mode=cache" in again
    assert again.splitlines()[1:] == out.splitlines()[1:]

    flag_cache = tmp_path / "flag.jsonl"
    w = tmp_path / "w.hg"
    code, out, _ = run(capsys, "oracle", "--kind", "linear", "--r", "3", "--lengths", "2", "--n", "6",
                       "--cache", str(flag_cache), "--witness-out", str(w))
    assert flag_cache.exists() and "mode=exhaustive" in out and read_hg(w).m == 4

    code, out, _ = run(capsys, "oracle", "--kind", "linear", "--r", "3", "--lengths", "2", "--n", "6", "--no-cache")
    assert "mode=exhaustive" in out


def test_oracle_inexact_exit(capsys):
    code, out, _ = run(capsys, "oracle", "--kind", "graph", "--lengths", "4", "--n", "8",
                       "--mode", "bnb", "--node-budget", "4096", "--no-cache")
    assert code == EXIT_INEXACT and "exact=false" in out


def test_verify_matching(capsys):
    code, out, _ = run(capsys, "verify", "--kind", "matching", "--r", "3", "--s", "1", "--n-range", "4..7")
    assert code == EXIT_OK
    rows = list(csv.DictReader(io.StringIO("\n".join(out.splitlines()[:-1]))))
    assert [r["oracle"] for r in rows] == ["4", "10", "10", "15"]
    assert all(r["agree"] == "yes" for r in rows)
    assert out.splitlines()[-1] == "empirical threshold: n >= 4"


def test_verify_anomaly(capsys):
    code, out, _ = run(capsys, "verify", "--kind", "loose", "--r", "3", "--lengths", "2", "--n-range", "6..7")
    assert code == EXIT_FOUND
    assert out.splitlines()[-1] == "empirical threshold: no agreement in range"


def test_kmw_and_selftest(capsys):
    code, out, _ = run(capsys, "kmw", "--r", "3", "--n", "5")
    assert code == EXIT_OK and out.startswith("value=4")
    code, out, _ = run(capsys, "selftest", "--graphs", "15", "--seed", "3")
    assert code == EXIT_OK and "mismatches=0" in out


def test_console_entry_point():
    proc = subprocess.run([sys.executable, "-m", "hyperturan.cli", "--version"], capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout.strip()
