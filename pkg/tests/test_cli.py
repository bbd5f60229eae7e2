import json
import random
import subprocess
import sys
from pathlib import Path

import pytest

from semitree import matrixfile
from semitree.cli import main
from semitree.matrix import SquareMatrix
from semitree.sampling import random_matrix, sample_algebras

GOLDEN = Path(__file__).parent / "golden"

CASES = [
    ("boolean_a1.rst.out", ["rst", "boolean_a1.json"]),
    ("boolean_a2.rst.out", ["rst", "boolean_a2.json"]),
    ("boolean_a2.check.out", ["check", "boolean_a2.json", "--balance", "--eigen"]),
    ("classical3.rst.out", ["rst", "classical3.json"]),
    ("classical3.reduce.out", ["reduce", "classical3.json", "--normalize", "--trace", "--count-ops"]),
    ("classical3.check.out", ["check", "classical3.json", "--all"]),
    ("maxtimes3.reduce.out", ["reduce", "maxtimes3.json"]),
]


def run_cli(capsys, argv):
    code = main(argv)
    out, err = capsys.readouterr()
    return code, out, err


@pytest.mark.parametrize("golden, argv", CASES)
def test_golden(capsys, golden, argv):
    argv = [argv[0], str(GOLDEN / argv[1]), *argv[2:]]
    code, out, _ = run_cli(capsys, argv)
    assert code == 0
    assert out == (GOLDEN / golden).read_text(encoding="utf-8")
    # a second run is byte-identical
    assert run_cli(capsys, argv)[1] == out


def test_golden_contents():
    a1 = json.loads((GOLDEN / "boolean_a1.rst.out").read_text(encoding="utf-8"))
    assert a1["w"] == [[], [], []] and a1["warnings"]
    a2 = json.loads((GOLDEN / "boolean_a2.rst.out").read_text(encoding="utf-8"))
    assert a2["w"] == [[], ["σ2"], ["σ2"]]
    red = json.loads((GOLDEN / "classical3.reduce.out").read_text(encoding="utf-8"))
    assert red["w"] == [0.25, 0.375, 0.5]
    assert red["distribution"] == [0.222222222222, 0.333333333333, 0.444444444444]
    mt = json.loads((GOLDEN / "maxtimes3.reduce.out").read_text(encoding="utf-8"))
    assert mt["w"] == [15.0, 10.0, 3.0]


def test_zero_vector_warning_on_stderr(capsys):
    _, _, err = run_cli(capsys, ["rst", str(GOLDEN / "boolean_a1.json")])
    assert "all-zero" in err


def write(tmp_path, doc, name="m.json"):
    p = tmp_path / name
    p.write_text(doc if isinstance(doc, str) else json.dumps(doc), encoding="utf-8")
    return str(p)


@pytest.mark.parametrize(
    "doc",
    [
        "{not json",
        {"matrix": [[1]]},
        {"algebra": {"kind": "classical-nonneg"}, "matrix": [[1, 2], [3]]},
        {"algebra": {"kind": "classical-nonneg"}, "matrix": [[-1]]},
        {"algebra": {"kind": "nope"}, "matrix": [[1]]},
        {"algebra": {"kind": "boolean-subsets", "universe": ["a"]}, "matrix": [[["b"]]]},
        {"algebra": {"kind": "max-plus"}, "matrix": [["+inf"]]},
        {"algebra": {"kind": "interval", "base": "max-plus"}, "matrix": [[[3, 1]]]},
        {"algebra": {"kind": "classical-nonneg"}, "matrix": "1"},
    ],
)
def test_exit_parse(tmp_path, capsys, doc):
    code, out, err = run_cli(capsys, ["rst", write(tmp_path, doc)])
    assert code == 2 and out == "" and err


def test_exit_parse_missing_file(capsys, tmp_path):
    assert run_cli(capsys, ["rst", str(tmp_path / "absent.json")])[0] == 2


def test_exit_cap(tmp_path, capsys, monkeypatch):
    doc = {"algebra": {"kind": "max-min"}, "matrix": [[1.0] * 10 for _ in range(10)]}
    assert run_cli(capsys, ["rst", write(tmp_path, doc)])[0] == 3
    monkeypatch.setenv("SEMITREE_ORACLE_CAP", "2")
    assert run_cli(capsys, ["rst", str(GOLDEN / "classical3.json")])[0] == 3
    assert run_cli(capsys, ["check", str(GOLDEN / "classical3.json")])[0] == 3


def test_exit_algebra(capsys):
    code, _, err = run_cli(capsys, ["reduce", str(GOLDEN / "boolean_a2.json")])
    assert code == 4 and "semifield" in err
    assert run_cli(capsys, ["check", str(GOLDEN / "boolean_a2.json"), "--lemma2"])[0] == 4


def test_exit_precondition(tmp_path, capsys):
    doc = {"algebra": {"kind": "classical-nonneg"}, "matrix": [[1, 0], [0, 1]]}
    code, _, err = run_cli(capsys, ["reduce", write(tmp_path, doc)])
    assert code == 5 and "row 1" in err


def test_exit_reducible_input(tmp_path, capsys):
    doc = {"algebra": {"kind": "max-times"}, "matrix": [[0, 1, 0], [1, 0, 0], [0, 1, 0]]}
    code, _, err = run_cli(capsys, ["reduce", write(tmp_path, doc)])
    assert code == 5 and "s_2" in err


def test_check_failure_exit(monkeypatch, capsys):
    import semitree.cli as cli

    monkeypatch.setattr(cli, "verify_lemma2", lambda A, i: False)
    assert run_cli(capsys, ["check", str(GOLDEN / "classical3.json"), "--lemma2"])[0] == 1


def test_eigen_skipped_for_non_stochastic(capsys):
    code, out, _ = run_cli(capsys, ["check", str(GOLDEN / "maxtimes3.json"), "--eigen", "--balance"])
    report = json.loads(out)
    assert code == 0
    assert report["checks"] == {"balance": "pass", "eigen": "not stochastic: eigen check skipped"}


def test_all_on_non_semifield_skips_lemma2(capsys):
    code, out, _ = run_cli(capsys, ["check", str(GOLDEN / "boolean_a2.json"), "--all"])
    checks = json.loads(out)["checks"]
    assert code == 0 and checks["lemma2"].endswith("skipped")


def test_reduce_permute(capsys):
    base = json.loads(run_cli(capsys, ["reduce", str(GOLDEN / "maxtimes3.json")])[1])
    code, out, _ = run_cli(
        capsys, ["reduce", str(GOLDEN / "maxtimes3.json"), "--permute", "3,1,2", "--trace"]
    )
    report = json.loads(out)
    assert code == 0
    assert report["w"] == base["w"]
    assert report["elimination_order"] == [3, 1, 2]
    assert run_cli(capsys, ["reduce", str(GOLDEN / "maxtimes3.json"), "--permute", "1,1,2"])[0] == 2


def test_normalize_skipped_when_not_stochastic(capsys):
    out = run_cli(capsys, ["reduce", str(GOLDEN / "maxtimes3.json"), "--normalize"])[1]
    report = json.loads(out)
    assert "distribution" not in report and report["warnings"]


def test_cayley(capsys):
    code, out, _ = run_cli(capsys, ["cayley", "--kind", "classical-nonneg", "1", "2", "3"])
    report = json.loads(out)
    assert code == 0 and report["lhs"] == report["rhs"] == 18.0
    for kind in ("max-times", "min-plus", "max-min"):
        assert run_cli(capsys, ["cayley", "--kind", kind, "0.5", "2"])[0] == 0
    first = run_cli(capsys, ["cayley", "--kind", "max-plus", "--random", "42", "--n", "5"])
    again = run_cli(capsys, ["cayley", "--kind", "max-plus", "--random", "42", "--n", "5"])
    assert first[0] == 0 and first[1] == again[1] and json.loads(first[1])["passed"]
    code, out, _ = run_cli(
        capsys, ["cayley", "--kind", "boolean-subsets", "--universe", "a,b", '["a"]', '["b"]', "[]"]
    )
    assert code == 0
    code, _, _ = run_cli(
        capsys, ["cayley", "--kind", "interval", "--base", "max-plus", "--random", "1", "--n", "4"]
    )
    assert code == 0
    assert run_cli(capsys, ["cayley", "--kind", "classical-nonneg", "1"])[0] == 2
    assert run_cli(capsys, ["cayley", "--kind", "max-plus", "--random", "1", "--n", "10"])[0] == 3


def test_count_ops_command(capsys):
    code, out, _ = run_cli(capsys, ["count-ops", "60"])
    report = json.loads(out)
    assert code == 0 and report["passed"] and report["op_counts"]["invs"] == 59


@pytest.mark.parametrize("alg", sample_algebras(), ids=lambda a: a.kind)
def test_round_trip(alg):
    rng = random.Random(5)
    for n in range(1, 6):
        A = random_matrix(alg, n, rng, zero_prob=0.3)
        B = matrixfile.loads(matrixfile.dumps(A))
        assert B.algebra == A.algebra
        assert all(alg.eq(x, y) for rx, ry in zip(A.entries, B.entries) for x, y in zip(rx, ry))


@pytest.mark.parametrize("kind", ["classical-nonneg", "max-times", "max-plus", "min-plus"])
def test_rst_and_reduce_agree(tmp_path, capsys, kind):
    alg = next(a for a in sample_algebras() if a.kind == kind)
    rng = random.Random(17)
    for n in range(2, 7):
        A = random_matrix(alg, n, rng, offdiag_nonzero=True)
        path = write(tmp_path, matrixfile.dumps(A), f"m{n}.json")
        brute = json.loads(run_cli(capsys, ["rst", path])[1])["w"]
        fast = json.loads(run_cli(capsys, ["reduce", path])[1])["w"]
        assert all(alg.eq(alg.decode(x), alg.decode(y)) for x, y in zip(brute, fast))


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "semitree", "rst", str(GOLDEN / "boolean_a2.json")],
        capture_output=True,
        text=True,
        encoding="utf-8",
    )
    assert proc.returncode == 0
    assert proc.stdout == (GOLDEN / "boolean_a2.rst.out").read_text(encoding="utf-8")


def test_exit_overflow(tmp_path, capsys):
    doc = {"algebra": {"kind": "max-times"}, "matrix": [[1e300] * 4 for _ in range(4)]}
    code, out, err = run_cli(capsys, ["reduce", write(tmp_path, doc)])
    assert code == 6 and out == "" and "range" in err
