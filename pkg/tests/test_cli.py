import io
import json
import subprocess
import sys
import time

import pytest

from edval.cli import main


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = main(list(argv), stdout=out, stderr=err)
    return code, out.getvalue(), err.getvalue()


def last_line(*argv):
    code, out, err = run(*argv)
    assert code == 0, err
    return out.rstrip("\n").splitlines()[-1]


def as_json(*argv):
    code, out, err = run("--json", *argv)
    assert code == 0, err
    assert out.count("\n") == 1
    return json.loads(out)


def test_documented_examples():
    assert last_line("ed-torus", "--matrix", "4;6") == "2"
    assert last_line("ed-forms", "-m", "3", "-d", "2") == "4"
    assert last_line("val", "--vars", "x1,x2", "x1^2*x2^-1 + 5*x1^3") == "(2,-1)"


# (argv, json key holding the primary value, plain rendering of that value)
GOLDEN = [
    (["ed-torus", "--matrix", "4;6"], "ed", "2"),
    (["ed-torus", "--matrix", "2 0; 1 1; 0 2"], "ed", "2"),
    (["ed-projective", "--matrix", "2;3"], "ed", "0"),
    (["ed-projective", "--matrix", "-2;3"], "ed", "1"),
    (["ed-projective", "--matrix", "4;6"], "ed", "1"),
    (["cd-torus", "--matrix", "4;6"], "cd", "1"),
    (["ed-abelian", "2", "4"], "ed", "2"),
    (["ed-abelian", "6", "10", "15"], "ed", "2"),
    (["ed-abelian", "1", "1"], "ed", "0"),
    (["snf", "--matrix", "-2 1; 3 1"], "divisors", "(1,5)"),
    (["rank", "--matrix", "2 2; 2 2"], "rank", "1"),
    (["rank-mod", "--matrix", "2 0; 1 1; 0 2", "-M", "2"], "rank", "1"),
    (["val", "--vars", "x1,x2", "x1 + x2", "--den", "x1*x2"], "valuation", "(-1,0)"),
    (["initial", "--vars", "x1,x2", "x1^2*x2^-1 + x1^3"], "initial", "(3,0)"),
    (["indep", "--matrix", "1 1; 1 -1"], "lambda", "2"),
    (["search", "--matrix", "4;6", "--bound", "6"], "min_rank", "2"),
    (["search", "--matrix", "1 0 0; 0 1 0; 0 0 1", "--bound", "6"], "min_rank", "0"),
    (["check-abelian", "--moduli", "2,2", "-p", "2", "x1", "x2 + x1^2*x2"], "rank", "2"),
]
GOLDEN += [(["ed-forms", "-m", str(m), "-d", "2"], "ed", str(v)) for m, v in zip(range(1, 7), [1, 2, 4, 7, 11, 16])]
GOLDEN += [(["ed-hypersurface", "-m", str(m), "-d", "3"], "ed", str(v)) for m, v in [(1, 0), (2, 2), (3, 7), (4, 16)]]


def _render(v):
    return "(" + ",".join(str(x) for x in v) + ")" if isinstance(v, list) else str(v)


@pytest.mark.parametrize("argv, key, plain", GOLDEN, ids=[" ".join(g[0]) for g in GOLDEN])
def test_json_and_plain_agree(argv, key, plain):
    assert last_line(*argv) == plain
    assert _render(as_json(*argv)[key]) == plain


def test_golden_corpus_is_fast():
    t = time.perf_counter()
    for argv, _, _ in GOLDEN:
        assert run(*argv)[0] == 0
        assert run("--json", *argv)[0] == 0
    assert time.perf_counter() - t < 5


def test_json_flag_after_subcommand():
    assert as_json("ed-torus", "--matrix", "4;6") == json.loads(run("ed-torus", "--json", "--matrix", "4;6")[1])


def test_snf_json_schema():
    obj = as_json("snf", "--matrix", "-2 1; 3 1")
    assert obj["divisors"] == [1, 5]
    p, q = obj["p"], obj["q"]
    a = [[-2, 1], [3, 1]]
    pa = [[sum(p[i][k] * a[k][j] for k in range(2)) for j in range(2)] for i in range(2)]
    paq = [[sum(pa[i][k] * q[k][j] for k in range(2)) for j in range(2)] for i in range(2)]
    assert paq == [[1, 0], [0, 5]] == obj["d"]


def test_indep_json_schema():
    obj = as_json("indep", "--matrix", "1 1; 1 -1")
    assert set(obj) == {"lambda", "Lambda", "rows", "cols", "g_exponents"}
    assert obj["g_exponents"] == [[2, 0], [0, 2]]


def test_search_witness():
    obj = as_json("search", "--matrix", "1 0 0; 0 1 0; 0 0 1", "--bound", "6")
    assert obj["witness"] == [[-1, 0, 0], [0, -1, 0], [0, 0, -1]]


def test_big_integers_become_strings():
    big = 10**30
    obj = as_json("snf", "--matrix", f"{big} 0; 0 {big + 1}")
    assert obj["divisors"] == [1, str(big * (big + 1))]
    assert obj["p"][0][0] in (-1, 0, 1)
    obj = as_json("rank", "--matrix", str(2**63 - 1))
    assert obj == {"rank": 1}


def test_matrix_file(tmp_path):
    path = tmp_path / "e.txt"
    path.write_text("[4\n 6]\n")
    assert last_line("ed-torus", "--matrix-file", str(path)) == "2"


def test_negative_leading_entry_is_a_value():
    assert last_line("snf", "--matrix", "-2 1; 3 1") == "(1,5)"


class TestSearchLimits:
    def test_bound_cap(self):
        code, _, err = run("search", "--matrix", "4;6", "--bound", "7")
        assert code == 2 and "--force" in err

    def test_cell_cap(self):
        code, _, err = run("search", "--matrix", "1 0 0 0 0; 0 1 0 0 0", "--bound", "1")
        assert code == 2 and "m*n = 10" in err

    def test_force_lifts_cap(self):
        assert last_line("search", "--matrix", "4;6", "--bound", "7", "--force") == "2"

    def test_exhaustive_reports_every_node(self):
        obj = as_json("search", "--matrix", "4;6", "--bound", "2", "--exhaustive")
        assert obj["nodes"] == 25 and obj["min_rank"] == 2


@pytest.mark.parametrize(
    "argv, code, fragment",
    [
        (["ed-torus", "--matrix", "1 2; 3"], 2, "line 1, column 6"),
        (["ed-torus", "--matrix", "1 x"], 2, "column 3"),
        (["ed-torus"], 2, "required"),
        (["ed-torus", "--matrix", "1", "--matrix-file", "f"], 2, "not both"),
        (["ed-torus", "--matrix-file", "/nonexistent/e.txt"], 2, "cannot read"),
        (["rank-mod", "--matrix", "1", "-M", "1"], 1, "modulus"),
        (["ed-projective", "--matrix", ""], 1, "error"),
        (["ed-forms", "-m", "0", "-d", "2"], 1, "m"),
        (["ed-forms", "-m", "two", "-d", "2"], 2, "invalid int"),
        (["ed-abelian", "0"], 1, "error"),
        (["val", "--vars", "x1,x2", "x1 + y"], 2, "unknown variable 'y'"),
        (["val", "--vars", "x1,x2", "x1 +"], 2, "column"),
        (["val", "--vars", "x1,x2", "x1 - x1"], 1, "zero"),
        (["val", "--vars", "x1,x2", "x1", "--den", "0"], 1, "error"),
        (["val", "--vars", "x1,x1", "x1"], 2, "x1"),
        (["val", "--vars", "x1,2y", "x1"], 2, "invalid variable name"),
        (["indep", "--matrix", "0 0"], 1, "error"),
        (["check-abelian", "--moduli", "2,4", "-p", "2", "x1"], 2, "polynomials"),
        (["check-abelian", "--moduli", "2,a", "-p", "2", "x1", "x2"], 2, "integers"),
        (["check-abelian", "--moduli", "2,4", "-p", "4", "x1", "x2"], 1, "prime"),
        (["nosuch"], 2, "invalid choice"),
        ([], 2, "required"),
    ],
)
def test_malformed_inputs(argv, code, fragment):
    got, out, err = run(*argv)
    assert got == code, err
    assert out == ""
    assert fragment.lower() in err.lower()
    assert "Traceback" not in err


def test_no_variables():
    assert last_line("initial", "--vars", "", "3") == "()"


def test_check_abelian_reports_violations():
    code, out, _ = run("check-abelian", "--moduli", "2,2", "-p", "2", "x1^2", "x2")
    assert code == 0 and out.rstrip().endswith("not equivariant")
    obj = as_json("check-abelian", "--moduli", "2,2", "-p", "2", "x1^2", "x2")
    assert obj == {"equivariant": False, "violations": [[0, [2, 0]]]}


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "edval", "ed-torus", "--matrix", "4;6"], capture_output=True, text=True
    )
    assert proc.returncode == 0
    assert proc.stdout.splitlines()[-1] == "2"
