import json

import pytest

from qeuclid.cli import format_table, main, parse_numeric


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_nf(capsys):
    code, out, _ = run(capsys, "nf", "x+ * x-")
    assert code == 0
    assert out.strip() == "(s - s^-1)*x0^2 + x-*x+"


def test_nf_xi_basis(capsys):
    code, out, _ = run(capsys, "nf", "xi0", "--basis", "xi")
    assert out.strip() == "xi0"


@pytest.mark.parametrize("left, right, code, word", [
    ("r^2", "(s+s^-1)*x-*x+ + q*x0^2", 0, "equal"),
    ("x0*x-", "x-*x0", 1, "not equal"),
])
def test_eq(capsys, left, right, code, word):
    got, out, _ = run(capsys, "eq", left, right)
    assert got == code
    assert out.strip() == word


def test_d(capsys):
    code, out, _ = run(capsys, "d", "x-", "--basis", "xi")
    assert code == 0 and out.strip() == "xi-"


def test_parse_error_exit_2(capsys):
    code, _, err = run(capsys, "nf", "x0 ^")
    assert code == 2
    assert "column 5" in err


def test_type_error_exit_2(capsys):
    code, _, err = run(capsys, "nf", "xi0 + x0")
    assert code == 2
    assert "cannot add" in err


def test_usage_error_exit_2(capsys):
    with pytest.raises(SystemExit) as info:
        main(["matrix", "nonsense"])
    assert info.value.code == 2


def test_matrix_json(capsys):
    code, out, _ = run(capsys, "matrix", "metric", "--json")
    data = json.loads(out)
    assert data["matrix"] == [["0", "0", "s^-1"], ["0", "1", "0"], ["s", "0", "0"]]


def test_matrix_text(capsys):
    code, out, _ = run(capsys, "matrix", "rhat")
    lines = out.splitlines()
    assert len(lines) == 10
    assert lines[1].split()[:2] == ["--", "s^2"]


def test_frame(capsys):
    code, out, _ = run(capsys, "frame", "--json")
    data = json.loads(out)
    assert set(data) == {"theta", "e", "lambda", "c"}
    assert data["theta"][0][0] == "x0^-1"
    code, out, _ = run(capsys, "frame")
    assert "lambda_0 = -s^2/(s^2-1)*L*r*x0^-1" in out


def test_verify_json(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "rmatrix", "--json")
    data = json.loads(out)
    assert code == 0
    assert data["suite"] == "rmatrix" and data["summary"]["failed"] == 0


def test_verify_numeric_pole_exit_1(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "rmatrix", "--numeric", "s=1")
    assert code == 1
    assert "pole" in out


def test_verify_bad_numeric(capsys):
    code, _, err = run(capsys, "verify", "--numeric", "s=abc")
    assert code == 2


@pytest.mark.parametrize("text, value", [("s=3/2", (3, 2)), ("2", (2, 1)), ("s = 5/3", (5, 3))])
def test_parse_numeric(text, value):
    f = parse_numeric(text)
    assert (f.numerator, f.denominator) == value


def test_format_table():
    assert format_table([["1", "22"], ["333", "4"]]) == "  1  22\n333   4"
