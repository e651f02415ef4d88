import io
import json

import pytest

from qchar.cli import main


def run(*argv):
    out = io.StringIO()
    code = main(list(argv), out)
    return code, out.getvalue()


def test_gw_text_and_compare():
    code, text = run("gw", "<-2,-6>", "--compare=-3 + <3> + 2h")
    assert code == 0
    assert "rank      = 2" in text and "signature = -2" in text
    assert "gw_equal   = true" in text and "witt_equal = true" in text


def test_gw_json_fp():
    code, text = run("gw", "<2, 3>", "--backend", "fp:7", "--format", "json")
    data = json.loads(text)
    assert code == 0 and data["rank"] == 2 and "witt_fp" in data


def test_borel_channels():
    code, text = run("borel", "--bundle", "U1*U2*U3", "--channel", "witt", "--ambient", "HP(5)^3")
    assert code == 0 and "b3 = -8*u1*u2*u3" in text
    code, text = run("borel", "--bundle", "U1*U2*U3", "--channel", "chow", "--max-degree", "1")
    assert text.strip() == "b1 = 4*u1 + 4*u2 + 4*u3"
    code, text = run("borel", "--bundle", "U1*U2*U3", "--format", "json")
    assert json.loads(text)["precision"] == 4


def test_chi_omega_psi():
    assert run("chi", "--bundle", "U1", "--n", "2") == (0, "u1^2\n")
    assert run("omega", "--n", "7") == (0, "288<-1> + 36576h\n")
    assert run("omega", "--n", "2", "--channel", "chow") == (0, "1680\n")
    code, text = run("psi", "--n", "9")
    assert "psi_22 = 440<-1> + 87560h" in text
    code, text = run("psi", "--n", "1", "--format", "latex")
    assert r"\langle -1\rangle" in text


def test_bo():
    code, text = run("bo", "--bundle", "U1", "--max-degree", "6")
    assert code == 0 and "B6 = (rank 1/360; sig P0: -1/24)*u1^3" in text
    code, text = run("bo", "--bundle", "U1*U2*U3", "--ambient", "HP(3)^3", "--format", "json")
    assert json.loads(text)["square_ok"] is True


def test_verify_suite():
    code, text = run("verify", "gw-identities")
    assert code == 0 and text.strip().endswith("8/8 checks passed")
    code, text = run("verify", "borelclasses", "--format", "json")
    assert json.loads(text)["ok"] is True


@pytest.mark.parametrize(
    "argv",
    [
        ("gw", "<1>", "--backend", "fp:3"),
        ("gw", "U1*"),
        ("borel", "--bundle", "U3", "--ambient", "HP(2)"),
        ("borel", "--bundle", "Sym3(U1)*U2"),
        ("borel", "--bundle", "U1*U2", "--channel", "gw"),
        ("borel", "--bundle", "U1", "--ambient", "HP(2)", "--max-degree", "5"),
        ("psi", "--n", "2"),
        ("chi", "--bundle", "U1", "--n", "0"),
    ],
)
def test_errors_exit_2(argv, capsys):
    code, _ = run(*argv)
    assert code == 2
    assert capsys.readouterr().err.startswith("qchar: error:")
