"""Test the command-line front end."""

import pytest

from pyidpda.cli import build_parser, main, verify_profile
from pyidpda.const import FORMAT_HEADER
from pyidpda.document import serialize_automaton
from pyidpda.exceptions import ExitCodes
from pyidpda.verify import SuiteProfile
from pyidpda.witness import build_A

from .const import A1_DOCUMENT, W_DIAGONAL_2


@pytest.fixture(name="a2_path")
def a2_path_fixture(tmp_path):
    """A_2 written to a document file."""
    path = tmp_path / "a2.idp"
    path.write_text(serialize_automaton(build_A(2)), encoding="utf-8")
    return str(path)


def test_witness(capsys):
    assert main(["witness", "A", "--n", "1"]) == ExitCodes.SUCCESS
    assert capsys.readouterr().out == A1_DOCUMENT


def test_witness_to_file(tmp_path):
    out = tmp_path / "b12.idp"
    assert main(["witness", "B12", "--out", str(out)]) == ExitCodes.SUCCESS
    assert out.read_text(encoding="utf-8").startswith(FORMAT_HEADER)


def test_witness_bad_parameters(capsys):
    assert main(["witness", "Bns", "--n", "1", "--s", "3"]) == ExitCodes.USAGE
    assert "pyidpda:" in capsys.readouterr().err
    assert main(["witness", "A", "--n", "0"]) == ExitCodes.USAGE


@pytest.mark.parametrize(
    "argv,expected",
    [
        (["gadget", "w", "--n", "2", "--relation", "1001"], W_DIAGONAL_2 + "\n"),
        (["gadget", "u", "--n", "2", "--i", "1"], "-<-\n"),
        (["gadget", "anchors", "--n", "2"], "-<-<--\n->->--\n"),
        (["gadget", "f", "--n", "2", "--s", "2", "--relations", "1111", "--indices", "1,0"], "<1#<0\n"),
        (["gadget", "y_explicit", "--n", "2", "--i", "1"], "<>--<>-\n"),
    ],
)
def test_gadget(capsys, argv, expected):
    assert main(argv) == ExitCodes.SUCCESS
    assert capsys.readouterr().out == expected


def test_gadget_missing_parameter(capsys):
    assert main(["gadget", "g", "--n", "2", "--i", "0"]) == ExitCodes.USAGE
    assert "--j --k --m" in capsys.readouterr().err


def test_gadget_invalid_parameters():
    assert main(["gadget", "u", "--n", "2", "--i", "-1"]) == ExitCodes.USAGE
    assert main(["gadget", "u", "--n", "2", "--i", "5"]) == ExitCodes.USAGE
    assert main(["gadget", "w", "--n", "2", "--relation", "101"]) == ExitCodes.USAGE
    assert main(["gadget", "w", "--n", "3", "--relation", "1001"]) == ExitCodes.USAGE
    assert main(["gadget", "f", "--relations", "1111", "--indices", "a,b"]) == ExitCodes.USAGE


@pytest.mark.parametrize(
    "text,verdict",
    [("#<>", "accept\n"), ("<>", "reject\n"), ("", "accept\n")],
)
def test_run(capsys, a2_path, text, verdict):
    assert main(["run", "--automaton", a2_path, "--input", text]) == ExitCodes.SUCCESS
    assert capsys.readouterr().out == verdict


def test_run_with_trace(capsys, a2_path):
    assert main(["run", "--automaton", a2_path, "--input", "#<>", "--trace"]) == ExitCodes.SUCCESS
    assert capsys.readouterr().out == "0 # 0,1 0\n1 < 0,1 1\n2 > 1 0\naccept\n"


def test_run_errors(a2_path, tmp_path):
    assert main(["run", "--automaton", a2_path, "--input", "x"]) == 65
    assert main(["run", "--automaton", a2_path, "--input", "<"]) == 65
    assert main(["run", "--automaton", str(tmp_path / "missing"), "--input", ""]) == ExitCodes.USAGE
    broken = tmp_path / "broken.idp"
    broken.write_text("idpda-format 2\n", encoding="utf-8")
    assert main(["run", "--automaton", str(broken), "--input", ""]) == 65


def test_determinize(capsys, a2_path):
    assert main(["determinize", "--automaton", a2_path]) == ExitCodes.SUCCESS
    out = capsys.readouterr().out
    assert out.startswith(FORMAT_HEADER)
    assert "METRIC reachable_states 16\n" in out
    assert "METRIC reachable_pushed 15\n" in out


def test_equiv(capsys, a2_path, tmp_path):
    assert main(["equiv", "--automaton", a2_path, "--automaton", a2_path]) == ExitCodes.SUCCESS
    assert capsys.readouterr().out == "equivalent\n"

    other = tmp_path / "a2_first_only.idp"
    other.write_text(serialize_automaton(build_A(2).with_accepting([0])), encoding="utf-8")
    assert main(["equiv", "--automaton", a2_path, "--automaton", str(other)]) == ExitCodes.CHECK_FAILED
    assert capsys.readouterr().out.startswith("counterexample ")

    assert main(["equiv", "--automaton", a2_path]) == ExitCodes.USAGE


def test_verify(capsys):
    argv = ["verify", "--profile", "quick", "--n", "1", "--s", "2", "--m", "1", "--max-len", "4"]
    assert main(argv) == ExitCodes.SUCCESS
    out = capsys.readouterr().out
    assert out.startswith(FORMAT_HEADER + "\n")
    assert out.endswith("ALL PASS\n")
    assert "CHECK states.A1.reachable PASS\n" in out


def test_verify_rejects_bad_profile(capsys):
    assert main(["verify", "--profile", "quick", "--n", "5"]) == ExitCodes.USAGE
    assert main(["verify", "--profile", "quick", "--s", "17"]) == ExitCodes.USAGE


def test_usage_errors():
    with pytest.raises(SystemExit):
        main([])
    with pytest.raises(SystemExit):
        main(["witness", "C"])


def test_verify_max_len_bounds_every_equivalence_check():
    args = build_parser().parse_args(["verify", "--profile", "desk", "--max-len", "5"])
    profile = verify_profile(args)
    assert profile.max_len == profile.max_len_wide == 5
    untouched = verify_profile(build_parser().parse_args(["verify", "--profile", "desk"]))
    assert untouched.max_len_wide == SuiteProfile.named("desk").max_len_wide
