"""Test automaton documents, tokenization and reports."""

from dataclasses import replace

import pytest

from pyidpda.alphabet import InputString
from pyidpda.check import CheckResult, CheckStatus
from pyidpda.const import FORMAT_HEADER
from pyidpda.document import (
    parse_automaton,
    parse_didpda,
    render_metrics,
    render_report,
    serialize_automaton,
    tokenize,
)
from pyidpda.exceptions import (
    AutomatonValidationError,
    DocumentSyntaxError,
    LexicalError,
)
from pyidpda.witness import build_A, build_B, build_B12, build_Bns

from .const import A1_DOCUMENT


def test_serialize_a1():
    assert serialize_automaton(build_A(1)) == A1_DOCUMENT


SMALL_WITNESSES = (
    [(f"A{n}", build_A(n)) for n in (1, 2, 3)]
    + [(f"B{n}", build_B(n)) for n in (1, 2, 3)]
    + [(f"B{n}s{s}", build_Bns(n, s)) for n in (1, 2, 3) for s in (1, 2, 3, 4) if s <= 2 ** (n * n)]
    + [("B12", build_B12())]
)


@pytest.mark.parametrize(
    "automaton",
    [automaton for _, automaton in SMALL_WITNESSES],
    ids=[name for name, _ in SMALL_WITNESSES],
)
def test_document_round_trip(automaton):
    text = serialize_automaton(automaton)
    parsed = parse_automaton(text)
    assert parsed == automaton
    assert serialize_automaton(parsed) == text


def test_deterministic_round_trip(det_a2):
    text = serialize_automaton(det_a2.automaton)
    assert text.startswith(FORMAT_HEADER + "\n")
    assert parse_didpda(text) == det_a2.automaton


def test_comments_and_blank_lines():
    text = A1_DOCUMENT.replace("states: 1\n", "#! one state\n\nstates: 1\n")
    assert parse_automaton(text) == build_A(1)


@pytest.mark.parametrize(
    "text,line",
    [
        ("bogus\n", 1),
        (A1_DOCUMENT.replace("states: 1\n", "states: 1\nstates: 1\n"), 6),
        (A1_DOCUMENT + "states: 1\n", 13),
        (A1_DOCUMENT.replace("states: 1", "states: one"), 5),
        (A1_DOCUMENT.replace("t+ < 0 -> (0,0)", "t+ < 0 -> 0,0"), 11),
        (A1_DOCUMENT.replace("t0 - 0 -> 0", "t0 - -> 0"), 9),
    ],
)
def test_syntax_errors(text, line):
    with pytest.raises(DocumentSyntaxError) as err:
        parse_automaton(text)
    assert err.value.line == line


def test_missing_lines():
    with pytest.raises(DocumentSyntaxError):
        parse_automaton("")
    with pytest.raises(DocumentSyntaxError):
        parse_automaton(A1_DOCUMENT.replace("stack: 0 1\n", ""))


def test_invalid_automaton_document():
    with pytest.raises(AutomatonValidationError):
        parse_automaton(A1_DOCUMENT.replace("t0 - 0 -> 0", "t0 - 0 -> 4"))
    with pytest.raises(AutomatonValidationError):
        parse_didpda(A1_DOCUMENT)


def test_arrow_in_stack_symbol_is_rejected():
    """A stack symbol containing the transition arrow cannot be written or read."""
    a = build_A(1)
    renamed = replace(
        a,
        stack_symbols=("0", "1->2"),
        trans_open={("<", 0): frozenset({(0, "1->2")})},
        trans_close={(">", 0, "1->2"): frozenset({0})},
    )
    with pytest.raises(AutomatonValidationError):
        serialize_automaton(renamed)
    with pytest.raises(AutomatonValidationError):
        parse_automaton(A1_DOCUMENT.replace("stack: 0 1", "stack: 0 1->2"))


def test_tokenize_longest_match():
    alphabet = build_B(2).alphabet
    assert tokenize("<#>>", alphabet) == InputString.of("<", "#", ">>")
    assert tokenize(" < > ", alphabet) == InputString.of("<", ">")
    assert tokenize("<<>>", build_B12().alphabet) == InputString.of("<<", ">>")
    assert tokenize("<0<3>>>", build_Bns(2, 4).alphabet) == InputString.of("<0", "<3", ">>>")


def test_tokenize_error():
    with pytest.raises(LexicalError) as err:
        tokenize("<x>", build_A(2).alphabet)
    assert err.value.offset == 1


def test_render_report():
    """Test the report lines and the summary line."""
    passed = CheckResult("a", CheckStatus.PASS, "1", "1")
    failed = CheckResult("b", CheckStatus.FAIL, "1", "2 3")
    budget = CheckResult.budget("c", 10)
    assert render_report([passed]) == f"{FORMAT_HEADER}\nCHECK a PASS\nALL PASS\n"
    assert render_report([passed, failed, budget]) == (
        f"{FORMAT_HEADER}\n"
        "CHECK a PASS\n"
        "CHECK b FAIL expected=1 got=23\n"
        "CHECK c BUDGET limit=10\n"
        "FAIL 1\n"
    )
    assert render_report([budget]).endswith("BUDGET 1\n")


def test_render_metrics():
    metrics = {"states": 16, "reachable_pushed": 15}
    assert render_metrics(metrics) == f"{FORMAT_HEADER}\nMETRIC states 16\nMETRIC reachable_pushed 15\n"
    assert render_metrics(metrics, header=False).startswith("METRIC states 16\n")


def test_failed_result_needs_values():
    with pytest.raises(ValueError):
        CheckResult("x", CheckStatus.FAIL)
    assert CheckResult.compare("x", 2, 2).passed
    assert CheckResult.compare("x", 2, 3).status is CheckStatus.FAIL
