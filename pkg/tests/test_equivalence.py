"""Test bounded and exact language equivalence."""

import pytest

from pyidpda.alphabet import InputString
from pyidpda.check import CheckStatus
from pyidpda.determinize import determinize
from pyidpda.equivalence import (
    ProductAutomaton,
    bounded_equivalence,
    product_inequivalence,
)
from pyidpda.exceptions import AlphabetMismatchError, ExitCodes, RelationError
from pyidpda.relation import BehaviorRelation
from pyidpda.simulation import didpda_accepts
from pyidpda.verify import flip_accepting


@pytest.fixture(name="flipped")
def flipped_fixture(det_a2):
    """det(A_2) with the acceptance of the full-relation state inverted."""
    return flip_accepting(det_a2, BehaviorRelation.full(2))


def test_bounded_equivalence_passes(a2, det_a2, b12):
    result = bounded_equivalence(a2, det_a2.automaton, 8, "equiv.A2")
    assert result.status is CheckStatus.PASS
    assert result.id == "equiv.A2"
    assert bounded_equivalence(b12, determinize(b12).automaton, 8).passed


def test_bounded_equivalence_b2(b2, det_b2):
    assert bounded_equivalence(b2, det_b2.automaton, 8).passed


def test_bounded_equivalence_reports_mismatch(a2, flipped):
    result = bounded_equivalence(a2, flipped, 6)
    assert result.status is CheckStatus.FAIL
    assert result.expected in ("accept", "reject")
    assert "@" in result.observed


def test_bounded_equivalence_budget(a2, det_a2):
    result = bounded_equivalence(a2, det_a2.automaton, 6, cap=1)
    assert result.status is CheckStatus.BUDGET
    assert result.limit == 1


def test_alphabet_mismatch(a2, det_b2):
    with pytest.raises(AlphabetMismatchError):
        bounded_equivalence(a2, det_b2.automaton, 4)


def test_product_self_equivalence(det_a2):
    assert product_inequivalence(det_a2.automaton, det_a2.automaton) is None


def test_product_counterexample(det_a2, flipped):
    """The shortest counterexample is `#`, and it replays to different verdicts."""
    d = det_a2.automaton
    counterexample = product_inequivalence(d, flipped)
    assert counterexample == InputString.of("#")
    assert didpda_accepts(d, counterexample) != didpda_accepts(flipped, counterexample)


def test_product_restricted_b2(det_a2, b2):
    restricted = determinize(b2.restrict([">>"])).automaton
    assert product_inequivalence(restricted, det_a2.automaton) is None


def test_product_mismatched_alphabets(det_a2, det_b2):
    with pytest.raises(AlphabetMismatchError):
        product_inequivalence(det_b2.automaton, det_a2.automaton)


def test_product_steps(det_a2):
    d = det_a2.automaton
    product = ProductAutomaton(d, d)
    q = product.initial_state
    target, gamma = product.step_open("<", q)
    assert gamma == "1001<|1001<"
    assert product.step_close(">", target, gamma) == (d.step_close(">", 0, "1001<"),) * 2
    assert not product.disagrees(q)


def test_flip_needs_a_labelled_state(det_a2):
    with pytest.raises(RelationError) as err:
        flip_accepting(det_a2, BehaviorRelation(3, 1))
    assert ExitCodes.get_exit_code(err.value) == ExitCodes.USAGE
