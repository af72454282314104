"""Test frontier simulation, behavior relations and deterministic runs."""

from hypothesis import given, settings, strategies as st
import pytest

from pyidpda.alphabet import InputString, well_nested_strings
from pyidpda.document import render_trace
from pyidpda.exceptions import IllNestedInputError, ResourceLimitError
from pyidpda.relation import BehaviorRelation
from pyidpda.simulation import (
    RelationCalculus,
    behavior_relation,
    didpda_accepts,
    didpda_run,
    nidpda_accepts,
    relation_accepts,
    run_frontier,
    trace,
)
from pyidpda.witness import build_A

A2 = build_A(2)
A2_SHORT = list(well_nested_strings(A2.alphabet, 4))


@pytest.mark.parametrize(
    "tokens,accepted",
    [
        ((), True),
        (("#", "<", ">"), True),
        (("<", ">"), False),
        (("-", "<", ">"), True),
        (("-", "-", "<", ">"), False),
        (("#", "<", "-", ">"), True),
    ],
)
def test_a2_acceptance(a2, tokens, accepted):
    w = InputString(tokens)
    assert nidpda_accepts(a2, w) is accepted
    assert relation_accepts(a2, w) is accepted


def test_behavior_relations(a2):
    assert behavior_relation(a2, InputString.of("#")) == BehaviorRelation.full(2)
    assert behavior_relation(a2, InputString.of("-")) == BehaviorRelation.from_pairs(2, [(0, 1), (1, 0)])
    assert behavior_relation(a2, InputString.of("<", ">")) == BehaviorRelation.from_pairs(2, [(1, 1)])
    assert behavior_relation(a2, InputString()) == BehaviorRelation.diagonal(2)


def test_ill_nested_input(a2):
    with pytest.raises(IllNestedInputError):
        nidpda_accepts(a2, InputString.of("<"))
    with pytest.raises(IllNestedInputError):
        behavior_relation(a2, InputString.of(">", "<"))
    with pytest.raises(IllNestedInputError):
        RelationCalculus(a2).run(InputString.of("<", "<", ">"))


def test_frontier_cap(a2):
    with pytest.raises(ResourceLimitError) as err:
        nidpda_accepts(a2, InputString.of("#"), cap=1)
    assert err.value.limit == 1


def test_frontier_height(b2):
    """Lookahead keeps only pushes the matching close bracket can pop."""
    final = run_frontier(b2, InputString.of("<", ">>"), [0, 1])
    assert final.height == 0
    assert final.states == frozenset({0, 1})
    assert run_frontier(b2, InputString.of("<"), [0]).height == 1


def test_simulations_agree(a2, det_a2, a2_strings):
    """Frontier, relation calculus and determinization agree on every short string."""
    calculus = RelationCalculus(a2)
    for w in a2_strings:
        expected = nidpda_accepts(a2, w)
        assert calculus.accepts(calculus.run(w)) is expected, str(w)
        assert didpda_accepts(det_a2.automaton, w) is expected, str(w)


def test_relations_agree_on_b2(b2, det_b2):
    calculus = RelationCalculus(b2)
    for w in well_nested_strings(b2.alphabet, 5):
        assert calculus.run(w) == behavior_relation(b2, w), str(w)
        assert didpda_accepts(det_b2.automaton, w) is calculus.accepts(calculus.run(w)), str(w)


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(A2_SHORT), st.sampled_from(A2_SHORT))
def test_relations_compose(u, v):
    """The relation of a concatenation is the composition of the relations."""
    assert behavior_relation(A2, u + v) == behavior_relation(A2, u) @ behavior_relation(A2, v)


def test_trace(a2):
    steps = list(trace(a2, InputString.of("#", "<", ">")))
    assert [(s.position, s.token, s.states, s.height) for s in steps] == [
        (0, "#", frozenset({0, 1}), 0),
        (1, "<", frozenset({0, 1}), 1),
        (2, ">", frozenset({1}), 0),
    ]
    assert render_trace(steps) == "0 # 0,1 0\n1 < 0,1 1\n2 > 1 0\n"


def test_trace_limit(a2):
    assert len(list(trace(a2, InputString.of("-") * 5, limit=3))) == 3


def test_didpda_run_on_prefix(det_a2):
    state, stack = didpda_run(det_a2.automaton, InputString.of("#", "<"))
    assert stack == ("1111<",)
    assert det_a2.state_label[state] == BehaviorRelation.diagonal(2)
    with pytest.raises(IllNestedInputError):
        didpda_run(det_a2.automaton, InputString.of(">"))
    with pytest.raises(IllNestedInputError):
        didpda_accepts(det_a2.automaton, InputString.of("<"))
