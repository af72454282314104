"""Test behavior relations."""

from hypothesis import given, strategies as st
import pytest

from pyidpda.exceptions import RelationError
from pyidpda.relation import BehaviorRelation

relations3 = st.integers(min_value=0, max_value=511).map(lambda bits: BehaviorRelation(3, bits))


def test_constructors():
    """Test the named relations and their row-major masks."""
    assert BehaviorRelation.empty(2).to_bitstring() == "0000"
    assert BehaviorRelation.full(2).to_bitstring() == "1111"
    assert BehaviorRelation.diagonal(2).to_bitstring() == "1001"
    assert BehaviorRelation.from_pairs(2, [(0, 1)]).to_bitstring() == "0100"
    assert BehaviorRelation.from_bitstring("0010") == BehaviorRelation.from_pairs(2, [(1, 0)])
    assert len(list(BehaviorRelation.all_relations(2))) == 16


def test_rendering_and_pairs():
    diagonal = BehaviorRelation.diagonal(2)
    assert str(diagonal) == "{(0,0),(1,1)}"
    assert str(BehaviorRelation.empty(3)) == "{}"
    assert diagonal.pairs() == [(0, 0), (1, 1)]
    assert diagonal.excluded_pairs() == [(0, 1), (1, 0)]
    assert diagonal.cardinality == 2
    assert (1, 1) in diagonal
    assert (0, 1) not in diagonal
    assert not BehaviorRelation.empty(2)


def test_edits():
    full = BehaviorRelation.full(2)
    assert full.remove(0, 1).excluded_pairs() == [(0, 1)]
    assert BehaviorRelation.empty(2).add(1, 0).pairs() == [(1, 0)]
    assert full.successors(1) == [0, 1]
    assert BehaviorRelation.diagonal(2).is_subset(full)
    assert not full.is_subset(BehaviorRelation.diagonal(2))


def test_composition():
    """Test relational composition on small cases."""
    swap = BehaviorRelation.from_pairs(2, [(0, 1), (1, 0)])
    assert swap @ swap == BehaviorRelation.diagonal(2)
    first = BehaviorRelation.from_pairs(2, [(0, 1)])
    second = BehaviorRelation.from_pairs(2, [(1, 0)])
    assert first @ second == BehaviorRelation.from_pairs(2, [(0, 0)])
    assert second @ first == BehaviorRelation.from_pairs(2, [(1, 1)])
    assert first @ first == BehaviorRelation.empty(2)


def test_remove_deletes_exactly_one_pair():
    for relation in BehaviorRelation.all_relations(2):
        for i in range(2):
            for j in range(2):
                removed = relation.remove(i, j)
                assert not removed.member(i, j)
                assert set(removed.pairs()) == set(relation.pairs()) - {(i, j)}


def test_composition_laws_two_states():
    """Associativity and identity over every two-state relation."""
    relations = list(BehaviorRelation.all_relations(2))
    diagonal = BehaviorRelation.diagonal(2)
    for first in relations:
        assert diagonal @ first == first
        assert first @ diagonal == first
        for second in relations:
            first_second = first @ second
            for third in relations:
                assert first_second @ third == first @ (second @ third)


@pytest.mark.parametrize(
    "call",
    [
        lambda: BehaviorRelation(0),
        lambda: BehaviorRelation(2, 1 << 4),
        lambda: BehaviorRelation.from_bitstring("101"),
        lambda: BehaviorRelation.from_bitstring("1021"),
        lambda: BehaviorRelation.from_pairs(2, [(0, 2)]),
        lambda: BehaviorRelation.full(2).remove(2, 0),
        lambda: BehaviorRelation.full(2) @ BehaviorRelation.full(3),
    ],
)
def test_invalid_relations(call):
    with pytest.raises(RelationError):
        call()


@given(relations3, relations3, relations3)
def test_composition_is_associative(first, second, third):
    assert (first @ second) @ third == first @ (second @ third)


@given(relations3)
def test_diagonal_is_neutral(relation):
    diagonal = BehaviorRelation.diagonal(3)
    assert diagonal @ relation == relation
    assert relation @ diagonal == relation
    assert relation @ BehaviorRelation.empty(3) == BehaviorRelation.empty(3)


@given(relations3, relations3)
def test_composition_matches_pairs(first, second):
    """Test the mask composition against the set definition."""
    expected = {
        (i, k) for i, j in first.pairs() for j2, k in second.pairs() if j == j2
    }
    assert set((first @ second).pairs()) == expected


@given(relations3)
def test_bitstring_round_trip(relation):
    assert BehaviorRelation.from_bitstring(relation.to_bitstring()) == relation
