"""Test alphabets and well-nested strings."""

import pytest

from pyidpda.alphabet import (
    Alphabet,
    InputString,
    SymbolClass,
    is_nested_prefix,
    is_well_nested,
    match_brackets,
    prefix_heights,
    require_well_nested,
    well_nested_strings,
)
from pyidpda.exceptions import AlphabetError, IllNestedInputError, UnknownTokenError
from pyidpda.witness import build_A, build_B

ALPHABET = Alphabet.of(neutral=["c"], open=["<"], close=[">"])


def test_alphabet_classes():
    alphabet = Alphabet.of(neutral=["-", "#"], open=["<"], close=[">", ">>"])
    assert alphabet.symbols == ("-", "#", "<", ">", ">>")
    assert alphabet.neutral == ("-", "#")
    assert alphabet.open == ("<",)
    assert alphabet.close == (">", ">>")
    assert alphabet.classify(">>") is SymbolClass.CLOSE
    assert SymbolClass.from_value("open") is SymbolClass.OPEN
    assert ">>" in alphabet
    assert len(alphabet) == 5


@pytest.mark.parametrize(
    "classes",
    [
        {"neutral": ["a"], "open": ["a"]},
        {"neutral": [""]},
        {"open": ["< <"]},
    ],
)
def test_invalid_alphabets(classes):
    with pytest.raises(AlphabetError):
        Alphabet.of(**classes)


def test_unknown_token():
    with pytest.raises(UnknownTokenError):
        ALPHABET.classify("x")
    with pytest.raises(UnknownTokenError):
        ALPHABET.check(InputString.of("c", "x"))


def test_restricted_alphabet_equality():
    """Dropping `>>` from B_2 leaves exactly the alphabet of A_2."""
    restricted = build_B(2).restrict([">>"])
    assert restricted.alphabet == build_A(2).alphabet
    assert hash(restricted.alphabet) == hash(build_A(2).alphabet)
    assert build_B(2).alphabet != build_A(2).alphabet
    assert all(key[0] != ">>" for key in restricted.trans_close)


def test_input_string():
    w = InputString.of("<", "c", ">")
    assert str(w) == "<c>"
    assert len(w) == 3
    assert w[1] == "c"
    assert str(w + InputString.of("c")) == "<c>c"
    assert str(InputString.of("c") * 3) == "ccc"
    assert w.count(ALPHABET, SymbolClass.OPEN) == 1


@pytest.mark.parametrize(
    "tokens,nested,prefix",
    [
        ((), True, True),
        (("<", ">"), True, True),
        (("<", "c", "<", ">", ">"), True, True),
        (("<",), False, True),
        ((">", "<"), False, False),
        (("<", ">", ">"), False, False),
    ],
)
def test_nesting(tokens, nested, prefix):
    w = InputString(tokens)
    assert is_well_nested(w, ALPHABET) is nested
    assert is_nested_prefix(w, ALPHABET) is prefix


def test_prefix_heights_and_matching():
    w = InputString.of("<", "c", "<", ">", ">", "<")
    assert prefix_heights(w, ALPHABET) == [0, 1, 1, 2, 1, 0, 1]
    assert match_brackets(w, ALPHABET) == {0: 4, 2: 3}
    with pytest.raises(IllNestedInputError):
        match_brackets(InputString.of(">"), ALPHABET)
    with pytest.raises(IllNestedInputError):
        require_well_nested(InputString.of("<"), ALPHABET)


def test_enumeration_counts():
    """One neutral symbol and one bracket pair give the Motzkin numbers 1, 1, 2, 4, 9."""
    strings = list(well_nested_strings(ALPHABET, 4))
    assert len(strings) == 17
    assert len(set(strings)) == 17
    assert all(is_well_nested(w, ALPHABET) for w in strings)
    assert max(len(w) for w in strings) == 4


def test_enumeration_with_typed_brackets():
    """Two bracket pairs with free close choice: 1 + 4 + 32 strings up to length 4."""
    alphabet = Alphabet.of(open=["<", "<<"], close=[">", ">>"])
    strings = list(well_nested_strings(alphabet, 4))
    assert len(strings) == 37
    assert len(set(strings)) == 37
    assert InputString.of("<<", ">") in strings
