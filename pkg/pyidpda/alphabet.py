"""Input alphabets and input strings."""

from dataclasses import dataclass
from enum import Enum
from types import MappingProxyType
from typing import Dict, Iterable, Iterator, List, Mapping, Tuple

from .exceptions import AlphabetError, IllNestedInputError, UnknownTokenError


class SymbolClass(Enum):
    """Stack action dictated by an input symbol."""

    NEUTRAL = "neutral"
    OPEN = "open"
    CLOSE = "close"

    @classmethod
    def from_value(cls, value: str) -> 'SymbolClass':
        return cls(value)

    @property
    def height_change(self) -> int:
        if self is SymbolClass.OPEN:
            return 1
        if self is SymbolClass.CLOSE:
            return -1
        return 0


@dataclass(frozen=True, eq=False)
class Alphabet:
    """A finite token set split into neutral, open and close classes."""

    symbols: Tuple[str, ...]
    class_of: Mapping[str, SymbolClass]

    def __post_init__(self) -> None:
        if len(set(self.symbols)) != len(self.symbols):
            raise AlphabetError(f"duplicate tokens in {self.symbols}")
        for token in self.symbols:
            if not token or any(ch.isspace() for ch in token):
                raise AlphabetError(f"invalid token name {token!r}")
            if token not in self.class_of:
                raise AlphabetError(f"token {token!r} has no class")
        if set(self.class_of) != set(self.symbols):
            raise AlphabetError("class map mentions undeclared tokens")
        object.__setattr__(self, "class_of", MappingProxyType(dict(self.class_of)))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Alphabet):
            return NotImplemented
        return self.symbols == other.symbols and dict(self.class_of) == dict(other.class_of)

    def __hash__(self) -> int:
        return hash((self.symbols, tuple(self.class_of[t] for t in self.symbols)))

    @classmethod
    def of(
        cls,
        neutral: Iterable[str] = (),
        open: Iterable[str] = (),
        close: Iterable[str] = (),
    ) -> 'Alphabet':
        """
        Build an alphabet from its three classes.

        Args:
            neutral (Iterable[str]): Tokens that leave the stack alone.
            open (Iterable[str]): Left brackets, which push.
            close (Iterable[str]): Right brackets, which pop.
        Returns:
            Alphabet: Symbols ordered neutral, open, close.
        Raises:
            AlphabetError: If a token is repeated or malformed.
        """
        classes: List[Tuple[str, SymbolClass]] = []
        for tokens, kind in (
            (neutral, SymbolClass.NEUTRAL),
            (open, SymbolClass.OPEN),
            (close, SymbolClass.CLOSE),
        ):
            classes.extend((token, kind) for token in tokens)
        symbols = tuple(token for token, _ in classes)
        if len(set(symbols)) != len(symbols):
            raise AlphabetError(f"duplicate tokens in {symbols}")
        return cls(symbols, dict(classes))

    def tokens(self, kind: SymbolClass) -> Tuple[str, ...]:
        return tuple(t for t in self.symbols if self.class_of[t] is kind)

    @property
    def neutral(self) -> Tuple[str, ...]:
        return self.tokens(SymbolClass.NEUTRAL)

    @property
    def open(self) -> Tuple[str, ...]:
        return self.tokens(SymbolClass.OPEN)

    @property
    def close(self) -> Tuple[str, ...]:
        return self.tokens(SymbolClass.CLOSE)

    def __contains__(self, token: object) -> bool:
        return token in self.class_of

    def __len__(self) -> int:
        return len(self.symbols)

    def classify(self, token: str) -> SymbolClass:
        """
        Get the class of a token.

        Raises:
            UnknownTokenError: If the token is not declared.
        """
        try:
            return self.class_of[token]
        except KeyError:
            raise UnknownTokenError(f"token {token!r} is not in the alphabet") from None

    def check(self, w: 'InputString') -> None:
        """Raise UnknownTokenError for the first undeclared token of w."""
        for position, token in enumerate(w):
            if token not in self.class_of:
                raise UnknownTokenError(
                    f"token {token!r} at position {position} is not in the alphabet"
                )

    def restrict(self, excluded: Iterable[str]) -> 'Alphabet':
        """Return the alphabet without the given tokens."""
        dropped = set(excluded)
        return Alphabet.of(
            neutral=[t for t in self.neutral if t not in dropped],
            open=[t for t in self.open if t not in dropped],
            close=[t for t in self.close if t not in dropped],
        )


@dataclass(frozen=True)
class InputString:
    """A sequence of alphabet tokens."""

    tokens: Tuple[str, ...] = ()

    @classmethod
    def of(cls, *tokens: str) -> 'InputString':
        return cls(tuple(tokens))

    def __iter__(self) -> Iterator[str]:
        return iter(self.tokens)

    def __len__(self) -> int:
        return len(self.tokens)

    def __getitem__(self, index: int) -> str:
        return self.tokens[index]

    def __add__(self, other: object) -> 'InputString':
        if isinstance(other, InputString):
            return InputString(self.tokens + other.tokens)
        return NotImplemented

    def __mul__(self, times: int) -> 'InputString':
        return InputString(self.tokens * times)

    def __str__(self) -> str:
        return "".join(self.tokens)

    def count(self, alphabet: Alphabet, kind: SymbolClass) -> int:
        return sum(1 for t in self.tokens if alphabet.classify(t) is kind)


def prefix_heights(w: InputString, alphabet: Alphabet) -> List[int]:
    """
    Get the stack height after every prefix of w.

    Args:
        w (InputString): The input.
        alphabet (Alphabet): Alphabet the tokens are classified against.
    Returns:
        List[int]: len(w) + 1 heights, starting with 0.
    Raises:
        UnknownTokenError: If w uses an undeclared token.
    """
    heights = [0]
    for token in w:
        heights.append(heights[-1] + alphabet.classify(token).height_change)
    return heights


def is_well_nested(w: InputString, alphabet: Alphabet) -> bool:
    """
    Check that w has as many opens as closes and no prefix closes too much.

    Only symbol classes matter; bracket names need not match.

    Raises:
        UnknownTokenError: If w uses an undeclared token.
    """
    heights = prefix_heights(w, alphabet)
    return heights[-1] == 0 and min(heights) >= 0


def is_nested_prefix(w: InputString, alphabet: Alphabet) -> bool:
    """Check that no prefix of w has more closes than opens."""
    return min(prefix_heights(w, alphabet)) >= 0


def require_well_nested(w: InputString, alphabet: Alphabet) -> None:
    if not is_well_nested(w, alphabet):
        raise IllNestedInputError(f"input {str(w)!r} is not well-nested")


def require_nested_prefix(w: InputString, alphabet: Alphabet) -> None:
    if not is_nested_prefix(w, alphabet):
        raise IllNestedInputError(f"input {str(w)!r} closes an unopened bracket")


def match_brackets(w: InputString, alphabet: Alphabet) -> Dict[int, int]:
    """
    Pair every matched open bracket of w with its close bracket.

    Args:
        w (InputString): A well-nested string or a prefix of one.
        alphabet (Alphabet): Alphabet of w.
    Returns:
        Dict[int, int]: Open position to close position; unmatched opens are absent.
    Raises:
        IllNestedInputError: If some prefix of w closes more than it opens.
    """
    pending: List[int] = []
    matches: Dict[int, int] = {}
    for position, token in enumerate(w):
        kind = alphabet.classify(token)
        if kind is SymbolClass.OPEN:
            pending.append(position)
        elif kind is SymbolClass.CLOSE:
            if not pending:
                raise IllNestedInputError(
                    f"close bracket at position {position} has no open bracket"
                )
            matches[pending.pop()] = position
    return matches


def well_nested_strings(alphabet: Alphabet, max_len: int) -> Iterator[InputString]:
    """
    Enumerate every well-nested string of length at most max_len.

    Strings follow the grammar W -> e | cW | <a W b> W over all token choices,
    the close token being chosen together with its open token, so each string
    is produced exactly once.

    Args:
        alphabet (Alphabet): Tokens to draw from.
        max_len (int): Upper bound on the string length.
    Returns:
        Iterator[InputString]: Strings in depth-first order, shortest prefix first.
    """
    neutral, opens, closes = alphabet.neutral, alphabet.open, alphabet.close
    tokens: List[str] = []
    pending: List[str] = []

    def extend(budget: int) -> Iterator[InputString]:
        if not pending:
            yield InputString(tuple(tokens))
        if pending and budget >= len(pending):
            closing = pending.pop()
            tokens.append(closing)
            yield from extend(budget - 1)
            tokens.pop()
            pending.append(closing)
        if budget - 1 >= len(pending):
            for c in neutral:
                tokens.append(c)
                yield from extend(budget - 1)
                tokens.pop()
        if budget - 2 >= len(pending):
            for a in opens:
                for b in closes:
                    tokens.append(a)
                    pending.append(b)
                    yield from extend(budget - 1)
                    pending.pop()
                    tokens.pop()

    yield from extend(max_len)
