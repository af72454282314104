"""Input strings with engineered behavior on the witness automata."""

from dataclasses import dataclass
from typing import Sequence, Tuple

from .alphabet import InputString
from .const import (
    TOKEN_CLOSE,
    TOKEN_CLOSE_DOUBLE,
    TOKEN_CLOSE_TRIPLE,
    TOKEN_DECREMENT,
    TOKEN_GUESS,
    TOKEN_OPEN,
)
from .exceptions import GadgetParameterError
from .relation import BehaviorRelation
from .witness import bit_width, indexed_open


@dataclass(frozen=True)
class GadgetString:
    """Token sequence together with the construction that produced it."""

    tokens: InputString
    provenance: str

    def __str__(self) -> str:
        return str(self.tokens)

    def __len__(self) -> int:
        return len(self.tokens)

    def __add__(self, other: object) -> 'GadgetString':
        if isinstance(other, GadgetString):
            return concat(self, other)
        return NotImplemented


def _gadget(tokens: Sequence[str], provenance: str) -> GadgetString:
    return GadgetString(InputString(tuple(tokens)), provenance)


def concat(*parts: GadgetString) -> GadgetString:
    return GadgetString(
        InputString(tuple(token for part in parts for token in part.tokens)),
        "+".join(part.provenance for part in parts),
    )


def family_open(s: int) -> str:
    """Left bracket used inside w_R and y_i: `<` for one bracket, `<0` for indexed ones."""
    return TOKEN_OPEN if s == 1 else indexed_open(0)


def _check_index(name: str, value: int, n: int) -> None:
    if not 0 <= value < n:
        raise GadgetParameterError(f"{name}={value} out of range 0..{n - 1}")


def _check_n(n: int, least: int = 1) -> None:
    if n < least:
        raise GadgetParameterError(f"n must be at least {least}, got {n}")


def _bracket_block(index: int, n: int, bracket: str) -> Tuple[str, ...]:
    return (TOKEN_DECREMENT,) * index + (bracket,) + (TOKEN_DECREMENT,) * (n - index)


def gadget_u(i: int, n: int, open_token: str = TOKEN_OPEN) -> GadgetString:
    """
    Build u_i = -^i < -^(n-i), which removes pair (i, j) together with v_j.

    Raises:
        GadgetParameterError: If i is not a state.
    """
    _check_n(n)
    _check_index("i", i, n)
    return _gadget(_bracket_block(i, n, open_token), f"u(i={i},n={n})")


def gadget_v(j: int, n: int, close_token: str = TOKEN_CLOSE) -> GadgetString:
    """
    Build v_j = -^j > -^(n-j).

    Raises:
        GadgetParameterError: If j is not a state.
    """
    _check_n(n)
    _check_index("j", j, n)
    return _gadget(_bracket_block(j, n, close_token), f"v(j={j},n={n})")


def gadget_w(relation: BehaviorRelation, n: int, open_token: str = TOKEN_OPEN) -> GadgetString:
    """
    Build w_R, a well-nested string whose behavior relation on A_n is R.

    The pairs missing from R are taken in lexicographic order (i1,j1)..(ik,jk);
    the string is u_ik..u_i1 # v_j1..v_jk.

    Args:
        relation (BehaviorRelation): The relation to realize; may be empty.
        n (int): State count, equal to relation.n.
        open_token (str): Left bracket used inside the u blocks.
    Returns:
        GadgetString: The string w_R.
    Raises:
        GadgetParameterError: If relation.n differs from n.
    """
    _check_n(n)
    if relation.n != n:
        raise GadgetParameterError(f"relation over {relation.n} states used with n={n}")
    excluded = relation.excluded_pairs()
    tokens = [t for i, _ in reversed(excluded) for t in _bracket_block(i, n, open_token)]
    tokens.append(TOKEN_GUESS)
    tokens.extend(t for _, j in excluded for t in _bracket_block(j, n, TOKEN_CLOSE))
    return _gadget(tokens, f"w(R={relation.to_bitstring()},n={n})")


def gadget_y(i: int, n: int, open_token: str = TOKEN_OPEN) -> GadgetString:
    """Build y_i = w_{(i,i)}, which can be traversed only from state i, ending in i."""
    _check_n(n)
    _check_index("i", i, n)
    w = gadget_w(BehaviorRelation.from_pairs(n, [(i, i)]), n, open_token)
    return GadgetString(w.tokens, f"y(i={i},n={n})")


def gadget_y_explicit(i: int, n: int) -> GadgetString:
    """Build (<>-)^i - (<>-)^(n-i)."""
    _check_n(n)
    _check_index("i", i, n)
    block = (TOKEN_OPEN, TOKEN_CLOSE, TOKEN_DECREMENT)
    return _gadget(block * i + (TOKEN_DECREMENT,) + block * (n - i), f"y_explicit(i={i},n={n})")


def gadget_anchors(n: int, open_token: str = TOKEN_OPEN) -> Tuple[GadgetString, GadgetString]:
    """
    Split w of the diagonal relation at `#` into its u block and its v block.

    Returns:
        Tuple[GadgetString, GadgetString]: x_push over {-, <} and x_pop over {-, >}.
    """
    _check_n(n)
    tokens = gadget_w(BehaviorRelation.diagonal(n), n, open_token).tokens.tokens
    cut = tokens.index(TOKEN_GUESS)
    return (
        _gadget(tokens[:cut], f"x_push(n={n})"),
        _gadget(tokens[cut + 1:], f"x_pop(n={n})"),
    )


def gadget_f(
    relations: Sequence[BehaviorRelation],
    indices: Sequence[int],
    n: int,
    s: int = 1,
) -> GadgetString:
    """
    Build f = <l1 w_R1 <l2 w_R2 ... <lm w_Rm <l(m+1), leaving m+1 brackets open.

    With s = 1 every bracket is the plain `<`.

    Args:
        relations (Sequence[BehaviorRelation]): R1..Rm, all non-empty.
        indices (Sequence[int]): l1..l(m+1), each below s.
        n (int): State count.
        s (int): Number of left brackets of the target automaton.
    Returns:
        GadgetString: The string f.
    Raises:
        GadgetParameterError: If a relation is empty or the indices do not fit.
    """
    _check_n(n)
    if s < 1:
        raise GadgetParameterError(f"s must be at least 1, got {s}")
    if len(indices) != len(relations) + 1:
        raise GadgetParameterError(
            f"{len(relations)} relations need {len(relations) + 1} bracket indices, got {len(indices)}"
        )
    for ell in indices:
        _check_index("bracket index", ell, s)
    for relation in relations:
        if not relation:
            raise GadgetParameterError("f needs non-empty relations")

    def bracket(ell: int) -> str:
        return TOKEN_OPEN if s == 1 else indexed_open(ell)

    tokens = [bracket(indices[0])]
    for relation, ell in zip(relations, indices[1:]):
        tokens.extend(gadget_w(relation, n, family_open(s)).tokens)
        tokens.append(bracket(ell))
    rendered = ",".join(relation.to_bitstring() for relation in relations)
    return _gadget(
        tokens, f"f(R=[{rendered}],l=[{','.join(str(ell) for ell in indices)}],n={n},s={s})"
    )


def _skips(count: int) -> Tuple[str, ...]:
    return (TOKEN_GUESS, TOKEN_CLOSE_DOUBLE) * count


def gadget_g(
    i: int, j: int, k: int, m: int, n: int, open_token: str = TOKEN_OPEN
) -> GadgetString:
    """
    Build g = (#>>)^(m-k) # y0 >> yj # y1 >> yi (#>>)^(k-1).

    After f over R1..Rm, the automaton accepts f.g iff (i, j) is in Rk.

    Raises:
        GadgetParameterError: If k is outside 1..m, n < 2 or i, j are not states.
    """
    _check_n(n, 2)
    _check_index("i", i, n)
    _check_index("j", j, n)
    if not 1 <= k <= m:
        raise GadgetParameterError(f"k={k} out of range 1..{m}")

    def y(index: int) -> Tuple[str, ...]:
        return gadget_y(index, n, open_token).tokens.tokens

    tokens = (
        _skips(m - k)
        + (TOKEN_GUESS,) + y(0) + (TOKEN_CLOSE_DOUBLE,) + y(j)
        + (TOKEN_GUESS,) + y(1) + (TOKEN_CLOSE_DOUBLE,) + y(i)
        + _skips(k - 1)
    )
    return _gadget(tokens, f"g(i={i},j={j},k={k},m={m},n={n})")


def gadget_h(k: int, x: int, m: int, n: int, s: int) -> GadgetString:
    """
    Build h = (#>>)^(m-k+1) # y_(x mod n) >>> y_(x // n) (#>>)^(k-1).

    After f with bracket indices l1..l(m+1), the automaton accepts f.h iff bit x
    of lk is set.

    Raises:
        GadgetParameterError: If k is outside 1..m+1 or x is not a valid bit position.
    """
    _check_n(n)
    if s < 2:
        raise GadgetParameterError(f"h needs indexed brackets, got s={s}")
    if not 1 <= k <= m + 1:
        raise GadgetParameterError(f"k={k} out of range 1..{m + 1}")
    if not 0 <= x < bit_width(s):
        raise GadgetParameterError(f"x={x} out of range 0..{bit_width(s) - 1}")
    if x // n >= n:
        raise GadgetParameterError(f"x={x} does not encode a state pair for n={n}")
    open_token = family_open(s)
    tokens = (
        _skips(m - k + 1)
        + (TOKEN_GUESS,) + gadget_y(x % n, n, open_token).tokens.tokens
        + (TOKEN_CLOSE_TRIPLE,) + gadget_y(x // n, n, open_token).tokens.tokens
        + _skips(k - 1)
    )
    return _gadget(tokens, f"h(k={k},x={x},m={m},n={n},s={s})")
