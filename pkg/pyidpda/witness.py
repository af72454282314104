"""Witness automaton families for the determinization lower bounds."""

from dataclasses import dataclass
from enum import Enum
from typing import Dict, List, Set, Tuple

from .alphabet import Alphabet
from .automaton import Nidpda
from .const import (
    STACK_BIT_PREFIX,
    STACK_ONE,
    STACK_SAVED_PREFIX,
    STACK_TARGET_PREFIX,
    STACK_ZERO,
    TOKEN_CLOSE,
    TOKEN_CLOSE_DOUBLE,
    TOKEN_CLOSE_TRIPLE,
    TOKEN_DECREMENT,
    TOKEN_GUESS,
    TOKEN_OPEN,
    TOKEN_OPEN_DOUBLE,
)
from .exceptions import WitnessParameterError
from .logger import logger


class WitnessFamily(Enum):
    """Witness automaton family."""

    A = "A"
    B = "B"
    BNS = "Bns"
    B12 = "B12"

    @classmethod
    def from_value(cls, value: str) -> 'WitnessFamily':
        return cls(value)


@dataclass(frozen=True)
class WitnessParams:
    """State count n and left-bracket count s of a witness."""

    n: int = 1
    s: int = 1

    def __post_init__(self) -> None:
        if self.n < 1:
            raise WitnessParameterError(f"n must be at least 1, got {self.n}")
        if not 1 <= self.s <= 2 ** (self.n * self.n):
            raise WitnessParameterError(
                f"s must lie in 1..2^(n*n) = 1..{2 ** (self.n * self.n)}, got {self.s}"
            )


def saved_symbol(i: int) -> str:
    return f"{STACK_SAVED_PREFIX}{i}"


def target_symbol(j: int) -> str:
    return f"{STACK_TARGET_PREFIX}{j}"


def bit_symbol(x: int) -> str:
    return f"{STACK_BIT_PREFIX}{x}"


def indexed_open(ell: int) -> str:
    return f"{TOKEN_OPEN}{ell}"


def bit_width(s: int) -> int:
    """Number of bits needed for bracket indices 0..s-1, at least one."""
    return max(1, (s - 1).bit_length())


def _sign_symbol(i: int) -> str:
    return STACK_ZERO if i == 0 else STACK_ONE


def _check_n(n: int) -> None:
    if n < 1:
        raise WitnessParameterError(f"n must be at least 1, got {n}")


def build_A(n: int) -> Nidpda:
    """
    Build A_n, whose determinization needs 2^(n*n) states.

    `#` moves anywhere, `-` decrements the state modulo n, `<` keeps the state
    and pushes 0 in state 0 and 1 elsewhere, `>` keeps the state and rejects
    only when popping 0 in state 0.

    Args:
        n (int): State count, at least 1.
    Returns:
        Nidpda: The automaton with initial state 0 and every state accepting.
    Raises:
        WitnessParameterError: If n < 1.
    """
    _check_n(n)
    states = range(n)
    stack = (STACK_ZERO, STACK_ONE)
    trans_neutral: Dict[Tuple[str, int], Set[int]] = {}
    trans_open: Dict[Tuple[str, int], Set[Tuple[int, str]]] = {}
    trans_close: Dict[Tuple[str, int, str], Set[int]] = {}
    for i in states:
        trans_neutral[(TOKEN_DECREMENT, i)] = {(i - 1) % n}
        trans_neutral[(TOKEN_GUESS, i)] = set(states)
        trans_open[(TOKEN_OPEN, i)] = {(i, _sign_symbol(i))}
        for gamma in stack:
            if (i, gamma) != (0, STACK_ZERO):
                trans_close[(TOKEN_CLOSE, i, gamma)] = {i}
    return Nidpda(
        alphabet=Alphabet.of(
            neutral=(TOKEN_DECREMENT, TOKEN_GUESS),
            open=(TOKEN_OPEN,),
            close=(TOKEN_CLOSE,),
        ),
        n_states=n,
        stack_symbols=stack,
        initial=frozenset({0}),
        accepting=frozenset(states),
        trans_neutral=trans_neutral,
        trans_open=trans_open,
        trans_close=trans_close,
    )


def _bracket_pushes(n: int, i: int) -> Set[Tuple[int, str]]:
    pushes = {(i, _sign_symbol(i))}
    pushes.update((j, saved_symbol(i)) for j in range(n))
    pushes.update((j, target_symbol(j)) for j in range(n))
    return pushes


def _double_pops(n: int) -> Dict[Tuple[str, int, str], Set[int]]:
    pops = {(TOKEN_CLOSE_DOUBLE, 0, saved_symbol(i)): {i} for i in range(n)}
    if n > 1:
        pops.update({(TOKEN_CLOSE_DOUBLE, 1, target_symbol(j)): {j} for j in range(n)})
    return pops


def _b_stack(n: int) -> List[str]:
    return (
        [STACK_ZERO, STACK_ONE]
        + [saved_symbol(i) for i in range(n)]
        + [target_symbol(j) for j in range(n)]
    )


def build_B(n: int) -> Nidpda:
    """
    Build B_n, whose determinization pushes 2^(n*n)-1 distinct stack symbols.

    B_n extends A_n with a double bracket `>>`. At `<` it may also move to any
    state j pushing either the old state as h_i or the new state as r_j. `>>`
    pops h_i in state 0 into state i and r_j in state 1 into state j.

    Raises:
        WitnessParameterError: If n < 1.
    """
    base = build_A(n)
    trans_open = {(TOKEN_OPEN, i): _bracket_pushes(n, i) for i in range(n)}
    trans_close = dict(base.trans_close)
    trans_close.update(_double_pops(n))
    return Nidpda(
        alphabet=Alphabet.of(
            neutral=(TOKEN_DECREMENT, TOKEN_GUESS),
            open=(TOKEN_OPEN,),
            close=(TOKEN_CLOSE, TOKEN_CLOSE_DOUBLE),
        ),
        n_states=n,
        stack_symbols=tuple(_b_stack(n)),
        initial=base.initial,
        accepting=base.accepting,
        trans_neutral=base.trans_neutral,
        trans_open=trans_open,
        trans_close=trans_close,
    )


def build_B12() -> Nidpda:
    """Build the one-state automaton matching `<` with `>` and `<<` with `>>`."""
    return Nidpda(
        alphabet=Alphabet.of(
            open=(TOKEN_OPEN, TOKEN_OPEN_DOUBLE),
            close=(TOKEN_CLOSE, TOKEN_CLOSE_DOUBLE),
        ),
        n_states=1,
        stack_symbols=(STACK_ZERO, STACK_ONE),
        initial=frozenset({0}),
        accepting=frozenset({0}),
        trans_open={
            (TOKEN_OPEN, 0): {(0, STACK_ZERO)},
            (TOKEN_OPEN_DOUBLE, 0): {(0, STACK_ONE)},
        },
        trans_close={
            (TOKEN_CLOSE, 0, STACK_ZERO): {0},
            (TOKEN_CLOSE_DOUBLE, 0, STACK_ONE): {0},
        },
    )


def build_Bns(n: int, s: int) -> Nidpda:
    """
    Build B_{n,s}, whose determinization pushes s(2^(n*n)-1) distinct stack symbols.

    Each bracket `<l` has all transitions of `<` in B_n and may also push c_x,
    moving to any state, for every bit x set in l. The triple bracket `>>>`
    pops c_x in state x mod n into state x // n.

    Args:
        n (int): State count.
        s (int): Number of left brackets, 1 <= s <= 2^(n*n).
    Returns:
        Nidpda: B_{n,s}; B_n when s = 1 and the two-bracket automaton when n = 1, s = 2.
    Raises:
        WitnessParameterError: If the parameters are out of range.
    """
    params = WitnessParams(n, s)
    if params.s == 1:
        return build_B(n)
    if params.n == 1:
        logger.debug("B_{1,2} requested, building the two-bracket automaton")
        return build_B12()

    base = build_B(n)
    width = bit_width(s)
    opens = [indexed_open(ell) for ell in range(s)]
    trans_open: Dict[Tuple[str, int], Set[Tuple[int, str]]] = {}
    for ell, token in enumerate(opens):
        bits = [x for x in range(width) if ell >> x & 1]
        for i in range(n):
            pushes = _bracket_pushes(n, i)
            pushes.update((r, bit_symbol(x)) for x in bits for r in range(n))
            trans_open[(token, i)] = pushes
    trans_close = dict(base.trans_close)
    for x in range(width):
        trans_close[(TOKEN_CLOSE_TRIPLE, x % n, bit_symbol(x))] = {x // n}
    return Nidpda(
        alphabet=Alphabet.of(
            neutral=(TOKEN_DECREMENT, TOKEN_GUESS),
            open=opens,
            close=(TOKEN_CLOSE, TOKEN_CLOSE_DOUBLE, TOKEN_CLOSE_TRIPLE),
        ),
        n_states=n,
        stack_symbols=tuple(_b_stack(n) + [bit_symbol(x) for x in range(width)]),
        initial=base.initial,
        accepting=base.accepting,
        trans_neutral=base.trans_neutral,
        trans_open=trans_open,
        trans_close=trans_close,
    )


def build_witness(family: WitnessFamily, n: int = 1, s: int = 1) -> Nidpda:
    """Build a witness of the given family; s only applies to Bns."""
    if family is WitnessFamily.A:
        return build_A(n)
    if family is WitnessFamily.B:
        return build_B(n)
    if family is WitnessFamily.BNS:
        return build_Bns(n, s)
    return build_B12()
