"""Language equivalence: bounded enumeration and exact product search."""

from time import perf_counter
from typing import Dict, FrozenSet, List, Optional, Set, Tuple

from .alphabet import Alphabet, InputString
from .automaton import Didpda, Nidpda
from .check import CheckResult, CheckStatus
from .const import DEFAULT_FRONTIER_CAP
from .determinize import summarize
from .exceptions import AlphabetMismatchError, ResourceLimitError
from .logger import logger
from .relation import BehaviorRelation
from .simulation import Configuration, RelationCalculus, advance_configs, poppable_symbols

ProductState = Tuple[int, int]


def _require_same_alphabet(first: Alphabet, second: Alphabet) -> None:
    if first != second:
        raise AlphabetMismatchError(
            f"alphabets differ: {' '.join(first.symbols)} vs {' '.join(second.symbols)}"
        )


def _verdict(accepted: bool) -> str:
    return "accept" if accepted else "reject"


def bounded_equivalence(
    a: Nidpda,
    d: Didpda,
    max_len: int,
    check_id: str = "equiv",
    cap: int = DEFAULT_FRONTIER_CAP,
) -> CheckResult:
    """
    Compare a nondeterministic automaton with a deterministic one on short inputs.

    Every well-nested string of length at most max_len is generated through
    W -> e | cW | <a W b> W. Along each branch the configuration frontier, the
    deterministic run and the relation calculus advance one token at a time;
    at every complete string the three verdicts must agree. A complete string
    whose frontier, deterministic state, relation and remaining length were
    already seen is not extended again.

    Args:
        a (Nidpda): The nondeterministic automaton.
        d (Didpda): The deterministic automaton over the same alphabet.
        max_len (int): Longest string generated.
        check_id (str): Id of the returned result.
        cap (int): Largest frontier tolerated.
    Returns:
        CheckResult: PASS, FAIL with the first disagreeing string, or BUDGET.
    Raises:
        AlphabetMismatchError: If the alphabets differ.
    """
    _require_same_alphabet(a.alphabet, d.alphabet)
    started = perf_counter()
    alphabet = a.alphabet
    calculus = RelationCalculus(a)
    poppable = poppable_symbols(a)
    accepting = a.accepting
    tokens: List[str] = []
    pending: List[str] = []
    checked = 0
    mismatch: List[CheckResult] = []
    seen: Set[Tuple[object, ...]] = set()

    def visit(
        configs: FrozenSet[Configuration],
        state: int,
        stack: Tuple[str, ...],
        saved: Tuple[Tuple[BehaviorRelation, str], ...],
        current: BehaviorRelation,
        budget: int,
    ) -> bool:
        nonlocal checked
        if len(configs) > cap:
            raise ResourceLimitError(f"frontier exceeded {cap} configurations", cap)
        if not pending:
            key = (configs, state, current, budget)
            if key in seen:
                return False
            seen.add(key)
            checked += 1
            by_frontier = any(q in accepting for q, _ in configs)
            by_didpda = d.is_accepting(state)
            by_relation = calculus.accepts(current)
            if not by_frontier == by_didpda == by_relation:
                w = InputString(tuple(tokens))
                mismatch.append(
                    CheckResult(
                        check_id,
                        CheckStatus.FAIL,
                        expected=_verdict(by_frontier),
                        observed=(
                            f"didpda={_verdict(by_didpda)},relation={_verdict(by_relation)}"
                            f"@{w or '(empty)'}"
                        ),
                    )
                )
                return True
        if pending:
            b = pending.pop()
            outer, a_open = saved[-1]
            tokens.append(b)
            found = visit(
                advance_configs(a, configs, b),
                d.step_close(b, state, stack[-1]),
                stack[:-1],
                saved[:-1],
                calculus.after_close(outer, a_open, current, b),
                budget - 1,
            )
            tokens.pop()
            pending.append(b)
            if found:
                return True
        if budget - 1 >= len(pending):
            for c in alphabet.neutral:
                tokens.append(c)
                found = visit(
                    advance_configs(a, configs, c),
                    d.step_neutral(c, state),
                    stack,
                    saved,
                    calculus.after_neutral(current, c),
                    budget - 1,
                )
                tokens.pop()
                if found:
                    return True
        if budget - 2 >= len(pending):
            for a_open in alphabet.open:
                target, gamma = d.step_open(a_open, state)
                for b in alphabet.close:
                    tokens.append(a_open)
                    pending.append(b)
                    found = visit(
                        advance_configs(a, configs, a_open, poppable[b]),
                        target,
                        stack + (gamma,),
                        saved + ((current, a_open),),
                        calculus.diagonal,
                        budget - 1,
                    )
                    pending.pop()
                    tokens.pop()
                    if found:
                        return True
        return False

    try:
        visit(
            frozenset((q, ()) for q in a.initial),
            d.initial,
            (),
            (),
            calculus.diagonal,
            max_len,
        )
    except ResourceLimitError as err:
        logger.warning("%s: %s", check_id, err)
        return CheckResult.budget(check_id, err.limit, perf_counter() - started)
    runtime = perf_counter() - started
    logger.debug("%s: compared %d strings up to length %d", check_id, checked, max_len)
    if mismatch:
        first = mismatch[0]
        return CheckResult(
            check_id, CheckStatus.FAIL, first.expected, first.observed, runtime
        )
    return CheckResult(check_id, CheckStatus.PASS, str(checked), str(checked), runtime)


class ProductAutomaton:
    """
    Pairing of two deterministic automata over one alphabet, built lazily.

    Stack symbols are named `g1|g2` and registered when first pushed.
    """

    def __init__(self, first: Didpda, second: Didpda):
        _require_same_alphabet(first.alphabet, second.alphabet)
        self.first = first
        self.second = second
        self.alphabet = first.alphabet
        self._symbols: Dict[str, Tuple[str, str]] = {}

    @property
    def initial_state(self) -> ProductState:
        return (self.first.initial, self.second.initial)

    def step_neutral(self, c: str, q: ProductState) -> ProductState:
        return (self.first.step_neutral(c, q[0]), self.second.step_neutral(c, q[1]))

    def step_open(self, a_open: str, q: ProductState) -> Tuple[ProductState, str]:
        target1, gamma1 = self.first.step_open(a_open, q[0])
        target2, gamma2 = self.second.step_open(a_open, q[1])
        name = f"{gamma1}|{gamma2}"
        self._symbols[name] = (gamma1, gamma2)
        return (target1, target2), name

    def step_close(self, b: str, q: ProductState, gamma: str) -> ProductState:
        gamma1, gamma2 = self._symbols[gamma]
        return (self.first.step_close(b, q[0], gamma1), self.second.step_close(b, q[1], gamma2))

    def is_accepting(self, q: ProductState) -> bool:
        return self.first.is_accepting(q[0]) and self.second.is_accepting(q[1])

    def disagrees(self, q: ProductState) -> bool:
        """Whether exactly one component accepts."""
        return self.first.is_accepting(q[0]) != self.second.is_accepting(q[1])


def product_inequivalence(first: Didpda, second: Didpda) -> Optional[InputString]:
    """
    Search for a well-nested input accepted by exactly one of two deterministic automata.

    Args:
        first (Didpda): One automaton.
        second (Didpda): The other, over the same alphabet.
    Returns:
        Optional[InputString]: The shortest counterexample found, or None if equivalent.
    Raises:
        AlphabetMismatchError: If the alphabets differ.
    """
    product = ProductAutomaton(first, second)
    summary = summarize(product)
    counterexample = summary.find(product.disagrees)
    logger.debug(
        "product search over %d reachable pairs: %s",
        len(summary.surface_states),
        "equivalent" if counterexample is None else f"counterexample {counterexample}",
    )
    return counterexample
