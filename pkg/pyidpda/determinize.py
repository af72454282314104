"""Determinization over behavior relations and reachability summaries."""

from collections import deque
from dataclasses import dataclass, field
from typing import (
    Callable,
    Deque,
    Dict,
    FrozenSet,
    Generic,
    Hashable,
    List,
    Mapping,
    Optional,
    Set,
    Tuple,
    TypeVar,
)

from .alphabet import InputString
from .automaton import DeterministicSteps, Didpda, Nidpda, validate
from .exceptions import raise_for_issues
from .logger import logger
from .relation import BehaviorRelation
from .simulation import RelationCalculus

State = TypeVar("State", bound=Hashable)


@dataclass(frozen=True)
class DeterminizationResult:
    """A determinized automaton with the relation behind every state and stack symbol."""

    automaton: Didpda
    state_label: Mapping[int, BehaviorRelation]
    pushed_symbol_label: Mapping[str, Tuple[BehaviorRelation, str]]

    def state_of(self, relation: BehaviorRelation) -> Optional[int]:
        for q, label in self.state_label.items():
            if label == relation:
                return q
        return None

    @property
    def empty_symbols(self) -> List[str]:
        """Stack symbols labelled with the empty relation."""
        return [gamma for gamma, (relation, _) in self.pushed_symbol_label.items() if not relation]


def stack_symbol_name(relation: BehaviorRelation, open_token: str) -> str:
    return relation.to_bitstring() + open_token


def determinize(a: Nidpda) -> DeterminizationResult:
    """
    Build the reachable part of the deterministic automaton over behavior relations.

    Each state is the relation of the well-nested segment read since the last
    unmatched open bracket, starting from the diagonal. An open bracket pushes
    the current relation with the bracket and restarts at the diagonal; the
    empty relation is a sink whose open brackets push the full relation instead.

    Args:
        a (Nidpda): A valid automaton.
    Returns:
        DeterminizationResult: Complete deterministic automaton with labels.
    Raises:
        AutomatonValidationError: If a is invalid.
    """
    raise_for_issues(validate(a))
    calculus = RelationCalculus(a)
    alphabet = a.alphabet
    empty = BehaviorRelation.empty(a.n_states)

    labels: List[BehaviorRelation] = []
    index: Dict[BehaviorRelation, int] = {}
    symbols: Dict[str, Tuple[BehaviorRelation, str]] = {}
    worklist: Deque[int] = deque()

    def state(relation: BehaviorRelation) -> int:
        if relation not in index:
            index[relation] = len(labels)
            labels.append(relation)
            worklist.append(index[relation])
        return index[relation]

    def symbol(relation: BehaviorRelation, open_token: str) -> str:
        name = stack_symbol_name(relation, open_token)
        symbols.setdefault(name, (relation, open_token))
        return name

    trans_neutral: Dict[Tuple[str, int], int] = {}
    trans_open: Dict[Tuple[str, int], Tuple[int, str]] = {}
    trans_close: Dict[Tuple[str, int, str], int] = {}
    closed: Set[Tuple[int, str]] = set()

    state(calculus.diagonal)
    while True:
        while worklist:
            q = worklist.popleft()
            current = labels[q]
            for c in alphabet.neutral:
                trans_neutral[(c, q)] = state(calculus.after_neutral(current, c))
            for a_open in alphabet.open:
                if current:
                    trans_open[(a_open, q)] = (state(calculus.diagonal), symbol(current, a_open))
                else:
                    trans_open[(a_open, q)] = (q, symbol(calculus.full, a_open))

        pending = [
            (q, gamma) for q in range(len(labels)) for gamma in symbols if (q, gamma) not in closed
        ]
        if not pending:
            break
        for q, gamma in pending:
            saved, a_open = symbols[gamma]
            for b in alphabet.close:
                trans_close[(b, q, gamma)] = state(
                    calculus.after_close(saved, a_open, labels[q], b)
                )
            closed.add((q, gamma))
        logger.debug(
            "determinize: %d states, %d stack symbols, %d pending", len(labels), len(symbols), len(worklist)
        )

    automaton = Didpda(
        alphabet=alphabet,
        n_states=len(labels),
        stack_symbols=tuple(symbols),
        initial=0,
        accepting=frozenset(q for q, label in enumerate(labels) if calculus.accepts(label)),
        trans_neutral=trans_neutral,
        trans_open=trans_open,
        trans_close=trans_close,
    )
    logger.debug(
        "determinized %d states into %d states and %d stack symbols (empty sink %s)",
        a.n_states,
        automaton.n_states,
        len(symbols),
        "reached" if empty in index else "not reached",
    )
    return DeterminizationResult(
        automaton=automaton,
        state_label=dict(enumerate(labels)),
        pushed_symbol_label=symbols,
    )


@dataclass(frozen=True)
class SummaryLink:
    """How a summary pair was first derived."""

    kind: str
    previous: object = None
    open_token: str = ""
    inner_start: object = None
    inner_end: object = None
    token: str = ""


START = SummaryLink("start")


@dataclass
class ReachabilitySummary(Generic[State]):
    """
    Saturated summary reachability of a deterministic automaton.

    A pair (s, q) of `summary` means q is reachable from the segment start s by a
    well-nested segment; segment starts are the initial state and every target
    of an open transition taken on the way.
    """

    initial: State
    surface_states: FrozenSet[State]
    summary: FrozenSet[Tuple[State, State]]
    pushed: FrozenSet[str]
    order: List[Tuple[State, State]] = field(default_factory=list, repr=False)
    links: Dict[Tuple[State, State], SummaryLink] = field(default_factory=dict, repr=False)

    def witness(self, start: State, target: State) -> InputString:
        """
        Rebuild a well-nested segment leading from start to target.

        Raises:
            KeyError: If (start, target) is not a summary pair.
        """
        tokens: List[str] = []
        tasks: List[object] = [(start, target)]
        while tasks:
            task = tasks.pop()
            if isinstance(task, str):
                tokens.append(task)
                continue
            s, q = task  # type: ignore[misc]
            link = self.links[(s, q)]
            if link.kind == "neutral":
                tasks.append(link.token)
                tasks.append((s, link.previous))
            elif link.kind == "match":
                tasks.append(link.token)
                tasks.append((link.inner_start, link.inner_end))
                tasks.append(link.open_token)
                tasks.append((s, link.previous))
        return InputString(tuple(tokens))

    def find(self, predicate: Callable[[State], bool]) -> Optional[InputString]:
        """
        Find the shortest rebuilt input from the initial state to a state satisfying predicate.

        Returns:
            Optional[InputString]: A well-nested input, or None if no such state is reachable.
        """
        best: Optional[InputString] = None
        for s, q in self.order:
            if s == self.initial and predicate(q):
                candidate = self.witness(s, q)
                if best is None or (len(candidate), str(candidate)) < (len(best), str(best)):
                    best = candidate
        return best


def summarize(d: DeterministicSteps) -> ReachabilitySummary:
    """
    Compute summary reachability by saturation with summary edges.

    Args:
        d (DeterministicSteps): A Didpda or any automaton with the same step methods;
            stack symbols are discovered while exploring.
    Returns:
        ReachabilitySummary: Reachable surface states, summary pairs and pushed symbols.
    """
    alphabet = d.alphabet
    initial = d.initial_state
    reach: Dict[object, Set[object]] = {}
    callers: Dict[object, List[Tuple[object, object, str, str]]] = {}
    links: Dict[Tuple[object, object], SummaryLink] = {}
    order: List[Tuple[object, object]] = []
    pushed: Set[str] = set()
    worklist: Deque[Tuple[object, object]] = deque()

    def add(s: object, q: object, link: SummaryLink) -> None:
        if (s, q) in links:
            return
        links[(s, q)] = link
        order.append((s, q))
        reach.setdefault(s, set()).add(q)
        worklist.append((s, q))

    def start(r: object) -> None:
        if r not in reach:
            callers.setdefault(r, [])
            add(r, r, START)

    start(initial)
    while worklist:
        s, q = worklist.popleft()
        for c in alphabet.neutral:
            add(s, d.step_neutral(c, q), SummaryLink("neutral", previous=q, token=c))
        for a_open in alphabet.open:
            r, gamma = d.step_open(a_open, q)
            pushed.add(gamma)
            start(r)
            callers[r].append((s, q, a_open, gamma))
            for inner_end in list(reach[r]):
                for b in alphabet.close:
                    add(
                        s,
                        d.step_close(b, inner_end, gamma),
                        SummaryLink("match", q, a_open, r, inner_end, b),
                    )
        for caller, caller_state, a_open, gamma in list(callers.get(s, ())):
            for b in alphabet.close:
                add(
                    caller,
                    d.step_close(b, q, gamma),
                    SummaryLink("match", caller_state, a_open, s, q, b),
                )

    logger.debug("summarized %d pairs over %d segment starts", len(order), len(reach))
    return ReachabilitySummary(
        initial=initial,
        surface_states=frozenset(q for states in reach.values() for q in states),
        summary=frozenset(order),
        pushed=frozenset(pushed),
        order=order,
        links=links,
    )


def metrics(
    result: DeterminizationResult, summary: Optional[ReachabilitySummary] = None
) -> Dict[str, int]:
    """
    Count states and stack symbols of a determinization.

    Args:
        result (DeterminizationResult): The determinization.
        summary (Optional[ReachabilitySummary]): Its summary; computed when omitted.
    Returns:
        Dict[str, int]: states, stack_symbols, reachable_states, reachable_pushed.
    """
    summary = summary or summarize(result.automaton)
    return {
        "states": result.automaton.n_states,
        "stack_symbols": len(result.automaton.stack_symbols),
        "reachable_states": len(summary.surface_states),
        "reachable_pushed": len(summary.pushed),
    }
