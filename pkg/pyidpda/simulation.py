"""Running automata on input strings."""

from dataclasses import dataclass, field
from typing import (
    Dict,
    FrozenSet,
    Iterable,
    Iterator,
    List,
    Optional,
    Tuple,
)

from .alphabet import (
    InputString,
    SymbolClass,
    match_brackets,
    require_nested_prefix,
    require_well_nested,
)
from .automaton import DeterministicSteps, Nidpda
from .const import DEFAULT_FRONTIER_CAP, TRACE_LIMIT
from .exceptions import ResourceLimitError
from .logger import logger
from .relation import BehaviorRelation

Stack = Tuple[str, ...]
Configuration = Tuple[int, Stack]


@dataclass(frozen=True)
class ConfigurationSet:
    """Frontier of (state, stack) pairs after consuming `position` symbols."""

    position: int
    configs: FrozenSet[Configuration] = field(default_factory=frozenset)

    @property
    def states(self) -> FrozenSet[int]:
        return frozenset(q for q, _ in self.configs)

    @property
    def height(self) -> Optional[int]:
        """Common stack height, or None for an empty frontier."""
        heights = {len(stack) for _, stack in self.configs}
        if len(heights) > 1:
            raise AssertionError(f"stack heights diverged: {sorted(heights)}")
        return next(iter(heights), None)

    def __len__(self) -> int:
        return len(self.configs)

    def __bool__(self) -> bool:
        return bool(self.configs)


@dataclass(frozen=True)
class TraceStep:
    position: int
    token: str
    states: FrozenSet[int]
    height: int


def poppable_symbols(a: Nidpda) -> Dict[str, FrozenSet[str]]:
    """Map each close token to the stack symbols it can pop in some state."""
    found: Dict[str, set] = {b: set() for b in a.alphabet.close}
    for b, _, gamma in a.trans_close:
        found.setdefault(b, set()).add(gamma)
    return {b: frozenset(symbols) for b, symbols in found.items()}


def advance_configs(
    a: Nidpda,
    configs: Iterable[Configuration],
    token: str,
    allowed: Optional[FrozenSet[str]] = None,
) -> FrozenSet[Configuration]:
    """
    Move every configuration over one token.

    Args:
        a (Nidpda): The automaton.
        configs (Iterable[Configuration]): The current frontier.
        token (str): The input token.
        allowed (Optional[FrozenSet[str]]): For an open token, the stack symbols worth
            pushing because the matching close token can pop them; None keeps all.
    Returns:
        FrozenSet[Configuration]: The next frontier.
    """
    kind = a.alphabet.classify(token)
    if kind is SymbolClass.NEUTRAL:
        return frozenset(
            (r, stack) for q, stack in configs for r in a.neutral(token, q)
        )
    if kind is SymbolClass.OPEN:
        return frozenset(
            (r, stack + (gamma,))
            for q, stack in configs
            for r, gamma in a.push(token, q)
            if allowed is None or gamma in allowed
        )
    return frozenset(
        (r, stack[:-1]) for q, stack in configs for r in a.pop(token, q, stack[-1])
    )


def frontier_steps(
    a: Nidpda,
    w: InputString,
    starts: Iterable[int],
    cap: int = DEFAULT_FRONTIER_CAP,
) -> Iterator[ConfigurationSet]:
    """
    Yield the frontier before and after every symbol of w.

    At an open bracket whose matching close bracket lies inside w, pushes of
    symbols that close bracket cannot pop in any state are skipped.

    Raises:
        IllNestedInputError: If some prefix of w closes too much.
        ResourceLimitError: If a frontier grows beyond cap.
    """
    a.alphabet.check(w)
    require_nested_prefix(w, a.alphabet)
    matches = match_brackets(w, a.alphabet)
    poppable = poppable_symbols(a)
    configs: FrozenSet[Configuration] = frozenset((q, ()) for q in starts)
    yield ConfigurationSet(0, configs)
    for position, token in enumerate(w):
        allowed = None
        if position in matches:
            allowed = poppable[w[matches[position]]]
        configs = advance_configs(a, configs, token, allowed)
        if len(configs) > cap:
            logger.warning("frontier of %d configurations at position %d", len(configs), position)
            raise ResourceLimitError(
                f"frontier exceeded {cap} configurations at position {position}", cap
            )
        yield ConfigurationSet(position + 1, configs)


def run_frontier(
    a: Nidpda,
    w: InputString,
    starts: Iterable[int],
    cap: int = DEFAULT_FRONTIER_CAP,
) -> ConfigurationSet:
    final = ConfigurationSet(0)
    for final in frontier_steps(a, w, starts, cap):
        if not final:
            return ConfigurationSet(len(w))
    return final


def nidpda_accepts(a: Nidpda, w: InputString, cap: int = DEFAULT_FRONTIER_CAP) -> bool:
    """
    Decide acceptance by expanding the configuration frontier symbol by symbol.

    Args:
        a (Nidpda): The automaton.
        w (InputString): A well-nested input.
        cap (int): Largest frontier tolerated.
    Returns:
        bool: Whether some computation from an initial state ends accepting.
    Raises:
        IllNestedInputError: If w is not well-nested.
        ResourceLimitError: If the frontier exceeds cap.
    """
    a.alphabet.check(w)
    require_well_nested(w, a.alphabet)
    final = run_frontier(a, w, a.initial, cap)
    return any(q in a.accepting for q in final.states)


def behavior_relation(
    a: Nidpda, w: InputString, cap: int = DEFAULT_FRONTIER_CAP
) -> BehaviorRelation:
    """
    Compute the state pairs (i, j) such that some computation traverses w from i to j.

    Raises:
        IllNestedInputError: If w is not well-nested.
        ResourceLimitError: If a frontier exceeds cap.
    """
    a.alphabet.check(w)
    require_well_nested(w, a.alphabet)
    pairs = []
    for i in a.states:
        final = run_frontier(a, w, (i,), cap)
        pairs.extend((i, j) for j in final.states)
    return BehaviorRelation.from_pairs(a.n_states, pairs)


def trace(a: Nidpda, w: InputString, limit: int = TRACE_LIMIT) -> Iterator[TraceStep]:
    """Yield one step per consumed symbol, at most limit steps."""
    steps = frontier_steps(a, w, a.initial)
    next(steps)
    for position, frontier in enumerate(steps):
        if position >= limit:
            logger.debug("trace truncated after %d steps", limit)
            return
        yield TraceStep(position, w[position], frontier.states, frontier.height or 0)
        if not frontier:
            return


class RelationCalculus:
    """
    Transition rules over behavior relations.

    A relation summarizes the well-nested segment read since the last unmatched
    open bracket. Neutral symbols post-compose with their transition relation;
    an open bracket saves the current relation and restarts at the diagonal; a
    close bracket stitches the saved relation, the open move, the inner
    relation and the close move.
    """

    def __init__(self, a: Nidpda):
        self.automaton = a
        self.n = a.n_states
        self.diagonal = BehaviorRelation.diagonal(self.n)
        self.full = BehaviorRelation.full(self.n)
        self._neutral: Dict[str, BehaviorRelation] = {}
        self._wraps: Dict[Tuple[BehaviorRelation, str, str], BehaviorRelation] = {}
        self._accept_mask = 0
        for q0 in a.initial:
            for f in a.accepting:
                self._accept_mask |= 1 << (q0 * self.n + f)

    def neutral_relation(self, c: str) -> BehaviorRelation:
        if c not in self._neutral:
            a = self.automaton
            self._neutral[c] = BehaviorRelation.from_pairs(
                self.n, ((q, r) for q in a.states for r in a.neutral(c, q))
            )
        return self._neutral[c]

    def after_neutral(self, current: BehaviorRelation, c: str) -> BehaviorRelation:
        return current.compose(self.neutral_relation(c))

    def wrap(self, inner: BehaviorRelation, a_open: str, b: str) -> BehaviorRelation:
        """
        Relation of the bracketed segment a_open . inner . b.

        Pair (p, q) holds when p pushes some (r, gamma) on a_open, inner leads
        r to r', and b pops gamma from r' into q.
        """
        key = (inner, a_open, b)
        cached = self._wraps.get(key)
        if cached is not None:
            return cached
        a = self.automaton
        n = self.n
        bits = 0
        for p in a.states:
            for r, gamma in a.push(a_open, p):
                for r_inner in inner.successors(r):
                    for q in a.pop(b, r_inner, gamma):
                        bits |= 1 << (p * n + q)
        result = BehaviorRelation(n, bits)
        self._wraps[key] = result
        return result

    def after_close(
        self,
        saved: BehaviorRelation,
        a_open: str,
        inner: BehaviorRelation,
        b: str,
    ) -> BehaviorRelation:
        return saved.compose(self.wrap(inner, a_open, b))

    def accepts(self, relation: BehaviorRelation) -> bool:
        """Whether relation holds a pair (initial, accepting)."""
        return bool(relation.bits & self._accept_mask)

    def run(self, w: InputString) -> BehaviorRelation:
        """
        Evaluate the relation of a well-nested string without building any automaton.

        Raises:
            IllNestedInputError: If w is not well-nested.
        """
        alphabet = self.automaton.alphabet
        alphabet.check(w)
        require_well_nested(w, alphabet)
        saved: List[Tuple[BehaviorRelation, str]] = []
        current = self.diagonal
        for token in w:
            kind = alphabet.classify(token)
            if kind is SymbolClass.NEUTRAL:
                current = self.after_neutral(current, token)
            elif kind is SymbolClass.OPEN:
                saved.append((current, token))
                current = self.diagonal
            else:
                outer, a_open = saved.pop()
                current = self.after_close(outer, a_open, current, token)
        return current


def relation_accepts(
    a: Nidpda, w: InputString, calculus: Optional[RelationCalculus] = None
) -> bool:
    """
    Decide acceptance through behavior relations.

    Args:
        a (Nidpda): The automaton.
        w (InputString): A well-nested input.
        calculus (Optional[RelationCalculus]): Shared rule cache for a; built when omitted.
    Returns:
        bool: Same verdict as nidpda_accepts.
    Raises:
        IllNestedInputError: If w is not well-nested.
    """
    calculus = calculus or RelationCalculus(a)
    return calculus.accepts(calculus.run(w))


def didpda_run(d: DeterministicSteps, w: InputString) -> Tuple[object, Stack]:
    """
    Run a deterministic automaton on a well-nested string or a prefix of one.

    Args:
        d (DeterministicSteps): A Didpda or any automaton with the same step methods.
        w (InputString): The input; unmatched open brackets stay on the stack.
    Returns:
        Tuple[object, Stack]: Final state and stack, bottom first.
    Raises:
        IllNestedInputError: If some prefix of w closes too much.
    """
    d.alphabet.check(w)
    require_nested_prefix(w, d.alphabet)
    state = d.initial_state
    stack: List[str] = []
    for token in w:
        kind = d.alphabet.classify(token)
        if kind is SymbolClass.NEUTRAL:
            state = d.step_neutral(token, state)
        elif kind is SymbolClass.OPEN:
            state, gamma = d.step_open(token, state)
            stack.append(gamma)
        else:
            state = d.step_close(token, state, stack.pop())
    return state, tuple(stack)


def didpda_accepts(d: DeterministicSteps, w: InputString) -> bool:
    """
    Decide acceptance of a well-nested string by a deterministic automaton.

    Raises:
        IllNestedInputError: If w is not well-nested.
    """
    d.alphabet.check(w)
    require_well_nested(w, d.alphabet)
    state, _ = didpda_run(d, w)
    return d.is_accepting(state)
