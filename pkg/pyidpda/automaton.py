"""Nondeterministic and deterministic input-driven pushdown automata."""

from dataclasses import dataclass, field, replace
from typing import (
    Any,
    Callable,
    Dict,
    FrozenSet,
    Iterable,
    List,
    Mapping,
    Protocol,
    Tuple,
    Union,
)

from .alphabet import Alphabet, SymbolClass
from .exceptions import raise_for_issues

NeutralKey = Tuple[str, int]
OpenKey = Tuple[str, int]
CloseKey = Tuple[str, int, str]
Push = Tuple[int, str]

NO_STATES: FrozenSet[int] = frozenset()
NO_PUSHES: FrozenSet[Push] = frozenset()

RESERVED_STACK_CHARS = frozenset("(),")
RESERVED_STACK_SEQUENCES = ("->",)


@dataclass(frozen=True)
class Nidpda:
    """
    Nondeterministic input-driven pushdown automaton.

    States are 0..n_states-1. A missing transition key stands for the empty set.
    """

    alphabet: Alphabet
    n_states: int
    stack_symbols: Tuple[str, ...]
    initial: FrozenSet[int]
    accepting: FrozenSet[int]
    trans_neutral: Mapping[NeutralKey, FrozenSet[int]] = field(default_factory=dict)
    trans_open: Mapping[OpenKey, FrozenSet[Push]] = field(default_factory=dict)
    trans_close: Mapping[CloseKey, FrozenSet[int]] = field(default_factory=dict)

    def __post_init__(self) -> None:
        object.__setattr__(self, "stack_symbols", tuple(self.stack_symbols))
        object.__setattr__(self, "initial", frozenset(self.initial))
        object.__setattr__(self, "accepting", frozenset(self.accepting))
        for name in ("trans_neutral", "trans_open", "trans_close"):
            table = {
                key: frozenset(targets)
                for key, targets in getattr(self, name).items()
                if targets
            }
            object.__setattr__(self, name, table)

    def __hash__(self) -> int:
        return hash((self.alphabet, self.n_states, self.stack_symbols, self.initial, self.accepting))

    @property
    def states(self) -> range:
        return range(self.n_states)

    def neutral(self, c: str, q: int) -> FrozenSet[int]:
        return self.trans_neutral.get((c, q), NO_STATES)

    def push(self, a: str, q: int) -> FrozenSet[Push]:
        return self.trans_open.get((a, q), NO_PUSHES)

    def pop(self, b: str, q: int, gamma: str) -> FrozenSet[int]:
        return self.trans_close.get((b, q, gamma), NO_STATES)

    def with_accepting(self, accepting: Iterable[int]) -> 'Nidpda':
        return replace(self, accepting=frozenset(accepting))

    def restrict(self, excluded: Iterable[str]) -> 'Nidpda':
        """Drop the given tokens and every transition reading them."""
        dropped = set(excluded)
        return replace(
            self,
            alphabet=self.alphabet.restrict(dropped),
            trans_neutral={k: v for k, v in self.trans_neutral.items() if k[0] not in dropped},
            trans_open={k: v for k, v in self.trans_open.items() if k[0] not in dropped},
            trans_close={k: v for k, v in self.trans_close.items() if k[0] not in dropped},
        )

    def rename_tokens(self, mapping: Mapping[str, str]) -> 'Nidpda':
        """
        Rename input tokens, merging the transitions of tokens sent to one name.

        Args:
            mapping (Mapping[str, str]): Old token to new token; absent tokens keep their name.
        Returns:
            Nidpda: The automaton over the renamed alphabet.
        """
        def rename(token: str) -> str:
            return mapping.get(token, token)

        def merge(table: Mapping[Any, FrozenSet[Any]], key_of: Callable[[Any], Any]) -> Dict[Any, FrozenSet[Any]]:
            merged: Dict[Any, FrozenSet[Any]] = {}
            for key, targets in table.items():
                new_key = key_of(key)
                merged[new_key] = merged.get(new_key, frozenset()) | targets
            return merged

        alphabet = Alphabet.of(
            neutral=dict.fromkeys(rename(t) for t in self.alphabet.neutral),
            open=dict.fromkeys(rename(t) for t in self.alphabet.open),
            close=dict.fromkeys(rename(t) for t in self.alphabet.close),
        )
        return replace(
            self,
            alphabet=alphabet,
            trans_neutral=merge(self.trans_neutral, lambda k: (rename(k[0]), k[1])),
            trans_open=merge(self.trans_open, lambda k: (rename(k[0]), k[1])),
            trans_close=merge(self.trans_close, lambda k: (rename(k[0]), k[1], k[2])),
        )


class DeterministicSteps(Protocol):
    """Step interface shared by Didpda and lazily built products."""

    alphabet: Alphabet

    @property
    def initial_state(self) -> Any: ...

    def step_neutral(self, c: str, q: Any) -> Any: ...

    def step_open(self, a: str, q: Any) -> Tuple[Any, str]: ...

    def step_close(self, b: str, q: Any, gamma: str) -> Any: ...

    def is_accepting(self, q: Any) -> bool: ...


@dataclass(frozen=True)
class Didpda:
    """Deterministic, complete input-driven pushdown automaton."""

    alphabet: Alphabet
    n_states: int
    stack_symbols: Tuple[str, ...]
    initial: int
    accepting: FrozenSet[int]
    trans_neutral: Mapping[NeutralKey, int] = field(default_factory=dict)
    trans_open: Mapping[OpenKey, Push] = field(default_factory=dict)
    trans_close: Mapping[CloseKey, int] = field(default_factory=dict)

    def __post_init__(self) -> None:
        object.__setattr__(self, "stack_symbols", tuple(self.stack_symbols))
        object.__setattr__(self, "accepting", frozenset(self.accepting))
        for name in ("trans_neutral", "trans_open", "trans_close"):
            object.__setattr__(self, name, dict(getattr(self, name)))

    def __hash__(self) -> int:
        return hash((self.alphabet, self.n_states, self.stack_symbols, self.initial, self.accepting))

    @classmethod
    def from_nidpda(cls, a: Nidpda) -> 'Didpda':
        """
        Reinterpret a single-valued, total automaton as deterministic.

        Args:
            a (Nidpda): An automaton with one initial state and one outcome per key.
        Returns:
            Didpda: The same automaton with single-valued tables.
        Raises:
            AutomatonValidationError: If a is not deterministic and complete.
        """
        raise_for_issues(validate_deterministic(a))
        (initial,) = a.initial
        return cls(
            alphabet=a.alphabet,
            n_states=a.n_states,
            stack_symbols=a.stack_symbols,
            initial=initial,
            accepting=a.accepting,
            trans_neutral={k: next(iter(v)) for k, v in a.trans_neutral.items()},
            trans_open={k: next(iter(v)) for k, v in a.trans_open.items()},
            trans_close={k: next(iter(v)) for k, v in a.trans_close.items()},
        )

    def widen(self) -> Nidpda:
        """Return the Nidpda with every outcome widened to a singleton set."""
        return Nidpda(
            alphabet=self.alphabet,
            n_states=self.n_states,
            stack_symbols=self.stack_symbols,
            initial=frozenset({self.initial}),
            accepting=self.accepting,
            trans_neutral={k: frozenset({v}) for k, v in self.trans_neutral.items()},
            trans_open={k: frozenset({v}) for k, v in self.trans_open.items()},
            trans_close={k: frozenset({v}) for k, v in self.trans_close.items()},
        )

    def with_accepting(self, accepting: Iterable[int]) -> 'Didpda':
        return replace(self, accepting=frozenset(accepting))

    @property
    def states(self) -> range:
        return range(self.n_states)

    @property
    def initial_state(self) -> int:
        return self.initial

    def step_neutral(self, c: str, q: int) -> int:
        return self.trans_neutral[(c, q)]

    def step_open(self, a: str, q: int) -> Push:
        return self.trans_open[(a, q)]

    def step_close(self, b: str, q: int, gamma: str) -> int:
        return self.trans_close[(b, q, gamma)]

    def is_accepting(self, q: int) -> bool:
        return q in self.accepting


@dataclass(frozen=True)
class ValidationIssue:
    location: str
    message: str

    def __str__(self) -> str:
        return f"{self.location}: {self.message}"


@dataclass(frozen=True)
class ValidationReport:
    """Outcome of validating an automaton."""

    kind: str
    issues: Tuple[ValidationIssue, ...] = ()

    @property
    def valid(self) -> bool:
        return not self.issues

    def __str__(self) -> str:
        if self.valid:
            return f"valid {self.kind}"
        return "\n".join([f"invalid {self.kind}"] + [f"  {issue}" for issue in self.issues])


def _structural_issues(a: Nidpda) -> List[ValidationIssue]:
    issues: List[ValidationIssue] = []
    symbols = set(a.stack_symbols)

    def state_ok(q: object) -> bool:
        return isinstance(q, int) and 0 <= q < a.n_states

    def check_class(location: str, token: str, kind: SymbolClass) -> None:
        if token not in a.alphabet:
            issues.append(ValidationIssue(location, f"token {token!r} is not declared"))
        elif a.alphabet.classify(token) is not kind:
            issues.append(
                ValidationIssue(location, f"token {token!r} is not a {kind.value} symbol")
            )

    def check_state(location: str, q: object) -> None:
        if not state_ok(q):
            issues.append(ValidationIssue(location, f"state {q} out of range 0..{a.n_states - 1}"))

    def check_symbol(location: str, gamma: str) -> None:
        if gamma not in symbols:
            issues.append(ValidationIssue(location, f"stack symbol {gamma!r} is not declared"))

    if a.n_states < 1:
        issues.append(ValidationIssue("states", "at least one state is required"))
    if len(symbols) != len(a.stack_symbols):
        issues.append(ValidationIssue("stack", "stack symbols are not distinct"))
    for gamma in a.stack_symbols:
        if (
            not gamma
            or any(ch.isspace() or ch in RESERVED_STACK_CHARS for ch in gamma)
            or any(seq in gamma for seq in RESERVED_STACK_SEQUENCES)
        ):
            issues.append(ValidationIssue("stack", f"invalid stack symbol name {gamma!r}"))
    for q in sorted(a.initial):
        check_state("initial", q)
    for q in sorted(a.accepting):
        check_state("accepting", q)

    for (c, q), targets in a.trans_neutral.items():
        location = f"t0 {c} {q}"
        check_class(location, c, SymbolClass.NEUTRAL)
        check_state(location, q)
        for target in sorted(targets):
            check_state(location, target)
    for (b_open, q), pushes in a.trans_open.items():
        location = f"t+ {b_open} {q}"
        check_class(location, b_open, SymbolClass.OPEN)
        check_state(location, q)
        for target, gamma in sorted(pushes):
            check_state(location, target)
            check_symbol(location, gamma)
    for (b, q, gamma), targets in a.trans_close.items():
        location = f"t- {b} {q} {gamma}"
        check_class(location, b, SymbolClass.CLOSE)
        check_state(location, q)
        check_symbol(location, gamma)
        for target in sorted(targets):
            check_state(location, target)
    return issues


def _determinism_issues(a: Nidpda) -> List[ValidationIssue]:
    issues: List[ValidationIssue] = []

    def expect_one(location: str, count: int) -> None:
        if count == 0:
            issues.append(ValidationIssue(location, "missing transition"))
        elif count > 1:
            issues.append(ValidationIssue(location, f"{count} outcomes, expected one"))

    if len(a.initial) != 1:
        issues.append(
            ValidationIssue("initial", f"{len(a.initial)} initial states, expected one")
        )
    for q in a.states:
        for c in a.alphabet.neutral:
            expect_one(f"t0 {c} {q}", len(a.neutral(c, q)))
        for b_open in a.alphabet.open:
            expect_one(f"t+ {b_open} {q}", len(a.push(b_open, q)))
        for b in a.alphabet.close:
            for gamma in a.stack_symbols:
                expect_one(f"t- {b} {q} {gamma}", len(a.pop(b, q, gamma)))
    return issues


def validate_deterministic(a: Nidpda) -> ValidationReport:
    """Check that a Nidpda is structurally valid, single-valued and complete."""
    return ValidationReport("didpda", tuple(_structural_issues(a) + _determinism_issues(a)))


def validate(a: Union[Nidpda, Didpda]) -> ValidationReport:
    """
    Check an automaton against its type invariants.

    A Didpda is additionally checked for completeness and determinism.

    Args:
        a (Union[Nidpda, Didpda]): The automaton to check.
    Returns:
        ValidationReport: Every violated invariant with its location.
    """
    if isinstance(a, Didpda):
        return validate_deterministic(a.widen())
    return ValidationReport("nidpda", tuple(_structural_issues(a)))
