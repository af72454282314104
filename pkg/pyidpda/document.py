"""Textual formats: input strings, automaton documents and reports."""

import re
from typing import (
    TYPE_CHECKING,
    Dict,
    FrozenSet,
    Iterable,
    List,
    Mapping,
    Set,
    Tuple,
    Union,
)

from .alphabet import Alphabet, InputString
from .automaton import Didpda, Nidpda, validate
from .check import CheckResult, CheckStatus
from .const import COMMENT_PREFIX, FORMAT_HEADER
from .exceptions import (
    AlphabetError,
    DocumentSyntaxError,
    LexicalError,
    raise_for_issues,
)

if TYPE_CHECKING:
    from .simulation import TraceStep


HEADER_KEYS = (
    "alphabet neutral",
    "alphabet open",
    "alphabet close",
    "states",
    "initial",
    "accepting",
    "stack",
)

TRANSITION_RE = re.compile(r"^(t0|t\+|t-)\s+(.*?)\s*->(.*)$")
PUSH_RE = re.compile(r"\(\s*(\d+)\s*,\s*([^()\s,]+)\s*\)")


def tokenize(text: str, alphabet: Alphabet) -> InputString:
    """
    Split text into alphabet tokens by longest match, ignoring whitespace.

    Args:
        text (str): The characters to split.
        alphabet (Alphabet): Alphabet whose token names are matched.
    Returns:
        InputString: The tokens in order.
    Raises:
        LexicalError: If no token matches at some offset.
    """
    names = sorted(alphabet.symbols, key=len, reverse=True)
    tokens: List[str] = []
    offset = 0
    while offset < len(text):
        if text[offset].isspace():
            offset += 1
            continue
        for name in names:
            if text.startswith(name, offset):
                tokens.append(name)
                offset += len(name)
                break
        else:
            raise LexicalError(f"no token matches {text[offset:offset + 8]!r}", offset)
    return InputString(tuple(tokens))


def _states(values: Iterable[int]) -> str:
    return " ".join(str(q) for q in sorted(values))


def _line(key: str, values: str) -> str:
    return f"{key}: {values}" if values else f"{key}:"


def serialize_automaton(a: Union[Nidpda, Didpda]) -> str:
    """
    Render an automaton as a document.

    Transitions are listed symbol by symbol in alphabet order, then by state,
    then by stack symbol in declaration order.

    Args:
        a (Union[Nidpda, Didpda]): The automaton; a Didpda is written as its widened form.
    Returns:
        str: The document, newline-terminated.
    Raises:
        AutomatonValidationError: If the automaton cannot be written back faithfully.
    """
    if isinstance(a, Didpda):
        a = a.widen()
    raise_for_issues(validate(a))
    order = {gamma: index for index, gamma in enumerate(a.stack_symbols)}
    lines = [
        FORMAT_HEADER,
        _line("alphabet neutral", " ".join(a.alphabet.neutral)),
        _line("alphabet open", " ".join(a.alphabet.open)),
        _line("alphabet close", " ".join(a.alphabet.close)),
        _line("states", str(a.n_states)),
        _line("initial", _states(a.initial)),
        _line("accepting", _states(a.accepting)),
        _line("stack", " ".join(a.stack_symbols)),
    ]
    for c in a.alphabet.neutral:
        for q in a.states:
            targets = a.neutral(c, q)
            if targets:
                lines.append(f"t0 {c} {q} -> {_states(targets)}")
    for b_open in a.alphabet.open:
        for q in a.states:
            pushes = sorted(a.push(b_open, q), key=lambda p: (p[0], order.get(p[1], -1), p[1]))
            if pushes:
                rendered = " ".join(f"({target},{gamma})" for target, gamma in pushes)
                lines.append(f"t+ {b_open} {q} -> {rendered}")
    for b in a.alphabet.close:
        for q in a.states:
            for gamma in a.stack_symbols:
                targets = a.pop(b, q, gamma)
                if targets:
                    lines.append(f"t- {b} {q} {gamma} -> {_states(targets)}")
    return "\n".join(lines) + "\n"


def _parse_int(text: str, line: int) -> int:
    try:
        return int(text)
    except ValueError:
        raise DocumentSyntaxError(f"expected a state number, got {text!r}", line) from None


def parse_automaton(text: str) -> Nidpda:
    """
    Parse an automaton document.

    Args:
        text (str): The document.
    Returns:
        Nidpda: The described automaton, validated.
    Raises:
        DocumentSyntaxError: If the document does not follow the grammar.
        AutomatonValidationError: If the automaton violates its invariants.
    """
    header: Dict[str, Tuple[str, int]] = {}
    trans_neutral: Dict[Tuple[str, int], Set[int]] = {}
    trans_open: Dict[Tuple[str, int], Set[Tuple[int, str]]] = {}
    trans_close: Dict[Tuple[str, int, str], Set[int]] = {}
    seen_version = False

    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith(COMMENT_PREFIX):
            continue
        if not seen_version:
            if line != FORMAT_HEADER:
                raise DocumentSyntaxError(f"expected {FORMAT_HEADER!r}, got {line!r}", number)
            seen_version = True
            continue

        match = TRANSITION_RE.match(line)
        if match:
            kind, left, right = match.group(1), match.group(2).split(), match.group(3).strip()
            if kind == "t+":
                if len(left) != 2:
                    raise DocumentSyntaxError("expected 't+ <tok> <q> -> (q,sym)...'", number)
                pushes = PUSH_RE.findall(right)
                if PUSH_RE.sub("", right).strip():
                    raise DocumentSyntaxError(f"malformed push list {right!r}", number)
                key = (left[0], _parse_int(left[1], number))
                trans_open.setdefault(key, set()).update(
                    (int(target), gamma) for target, gamma in pushes
                )
            elif kind == "t0":
                if len(left) != 2:
                    raise DocumentSyntaxError("expected 't0 <tok> <q> -> q...'", number)
                key_n = (left[0], _parse_int(left[1], number))
                trans_neutral.setdefault(key_n, set()).update(
                    _parse_int(q, number) for q in right.split()
                )
            else:
                if len(left) != 3:
                    raise DocumentSyntaxError("expected 't- <tok> <q> <sym> -> q...'", number)
                key_c = (left[0], _parse_int(left[1], number), left[2])
                trans_close.setdefault(key_c, set()).update(
                    _parse_int(q, number) for q in right.split()
                )
            continue

        key, sep, value = line.partition(":")
        key = " ".join(key.split())
        if not sep or key not in HEADER_KEYS:
            raise DocumentSyntaxError(f"unrecognized line {line!r}", number)
        if key in header:
            raise DocumentSyntaxError(f"duplicate {key!r} line", number)
        if trans_neutral or trans_open or trans_close:
            raise DocumentSyntaxError(f"{key!r} line after transitions", number)
        header[key] = (value.strip(), number)

    if not seen_version:
        raise DocumentSyntaxError(f"missing {FORMAT_HEADER!r} line")
    missing = [key for key in HEADER_KEYS if key not in header]
    if missing:
        raise DocumentSyntaxError(f"missing {', '.join(repr(k) for k in missing)} line")

    def words(key: str) -> List[str]:
        return header[key][0].split()

    def numbers(key: str) -> FrozenSet[int]:
        value, number = header[key]
        return frozenset(_parse_int(q, number) for q in value.split())

    try:
        alphabet = Alphabet.of(
            neutral=words("alphabet neutral"),
            open=words("alphabet open"),
            close=words("alphabet close"),
        )
    except AlphabetError as err:
        raise DocumentSyntaxError(str(err), header["alphabet neutral"][1]) from err
    states, states_line = header["states"]
    automaton = Nidpda(
        alphabet=alphabet,
        n_states=_parse_int(states, states_line),
        stack_symbols=tuple(words("stack")),
        initial=numbers("initial"),
        accepting=numbers("accepting"),
        trans_neutral=trans_neutral,
        trans_open=trans_open,
        trans_close=trans_close,
    )
    raise_for_issues(validate(automaton))
    return automaton


def parse_didpda(text: str) -> Didpda:
    """
    Parse a document describing a deterministic automaton.

    Raises:
        AutomatonValidationError: If the automaton is not deterministic and complete.
    """
    return Didpda.from_nidpda(parse_automaton(text))


def _value(value: object) -> str:
    return "".join(str(value).split())


def render_report(results: Iterable[CheckResult]) -> str:
    """
    Render check results in the report format.

    Args:
        results (Iterable[CheckResult]): Results in output order.
    Returns:
        str: The header, one CHECK line per result and a summary line.
    """
    lines = [FORMAT_HEADER]
    failed = budget = 0
    for result in results:
        if result.status is CheckStatus.PASS:
            lines.append(f"CHECK {result.id} PASS")
        elif result.status is CheckStatus.BUDGET:
            budget += 1
            lines.append(f"CHECK {result.id} BUDGET limit={_value(result.limit)}")
        else:
            failed += 1
            lines.append(
                f"CHECK {result.id} FAIL "
                f"expected={_value(result.expected)} got={_value(result.observed)}"
            )
    if failed:
        lines.append(f"FAIL {failed}")
    elif budget:
        lines.append(f"BUDGET {budget}")
    else:
        lines.append("ALL PASS")
    return "\n".join(lines) + "\n"


def render_metrics(metrics: Mapping[str, int], header: bool = True) -> str:
    lines = [FORMAT_HEADER] if header else []
    lines.extend(f"METRIC {name} {value}" for name, value in metrics.items())
    return "\n".join(lines) + "\n"


def render_trace(steps: Iterable['TraceStep']) -> str:
    """Render trace steps as 'position token states height' lines."""
    lines = []
    for step in steps:
        states = ",".join(str(q) for q in sorted(step.states)) or "-"
        lines.append(f"{step.position} {step.token} {states} {step.height}")
    return "\n".join(lines) + ("\n" if lines else "")

