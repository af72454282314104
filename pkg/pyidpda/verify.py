"""Verification suites for the witness families and the determinization."""

import asyncio
from concurrent.futures import Executor
from dataclasses import asdict, dataclass, field
from functools import lru_cache
from random import Random
from time import perf_counter
from typing import (
    Any,
    Callable,
    Dict,
    Iterable,
    Iterator,
    List,
    Mapping,
    Optional,
    Sequence,
    Tuple,
)

import voluptuous as vol
from pyee.base import EventEmitter

from .alphabet import InputString, well_nested_strings
from .automaton import Didpda, Nidpda
from .check import CheckResult, CheckStatus
from .const import (
    EVENT_CHECK_COMPLETED,
    EVENT_SUITE_COMPLETED,
    PROFILES,
    TOKEN_CLOSE,
    TOKEN_CLOSE_DOUBLE,
    TOKEN_OPEN,
    TOKEN_OPEN_DOUBLE,
)
from .determinize import DeterminizationResult, determinize, metrics, summarize
from .document import render_report
from .equivalence import bounded_equivalence, product_inequivalence
from .exceptions import ExitCodes, ProfileError, RelationError, ResourceLimitError
from .gadget import (
    GadgetString,
    concat,
    family_open,
    gadget_anchors,
    gadget_f,
    gadget_g,
    gadget_h,
    gadget_w,
    gadget_y,
)
from .logger import logger
from .relation import BehaviorRelation
from .simulation import RelationCalculus, didpda_accepts, didpda_run, nidpda_accepts
from .witness import WitnessFamily, bit_width, build_witness

Case = Tuple[GadgetString, GadgetString, bool]


@lru_cache(maxsize=None)
def witness(family: str, n: int = 1, s: int = 1) -> Nidpda:
    return build_witness(WitnessFamily.from_value(family), n, s)


@lru_cache(maxsize=None)
def determinized(family: str, n: int = 1, s: int = 1) -> DeterminizationResult:
    """Determinize a witness once per process."""
    return determinize(witness(family, n, s))


def witness_name(family: str, n: int = 1, s: int = 1) -> str:
    if family == WitnessFamily.BNS.value:
        return f"B{n}s{s}"
    if family == WitnessFamily.B12.value:
        return "B12"
    return f"{family}{n}"


class _Timer:
    def __init__(self) -> None:
        self.started = perf_counter()

    def lap(self) -> float:
        now = perf_counter()
        elapsed, self.started = now - self.started, now
        return elapsed


def _rng(seed: int, label: str) -> Random:
    return Random(f"{seed}:{label}")


def _nonempty_relations(n: int) -> List[BehaviorRelation]:
    return [r for r in BehaviorRelation.all_relations(n) if r]


def _acceptance(
    check_id: str,
    a: Nidpda,
    calculus: RelationCalculus,
    d: Didpda,
    cases: Iterable[Case],
    timer: _Timer,
) -> Tuple[CheckResult, Dict[InputString, List[bool]]]:
    """
    Evaluate prefix.suffix strings by frontier, relations and the determinization.

    Returns:
        Tuple[CheckResult, Dict[InputString, List[bool]]]: The tally and, per prefix, the
            frontier verdicts in case order.
    """
    total = agreed = 0
    first_failure: Optional[str] = None
    verdicts: Dict[InputString, List[bool]] = {}
    for prefix, suffix, expected in cases:
        w = concat(prefix, suffix).tokens
        by_frontier = nidpda_accepts(a, w)
        by_relation = calculus.accepts(calculus.run(w))
        by_didpda = didpda_accepts(d, w)
        total += 1
        if by_frontier == by_relation == by_didpda == expected:
            agreed += 1
        elif first_failure is None:
            first_failure = str(w)
            logger.debug(
                "%s: %s expected %s, frontier %s, relation %s, didpda %s",
                check_id, w, expected, by_frontier, by_relation, by_didpda,
            )
        verdicts.setdefault(prefix.tokens, []).append(by_frontier)
    if agreed == total:
        return CheckResult(check_id, CheckStatus.PASS, str(total), str(agreed), timer.lap()), verdicts
    return (
        CheckResult(
            check_id, CheckStatus.FAIL, str(total), f"{agreed};first={first_failure}", timer.lap()
        ),
        verdicts,
    )


def _injectivity(
    name: str,
    d: Didpda,
    prefixes: Sequence[GadgetString],
    verdicts: Mapping[InputString, List[bool]],
    timer: _Timer,
) -> List[CheckResult]:
    """Outcome injectivity of the prefixes, and agreement of suffix verdicts on shared outcomes."""
    groups: Dict[Tuple[object, Tuple[str, ...]], List[InputString]] = {}
    for prefix in prefixes:
        groups.setdefault(didpda_run(d, prefix.tokens), []).append(prefix.tokens)
    conflicts = sum(
        1 for group in groups.values()
        if len({tuple(verdicts.get(key, ())) for key in group}) > 1
    )
    return [
        CheckResult.compare(f"{name}.injective", len(prefixes), len(groups), timer.lap()),
        CheckResult.compare(f"{name}.sound", 0, conflicts, timer.lap()),
    ]


def check_improvement(results: Mapping[str, DeterminizationResult]) -> List[CheckResult]:
    """No stack symbol of any determinization may carry the empty relation."""
    checks = []
    for name, result in sorted(results.items()):
        timer = _Timer()
        checks.append(
            CheckResult.compare(f"improvement.{name}", 0, len(result.empty_symbols), timer.lap())
        )
    return checks


def state_bound_string(
    relation: BehaviorRelation, i: int, j: int, n: int
) -> Tuple[GadgetString, GadgetString]:
    """Split # x_push w_R y_j # x_pop y_i into the prefix # x_push w_R and the rest."""
    x_push, x_pop = gadget_anchors(n)
    guess = GadgetString(InputString(("#",)), "#")
    prefix = concat(guess, x_push, gadget_w(relation, n))
    return prefix, concat(gadget_y(j, n), guess, x_pop, gadget_y(i, n))


def check_state_bound(n: int, samples: int = 200, seed: int = 0) -> List[CheckResult]:
    """
    Check that A_n needs exactly 2^(n*n) deterministic states.

    Covers the reachable state count of det(A_n), acceptance of
    # x_push w_R y_j # x_pop y_i iff (i, j) is in R (exhaustive for n <= 2,
    `samples` seeded triples otherwise) and distinct states after every
    prefix # x_push w_R.
    """
    name = witness_name("A", n)
    timer = _Timer()
    a = witness("A", n)
    result = determinized("A", n)
    d = result.automaton
    bound = 2 ** (n * n)
    summary = summarize(d)
    checks = [
        CheckResult.compare(
            f"states.{name}.reachable", bound, metrics(result, summary)["reachable_states"], timer.lap()
        )
    ]

    relations = list(BehaviorRelation.all_relations(n))
    if n <= 2:
        triples = [(r, i, j) for r in relations for i in range(n) for j in range(n)]
    else:
        rng = _rng(seed, f"states.{name}")
        triples = [
            (rng.choice(relations), rng.randrange(n), rng.randrange(n)) for _ in range(samples)
        ]
    cases = []
    for relation, i, j in triples:
        prefix, suffix = state_bound_string(relation, i, j, n)
        cases.append((prefix, suffix, relation.member(i, j)))
    tally, _ = _acceptance(f"states.{name}.acceptance", a, RelationCalculus(a), d, cases, timer)
    checks.append(tally)

    reached = {didpda_run(d, state_bound_string(r, 0, 0, n)[0].tokens)[0] for r in relations}
    checks.append(CheckResult.compare(f"states.{name}.distinct", bound, len(reached), timer.lap()))
    checks.extend(check_improvement({name: result}))
    return checks


def _sampled_tuples(
    rng: Random, n: int, m: int, s: int, count: int
) -> Iterator[Tuple[List[BehaviorRelation], List[int]]]:
    upper = 2 ** (n * n)
    for _ in range(count):
        relations = [BehaviorRelation(n, rng.randrange(1, upper)) for _ in range(m)]
        indices = [rng.randrange(s) for _ in range(m + 1)]
        yield relations, indices


def _fg_cases(relations: Sequence[BehaviorRelation], indices: Sequence[int], n: int, s: int) -> List[Case]:
    m = len(relations)
    f = gadget_f(relations, indices, n, s)
    return [
        (f, gadget_g(i, j, k, m, n, family_open(s)), relations[k - 1].member(i, j))
        for k in range(1, m + 1)
        for i in range(n)
        for j in range(n)
    ]


def _fh_cases(relations: Sequence[BehaviorRelation], indices: Sequence[int], n: int, s: int) -> List[Case]:
    m = len(relations)
    f = gadget_f(relations, indices, n, s)
    return [
        (f, gadget_h(k, x, m, n, s), bool(indices[k - 1] >> x & 1))
        for k in range(1, m + 2)
        for x in range(bit_width(s))
        if x // n < n
    ]


def check_single_bracket_stack_bound(
    n: int = 2, m_max: int = 3, samples: int = 100, seed: int = 0
) -> List[CheckResult]:
    """
    Check that B_n needs 2^(n*n)-1 stack symbols.

    Covers reachable pushed symbols of det(B_n), acceptance of f.g iff
    (i, j) is in R_k (exhaustive for m = 1, `samples` seeded tuples for
    2 <= m <= m_max) and outcome injectivity over all f with m = 1.
    """
    name = witness_name("B", n)
    timer = _Timer()
    a = witness("B", n)
    result = determinized("B", n)
    d = result.automaton
    calculus = RelationCalculus(a)
    checks = [
        CheckResult.compare(
            f"stack.{name}.pushed", 2 ** (n * n) - 1, len(summarize(d).pushed), timer.lap()
        )
    ]

    relations = _nonempty_relations(n)
    cases = [case for r in relations for case in _fg_cases([r], [0, 0], n, 1)]
    tally, verdicts = _acceptance(f"stack.{name}.fg.m1", a, calculus, d, cases, timer)
    checks.append(tally)
    for m in range(2, m_max + 1):
        rng = _rng(seed, f"stack.{name}.m{m}")
        sampled = [
            case
            for rs, _ in _sampled_tuples(rng, n, m, 1, samples)
            for case in _fg_cases(rs, [0] * (m + 1), n, 1)
        ]
        checks.append(_acceptance(f"stack.{name}.fg.m{m}", a, calculus, d, sampled, timer)[0])

    prefixes = [gadget_f([r], [0, 0], n) for r in relations]
    checks.extend(_injectivity(f"stack.{name}", d, prefixes, verdicts, timer))
    checks.extend(check_improvement({name: result}))
    return checks


def check_indexed_bracket_stack_bound(
    n: int = 2, s: int = 2, m_max: int = 2, samples: int = 100, seed: int = 0
) -> List[CheckResult]:
    """
    Check that B_{n,s} needs s(2^(n*n)-1) stack symbols.

    Covers reachable pushed symbols of det(B_{n,s}), f.g acceptance iff
    (i, j) is in R_k, f.h acceptance iff bit x of l_k is set (exhaustive for
    m = 1, sampled for m = 2) and outcome injectivity over all s^2 (2^(n*n)-1)
    strings f with m = 1.
    """
    name = witness_name("Bns", n, s)
    timer = _Timer()
    a = witness("Bns", n, s)
    result = determinized("Bns", n, s)
    d = result.automaton
    calculus = RelationCalculus(a)
    checks = [
        CheckResult.compare(
            f"brackets.{name}.pushed", s * (2 ** (n * n) - 1), len(summarize(d).pushed), timer.lap()
        )
    ]

    relations = _nonempty_relations(n)
    pairs = [[first, second] for first in range(s) for second in range(s)]
    fg = [case for r in relations for ls in pairs for case in _fg_cases([r], ls, n, s)]
    fh = [case for r in relations for ls in pairs for case in _fh_cases([r], ls, n, s)]
    fg_tally, fg_verdicts = _acceptance(f"brackets.{name}.fg.m1", a, calculus, d, fg, timer)
    fh_tally, fh_verdicts = _acceptance(f"brackets.{name}.fh.m1", a, calculus, d, fh, timer)
    checks.extend([fg_tally, fh_tally])

    if m_max >= 2:
        rng = _rng(seed, f"brackets.{name}.m2")
        tuples = list(_sampled_tuples(rng, n, 2, s, samples))
        sampled_fg = [case for rs, ls in tuples for case in _fg_cases(rs, ls, n, s)]
        sampled_fh = [case for rs, ls in tuples for case in _fh_cases(rs, ls, n, s)]
        checks.append(_acceptance(f"brackets.{name}.fg.m2", a, calculus, d, sampled_fg, timer)[0])
        checks.append(_acceptance(f"brackets.{name}.fh.m2", a, calculus, d, sampled_fh, timer)[0])

    verdicts = {key: fg_verdicts[key] + fh_verdicts.get(key, []) for key in fg_verdicts}
    prefixes = [gadget_f([r], ls, n, s) for r in relations for ls in pairs]
    checks.extend(_injectivity(f"brackets.{name}", d, prefixes, verdicts, timer))
    checks.extend(check_improvement({name: result}))
    return checks


MATCHING_CLOSE = {TOKEN_OPEN: TOKEN_CLOSE, TOKEN_OPEN_DOUBLE: TOKEN_CLOSE_DOUBLE}


def types_match(w: InputString) -> bool:
    """Whether every bracket of w is closed by the bracket of its own type."""
    expected: List[str] = []
    for token in w:
        if token in MATCHING_CLOSE:
            expected.append(MATCHING_CLOSE[token])
        elif not expected or expected.pop() != token:
            return False
    return not expected


def check_b12(max_len: int = 12) -> List[CheckResult]:
    """Check the two-bracket automaton: state count, two pushed symbols, type matching."""
    timer = _Timer()
    a = witness("B12")
    result = determinized("B12")
    d = result.automaton
    calculus = RelationCalculus(a)
    states = d.n_states
    checks = [
        CheckResult(
            "b12.states",
            CheckStatus.PASS if states >= 2 else CheckStatus.FAIL,
            ">=2",
            str(states),
            timer.lap(),
        ),
        CheckResult.compare("b12.pushed", 2, len(summarize(d).pushed), timer.lap()),
    ]
    cases = []
    empty = GadgetString(InputString(), "")
    for w in well_nested_strings(a.alphabet, max_len):
        cases.append((GadgetString(w, "enumerated"), empty, types_match(w)))
    checks.append(_acceptance("b12.oracle", a, calculus, d, cases, timer)[0])
    checks.extend(check_improvement({"B12": result}))
    return checks


def check_equivalence(family: str, n: int, s: int, max_len: int) -> List[CheckResult]:
    """Bounded equivalence of a witness with its determinization."""
    name = witness_name(family, n, s)
    return [
        bounded_equivalence(
            witness(family, n, s), determinized(family, n, s).automaton, max_len, f"equiv.{name}"
        )
    ]


def check_product() -> List[CheckResult]:
    """
    Exact equivalence through the product search.

    det(A_2) is equivalent to itself and to the determinization of B_2 without
    `>>`; a copy with the flag of the full-relation state flipped yields a
    counterexample that replays to different verdicts.
    """
    timer = _Timer()
    result = determinized("A", 2)
    d = result.automaton
    checks = [CheckResult.compare("product.A2.self", None, product_inequivalence(d, d), timer.lap())]

    restricted = determinize(witness("B", 2).restrict([TOKEN_CLOSE_DOUBLE])).automaton
    checks.append(
        CheckResult.compare("product.B2.restricted", None, product_inequivalence(restricted, d), timer.lap())
    )

    flipped = flip_accepting(result, BehaviorRelation.full(2))
    counterexample = product_inequivalence(d, flipped)
    replayed = counterexample is not None and (
        didpda_accepts(d, counterexample) != didpda_accepts(flipped, counterexample)
    )
    checks.append(
        CheckResult(
            "product.A2.flipped",
            CheckStatus.PASS if replayed else CheckStatus.FAIL,
            "counterexample",
            "none" if counterexample is None else str(counterexample) or "(empty)",
            timer.lap(),
        )
    )
    return checks


def flip_accepting(result: DeterminizationResult, relation: BehaviorRelation) -> Didpda:
    """Copy of the determinization with the acceptance of one labelled state inverted."""
    d = result.automaton
    q = result.state_of(relation)
    if q is None:
        raise RelationError(f"no state labelled {relation}")
    return d.with_accepting(d.accepting ^ {q})


def _positive_int(least: int = 0) -> vol.All:
    return vol.All(int, vol.Range(min=least))


PROFILE_SCHEMA = vol.Schema(
    {
        vol.Required("n_values"): vol.All([vol.All(int, vol.Range(min=1, max=3))], vol.Length(min=1)),
        vol.Required("bracket_n"): vol.All(int, vol.Range(min=2, max=3)),
        vol.Required("s_values"): [vol.All(int, vol.Range(min=2))],
        vol.Required("m_max"): _positive_int(1),
        vol.Required("max_len"): _positive_int(),
        vol.Required("max_len_wide"): _positive_int(),
        vol.Required("samples"): _positive_int(1),
        vol.Required("tuple_samples"): _positive_int(1),
        vol.Required("seed"): int,
    }
)


@dataclass(frozen=True)
class SuiteProfile:
    """Budgets of a verification run."""

    n_values: Tuple[int, ...] = (1, 2, 3)
    bracket_n: int = 2
    s_values: Tuple[int, ...] = (2, 3, 4)
    m_max: int = 3
    max_len: int = 12
    max_len_wide: int = 10
    samples: int = 200
    tuple_samples: int = 100
    seed: int = 0

    @classmethod
    def from_mapping(cls, data: Mapping[str, Any]) -> 'SuiteProfile':
        """
        Validate a profile mapping.

        Args:
            data (Mapping[str, Any]): Profile keys and values.
        Returns:
            SuiteProfile: The validated profile.
        Raises:
            ProfileError: If a key is missing or a value is out of range, including
                an s above 2^(n*n) for the bracket automata.
        """
        try:
            valid = PROFILE_SCHEMA(dict(data))
        except vol.Invalid as err:
            raise ProfileError(f"invalid profile: {err}") from err
        bound = 2 ** (valid["bracket_n"] ** 2)
        for s in valid["s_values"]:
            if s > bound:
                raise ProfileError(f"s={s} exceeds 2^(n*n) = {bound} for n={valid['bracket_n']}")
        valid["n_values"] = tuple(valid["n_values"])
        valid["s_values"] = tuple(valid["s_values"])
        return cls(**valid)

    @classmethod
    def named(cls, name: str) -> 'SuiteProfile':
        if name not in PROFILES:
            raise ProfileError(f"unknown profile {name!r}, expected one of {', '.join(PROFILES)}")
        return cls.from_mapping(PROFILES[name])

    def with_overrides(self, **overrides: Any) -> 'SuiteProfile':
        """Return a revalidated copy with the non-None overrides applied."""
        data = asdict(self)
        data.update({key: value for key, value in overrides.items() if value is not None})
        data["n_values"] = list(data["n_values"])
        data["s_values"] = list(data["s_values"])
        return SuiteProfile.from_mapping(data)


Job = Tuple[str, Callable[..., List[CheckResult]], Tuple[Any, ...]]


def run_job(job_id: str, func: Callable[..., List[CheckResult]], args: Tuple[Any, ...]) -> List[CheckResult]:
    """Run one job, turning resource exhaustion into a BUDGET result."""
    started = perf_counter()
    try:
        return func(*args)
    except ResourceLimitError as err:
        logger.warning("%s stopped: %s", job_id, err)
        return [CheckResult.budget(job_id, err.limit, perf_counter() - started)]


@dataclass(frozen=True)
class SuiteReport:
    results: Tuple[CheckResult, ...] = field(default_factory=tuple)

    @property
    def text(self) -> str:
        return render_report(self.results)

    @property
    def exit_code(self) -> int:
        statuses = {result.status for result in self.results}
        if CheckStatus.FAIL in statuses:
            return ExitCodes.CHECK_FAILED
        if CheckStatus.BUDGET in statuses:
            return ExitCodes.BUDGET
        return ExitCodes.SUCCESS


class SuiteRunner(EventEmitter):
    """
    Runs the verification jobs of a profile on an executor.

    Emits `check_completed` with every CheckResult as its job finishes and
    `suite_completed` with the SuiteReport at the end.
    """

    def __init__(self, profile: SuiteProfile, executor: Optional[Executor] = None):
        super().__init__()
        self.profile = profile
        self.executor = executor

    def jobs(self) -> List[Job]:
        p = self.profile
        jobs: List[Job] = []
        for n in p.n_values:
            jobs.append((f"states.A{n}", check_state_bound, (n, p.samples, p.seed)))
        jobs.append(
            (f"stack.B{p.bracket_n}", check_single_bracket_stack_bound,
             (p.bracket_n, p.m_max, p.tuple_samples, p.seed))
        )
        for s in p.s_values:
            jobs.append(
                (f"brackets.B{p.bracket_n}s{s}", check_indexed_bracket_stack_bound,
                 (p.bracket_n, s, min(p.m_max, 2), p.tuple_samples, p.seed))
            )
        jobs.append(("b12", check_b12, (p.max_len,)))
        for n in p.n_values:
            jobs.append(
                (f"equiv.A{n}", check_equivalence, ("A", n, 1, p.max_len if n <= 2 else p.max_len_wide))
            )
        jobs.append((f"equiv.B{p.bracket_n}", check_equivalence, ("B", p.bracket_n, 1, p.max_len)))
        jobs.append(
            (f"equiv.B{p.bracket_n}s2", check_equivalence, ("Bns", p.bracket_n, 2, p.max_len_wide))
        )
        jobs.append(("equiv.B12", check_equivalence, ("B12", 1, 1, p.max_len)))
        jobs.append(("product", check_product, ()))
        return jobs

    async def run(self) -> SuiteReport:
        """
        Run every job and collect the results in id order.

        Returns:
            SuiteReport: All results, sorted by id.
        """
        loop = asyncio.get_running_loop()
        pending = [
            loop.run_in_executor(self.executor, run_job, job_id, func, args)
            for job_id, func, args in self.jobs()
        ]
        logger.debug("running %d verification jobs", len(pending))
        results: List[CheckResult] = []
        for completed in asyncio.as_completed(pending):
            for result in await completed:
                logger.debug("%s %s in %.3fs", result.id, result.status.value, result.runtime)
                self.emit(EVENT_CHECK_COMPLETED, result)
                results.append(result)
        report = SuiteReport(tuple(sorted(results, key=lambda r: r.id)))
        self.emit(EVENT_SUITE_COMPLETED, report)
        return report


def run_suite(profile: SuiteProfile, executor: Optional[Executor] = None) -> SuiteReport:
    """Run a profile to completion from synchronous code."""
    return asyncio.run(SuiteRunner(profile, executor).run())
