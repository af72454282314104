"""Command-line front end."""

import argparse
import asyncio
import logging
import sys
from pathlib import Path
from typing import Any, Callable, List, Optional, Sequence

import voluptuous as vol

from .__about__ import __version__
from .alphabet import InputString
from .automaton import Didpda, Nidpda, validate_deterministic
from .check import CheckResult
from .const import EVENT_CHECK_COMPLETED, PROFILE_DESK, PROFILES, TRACE_LIMIT
from .determinize import determinize, metrics, summarize
from .document import (
    parse_automaton,
    render_metrics,
    render_trace,
    serialize_automaton,
    tokenize,
)
from .equivalence import product_inequivalence
from .exceptions import ExitCodes, IdpdaException, ProfileError
from .gadget import (
    GadgetString,
    family_open,
    gadget_anchors,
    gadget_f,
    gadget_g,
    gadget_h,
    gadget_u,
    gadget_v,
    gadget_w,
    gadget_y,
    gadget_y_explicit,
)
from .logger import logger
from .relation import BehaviorRelation
from .simulation import nidpda_accepts, trace
from .verify import SuiteProfile, SuiteReport, SuiteRunner
from .witness import WitnessFamily, build_witness

GADGETS = ("u", "v", "w", "y", "y_explicit", "anchors", "f", "g", "h")

_INDEX = vol.Any(None, vol.All(int, vol.Range(min=0)))
_COUNT = vol.Any(None, vol.All(int, vol.Range(min=1)))

_WITNESS_SCHEMA = vol.Schema(
    {vol.Required("n"): vol.All(int, vol.Range(min=1)), vol.Required("s"): vol.All(int, vol.Range(min=1))},
    extra=vol.ALLOW_EXTRA,
)
_GADGET_SCHEMA = vol.Schema(
    {
        vol.Required("n"): vol.All(int, vol.Range(min=1)),
        vol.Required("s"): vol.All(int, vol.Range(min=1)),
        vol.Optional("m"): _COUNT,
        vol.Optional("i"): _INDEX,
        vol.Optional("j"): _INDEX,
        vol.Optional("k"): _COUNT,
        vol.Optional("x"): _INDEX,
    },
    extra=vol.ALLOW_EXTRA,
)
_VERIFY_SCHEMA = vol.Schema(
    {
        vol.Optional("n"): vol.Any(None, vol.All(int, vol.Range(min=1, max=3))),
        vol.Optional("s"): vol.Any(None, vol.All(int, vol.Range(min=2))),
        vol.Optional("m"): _COUNT,
        vol.Optional("max_len"): vol.Any(None, vol.All(int, vol.Range(min=0))),
        vol.Optional("seed"): vol.Any(None, int),
    },
    extra=vol.ALLOW_EXTRA,
)


def validate_args(schema: vol.Schema, args: argparse.Namespace) -> None:
    """Validate parsed arguments against a subcommand schema."""
    try:
        schema(vars(args))
    except vol.Invalid as err:
        raise ProfileError(f"invalid arguments: {err}") from err


def _read(path: str) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as err:
        raise ProfileError(f"cannot read {path}: {err.strerror}") from err


def _emit(text: str, out: Optional[str]) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        Path(out).write_text(text, encoding="utf-8")


def _require(args: argparse.Namespace, *names: str) -> List[Any]:
    missing = [f"--{name.replace('_', '-')}" for name in names if getattr(args, name) is None]
    if missing:
        raise ProfileError(f"{args.name} needs {' '.join(missing)}")
    return [getattr(args, name) for name in names]


def _relation(text: str, n: int) -> BehaviorRelation:
    relation = BehaviorRelation.from_bitstring(text)
    if relation.n != n:
        raise ProfileError(f"relation {text} is over {relation.n} states, expected n={n}")
    return relation


def _as_deterministic(a: Nidpda) -> Didpda:
    if validate_deterministic(a).valid:
        return Didpda.from_nidpda(a)
    logger.debug("input automaton is nondeterministic, determinizing")
    return determinize(a).automaton


def cmd_witness(args: argparse.Namespace) -> int:
    validate_args(_WITNESS_SCHEMA, args)
    automaton = build_witness(WitnessFamily.from_value(args.family), args.n, args.s)
    _emit(serialize_automaton(automaton), args.out)
    return ExitCodes.SUCCESS


def build_gadget(args: argparse.Namespace) -> List[GadgetString]:
    """
    Build the gadget named by args.name.

    Returns:
        List[GadgetString]: One string, or x_push and x_pop for `anchors`.
    Raises:
        ProfileError: If a parameter the gadget needs is missing.
        GadgetParameterError: If the parameters are out of range.
    """
    n, s, name = args.n, args.s, args.name
    open_token = family_open(s)
    if name == "u":
        (i,) = _require(args, "i")
        return [gadget_u(i, n, open_token)]
    if name == "v":
        (j,) = _require(args, "j")
        return [gadget_v(j, n)]
    if name == "w":
        (text,) = _require(args, "relation")
        return [gadget_w(_relation(text, n), n, open_token)]
    if name == "y":
        (i,) = _require(args, "i")
        return [gadget_y(i, n, open_token)]
    if name == "y_explicit":
        (i,) = _require(args, "i")
        return [gadget_y_explicit(i, n)]
    if name == "anchors":
        return list(gadget_anchors(n, open_token))
    if name == "f":
        texts, indices = _require(args, "relations", "indices")
        relations = [_relation(text, n) for text in texts.split(",")]
        try:
            ells = [int(ell) for ell in indices.split(",")]
        except ValueError as err:
            raise ProfileError(f"bad bracket indices {indices!r}") from err
        return [gadget_f(relations, ells, n, s)]
    if name == "g":
        i, j, k, m = _require(args, "i", "j", "k", "m")
        return [gadget_g(i, j, k, m, n, open_token)]
    k, x, m = _require(args, "k", "x", "m")
    return [gadget_h(k, x, m, n, s)]


def cmd_gadget(args: argparse.Namespace) -> int:
    validate_args(_GADGET_SCHEMA, args)
    _emit("".join(f"{gadget}\n" for gadget in build_gadget(args)), args.out)
    return ExitCodes.SUCCESS


def cmd_determinize(args: argparse.Namespace) -> int:
    a = parse_automaton(_read(args.automaton))
    result = determinize(a)
    counts = metrics(result, summarize(result.automaton))
    _emit(
        serialize_automaton(result.automaton) + render_metrics(counts, header=False),
        args.out,
    )
    return ExitCodes.SUCCESS


def cmd_run(args: argparse.Namespace) -> int:
    a = parse_automaton(_read(args.automaton))
    w: InputString = tokenize(args.input, a.alphabet)
    text = render_trace(trace(a, w, TRACE_LIMIT)) if args.trace else ""
    text += "accept\n" if nidpda_accepts(a, w) else "reject\n"
    _emit(text, args.out)
    return ExitCodes.SUCCESS


def cmd_equiv(args: argparse.Namespace) -> int:
    if len(args.automaton) != 2:
        raise ProfileError("equiv needs --automaton twice")
    first, second = (_as_deterministic(parse_automaton(_read(path))) for path in args.automaton)
    counterexample = product_inequivalence(first, second)
    if counterexample is None:
        _emit("equivalent\n", args.out)
        return ExitCodes.SUCCESS
    _emit(f"counterexample {counterexample}\n", args.out)
    return ExitCodes.CHECK_FAILED


def verify_profile(args: argparse.Namespace) -> SuiteProfile:
    """Named profile with the command-line overrides applied; --max-len bounds every equivalence check."""
    return SuiteProfile.named(args.profile).with_overrides(
        n_values=None if args.n is None else [args.n],
        s_values=None if args.s is None else [args.s],
        m_max=args.m,
        max_len=args.max_len,
        max_len_wide=args.max_len,
        seed=args.seed,
    )


def cmd_verify(args: argparse.Namespace) -> int:
    validate_args(_VERIFY_SCHEMA, args)
    report = _run_with_progress(verify_profile(args))
    _emit(report.text, args.out)
    return report.exit_code


def _run_with_progress(profile: SuiteProfile) -> SuiteReport:
    runner = SuiteRunner(profile)

    @runner.on(EVENT_CHECK_COMPLETED)
    def log_check(result: CheckResult) -> None:
        logger.info("%s %s", result.id, result.status.value)

    return asyncio.run(runner.run())


Handler = Callable[[argparse.Namespace], int]


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pyidpda", description="Input-driven pushdown automata toolkit."
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("-v", "--verbose", action="store_true", help="debug logging on stderr")
    sub = parser.add_subparsers(dest="command", required=True)

    def command(name: str, handler: Handler, help_text: str) -> argparse.ArgumentParser:
        p = sub.add_parser(name, help=help_text)
        p.set_defaults(handler=handler)
        p.add_argument("--out", help="write output to this path instead of stdout")
        return p

    p = command("witness", cmd_witness, "emit a witness automaton document")
    p.add_argument("family", choices=[family.value for family in WitnessFamily])
    p.add_argument("--n", type=int, default=1)
    p.add_argument("--s", type=int, default=1)

    p = command("gadget", cmd_gadget, "emit a gadget string")
    p.add_argument("name", choices=GADGETS)
    p.add_argument("--n", type=int, default=2)
    p.add_argument("--s", type=int, default=1)
    for flag in ("m", "i", "j", "k", "x"):
        p.add_argument(f"--{flag}", type=int)
    p.add_argument("--relation", help="row-major bitstring of n*n bits")
    p.add_argument("--relations", help="comma-separated bitstrings")
    p.add_argument("--indices", help="comma-separated bracket indices")

    p = command("determinize", cmd_determinize, "determinize an automaton document")
    p.add_argument("--automaton", required=True)

    p = command("run", cmd_run, "decide acceptance of an input string")
    p.add_argument("--automaton", required=True)
    p.add_argument("--input", required=True)
    p.add_argument("--trace", action="store_true", help="print one line per symbol")

    p = command("equiv", cmd_equiv, "compare the languages of two automata")
    p.add_argument("--automaton", action="append", default=[])

    p = command("verify", cmd_verify, "run the verification suite")
    p.add_argument("--profile", choices=sorted(PROFILES), default=PROFILE_DESK)
    p.add_argument("--n", type=int)
    p.add_argument("--s", type=int)
    p.add_argument("--m", type=int)
    p.add_argument("--max-len", dest="max_len", type=int, help="string length bound for every equivalence check")
    p.add_argument("--seed", type=int)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    """
    Parse arguments and dispatch to a subcommand.

    Args:
        argv (Optional[Sequence[str]]): Arguments without the program name; sys.argv by default.
    Returns:
        int: The process exit status.
    """
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(
        stream=sys.stderr,
        level=logging.DEBUG if args.verbose else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
    )
    handler: Handler = args.handler
    try:
        return handler(args)
    except IdpdaException as err:
        print(f"pyidpda: {err}", file=sys.stderr)
        return ExitCodes.get_exit_code(err)

