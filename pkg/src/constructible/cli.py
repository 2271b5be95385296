"""Command-line interface.

Exit codes: 0 success or verdict true, 1 verdict false, 2 bad input,
3 internal consistency failure.
"""

from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path
from typing import Any, Callable

from . import akbulut_king as ak
from .complexes import SimplexSet, SimplicialComplex, Stratification, euler_char
from .documents import (
    FIXTURE_PREFIX,
    complex_to_doc,
    dumps,
    function_from_doc,
    function_to_doc,
    loads,
    map_from_doc,
    map_to_doc,
    read_document,
    report_to_doc,
    resolve_complex,
    set_from_doc,
    set_to_doc,
    stratification_from_doc,
    stratification_to_doc,
    to_jsonable,
)
from .errors import AmbientMismatch, FormulaDisagreement, HalfNotIntegral, InputError, IntegerOverflow, NotEuler, ValidationError
from .fixtures import Fixture, fixture, fixture_names
from .functions import ConstructibleFunction, constant, integral
from .maps import SimplicialMap, pullback, pushforward
from .operators import chi_link_of_set, dual_op, half_link, half_omega, link_along, link_op, odd_witness, omega_op

log = logging.getLogger("constructible")

EXIT_OK, EXIT_FALSE, EXIT_INPUT, EXIT_CONSISTENCY = 0, 1, 2, 3


class Result:
    """What a subcommand produced: a JSON-able payload and an exit code."""

    def __init__(self, payload: Any, code: int = EXIT_OK) -> None:
        self.payload = payload
        self.code = code


class Context:
    """Lazily resolved inputs shared by the subcommands."""

    def __init__(self, args: argparse.Namespace) -> None:
        self.args = args
        self._fixture: Fixture | None = None
        self._complex: SimplicialComplex | None = None

    @property
    def source_fixture(self) -> Fixture | None:
        ref = self.args.complex
        if self._fixture is None and ref and ref.startswith(FIXTURE_PREFIX):
            self._fixture = fixture(ref[len(FIXTURE_PREFIX):])
        return self._fixture

    @property
    def complex(self) -> SimplicialComplex:
        if self._complex is None:
            if self.args.complex:
                self._complex = self.source_fixture.complex if self.source_fixture else resolve_complex(self.args.complex)
            elif self.args.function not in (None, "ones"):
                path = Path(self.args.function)
                self._complex = function_from_doc(read_document(path), base=path.parent).ambient
            else:
                raise ValidationError("--complex is required")
        return self._complex

    def function(self, on: SimplicialComplex | None = None) -> ConstructibleFunction:
        K = on if on is not None else self.complex
        ref = self.args.function
        if ref is None:
            fx = self.source_fixture
            if fx is not None and fx.function is not None and fx.function.ambient == K:
                return fx.function
            return constant(K)
        if ref == "ones":
            return constant(K)
        path = Path(ref)
        doc = read_document(path)
        phi = function_from_doc(doc, base=path.parent) if "complex" in doc else function_from_doc(doc, K)
        if phi.ambient != K:
            raise AmbientMismatch("the function document's complex differs from the one in use")
        return phi

    def stratification(self, required: bool = True) -> Stratification | None:
        if self.args.strat:
            path = Path(self.args.strat)
            strat = stratification_from_doc(read_document(path), self.complex, base=path.parent)
            return strat
        fx = self.source_fixture
        if fx is not None and fx.stratification is not None:
            return fx.stratification
        if required:
            raise ValidationError("--strat is required")
        return None

    def simplex_set(self, ref: str) -> SimplexSet:
        K = self.complex
        fx = self.source_fixture
        if fx is not None and ref in fx.sets:
            return fx.sets[ref]
        stripped = ref.lstrip()
        if stripped.startswith(("[", "{")):
            return set_from_doc(loads(ref), K)
        if Path(ref).is_file():
            return set_from_doc(read_document(ref), K)
        raise ValidationError(f"--set {ref!r} is neither a named set, inline JSON, nor a file")

    def sets(self) -> list[SimplexSet]:
        return [self.simplex_set(r) for r in self.args.set or []]

    def simplicial_map(self) -> SimplicialMap:
        if self.args.map:
            path = Path(self.args.map)
            return map_from_doc(read_document(path), base=path.parent)
        fx = self.source_fixture
        if fx is not None and fx.map is not None:
            return fx.map
        raise ValidationError("--map is required")


def _fn(phi: ConstructibleFunction) -> list:
    return [[list(s), v] for s, v in phi.items()]


# --- subcommands ------------------------------------------------------------------------


def cmd_integrate(ctx: Context) -> Result:
    return Result({"integral": integral(ctx.function())})


def cmd_link(ctx: Context) -> Result:
    phi = ctx.function()
    out = half_link(phi) if ctx.args.half else link_op(phi)
    return Result({"function": _fn(out)})


def cmd_dual(ctx: Context) -> Result:
    phi = ctx.function()
    if ctx.args.omega:
        out = half_omega(phi) if ctx.args.half else omega_op(phi)
    else:
        out = dual_op(phi)
    return Result({"function": _fn(out)})


def cmd_link_along(ctx: Context) -> Result:
    sets = ctx.sets()
    if len(sets) != 1:
        raise ValidationError("link-along takes exactly one --set")
    Y = sets[0]
    payload: dict[str, Any] = {"function": _fn(link_along(Y, ctx.function()))}
    if ctx.args.chi_in:
        payload["chi_link"] = chi_link_of_set(Y, ctx.simplex_set(ctx.args.chi_in))
    return Result(payload)


def cmd_pushforward(ctx: Context) -> Result:
    f = ctx.simplicial_map()
    phi = ctx.function(f.domain) if (ctx.args.function or ctx.args.complex) else constant(f.domain)
    return Result({"function": _fn(pushforward(f, phi))})


def cmd_pullback(ctx: Context) -> Result:
    f = ctx.simplicial_map()
    psi = constant(f.codomain) if ctx.args.function in (None, "ones") else ctx.function(f.codomain)
    return Result({"function": _fn(pullback(f, psi))})


def cmd_euler(ctx: Context) -> Result:
    bad = odd_witness(link_op(ctx.function()))
    if bad is None:
        return Result({"euler": True})
    return Result({"euler": False, "witness": {"simplex": list(bad[0]), "link_value": bad[1]}}, EXIT_FALSE)


def _check(report: ak.CheckReport) -> Result:
    return Result(report_to_doc(report), EXIT_OK if report.verdict else EXIT_FALSE)


def cmd_completely_euler(ctx: Context) -> Result:
    if ctx.args.function is not None:
        return _check(ak.completely_euler_dim2(ctx.function()))
    return _check(ak.completely_euler_dim3(ctx.complex))


def cmd_ak(ctx: Context) -> Result:
    return _check(ak.akbulut_king(ctx.complex))


def cmd_ak_stratified(ctx: Context) -> Result:
    return _check(ak.stratified_check(ctx.complex, ctx.stratification()))


def cmd_iterated_link(ctx: Context) -> Result:
    candidates = [ctx.simplex_set(r) for r in ctx.args.candidate or []]
    phi, rep = ak.iterated_link(ctx.complex, ctx.sets(), candidates)
    payload = {
        "function": _fn(phi),
        "k": rep.k,
        "min_valuation": rep.min_valuation,
        "divisible": rep.divisible,
        "classes": rep.classes,
    }
    return Result(payload, EXIT_OK if rep.divisible else EXIT_FALSE)


def cmd_fixture(ctx: Context) -> Result:
    fx = fixture(ctx.args.name)
    parts: dict[str, Any] = {"complex": complex_to_doc(fx.complex)}
    ref = FIXTURE_PREFIX + fx.name
    if fx.function is not None:
        parts["function"] = function_to_doc(fx.function, ref)
    if fx.stratification is not None:
        parts["stratification"] = stratification_to_doc(fx.stratification, ref)
    if fx.map is not None:
        parts["map"] = map_to_doc(fx.map)
    if fx.sets:
        parts["sets"] = {k: set_to_doc(v) for k, v in sorted(fx.sets.items())}
    if ctx.args.part:
        if ctx.args.part not in parts:
            raise ValidationError(f"fixture {fx.name!r} has no {ctx.args.part}")
        return Result(parts[ctx.args.part])
    parts["name"] = fx.name
    parts["euler_characteristic"] = euler_char(fx.complex)
    return Result(parts)


def cmd_selftest(ctx: Context) -> Result:
    from .selftest import run_selftest

    checks = run_selftest(seed=ctx.args.seed, rounds=ctx.args.rounds)
    failed = [c for c in checks if not c["ok"]]
    code = EXIT_CONSISTENCY if failed else EXIT_OK
    return Result({"checks": checks, "ok": not failed}, code)


# --- plumbing ---------------------------------------------------------------------------


def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--complex", help="complex document path, or fixture:NAME")
    p.add_argument("--function", help="function document path, or 'ones'")
    p.add_argument("--strat", help="stratification document path")
    p.add_argument("--set", action="append", help="named set, inline JSON list of simplices, or a file (repeatable)")
    p.add_argument("--map", help="simplicial map document path")
    p.add_argument("--format", choices=("json", "table"), default="table")
    p.add_argument("--out", help="write the result here instead of standard output")
    p.add_argument("--verbose", "-v", action="count", default=0)


COMMANDS: dict[str, tuple[Callable[[Context], Result], str]] = {
    "integrate": (cmd_integrate, "Euler integral of a function"),
    "link": (cmd_link, "link operator"),
    "dual": (cmd_dual, "duality operator (or omega)"),
    "link-along": (cmd_link_along, "link along a closed set"),
    "pushforward": (cmd_pushforward, "pushforward along a simplicial map"),
    "pullback": (cmd_pullback, "pullback along a simplicial map"),
    "euler": (cmd_euler, "is the function Euler"),
    "completely-euler": (cmd_completely_euler, "completely-Euler test"),
    "ak": (cmd_ak, "Akbulut-King conditions for a space of dimension at most 3"),
    "ak-stratified": (cmd_ak_stratified, "completely-Euler test for a stratified space"),
    "iterated-link": (cmd_iterated_link, "iterated links along sets, with 2-adic report"),
    "fixture": (cmd_fixture, "emit a named example"),
    "selftest": (cmd_selftest, "run the internal consistency checks"),
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="constructible", description="Calculus of constructible functions on simplicial complexes.")
    sub = parser.add_subparsers(dest="command", required=True)
    for name, (_, help_text) in COMMANDS.items():
        p = sub.add_parser(name, help=help_text)
        _add_common(p)
        if name == "link":
            p.add_argument("--half", action="store_true", help="halve the result (Euler input only)")
        elif name == "dual":
            p.add_argument("--omega", action="store_true", help="compute phi + D phi instead")
            p.add_argument("--half", action="store_true", help="with --omega, halve the result")
        elif name == "link-along":
            p.add_argument("--chi-in", help="also report the Euler characteristic of the link of the set in this closed set")
        elif name == "iterated-link":
            p.add_argument("--candidate", action="append", help="set whose top-adjacency classes are reported")
        elif name == "fixture":
            p.add_argument("name", choices=fixture_names())
            p.add_argument("--part", choices=("complex", "function", "stratification", "map", "sets"))
        elif name == "selftest":
            p.add_argument("--seed", type=int, default=0)
            p.add_argument("--rounds", type=int, default=40)
    return parser


def _table(payload: Any, indent: str = "") -> list[str]:
    lines: list[str] = []
    if isinstance(payload, dict):
        for k in sorted(payload):
            v = payload[k]
            if isinstance(v, (dict, list)) and v:
                lines.append(f"{indent}{k}:")
                lines.extend(_table(v, indent + "  "))
            else:
                lines.append(f"{indent}{k}: {_scalar(v)}")
    elif isinstance(payload, list):
        for item in payload:
            if isinstance(item, list) and len(item) == 2 and isinstance(item[0], list):
                lines.append(f"{indent}{' '.join(item[0]) or '-':<24} {_scalar(item[1])}")
            elif isinstance(item, dict):
                lines.append(f"{indent}-")
                lines.extend(_table(item, indent + "  "))
            else:
                lines.append(f"{indent}{_scalar(item)}")
    else:
        lines.append(f"{indent}{_scalar(payload)}")
    return lines


def _scalar(v: Any) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    if v is None:
        return "-"
    if isinstance(v, list):
        return "[]" if not v else " ".join(map(str, v))
    if isinstance(v, dict):
        return "{}"
    return str(v)


def render(payload: Any, fmt: str) -> str:
    if fmt == "json":
        return dumps(to_jsonable(payload))
    return "\n".join(_table(to_jsonable(payload))) + "\n"


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(
        level=logging.WARNING - 10 * min(args.verbose, 2),
        format="%(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
    )
    handler, _ = COMMANDS[args.command]
    try:
        result = handler(Context(args))
    except (FormulaDisagreement, HalfNotIntegral) as exc:
        print(f"error: consistency failure: {exc}", file=sys.stderr)
        return EXIT_CONSISTENCY
    except (InputError, NotEuler, IntegerOverflow) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    text = render(result.payload, args.format)
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    return result.code


if __name__ == "__main__":
    sys.exit(main())
