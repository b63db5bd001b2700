"""Command-line front end: ``tcont <subcommand> FILE [options]``.

Exit status is 0 on success, 1 when a verification fails and 2 on bad input.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from typing import Optional, Sequence, TextIO

from . import parser as surface
from .continuity import (
    DEFAULT_MAX_DEPTH,
    DEFAULT_SEED,
    MaxDepthExceeded,
    VerifyBudget,
    check_equivalence,
    modulus_report,
    sample_points,
    uc_modulus,
)
from .evaluate import DEFAULT_FUEL, EvalError, Machine, QueryLog, VExternal, parse_point
from .syntax import (
    BAIRE,
    Arrow,
    IllTyped,
    N,
    format_type,
    pretty_print,
    term_to_json,
    type_to_json,
    typecheck,
)
from .translate import TARGETS, TranslationError, modulus_term, translate_term, translate_type

GRAMMAR = """\
surface grammar:
  type ::= N | type -> type | type * type        (* binds tighter; -> is right-assoc)
  term ::= var | numeral | succ | rec[type] | fst | snd | pair term term
         | fun (var : type) ... => term | term term | ( term )
  prog ::= {let var = term ;}* term               (# starts a line comment)
point syntax:
  [a0,a1,...;const c]   or   [a0,...;cycle p0,p1,...]
common flags:
  --seed N  --fuel N  --budget N  --max-depth N  --json
"""


@dataclass(frozen=True)
class Config:
    seed: int = DEFAULT_SEED
    fuel: Optional[int] = DEFAULT_FUEL
    verify_budget: int = VerifyBudget().limit
    max_depth: int = DEFAULT_MAX_DEPTH
    output: str = "text"


class InputError(Exception):
    pass


class _ArgumentParser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        sys.stderr.write(GRAMMAR)
        self.exit(2, f"{self.prog}: error: {message}\n")


def _nonneg(text: str) -> int:
    value = int(text, 0)
    if value < 0:
        raise argparse.ArgumentTypeError("must be a natural number")
    return value


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=_nonneg, default=DEFAULT_SEED)
    common.add_argument("--fuel", type=_nonneg, default=DEFAULT_FUEL, help="step budget; 0 disables it")
    common.add_argument("--budget", type=_nonneg, default=VerifyBudget().limit, help="perturbation checks")
    common.add_argument("--max-depth", type=_nonneg, default=DEFAULT_MAX_DEPTH)
    common.add_argument("--json", action="store_true", help="machine-readable output")

    top = _ArgumentParser(
        prog="tcont",
        description="System T continuity workbench",
        epilog=GRAMMAR,
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    sub = top.add_subparsers(dest="command", required=True, parser_class=_ArgumentParser)

    def add(name, help_):
        p = sub.add_parser(name, parents=[common], help=help_, epilog=GRAMMAR,
                           formatter_class=argparse.RawDescriptionHelpFormatter)
        p.add_argument("file")
        return p

    add("check", "typecheck and print the type")
    p = add("translate", "print the translated term")
    p.add_argument("--target", choices=sorted(TARGETS), default="baire")
    p = add("eval", "evaluate, at a point if the program is a functional")
    p.add_argument("--point")
    p = add("modulus", "moduli of continuity at a point")
    p.add_argument("--point", required=True)
    p.add_argument("--verify", action=argparse.BooleanOptionalAction, default=True)
    add("modulus-term", "print the closed modulus-of-continuity term")
    add("uc-modulus", "modulus of uniform continuity on binary sequences")
    p = add("equiv", "check the translation against direct evaluation")
    p.add_argument("--points", type=_nonneg, default=50)
    return top


FUNCTIONAL = Arrow(BAIRE, N)


def _load(path: str):
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None
    term = surface.parse(text)
    return term, typecheck((), term)


def _require_functional(ty) -> None:
    if ty != FUNCTIONAL:
        raise InputError(f"expected a program of type {format_type(FUNCTIONAL)}, found {format_type(ty)}")


def _point(text: Optional[str]):
    if text is None:
        raise InputError("--point is required for a functional")
    try:
        return parse_point(text)
    except ValueError as exc:
        raise InputError(str(exc)) from None


def _emit(out: TextIO, config: Config, text: str, payload: dict) -> None:
    if config.output == "json":
        out.write(json.dumps(payload, sort_keys=True, indent=2) + "\n")
    else:
        out.write(text + "\n")


def _dispatch(args, config: Config, out: TextIO) -> int:
    term, ty = _load(args.file)
    fuel = config.fuel
    cmd = args.command

    if cmd == "check":
        _emit(out, config, format_type(ty), {"type": format_type(ty), "typeAst": type_to_json(ty)})
        return 0

    if cmd == "translate":
        target = TARGETS[args.target]
        result = translate_term(term, target)
        new_ty = translate_type(ty, target)
        _emit(out, config, pretty_print(result), {
            "target": args.target,
            "type": format_type(new_ty),
            "term": term_to_json(result),
        })
        return 0

    if cmd == "eval":
        machine = Machine(fuel)
        value = machine.eval(term)
        log = QueryLog()
        if ty == FUNCTIONAL:
            value = machine.apply(value, VExternal(_point(args.point), log))
        elif ty != N:
            raise InputError(f"cannot print a value of type {format_type(ty)}")
        queries = list(log.queried)
        text = f"value={value}" + (f" queries={queries}" if ty == FUNCTIONAL else "")
        _emit(out, config, text, {"value": value, "queries": queries})
        return 0

    _require_functional(ty)

    if cmd == "modulus":
        alpha = _point(args.point)
        budget = VerifyBudget(limit=config.verify_budget, seed=config.seed)
        if not args.verify:
            budget = VerifyBudget(limit=0, samples=0, seed=config.seed)
        report = modulus_report(term, alpha, budget, fuel)
        text = f"modulus_bb={report.modulus_bb} modulus_oracle={report.modulus_oracle}"
        if args.verify:
            text += f" verified={str(report.verified).lower()}"
            if report.counterexample is not None:
                text += f" counterexample={report.counterexample}"
        payload = report.to_json()
        if not args.verify:
            payload.update(verified=None, counterexample=None)
        _emit(out, config, text, payload)
        return 0 if report.verified or not args.verify else 1

    if cmd == "modulus-term":
        result = modulus_term(term)
        _emit(out, config, pretty_print(result), {
            "type": format_type(FUNCTIONAL),
            "source": pretty_print(result),
            "term": term_to_json(result),
        })
        return 0

    if cmd == "uc-modulus":
        report = uc_modulus(term, config.max_depth, fuel)
        _emit(out, config, f"uc_modulus={report.uc_modulus}", report.to_json())
        return 0

    if cmd == "equiv":
        report = check_equivalence(term, sample_points(args.points, config.seed), fuel=fuel)
        equal = len(report.cases) - len(report.mismatches)
        text = f"{equal}/{len(report.cases)} equal"
        for case in report.mismatches:
            text += f"\nmismatch at {case.alpha}: direct={case.direct} translated={case.translated}"
        _emit(out, config, text, report.to_json())
        return 0 if report.ok else 1

    raise InputError(f"unknown command {cmd!r}")


def run(argv: Optional[Sequence[str]] = None, out: TextIO = None, err: TextIO = None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    config = Config(
        seed=args.seed,
        fuel=args.fuel or None,
        verify_budget=args.budget,
        max_depth=args.max_depth,
        output="json" if args.json else "text",
    )
    try:
        return _dispatch(args, config, out)
    except MaxDepthExceeded as exc:
        err.write(f"tcont: {exc}\n")
        return 1
    except (InputError, surface.ParseError, IllTyped, TranslationError, EvalError) as exc:
        err.write(f"tcont: {exc}\n")
        return 2


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
