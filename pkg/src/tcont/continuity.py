"""Moduli of continuity: computation, falsification by perturbation, and
uniform moduli on Cantor space found by iterative deepening over binary prefixes.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from typing import Optional, Sequence, Union

from .evaluate import (
    Constant,
    Cyclic,
    EvalTypeError,
    Machine,
    Point,
    QueryLog,
    Value,
    VExternal,
)
from .syntax import (
    FST,
    App,
    Arrow,
    FiniteType,
    IllTyped,
    N,
    Term,
    TypeMismatch,
    format_type,
    pretty_print,
    typecheck,
)
from .translate import (
    BAIRE_TARGET,
    FUNCTIONAL,
    IllTypedSource,
    Target,
    generic_application,
    modulus_term,
)

DEFAULT_SEED = 0xC0FFEE
DEFAULT_MAX_DEPTH = 16


class MaxDepthExceeded(Exception):
    """The uniform-modulus search bound was too small. Not evidence of discontinuity."""

    def __init__(self, max_depth: int):
        self.max_depth = max_depth
        super().__init__(f"no uniform modulus found up to depth {max_depth}")


# ---------------------------------------------------------------- running compiled functionals


class Compiled:
    """A closed functional evaluated once to a value, then applied to many points."""

    def __init__(self, term: Term, fuel: Optional[int] = None):
        self.term = term
        self.fuel = fuel
        self.value = Machine(fuel).eval(term)

    def __call__(self, alpha: Union[Point, int]) -> tuple[int, QueryLog]:
        machine = Machine(self.fuel)
        log = QueryLog()
        arg: Value = alpha if isinstance(alpha, int) else VExternal(alpha, log)
        result = machine.apply(self.value, arg)
        if type(result) is not int:
            raise EvalTypeError("functional did not return a numeral")
        return result, log


def _require_type(f: Term, expected: FiniteType) -> None:
    try:
        ty = typecheck((), f)
    except IllTyped as exc:
        raise IllTypedSource(exc) from exc
    if ty != expected:
        raise IllTypedSource(TypeMismatch(format_type(expected), format_type(ty), ()))


# ---------------------------------------------------------------- points


def sample_points(n: int, seed: int = DEFAULT_SEED, max_value: int = 6, max_prefix: int = 8) -> list[Point]:
    """``n`` reproducible Baire points with small values."""
    rng = random.Random(seed)
    points = []
    for _ in range(n):
        prefix = tuple(rng.randint(0, max_value) for _ in range(rng.randint(0, max_prefix)))
        if rng.random() < 0.5:
            tail: Union[Constant, Cyclic] = Constant(rng.randint(0, max_value))
        else:
            tail = Cyclic(tuple(rng.randint(0, max_value) for _ in range(rng.randint(1, 3))))
        points.append(Point(prefix, tail))
    return points


def binary_prefixes(m: int):
    return itertools.product((0, 1), repeat=m)


# ---------------------------------------------------------------- equivalence


@dataclass(frozen=True)
class EquivalenceCase:
    alpha: Union[Point, int]
    direct: int
    translated: int

    @property
    def equal(self) -> bool:
        return self.direct == self.translated


@dataclass
class EquivalenceReport:
    f: Term
    target: str
    cases: list[EquivalenceCase] = field(default_factory=list)

    @property
    def mismatches(self) -> list[EquivalenceCase]:
        return [c for c in self.cases if not c.equal]

    @property
    def ok(self) -> bool:
        return not self.mismatches

    def to_json(self) -> dict:
        return {
            "f": pretty_print(self.f),
            "target": self.target,
            "points": len(self.cases),
            "equal": len(self.cases) - len(self.mismatches),
            "mismatches": [
                {"alpha": str(c.alpha), "direct": c.direct, "translated": c.translated}
                for c in self.mismatches
            ],
        }


def check_equivalence(
    f: Term,
    points: Sequence[Union[Point, int]],
    target: Target = BAIRE_TARGET,
    fuel: Optional[int] = None,
) -> EquivalenceReport:
    """Compare ``f`` with its translation applied to the generic element, point by point.

    ``f`` has type ``X -> N`` for the target's ``X``; any mismatch is a bug.
    """
    _require_type(f, Arrow(target.domain, N))
    translated = generic_application(f, target)
    if target.paired:
        translated = App(FST, translated)
    direct_f, translated_f = Compiled(f, fuel), Compiled(translated, fuel)
    report = EquivalenceReport(f, target.name)
    for alpha in points:
        report.cases.append(EquivalenceCase(alpha, direct_f(alpha)[0], translated_f(alpha)[0]))
    return report


# ---------------------------------------------------------------- pointwise moduli


def modulus_at(f: Term, alpha: Point, fuel: Optional[int] = None) -> int:
    """The modulus computed by the closed modulus term of ``f`` at ``alpha``."""
    return Compiled(modulus_term(f), fuel)(alpha)[0]


@dataclass(frozen=True)
class VerifyBudget:
    """Perturbation space for falsifying a modulus claim.

    Positions ``[m, m + window)`` range exhaustively over ``{0..alphabet-1}``
    when that space fits in ``limit``; otherwise ``limit`` seeded samples of
    it are drawn. Up to ``samples`` further seeded perturbations then reach
    past the window (to every index ``f`` queried at ``alpha``) with larger values.
    """

    limit: int = 10_000
    alphabet: int = 4
    window: int = 4
    samples: int = 256
    seed: int = DEFAULT_SEED


@dataclass
class ModulusReport:
    f: Term
    alpha: Point
    modulus_bb: int
    modulus_oracle: int
    checked: int
    verified: bool
    counterexample: Optional[Point]
    perturbations_tested: int
    exhaustive: bool

    def to_json(self) -> dict:
        return {
            "f": pretty_print(self.f),
            "alpha": str(self.alpha),
            "modulus_bb": self.modulus_bb,
            "modulus_oracle": self.modulus_oracle,
            "checked": self.checked,
            "verified": self.verified,
            "counterexample": None if self.counterexample is None else str(self.counterexample),
            "perturbations_tested": self.perturbations_tested,
            "exhaustive": self.exhaustive,
        }


def _perturbations(alpha: Point, m: int, budget: VerifyBudget, reach: int):
    """Yield points ``beta`` agreeing with ``alpha`` below ``m``."""
    head = alpha.take(m)
    space = budget.alphabet**budget.window
    rng = random.Random(budget.seed)
    if space <= budget.limit:
        for combo in itertools.product(range(budget.alphabet), repeat=budget.window):
            yield alpha.with_prefix(head + combo)
        used = space
    else:
        for _ in range(budget.limit):
            combo = tuple(rng.randrange(budget.alphabet) for _ in range(budget.window))
            yield alpha.with_prefix(head + combo)
        used = budget.limit
    span = max(reach, m + budget.window) + 4 - m
    top = max(4 * budget.alphabet, max(alpha.take(m + span)) + 4)
    for _ in range(min(budget.samples, max(0, budget.limit - used))):
        combo = tuple(
            rng.randrange(top) if rng.random() < 0.5 else alpha(m + i) for i in range(span)
        )
        yield alpha.with_prefix(head + combo)


def verify_modulus(
    f: Term,
    alpha: Point,
    m: int,
    budget: VerifyBudget = VerifyBudget(),
    fuel: Optional[int] = None,
) -> ModulusReport:
    """Try to refute that ``m`` is a modulus of continuity of ``f`` at ``alpha``.

    Failures are reported as data; the counterexample is the lexicographically
    least failing perturbation found.
    """
    _require_type(f, FUNCTIONAL)
    run = Compiled(f, fuel)
    expected, log = run(alpha)
    reach = 0 if log.max() is None else log.max() + 1
    bb = modulus_at(f, alpha, fuel)
    tested = 0
    exhaustive = budget.alphabet**budget.window <= budget.limit
    worst: Optional[tuple] = None
    for beta in _perturbations(alpha, m, budget, reach):
        tested += 1
        got, blog = run(beta)
        if got != expected:
            bound = max(len(beta.prefix), (blog.max() or 0) + 1)
            key = beta.take(bound)
            if worst is None or key < worst[0]:
                worst = (key, beta)
    return ModulusReport(
        f=f,
        alpha=alpha,
        modulus_bb=bb,
        modulus_oracle=reach,
        checked=m,
        verified=worst is None,
        counterexample=None if worst is None else worst[1],
        perturbations_tested=tested,
        exhaustive=exhaustive,
    )


def modulus_report(
    f: Term, alpha: Point, budget: VerifyBudget = VerifyBudget(), fuel: Optional[int] = None
) -> ModulusReport:
    """Verify both the computed and the query-log modulus at ``alpha``.

    Returns the first failing report, else the report for the smaller modulus
    with the perturbation counts of both checks summed.
    """
    bb = modulus_at(f, alpha, fuel)
    _, log = Compiled(f, fuel)(alpha)
    oracle = 0 if log.max() is None else log.max() + 1
    reports = [verify_modulus(f, alpha, m, budget, fuel) for m in sorted({bb, oracle})]
    failed = [r for r in reports if not r.verified]
    if failed:
        return failed[0]
    head = reports[0]
    head.perturbations_tested = sum(r.perturbations_tested for r in reports)
    return head


# ---------------------------------------------------------------- uniform continuity


@dataclass
class UCReport:
    f: Term
    uc_modulus: int
    prefixes_checked: int
    max_depth_hit: bool = False

    def to_json(self) -> dict:
        return {
            "f": pretty_print(self.f),
            "uc_modulus": self.uc_modulus,
            "prefixes_checked": self.prefixes_checked,
            "max_depth_hit": self.max_depth_hit,
        }


def _cylinder_constant(run: Compiled, prefix: tuple[int, ...], max_window: int) -> bool:
    # Grow the window until no extension queries past it; then every binary
    # sequence in the cylinder shares a queried prefix with an enumerated point.
    m = len(prefix)
    value, log = run(Point.binary(prefix))
    end = max(m, -1 if log.max() is None else log.max() + 1)
    while True:
        if end - m > max_window:
            return False
        grown = False
        for ext in binary_prefixes(end - m):
            got, log = run(Point.binary(prefix + ext))
            if got != value:
                return False
            top = log.max()
            if top is not None and top >= end:
                end = top + 1
                grown = True
                break
        if not grown:
            return True


def verify_uc_modulus(f: Term, m: int, fuel: Optional[int] = None, max_window: int = 20) -> bool:
    """Whether ``f`` is constant on every binary cylinder of length ``m``.

    Inconclusive cylinders (needing more than ``max_window`` extra bits) count as failures.
    """
    _require_type(f, FUNCTIONAL)
    return _verify_uc(Compiled(f, fuel), m, max_window)


def _verify_uc(run: Compiled, m: int, max_window: int = 20) -> bool:
    return all(_cylinder_constant(run, tuple(bits), max_window) for bits in binary_prefixes(m))


def uc_modulus(f: Term, max_depth: int = DEFAULT_MAX_DEPTH, fuel: Optional[int] = None) -> UCReport:
    """Least depth ``m <= max_depth`` at which every binary prefix has its
    computed modulus within ``m`` and the cylinder check passes."""
    _require_type(f, FUNCTIONAL)
    run = Compiled(f, fuel)
    modulus = Compiled(modulus_term(f), fuel)
    for m in range(max_depth + 1):
        if any(modulus(Point.binary(bits))[0] > m for bits in binary_prefixes(m)):
            continue
        if _verify_uc(run, m):
            return UCReport(f, m, 2**m)
    raise MaxDepthExceeded(max_depth)
