"""Self-translations of System T that make continuity information explicit.

Naturals are sent to functionals ``X -> N`` and arrows are translated
homomorphically. With ``X = N -> N`` a closed ``f : (N -> N) -> N`` becomes
``f' : (N' -> N') -> N'`` and ``f'(generic)`` agrees with ``f`` pointwise.
The paired variant carries ``<value ; modulus>`` at every natural, which
yields a closed T-term computing a modulus of continuity of ``f``.

All generated terms are closed object-language terms; variables of the
source term keep their de Bruijn index, so the variable map between a
source context and its translation is the identity on positions.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Optional

from .syntax import (
    BAIRE,
    FST,
    SND,
    SUCC,
    ZERO,
    App,
    Arrow,
    FiniteType,
    Fst,
    IllTyped,
    Lam,
    N,
    Nat,
    Pair,
    Prod,
    Rec,
    Snd,
    Succ,
    Term,
    Var,
    Zero,
    TypeMismatch,
    apps,
    arrows,
    format_type,
    lams,
    typecheck,
)


class TranslationError(Exception):
    pass


class UnsupportedTarget(TranslationError):
    pass


class IllTypedSource(TranslationError):
    def __init__(self, cause: IllTyped):
        self.cause = cause
        super().__init__(f"source term is ill-typed: {cause}")


@dataclass(frozen=True)
class Target:
    """Where naturals go: ``N -> (X -> N)``, optionally paired with a modulus."""

    name: str
    domain: FiniteType
    paired: bool = False
    generic: Optional[Term] = None


BAIRE_TARGET = Target("baire", BAIRE)
PAIRED_TARGET = Target("bb", BAIRE, paired=True)
NAT_TARGET = Target("nat", N)

TARGETS = {"baire": BAIRE_TARGET, "bb": PAIRED_TARGET, "nat": NAT_TARGET}


def custom_target(domain: FiniteType, generic: Optional[Term] = None) -> Target:
    """Translation over an arbitrary finite type ``X``. Without a user-supplied
    generic element such a target only supports translation."""
    return Target("custom", domain, generic=generic)


# ---------------------------------------------------------------- types


def nat_image(target: Target) -> FiniteType:
    base = Arrow(target.domain, N)
    return Prod(base, base) if target.paired else base


def translate_type(rho: FiniteType, target: Target = BAIRE_TARGET) -> FiniteType:
    match rho:
        case Nat():
            return nat_image(target)
        case Arrow(dom, cod):
            return Arrow(translate_type(dom, target), translate_type(cod, target))
        case Prod(left, right):
            return Prod(translate_type(left, target), translate_type(right, target))
    raise TypeError(f"not a finite type: {rho!r}")


def translate_context(ctx, target: Target = BAIRE_TARGET) -> tuple:
    return tuple(translate_type(ty, target) for ty in ctx)


# ---------------------------------------------------------------- arithmetic


@lru_cache(maxsize=None)
def max_term() -> Term:
    """Binary maximum built from ``rec`` only.

    ``max 0 m = m`` and ``max (k+1) m = succ (max k (pred m))``.
    """
    pred = apps(Rec(N), ZERO, lams(N, N, Var(1)))
    step = lams(N, Arrow(N, N), N, App(SUCC, App(Var(1), App(pred, Var(0)))))
    # fun (x : N) => rec[N -> N] (fun m => m) step x
    return Lam(N, apps(Rec(Arrow(N, N)), Lam(N, Var(0)), step, Var(0)))


# ---------------------------------------------------------------- Kleisli extension


def _v(t: Term) -> Term:
    # value component of a paired natural
    return App(FST, t)


def _m(t: Term) -> Term:
    # modulus component of a paired natural
    return App(SND, t)


@lru_cache(maxsize=None)
def kleisli_ext(rho: FiniteType, target: Target = BAIRE_TARGET) -> Term:
    """Closed term ``ke : (N -> rho') -> N' -> rho'`` extending ``g`` from
    numerals to translated naturals, by recursion on ``rho``."""
    x = target.domain
    nat_t = nat_image(target)
    rho_t = translate_type(rho, target)
    g_ty = Arrow(N, rho_t)
    match rho:
        case Nat():
            if not target.paired:
                # fun g f a => g (f a) a
                return lams(g_ty, nat_t, x, apps(Var(2), App(Var(1), Var(0)), Var(0)))
            # g applied at the value of f, under binders g, f, a
            g_at = App(Var(2), App(_v(Var(1)), Var(0)))
            value = Lam(x, App(_v(g_at), Var(0)))
            modulus = Lam(x, apps(max_term(), App(_m(g_at), Var(0)), App(_m(Var(1)), Var(0))))
            return lams(g_ty, nat_t, Pair(value, modulus))
        case Arrow(dom, cod):
            # fun g f y => ke_cod (fun k => g k y) f
            dom_t = translate_type(dom, target)
            inner = Lam(N, apps(Var(3), Var(0), Var(1)))
            return lams(g_ty, nat_t, dom_t, apps(kleisli_ext(cod, target), inner, Var(1)))
        case Prod(left, right):
            # fun g f => pair (ke_left (fun k => fst (g k)) f) (ke_right (fun k => snd (g k)) f)
            first = apps(kleisli_ext(left, target), Lam(N, App(FST, App(Var(2), Var(0)))), Var(0))
            second = apps(kleisli_ext(right, target), Lam(N, App(SND, App(Var(2), Var(0)))), Var(0))
            return lams(g_ty, nat_t, Pair(first, second))
    raise TypeError(f"not a finite type: {rho!r}")


# ---------------------------------------------------------------- constants


def constant_nat(k: Term, target: Target) -> Term:
    """The translated numeral ``k'`` for a term ``k : N`` valid under one extra binder."""
    x = target.domain
    if target.paired:
        return Pair(Lam(x, _shift(k)), Lam(x, ZERO))
    return Lam(x, _shift(k))


def _shift(t: Term, by: int = 1, cutoff: int = 0) -> Term:
    match t:
        case Var(i):
            return Var(i + by) if i >= cutoff else t
        case Lam(ty, body):
            return Lam(ty, _shift(body, by, cutoff + 1))
        case App(f, a):
            return App(_shift(f, by, cutoff), _shift(a, by, cutoff))
        case Pair(a, b):
            return Pair(_shift(a, by, cutoff), _shift(b, by, cutoff))
    return t


@lru_cache(maxsize=None)
def _zero(target: Target) -> Term:
    x = target.domain
    if target.paired:
        return Pair(Lam(x, ZERO), Lam(x, ZERO))
    return Lam(x, ZERO)


@lru_cache(maxsize=None)
def _succ(target: Target) -> Term:
    x = target.domain
    nat_t = nat_image(target)
    if target.paired:
        # fun n => pair (fun a => succ (fst n a)) (snd n)
        return Lam(nat_t, Pair(Lam(x, App(SUCC, App(_v(Var(1)), Var(0)))), _m(Var(0))))
    # fun n a => succ (n a)
    return lams(nat_t, x, App(SUCC, App(Var(1), Var(0))))


@lru_cache(maxsize=None)
def _rec(rho: FiniteType, target: Target) -> Term:
    nat_t = nat_image(target)
    rho_t = translate_type(rho, target)
    step_ty = arrows(nat_t, rho_t, rho_t)
    # under binders a, f, k: the step applied to the constant k'
    step = Lam(N, App(Var(1), constant_nat(Var(0), target)))
    body = App(kleisli_ext(rho, target), apps(Rec(rho_t), Var(1), step))
    return lams(rho_t, step_ty, body)


# ---------------------------------------------------------------- terms


def translate_term(t: Term, target: Target = BAIRE_TARGET, ctx=()) -> Term:
    """Translate ``t`` (well-typed under ``ctx``) into a term of the translated type."""
    try:
        typecheck(ctx, t)
    except IllTyped as exc:
        raise IllTypedSource(exc) from exc
    return _translate(t, target)


def _translate(t: Term, target: Target) -> Term:
    match t:
        case Var():
            return t
        case Lam(ty, body):
            return Lam(translate_type(ty, target), _translate(body, target))
        case App(Succ(), _):
            hops = 0
            while isinstance(t, App) and isinstance(t.fun, Succ):
                t = t.arg
                hops += 1
            result = _translate(t, target)
            for _ in range(hops):
                result = App(_succ(target), result)
            return result
        case App(f, a):
            return App(_translate(f, target), _translate(a, target))
        case Zero():
            return _zero(target)
        case Succ():
            return _succ(target)
        case Rec(rho):
            return _rec(rho, target)
        case Pair(a, b):
            return Pair(_translate(a, target), _translate(b, target))
        case Fst() | Snd():
            return t
    raise TypeError(f"not a term: {t!r}")


# ---------------------------------------------------------------- generic elements


def generic_element(target: Target = BAIRE_TARGET) -> Term:
    """The closed generic sequence for ``target``.

    For Baire space it reads the input sequence at the index the argument
    computes; the paired variant also extends the modulus past that index.
    """
    if target.generic is not None:
        return target.generic
    if target == BAIRE_TARGET:
        nat_t = nat_image(target)
        # fun f a => a (f a)
        return lams(nat_t, BAIRE, App(Var(0), App(Var(1), Var(0))))
    if target == PAIRED_TARGET:
        nat_t = nat_image(target)
        value = Lam(BAIRE, App(Var(0), App(_v(Var(1)), Var(0))))
        bound = App(SUCC, App(_v(Var(1)), Var(0)))
        modulus = Lam(BAIRE, apps(max_term(), App(_m(Var(1)), Var(0)), bound))
        return Lam(nat_t, Pair(value, modulus))
    if target == NAT_TARGET:
        return Lam(N, Var(0))
    raise UnsupportedTarget(f"no generic element known for target {target.name!r}")


FUNCTIONAL = Arrow(BAIRE, N)


def _check_functional(f: Term) -> None:
    try:
        ty = typecheck((), f)
    except IllTyped as exc:
        raise IllTypedSource(exc) from exc
    if ty != FUNCTIONAL:
        raise IllTypedSource(TypeMismatch(format_type(FUNCTIONAL), format_type(ty), ()))


def generic_application(f: Term, target: Target = BAIRE_TARGET) -> Term:
    """``f'(generic)`` for a closed functional ``f``."""
    return App(translate_term(f, target), generic_element(target))


def modulus_term(f: Term) -> Term:
    """Closed term of type ``(N -> N) -> N`` computing a modulus of continuity of ``f``."""
    _check_functional(f)
    return App(SND, generic_application(f, PAIRED_TARGET))


def value_term(f: Term) -> Term:
    """Closed term pointwise equal to ``f``: the value part of the paired translation."""
    _check_functional(f)
    return App(FST, generic_application(f, PAIRED_TARGET))
