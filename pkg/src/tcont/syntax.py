"""Finite types, System T terms with de Bruijn indices, typechecking and printing."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Union


# ---------------------------------------------------------------- types


@dataclass(frozen=True)
class Nat:
    def __str__(self) -> str:
        return format_type(self)


@dataclass(frozen=True)
class Arrow:
    domain: FiniteType
    codomain: FiniteType

    def __str__(self) -> str:
        return format_type(self)


@dataclass(frozen=True)
class Prod:
    left: FiniteType
    right: FiniteType

    def __str__(self) -> str:
        return format_type(self)


FiniteType = Union[Nat, Arrow, Prod]

N = Nat()
BAIRE = Arrow(N, N)
"""The Baire type ``N -> N``."""


def arrows(*tys: FiniteType) -> FiniteType:
    """Right-nested arrow type: ``arrows(a, b, c) == a -> b -> c``."""
    result = tys[-1]
    for ty in reversed(tys[:-1]):
        result = Arrow(ty, result)
    return result


def format_type(ty: FiniteType, prec: int = 0) -> str:
    # prec 0: arrow position, 1: product operand, 2: left of a product
    match ty:
        case Nat():
            return "N"
        case Arrow(dom, cod):
            s = f"{format_type(dom, 1)} -> {format_type(cod, 0)}"
            return f"({s})" if prec > 0 else s
        case Prod(left, right):
            s = f"{format_type(left, 1)} * {format_type(right, 2)}"
            return f"({s})" if prec > 1 else s
    raise TypeError(f"not a finite type: {ty!r}")


# ---------------------------------------------------------------- terms


@dataclass(frozen=True)
class Var:
    index: int


@dataclass(frozen=True)
class Lam:
    domain_type: FiniteType
    body: Term


@dataclass(frozen=True)
class App:
    fun: Term
    arg: Term


@dataclass(frozen=True)
class Zero:
    pass


@dataclass(frozen=True)
class Succ:
    pass


@dataclass(frozen=True)
class Rec:
    result_type: FiniteType


@dataclass(frozen=True)
class Pair:
    fst: Term
    snd: Term


@dataclass(frozen=True)
class Fst:
    pass


@dataclass(frozen=True)
class Snd:
    pass


Term = Union[Var, Lam, App, Zero, Succ, Rec, Pair, Fst, Snd]

ZERO = Zero()
SUCC = Succ()
FST = Fst()
SND = Snd()


def apps(fun: Term, *args: Term) -> Term:
    """Left-nested application ``fun a1 a2 ...``."""
    for arg in args:
        fun = App(fun, arg)
    return fun


def lams(*binders_and_body: Any) -> Term:
    """``lams(t1, t2, body)`` builds ``Lam(t1, Lam(t2, body))``."""
    *tys, body = binders_and_body
    for ty in reversed(tys):
        body = Lam(ty, body)
    return body


def numeral(n: int) -> Term:
    """``succ^n 0``; the kernel never sees literal naturals."""
    if n < 0:
        raise ValueError("numerals are natural numbers")
    term: Term = ZERO
    for _ in range(n):
        term = App(SUCC, term)
    return term


def numeral_value(t: Term) -> int | None:
    """Inverse of :func:`numeral`; ``None`` if ``t`` is not a numeral."""
    n = 0
    while isinstance(t, App) and isinstance(t.fun, Succ):
        t = t.arg
        n += 1
    return n if isinstance(t, Zero) else None


# ---------------------------------------------------------------- typing


class IllTyped(Exception):
    """Base class for typechecking failures; ``path`` locates the subterm."""

    def __init__(self, message: str, path: tuple[str, ...]):
        self.path = path
        where = "/".join(path) if path else "<root>"
        super().__init__(f"{message} at {where}")


class UnboundVariable(IllTyped):
    def __init__(self, index: int, depth: int, path: tuple[str, ...]):
        self.index = index
        super().__init__(f"unbound variable #{index} under {depth} binder(s)", path)


class TypeMismatch(IllTyped):
    def __init__(self, expected: str, found: str, path: tuple[str, ...]):
        self.expected = expected
        self.found = found
        super().__init__(f"type mismatch: expected {expected}, found {found}", path)


TypingContext = tuple  # of FiniteType, innermost binder first


def rec_type(rho: FiniteType) -> FiniteType:
    return arrows(rho, arrows(N, rho, rho), N, rho)


def typecheck(ctx: TypingContext, t: Term) -> FiniteType:
    """Return the type of ``t`` under ``ctx`` (innermost binder at index 0)."""
    return _check(tuple(ctx), t, ())


def _check(ctx: tuple, t: Term, path: tuple[str, ...]) -> FiniteType:
    match t:
        case Var(i):
            if not 0 <= i < len(ctx):
                raise UnboundVariable(i, len(ctx), path)
            return ctx[i]
        case Lam(dom, body):
            return Arrow(dom, _check((dom,) + ctx, body, path + ("body",)))
        case App(Succ(), _):
            # successor chains (elaborated numerals) are walked iteratively
            hops = 0
            while isinstance(t, App) and isinstance(t.fun, Succ):
                t = t.arg
                hops += 1
            where = path + ("arg",) * hops
            ty = _check(ctx, t, where)
            if ty != N:
                raise TypeMismatch("N", format_type(ty), where)
            return N
        case App(Fst() | Snd() as proj, arg):
            ty = _check(ctx, arg, path + ("arg",))
            if not isinstance(ty, Prod):
                raise TypeMismatch("a product type", format_type(ty), path + ("arg",))
            return ty.left if isinstance(proj, Fst) else ty.right
        case App(fun, arg):
            fty = _check(ctx, fun, path + ("fun",))
            if not isinstance(fty, Arrow):
                raise TypeMismatch("a function type", format_type(fty), path + ("fun",))
            aty = _check(ctx, arg, path + ("arg",))
            if aty != fty.domain:
                raise TypeMismatch(format_type(fty.domain), format_type(aty), path + ("arg",))
            return fty.codomain
        case Zero():
            return N
        case Succ():
            return BAIRE
        case Rec(rho):
            return rec_type(rho)
        case Pair(a, b):
            return Prod(_check(ctx, a, path + ("fst",)), _check(ctx, b, path + ("snd",)))
        case Fst() | Snd():
            # projections carry no type annotation, so they must be applied
            raise TypeMismatch("an applied projection", "bare " + type(t).__name__.lower(), path)
    raise TypeError(f"not a term: {t!r}")


def is_closed(t: Term, depth: int = 0) -> bool:
    match t:
        case Var(i):
            return i < depth
        case Lam(_, body):
            return is_closed(body, depth + 1)
        case App(f, a) | Pair(f, a):
            return is_closed(f, depth) and is_closed(a, depth)
    return True


# ---------------------------------------------------------------- printing


def binder_name(level: int) -> str:
    letters = "abcdefghijklmnopqrstuvwxyz"
    q, r = divmod(level, len(letters))
    return letters[r] + (str(q) if q else "")


def pretty_print(t: Term) -> str:
    """Render ``t`` in surface syntax. Binder names are chosen by nesting depth,
    so distinct binders on one path never collide."""
    return _show(t, 0, 0)


def _show(t: Term, depth: int, prec: int) -> str:
    # prec 0: anywhere, 1: function position of an application, 2: argument
    n = numeral_value(t)
    if n is not None:
        return str(n)
    match t:
        case Var(i):
            return binder_name(depth - 1 - i) if i < depth else f"?free{i - depth}"
        case Lam():
            parts = []
            while isinstance(t, Lam):
                parts.append(f"({binder_name(depth)} : {format_type(t.domain_type)})")
                depth += 1
                t = t.body
            s = f"fun {' '.join(parts)} => {_show(t, depth, 0)}"
            return f"({s})" if prec > 0 else s
        case App(f, a):
            s = f"{_show(f, depth, 1)} {_show(a, depth, 2)}"
            return f"({s})" if prec > 1 else s
        case Zero():
            return "0"
        case Succ():
            return "succ"
        case Rec(rho):
            return f"rec[{format_type(rho)}]"
        case Pair(a, b):
            s = f"pair {_show(a, depth, 2)} {_show(b, depth, 2)}"
            return f"({s})" if prec > 1 else s
        case Fst():
            return "fst"
        case Snd():
            return "snd"
    raise TypeError(f"not a term: {t!r}")


# ---------------------------------------------------------------- JSON AST


def type_to_json(ty: FiniteType) -> dict:
    match ty:
        case Nat():
            return {"tag": "Nat"}
        case Arrow(d, c):
            return {"tag": "Arrow", "domain": type_to_json(d), "codomain": type_to_json(c)}
        case Prod(l, r):
            return {"tag": "Prod", "left": type_to_json(l), "right": type_to_json(r)}
    raise TypeError(f"not a finite type: {ty!r}")


def type_from_json(obj: dict) -> FiniteType:
    tag = obj["tag"]
    if tag == "Nat":
        return N
    if tag == "Arrow":
        return Arrow(type_from_json(obj["domain"]), type_from_json(obj["codomain"]))
    if tag == "Prod":
        return Prod(type_from_json(obj["left"]), type_from_json(obj["right"]))
    raise ValueError(f"unknown type tag {tag!r}")


def term_to_json(t: Term) -> dict:
    match t:
        case Var(i):
            return {"tag": "Var", "index": i}
        case Lam(dom, body):
            return {"tag": "Lam", "domainType": type_to_json(dom), "body": term_to_json(body)}
        case App(f, a):
            return {"tag": "App", "fun": term_to_json(f), "arg": term_to_json(a)}
        case Rec(rho):
            return {"tag": "Rec", "resultType": type_to_json(rho)}
        case Pair(a, b):
            return {"tag": "Pair", "fst": term_to_json(a), "snd": term_to_json(b)}
        case Zero() | Succ() | Fst() | Snd():
            return {"tag": type(t).__name__}
    raise TypeError(f"not a term: {t!r}")


_NULLARY = {"Zero": ZERO, "Succ": SUCC, "Fst": FST, "Snd": SND}


def term_from_json(obj: dict) -> Term:
    tag = obj["tag"]
    if tag in _NULLARY:
        return _NULLARY[tag]
    if tag == "Var":
        return Var(int(obj["index"]))
    if tag == "Lam":
        return Lam(type_from_json(obj["domainType"]), term_from_json(obj["body"]))
    if tag == "App":
        return App(term_from_json(obj["fun"]), term_from_json(obj["arg"]))
    if tag == "Rec":
        return Rec(type_from_json(obj["resultType"]))
    if tag == "Pair":
        return Pair(term_from_json(obj["fst"]), term_from_json(obj["snd"]))
    raise ValueError(f"unknown term tag {tag!r}")
