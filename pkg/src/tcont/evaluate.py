"""Call-by-value environment machine for System T with pairs and oracle sequences.

Naturals are plain Python ints (unbounded). Applying an oracle sequence
records the queried index in its :class:`QueryLog` before answering.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Optional, Union

from .syntax import App, Fst, Lam, Pair, Rec, Snd, Succ, Term, Var, Zero

DEFAULT_FUEL = 10**8


class EvalError(Exception):
    pass


class EvalTypeError(EvalError):
    """A value of the wrong shape reached an elimination form; cannot happen on typechecked input."""


class FuelExhausted(EvalError):
    def __init__(self, fuel: int):
        self.fuel = fuel
        super().__init__(f"evaluation exceeded {fuel} steps")


# ---------------------------------------------------------------- points


@dataclass(frozen=True)
class Constant:
    value: int


@dataclass(frozen=True)
class Cyclic:
    period: tuple[int, ...]

    def __post_init__(self):
        if not self.period:
            raise ValueError("cycle period must be nonempty")


@dataclass(frozen=True)
class Point:
    """An element of Baire space given by a finite prefix and a tail rule."""

    prefix: tuple[int, ...] = ()
    tail: Union[Constant, Cyclic] = Constant(0)

    def __post_init__(self):
        object.__setattr__(self, "prefix", tuple(int(v) for v in self.prefix))
        if any(v < 0 for v in self.prefix):
            raise ValueError("point values must be natural numbers")

    def __call__(self, i: int) -> int:
        if i < 0:
            raise IndexError(i)
        if i < len(self.prefix):
            return self.prefix[i]
        if isinstance(self.tail, Constant):
            return self.tail.value
        period = self.tail.period
        return period[(i - len(self.prefix)) % len(period)]

    def take(self, n: int) -> tuple[int, ...]:
        return tuple(self(i) for i in range(n))

    def with_prefix(self, values) -> Point:
        """The point that reads ``values`` first and agrees with ``self`` afterwards."""
        values = tuple(values)
        k, p = len(values), len(self.prefix)
        if k <= p:
            return Point(values + self.prefix[k:], self.tail)
        tail = self.tail
        if isinstance(tail, Cyclic):
            shift = (k - p) % len(tail.period)
            tail = Cyclic(tail.period[shift:] + tail.period[:shift])
        return Point(values, tail)

    @classmethod
    def binary(cls, bits) -> Point:
        return cls(tuple(bits), Constant(0))

    def __str__(self) -> str:
        head = ",".join(map(str, self.prefix))
        if isinstance(self.tail, Constant):
            return f"[{head};const {self.tail.value}]"
        return f"[{head};cycle {','.join(map(str, self.tail.period))}]"


_POINT = re.compile(r"^\[\s*([0-9,\s]*?)\s*;\s*(const|cycle)\s+([0-9,\s]+?)\s*\]$")


def parse_point(text: str) -> Point:
    """Read ``[a0,a1,...;const c]`` or ``[a0,...;cycle p0,p1,...]``."""
    m = _POINT.match(text.strip())
    if m is None:
        raise ValueError(f"malformed point literal {text!r}")
    head, kind, rest = m.groups()
    try:
        prefix = tuple(int(x) for x in head.split(",") if x.strip()) if head.strip() else ()
        values = tuple(int(x) for x in rest.split(","))
    except ValueError:
        raise ValueError(f"malformed point literal {text!r}") from None
    if kind == "const":
        if len(values) != 1:
            raise ValueError(f"const tail takes one value: {text!r}")
        return Point(prefix, Constant(values[0]))
    return Point(prefix, Cyclic(values))


# ---------------------------------------------------------------- values


@dataclass
class QueryLog:
    queried: list[int] = field(default_factory=list)

    def record(self, i: int) -> None:
        self.queried.append(i)

    def max(self) -> Optional[int]:
        return max(self.queried) if self.queried else None

    def __len__(self) -> int:
        return len(self.queried)


VNat = int
Environment = Optional[tuple]  # cons list (value, rest); None is empty


@dataclass(frozen=True, eq=False)
class VClosure:
    env: Environment
    body: Term


@dataclass(frozen=True, eq=False)
class VExternal:
    point: Point
    log: QueryLog


@dataclass(frozen=True)
class VPair:
    fst: Value
    snd: Value


@dataclass(frozen=True, eq=False)
class VPrim:
    op: str  # "succ", "rec", "fst" or "snd"
    args: tuple = ()


Value = Union[VNat, VClosure, VExternal, VPair, VPrim]

_ARITY = {"succ": 1, "rec": 3, "fst": 1, "snd": 1}


def env_of(*values: Value) -> Environment:
    """Environment with ``values[0]`` bound to index 0."""
    env = None
    for v in reversed(values):
        env = (v, env)
    return env


# continuation frame tags
_ARG, _CALL, _CALL_WITH, _PAIR_SND, _PAIR_MAKE, _REC = range(6)


class Machine:
    """One evaluation context: a step counter with an optional fuel bound.

    Evaluation runs on an explicit continuation stack, so neither deep terms
    nor long chains of closures consume Python stack.
    """

    def __init__(self, fuel: Optional[int] = None):
        self.fuel = fuel
        self.steps = 0

    def eval(self, t: Term, env: Environment = None) -> Value:
        return self._run([], t, env, None)

    def apply(self, fv: Value, av: Value) -> Value:
        return self._run([(_CALL, fv)], None, None, av)

    def _run(self, stack: list, t: Optional[Term], env: Environment, val: Value) -> Value:
        fuel = self.fuel
        steps = self.steps
        evaluating = t is not None
        try:
            while True:
                steps += 1
                if fuel is not None and steps > fuel:
                    raise FuelExhausted(fuel)
                if evaluating:
                    cls = type(t)
                    if cls is App:
                        stack.append((_ARG, t.arg, env))
                        t = t.fun
                        continue
                    if cls is Var:
                        node = env
                        for _ in range(t.index):
                            if node is None:
                                break
                            node = node[1]
                        if node is None:
                            raise EvalTypeError(f"variable #{t.index} out of range")
                        val = node[0]
                    elif cls is Lam:
                        val = VClosure(env, t.body)
                    elif cls is Zero:
                        val = 0
                    elif cls is Succ:
                        val = _SUCC
                    elif cls is Rec:
                        val = _REC_PRIM
                    elif cls is Pair:
                        stack.append((_PAIR_SND, t.snd, env))
                        t = t.fst
                        continue
                    elif cls is Fst:
                        val = _FST
                    elif cls is Snd:
                        val = _SND
                    else:
                        raise EvalTypeError(f"not a term: {t!r}")
                    evaluating = False
                    continue

                if not stack:
                    return val
                frame = stack.pop()
                tag = frame[0]
                if tag == _ARG:
                    stack.append((_CALL, val))
                    t, env = frame[1], frame[2]
                    evaluating = True
                elif tag == _CALL:
                    fv = frame[1]
                    cls = type(fv)
                    if cls is VClosure:
                        t, env = fv.body, (val, fv.env)
                        evaluating = True
                    elif cls is VExternal:
                        if type(val) is not int:
                            raise EvalTypeError("oracle applied to a non-numeral")
                        fv.log.record(val)
                        val = fv.point(val)
                    elif cls is VPrim:
                        args = fv.args + (val,)
                        if len(args) < _ARITY[fv.op]:
                            val = VPrim(fv.op, args)
                        else:
                            val = self._prim(fv.op, args, stack)
                    else:
                        raise EvalTypeError(f"cannot apply {cls.__name__}")
                elif tag == _CALL_WITH:
                    stack.append((_CALL, val))
                    val = frame[1]
                elif tag == _PAIR_SND:
                    stack.append((_PAIR_MAKE, val))
                    t, env = frame[1], frame[2]
                    evaluating = True
                elif tag == _PAIR_MAKE:
                    val = VPair(frame[1], val)
                else:
                    # val is the accumulator after step k; continue with k + 1
                    _, step, k, n = frame
                    k += 1
                    if k < n:
                        val = self._rec_step(stack, step, k, n, val)
        finally:
            self.steps = steps

    @staticmethod
    def _rec_step(stack: list, step: Value, k: int, n: int, acc: Value) -> Value:
        # schedule step k acc, then resume the recursion frame
        stack.append((_REC, step, k, n))
        stack.append((_CALL_WITH, acc))
        stack.append((_CALL, step))
        return k

    def _prim(self, op: str, args: tuple, stack: list) -> Value:
        if op == "succ":
            (n,) = args
            if type(n) is not int:
                raise EvalTypeError("succ applied to a non-numeral")
            return n + 1
        if op == "rec":
            acc, step, n = args
            if type(n) is not int:
                raise EvalTypeError("rec applied to a non-numeral")
            if n == 0:
                return acc
            return self._rec_step(stack, step, 0, n, acc)
        (p,) = args
        if not isinstance(p, VPair):
            raise EvalTypeError(f"{op} applied to a non-pair")
        return p.fst if op == "fst" else p.snd


_SUCC = VPrim("succ")
_REC_PRIM = VPrim("rec")
_FST = VPrim("fst")
_SND = VPrim("snd")


def evaluate(t: Term, env: Environment = None, fuel: Optional[int] = None) -> Value:
    return Machine(fuel).eval(t, env)


def apply_to_point(f: Term, alpha: Point, fuel: Optional[int] = None) -> tuple[int, QueryLog]:
    """Evaluate ``f`` at the oracle ``alpha``; return the numeral and the query log."""
    machine = Machine(fuel)
    log = QueryLog()
    result = machine.apply(machine.eval(f), VExternal(alpha, log))
    if type(result) is not int:
        raise EvalTypeError("functional did not return a numeral")
    return result, log


def oracle_modulus(f: Term, alpha: Point, fuel: Optional[int] = None) -> int:
    """One more than the largest index queried while computing ``f(alpha)``; 0 if none."""
    _, log = apply_to_point(f, alpha, fuel)
    top = log.max()
    return 0 if top is None else top + 1
