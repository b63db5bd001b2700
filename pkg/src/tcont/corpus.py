"""Bundled sample programs, loaded from the ``programs`` package directory."""

from __future__ import annotations

from functools import lru_cache
from importlib import resources

from .parser import parse
from .syntax import BAIRE, Arrow, N, Term, typecheck

FUNCTIONAL = Arrow(BAIRE, N)


def program_dir():
    return resources.files(__package__) / "programs"


@lru_cache(maxsize=None)
def load_all() -> dict[str, Term]:
    """Every bundled program by file stem, in name order."""
    files = sorted(p for p in program_dir().iterdir() if p.name.endswith(".systemt"))
    return {p.name[: -len(".systemt")]: parse(p.read_text()) for p in files}


def source(name: str) -> str:
    return (program_dir() / f"{name}.systemt").read_text()


def functionals() -> dict[str, Term]:
    """The programs of type ``(N -> N) -> N``."""
    return {k: t for k, t in load_all().items() if typecheck((), t) == FUNCTIONAL}


def nat_functions() -> dict[str, Term]:
    """The programs of type ``N -> N``."""
    return {k: t for k, t in load_all().items() if typecheck((), t) == Arrow(N, N)}
