"""System T workbench for moduli of continuity of functionals ``(N -> N) -> N``."""

from .continuity import (
    MaxDepthExceeded,
    ModulusReport,
    UCReport,
    VerifyBudget,
    check_equivalence,
    modulus_at,
    modulus_report,
    sample_points,
    uc_modulus,
    verify_modulus,
    verify_uc_modulus,
)
from .evaluate import Constant, Cyclic, Point, apply_to_point, evaluate, oracle_modulus, parse_point
from .parser import ParseError, SourceSyntaxError, UnboundName, parse, parse_type
from .syntax import (
    BAIRE,
    N,
    App,
    Arrow,
    Fst,
    Lam,
    Nat,
    Pair,
    Prod,
    Rec,
    Snd,
    Succ,
    TypeMismatch,
    UnboundVariable,
    Var,
    Zero,
    pretty_print,
    typecheck,
)
from .translate import (
    BAIRE_TARGET,
    NAT_TARGET,
    PAIRED_TARGET,
    custom_target,
    generic_element,
    kleisli_ext,
    max_term,
    modulus_term,
    translate_term,
    translate_type,
    value_term,
)

__version__ = "0.1.0"
