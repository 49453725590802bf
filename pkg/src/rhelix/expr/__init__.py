"""Expression front-end: parsing, printing, Taylor-jet evaluation."""

from .compiled import HessianFunction, compile_hessian
from .jet import Jet, JetProgram, compose, eval_float, eval_jet
from .nodes import FUNCTIONS, BinOp, Call, Const, Expr, Neg, Var, to_text, variables
from .parser import parse

__all__ = [
    "BinOp",
    "Call",
    "Const",
    "Expr",
    "FUNCTIONS",
    "HessianFunction",
    "Jet",
    "JetProgram",
    "Neg",
    "Var",
    "compile_hessian",
    "compose",
    "eval_float",
    "eval_jet",
    "parse",
    "to_text",
    "variables",
]
