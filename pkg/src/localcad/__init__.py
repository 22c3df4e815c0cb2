"""Cylindrical algebraic decomposition built from local projections."""

from .cadbase import HONG, MCCALLUM, cad_solve
from .exact import BigRat, rat, simplest_rational
from .formula import (
    And,
    Atom,
    Cells,
    Or,
    RootFunction,
    Section,
    Sector,
    caf_str,
    caf_to_json,
    count_cells,
    eval_caf,
    evaluate,
    peval,
    to_cnf,
    to_dnf,
)
from .lpcad import Options, Stats, lpcad, solve
from .oracle import oracle_check
from .parser import parse_problem, parse_system
from .poly import Poly, VarOrder, factor_basis, resultant
from .projection import local_projection, lproj_h, lproj_mc
from .realalg import RealAlg, SamplePoint, chain, real_roots_of, roots_at, sign_at

__version__ = "0.1.0"

__all__ = [
    "And", "Atom", "BigRat", "Cells", "HONG", "MCCALLUM", "Options", "Or", "Poly", "RealAlg",
    "RootFunction", "SamplePoint", "Section", "Sector", "Stats", "VarOrder", "caf_str",
    "caf_to_json", "cad_solve", "chain", "count_cells", "eval_caf", "evaluate", "factor_basis",
    "local_projection", "lpcad", "lproj_h", "lproj_mc", "oracle_check", "parse_problem",
    "parse_system", "peval", "rat", "real_roots_of", "resultant", "roots_at", "sign_at",
    "simplest_rational", "solve", "to_cnf", "to_dnf",
]
