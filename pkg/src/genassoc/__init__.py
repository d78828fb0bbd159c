"""Exact analysis of associativity for operations built from monotone generators.

T(x, y) = f^(-1)(F(f(x), f(y))) for a piecewise generator f on [0, 1] and an
associative base operation F on [0, inf].
"""

__version__ = "0.1.0"

from .numbers import INF, ONE, ZERO, ExtRat, IndeterminateProduct, NegativeValueError, parse
from .rangesets import EMPTY, FULL, UNIT, EmptySet, Interval, RangeSet, parse_rangeset, set_algebra
from .generators import DomainError, Generator, GeneratorError, Piece, PieceExpr, identity
from .decomposition import Decomposition, NotInClassF, NotInM, check_invariants, decompose
from .ops import AssocOp, OutsideValidDomain, RegistrationError, UnknownOperation, builtin_names, get_op
from .analysis import (
    FConditionSets,
    NotInB,
    Outcome,
    Scenario,
    ScenarioError,
    Verdict,
    WitnessConfig,
    axiom_check,
    check_fcondition,
    check_sufficient,
    fcondition_sets,
    i_k_set,
    jfrak,
    oracle_otimes,
    oracle_t,
)
from .specfile import ParseError, ScenarioSpec, ValidationError, fixture_names, load_fixture, parse_spec, render
from .report import build_report

__all__ = [name for name in dir() if not name.startswith("_")]
