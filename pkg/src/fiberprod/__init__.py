"""Exact Poincare-series formulas, depth rules and a brute-force graded
resolution oracle for fiber product rings."""

from .errors import (
    BudgetExceeded,
    FiberprodError,
    InternalInconsistency,
    InvalidBetti,
    InvalidDenominator,
    IndexOutOfRange,
    NotAUnit,
    OrderMismatch,
    TrivialFiberProduct,
    ValidationError,
    ZeroModule,
)
from .fiber import BettiSequence, PoincareInputs
from .oracle import MonomialIdeal, QuotientPresentation
from .series import Polynomial, RationalFunction, TruncatedSeries
from .structure import FiberData, RingInvariants

__all__ = [
    "BettiSequence",
    "BudgetExceeded",
    "FiberData",
    "FiberprodError",
    "IndexOutOfRange",
    "InternalInconsistency",
    "InvalidBetti",
    "InvalidDenominator",
    "MonomialIdeal",
    "NotAUnit",
    "OrderMismatch",
    "PoincareInputs",
    "Polynomial",
    "QuotientPresentation",
    "RationalFunction",
    "RingInvariants",
    "TrivialFiberProduct",
    "TruncatedSeries",
    "ValidationError",
    "ZeroModule",
]

__version__ = "0.1.0"
