"""Exact Ramanujan expansions of arithmetic functions and fair correlations."""

from .arith import ArithWindow, DomainError, InvariantViolation, RealWindow, builtin_window
from .correlations import (
    CorrelationInstance,
    HypothesisError,
    TruncatedDivisorSum,
    correlate,
    correlation_period,
    expansion_eval,
    correlation_coefficient,
    truncate,
)
from .decomposition import check_parts_add_up, decompose, primary_coefficient, secondary_coefficient
from .ramanujan import c_holder, c_kluyver, c_direct
from .transforms import RamanujanCoefficients, carmichael_coefficient, wintner_coefficient

__all__ = [
    "ArithWindow",
    "CorrelationInstance",
    "DomainError",
    "HypothesisError",
    "InvariantViolation",
    "RamanujanCoefficients",
    "RealWindow",
    "TruncatedDivisorSum",
    "builtin_window",
    "c_direct",
    "c_holder",
    "c_kluyver",
    "carmichael_coefficient",
    "check_parts_add_up",
    "correlate",
    "correlation_period",
    "decompose",
    "expansion_eval",
    "correlation_coefficient",
    "primary_coefficient",
    "secondary_coefficient",
    "truncate",
    "wintner_coefficient",
]
