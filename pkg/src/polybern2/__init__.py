"""Exact computation of higher-level Stirling numbers and level-2 poly-Bernoulli numbers.

Everything is computed over Python integers and :class:`fractions.Fraction`,
so every identity checked by this package is checked exactly.
"""

from polybern2.core import (
    InconsistencyError,
    OracleBoundError,
    TheoremViolation,
    binomial,
    factorial,
    frac_part,
    make_rat,
    multinomial,
    rat_str,
)

__version__ = "0.1.0"

__all__ = [
    "InconsistencyError",
    "OracleBoundError",
    "TheoremViolation",
    "binomial",
    "factorial",
    "frac_part",
    "make_rat",
    "multinomial",
    "rat_str",
]
