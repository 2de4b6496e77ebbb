"""Ordinal notations below Gamma_0, largeness, peeling and Ramsey experiments."""

from .fundseq import FuelExhausted, fund, fund_set, norm
from .largeness import is_exact, is_large, size_prefix
from .ordinals import (
    EPSILON0, OMEGA, ONE, ZERO, Ordinal, compare, fmt, nat, omega_pow, parse, veblen,
)

__version__ = "0.1.0"

__all__ = [
    "EPSILON0", "OMEGA", "ONE", "ZERO", "Ordinal", "compare", "fmt", "nat", "omega_pow",
    "parse", "veblen", "fund", "fund_set", "norm", "FuelExhausted", "is_large", "is_exact",
    "size_prefix", "__version__",
]
