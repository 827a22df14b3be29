"""Exact and Monte Carlo tools for random integer matrices."""

from fractions import Fraction

from . import _core
from ._core import (
    BudgetExceeded,
    DimensionError,
    DomainError,
    FitError,
    GenerationFailure,
    IntmatError,
    ParseError,
    F,
    G,
    __version__,
    charfn_modulus,
    det,
    epsilon_zero,
    esseen_integral,
    fit_exponent,
    generate_mds,
    is_compressible,
    is_mds,
    is_singular,
    lcd_upper,
    mc_singularity,
    normal_vector,
    pigeonhole_min_alphabet,
    rank,
    small_ball_probe,
)


def kernel_basis(rows):
    """Rational kernel basis; each vector is content-reduced with a positive leading entry."""
    return [[Fraction(*q) for q in v] for v in _core.kernel_basis(rows)]


def exact_singular_fraction(n, m, budget=100_000_000):
    return Fraction(*_core.exact_singular_fraction(n, m, budget))


def lower_bound(n, m):
    return Fraction(*_core.lower_bound(n, m))
