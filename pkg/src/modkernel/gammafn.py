"""Gamma and beta functions for positive real arguments.

Lanczos approximation (g = 7, 9 terms), accurate to better than 1e-13
relative on (0, 60); kept in-package so the normalization constants of
the orthonormal families do not depend on anything outside the stdlib
and numpy.
"""

from __future__ import annotations

import math

__all__ = ["gamma_fn", "lgamma_fn", "beta_fn", "binomial_gen"]

_LANCZOS_G = 7.0
_LANCZOS_COEF = (
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
)


def _lanczos_series(z: float) -> float:
    acc = _LANCZOS_COEF[0]
    for i in range(1, len(_LANCZOS_COEF)):
        acc += _LANCZOS_COEF[i] / (z + i)
    return acc


def gamma_fn(x: float) -> float:
    """Gamma function for x > 0."""
    if not x > 0.0:
        raise ValueError(f"gamma_fn requires a positive argument, got {x}")
    if x < 0.5:
        return gamma_fn(x + 1.0) / x
    z = x - 1.0
    t = z + _LANCZOS_G + 0.5
    return math.sqrt(2.0 * math.pi) * t ** (z + 0.5) * math.exp(-t) * _lanczos_series(z)


def lgamma_fn(x: float) -> float:
    """log(Gamma(x)) for x > 0, stable for large arguments."""
    if not x > 0.0:
        raise ValueError(f"lgamma_fn requires a positive argument, got {x}")
    if x < 0.5:
        return lgamma_fn(x + 1.0) - math.log(x)
    z = x - 1.0
    t = z + _LANCZOS_G + 0.5
    return 0.5 * math.log(2.0 * math.pi) + (z + 0.5) * math.log(t) - t + math.log(_lanczos_series(z))


def beta_fn(a: float, b: float) -> float:
    """Beta function B(a, b) for a, b > 0."""
    return math.exp(lgamma_fn(a) + lgamma_fn(b) - lgamma_fn(a + b))


def binomial_gen(a: float, k: int) -> float:
    """Generalized binomial coefficient C(a, k) = Gamma(a+1) / (k! Gamma(a-k+1))."""
    if k < 0:
        raise ValueError("binomial_gen requires k >= 0")
    if k == 0:
        return 1.0
    # product form avoids gamma poles for non-positive a - k + 1
    acc = 1.0
    for j in range(k):
        acc *= (a - j) / (k - j)
    return acc
