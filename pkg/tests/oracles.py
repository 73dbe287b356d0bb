"""Reference implementations used only by the tests.

Everything here deliberately avoids the package's own evaluation paths:
classical values come from terminating hypergeometric sums or
trigonometric closed forms with stdlib gamma functions, recurrence
coefficients from Gram-Schmidt on moment matrices, and derivatives from
finite differences.
"""

from __future__ import annotations

import math

import numpy as np


def jacobi_poly_value(alpha: float, beta: float, n: int, x: float) -> float:
    """P_n for the (1-x)^alpha (1+x)^beta weight, hypergeometric form."""
    if x < 0.0:
        # reflect so the series argument stays small (conditioning)
        return (-1.0) ** n * jacobi_poly_value(beta, alpha, n, -x)
    # C(n+alpha, n) * sum_k (-n)_k (n+a+b+1)_k / ((a+1)_k k!) * ((1-x)/2)^k
    binom = math.exp(math.lgamma(n + alpha + 1) - math.lgamma(n + 1) - math.lgamma(alpha + 1))
    term = 1.0
    total = 1.0
    z = 0.5 * (1.0 - x)
    for k in range(n):
        term *= (k - n) * (n + alpha + beta + 1 + k) / ((alpha + 1 + k) * (k + 1)) * z
        total += term
    return binom * total


def jacobi_orthonormal_value(alpha: float, beta: float, n: int, x: float) -> float:
    """Orthonormal version with positive leading coefficient."""
    if n == 0:
        lg_mass = (alpha + beta + 1) * math.log(2.0) + math.lgamma(alpha + 1) + math.lgamma(beta + 1) - math.lgamma(alpha + beta + 2)
        return math.exp(-0.5 * lg_mass)
    lg = (
        math.log(2 * n + alpha + beta + 1)
        + math.lgamma(n + 1)
        + math.lgamma(n + alpha + beta + 1)
        - (alpha + beta + 1) * math.log(2.0)
        - math.lgamma(n + alpha + 1)
        - math.lgamma(n + beta + 1)
    )
    return math.exp(0.5 * lg) * jacobi_poly_value(alpha, beta, n, x)


def laguerre_poly_value(alpha: float, n: int, y: float) -> float:
    """L_n for the y^alpha e^-y weight on [0, inf), by recurrence."""
    prev, cur = 0.0, 1.0
    for k in range(n):
        prev, cur = cur, ((2 * k + 1 + alpha - y) * cur - (k + alpha) * prev) / (k + 1)
    return cur


def laguerre_orthonormal_reflected(alpha: float, n: int, x: float) -> float:
    """Orthonormal family for the (-x)^alpha e^x weight on (-inf, 0]."""
    lg_norm = math.lgamma(alpha + 1) + math.lgamma(n + alpha + 1) - math.lgamma(n + 1) - math.lgamma(alpha + 1)
    return laguerre_poly_value(alpha, n, -x) * math.exp(-0.5 * lg_norm)


def chebyshev_orthonormal_value(n: int, x: float) -> float:
    """First-kind orthonormal Chebyshev value, trigonometric form."""
    if n == 0:
        return 1.0 / math.sqrt(math.pi)
    if abs(x) <= 1.0:
        t = math.cos(n * math.acos(x))
    elif x > 1.0:
        t = math.cosh(n * math.acosh(x))
    else:
        t = (-1.0) ** n * math.cosh(n * math.acosh(-x))
    return math.sqrt(2.0 / math.pi) * t


def jacobi_moments_lowdeg(alpha: float, beta: float, k_max: int) -> np.ndarray:
    """Moments of (1-x)^alpha (1+x)^beta by binomial beta-function sums.

    A different algorithm from any in the package; trustworthy for
    moderate k only (alternating binomial sums), which is all the
    cross-checks need.
    """

    def beta_f(a, b):
        return math.exp(math.lgamma(a) + math.lgamma(b) - math.lgamma(a + b))

    out = np.zeros(k_max + 1)
    scale = 2.0 ** (alpha + beta + 1.0)
    for k in range(k_max + 1):
        acc = 0.0
        for j in range(k + 1):
            acc += math.comb(k, j) * (-2.0) ** j * beta_f(alpha + 1.0 + j, beta + 1.0)
        out[k] = scale * acc
    return out


def laguerre_neg_moments(alpha: float, k_max: int) -> np.ndarray:
    return np.array([(-1.0) ** k * math.exp(math.lgamma(alpha + k + 1.0)) for k in range(k_max + 1)])


def recurrence_from_moments(moments: np.ndarray, n_max: int):
    """Gram-Schmidt on the moment (Hankel) matrix.

    Returns (a_hat, b_hat) for indices 0..n_max, derived from the
    Cholesky factor of H[i, j] = m_{i+j}; conditioning limits this to
    small n, which is exactly its role as an independent oracle.
    """
    size = n_max + 2
    h = np.empty((size, size))
    for i in range(size):
        for j in range(size):
            h[i, j] = moments[i + j]
    chol = np.linalg.cholesky(h)
    coeffs = np.linalg.inv(chol).copy()  # row n = coefficients of g_n

    def inner_x(pa, pb):
        # integral of x * pa(x) * pb(x) against the measure
        acc = 0.0
        for i, ca in enumerate(pa):
            for j, cb in enumerate(pb):
                acc += ca * cb * moments[i + j + 1]
        return acc

    a_hat = np.empty(n_max + 1)
    b_hat = np.empty(n_max + 1)
    for n in range(n_max + 1):
        b_hat[n] = inner_x(coeffs[n, : n + 1], coeffs[n, : n + 1])
        a_hat[n] = inner_x(coeffs[n, : n + 1], coeffs[n + 1, : n + 2])
    return a_hat, b_hat


def fd1(f, x: float, h: float = 1e-6) -> float:
    return (f(x + h) - f(x - h)) / (2.0 * h)


def fd2(f, x: float, h: float = 1e-4) -> float:
    return (f(x + h) - 2.0 * f(x) + f(x - h)) / (h * h)
