"""Kernel sums, weighted kernel sums, and the classical special cases.

The plain kernel K_n(t, x) = sum_{k<=n} g_k(t) g_k(x) reproduces
polynomials of degree <= n under the family measure.  Replacing the
coefficients g_k(t) by an arbitrary positive sequence c_k gives the
weighted sums u_n = sum c_k g_k studied throughout this package; the
eigenvalue-scaled choice c_k = g_k(t0) / (c + spectral term) produces
the Jacobi- and Laguerre-type Sobolev families, and the Chebyshev
specialization t_n(c; x) admits fully explicit coefficients and bounds.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from typing import Union

import numpy as np

from .diffop import eigenvalue_jacobi, eigenvalue_laguerre
from .pencil import WeightSequence
from .polycore import (
    Chebyshev1,
    DensePolynomial,
    FamilySpec,
    Jacobi,
    LaguerreNeg,
    RecurrenceCoefficients,
    orthonormal_coeffs,
    orthonormal_values,
    recurrence_coefficients,
)

__all__ = [
    "PlainKernel",
    "EigScaledKernel",
    "SecondKind",
    "ModifiedKernelSpec",
    "generate_weights",
    "kernel_poly",
    "modified_kernel",
    "modified_kernel_values",
    "second_kind_eval",
    "second_kind_values",
    "jacobi_sobolev_poly",
    "laguerre_sobolev_poly",
    "chebyshev_t",
    "chebyshev_t_with_derivative",
    "chebyshev_bounds_check",
    "quadratic_discriminant",
]


def _check_edge(family: FamilySpec, t0: float) -> None:
    if t0 < family.edge:
        raise ValueError(
            f"t0 = {t0} lies below the support edge {family.edge} of {family.name}; "
            "kernel weights are only guaranteed positive from the edge upward"
        )


@dataclass(frozen=True)
class PlainKernel:
    """Weights c_k = g_k(t0) with t0 at or beyond the support edge."""

    t0: float


@dataclass(frozen=True)
class EigScaledKernel:
    """Weights c_k = g_k(t0) / (c + spectral term of index k), c > 0."""

    c: float
    t0: float

    def __post_init__(self) -> None:
        if not self.c > 0.0:
            raise ValueError("the eigenvalue shift c must be positive")


@dataclass(frozen=True)
class SecondKind:
    """c_0 = 1 and c_k = q_k(t0) for k >= 1, q the second-kind solution.

    Only admissible when every generated value is strictly positive;
    generation fails eagerly naming the first offending index.
    """

    t0: float


WeightRule = Union[PlainKernel, EigScaledKernel, SecondKind]


@dataclass(frozen=True)
class ModifiedKernelSpec:
    """A family together with a weight sequence (or a rule producing one)."""

    family: FamilySpec
    weights: Union[WeightSequence, WeightRule]
    n_max: int

    def resolve(self) -> tuple[RecurrenceCoefficients, WeightSequence]:
        rc = recurrence_coefficients(self.family, self.n_max + 2)
        if isinstance(self.weights, WeightSequence):
            return rc, self.weights
        return rc, generate_weights(self.family, rc, self.weights, self.n_max + 2)


def _spectral_term(family: FamilySpec, k: np.ndarray) -> np.ndarray:
    if isinstance(family, Jacobi):
        return k * (k + family.alpha + family.beta + 1.0)
    if isinstance(family, LaguerreNeg):
        return k.astype(float)
    if isinstance(family, Chebyshev1):
        return k.astype(float) ** 2
    raise TypeError(f"unknown family {family!r}")


def generate_weights(
    family: FamilySpec, rc: RecurrenceCoefficients, rule: WeightRule, n_max: int
) -> WeightSequence:
    """Materialize a weight rule as explicit c_0..c_{n_max}."""
    if isinstance(rule, PlainKernel):
        _check_edge(family, rule.t0)
        vals = orthonormal_values(rc, n_max, rule.t0)
    elif isinstance(rule, EigScaledKernel):
        _check_edge(family, rule.t0)
        k = np.arange(n_max + 1)
        vals = orthonormal_values(rc, n_max, rule.t0) / (rule.c + _spectral_term(family, k))
    elif isinstance(rule, SecondKind):
        q = second_kind_values(rc, n_max, rule.t0)
        vals = q.copy()
        vals[0] = 1.0
    else:
        raise TypeError(f"unknown weight rule {rule!r}")
    bad = np.flatnonzero(~(vals > 0.0))
    if bad.size:
        raise ValueError(
            f"weight rule {rule!r} produced a nonpositive value {vals[bad[0]]} at index {int(bad[0])}"
        )
    return WeightSequence(vals)


def kernel_poly(family: FamilySpec, t: float, n: int, x) -> float:
    """K_n(t, x) = sum_{k<=n} g_k(t) g_k(x)."""
    rc = recurrence_coefficients(family, max(n, 1))
    gt = orthonormal_values(rc, n, t)
    gx = orthonormal_values(rc, n, x)
    res = np.tensordot(gt, gx, axes=(0, 0))
    if np.isscalar(x) or np.asarray(x).ndim == 0:
        return float(res)
    return res


def modified_kernel(spec: ModifiedKernelSpec, n: int) -> DensePolynomial:
    """u_n = sum_{k<=n} c_k g_k in the monomial coefficient basis."""
    if n > spec.n_max:
        raise ValueError(f"n = {n} exceeds the spec range n_max = {spec.n_max}")
    rc, w = spec.resolve()
    w.require(n)
    acc = DensePolynomial.zero()
    for k in range(n + 1):
        acc = acc + w[k] * orthonormal_coeffs(spec.family, rc, k)
    return acc


def modified_kernel_values(spec: ModifiedKernelSpec, n: int, x) -> np.ndarray:
    """Values u_0(x)..u_n(x) by direct summation of the recurrence table.

    Usable beyond the coefficient degree cap.
    """
    if n > spec.n_max:
        raise ValueError(f"n = {n} exceeds the spec range n_max = {spec.n_max}")
    rc, w = spec.resolve()
    w.require(n)
    g = orthonormal_values(rc, n, x)
    return np.cumsum(w.c[: n + 1].reshape((n + 1,) + (1,) * (g.ndim - 1)) * g, axis=0)


def second_kind_values(rc: RecurrenceCoefficients, n: int, t) -> np.ndarray:
    """Table q_0(t)..q_n(t) of the second-kind recurrence solution.

    Initialized q_0 = 0 and q_1 = 1/(a_hat[0] g0), after which q obeys
    the same three-term recurrence as the orthonormal family.
    """
    if n < 0:
        raise ValueError("n must be nonnegative")
    if n > 1:
        rc.require(n - 1)
    ta = np.asarray(t, dtype=float)
    out = np.zeros((n + 1,) + ta.shape)
    if n >= 1:
        out[1] = 1.0 / (rc.a_hat[0] * rc.g0)
    for k in range(1, n):
        out[k + 1] = ((ta - rc.b_hat[k]) * out[k] - rc.a_hat[k - 1] * out[k - 1]) / rc.a_hat[k]
    return out


def second_kind_eval(family: FamilySpec, rc: RecurrenceCoefficients, n: int, t: float) -> float:
    """q_n(t); n = 0 returns the identically-zero solution with a warning."""
    if n == 0:
        warnings.warn("q_0 is identically zero; a second-kind value needs n >= 1", stacklevel=2)
        return 0.0
    return float(second_kind_values(rc, n, t)[n])


def jacobi_sobolev_poly(alpha: float, beta: float, c: float, t0: float, n: int) -> DensePolynomial:
    """Eigenvalue-scaled Jacobi kernel sum of order n; t0 >= 1, c > 0."""
    if not c > 0.0:
        raise ValueError("c must be positive")
    fam = Jacobi(alpha, beta)
    if t0 < 1.0:
        raise ValueError(f"t0 = {t0} must be at least 1")
    rc = recurrence_coefficients(fam, max(n, 1))
    gt = orthonormal_values(rc, n, t0)
    acc = DensePolynomial.zero()
    for k in range(n + 1):
        acc = acc + (gt[k] / eigenvalue_jacobi(k, alpha, beta, c)) * orthonormal_coeffs(fam, rc, k)
    return acc


def laguerre_sobolev_poly(alpha: float, c: float, t0: float, n: int) -> DensePolynomial:
    """Eigenvalue-scaled reflected-Laguerre kernel sum; t0 >= 0, c > 0."""
    if not c > 0.0:
        raise ValueError("c must be positive")
    fam = LaguerreNeg(alpha)
    if t0 < 0.0:
        raise ValueError(f"t0 = {t0} must be at least 0")
    rc = recurrence_coefficients(fam, max(n, 1))
    gt = orthonormal_values(rc, n, t0)
    acc = DensePolynomial.zero()
    for k in range(n + 1):
        acc = acc + (gt[k] / eigenvalue_laguerre(k, c)) * orthonormal_coeffs(fam, rc, k)
    return acc


def _chebyshev_pair(n: int, x) -> tuple[np.ndarray, np.ndarray]:
    # T_k and T_k' for k = 0..n via the first-kind recurrence
    xa = np.asarray(x, dtype=float)
    tk = np.zeros((n + 1,) + xa.shape)
    dk = np.zeros_like(tk)
    tk[0] = 1.0
    if n >= 1:
        tk[1] = xa
        dk[1] = 1.0
    for k in range(1, n):
        tk[k + 1] = 2.0 * xa * tk[k] - tk[k - 1]
        dk[k + 1] = 2.0 * tk[k] + 2.0 * xa * dk[k] - dk[k - 1]
    return tk, dk


def chebyshev_t(c: float, n: int, x) -> float:
    """t_n(c; x) = 1/(pi c) + (2/pi) sum_{k=1}^n T_k(x)/(k^2 + c)."""
    if not c > 0.0:
        raise ValueError("c must be positive")
    tk, _ = _chebyshev_pair(n, x)
    k = np.arange(1, n + 1)
    acc = np.full(np.asarray(x, dtype=float).shape, 1.0 / (math.pi * c))
    if n >= 1:
        acc = acc + (2.0 / math.pi) * np.tensordot(1.0 / (k * k + c), tk[1:], axes=(0, 0))
    if np.isscalar(x) or np.asarray(x).ndim == 0:
        return float(acc)
    return acc


def chebyshev_t_with_derivative(c: float, n: int, x) -> tuple[np.ndarray, np.ndarray]:
    """(t_n(c; x), t_n'(c; x)) over an array of points."""
    if not c > 0.0:
        raise ValueError("c must be positive")
    tk, dk = _chebyshev_pair(n, x)
    k = np.arange(1, n + 1)
    val = np.full(np.asarray(x, dtype=float).shape, 1.0 / (math.pi * c))
    der = np.zeros_like(val)
    if n >= 1:
        scale = 1.0 / (k * k + c)
        val = val + (2.0 / math.pi) * np.tensordot(scale, tk[1:], axes=(0, 0))
        der = der + (2.0 / math.pi) * np.tensordot(scale, dk[1:], axes=(0, 0))
    return val, der


def chebyshev_bounds_check(c: float, n: int, grid_size: int) -> tuple[float, float, bool]:
    """Grid maxima of |t_n| and |t_n'| on [-1, 1] against the explicit bounds.

    The grid joins ``grid_size`` uniform points with the same number of
    Chebyshev nodes; the bounds |t_n| <= 1/(pi c) + 2n/pi and
    |t_n'| <= 2n/pi hold pointwise, so a grid check is sound.
    """
    if grid_size < 2:
        raise ValueError("grid_size must be at least 2")
    uniform = np.linspace(-1.0, 1.0, grid_size)
    cheb = np.cos((2.0 * np.arange(1, grid_size + 1) - 1.0) * math.pi / (2.0 * grid_size))
    grid = np.concatenate([uniform, cheb])
    val, der = chebyshev_t_with_derivative(c, n, grid)
    max_val = float(np.abs(val).max())
    max_der = float(np.abs(der).max())
    ok = max_val <= 1.0 / (math.pi * c) + 2.0 * n / math.pi and max_der <= 2.0 * n / math.pi
    return max_val, max_der, ok


def quadratic_discriminant(u2: DensePolynomial) -> float:
    """B^2 - 4AC for a degree-2 polynomial A x^2 + B x + C."""
    if u2.degree != 2:
        raise ValueError(f"discriminant needs a degree-2 polynomial, got degree {u2.degree}")
    cc, bb, aa = u2.coeffs
    return float(bb * bb - 4.0 * aa * cc)
