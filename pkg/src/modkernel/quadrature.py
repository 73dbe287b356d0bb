"""Gauss rules for the supported weights, built from the recurrence data.

Nodes are eigenvalues of the truncated symmetric tridiagonal recurrence
matrix; weights come from the squared first components of its
eigenvectors.  The eigensolver is an implicit-shift QL iteration that
tracks only those first components, which is all the construction needs.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .gammafn import beta_fn, gamma_fn
from .polycore import Chebyshev1, FamilySpec, Jacobi, LaguerreNeg, RecurrenceCoefficients

__all__ = ["QuadratureRule", "gauss_rule", "integrate", "weight_moments"]

# deflation threshold relative to the neighboring diagonal scale
_DEFLATION = 1e-14
_MAX_SWEEPS = 50


def _tridiag_eigen_first(d, e, max_iter: int = _MAX_SWEEPS):
    """Eigenvalues (ascending) and eigenvector first components.

    d: diagonal (length n), e: subdiagonal (length n-1).  Implicit-shift
    QL with deflation; raises RuntimeError if an eigenvalue fails to
    converge within ``max_iter`` sweeps.
    """
    d = np.array(d, dtype=float)
    n = d.size
    e = np.concatenate([np.asarray(e, dtype=float), [0.0]])
    z = np.zeros(n)
    z[0] = 1.0
    for l in range(n):
        iteration = 0
        while True:
            m = l
            while m < n - 1:
                if abs(e[m]) <= _DEFLATION * (abs(d[m]) + abs(d[m + 1])):
                    break
                m += 1
            if m == l:
                break
            if iteration == max_iter:
                raise RuntimeError(f"eigen-iteration did not converge for index {l}")
            iteration += 1
            g = (d[l + 1] - d[l]) / (2.0 * e[l])
            r = math.hypot(g, 1.0)
            g = d[m] - d[l] + e[l] / (g + math.copysign(r, g))
            s = c = 1.0
            p = 0.0
            underflow = False
            for i in range(m - 1, l - 1, -1):
                f = s * e[i]
                b = c * e[i]
                r = math.hypot(f, g)
                e[i + 1] = r
                if r == 0.0:
                    d[i + 1] -= p
                    e[m] = 0.0
                    underflow = True
                    break
                s = f / r
                c = g / r
                g = d[i + 1] - p
                r = (d[i] - g) * s + 2.0 * c * b
                p = s * r
                d[i + 1] = g + p
                g = c * r - b
                f = z[i + 1]
                z[i + 1] = s * z[i] + c * f
                z[i] = c * z[i] - s * f
            if not underflow:
                d[l] -= p
                e[l] = g
                e[m] = 0.0
    order = np.argsort(d, kind="stable")
    return d[order], z[order]


@dataclass(frozen=True)
class QuadratureRule:
    """Nodes and positive weights exact up to ``exact_degree``."""

    nodes: np.ndarray
    weights: np.ndarray
    exact_degree: int
    weight_id: FamilySpec

    def __post_init__(self) -> None:
        object.__setattr__(self, "nodes", np.asarray(self.nodes, dtype=float))
        object.__setattr__(self, "weights", np.asarray(self.weights, dtype=float))
        if self.nodes.shape != self.weights.shape:
            raise ValueError("nodes and weights must have equal length")
        if not np.all(self.weights > 0.0):
            raise ValueError("all quadrature weights must be positive")
        if self.nodes.size > 1 and not np.all(np.diff(self.nodes) > 0.0):
            raise ValueError("nodes must be strictly increasing")

    @property
    def size(self) -> int:
        return self.nodes.size


def gauss_rule(family: FamilySpec, rc: RecurrenceCoefficients, n_points: int) -> QuadratureRule:
    """N-point Gauss rule for the family weight.

    The rule integrates polynomials of degree up to 2N-1 exactly; the
    total weight equals the mass mu0 of the measure, and nodes lie
    strictly inside the support.
    """
    if n_points < 1:
        raise ValueError("a Gauss rule needs at least one node")
    if rc.n_max < n_points - 1:
        raise ValueError(f"recurrence data covers 0..{rc.n_max}, need 0..{n_points - 1}")
    d = rc.b_hat[:n_points]
    e = rc.a_hat[: n_points - 1]
    nodes, first = _tridiag_eigen_first(d, e)
    weights = rc.mu0 * first**2
    lo, hi = family.support
    if not (np.all(nodes > lo) and np.all(nodes < hi)):
        raise RuntimeError("computed nodes left the support interval")
    return QuadratureRule(nodes=nodes, weights=weights, exact_degree=2 * n_points - 1, weight_id=family)


def integrate(rule: QuadratureRule, f) -> float:
    """Sum of weights[i] * f(nodes[i]).

    ``f`` may be any callable accepting an ndarray (or scalar) of nodes;
    non-finite values at a node raise ValueError.
    """
    try:
        vals = np.asarray(f(rule.nodes), dtype=float)
        if vals.shape != rule.nodes.shape:
            raise TypeError
    except (TypeError, ValueError):
        vals = np.array([float(f(x)) for x in rule.nodes])
    if not np.all(np.isfinite(vals)):
        bad = int(np.flatnonzero(~np.isfinite(vals))[0])
        raise ValueError(f"integrand is not finite at node {bad} (x = {rule.nodes[bad]})")
    return float(rule.weights @ vals)


def weight_moments(family: FamilySpec, k_max: int) -> np.ndarray:
    """Moments m_k = integral of x^k against the family weight, k = 0..k_max.

    Computed from closed forms independent of any quadrature: a stable
    three-term moment recurrence for Jacobi, reflected gamma values for
    LaguerreNeg, and double-factorial ratios for Chebyshev1.  Used as
    the reference side of exactness certifications.
    """
    if k_max < 0:
        raise ValueError("k_max must be nonnegative")
    m = np.zeros(k_max + 1)
    if isinstance(family, Jacobi):
        a, b = family.alpha, family.beta
        m[0] = 2.0 ** (a + b + 1.0) * beta_fn(a + 1.0, b + 1.0)
        if k_max >= 1:
            m[1] = (b - a) / (a + b + 2.0) * m[0]
        for k in range(1, k_max):
            m[k + 1] = (k * m[k - 1] + (b - a) * m[k]) / (k + a + b + 2.0)
    elif isinstance(family, LaguerreNeg):
        a = family.alpha
        for k in range(k_max + 1):
            m[k] = (-1.0) ** k * gamma_fn(a + k + 1.0)
    elif isinstance(family, Chebyshev1):
        m[0] = math.pi
        val = math.pi
        for j in range(1, k_max // 2 + 1):
            val *= (2.0 * j - 1.0) / (2.0 * j)
            if 2 * j <= k_max:
                m[2 * j] = val
    else:
        raise TypeError(f"unknown family {family!r}")
    return m
