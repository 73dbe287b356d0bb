"""Bessel-kernel integral representations of the Laguerre-type sums.

For x < 0 the Laguerre polynomial values L_n^alpha(-x) equal a weighted
Bessel transform over [0, inf), and the eigenvalue-scaled sums at
t0 = 0 with integer shift c admit a double integral whose inner factor
is a terminating 2F0 series.  Everything here is evaluated honestly as
the stated integrals; the closed-form route through the orthonormal
family serves as the independent comparison side.

Numerical notes.  The Bessel series is summed in extended precision
with a running error estimate (the series suffers catastrophic
cancellation as the argument grows; the estimate is conservative).  The
outer integrand carries an algebraic factor t^(n+alpha) at the origin
which would ruin plain Gauss-Legendre convergence for non-integer
alpha, so that factor is absorbed exactly into a mapped Gauss rule for
the weight (1+s)^(n+alpha) and only the remaining entire part is
sampled.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .gammafn import gamma_fn
from .polycore import Jacobi, LaguerreNeg, orthonormal_values, recurrence_coefficients
from .quadrature import gauss_rule

__all__ = [
    "SeriesRangeError",
    "CutoffError",
    "SpecialFnConfig",
    "pochhammer",
    "bessel_j",
    "hyp2f0_terminating",
    "laguerre_via_bessel",
    "f_n_partial_sum",
    "sobolev_laguerre_integral_rep",
    "sobolev_laguerre_closed_form",
]


class SeriesRangeError(ValueError):
    """The ascending series cannot deliver the argument reliably."""


class CutoffError(RuntimeError):
    """Truncation or series round-off exceeds the accuracy budget."""


_LD_EPS = float(np.finfo(np.longdouble).eps)


@dataclass(frozen=True)
class SpecialFnConfig:
    """Tuning knobs for the integral evaluations.

    outer_cutoff = None picks the truncation point T automatically so
    the dropped tail is below ``tail_rel`` times the integrand peak;
    ``budget_rel`` caps the accumulated Bessel round-off estimate
    relative to the result scale before the evaluation refuses.
    """

    series_tol: float = 1e-15
    outer_cutoff: float | None = None
    outer_rule_size: int = 140
    inner_rule_size: int = 24
    bessel_zmax: float = 30.0
    tail_rel: float = 1e-16
    budget_rel: float = 1e-3

    def __post_init__(self) -> None:
        if not self.series_tol <= 1e-14:
            raise ValueError("series_tol must be at most 1e-14")
        if self.outer_rule_size < 8 or self.inner_rule_size < 4:
            raise ValueError("rule sizes are too small to mean anything")


DEFAULT_CONFIG = SpecialFnConfig()


def pochhammer(c: float, k: int) -> float:
    """Shifted factorial (c)_k = c (c+1) ... (c+k-1), with (c)_0 = 1."""
    acc = 1.0
    for j in range(k):
        acc *= c + j
    return acc


def _bessel_reg(nu: float, w, series_tol: float) -> tuple[np.ndarray, np.ndarray]:
    """Entire part A_nu(w) = sum (-1)^m w^m / (m! Gamma(m+nu+1)) and error estimate.

    J_nu(2 sqrt(w)) = w^(nu/2) A_nu(w) for w >= 0.  Terms are generated
    in extended precision; the returned estimate bounds the round-off
    from cancellation (conservatively) per component.
    """
    ld = np.longdouble
    wa = np.atleast_1d(np.asarray(w, dtype=ld))
    term = np.full_like(wa, ld(1.0) / ld(gamma_fn(nu + 1.0)))
    total = term.copy()
    peak = np.abs(term)
    w_top = float(wa.max()) if wa.size else 0.0
    m_cap = int(max(40, 2.0 * math.sqrt(max(w_top, 1.0)) + 60))
    m = 0
    for m in range(1, m_cap + 1):
        term = -term * wa / (ld(m) * ld(m + nu))
        total += term
        np.maximum(peak, np.abs(term), out=peak)
        if float(np.abs(term).max()) <= series_tol * max(float(np.abs(total).max()), 1e-300):
            break
    est = peak.astype(float) * (_LD_EPS * 4.0 * math.sqrt(m + 1.0))
    return total.astype(float), est


def bessel_j(
    nu: float, z, series_tol: float = 1e-15, zmax: float = DEFAULT_CONFIG.bessel_zmax
):
    """Bessel function of the first kind by its ascending series.

    Valid for nu > -1 and 0 <= z <= zmax; beyond the configured range
    the cancellation in the series outruns the extended-precision
    accumulator and the call refuses rather than degrade silently.
    """
    if not nu > -1.0:
        raise ValueError("bessel_j requires nu > -1")
    za = np.atleast_1d(np.asarray(z, dtype=float))
    if np.any(za < 0.0):
        raise ValueError("bessel_j requires z >= 0")
    if float(za.max()) > zmax:
        raise SeriesRangeError(
            f"z = {float(za.max())} exceeds the series-safe range {zmax}; "
            "the ascending series would lose the result to cancellation"
        )
    w = (za / 2.0) ** 2
    reg, _ = _bessel_reg(nu, w, series_tol)
    with np.errstate(divide="ignore"):
        powers = (za / 2.0) ** nu
    at_zero = 1.0 if nu == 0.0 else (0.0 if nu > 0.0 else math.inf)
    vals = np.where(za > 0.0, powers * reg, at_zero)
    if np.isscalar(z) or np.asarray(z).ndim == 0:
        return float(vals[0])
    return vals


def hyp2f0_terminating(n: int, theta):
    """Terminating sum 2F0(-n, 1; -; -1/theta) = sum_k (-n)_k (1)_k (-1/theta)^k / k!.

    theta = 0 is refused: the series form is singular there and the
    limit value is only meaningful inside the integrals below.
    """
    if n < 0:
        raise ValueError("n must be nonnegative")
    ta = np.atleast_1d(np.asarray(theta, dtype=float))
    if np.any(ta == 0.0):
        raise ValueError("theta = 0 is outside the series form; only the limit value exists")
    term = np.ones_like(ta)
    total = term.copy()
    for k in range(n):
        # (1)_k / k! == 1, so each step multiplies by (k - n)(-1/theta)
        term = term * (k - n) * (-1.0 / ta)
        total += term
    if np.isscalar(theta) or np.asarray(theta).ndim == 0:
        return float(total[0])
    return total


def _auto_cutoff(p: float, rel: float) -> float:
    """Smallest T with e^-T T^p below rel times the peak of e^-t t^p."""
    peak = math.exp(p * math.log(p) - p) if p > 0 else 1.0
    target = math.log(rel * peak)
    t = max(p + 5.0, 12.0)
    while -t + p * math.log(t) > target:
        t += 1.0
    return t


def _tail_guard(p: float, cutoff: float, rel: float) -> None:
    peak = math.exp(p * math.log(p) - p) if p > 0 else 1.0
    if math.exp(-cutoff + p * math.log(max(cutoff, 1e-9))) > rel * peak:
        raise CutoffError(
            f"cutoff T = {cutoff} leaves a tail above {rel} of the integrand peak "
            f"for decay exponent {p}"
        )


def _outer_rule(p: float, cutoff: float, size: int) -> tuple[np.ndarray, np.ndarray, float]:
    """Nodes, weights and mass factor for integral_0^T t^p g(t) dt.

    Built from the Gauss rule of the one-sided weight (1+s)^p on
    [-1, 1], mapped by t = T (1+s) / 2; the returned factor multiplies
    the plain weighted sum of g values.
    """
    fam = Jacobi(0.0, p)
    rc = recurrence_coefficients(fam, size)
    rule = gauss_rule(fam, rc, size)
    t = 0.5 * cutoff * (rule.nodes + 1.0)
    # t = T (1+s)/2 turns the target into (T/2)^(p+1) sum w_i g(t_i)
    factor = (0.5 * cutoff) ** (p + 1.0)
    return t, rule.weights, factor


def laguerre_via_bessel(alpha: float, n: int, x: float, cfg: SpecialFnConfig = DEFAULT_CONFIG) -> float:
    """L_n^alpha(-x) for x < 0 through its Bessel integral.

    Evaluates (1/n!) e^-x (-x)^(-alpha/2) times the integral over
    t in [0, T] of e^-t t^(n+alpha/2) J_alpha(2 sqrt(-t x)); the
    algebraic origin factor t^(n+alpha) (Bessel part included) is
    absorbed into the quadrature weight.
    """
    if not x < 0.0:
        raise ValueError("the Bessel route needs strictly negative x")
    if not alpha > -1.0:
        raise ValueError("alpha must exceed -1")
    if n < 0:
        raise ValueError("n must be nonnegative")
    p = n + alpha
    cutoff = cfg.outer_cutoff if cfg.outer_cutoff is not None else _auto_cutoff(n + alpha / 2.0, cfg.tail_rel)
    _tail_guard(n + alpha / 2.0, cutoff, cfg.tail_rel)
    t, w, factor = _outer_rule(p, cutoff, cfg.outer_rule_size)
    reg, reg_err = _bessel_reg(alpha, -t * x, cfg.series_tol)
    g = np.exp(-t) * (-x) ** (alpha / 2.0) * reg
    g_err = np.exp(-t) * (-x) ** (alpha / 2.0) * reg_err
    integral = factor * float(w @ g)
    budget = factor * float(np.abs(w) @ g_err)
    prefactor = math.exp(-x) * (-x) ** (-alpha / 2.0) / math.factorial(n)
    result = prefactor * integral
    if prefactor * budget > cfg.budget_rel * max(abs(result), 1.0):
        raise CutoffError(
            f"Bessel series round-off budget {prefactor * budget:.3g} exceeds "
            f"{cfg.budget_rel} of the result scale; reduce the cutoff or the argument range"
        )
    return result


def _inner_rule(size: int) -> tuple[np.ndarray, np.ndarray]:
    fam = Jacobi(0.0, 0.0)
    rc = recurrence_coefficients(fam, size)
    rule = gauss_rule(fam, rc, size)
    return rule.nodes, rule.weights


def f_n_partial_sum(c: int, n: int, t: float, cfg: SpecialFnConfig = DEFAULT_CONFIG) -> tuple[float, float]:
    """Both routes to f_n(t) = sum_{k<=n} t^k / ((k+c) k!), c a positive integer.

    Returns (direct sum, integral form); the integral form is
    (1/n!) t^-c integral_0^t theta^(n+c-1) 2F0(-n, 1; -; -1/theta) dtheta,
    evaluated with a mapped Gauss-Legendre rule (the integrand is a
    polynomial, so the rule is exact).
    """
    if not (isinstance(c, (int, np.integer)) and c >= 1):
        raise ValueError("c must be a positive integer")
    if not t > 0.0:
        raise ValueError("the integral form needs t > 0")
    direct = 0.0
    for k in range(n + 1):
        direct += t**k / ((k + c) * math.factorial(k))
    size = max(cfg.inner_rule_size, (n + c) // 2 + 2)
    s, w = _inner_rule(size)
    theta = 0.5 * t * (s + 1.0)
    vals = theta ** (n + c - 1) * hyp2f0_terminating(n, theta)
    integral = 0.5 * t * float(w @ vals)
    integral_form = integral * t ** (-c) / math.factorial(n)
    return direct, integral_form


def sobolev_laguerre_integral_rep(
    alpha: float, c: int, n: int, x: float, cfg: SpecialFnConfig = DEFAULT_CONFIG
) -> float:
    """Double-integral route to the edge Laguerre-type Sobolev sum, x < 0.

    Evaluates (1/(Gamma(alpha+1) n!)) e^-x (-x)^(-alpha/2) times the
    double integral of e^-t t^(alpha/2-c) theta^(n+c-1)
    J_alpha(2 sqrt(-tx)) 2F0(-n, 1; -; -1/theta) over 0 < theta < t < T.
    The inner integral is polynomial and handled exactly; the outer
    algebraic factor t^alpha is absorbed into the rule weight.
    """
    if not (isinstance(c, (int, np.integer)) and c >= 1):
        raise ValueError("c must be a positive integer")
    if not x < 0.0:
        raise ValueError("the integral representation needs strictly negative x")
    if not alpha > -1.0:
        raise ValueError("alpha must exceed -1")
    if n < 0:
        raise ValueError("n must be nonnegative")
    cutoff = cfg.outer_cutoff if cfg.outer_cutoff is not None else _auto_cutoff(n + alpha / 2.0, cfg.tail_rel)
    _tail_guard(n + alpha / 2.0, cutoff, cfg.tail_rel)
    t, w, factor = _outer_rule(alpha, cutoff, cfg.outer_rule_size)
    inner_size = max(cfg.inner_rule_size, (n + int(c)) // 2 + 2)
    s_in, w_in = _inner_rule(inner_size)
    theta = 0.5 * np.outer(t, s_in + 1.0)
    inner_vals = theta ** (n + c - 1) * hyp2f0_terminating(n, theta)
    inner = 0.5 * t * (inner_vals @ w_in)
    reg, reg_err = _bessel_reg(alpha, -t * x, cfg.series_tol)
    g = np.exp(-t) * (-x) ** (alpha / 2.0) * reg * inner / t ** float(c)
    g_err = np.exp(-t) * (-x) ** (alpha / 2.0) * reg_err * np.abs(inner) / t ** float(c)
    integral = factor * float(w @ g)
    budget = factor * float(np.abs(w) @ g_err)
    prefactor = math.exp(-x) * (-x) ** (-alpha / 2.0) / (gamma_fn(alpha + 1.0) * math.factorial(n))
    result = prefactor * integral
    if prefactor * budget > cfg.budget_rel * max(abs(result), 1.0):
        raise CutoffError(
            f"Bessel series round-off budget {prefactor * budget:.3g} exceeds "
            f"{cfg.budget_rel} of the result scale"
        )
    return result


def sobolev_laguerre_closed_form(alpha: float, c: float, n: int, x) -> float:
    """Independent route: the same sum through the orthonormal family.

    sum_{k<=n} g_k(0) g_k(x) / (k + c) with g the reflected-Laguerre
    orthonormal polynomials; no Bessel function or quadrature involved.
    """
    fam = LaguerreNeg(alpha)
    rc = recurrence_coefficients(fam, max(n, 1))
    g0v = orthonormal_values(rc, n, 0.0)
    gxv = orthonormal_values(rc, n, x)
    k = np.arange(n + 1, dtype=float)
    res = np.tensordot(g0v / (k + c), gxv, axes=(0, 0))
    if np.isscalar(x) or np.asarray(x).ndim == 0:
        return float(res)
    return res
