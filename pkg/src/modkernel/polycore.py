"""Dense polynomials and orthonormal classical families.

Three families are supported, each orthonormal with positive leading
coefficients against its weight:

* ``Jacobi(alpha, beta)`` on [-1, 1] with weight (1-x)^alpha (1+x)^beta,
* ``LaguerreNeg(alpha)`` on (-inf, 0] with weight (-x)^alpha e^x,
* ``Chebyshev1`` on [-1, 1] with weight 1/sqrt(1-x^2).

Values and the first two derivatives are produced by running the
three-term recurrence together with its differentiated forms, which is
stable far beyond where monomial coefficients stop being trustworthy.
Monomial coefficient extraction is therefore capped (default degree 40).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Union

import numpy as np

from .gammafn import beta_fn, gamma_fn

__all__ = [
    "COEFF_DEGREE_CAP",
    "DensePolynomial",
    "RecurrenceCoefficients",
    "Jacobi",
    "LaguerreNeg",
    "Chebyshev1",
    "FamilySpec",
    "poly_eval",
    "poly_derivative",
    "recurrence_coefficients",
    "orthonormal_eval2",
    "orthonormal_values",
    "orthonormal_coeffs",
]

#: Monomial bases become ill-conditioned with degree; coefficient
#: extraction beyond this cap must be requested explicitly.
COEFF_DEGREE_CAP = 40


class DensePolynomial:
    """Real polynomial stored as ascending monomial coefficients.

    ``coeffs[k]`` multiplies x^k.  Trailing zero coefficients are
    trimmed on construction, so the leading coefficient is nonzero
    except for the zero polynomial (which has ``degree == -1``).
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs) -> None:
        c = np.atleast_1d(np.asarray(coeffs, dtype=float))
        if c.ndim != 1:
            raise ValueError("coefficients must be one-dimensional")
        n = c.size
        while n > 1 and c[n - 1] == 0.0:
            n -= 1
        self.coeffs = c[:n].copy()

    @classmethod
    def zero(cls) -> "DensePolynomial":
        return cls([0.0])

    @classmethod
    def constant(cls, value: float) -> "DensePolynomial":
        return cls([value])

    @classmethod
    def identity(cls) -> "DensePolynomial":
        """The polynomial x."""
        return cls([0.0, 1.0])

    @property
    def degree(self) -> int:
        """Exact degree; -1 marks the zero polynomial."""
        if self.coeffs.size == 1 and self.coeffs[0] == 0.0:
            return -1
        return self.coeffs.size - 1

    @property
    def is_zero(self) -> bool:
        return self.degree == -1

    def __call__(self, x):
        """Horner evaluation; accumulates in extended precision.

        Accepts a scalar or ndarray.  The wider accumulator keeps the
        round-off of high-degree evaluations well below the coefficient
        representation error.
        """
        arr = np.asarray(x, dtype=np.longdouble)
        acc = np.zeros_like(arr)
        for ck in self.coeffs[::-1]:
            acc = acc * arr + np.longdouble(ck)
        if np.isscalar(x) or np.asarray(x).ndim == 0:
            return float(acc)
        return acc.astype(float)

    def derivative(self) -> "DensePolynomial":
        if self.coeffs.size == 1:
            return DensePolynomial.zero()
        return DensePolynomial(self.coeffs[1:] * np.arange(1, self.coeffs.size))

    def shifted(self, h: float) -> "DensePolynomial":
        """Compose with a shift: returns q with q(x) = p(x + h)."""
        # synthetic division by (x - (-h)), repeated
        out = self.coeffs.copy()
        n = out.size
        for start in range(1, n):
            for k in range(n - 1, start - 1, -1):
                out[k - 1] += h * out[k]
        return DensePolynomial(out)

    def _binop(self, other, sign: float) -> "DensePolynomial":
        oc = other.coeffs if isinstance(other, DensePolynomial) else np.atleast_1d(np.asarray(other, float))
        n = max(self.coeffs.size, oc.size)
        out = np.zeros(n)
        out[: self.coeffs.size] = self.coeffs
        out[: oc.size] += sign * oc
        return DensePolynomial(out)

    def __add__(self, other):
        return self._binop(other, 1.0)

    def __radd__(self, other):
        return self._binop(other, 1.0)

    def __sub__(self, other):
        return self._binop(other, -1.0)

    def __rsub__(self, other):
        return (-self)._binop(other, 1.0)

    def __neg__(self):
        return DensePolynomial(-self.coeffs)

    def __mul__(self, other):
        if isinstance(other, DensePolynomial):
            if self.is_zero or other.is_zero:
                return DensePolynomial.zero()
            return DensePolynomial(np.convolve(self.coeffs, other.coeffs))
        return DensePolynomial(self.coeffs * float(other))

    def __rmul__(self, other):
        return self.__mul__(other)

    def __repr__(self) -> str:
        return f"DensePolynomial(degree={self.degree}, coeffs={self.coeffs!r})"


def poly_eval(p: DensePolynomial, x: float) -> float:
    """Value of p at x (Horner scheme)."""
    return p(x)


def poly_derivative(p: DensePolynomial) -> DensePolynomial:
    """Coefficient-wise derivative; the degree drops by one."""
    return p.derivative()


@dataclass(frozen=True)
class Jacobi:
    """Weight (1-x)^alpha (1+x)^beta on [-1, 1]; alpha, beta > -1."""

    alpha: float
    beta: float
    name = "jacobi"
    support = (-1.0, 1.0)

    def __post_init__(self) -> None:
        if not (self.alpha > -1.0 and self.beta > -1.0):
            raise ValueError(f"Jacobi parameters must exceed -1, got ({self.alpha}, {self.beta})")

    @property
    def edge(self) -> float:
        return 1.0


@dataclass(frozen=True)
class LaguerreNeg:
    """Weight (-x)^alpha e^x on (-inf, 0]; alpha > -1.

    Realized by reflecting the orthonormal Laguerre family, with signs
    arranged so every member keeps a positive leading coefficient.
    """

    alpha: float
    name = "laguerre-neg"
    support = (-math.inf, 0.0)

    def __post_init__(self) -> None:
        if not self.alpha > -1.0:
            raise ValueError(f"LaguerreNeg parameter must exceed -1, got {self.alpha}")

    @property
    def edge(self) -> float:
        return 0.0


@dataclass(frozen=True)
class Chebyshev1:
    """First-kind Chebyshev weight 1/sqrt(1-x^2) on [-1, 1]."""

    name = "chebyshev1"
    support = (-1.0, 1.0)

    @property
    def edge(self) -> float:
        return 1.0


FamilySpec = Union[Jacobi, LaguerreNeg, Chebyshev1]


@dataclass(frozen=True)
class RecurrenceCoefficients:
    """Coefficients of x g_n = a_hat[n-1] g_{n-1} + b_hat[n] g_n + a_hat[n] g_{n+1}.

    ``mu0`` is the total mass of the weight and ``g0 = mu0**-0.5`` the
    value of the constant orthonormal polynomial.
    """

    a_hat: np.ndarray
    b_hat: np.ndarray
    mu0: float
    g0: float = field(init=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "a_hat", np.asarray(self.a_hat, dtype=float))
        object.__setattr__(self, "b_hat", np.asarray(self.b_hat, dtype=float))
        if self.a_hat.shape != self.b_hat.shape:
            raise ValueError("a_hat and b_hat must have equal length")
        if not np.all(self.a_hat > 0.0):
            raise ValueError("every off-diagonal coefficient a_hat[n] must be positive")
        if not self.mu0 > 0.0:
            raise ValueError("mu0 must be positive")
        object.__setattr__(self, "g0", self.mu0 ** -0.5)

    @property
    def n_max(self) -> int:
        return self.a_hat.size - 1

    def require(self, n: int) -> None:
        if not 0 <= n <= self.n_max:
            raise ValueError(f"index {n} outside the computed range 0..{self.n_max}")


def _jacobi_recurrence(alpha: float, beta: float, n_max: int) -> tuple[np.ndarray, np.ndarray]:
    # closed-form monic coefficients, symmetrized to the orthonormal form
    ab = alpha + beta
    b_hat = np.empty(n_max + 1)
    b_hat[0] = (beta - alpha) / (ab + 2.0)
    for k in range(1, n_max + 1):
        b_hat[k] = (beta * beta - alpha * alpha) / ((2.0 * k + ab) * (2.0 * k + ab + 2.0))
    sq = np.empty(n_max + 1)
    sq[0] = 4.0 * (alpha + 1.0) * (beta + 1.0) / ((ab + 2.0) ** 2 * (ab + 3.0))
    for k in range(2, n_max + 2):
        s = 2.0 * k + ab
        sq[k - 1] = 4.0 * k * (k + alpha) * (k + beta) * (k + ab) / (s * s * (s + 1.0) * (s - 1.0))
    return np.sqrt(sq), b_hat


def recurrence_coefficients(family: FamilySpec, n_max: int) -> RecurrenceCoefficients:
    """Recurrence data a_hat[0..n_max], b_hat[0..n_max] for the family.

    Parameters
    ----------
    family : FamilySpec
        One of Jacobi, LaguerreNeg, Chebyshev1.
    n_max : int
        Highest index produced; evaluation of g_0..g_{n_max+1} is then
        possible.
    """
    if n_max < 0:
        raise ValueError("n_max must be nonnegative")
    if isinstance(family, Jacobi):
        a_hat, b_hat = _jacobi_recurrence(family.alpha, family.beta, n_max)
        mu0 = 2.0 ** (family.alpha + family.beta + 1.0) * beta_fn(family.alpha + 1.0, family.beta + 1.0)
    elif isinstance(family, LaguerreNeg):
        n = np.arange(n_max + 1, dtype=float)
        a_hat = np.sqrt((n + 1.0) * (n + family.alpha + 1.0))
        b_hat = -(2.0 * n + family.alpha + 1.0)
        mu0 = gamma_fn(family.alpha + 1.0)
    elif isinstance(family, Chebyshev1):
        a_hat = np.full(n_max + 1, 0.5)
        a_hat[0] = 1.0 / math.sqrt(2.0)
        b_hat = np.zeros(n_max + 1)
        mu0 = math.pi
    else:
        raise TypeError(f"unknown family {family!r}")
    return RecurrenceCoefficients(a_hat=a_hat, b_hat=b_hat, mu0=mu0)


def orthonormal_eval2(
    family: FamilySpec, rc: RecurrenceCoefficients, n: int, x: float
) -> tuple[float, float, float]:
    """(g_n(x), g_n'(x), g_n''(x)) by simultaneous recurrences.

    The value recurrence is differentiated once and twice and all three
    are advanced together; g_0 is the constant rc.g0.
    """
    if n < 0:
        raise ValueError("n must be nonnegative")
    if n > 0:
        rc.require(n - 1)
    v_prev, d1_prev, d2_prev = 0.0, 0.0, 0.0
    v, d1, d2 = rc.g0, 0.0, 0.0
    for k in range(n):
        a_k = rc.a_hat[k]
        b_k = rc.b_hat[k]
        a_km1 = rc.a_hat[k - 1] if k >= 1 else 0.0
        v_next = ((x - b_k) * v - a_km1 * v_prev) / a_k
        d1_next = ((x - b_k) * d1 + v - a_km1 * d1_prev) / a_k
        d2_next = ((x - b_k) * d2 + 2.0 * d1 - a_km1 * d2_prev) / a_k
        v_prev, d1_prev, d2_prev = v, d1, d2
        v, d1, d2 = v_next, d1_next, d2_next
    return v, d1, d2


def orthonormal_values(rc: RecurrenceCoefficients, n: int, x) -> np.ndarray:
    """Table of g_0(x)..g_n(x); x may be a scalar or ndarray.

    Returns shape (n+1,) for scalar x, else (n+1,) + x.shape.
    """
    if n < 0:
        raise ValueError("n must be nonnegative")
    if n > 0:
        rc.require(n - 1)
    xa = np.asarray(x, dtype=float)
    out = np.zeros((n + 1,) + xa.shape)
    out[0] = rc.g0
    prev = np.zeros_like(xa)
    for k in range(n):
        a_km1 = rc.a_hat[k - 1] if k >= 1 else 0.0
        nxt = ((xa - rc.b_hat[k]) * out[k] - a_km1 * prev) / rc.a_hat[k]
        prev = out[k]
        out[k + 1] = nxt
    return out


def orthonormal_coeffs(
    family: FamilySpec,
    rc: RecurrenceCoefficients,
    n: int,
    max_degree: int = COEFF_DEGREE_CAP,
) -> DensePolynomial:
    """Monomial coefficients of g_n, positive leading coefficient.

    Raises beyond ``max_degree``: the monomial basis is too
    ill-conditioned there for the coefficients to mean much.
    """
    if n < 0:
        raise ValueError("n must be nonnegative")
    if n > max_degree:
        raise ValueError(f"degree {n} exceeds the coefficient cap {max_degree}")
    if n > 0:
        rc.require(n - 1)
    prev = np.zeros(1)
    cur = np.array([rc.g0])
    for k in range(n):
        nxt = np.zeros(k + 2)
        nxt[1:] = cur
        nxt[: k + 1] -= rc.b_hat[k] * cur
        if k >= 1:
            nxt[:k] -= rc.a_hat[k - 1] * prev
        nxt /= rc.a_hat[k]
        prev, cur = cur, nxt
    return DensePolynomial(cur)
