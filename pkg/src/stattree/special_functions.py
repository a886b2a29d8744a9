"""Distribution functions built from stdlib primitives.

Every CDF here reduces to ``math.erfc``/``math.lgamma`` plus the classical
series and continued-fraction expansions; nothing statistical is delegated
to an external library.  Accuracy targets: 1e-10 absolute for the scalar
CDFs, 1e-6 absolute for the studentized range (nested quadrature).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

__all__ = [
    "Tolerance",
    "std_normal_cdf",
    "std_normal_pdf",
    "std_normal_quantile",
    "regularized_incomplete_beta",
    "regularized_lower_gamma",
    "student_t_cdf",
    "f_cdf",
    "chi_square_cdf",
    "studentized_range_cdf",
]

_SQRT2 = math.sqrt(2.0)
_INV_SQRT_2PI = 1.0 / math.sqrt(2.0 * math.pi)


@dataclass(frozen=True)
class Tolerance:
    """Absolute-error target and iteration budget for iterative evaluations."""

    abs_eps: float = 1e-10
    max_iter: int = 300

    def __post_init__(self) -> None:
        if not self.abs_eps > 0.0:
            raise ValueError("abs_eps must be positive")
        if self.max_iter < 1:
            raise ValueError("max_iter must be at least 1")


_DEFAULT_TOL = Tolerance()


def _require_finite(name: str, value: float) -> float:
    value = float(value)
    if not math.isfinite(value):
        raise ValueError(f"{name} must be finite, got {value!r}")
    return value


def std_normal_cdf(z: float) -> float:
    """Standard normal CDF via the complementary error function."""
    z = _require_finite("z", z)
    return 0.5 * math.erfc(-z / _SQRT2)


def std_normal_pdf(z: float) -> float:
    """Standard normal density."""
    z = _require_finite("z", z)
    return _INV_SQRT_2PI * math.exp(-0.5 * z * z)


def std_normal_quantile(p: float, tol: Tolerance = _DEFAULT_TOL) -> float:
    """Inverse of :func:`std_normal_cdf` on (0, 1).

    Bracketed bisection narrows [-40, 40] to a short interval, then Newton
    steps (safeguarded to stay inside the bracket) polish the root.  Chosen
    for robustness over speed; quantiles are not a hot path here.
    """
    p = float(p)
    if not (0.0 < p < 1.0):
        raise ValueError("p must lie strictly inside (0, 1)")
    lo, hi = -40.0, 40.0
    while hi - lo > 1e-2:
        mid = 0.5 * (lo + hi)
        if std_normal_cdf(mid) < p:
            lo = mid
        else:
            hi = mid
    x = 0.5 * (lo + hi)
    for _ in range(tol.max_iter):
        f = std_normal_cdf(x) - p
        if f < 0.0:
            lo = x
        else:
            hi = x
        d = std_normal_pdf(x)
        nxt = x - f / d if d > 0.0 else 0.5 * (lo + hi)
        if not (lo <= nxt <= hi):
            nxt = 0.5 * (lo + hi)
        if abs(nxt - x) <= 1e-14 * max(1.0, abs(nxt)):
            return nxt
        x = nxt
    return x


def _beta_continued_fraction(a: float, b: float, x: float, tol: Tolerance) -> float:
    # Modified Lentz evaluation of the incomplete beta continued fraction.
    tiny = 1e-30
    qab = a + b
    qap = a + 1.0
    qam = a - 1.0
    c = 1.0
    d = 1.0 - qab * x / qap
    if abs(d) < tiny:
        d = tiny
    d = 1.0 / d
    h = d
    for m in range(1, tol.max_iter + 1):
        m2 = 2 * m
        num = m * (b - m) * x / ((qam + m2) * (a + m2))
        d = 1.0 + num * d
        if abs(d) < tiny:
            d = tiny
        c = 1.0 + num / c
        if abs(c) < tiny:
            c = tiny
        d = 1.0 / d
        h *= d * c
        num = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2))
        d = 1.0 + num * d
        if abs(d) < tiny:
            d = tiny
        c = 1.0 + num / c
        if abs(c) < tiny:
            c = tiny
        d = 1.0 / d
        delta = d * c
        h *= delta
        if abs(delta - 1.0) < tol.abs_eps:
            return h
    raise ArithmeticError("incomplete beta continued fraction did not converge")


def regularized_incomplete_beta(
    a: float, b: float, x: float, tol: Tolerance = _DEFAULT_TOL
) -> float:
    """Regularized incomplete beta function I_x(a, b).

    Continued fraction with the standard symmetry switch at
    x > (a + 1)/(a + b + 2), which keeps the fraction in its fast-converging
    region on both sides.
    """
    a = _require_finite("a", a)
    b = _require_finite("b", b)
    x = _require_finite("x", x)
    if a <= 0.0 or b <= 0.0:
        raise ValueError("shape parameters must be positive")
    if not (0.0 <= x <= 1.0):
        raise ValueError("x must lie in [0, 1]")
    if x == 0.0:
        return 0.0
    if x == 1.0:
        return 1.0
    ln_front = (
        math.lgamma(a + b)
        - math.lgamma(a)
        - math.lgamma(b)
        + a * math.log(x)
        + b * math.log1p(-x)
    )
    front = math.exp(ln_front)
    if x < (a + 1.0) / (a + b + 2.0):
        return min(1.0, max(0.0, front * _beta_continued_fraction(a, b, x, tol) / a))
    return min(1.0, max(0.0, 1.0 - front * _beta_continued_fraction(b, a, 1.0 - x, tol) / b))


def regularized_lower_gamma(s: float, x: float, tol: Tolerance = _DEFAULT_TOL) -> float:
    """Regularized lower incomplete gamma function P(s, x).

    Power series for x < s + 1, Lentz continued fraction for the upper tail
    otherwise; the split point is where each expansion converges fastest.
    """
    s = _require_finite("s", s)
    x = _require_finite("x", x)
    if s <= 0.0:
        raise ValueError("s must be positive")
    if x < 0.0:
        raise ValueError("x must be nonnegative")
    if x == 0.0:
        return 0.0
    ln_scale = -x + s * math.log(x) - math.lgamma(s)
    if x < s + 1.0:
        term = 1.0 / s
        total = term
        k = s
        for _ in range(tol.max_iter):
            k += 1.0
            term *= x / k
            total += term
            if abs(term) < abs(total) * tol.abs_eps:
                return min(1.0, max(0.0, total * math.exp(ln_scale)))
        raise ArithmeticError("incomplete gamma series did not converge")
    tiny = 1e-30
    b = x + 1.0 - s
    c = 1.0 / tiny
    d = 1.0 / b
    h = d
    for i in range(1, tol.max_iter + 1):
        num = -i * (i - s)
        b += 2.0
        d = num * d + b
        if abs(d) < tiny:
            d = tiny
        c = b + num / c
        if abs(c) < tiny:
            c = tiny
        d = 1.0 / d
        delta = d * c
        h *= delta
        if abs(delta - 1.0) < tol.abs_eps:
            return min(1.0, max(0.0, 1.0 - math.exp(ln_scale) * h))
    raise ArithmeticError("incomplete gamma continued fraction did not converge")


def student_t_cdf(t: float, df: float) -> float:
    """CDF of Student's t with ``df`` degrees of freedom."""
    t = _require_finite("t", t)
    df = _require_finite("df", df)
    if df <= 0.0:
        raise ValueError("df must be positive")
    if t == 0.0:
        return 0.5
    tail = 0.5 * regularized_incomplete_beta(0.5 * df, 0.5, df / (df + t * t))
    return tail if t < 0.0 else 1.0 - tail


def f_cdf(x: float, d1: float, d2: float) -> float:
    """CDF of the F distribution with (d1, d2) degrees of freedom."""
    x = _require_finite("x", x)
    d1 = _require_finite("d1", d1)
    d2 = _require_finite("d2", d2)
    if d1 <= 0.0 or d2 <= 0.0:
        raise ValueError("degrees of freedom must be positive")
    if x < 0.0:
        raise ValueError("x must be nonnegative")
    if x == 0.0:
        return 0.0
    return regularized_incomplete_beta(0.5 * d1, 0.5 * d2, d1 * x / (d1 * x + d2))


def chi_square_cdf(x: float, df: float) -> float:
    """CDF of the chi-square distribution with ``df`` degrees of freedom."""
    x = _require_finite("x", x)
    df = _require_finite("df", df)
    if df <= 0.0:
        raise ValueError("df must be positive")
    if x < 0.0:
        raise ValueError("x must be nonnegative")
    return regularized_lower_gamma(0.5 * df, 0.5 * x)


# 21-point Gauss-Legendre rule; adaptivity comes from interval halving below.
_GL_NODES, _GL_WEIGHTS = np.polynomial.legendre.leggauss(21)


def _gauss_legendre(f, a: float, b: float) -> float:
    mid = 0.5 * (a + b)
    half = 0.5 * (b - a)
    return half * math.fsum(w * f(mid + half * t) for t, w in zip(_GL_NODES, _GL_WEIGHTS))


def _adaptive_quadrature(f, a: float, b: float, eps: float, depth: int = 24) -> float:
    whole = _gauss_legendre(f, a, b)
    stack = [(a, b, whole, eps, depth)]
    total = 0.0
    while stack:
        a, b, whole, eps, depth = stack.pop()
        mid = 0.5 * (a + b)
        left = _gauss_legendre(f, a, mid)
        right = _gauss_legendre(f, mid, b)
        if abs(left + right - whole) <= eps:
            total += left + right
            continue
        if depth <= 0:
            raise ArithmeticError("adaptive quadrature did not converge")
        stack.append((a, mid, left, 0.5 * eps, depth - 1))
        stack.append((mid, b, right, 0.5 * eps, depth - 1))
    return total


def _range_of_k_normals_cdf(w: float, k: int, eps: float) -> float:
    """P(range of k iid standard normals <= w)."""
    if w <= 0.0:
        return 0.0

    def integrand(z: float) -> float:
        span = std_normal_cdf(z) - std_normal_cdf(z - w)
        return std_normal_pdf(z) * span ** (k - 1)

    # +-9 covers the normal mass to ~1e-19, far below the quadrature target.
    return k * _adaptive_quadrature(integrand, -9.0, 9.0, eps)


def studentized_range_cdf(
    q: float, k: int, df: float, tol: Tolerance = Tolerance(1e-8, 300)
) -> float:
    """CDF of the studentized range of k group means with ``df`` error dof.

    Classical double integral: the range CDF of k standard normals averaged
    over the scaled-chi distribution of the pooled standard deviation.  Both
    levels use adaptive Gauss-Legendre quadrature; the documented accuracy
    bound for the resulting probabilities is about 1e-6 absolute.
    """
    q = _require_finite("q", q)
    df = _require_finite("df", df)
    if not isinstance(k, (int, np.integer)) or k < 2:
        raise ValueError("k must be an integer >= 2")
    if df <= 0.0:
        raise ValueError("df must be positive")
    if q < 0.0:
        raise ValueError("q must be nonnegative")
    if q == 0.0:
        return 0.0

    inner_eps = tol.abs_eps * 0.1
    log_const = (
        (1.0 - 0.5 * df) * math.log(2.0)
        + 0.5 * df * math.log(df)
        - math.lgamma(0.5 * df)
    )

    def integrand(s: float) -> float:
        if s <= 0.0:
            return 0.0
        log_density = log_const + (df - 1.0) * math.log(s) - 0.5 * df * s * s
        if log_density < -745.0:
            return 0.0
        return math.exp(log_density) * _range_of_k_normals_cdf(q * s, k, inner_eps)

    upper = 1.0 + 12.0 / math.sqrt(df)
    value = _adaptive_quadrature(integrand, 0.0, upper, tol.abs_eps)
    return min(1.0, max(0.0, value))
