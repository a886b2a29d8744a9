"""Normality tests and the per-group sample-size dispatch of the decision
tree.

Shapiro-Wilk follows Royston's 1995 algorithm (the AS R94 route): normal
scores from the quantile function, polynomial-corrected and renormalized
half-sample coefficients, and a normalizing transformation of W for the
p-value.  The Kolmogorov-Smirnov variant compares the empirical CDF against
a normal fitted by sample mean and standard deviation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .dataset import GroupedSample, sample_values
from .special_functions import std_normal_cdf, std_normal_quantile

__all__ = [
    "TestResult",
    "NormalityDecision",
    "shapiro_wilk",
    "ks_normal",
    "normality_check",
]


@dataclass(frozen=True)
class TestResult:
    """Outcome of one statistical test."""

    method: str
    statistic_name: str
    statistic: float
    p_value: float
    df: float | tuple[float, float] | None = None
    n_per_group: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        if not math.isfinite(self.statistic):
            raise ValueError("statistic must be finite")
        if not (0.0 <= self.p_value <= 1.0):
            raise ValueError("p_value must lie in [0, 1]")
        if self.df is not None:
            dfs = self.df if isinstance(self.df, tuple) else (self.df,)
            if any(d <= 0 for d in dfs):
                raise ValueError("degrees of freedom must be positive")

    def to_dict(self) -> dict:
        return {
            "method": self.method,
            "statistic_name": self.statistic_name,
            "statistic": self.statistic,
            "p_value": self.p_value,
            "df": list(self.df) if isinstance(self.df, tuple) else self.df,
            "n_per_group": list(self.n_per_group),
        }


@dataclass(frozen=True)
class NormalityDecision:
    """Per-group normality results aggregated into one gate decision."""

    per_group: dict[str, TestResult]
    chosen_method: str
    all_normal: bool
    alpha: float

    def to_dict(self) -> dict:
        return {
            "per_group": {k: v.to_dict() for k, v in self.per_group.items()},
            "chosen_method": self.chosen_method,
            "all_normal": self.all_normal,
            "alpha": self.alpha,
        }


# Polynomial coefficients (highest power first) from Royston 1995.
_SW_C1 = (-2.706056, 4.434685, -2.07119, -0.147981, 0.221157, 0.0)
_SW_C2 = (-3.582633, 5.682633, -1.752461, -0.293762, 0.042981, 0.0)
_SW_C3 = (-0.0006714, 0.025054, -0.39978, 0.544)
_SW_C4 = (-0.0020322, 0.062767, -0.77857, 1.3822)
_SW_C5 = (0.0038915, -0.083751, -0.31082, -1.5861)
_SW_C6 = (0.0030302, -0.082676, -0.4803)
_SW_G = (0.459, -2.273)
_SW_PI6 = 1.909859
_SW_STQR = 1.047198


def _sw_coefficients(n: int) -> list[float]:
    """Half-sample coefficients a_1..a_{n//2} (positive, descending weight)."""
    if n == 3:
        return [math.sqrt(0.5)]
    n2 = n // 2
    m = [std_normal_quantile((i - 0.375) / (n + 0.25)) for i in range(1, n2 + 1)]
    summ2 = 2.0 * math.fsum(v * v for v in m)
    ssumm2 = math.sqrt(summ2)
    rsn = 1.0 / math.sqrt(n)
    a1 = np.polyval(_SW_C1, rsn) - m[0] / ssumm2
    if n > 5:
        a2 = np.polyval(_SW_C2, rsn) - m[1] / ssumm2
        fac = math.sqrt(
            (summ2 - 2.0 * m[0] ** 2 - 2.0 * m[1] ** 2)
            / (1.0 - 2.0 * a1 * a1 - 2.0 * a2 * a2)
        )
        coefs = [a1, a2] + [-v / fac for v in m[2:]]
    else:
        fac = math.sqrt((summ2 - 2.0 * m[0] ** 2) / (1.0 - 2.0 * a1 * a1))
        coefs = [a1] + [-v / fac for v in m[1:]]
    return coefs


def shapiro_wilk(s) -> TestResult:
    """Shapiro-Wilk W test against the normal family, 3 <= n <= 5000."""
    values = sorted(sample_values(s))
    n = len(values)
    if n < 3:
        raise ValueError("Shapiro-Wilk needs at least 3 values")
    if n > 5000:
        raise ValueError("Shapiro-Wilk supports at most 5000 values")
    if values[-1] == values[0]:
        raise ValueError("all values identical: zero variance")

    half = _sw_coefficients(n)
    # Antisymmetric full coefficient vector: -a_1 .. -a_k, (0,) a_k .. a_1.
    signed = [-c for c in half]
    if n % 2 == 1:
        signed.append(0.0)
    signed.extend(reversed(half))

    m = math.fsum(values) / n
    ssq = math.fsum((v - m) ** 2 for v in values)
    if ssq <= 0.0:
        # spread below double-precision resolution, e.g. subnormal gaps
        raise ValueError("sample variance is numerically zero")
    num = math.fsum(c * v for c, v in zip(signed, values))
    w = min(1.0, (num * num) / ssq)
    w1 = 1.0 - w

    if n == 3:
        arg = min(1.0, max(0.0, math.sqrt(w) if w > 0 else 0.0))
        p = _SW_PI6 * (math.asin(arg) - _SW_STQR)
        p = min(1.0, max(0.0, p))
        return TestResult("shapiro_wilk", "W", w, p, n_per_group=(n,))

    if w1 <= 0.0:
        return TestResult("shapiro_wilk", "W", w, 1.0, n_per_group=(n,))
    y = math.log(w1)
    if n <= 11:
        gamma = np.polyval(_SW_G, n)
        if y >= gamma:
            # W below the supported range of the transformation.
            return TestResult("shapiro_wilk", "W", w, 0.0, n_per_group=(n,))
        y = -math.log(gamma - y)
        mu = np.polyval(_SW_C3, n)
        sigma = math.exp(np.polyval(_SW_C4, n))
    else:
        ln_n = math.log(n)
        mu = np.polyval(_SW_C5, ln_n)
        sigma = math.exp(np.polyval(_SW_C6, ln_n))
    p = 1.0 - std_normal_cdf((y - mu) / sigma)
    return TestResult("shapiro_wilk", "W", w, min(1.0, max(0.0, p)), n_per_group=(n,))


def _kolmogorov_sf(lam: float) -> float:
    """Upper tail of the asymptotic Kolmogorov distribution at lam."""
    if lam <= 0.0:
        return 1.0
    if lam < 1.18:
        # Jacobi theta form, fast for small lam where the alternating
        # series would need many terms.
        t = math.pi * math.pi / (8.0 * lam * lam)
        total = 0.0
        for j in range(1, 200):
            term = math.exp(-((2 * j - 1) ** 2) * t)
            total += term
            if term < 1e-18:
                break
        return min(1.0, max(0.0, 1.0 - math.sqrt(2.0 * math.pi) / lam * total))
    total = 0.0
    for j in range(1, 200):
        term = math.exp(-2.0 * j * j * lam * lam)
        total += term if j % 2 == 1 else -term
        if term < 1e-18:
            break
    return min(1.0, max(0.0, 2.0 * total))


def _lilliefors_pvalue(d: float, n: int) -> float:
    """Tail probability of the KS statistic when the normal parameters were
    estimated from the data (Dallal-Wilkinson approximation).

    The formula targets the rejection region and is accurate for values
    below about 0.1; larger outputs are reported as computed, clamped to 1.
    """
    if n > 100:
        d = d * (n / 100.0) ** 0.49
        n = 100
    p = math.exp(
        -7.01256 * d * d * (n + 2.78019)
        + 2.99587 * d * math.sqrt(n + 2.78019)
        - 0.122119
        + 0.974598 / math.sqrt(n)
        + 1.67997 / n
    )
    return min(1.0, max(0.0, p))


def ks_normal(s, lilliefors: bool = False) -> TestResult:
    """One-sample Kolmogorov-Smirnov test against a fitted normal.

    The plain p-value uses the asymptotic Kolmogorov distribution at
    sqrt(n) * D.  Because the mean and standard deviation are estimated
    from the same data, that p-value is conservative (biased upward); set
    ``lilliefors=True`` for the corrected approximation.
    """
    values = sorted(sample_values(s))
    n = len(values)
    if n < 4:
        raise ValueError("the KS normality test needs at least 4 values")
    m = math.fsum(values) / n
    sd = math.sqrt(math.fsum((v - m) ** 2 for v in values) / (n - 1))
    if sd == 0.0:
        raise ValueError("all values identical: zero variance")
    d = 0.0
    for i, v in enumerate(values):
        f = std_normal_cdf((v - m) / sd)
        d = max(d, (i + 1) / n - f, f - i / n)
    if lilliefors:
        p = _lilliefors_pvalue(d, n)
        method = "ks_normal_lilliefors"
    else:
        p = _kolmogorov_sf(math.sqrt(n) * d)
        method = "ks_normal"
    return TestResult(method, "D", d, p, n_per_group=(n,))


def normality_check(
    g: GroupedSample, alpha: float = 0.05, size_threshold: int = 30
) -> NormalityDecision:
    """Test each group for normality, choosing the test by group size.

    Groups smaller than ``size_threshold`` use Shapiro-Wilk, the rest use
    the KS test; the method is recorded per group.  The gate passes only
    when every group's p-value is at least ``alpha``.
    """
    if not (0.0 < alpha < 1.0):
        raise ValueError("alpha must be in (0,1)")
    if size_threshold < 1:
        raise ValueError("size_threshold must be positive")
    per_group: dict[str, TestResult] = {}
    for label, sample in g.items():
        if len(sample) < 3:
            raise ValueError(
                f"group {label!r} has {len(sample)} values; "
                "normality testing needs at least 3"
            )
        if len(sample) < size_threshold:
            per_group[label] = shapiro_wilk(sample)
        else:
            per_group[label] = ks_normal(sample)
    methods = {r.method for r in per_group.values()}
    chosen = methods.pop() if len(methods) == 1 else "mixed"
    all_normal = all(r.p_value >= alpha for r in per_group.values())
    return NormalityDecision(
        per_group=per_group,
        chosen_method=chosen,
        all_normal=all_normal,
        alpha=alpha,
    )
