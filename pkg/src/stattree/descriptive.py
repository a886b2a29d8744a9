"""Central tendency and dispersion measures, boxplot statistics, and
quartile-fence outlier classification."""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass

from .dataset import sample_values

__all__ = [
    "DescriptiveSummary",
    "OutlierReport",
    "BoxplotStats",
    "mean",
    "median",
    "modes",
    "percentile",
    "sample_variance",
    "sample_stddev",
    "describe",
    "classify_outliers",
    "boxplot_stats",
]


@dataclass(frozen=True)
class DescriptiveSummary:
    n: int
    mean: float
    median: float
    modes: tuple[float, ...]
    min: float
    max: float
    range: float
    q1: float
    q3: float
    variance: float
    stddev: float

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "mean": self.mean,
            "median": self.median,
            "modes": list(self.modes),
            "min": self.min,
            "max": self.max,
            "range": self.range,
            "q1": self.q1,
            "q3": self.q3,
            "variance": self.variance,
            "stddev": self.stddev,
        }


@dataclass(frozen=True)
class OutlierReport:
    """Fence-based outlier bands around the interquartile spread L = Q3 - Q1.

    Values strictly outside the inner fences but no further than the outer
    fences are mild; values strictly beyond the outer fences are extreme.
    Points exactly on a fence count as inside.
    """

    l: float
    inner_fences: tuple[float, float]
    outer_fences: tuple[float, float]
    mild: tuple[float, ...]
    extreme: tuple[float, ...]

    def to_dict(self) -> dict:
        return {
            "l": self.l,
            "inner_fences": list(self.inner_fences),
            "outer_fences": list(self.outer_fences),
            "mild": list(self.mild),
            "extreme": list(self.extreme),
        }


@dataclass(frozen=True)
class BoxplotStats:
    q1: float
    median: float
    q3: float
    whisker_low: float
    whisker_high: float
    flagged_points: tuple[float, ...]

    def to_dict(self) -> dict:
        return {
            "q1": self.q1,
            "median": self.median,
            "q3": self.q3,
            "whisker_low": self.whisker_low,
            "whisker_high": self.whisker_high,
            "flagged_points": list(self.flagged_points),
        }


def mean(s) -> float:
    values = sample_values(s)
    if not values:
        raise ValueError("empty sample")
    return math.fsum(values) / len(values)


def median(s) -> float:
    values = sorted(sample_values(s))
    if not values:
        raise ValueError("empty sample")
    n = len(values)
    mid = n // 2
    if n % 2 == 1:
        return values[mid]
    return 0.5 * (values[mid - 1] + values[mid])


def modes(s) -> tuple[float, ...]:
    """All values attaining maximal multiplicity, empty when all distinct."""
    values = sample_values(s)
    if not values:
        raise ValueError("empty sample")
    counts = Counter(values)
    top = max(counts.values())
    if top < 2:
        return ()
    return tuple(sorted(v for v, c in counts.items() if c == top))


def percentile(s, p: float) -> float:
    """Order statistic at position (n + 1) * p with linear interpolation.

    Positions outside [1, n] clamp to the sample minimum or maximum.
    """
    values = sorted(sample_values(s))
    if not values:
        raise ValueError("empty sample")
    p = float(p)
    if not (0.0 <= p <= 1.0):
        raise ValueError("p must lie in [0, 1]")
    n = len(values)
    pos = (n + 1) * p
    if pos <= 1.0:
        return values[0]
    if pos >= n:
        return values[-1]
    k = int(math.floor(pos))
    frac = pos - k
    return values[k - 1] + frac * (values[k] - values[k - 1])


def sample_variance(s) -> float:
    values = sample_values(s)
    if len(values) < 2:
        raise ValueError("sample variance needs at least 2 values")
    m = math.fsum(values) / len(values)
    return math.fsum((v - m) ** 2 for v in values) / (len(values) - 1)


def sample_stddev(s) -> float:
    return math.sqrt(sample_variance(s))


def describe(s) -> DescriptiveSummary:
    values = sample_values(s)
    if len(values) < 2:
        raise ValueError("describe needs at least 2 values")
    lo, hi = min(values), max(values)
    var = sample_variance(values)
    return DescriptiveSummary(
        n=len(values),
        mean=mean(values),
        median=median(values),
        modes=modes(values),
        min=lo,
        max=hi,
        range=hi - lo,
        q1=percentile(values, 0.25),
        q3=percentile(values, 0.75),
        variance=var,
        stddev=math.sqrt(var),
    )


def _fences(values: list[float]) -> tuple[float, float, float, float, float]:
    q1 = percentile(values, 0.25)
    q3 = percentile(values, 0.75)
    l = q3 - q1
    return q1, q3, l, q1 - 1.5 * l, q3 + 1.5 * l


def classify_outliers(s) -> OutlierReport:
    values = sample_values(s)
    if len(values) < 4:
        raise ValueError("outlier classification needs at least 4 values")
    q1, q3, l, inner_lo, inner_hi = _fences(values)
    outer_lo, outer_hi = q1 - 3.0 * l, q3 + 3.0 * l
    mild = [
        v
        for v in values
        if (outer_lo <= v < inner_lo) or (inner_hi < v <= outer_hi)
    ]
    extreme = [v for v in values if v < outer_lo or v > outer_hi]
    return OutlierReport(
        l=l,
        inner_fences=(inner_lo, inner_hi),
        outer_fences=(outer_lo, outer_hi),
        mild=tuple(sorted(mild)),
        extreme=tuple(sorted(extreme)),
    )


def boxplot_stats(s) -> BoxplotStats:
    values = sample_values(s)
    if len(values) < 4:
        raise ValueError("boxplot statistics need at least 4 values")
    q1, q3, _, inner_lo, inner_hi = _fences(values)
    inside = [v for v in values if inner_lo <= v <= inner_hi]
    # The fences always contain the quartiles, so inside is never empty.
    whisker_low, whisker_high = min(inside), max(inside)
    flagged = sorted(v for v in values if v < whisker_low or v > whisker_high)
    return BoxplotStats(
        q1=q1,
        median=median(values),
        q3=q3,
        whisker_low=whisker_low,
        whisker_high=whisker_high,
        flagged_points=tuple(flagged),
    )
