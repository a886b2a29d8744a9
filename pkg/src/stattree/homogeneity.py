"""Levene's test for equality of group variances.

The default centers each group at its median (the robust Brown-Forsythe
variant); mean centering is available through the ``center`` argument.
"""

from __future__ import annotations

import math

from .dataset import GroupedSample, sample_values
from .descriptive import mean as _mean
from .descriptive import median as _median
from .normality import TestResult
from .special_functions import f_cdf

__all__ = ["levene"]


def levene(g: GroupedSample, center: str = "median") -> TestResult:
    """One-way F test on absolute deviations from each group's center.

    The statistic is reported under its conventional name W; it follows an
    F distribution with (k - 1, N - k) degrees of freedom under the null of
    equal variances.
    """
    if center not in ("median", "mean"):
        raise ValueError("center must be 'median' or 'mean'")
    groups = [sample_values(s) for _, s in g.items()]
    k = len(groups)
    sizes = [len(v) for v in groups]
    if any(n < 2 for n in sizes):
        raise ValueError("every group needs at least 2 values")
    n_total = sum(sizes)
    if n_total < k + 1:
        raise ValueError("too few observations for the F denominator")

    center_fn = _median if center == "median" else _mean
    transformed = [[abs(v - center_fn(vals)) for v in vals] for vals in groups]
    if all(z == 0.0 for zs in transformed for z in zs):
        raise ValueError("absolute deviations are all zero: no spread to compare")

    group_means = [math.fsum(zs) / len(zs) for zs in transformed]
    grand = math.fsum(z for zs in transformed for z in zs) / n_total
    ss_between = math.fsum(
        n * (zm - grand) ** 2 for n, zm in zip(sizes, group_means)
    )
    ss_within = math.fsum(
        (z - zm) ** 2 for zs, zm in zip(transformed, group_means) for z in zs
    )
    if ss_within == 0.0:
        raise ValueError("within-group spread of absolute deviations is zero")
    statistic = (ss_between / (k - 1)) / (ss_within / (n_total - k))
    p = 1.0 - f_cdf(statistic, k - 1, n_total - k)
    return TestResult(
        method="levene",
        statistic_name="W",
        statistic=statistic,
        p_value=p,
        df=(float(k - 1), float(n_total - k)),
        n_per_group=tuple(sizes),
    )
