"""Simulation harness for empirical Type I / Type II error rates.

Reproducibility contract: data generation uses the counter-based Philox
bit generator keyed by the scenario seed, and replication r draws from the
stream ``Philox(key=seed).jumped(r)``.  Reports therefore do not depend on
execution order, and identical inputs give identical reports on any
platform.  Normal variates come from the library's own quantile function
applied to open-interval uniforms.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from numpy.random import Generator, Philox

from .dataset import GroupedSample, Sample
from .engine import EngineConfig, analyze
from .homogeneity import levene
from .location_tests import kruskal_wallis, mann_whitney, one_way_anova, two_sample_t
from .normality import shapiro_wilk
from .special_functions import std_normal_quantile

__all__ = [
    "GroupSpec",
    "Scenario",
    "ErrorRateReport",
    "simulate_error_rates",
    "TEST_IDS",
]

_TWO_53 = float(2**53)

TEST_IDS = (
    "t",
    "anova",
    "mann_whitney",
    "kruskal_wallis",
    "levene",
    "shapiro_wilk",
    "pipeline",
)


@dataclass(frozen=True)
class GroupSpec:
    """One group's generating distribution and sample size."""

    distribution: str
    params: tuple[float, ...]
    n: int

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ValueError("group size must be at least 1")
        if self.distribution == "normal":
            if len(self.params) != 2 or self.params[1] <= 0:
                raise ValueError("normal needs (mu, sigma) with sigma > 0")
        elif self.distribution == "uniform":
            if len(self.params) != 2 or self.params[0] >= self.params[1]:
                raise ValueError("uniform needs (a, b) with a < b")
        elif self.distribution == "exponential":
            if len(self.params) != 1 or self.params[0] <= 0:
                raise ValueError("exponential needs (rate,) with rate > 0")
        else:
            raise ValueError(f"unknown distribution {self.distribution!r}")


@dataclass(frozen=True)
class Scenario:
    group_specs: tuple[GroupSpec, ...]
    truth: str
    seed: int

    def __post_init__(self) -> None:
        if len(self.group_specs) < 1:
            raise ValueError("a scenario needs at least one group")
        if self.truth not in ("null", "alternative"):
            raise ValueError("truth must be 'null' or 'alternative'")
        if self.seed < 0:
            raise ValueError("seed must be nonnegative")


@dataclass(frozen=True)
class ErrorRateReport:
    replications: int
    rejections: int
    rate: float
    target_alpha: float
    ci_halfwidth: float

    def to_dict(self) -> dict:
        return {
            "replications": self.replications,
            "rejections": self.rejections,
            "rate": self.rate,
            "target_alpha": self.target_alpha,
            "ci_halfwidth": self.ci_halfwidth,
        }


def _uniforms(gen: Generator, n: int) -> list[float]:
    # Integers in [1, 2^53 - 1] scaled down: strictly inside (0, 1), so the
    # inverse-CDF transforms below never see 0 or 1.
    return [v / _TWO_53 for v in gen.integers(1, 2**53, size=n)]


def _draw_group(gen: Generator, spec: GroupSpec) -> list[float]:
    us = _uniforms(gen, spec.n)
    if spec.distribution == "normal":
        mu, sigma = spec.params
        return [mu + sigma * std_normal_quantile(u) for u in us]
    if spec.distribution == "uniform":
        a, b = spec.params
        return [a + (b - a) * u for u in us]
    rate = spec.params[0]
    return [-math.log(u) / rate for u in us]


def _rejects(test: str, samples: list[list[float]], alpha: float) -> bool:
    if test in ("t", "mann_whitney") and len(samples) != 2:
        raise ValueError(f"test {test!r} needs exactly 2 groups")
    if test == "t":
        return two_sample_t(samples[0], samples[1]).p_value < alpha
    if test == "mann_whitney":
        return mann_whitney(samples[0], samples[1]).p_value < alpha
    if test == "shapiro_wilk":
        # The normality null is a per-sample property; the first group is
        # the one under test.
        return shapiro_wilk(samples[0]).p_value < alpha
    grouped = GroupedSample(
        response_name="response",
        factor_name="group",
        groups={
            f"g{i + 1}": Sample(tuple(vals), label=f"g{i + 1}")
            for i, vals in enumerate(samples)
        },
    )
    if test == "anova":
        return one_way_anova(grouped).p_value < alpha
    if test == "kruskal_wallis":
        return kruskal_wallis(grouped).p_value < alpha
    if test == "levene":
        return levene(grouped).p_value < alpha
    if test == "pipeline":
        report = analyze(grouped, EngineConfig(alpha=alpha))
        return report.conclusion["decision"] == "reject_h0"
    raise ValueError(f"unknown test {test!r}; expected one of {TEST_IDS}")


def simulate_error_rates(
    scenario: Scenario, test: str, replications: int, alpha: float = 0.05
) -> ErrorRateReport:
    """Empirical rejection rate of ``test`` over replicated scenario draws.

    Under a null scenario the rate estimates the Type I error; under an
    alternative it estimates power.  Use at least 1000 replications for
    calibration-grade estimates; the report's ci_halfwidth is the 3-sigma
    binomial band around ``alpha``.
    """
    if replications < 1:
        raise ValueError("replications must be at least 1")
    if not (0.0 < alpha < 1.0):
        raise ValueError("alpha must be in (0,1)")
    if test not in TEST_IDS:
        raise ValueError(f"unknown test {test!r}; expected one of {TEST_IDS}")
    base = Philox(key=scenario.seed)
    rejections = 0
    for rep in range(replications):
        gen = Generator(base.jumped(rep))
        samples = [_draw_group(gen, spec) for spec in scenario.group_specs]
        if _rejects(test, samples, alpha):
            rejections += 1
    rate = rejections / replications
    return ErrorRateReport(
        replications=replications,
        rejections=rejections,
        rate=rate,
        target_alpha=alpha,
        ci_halfwidth=3.0 * math.sqrt(alpha * (1.0 - alpha) / replications),
    )
