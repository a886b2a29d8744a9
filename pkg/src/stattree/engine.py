"""The test-selection decision tree: normality gate, homogeneity gate,
parametric or nonparametric routing by treatment count, optional post-hoc,
with a complete audit trail."""

from __future__ import annotations

import json
from dataclasses import dataclass

from .dataset import GroupedSample
from .descriptive import DescriptiveSummary, OutlierReport, classify_outliers, describe
from .homogeneity import levene
from .location_tests import (
    AnovaResult,
    PairwiseResults,
    kruskal_wallis,
    mann_whitney,
    one_way_anova,
    pairwise_mann_whitney,
    tukey_hsd,
    two_sample_t,
)
from .normality import NormalityDecision, TestResult, normality_check

__all__ = [
    "EngineConfig",
    "TraceStep",
    "DecisionTrace",
    "AnalysisReport",
    "SCHEMA_VERSION",
    "route",
    "analyze",
]

SCHEMA_VERSION = "1"


@dataclass(frozen=True)
class EngineConfig:
    alpha: float = 0.05
    size_threshold: int = 30
    levene_center: str = "median"
    t_variant: str = "pooled"
    posthoc_correction: str = "none"

    def __post_init__(self) -> None:
        if not (0.0 < self.alpha < 1.0):
            raise ValueError("alpha must be in (0,1)")
        if self.size_threshold < 1:
            raise ValueError("size_threshold must be positive")
        if self.levene_center not in ("median", "mean"):
            raise ValueError("levene_center must be 'median' or 'mean'")
        if self.t_variant not in ("pooled", "welch"):
            raise ValueError("t_variant must be 'pooled' or 'welch'")
        if self.posthoc_correction not in ("none", "bonferroni"):
            raise ValueError("posthoc_correction must be 'none' or 'bonferroni'")

    def to_dict(self) -> dict:
        return {
            "alpha": self.alpha,
            "size_threshold": self.size_threshold,
            "levene_center": self.levene_center,
            "t_variant": self.t_variant,
            "posthoc_correction": self.posthoc_correction,
        }


@dataclass(frozen=True)
class TraceStep:
    """One visited node of the tree with the evidence that justified it."""

    node: str
    outcome: str
    evidence: dict

    def to_dict(self) -> dict:
        return {"node": self.node, "outcome": self.outcome, "evidence": self.evidence}


@dataclass(frozen=True)
class DecisionTrace:
    steps: tuple[TraceStep, ...]

    def to_dict(self) -> dict:
        return {"steps": [s.to_dict() for s in self.steps]}

    def nodes(self) -> list[str]:
        return [s.node for s in self.steps]


@dataclass(frozen=True)
class AnalysisReport:
    response_name: str
    factor_name: str
    config: EngineConfig
    per_group_descriptives: dict[str, DescriptiveSummary]
    outliers: dict[str, OutlierReport]
    normality: NormalityDecision
    homogeneity: TestResult
    trace: DecisionTrace
    primary: TestResult | AnovaResult
    posthoc: PairwiseResults | None
    conclusion: dict
    hypotheses: dict
    schema_version: str = SCHEMA_VERSION

    def to_dict(self) -> dict:
        return {
            "schema_version": self.schema_version,
            "response_name": self.response_name,
            "factor_name": self.factor_name,
            "config": self.config.to_dict(),
            "per_group_descriptives": {
                k: v.to_dict() for k, v in self.per_group_descriptives.items()
            },
            "outliers": {k: v.to_dict() for k, v in self.outliers.items()},
            "normality": self.normality.to_dict(),
            "homogeneity": self.homogeneity.to_dict(),
            "trace": self.trace.to_dict(),
            "primary": self.primary.to_dict(),
            "posthoc": self.posthoc.to_dict() if self.posthoc else None,
            "conclusion": dict(self.conclusion),
            "hypotheses": dict(self.hypotheses),
        }

    def to_json(self, indent: int | None = None) -> str:
        return json.dumps(self.to_dict(), indent=indent)


def route(normal: bool, homoscedastic: bool, k: int) -> str:
    """Name the primary test for the given gate outcomes and group count."""
    if k < 2:
        raise ValueError("k must be at least 2")
    if normal and homoscedastic:
        return "t" if k == 2 else "anova"
    return "mann_whitney" if k == 2 else "kruskal_wallis"


def _hypotheses(k: int) -> dict:
    if k == 2:
        return {
            "h0": "The two groups share the same central location.",
            "h1": "The two groups differ in central location.",
        }
    return {
        "h0": "All groups share the same central location.",
        "h1": "At least one group differs in central location.",
    }


def analyze(g: GroupedSample, config: EngineConfig = EngineConfig()) -> AnalysisReport:
    """Run the full decision tree on one grouped sample.

    Both gates (every group normal, variances homogeneous) must pass for
    the parametric branch.  The homogeneity test is always computed and
    recorded, but when the normality gate has already failed it is marked
    informational and the routing reason names the normality gate.  A
    post-hoc procedure runs only when the omnibus test rejects and there
    are more than two groups.

    Outlier fences need at least 4 values, so groups of size 3 appear in
    the descriptives but not in the outlier map.
    """
    for label, sample in g.items():
        if len(sample) < 3:
            raise ValueError(
                f"group {label!r} has {len(sample)} values; analysis needs "
                "at least 3 per group"
            )

    k = len(g.groups)
    alpha = config.alpha
    descriptives = {label: describe(s) for label, s in g.items()}
    outliers = {
        label: classify_outliers(s) for label, s in g.items() if len(s) >= 4
    }

    steps: list[TraceStep] = []
    normality = normality_check(g, alpha=alpha, size_threshold=config.size_threshold)
    for label, result in normality.per_group.items():
        steps.append(
            TraceStep(
                node="normality",
                outcome="pass" if result.p_value >= alpha else "fail",
                evidence={"group": label, "test": result.to_dict()},
            )
        )

    homogeneity = levene(g, center=config.levene_center)
    homoscedastic = homogeneity.p_value >= alpha
    steps.append(
        TraceStep(
            node="homoscedasticity",
            outcome="pass" if homoscedastic else "fail",
            evidence={
                "test": homogeneity.to_dict(),
                "center": config.levene_center,
                "informational": not normality.all_normal,
            },
        )
    )

    branch = route(normality.all_normal, homoscedastic, k)
    parametric = branch in ("t", "anova")
    if parametric:
        reason = "both gates passed"
    elif not normality.all_normal:
        reason = "normality gate failed"
    else:
        reason = "homoscedasticity gate failed"
    steps.append(
        TraceStep(
            node="branch_selection",
            outcome="parametric" if parametric else "nonparametric",
            evidence={
                "all_normal": normality.all_normal,
                "homoscedastic": homoscedastic,
                "k": k,
                "primary_test": branch,
                "reason": reason,
            },
        )
    )

    items = g.items()
    primary: TestResult | AnovaResult
    if branch == "t":
        primary = two_sample_t(items[0][1], items[1][1], variant=config.t_variant)
    elif branch == "anova":
        primary = one_way_anova(g)
    elif branch == "mann_whitney":
        primary = mann_whitney(items[0][1], items[1][1])
    else:
        primary = kruskal_wallis(g)
    reject = primary.p_value < alpha
    decision = "reject_h0" if reject else "fail_to_reject_h0"
    steps.append(
        TraceStep(
            node="primary_test",
            outcome=decision,
            evidence={"test": primary.to_dict()},
        )
    )

    posthoc = None
    if reject and k > 2:
        if branch == "anova":
            posthoc = tukey_hsd(g, alpha=alpha)
        else:
            posthoc = pairwise_mann_whitney(
                g, alpha=alpha, correction=config.posthoc_correction
            )
        significant = sum(c.significant_at_alpha for c in posthoc.comparisons)
        steps.append(
            TraceStep(
                node="posthoc",
                outcome=(
                    f"{significant} of {len(posthoc.comparisons)} pairs significant"
                ),
                evidence={"results": posthoc.to_dict()},
            )
        )

    return AnalysisReport(
        response_name=g.response_name,
        factor_name=g.factor_name,
        config=config,
        per_group_descriptives=descriptives,
        outliers=outliers,
        normality=normality,
        homogeneity=homogeneity,
        trace=DecisionTrace(tuple(steps)),
        primary=primary,
        posthoc=posthoc,
        conclusion={"decision": decision, "alpha": alpha},
        hypotheses=_hypotheses(k),
    )
