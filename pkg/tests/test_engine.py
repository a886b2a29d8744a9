"""Decision engine tests: routing, trace completeness, report integrity."""

import json

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as hst

from stattree.dataset import GroupedSample, Sample, builtin_table2, select_response_factor
from stattree.engine import SCHEMA_VERSION, AnalysisReport, EngineConfig, analyze, route
from stattree.location_tests import AnovaResult
from stattree.normality import TestResult

DS = builtin_table2()
DIFF = "Difference (Expected - Held)"


def grouped(*samples, labels=None):
    labels = labels or [f"g{i}" for i in range(len(samples))]
    return GroupedSample(
        "r", "f", {lab: Sample(tuple(s)) for lab, s in zip(labels, samples)}
    )


def random_grouped(rng, k=None, n_range=(3, 25)):
    k = k or int(rng.integers(2, 5))
    return grouped(
        *[
            rng.normal(rng.uniform(-3, 3), rng.uniform(0.5, 3), size=int(rng.integers(*n_range))).tolist()
            for _ in range(k)
        ]
    )


class TestRouting:
    def test_route_table(self):
        assert route(True, True, 2) == "t"
        assert route(True, True, 3) == "anova"
        assert route(True, False, 2) == "mann_whitney"
        assert route(False, True, 2) == "mann_whitney"
        assert route(False, False, 2) == "mann_whitney"
        assert route(True, False, 4) == "kruskal_wallis"
        assert route(False, True, 5) == "kruskal_wallis"

    def test_both_gates_must_pass_for_parametric(self):
        for normal in (True, False):
            for homo in (True, False):
                branch = route(normal, homo, 2)
                if normal and homo:
                    assert branch == "t"
                else:
                    assert branch == "mann_whitney"


class TestConfig:
    def test_defaults(self):
        c = EngineConfig()
        assert c.alpha == 0.05
        assert c.size_threshold == 30
        assert c.levene_center == "median"
        assert c.t_variant == "pooled"
        assert c.posthoc_correction == "none"

    @pytest.mark.parametrize(
        "kwargs",
        [
            {"alpha": 0.0},
            {"alpha": 1.0},
            {"alpha": -0.2},
            {"size_threshold": 0},
            {"levene_center": "mode"},
            {"t_variant": "paired"},
            {"posthoc_correction": "fdr"},
        ],
    )
    def test_validation(self, kwargs):
        with pytest.raises(ValueError):
            EngineConfig(**kwargs)


class TestBundledPipelines:
    def test_two_groups_nonparametric_routing(self):
        # one group fails normality at 0.05, so the tree goes rank-based
        # even though the variance gate would have passed
        g = select_response_factor(DS, DIFF, "Moment")
        rep = analyze(g, EngineConfig())
        assert isinstance(rep.primary, TestResult)
        assert rep.primary.method == "mann_whitney"
        assert rep.primary.p_value == pytest.approx(0.005384940000, abs=1e-9)
        assert rep.conclusion["decision"] == "reject_h0"
        assert rep.posthoc is None
        branch = next(s for s in rep.trace.steps if s.node == "branch_selection")
        assert branch.outcome == "nonparametric"
        assert branch.evidence["reason"] == "normality gate failed"
        homo = next(s for s in rep.trace.steps if s.node == "homoscedasticity")
        assert homo.outcome == "pass"
        assert homo.evidence["informational"] is True

    def test_expected_by_moment(self):
        g = select_response_factor(DS, "Expected Hours", "Moment")
        rep = analyze(g, EngineConfig())
        assert rep.primary.method == "mann_whitney"
        assert rep.primary.p_value == pytest.approx(0.030703858073, abs=1e-9)
        assert rep.conclusion["decision"] == "reject_h0"
        assert rep.homogeneity.p_value == pytest.approx(0.005887595925, abs=1e-9)

    def test_anova_branch_with_tukey(self):
        g = select_response_factor(DS, DIFF, "Cases Size")
        rep = analyze(g, EngineConfig())
        assert isinstance(rep.primary, AnovaResult)
        assert rep.primary.p_value == pytest.approx(0.044622854673, abs=1e-9)
        assert rep.posthoc is not None
        assert rep.posthoc.family_method == "tukey_kramer"
        significant = [
            (c.label_a, c.label_b)
            for c in rep.posthoc.comparisons
            if c.significant_at_alpha
        ]
        assert significant == [("L", "S")]
        branch = next(s for s in rep.trace.steps if s.node == "branch_selection")
        assert branch.outcome == "parametric"
        assert branch.evidence["reason"] == "both gates passed"

    def test_kruskal_branch_with_pairwise(self):
        g = select_response_factor(DS, "Expected Hours", "Cases Size")
        rep = analyze(g, EngineConfig())
        assert rep.primary.method == "kruskal_wallis"
        assert rep.primary.p_value == pytest.approx(0.011035182880, abs=1e-9)
        assert rep.posthoc.family_method == "pairwise_mann_whitney"
        assert len(rep.posthoc.comparisons) == 3
        assert {(c.label_a, c.label_b) for c in rep.posthoc.comparisons} == {
            ("M", "L"),
            ("M", "S"),
            ("L", "S"),
        }

    def test_determinism(self):
        g = select_response_factor(DS, DIFF, "Cases Size")
        assert analyze(g).to_json() == analyze(g).to_json()


class TestTraceCompleteness:
    def check_trace(self, rep: AnalysisReport, k: int):
        nodes = [s.node for s in rep.trace.steps]
        assert nodes.count("normality") == k
        assert nodes.count("homoscedasticity") == 1
        assert nodes.count("branch_selection") == 1
        assert nodes.count("primary_test") == 1
        reject = rep.conclusion["decision"] == "reject_h0"
        assert nodes.count("posthoc") == (1 if reject and k > 2 else 0)
        assert (rep.posthoc is not None) == (reject and k > 2)
        # normality steps precede the homoscedasticity step, which precedes
        # branch selection, then the primary test, then any post-hoc
        order = {"normality": 0, "homoscedasticity": 1, "branch_selection": 2,
                 "primary_test": 3, "posthoc": 4}
        ranks = [order[n] for n in nodes]
        assert ranks == sorted(ranks)

    def test_many_random_datasets(self):
        rng = np.random.default_rng(71)
        for _ in range(40):
            g = random_grouped(rng)
            rep = analyze(g)
            self.check_trace(rep, len(g.groups))

    def test_shifted_alternative_with_three_groups(self):
        rng = np.random.default_rng(72)
        g = grouped(
            rng.normal(0, 1, 12).tolist(),
            rng.normal(0, 1, 12).tolist(),
            rng.normal(4, 1, 12).tolist(),
        )
        rep = analyze(g)
        assert rep.conclusion["decision"] == "reject_h0"
        self.check_trace(rep, 3)

    def test_posthoc_skipped_when_not_rejecting(self):
        rng = np.random.default_rng(73)
        g = grouped(*[rng.normal(0, 1, 10).tolist() for _ in range(3)])
        rep = analyze(g)
        assert rep.conclusion["decision"] == "fail_to_reject_h0"
        assert rep.posthoc is None
        assert "posthoc" not in [s.node for s in rep.trace.steps]


class TestConfigEffects:
    def test_alpha_changes_conclusion(self):
        g = select_response_factor(DS, DIFF, "Cases Size")
        strict = analyze(g, EngineConfig(alpha=0.01))
        assert strict.primary.p_value == pytest.approx(0.044622854673, abs=1e-9)
        assert strict.conclusion["decision"] == "fail_to_reject_h0"
        assert strict.posthoc is None

    def test_size_threshold_switches_normality_method(self):
        g = select_response_factor(DS, DIFF, "Moment")
        rep = analyze(g, EngineConfig(size_threshold=5))
        assert rep.normality.chosen_method == "ks_normal"
        # the n=8 groups pass the KS gate, flipping the branch parametric
        assert rep.normality.all_normal
        branch = next(s for s in rep.trace.steps if s.node == "branch_selection")
        assert branch.outcome == "parametric"
        assert rep.primary.method == "t_pooled"

    def test_welch_variant_respected(self):
        g = select_response_factor(DS, DIFF, "Moment")
        rep = analyze(g, EngineConfig(size_threshold=5, t_variant="welch"))
        assert rep.primary.method == "t_welch"

    def test_levene_center_recorded(self):
        g = select_response_factor(DS, DIFF, "Moment")
        rep = analyze(g, EngineConfig(levene_center="mean"))
        homo = next(s for s in rep.trace.steps if s.node == "homoscedasticity")
        assert homo.evidence["center"] == "mean"
        assert rep.homogeneity.p_value == pytest.approx(0.998748432309, abs=1e-9)

    def test_bonferroni_correction_passed_through(self):
        g = select_response_factor(DS, "Expected Hours", "Cases Size")
        rep = analyze(g, EngineConfig(posthoc_correction="bonferroni"))
        assert rep.posthoc.family_method == "pairwise_mann_whitney_bonferroni"
        assert not any(c.significant_at_alpha for c in rep.posthoc.comparisons)


class TestGroupSizeRules:
    def test_three_value_group_accepted_without_outlier_report(self):
        g = select_response_factor(DS, DIFF, "Cases Size")
        rep = analyze(g)
        assert set(rep.per_group_descriptives) == {"M", "L", "S"}
        # fence classification needs 4 points, so the n=3 group is omitted
        assert set(rep.outliers) == {"M", "L"}

    def test_two_value_group_rejected(self):
        g = grouped([1.0, 2.0], [3.0, 4.0, 5.0])
        with pytest.raises(ValueError, match="at least 3"):
            analyze(g)


class TestReportSerialization:
    @pytest.mark.parametrize(
        "response,factor",
        [
            (DIFF, "Moment"),
            ("Expected Hours", "Moment"),
            (DIFF, "Cases Size"),
            ("Expected Hours", "Cases Size"),
        ],
    )
    def test_json_round_trip_bit_exact(self, response, factor):
        rep = analyze(select_response_factor(DS, response, factor))
        d = rep.to_dict()
        assert json.loads(rep.to_json()) == d
        assert json.loads(json.dumps(d)) == d

    def test_schema_version_present(self):
        rep = analyze(select_response_factor(DS, DIFF, "Moment"))
        assert rep.schema_version == SCHEMA_VERSION
        assert rep.to_dict()["schema_version"] == SCHEMA_VERSION

    def test_all_numbers_are_plain_floats(self):
        rep = analyze(select_response_factor(DS, DIFF, "Cases Size"))

        def walk(obj, path="root"):
            if isinstance(obj, dict):
                for key, value in obj.items():
                    walk(value, f"{path}.{key}")
            elif isinstance(obj, list):
                for i, value in enumerate(obj):
                    walk(value, f"{path}[{i}]")
            elif obj is not None and not isinstance(obj, (str, bool)):
                assert type(obj) in (int, float), f"{path}: {type(obj)}"

        walk(rep.to_dict())

    def test_trace_serializes_evidence(self):
        rep = analyze(select_response_factor(DS, DIFF, "Moment"))
        d = rep.to_dict()
        nodes = [s["node"] for s in d["trace"]["steps"]]
        assert nodes == [
            "normality",
            "normality",
            "homoscedasticity",
            "branch_selection",
            "primary_test",
        ]
