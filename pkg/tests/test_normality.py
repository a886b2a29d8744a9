"""Normality test suite.

scipy.stats.shapiro is the independent reference for the W statistic and
its p-value; statsmodels provides the reference for the Lilliefors-style
KS p-value.  Frozen literals below were produced by those references.
"""

import math

import numpy as np
import pytest
import scipy.special
import scipy.stats
from hypothesis import given
from hypothesis import strategies as hst
from statsmodels.stats.diagnostic import kstest_normal

from stattree.dataset import builtin_table2, select_response_factor
from stattree.normality import (
    NormalityDecision,
    TestResult,
    _kolmogorov_sf,
    ks_normal,
    normality_check,
    shapiro_wilk,
)

DS = builtin_table2()
DIFFS = list(DS.column("Difference (Expected - Held)").values)

distinct_samples = hst.lists(
    hst.floats(min_value=-1e4, max_value=1e4, allow_nan=False),
    min_size=3,
    max_size=60,
    unique=True,
).filter(lambda vs: max(vs) - min(vs) > 1e-6)  # exclude degenerate spreads


def reference_samples():
    rng = np.random.default_rng(2024)
    out = []
    for n in (3, 4, 5, 6, 11, 12, 25, 30, 80, 200):
        out.append(rng.normal(10, 3, size=n).tolist())
        out.append(rng.exponential(2, size=n).tolist())
        out.append(rng.uniform(-1, 1, size=n).tolist())
    return out


class TestShapiroWilk:
    def test_matches_reference_implementation(self):
        for values in reference_samples():
            ref_w, ref_p = scipy.stats.shapiro(values)
            mine = shapiro_wilk(values)
            assert mine.statistic == pytest.approx(ref_w, abs=1e-8)
            assert mine.p_value == pytest.approx(ref_p, abs=1e-5)

    def test_bundled_groups_frozen(self):
        # frozen from scipy.stats.shapiro
        expected = {
            ("Difference (Expected - Held)", "Moment", "Before"): (
                0.753708660797,
                0.008976408678,
            ),
            ("Difference (Expected - Held)", "Moment", "After"): (
                0.850466654572,
                0.096311457220,
            ),
            ("Expected Hours", "Moment", "Before"): (
                0.755251507066,
                0.009335150969,
            ),
            ("Expected Hours", "Moment", "After"): (
                0.940938940907,
                0.620341947265,
            ),
            ("Difference (Expected - Held)", "Cases Size", "M"): (
                0.899354575319,
                0.406328540619,
            ),
            ("Difference (Expected - Held)", "Cases Size", "L"): (
                0.862642856475,
                0.127564625974,
            ),
            ("Difference (Expected - Held)", "Cases Size", "S"): (
                0.946359322262,
                0.553614732502,
            ),
            ("Expected Hours", "Cases Size", "L"): (
                0.784104048900,
                0.019300087341,
            ),
        }
        for (response, factor, label), (w, p) in expected.items():
            sample = select_response_factor(DS, response, factor).groups[label]
            result = shapiro_wilk(sample)
            assert result.statistic == pytest.approx(w, abs=1e-8)
            assert result.p_value == pytest.approx(p, abs=1e-5)

    def test_tied_tiny_group_degenerates(self):
        # two equal values out of three pin W at its n=3 lower bound 0.75
        result = shapiro_wilk([90.0, 80.0, 80.0])
        assert result.statistic == pytest.approx(0.75, abs=1e-12)
        assert result.p_value == 0.0

    def test_result_metadata(self):
        result = shapiro_wilk([1.0, 2.0, 4.0, 8.0, 16.0])
        assert result.method == "shapiro_wilk"
        assert result.statistic_name == "W"
        assert result.n_per_group == (5,)
        assert result.df is None

    @given(
        distinct_samples,
        hst.floats(min_value=0.01, max_value=100),
        hst.floats(min_value=-1e4, max_value=1e4),
    )
    def test_affine_invariance(self, values, a, b):
        base = shapiro_wilk(values)
        mapped = shapiro_wilk([a * v + b for v in values])
        assert mapped.statistic == pytest.approx(base.statistic, abs=1e-9)
        assert mapped.p_value == pytest.approx(base.p_value, abs=1e-9)

    @given(distinct_samples)
    def test_permutation_invariance_and_bounds(self, values):
        result = shapiro_wilk(values)
        reversed_result = shapiro_wilk(values[::-1])
        assert result == reversed_result
        assert 0.0 < result.statistic <= 1.0
        assert 0.0 <= result.p_value <= 1.0

    def test_preconditions(self):
        with pytest.raises(ValueError, match="at least 3"):
            shapiro_wilk([1.0, 2.0])
        with pytest.raises(ValueError, match="5000"):
            shapiro_wilk(list(range(5001)))
        with pytest.raises(ValueError, match="variance"):
            shapiro_wilk([7.0, 7.0, 7.0, 7.0])


class TestKolmogorovSf:
    def test_matches_reference_across_branch_switch(self):
        for lam in (0.2, 0.5, 0.8, 1.0, 1.17, 1.1799, 1.1801, 1.5, 2.0, 3.0):
            assert _kolmogorov_sf(lam) == pytest.approx(
                scipy.special.kolmogorov(lam), abs=1e-12
            )

    def test_limits(self):
        assert _kolmogorov_sf(0.0) == 1.0
        assert _kolmogorov_sf(10.0) == pytest.approx(0.0, abs=1e-12)


class TestKsNormal:
    def test_bundled_difference_column_frozen(self):
        result = ks_normal(DIFFS)
        assert result.method == "ks_normal"
        assert result.statistic_name == "D"
        assert result.statistic == pytest.approx(0.218172007034, abs=1e-9)
        assert result.p_value == pytest.approx(0.431523376535, abs=1e-9)

    def test_statistic_matches_reference(self):
        # compare against the reference in its asymptotic mode; the plain
        # variant here never switches to the exact small-n distribution
        for values in reference_samples():
            if len(values) < 4:
                continue
            m = np.mean(values)
            s = np.std(values, ddof=1)
            ref = scipy.stats.kstest(values, "norm", args=(m, s), mode="asymp")
            mine = ks_normal(values)
            assert mine.statistic == pytest.approx(ref.statistic, abs=1e-12)
            assert mine.p_value == pytest.approx(ref.pvalue, abs=1e-9)

    def test_large_sample_close_to_exact_mode(self):
        # the asymptotic p converges to the exact one at roughly n^-1/2;
        # at n=3000 the observed gap is below 5e-3
        rng = np.random.default_rng(11)
        values = rng.normal(size=3000).tolist()
        m = np.mean(values)
        s = np.std(values, ddof=1)
        ref = scipy.stats.kstest(values, "norm", args=(m, s), mode="exact")
        assert ks_normal(values).p_value == pytest.approx(ref.pvalue, abs=7e-3)

    def test_lilliefors_variant_matches_statsmodels(self):
        result = ks_normal(DIFFS, lilliefors=True)
        d, p = kstest_normal(DIFFS, dist="norm", pvalmethod="approx")
        assert result.method == "ks_normal_lilliefors"
        assert result.statistic == pytest.approx(d, abs=1e-12)
        assert result.p_value == pytest.approx(p, abs=1e-9)

    def test_skewed_sample_rejected_by_both_variants(self):
        # deterministic exponential quantile grid, strongly right-skewed
        n = 100
        skew = [-math.log(1.0 - (i - 0.375) / (n + 0.25)) for i in range(1, n + 1)]
        plain = ks_normal(skew)
        lillie = ks_normal(skew, lilliefors=True)
        assert plain.p_value < 0.05
        assert lillie.p_value < 0.001
        d, p = kstest_normal(skew, dist="norm", pvalmethod="approx")
        assert lillie.p_value == pytest.approx(p, abs=1e-9)

    def test_lilliefors_never_exceeds_plain(self):
        # estimating the parameters makes the plain p-value conservative
        rng = np.random.default_rng(7)
        for n in (10, 30, 100, 250):
            values = rng.normal(size=n).tolist()
            assert ks_normal(values, lilliefors=True).p_value <= ks_normal(
                values
            ).p_value + 1e-12

    @given(
        distinct_samples.filter(lambda v: len(v) >= 4),
        hst.floats(min_value=0.01, max_value=100),
        hst.floats(min_value=-1e4, max_value=1e4),
    )
    def test_affine_invariance(self, values, a, b):
        # shifts orders of magnitude larger than the spread cost digits in
        # the (v - mean) / sd standardization, hence the 5e-8 bound here;
        # well-conditioned maps agree to 1e-9 (see the acceptance suite)
        base = ks_normal(values)
        mapped = ks_normal([a * v + b for v in values])
        assert mapped.statistic == pytest.approx(base.statistic, abs=5e-8)
        assert mapped.p_value == pytest.approx(base.p_value, abs=5e-8)

    def test_preconditions(self):
        with pytest.raises(ValueError, match="at least 4"):
            ks_normal([1.0, 2.0, 3.0])
        with pytest.raises(ValueError, match="variance"):
            ks_normal([5.0] * 10)


class TestNormalityCheck:
    def test_small_groups_use_shapiro_wilk(self):
        g = select_response_factor(DS, "Difference (Expected - Held)", "Moment")
        decision = normality_check(g)
        assert decision.chosen_method == "shapiro_wilk"
        assert set(decision.per_group) == {"Before", "After"}
        assert decision.per_group["Before"].method == "shapiro_wilk"
        assert not decision.all_normal  # Before fails at 0.05

    def test_all_normal_when_every_group_passes(self):
        g = select_response_factor(DS, "Difference (Expected - Held)", "Cases Size")
        decision = normality_check(g)
        assert decision.all_normal
        assert all(t.p_value >= 0.05 for t in decision.per_group.values())

    def test_large_groups_use_ks(self):
        rng = np.random.default_rng(3)
        from stattree.dataset import GroupedSample, Sample

        g = GroupedSample(
            "r",
            "f",
            {
                "a": Sample(tuple(rng.normal(size=40))),
                "b": Sample(tuple(rng.normal(size=35))),
            },
        )
        decision = normality_check(g, size_threshold=30)
        assert decision.chosen_method == "ks_normal"
        assert all(t.method == "ks_normal" for t in decision.per_group.values())

    def test_mixed_methods_flagged(self):
        rng = np.random.default_rng(4)
        from stattree.dataset import GroupedSample, Sample

        g = GroupedSample(
            "r",
            "f",
            {
                "small": Sample(tuple(rng.normal(size=10))),
                "big": Sample(tuple(rng.normal(size=50))),
            },
        )
        decision = normality_check(g, size_threshold=30)
        assert decision.chosen_method == "mixed"
        assert decision.per_group["small"].method == "shapiro_wilk"
        assert decision.per_group["big"].method == "ks_normal"

    def test_threshold_boundary(self):
        rng = np.random.default_rng(5)
        from stattree.dataset import GroupedSample, Sample

        # exactly at the threshold switches to KS
        g = GroupedSample(
            "r",
            "f",
            {
                "at": Sample(tuple(rng.normal(size=30))),
                "under": Sample(tuple(rng.normal(size=29))),
            },
        )
        decision = normality_check(g, size_threshold=30)
        assert decision.per_group["at"].method == "ks_normal"
        assert decision.per_group["under"].method == "shapiro_wilk"

    def test_validation(self):
        g = select_response_factor(DS, "Held Hours", "Moment")
        with pytest.raises(ValueError):
            normality_check(g, alpha=0.0)
        with pytest.raises(ValueError):
            normality_check(g, alpha=1.0)
        with pytest.raises(ValueError):
            normality_check(g, size_threshold=0)

    def test_tiny_group_rejected(self):
        from stattree.dataset import GroupedSample, Sample

        g = GroupedSample(
            "r", "f", {"a": Sample((1.0, 2.0)), "b": Sample((1.0, 2.0, 3.0))}
        )
        with pytest.raises(ValueError, match="at least 3"):
            normality_check(g)


class TestResultContract:
    def test_invariants_enforced(self):
        with pytest.raises(ValueError):
            TestResult(
                method="m",
                statistic_name="s",
                statistic=math.inf,
                df=None,
                p_value=0.5,
                n_per_group=(3,),
            )
        with pytest.raises(ValueError):
            TestResult(
                method="m",
                statistic_name="s",
                statistic=1.0,
                df=None,
                p_value=1.5,
                n_per_group=(3,),
            )
        with pytest.raises(ValueError):
            TestResult(
                method="m",
                statistic_name="s",
                statistic=1.0,
                df=-2.0,
                p_value=0.5,
                n_per_group=(3,),
            )

    def test_to_dict_serializes_df_pair(self):
        r = TestResult(
            method="m",
            statistic_name="s",
            statistic=1.0,
            df=(2.0, 13.0),
            p_value=0.5,
            n_per_group=(3, 4),
        )
        d = r.to_dict()
        assert d["df"] == [2.0, 13.0]
        assert d["n_per_group"] == [3, 4]

    def test_decision_to_dict(self):
        g = select_response_factor(DS, "Held Hours", "Moment")
        decision = normality_check(g)
        d = decision.to_dict()
        assert isinstance(d, dict)
        assert set(d["per_group"]) == {"Before", "After"}
        assert isinstance(decision, NormalityDecision)
