"""Statistical decision-tree engine for grouped data.

Selects between parametric and rank-based location tests from normality
and variance-homogeneity pre-checks, then runs the chosen test and any
post-hoc comparisons, recording every step in an auditable trace.
"""

from .dataset import (
    Column,
    Dataset,
    GroupedSample,
    IngestConfig,
    MeasurementScale,
    Sample,
    builtin_table2,
    parse_csv,
    render_csv,
    select_response_factor,
)
from .descriptive import (
    BoxplotStats,
    DescriptiveSummary,
    OutlierReport,
    boxplot_stats,
    classify_outliers,
    describe,
    mean,
    median,
    modes,
    percentile,
    sample_stddev,
    sample_variance,
)
from .engine import (
    SCHEMA_VERSION,
    AnalysisReport,
    DecisionTrace,
    EngineConfig,
    TraceStep,
    analyze,
    route,
)
from .homogeneity import levene
from .location_tests import (
    AnovaResult,
    PairwiseComparison,
    PairwiseResults,
    Ranking,
    kruskal_wallis,
    mann_whitney,
    one_way_anova,
    pairwise_mann_whitney,
    rank_with_ties,
    tukey_hsd,
    two_sample_t,
)
from .montecarlo import (
    ErrorRateReport,
    GroupSpec,
    Scenario,
    simulate_error_rates,
)
from .normality import (
    NormalityDecision,
    TestResult,
    ks_normal,
    normality_check,
    shapiro_wilk,
)
from .special_functions import (
    Tolerance,
    chi_square_cdf,
    f_cdf,
    regularized_incomplete_beta,
    regularized_lower_gamma,
    std_normal_cdf,
    std_normal_pdf,
    std_normal_quantile,
    student_t_cdf,
    studentized_range_cdf,
)

__version__ = "0.1.0"

__all__ = [
    "AnalysisReport",
    "AnovaResult",
    "BoxplotStats",
    "Column",
    "Dataset",
    "DecisionTrace",
    "DescriptiveSummary",
    "EngineConfig",
    "ErrorRateReport",
    "GroupSpec",
    "GroupedSample",
    "IngestConfig",
    "MeasurementScale",
    "NormalityDecision",
    "OutlierReport",
    "PairwiseComparison",
    "PairwiseResults",
    "Ranking",
    "SCHEMA_VERSION",
    "Sample",
    "Scenario",
    "TestResult",
    "Tolerance",
    "TraceStep",
    "analyze",
    "boxplot_stats",
    "builtin_table2",
    "chi_square_cdf",
    "classify_outliers",
    "describe",
    "f_cdf",
    "kruskal_wallis",
    "ks_normal",
    "levene",
    "mann_whitney",
    "mean",
    "median",
    "modes",
    "normality_check",
    "one_way_anova",
    "pairwise_mann_whitney",
    "parse_csv",
    "percentile",
    "rank_with_ties",
    "regularized_incomplete_beta",
    "regularized_lower_gamma",
    "render_csv",
    "route",
    "sample_stddev",
    "sample_variance",
    "select_response_factor",
    "shapiro_wilk",
    "simulate_error_rates",
    "std_normal_cdf",
    "std_normal_pdf",
    "std_normal_quantile",
    "student_t_cdf",
    "studentized_range_cdf",
    "tukey_hsd",
    "two_sample_t",
    "__version__",
]
