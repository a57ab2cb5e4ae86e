"""sigmatail: extreme-tail probabilities of k-sigma events, far beyond the
range where fixed-precision evaluation underflows, with conversions to
expected-occurrence periods, streak odds, human-scale comparisons, a
Student-t fat-tail counterfactual, and a daily-series audit pipeline."""

from .audit import (
    AuditReport,
    FlaggedDay,
    Moments,
    Series,
    binomial_tail_at_least,
    build_report,
    estimate_moments,
    flag_events,
    load_series,
    report_as_dict,
    sigma_scores,
)
from .errors import DomainError, ParseError
from .gauss import (
    SeriesDiagnostics,
    TailQuery,
    TailResult,
    evaluate,
    events_per_year,
    gauss_tail,
    gauss_tail_asymptotic,
    gauss_tail_exact,
    gauss_tail_paper_appendix,
    occurrence_days,
    occurrence_years,
    sigma_for_period,
    streak_probability,
)
from .magnitude import (
    Magnitude,
    ONE,
    ZERO,
    compare,
    div,
    format_sci,
    from_log10,
    from_real,
    from_sci,
    mul,
    parse,
    pow_int,
    recip,
)
from .scales import (
    BUILTIN_SCALES,
    DEFAULT_LOTTERY,
    LotteryModel,
    ReferenceComparison,
    ReferenceScale,
    compare_to_references,
    load_reference_scales,
    lottery_equivalent,
    order_gap,
)
from .studentt import TDistSpec, gap_vs_gaussian, student_t_tail

__version__ = "0.1.0"

__all__ = [
    "AuditReport", "FlaggedDay", "Moments", "Series", "binomial_tail_at_least",
    "build_report", "estimate_moments", "flag_events", "load_series",
    "report_as_dict", "sigma_scores",
    "DomainError", "ParseError",
    "SeriesDiagnostics", "TailQuery", "TailResult", "evaluate",
    "events_per_year", "gauss_tail", "gauss_tail_asymptotic",
    "gauss_tail_exact", "gauss_tail_paper_appendix", "occurrence_days",
    "occurrence_years", "sigma_for_period", "streak_probability",
    "Magnitude", "ONE", "ZERO", "compare", "div", "format_sci", "from_log10",
    "from_real", "from_sci", "mul", "parse", "pow_int", "recip",
    "BUILTIN_SCALES", "DEFAULT_LOTTERY", "LotteryModel",
    "ReferenceComparison", "ReferenceScale", "compare_to_references",
    "load_reference_scales", "lottery_equivalent", "order_gap",
    "TDistSpec", "gap_vs_gaussian", "student_t_tail",
    "__version__",
]
