"""Exact-arithmetic randomness tests and relabeling audits for binary sequences.

The library judges binary output sequences with two exact tests (run
count and head count), applies position-wise vocabulary relabelings as
an XOR group action, and audits or searches for relabelings that
reverse a test's verdict.  All probabilities are exact rationals.
"""

from .audit import (
    EXHAUSTIVE_SEARCH_CAP,
    INVARIANCE_CAP,
    SPECTRUM_CAP,
    AuditResult,
    FlipSearchResult,
    NullInvarianceReport,
    check_null_invariance,
    find_flipping_mask,
    pvalue_spectrum,
    verdict_under_relabeling,
)
from .exact import (
    CONVENTIONS,
    ENUMERATION_CAP,
    ONE_SIDED,
    TWO_SIDED_DOUBLED,
    CapExceededError,
    ExactProb,
    RunsDistribution,
    as_probability,
    binomial_pvalue,
    decimal_string,
    enumerate_runs_distribution,
    exact_decimal_string,
    parse_probability,
    runs_count_exact,
    runs_distribution,
    runs_pvalue,
    sequence_probability,
)
from .sequences import (
    BinarySequence,
    ParseError,
    RelabelMask,
    apply_relabeling,
    count_ones,
    count_runs,
    mask_between,
    mask_from_index_set,
    parse_sequence,
)
from .simulate import (
    RejectionRateEstimate,
    SourceModel,
    likelihood,
    parse_model,
    posterior_odds,
    rejection_rate,
    sample_sequence,
)
from .verdicts import (
    BINOMIAL,
    DEFAULT_ALPHA,
    RUNS,
    RejectionSet,
    TestVerdict,
    binomial_test,
    rejection_set,
    runs_test,
    statistic_domain,
    statistic_pvalue,
)

__version__ = "0.1.0"

__all__ = [
    "AuditResult",
    "BINOMIAL",
    "BinarySequence",
    "CONVENTIONS",
    "CapExceededError",
    "DEFAULT_ALPHA",
    "ENUMERATION_CAP",
    "EXHAUSTIVE_SEARCH_CAP",
    "ExactProb",
    "FlipSearchResult",
    "INVARIANCE_CAP",
    "NullInvarianceReport",
    "ONE_SIDED",
    "ParseError",
    "RUNS",
    "RejectionRateEstimate",
    "RejectionSet",
    "RelabelMask",
    "RunsDistribution",
    "SPECTRUM_CAP",
    "SourceModel",
    "TWO_SIDED_DOUBLED",
    "TestVerdict",
    "apply_relabeling",
    "as_probability",
    "binomial_pvalue",
    "binomial_test",
    "check_null_invariance",
    "count_ones",
    "count_runs",
    "decimal_string",
    "enumerate_runs_distribution",
    "exact_decimal_string",
    "find_flipping_mask",
    "likelihood",
    "mask_between",
    "mask_from_index_set",
    "parse_model",
    "parse_probability",
    "parse_sequence",
    "posterior_odds",
    "pvalue_spectrum",
    "rejection_rate",
    "rejection_set",
    "runs_count_exact",
    "runs_distribution",
    "runs_pvalue",
    "runs_test",
    "sample_sequence",
    "sequence_probability",
    "statistic_domain",
    "statistic_pvalue",
    "verdict_under_relabeling",
]
