"""Two-stage automorphism group decoding of cyclic codes on the erasure channel."""

from .analysis import (
    BonferroniTerms,
    BoundReport,
    ChannelStats,
    ExternalTables,
    PatternCensus,
    bonferroni_terms,
    coverage_count,
    enumerate_patterns,
    exact_fer,
    fer_floor,
    expanded_from_sequences,
    failure_test,
    greedy_expand,
    monte_carlo,
    perfect_decoding_check,
    run_census,
    stopping_redundancy_bounds,
)
from .codes import (
    CyclicCode,
    ParityCheckMatrix,
    build_code,
    fixture_path,
    parse_code_spec,
    systematic_pcm,
)
from .decoders import (
    DecodeOutcome,
    ExpandedParityCheckMatrix,
    ReceivedWord,
    agd,
    ied,
    ml_decode,
    ts_agd,
    ts_agd_expanded,
)
from .galois import GF, Field, FieldElement, Poly, cyclotomic_coset, cyclotomic_cosets
from .pcm import (
    BinarySequence,
    CorrelationProfile,
    CriteriaReport,
    Mask,
    criteria_report,
    difference_set_catalog,
    hamming_correlation,
    m_sequence,
    mask,
    modify_pcm,
    parity_check_sequence,
    propose_sp,
)

__version__ = "0.1.0"

__all__ = [
    "GF",
    "Field",
    "FieldElement",
    "Poly",
    "cyclotomic_coset",
    "cyclotomic_cosets",
    "CyclicCode",
    "ParityCheckMatrix",
    "build_code",
    "parse_code_spec",
    "systematic_pcm",
    "fixture_path",
    "BinarySequence",
    "CorrelationProfile",
    "CriteriaReport",
    "Mask",
    "criteria_report",
    "difference_set_catalog",
    "hamming_correlation",
    "m_sequence",
    "mask",
    "modify_pcm",
    "parity_check_sequence",
    "propose_sp",
    "DecodeOutcome",
    "ExpandedParityCheckMatrix",
    "ReceivedWord",
    "ied",
    "agd",
    "ts_agd",
    "ts_agd_expanded",
    "ml_decode",
    "BonferroniTerms",
    "BoundReport",
    "ChannelStats",
    "ExternalTables",
    "PatternCensus",
    "bonferroni_terms",
    "coverage_count",
    "enumerate_patterns",
    "exact_fer",
    "fer_floor",
    "expanded_from_sequences",
    "failure_test",
    "greedy_expand",
    "monte_carlo",
    "perfect_decoding_check",
    "run_census",
    "stopping_redundancy_bounds",
    "__version__",
]
