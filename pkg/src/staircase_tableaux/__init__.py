"""Exact enumeration, measure and sampling for weighted staircase tableaux."""

from .tableau import (
    DiagonalAddress,
    FourSymbolTableau,
    Symbol,
    Tableau,
    format_grid,
    format_json,
    new_empty,
    parse_four_grid,
    parse_grid,
    parse_json,
    symbol_at,
    to_four_symbol,
)
from .enumeration import (
    count_tableaux,
    enumerate_all,
    enumerate_filtered,
    materialize,
    weight_profile,
)
from .measure import (
    DEFAULT_PARAMS_GRID,
    Params,
    falling_factorial,
    joint_probability,
    marginal,
    marginal_first_diagonal,
    marginal_kth_diagonal,
    normalized_partition,
    parse_rational,
    probability,
    subtableau_law_check,
    weight,
)
from .diagonal_stats import (
    ExactDist,
    MomentReport,
    count_distribution,
    factorial_moment_via_joints,
    independence_gap,
    joint_count_distribution,
    lemma_la_check,
    poisson_pmf,
    theorem4_error_scan,
    theorem7_error_scan,
    tv_distance,
)
from .structure import (
    CTable,
    DRegion,
    MStat,
    ab_path,
    compute_m,
    d_connected,
    d_region,
    extract_c_table,
    hat_k,
    verify_lemma3,
)
from .sampling import (
    ChainSampler,
    ExactSampler,
    SamplerConfig,
    empirical_poisson_demo,
    make_rng,
    sample_chain,
    sample_exact,
)

__version__ = "0.1.0"

__all__ = [
    "CTable",
    "ChainSampler",
    "DEFAULT_PARAMS_GRID",
    "DRegion",
    "DiagonalAddress",
    "ExactDist",
    "ExactSampler",
    "FourSymbolTableau",
    "MStat",
    "MomentReport",
    "Params",
    "SamplerConfig",
    "Symbol",
    "Tableau",
    "ab_path",
    "compute_m",
    "count_distribution",
    "count_tableaux",
    "d_connected",
    "d_region",
    "empirical_poisson_demo",
    "enumerate_all",
    "enumerate_filtered",
    "extract_c_table",
    "factorial_moment_via_joints",
    "falling_factorial",
    "format_grid",
    "format_json",
    "hat_k",
    "independence_gap",
    "joint_count_distribution",
    "joint_probability",
    "lemma_la_check",
    "make_rng",
    "marginal",
    "marginal_first_diagonal",
    "marginal_kth_diagonal",
    "materialize",
    "new_empty",
    "normalized_partition",
    "parse_four_grid",
    "parse_grid",
    "parse_json",
    "parse_rational",
    "poisson_pmf",
    "probability",
    "sample_chain",
    "sample_exact",
    "subtableau_law_check",
    "symbol_at",
    "theorem4_error_scan",
    "theorem7_error_scan",
    "to_four_symbol",
    "tv_distance",
    "verify_lemma3",
    "weight",
    "weight_profile",
    "__version__",
]
