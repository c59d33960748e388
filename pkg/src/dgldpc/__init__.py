"""Exact erasure-channel analysis of GLDPC and D-GLDPC code ensembles.

The package computes EXIT functions of generalized component codes from
generator-matrix rank enumeration, evaluates the stability condition and
its closed-form threshold bound, and cross-checks both against a
density-evolution threshold search.
"""

from .binmat import BinaryMatrix, augment_identity, rank, same_row_space, select_columns
from .codes import (
    ComponentCode,
    DeltaParams,
    InfoFunctionTable,
    SplitInfoFunctionTable,
    delta_params,
    info_functions,
    min_distance_bruteforce,
    min_independent_set_size,
    rank_drop_of_removal,
    split_info_functions,
)
from .density_evolution import DeRun, ThresholdResult, de_iterate, find_threshold
from .ensembles import (
    Ensemble,
    NodeType,
    design_rate,
    parse_ensemble,
    serialize_ensemble,
    validate,
)
from .exit_charts import (
    ExitCoefficients,
    ExitCurve,
    exit_check_generic,
    exit_cnd,
    exit_variable_generic,
    exit_vnd,
    inverse_exit_cnd,
    sample_exit_chart,
)
from .stability import (
    StabilityCheck,
    StabilityReport,
    cnd_derivative_at_zero,
    derivative_matching_check,
    dgldpc_stability_boundary,
    dgldpc_stability_check,
    gldpc_stability_bound,
    stability_report,
    vnd_derivative_at_zero,
)

__version__ = "0.1.0"

__all__ = [
    "BinaryMatrix",
    "ComponentCode",
    "DeRun",
    "DeltaParams",
    "Ensemble",
    "ExitCoefficients",
    "ExitCurve",
    "InfoFunctionTable",
    "NodeType",
    "SplitInfoFunctionTable",
    "StabilityCheck",
    "StabilityReport",
    "ThresholdResult",
    "augment_identity",
    "cnd_derivative_at_zero",
    "de_iterate",
    "delta_params",
    "derivative_matching_check",
    "design_rate",
    "dgldpc_stability_boundary",
    "dgldpc_stability_check",
    "exit_check_generic",
    "exit_cnd",
    "exit_variable_generic",
    "exit_vnd",
    "find_threshold",
    "gldpc_stability_bound",
    "info_functions",
    "inverse_exit_cnd",
    "min_distance_bruteforce",
    "min_independent_set_size",
    "parse_ensemble",
    "rank",
    "rank_drop_of_removal",
    "same_row_space",
    "sample_exit_chart",
    "select_columns",
    "serialize_ensemble",
    "split_info_functions",
    "stability_report",
    "validate",
    "vnd_derivative_at_zero",
]
