"""Joint clique landmark persistence filtering.

Thin re-export of the compiled extension; see that module's docstrings for
the per-class details.
"""

from ._core import (
    CliqueFilterState,
    CliqueStep,
    ConfigError,
    DegeneracyError,
    DetectionBatch,
    DetectionOutcome,
    ExperimentConfig,
    FilterVariant,
    MaintenanceDecision,
    MemberObservation,
    SensorNoiseModel,
    StepResult,
    SurvivalPrior,
    UndefinedMetricError,
    VariantConfig,
    VariantFilter,
    classify,
    default_exponential_rate,
    detection_likelihood,
    load_config,
    parse_variant,
    range_miss_probability,
    run_batch_report,
    run_batch_summary_json,
    suppress_batch,
    suppress_from_distances,
    updated,
)

__all__ = [
    "CliqueFilterState",
    "CliqueStep",
    "ConfigError",
    "DegeneracyError",
    "DetectionBatch",
    "DetectionOutcome",
    "ExperimentConfig",
    "FilterVariant",
    "MaintenanceDecision",
    "MemberObservation",
    "SensorNoiseModel",
    "StepResult",
    "SurvivalPrior",
    "UndefinedMetricError",
    "VariantConfig",
    "VariantFilter",
    "classify",
    "default_exponential_rate",
    "detection_likelihood",
    "load_config",
    "parse_variant",
    "range_miss_probability",
    "run_batch_report",
    "run_batch_summary_json",
    "suppress_batch",
    "suppress_from_distances",
    "updated",
]
