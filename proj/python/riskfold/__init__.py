"""Disclosure risk evaluation and control for categorical microdata.

Selects a decomposable log-linear model for the key variables by AIC
hill-climbing, scores every sample-unique record's identification risk, and
swaps risky records without disturbing the chosen model's clique marginals.
"""

from ._riskfold import (
    ConflictError,
    ConvergenceError,
    DomainError,
    Model,
    ProtectResult,
    RiskEntry,
    RiskReport,
    Schema,
    SwapOutcome,
    SwapPlan,
    Table,
    UsageError,
    apply_swap,
    count_chordal,
    decompose,
    estimate_population_uniques,
    find_partner,
    fit,
    is_chordal,
    load_schema,
    load_table,
    multi_start,
    pop_unique_prob,
    protect,
    run_pipeline,
    synth_table,
)

__all__ = [
    "ConflictError",
    "ConvergenceError",
    "DomainError",
    "Model",
    "ProtectResult",
    "RiskEntry",
    "RiskReport",
    "Schema",
    "SwapOutcome",
    "SwapPlan",
    "Table",
    "UsageError",
    "apply_swap",
    "count_chordal",
    "decompose",
    "estimate_population_uniques",
    "find_partner",
    "fit",
    "is_chordal",
    "load_schema",
    "load_table",
    "multi_start",
    "pop_unique_prob",
    "protect",
    "run_pipeline",
    "synth_table",
]
