from ._core import (
    build_cbh,
    build_hermitian_bh,
    classify_phase,
    critical_gamma,
    evolve,
    fit_series,
    generators,
    metric,
    metric_from_first_row,
    positivity,
    solve_nullspace,
    spectrum,
)

__all__ = [
    "build_cbh",
    "build_hermitian_bh",
    "classify_phase",
    "critical_gamma",
    "evolve",
    "fit_series",
    "generators",
    "metric",
    "metric_from_first_row",
    "positivity",
    "solve_nullspace",
    "spectrum",
]
