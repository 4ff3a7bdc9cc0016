"""Lackadaisical quantum walk search for clustered marked vertices on a 2D torus."""

from .analysis import (
    DEFAULT_PATIENCE,
    PeakResult,
    ProbTrace,
    SweepResult,
    Termination,
    WeightScheme,
    baseline_weight,
    compare_coins,
    evolve_trace,
    first_peak,
    proposed_interval,
    weight_sweep,
)
from .walk import (
    CoinFamily,
    CoinSpec,
    GridSpec,
    MarkedCluster,
    MarkedOp,
    WalkState,
    apply_coin,
    apply_shift,
    make_initial_state,
    step,
    success_probability,
)

__version__ = "0.1.0"
