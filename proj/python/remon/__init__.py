"""Time-average MSE and Age-of-Information trade-off for remotely monitored
Gauss-Markov processes sent over a finite-blocklength AWGN link."""

from ._core import (
    BoundaryCurves,
    BoundaryPoint,
    ChannelSpec,
    CodingPoint,
    CycleAverages,
    EvalOptions,
    InfeasibleError,
    LinkTiming,
    ProcessModel,
    ScalarProcess,
    SimConfig,
    SimResult,
    SourceVarMode,
    Spacing,
    SweepGrid,
    SystemConfig,
    TradeoffPoint,
    attempt_delay,
    avg_aoi,
    avg_mse_general,
    avg_mse_scalar,
    blocklength,
    boundary_curves,
    capacity,
    dispersions,
    estimator_gain,
    evaluate_point,
    lyapunov_solve,
    make_coding_point,
    mat_exp,
    mse_channel,
    mse_channel_with_gain,
    mse_delay,
    mse_total,
    pareto_front,
    q_func,
    q_inv,
    rate_distortion,
    simulate,
    success_delay_moments,
    sweep,
    transition,
)

__all__ = [
    "BoundaryCurves",
    "BoundaryPoint",
    "ChannelSpec",
    "CodingPoint",
    "CycleAverages",
    "EvalOptions",
    "InfeasibleError",
    "LinkTiming",
    "ProcessModel",
    "ScalarProcess",
    "SimConfig",
    "SimResult",
    "SourceVarMode",
    "Spacing",
    "SweepGrid",
    "SystemConfig",
    "TradeoffPoint",
    "attempt_delay",
    "avg_aoi",
    "avg_mse_general",
    "avg_mse_scalar",
    "blocklength",
    "boundary_curves",
    "capacity",
    "dispersions",
    "estimator_gain",
    "evaluate_point",
    "lyapunov_solve",
    "make_coding_point",
    "mat_exp",
    "mse_channel",
    "mse_channel_with_gain",
    "mse_delay",
    "mse_total",
    "pareto_front",
    "q_func",
    "q_inv",
    "rate_distortion",
    "simulate",
    "success_delay_moments",
    "sweep",
    "transition",
]
