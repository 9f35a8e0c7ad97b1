"""Lagrangian solver and verification harness for a viscous liquid-gas
two-phase model with vacuum connection."""

from lagvac._core import (
    ConfigError,
    DecayFit,
    DiagnosticsHistory,
    DiagnosticsRecord,
    Endpoint,
    EulerianSample,
    FitError,
    InitialData,
    LagrangianState,
    ModelParams,
    ProfileSpec,
    RateInfo,
    RegimeKind,
    SolverAbort,
    StepControl,
    Trajectory,
    VacuumRegime,
    ValidationError,
    dissipation_rate,
    energy,
    exact_boundary_q,
    fit_decay,
    lyapunov_functional,
    m_of_q,
    make_initial_data,
    momentum,
    momentum_balance_residual,
    pressure,
    q_of_m,
    reconstruct_eulerian,
    run,
    step,
    theoretical_rate,
    visc_coeff,
    w_function,
    __version__,
)

__all__ = [name for name in dir() if not name.startswith("_")] + ["__version__"]
