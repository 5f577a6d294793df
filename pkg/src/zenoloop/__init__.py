"""Exact and Monte Carlo simulation of looped Zeno protective measurement of photon polarization."""

from zenoloop.errors import (
    ConfigError,
    DomainError,
    InsufficientDataError,
    UndefinedMomentsError,
    ZenoLoopError,
)
from zenoloop.gaussian import (
    GaussianComponent,
    GaussianMixture,
    merge_and_prune,
    overlap,
    position_moments,
    position_pdf,
    shift,
    squared_norm,
)
from zenoloop.polarization import (
    H,
    OBSERVABLE_HV,
    V,
    PolarizationObservable,
    PolarizationState,
    expectation,
    hwp,
    pbs_route,
    polarizer_project,
    prepare,
)
from zenoloop.zeno import (
    ExactZenoResult,
    ZenoParams,
    evolve_exact,
    simulate_ifm,
    survival_probability,
    survival_threshold_xi,
    weak_limit_series,
)
from zenoloop.loop import (
    EnsembleRecord,
    Fate,
    ImagerConfig,
    LoopConfig,
    NoiseConfig,
    TrialOutcome,
    calibrate_zero_position,
    run_ensemble,
    run_trial,
)
from zenoloop.analysis import (
    EstimateReport,
    estimate_expectation,
    estimate_from_record,
    projective_baseline,
    sweep,
)

__version__ = "0.1.0"
