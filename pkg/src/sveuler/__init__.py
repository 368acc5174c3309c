"""Spectral-viscosity solver for the 2D incompressible Euler equations on
the periodic unit torus."""

from .diagnostics import (
    SpectrumSeries,
    dissipation_rates,
    energy_spectrum,
    high_mode_mass,
    l2_error,
    lp_norm,
    negative_part_integral,
)
from .errors import (
    ConfigError,
    GridIncompatible,
    GridMismatch,
    InvalidRegime,
    NonFinite,
    NonZeroMean,
    OverlappingEddies,
    SnapshotError,
    SvEulerError,
    VelocityBlowup,
)
from .experiments import (
    RunConfig,
    convergence_study,
    load_config,
    parse_config_text,
    run,
    simulate,
    spectrum_report,
    validate,
)
from .grid import (
    GridSpec,
    PhysicalField,
    SpectralField,
    VelocityField,
    sample_on_grid,
    to_physical,
    to_spectral,
)
from .initial_data import (
    EddySpec,
    SheetSpec,
    bspline_mollifier,
    confined_eddy_velocity,
    good_kernel,
    kissing_vortices,
    sheet_vorticity,
    taylor_green_vorticity,
)
from .operators import (
    biot_savart,
    curl,
    dealiased_product,
    divergence,
    gradient,
    laplacian,
    project_leray,
)
from .regime import RegimeParams, RegimeReport, format_regime_report, validate_regime
from .snapshot import read_snapshot, write_snapshot
from .sv import ErrorTerms, SVConfig, build_q_multiplier, error_terms, rhs_primitive, rhs_vorticity
from .timestepping import StepperConfig, adaptive_dt, integrate, ssp_rk3_step

__version__ = "0.1.0"
