"""Closed-form connectivity, outage, and spectral-efficiency model for
two-tier femtocell/macrocell networks, with independent Monte Carlo and
quadrature oracles for every closed form.

Lengths are normalized to the femtocell coverage radius throughout.
"""

__version__ = "0.1.0"

from .geometry import MobilityGeometry, center_distance, chord_abscissa, lens_area
from .connectivity import (
    MACROCELL_AREA,
    ConnectivityScenario,
    connectivity_probability,
    disconnectivity_bound,
    isolation_probability,
)
from .tier_model import (
    ETA_CAP,
    InfeasibleTargetError,
    OutageQuery,
    SirSample,
    TierParams,
    active_fap_density,
    communication_range,
    connectivity_ratio,
    outage_probability,
    sir,
    sir_threshold,
    spectral_efficiency_for_outage,
    spectral_efficiency_from_sir,
)
from .simulate import (
    PppRealization,
    lens_area_arccos,
    mc_connectivity_ratio,
    mc_disconnectivity,
    mc_lens_area,
    mc_outage,
    quadrature_lens_area,
    sample_ppp,
)
from .sweeps import (
    SweepIOError,
    SweepSpec,
    SweepSpecError,
    SweepResult,
    apply_overrides,
    emit_csv,
    emit_plot,
    load_recipe,
    recipe_names,
    run_sweep,
)
from .validation import OracleCheck, ValidationReport, run_validation

__all__ = [
    "__version__",
    "MobilityGeometry",
    "center_distance",
    "chord_abscissa",
    "lens_area",
    "MACROCELL_AREA",
    "ConnectivityScenario",
    "connectivity_probability",
    "disconnectivity_bound",
    "isolation_probability",
    "ETA_CAP",
    "InfeasibleTargetError",
    "OutageQuery",
    "SirSample",
    "TierParams",
    "active_fap_density",
    "communication_range",
    "connectivity_ratio",
    "outage_probability",
    "sir",
    "sir_threshold",
    "spectral_efficiency_for_outage",
    "spectral_efficiency_from_sir",
    "PppRealization",
    "lens_area_arccos",
    "mc_connectivity_ratio",
    "mc_disconnectivity",
    "mc_lens_area",
    "mc_outage",
    "quadrature_lens_area",
    "sample_ppp",
    "SweepIOError",
    "SweepSpec",
    "SweepSpecError",
    "SweepResult",
    "apply_overrides",
    "emit_csv",
    "emit_plot",
    "load_recipe",
    "recipe_names",
    "run_sweep",
    "OracleCheck",
    "ValidationReport",
    "run_validation",
]
