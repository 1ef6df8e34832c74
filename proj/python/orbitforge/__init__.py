"""orbitforge: modular spacecraft GN&C simulation framework.

Thin Python surface over the C++ core: orbital element conversions, MRP
attitude algebra, the analytic ephemeris, scenario execution, and the
Monte Carlo controller.
"""

from ._core import (  # noqa: F401
    AU,
    J2_EARTH,
    MU_EARTH,
    MU_SUN,
    REQ_EARTH,
    ClassicElements,
    ConfigError,
    GravityBody,
    SimulationError,
    __version__,
    check_inertia,
    create_body,
    dcm_to_mrp,
    elem2rv,
    ephemeris_state,
    epoch_offset_seconds,
    execute_simulations,
    mean_motion_period,
    min_to_nanos,
    mrp_compose,
    mrp_rate,
    mrp_relative,
    mrp_shadow,
    mrp_switch_to_inner,
    mrp_to_dcm,
    nanos_to_sec,
    normalize_config,
    rigid_body_omega_dot,
    run_scenario,
    rv2elem,
    sampling_time,
    sec_to_nanos,
    show_execution_order,
    validate_config,
    wrap_two_pi,
)

__all__ = [
    "AU",
    "J2_EARTH",
    "MU_EARTH",
    "MU_SUN",
    "REQ_EARTH",
    "ClassicElements",
    "ConfigError",
    "GravityBody",
    "SimulationError",
    "__version__",
    "check_inertia",
    "create_body",
    "dcm_to_mrp",
    "elem2rv",
    "ephemeris_state",
    "epoch_offset_seconds",
    "execute_simulations",
    "mean_motion_period",
    "min_to_nanos",
    "mrp_compose",
    "mrp_rate",
    "mrp_relative",
    "mrp_shadow",
    "mrp_switch_to_inner",
    "mrp_to_dcm",
    "nanos_to_sec",
    "normalize_config",
    "rigid_body_omega_dot",
    "run_scenario",
    "rv2elem",
    "sampling_time",
    "sec_to_nanos",
    "show_execution_order",
    "validate_config",
    "wrap_two_pi",
]
