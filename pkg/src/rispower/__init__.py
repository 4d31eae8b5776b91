"""RCS-based received power model for reconfigurable-surface radio links."""
from .control import (
    ConfigReport,
    baseline_grids,
    continuous_targets,
    exhaustive_configure,
    one_bit_configure,
)
from .experiments import SweepRow, SweepSpec, divergence_report, run_sweep
from .geometry import (
    PathGrid,
    Point3,
    RisLayout,
    Spherical,
    cartesian_to_spherical,
    element_position,
    fraunhofer_distance,
    path_geometry,
    spherical_to_cartesian,
)
from .link import (
    PowerResult,
    SceneConfig,
    aligned_power_bound,
    composite_channel,
    element_power,
    mean_reflection_amplitude,
    received_power,
    specular_power,
    table1_scene,
)
from .radiation import AntennaPattern, Efficiency, db_to_linear, gain, linear_to_db
from .reflection import (
    ReflectionParams,
    ReflectionSample,
    fit_phase,
    fit_rcs_floor,
    phase_shift,
    rcs,
    reflection_coefficient,
)

__version__ = "0.1.0"
