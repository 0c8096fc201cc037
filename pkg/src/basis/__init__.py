"""
Plain and stacked Schauder bases of kernel functionals on the CFK family.
"""

from .coefficients import (
    CoefficientMap,
    LipschitzFunctional,
    distance_functional,
    hat_functional,
    reconstruction_bound,
    schauder_coefficients,
    stacked_coefficients,
    stacked_error_bound,
    sum_functional,
)
from .config import BasisConfig, BasisKind
from .kernels import (
    eval_kernel,
    eval_stacked,
    incident_simplex_peak_oracle,
    kernel_peak,
    kernel_table,
    lipschitz_budget,
    partition_tail,
    stacked_lipschitz,
    stacked_peak,
    stacked_scale,
    support_counts,
    unit_peak,
)
from .schedule import GeometricSchedule, LipschitzSchedule, SplitSchedule, default_schedule, parse_schedule
from .witness import minimality_witness

__all__ = [
    "BasisConfig",
    "BasisKind",
    "CoefficientMap",
    "GeometricSchedule",
    "LipschitzFunctional",
    "LipschitzSchedule",
    "SplitSchedule",
    "default_schedule",
    "distance_functional",
    "eval_kernel",
    "eval_stacked",
    "hat_functional",
    "incident_simplex_peak_oracle",
    "kernel_peak",
    "kernel_table",
    "lipschitz_budget",
    "minimality_witness",
    "parse_schedule",
    "partition_tail",
    "reconstruction_bound",
    "schauder_coefficients",
    "stacked_coefficients",
    "stacked_error_bound",
    "stacked_lipschitz",
    "stacked_peak",
    "stacked_scale",
    "sum_functional",
    "support_counts",
    "unit_peak",
]
