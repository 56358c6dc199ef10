"""Dynamical maps for a finite-size two-level detector in the scalar vacuum.

The pipeline: closed-form regularized two-point kernels along inertial,
accelerated, and mixed worldline segments -> adaptive phased double
integrals -> reduced-state coefficient sets -> closed-form map matrices ->
reshuffled Hermitian dynamical matrices, spectra, and complete-positivity
classification, plus Bloch-sphere image scans for positivity.
"""

from .config import ConfigError, ScenarioConfig, SweepSpec, load_config
from .correlators import (
    CorrelatorSet,
    InertialBlock,
    QuadConfig,
    TrajectoryPlan,
    correlator_set,
    correlator_value,
    inertial_block,
    oracle_value,
    time_ordered_value,
)
from .maps import (
    BlochImage,
    CPReport,
    InconsistentMatrixError,
    SingularMapError,
    apply_map,
    bloch_image,
    classification_tolerance,
    classify,
    cp_report,
    hermitian_eigs,
    reshuffle,
    solve_a_matrix,
)
from .quadrature import QuadratureEvalError, QuadResult, Region, integrate_2d, riemann_oracle
from .states import (
    BlochAngles,
    CoefficientSet,
    DensityReport,
    PerturbativeValidityWarning,
    assemble_state,
    coefficients,
    density_checks,
    inertial_interval_coefficients,
)
from .trajectory import Kinematics, Segment, kinematics
from .wightman import DetectorParams, SingularKernelError, coincidence_value, wightman

__version__ = "0.1.0"

__all__ = [
    "BlochAngles",
    "BlochImage",
    "CPReport",
    "CoefficientSet",
    "ConfigError",
    "CorrelatorSet",
    "DensityReport",
    "DetectorParams",
    "InconsistentMatrixError",
    "InertialBlock",
    "Kinematics",
    "PerturbativeValidityWarning",
    "QuadConfig",
    "QuadResult",
    "QuadratureEvalError",
    "Region",
    "ScenarioConfig",
    "Segment",
    "SingularKernelError",
    "SingularMapError",
    "SweepSpec",
    "TrajectoryPlan",
    "apply_map",
    "assemble_state",
    "bloch_image",
    "classification_tolerance",
    "classify",
    "coefficients",
    "coincidence_value",
    "correlator_set",
    "correlator_value",
    "cp_report",
    "density_checks",
    "hermitian_eigs",
    "inertial_block",
    "inertial_interval_coefficients",
    "integrate_2d",
    "kinematics",
    "load_config",
    "oracle_value",
    "reshuffle",
    "riemann_oracle",
    "solve_a_matrix",
    "time_ordered_value",
    "wightman",
]
