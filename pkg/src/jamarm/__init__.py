"""Tendon-driven variable-stiffness continuum arm toolkit.

Constant-curvature kinematics, the tendon coupling/decoupling law, the
knob/stepper/spool actuation chain, empirical layer-jamming stiffness
models, and a deterministic teleoperation simulator with a wire-protocol
server for interactive clients.
"""

from .actuation import (
    ActuatorConfig,
    EventResult,
    KnobEvent,
    MotorState,
    TorqueMargin,
    actuator_config_from_json,
    apply_rotations,
    detents_to_motor_deg,
    load_actuator_config,
    motor_deg_to_tendon,
    process_event,
    quantize,
    sensitivity,
    torque_margin,
)
from .characterization import (
    DEFAULT_SEGMENT1_TABLE,
    DEFAULT_TWO_SEGMENT_TABLE,
    DeflectionResult,
    MarkerPair,
    RegressionFit,
    StiffnessTable,
    bend_angle_from_markers,
    capacity_at,
    deflection_under_load,
    fit_linear,
    load_calibration_csv,
    load_stiffness_csv,
    spring_constant,
    stiffness_ratio,
)
from .coupling import (
    CouplingConfig,
    TendonActuation,
    TendonCommand,
    coupling_matrix,
    decouple,
    multi_segment_matrix,
    recouple,
    seg2_local_displacements,
)
from .kinematics import (
    BendState,
    Frame,
    SegmentParams,
    arm_fk,
    arm_shape_samples,
    bend_from_tendon,
    segment_fk,
    segment_shape_samples,
    tendon_from_bend,
    tendon_length_delta,
)

__version__ = "0.1.0"
