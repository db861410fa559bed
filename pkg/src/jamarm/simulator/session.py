"""Deterministic closed-loop teleoperation session.

Events (knob turns, button resets, pressure and load changes) advance a
SessionState one at a time: knob events run the controller and move the
motors, motor angles map through the spools to tendon displacements, and the
plant converts those to per-segment bends. The plant reproduces the arm's
compliance coupling: actuating segment 2's tendons disturbs segment 1 with a
configurable strength, built so that the controller's compensation cancels it
exactly when the controller's alpha matches the plant's coefficient. A
segment whose vacuum pressure reaches the jamming threshold holds its bend
regardless of tendon motion until the pressure drops again.

Everything is event-ordered and wall-clock free: the same script always
produces the same trajectory, byte for byte.
"""

from dataclasses import dataclass, field, replace
import json
import math

from ..actuation import (
    ActuatorConfig,
    KnobEvent,
    MotorState,
    actuator_config_from_json,
    apply_rotations,
    motor_deg_to_tendon,
    process_event,
)
from ..characterization import (
    DEFAULT_SEGMENT1_TABLE,
    DEFAULT_TWO_SEGMENT_TABLE,
    StiffnessTable,
    capacity_at,
    deflection_under_load,
)
from ..coupling import (
    CouplingConfig,
    TendonActuation,
    seg2_local_displacements,
)
from ..kinematics import BendState, SegmentParams, arm_fk, arm_shape_samples
from .events import LOAD_POINTS, LoadEvent, PressureEvent, ResetEvent
from .serialize import canonical_json


class EventError(ValueError):
    """A malformed or inapplicable event; the session state is unchanged."""


def default_segments():
    """The built arm: two 0.1 m segments, segment 2's pairs offset 30 deg."""
    return (
        SegmentParams(0.1, 0.02, 0.0, label="segment-1"),
        SegmentParams(0.1, 0.02, math.pi / 6.0, label="segment-2"),
    )


@dataclass(frozen=True)
class PlantConfig:
    """Physical plant being driven.

    coupling_coeff is the strength of the disturbance segment-2 actuation
    exerts on segment 1 (0 = perfectly rigid segment 1); the controller's
    alpha cancels it exactly when equal. The bend gain that converts
    effective pair displacement to bend angle is taken from the actuator
    configuration so the knob -> bend chain stays consistent end to end.
    """

    segments: tuple = field(default_factory=default_segments)
    coupling_coeff: float = 1.00765
    jam_threshold_psi: float = 6.0
    stiffness_tables: dict = field(
        default_factory=lambda: {
            "tip": DEFAULT_TWO_SEGMENT_TABLE,
            "connector": DEFAULT_SEGMENT1_TABLE,
        }
    )
    max_pressure_psi: float = 14.7
    shape_points_per_segment: int = 25

    def __post_init__(self):
        object.__setattr__(self, "segments", tuple(self.segments))
        if len(self.segments) != 2:
            raise ValueError(
                f"the session plant models exactly 2 segments, got {len(self.segments)}"
            )
        if self.coupling_coeff < 0:
            raise ValueError("coupling_coeff must be >= 0")
        unknown = set(self.stiffness_tables) - set(LOAD_POINTS)
        if unknown:
            raise ValueError(f"unknown load points in stiffness_tables: {sorted(unknown)}")
        if self.shape_points_per_segment < 2:
            raise ValueError("shape_points_per_segment must be >= 2")


@dataclass(frozen=True)
class SessionConfig:
    actuator: ActuatorConfig = field(default_factory=ActuatorConfig)
    coupling: CouplingConfig = field(default_factory=CouplingConfig)
    plant: PlantConfig = field(default_factory=PlantConfig)


def _segment_params_from_json(obj) -> SegmentParams:
    known = {"arc_length", "tendon_separation", "x_pair_azimuth", "label"}
    unknown = set(obj) - known
    if unknown:
        raise ValueError(f"unknown segment fields: {sorted(unknown)}")
    return SegmentParams(**obj)


def _stiffness_table_from_json(obj) -> StiffnessTable:
    known = {"rows", "reference_deflection_m", "label"}
    unknown = set(obj) - known
    if unknown:
        raise ValueError(f"unknown stiffness table fields: {sorted(unknown)}")
    kwargs = dict(obj)
    kwargs["rows"] = tuple(tuple(row) for row in kwargs.get("rows", ()))
    return StiffnessTable(**kwargs)


def session_config_from_json(obj) -> SessionConfig:
    """Build a SessionConfig from a parsed JSON object.

    Top-level sections "actuator", "coupling" and "plant" are each optional;
    field names inside them match the dataclass fields exactly.
    """
    if not isinstance(obj, dict):
        raise ValueError(f"config must be a JSON object, got {type(obj).__name__}")
    unknown = set(obj) - {"actuator", "coupling", "plant"}
    if unknown:
        raise ValueError(f"unknown config sections: {sorted(unknown)}")
    actuator = actuator_config_from_json(obj.get("actuator", {}))
    coupling = CouplingConfig(**obj.get("coupling", {}))
    plant_obj = dict(obj.get("plant", {}))
    if "segments" in plant_obj:
        plant_obj["segments"] = tuple(
            _segment_params_from_json(seg) for seg in plant_obj["segments"]
        )
    if "stiffness_tables" in plant_obj:
        plant_obj["stiffness_tables"] = {
            point: _stiffness_table_from_json(table)
            for point, table in plant_obj["stiffness_tables"].items()
        }
    plant = PlantConfig(**plant_obj)
    return SessionConfig(actuator, coupling, plant)


def load_session_config(path) -> SessionConfig:
    with open(path) as fh:
        return session_config_from_json(json.load(fh))


@dataclass
class SessionState:
    """Full session state after `seq` processed events."""

    seq: int
    motors: MotorState
    knob_accum: tuple
    bends: tuple
    pressures_psi: tuple
    load_point: str = None
    load_newtons: float = 0.0
    warning: str = None

    @classmethod
    def initial(cls, cfg: SessionConfig) -> "SessionState":
        n = len(cfg.plant.segments)
        return cls(
            seq=0,
            motors=MotorState(),
            knob_accum=(0, 0, 0, 0),
            bends=tuple(BendState() for _ in range(n)),
            pressures_psi=tuple(0.0 for _ in range(n)),
        )

    def copy(self) -> "SessionState":
        return replace(self, motors=self.motors.copy())

    def jammed(self, cfg: SessionConfig):
        return tuple(p >= cfg.plant.jam_threshold_psi for p in self.pressures_psi)


def _tendon_actuation(state: SessionState, cfg: SessionConfig) -> TendonActuation:
    """Cumulative pair displacements implied by the motor angles."""
    deg = [
        state.motors.cumulative_deg[cfg.actuator.motor_map[slot] - 1]
        for slot in range(4)  # output slots (Ry2, Rx2, Ry1, Rx1)
    ]
    return TendonActuation(
        x1o=motor_deg_to_tendon(deg[3], cfg.actuator),
        y1o=motor_deg_to_tendon(deg[2], cfg.actuator),
        x2o=motor_deg_to_tendon(deg[1], cfg.actuator),
        y2o=motor_deg_to_tendon(deg[0], cfg.actuator),
    )


def _plant_bends(act: TendonActuation, prev_bends, jammed, cfg: SessionConfig):
    """Per-segment bends for the current actuation; jammed segments hold.

    Segment 1's effective displacement feels a disturbance of
    coupling_coeff/2 times the rotated segment-2 local displacements, which
    themselves depend on segment 1's realized displacement; the rotation
    structure cancels the cross terms, so the self-consistent solution just
    contracts the forced response by (1 + coupling_coeff/2) per axis.
    """
    seg1, seg2 = cfg.plant.segments
    offset = seg2.x_pair_azimuth - seg1.x_pair_azimuth
    geometry = CouplingConfig(seg2_offset=offset)
    c, s = math.cos(offset), math.sin(offset)
    k = 0.5 * cfg.plant.coupling_coeff
    gain = math.radians(cfg.actuator.bend_gain_deg_per_m)  # rad per meter
    if jammed[0]:
        bend1 = prev_bends[0]
        x_eq, y_eq = bend1.theta_x / gain, bend1.theta_y / gain
    else:
        x_eq = (act.x1o + k * (c * act.x2o - s * act.y2o)) / (1.0 + k)
        y_eq = (act.y1o + k * (s * act.x2o + c * act.y2o)) / (1.0 + k)
        bend1 = BendState(gain * x_eq, gain * y_eq)
    if jammed[1]:
        bend2 = prev_bends[1]
    else:
        x2_local, y2_local = seg2_local_displacements(act, (x_eq, y_eq), geometry)
        bend2 = BendState(gain * x2_local, gain * y2_local)
    return (bend1, bend2)


def _knob_target_segment(knob_id: int) -> int:
    """0-based segment index a knob drives (knobs 1/2 -> 0, knobs 3/4 -> 1)."""
    return 0 if knob_id <= 2 else 1


def _effective_pressure(state: SessionState, point: str) -> float:
    """Jamming pressure governing a load point: the weakest supporting segment."""
    if point == "connector":
        return state.pressures_psi[0]
    return min(state.pressures_psi)


def step(state: SessionState, event, cfg: SessionConfig) -> SessionState:
    """Apply one event and return the next state (the input is not mutated).

    Malformed events raise EventError and leave the session untouched.
    """
    new = state.copy()
    new.seq = state.seq + 1
    new.warning = None
    if isinstance(event, KnobEvent):
        result = process_event(event, state.knob_accum, cfg.actuator, cfg.coupling)
        apply_rotations(new.motors, result, cfg.actuator)
        new.knob_accum = result.accumulators
        jammed = state.jammed(cfg)
        target = _knob_target_segment(event.knob_id)
        if jammed[target]:
            new.warning = (
                f"segment {target + 1} is jammed; its bend is held"
            )
        new.bends = _plant_bends(_tendon_actuation(new, cfg), state.bends, jammed, cfg)
    elif isinstance(event, PressureEvent):
        n = len(state.pressures_psi)
        if not (1 <= event.segment <= n):
            raise EventError(f"segment must be 1..{n}, got {event.segment}")
        if not (0.0 <= event.psi <= cfg.plant.max_pressure_psi):
            raise EventError(
                f"pressure must be within [0, {cfg.plant.max_pressure_psi}] psi, "
                f"got {event.psi}"
            )
        pressures = list(state.pressures_psi)
        pressures[event.segment - 1] = float(event.psi)
        new.pressures_psi = tuple(pressures)
        # Newly jammed segments freeze at their current bend; segments that
        # just unjammed snap back to tracking the accumulated actuation.
        new.bends = _plant_bends(
            _tendon_actuation(new, cfg), state.bends, new.jammed(cfg), cfg
        )
    elif isinstance(event, LoadEvent):
        if event.point not in cfg.plant.stiffness_tables:
            raise EventError(f"no stiffness table for load point {event.point!r}")
        if not (event.newtons >= 0 and math.isfinite(event.newtons)):
            raise EventError(f"load must be a finite value >= 0, got {event.newtons}")
        table = cfg.plant.stiffness_tables[event.point]
        pressure = _effective_pressure(state, event.point)
        try:
            capacity_at(table, pressure)
        except ValueError as exc:
            raise EventError(str(exc)) from None
        new.load_point = event.point
        new.load_newtons = float(event.newtons)
    elif isinstance(event, ResetEvent):
        new = SessionState.initial(cfg)
        new.seq = state.seq + 1
    else:
        raise EventError(f"unknown event type {type(event).__name__}")
    return new


def _load_readout(state: SessionState, cfg: SessionConfig):
    """(capacity_N, deflection_m) for the applied load, or (None, None)."""
    if state.load_point is None:
        return None, None
    table = cfg.plant.stiffness_tables[state.load_point]
    pressure = _effective_pressure(state, state.load_point)
    try:
        capacity = capacity_at(table, pressure)
    except ValueError:
        return None, None
    result = deflection_under_load(table, pressure, state.load_newtons)
    return capacity, result.deflection_m


def snapshot_payload(state: SessionState, cfg: SessionConfig) -> dict:
    """State message dict with a fixed key order (also the wire format)."""
    segments = cfg.plant.segments
    frames = arm_fk(segments, state.bends)
    shape = arm_shape_samples(segments, state.bends, cfg.plant.shape_points_per_segment)
    act = _tendon_actuation(state, cfg)
    capacity, deflection = _load_readout(state, cfg)
    return {
        "type": "state",
        "seq": state.seq,
        "motors_deg": [float(v) for v in state.motors.cumulative_deg],
        "tendons_m": {"x1o": act.x1o, "y1o": act.y1o, "x2o": act.x2o, "y2o": act.y2o},
        "bend_deg": [
            [math.degrees(b.theta_x), math.degrees(b.theta_y)] for b in state.bends
        ],
        "tip_m": [float(v) for v in frames[-1].position],
        "shape_m": [[float(v) for v in row] for row in shape],
        "pressures_psi": [float(p) for p in state.pressures_psi],
        "jammed": [bool(flag) for flag in state.jammed(cfg)],
        "capacity_N": capacity,
        "deflection_m": deflection,
        "warning": state.warning,
    }


def snapshot_serialize(state: SessionState, cfg: SessionConfig) -> str:
    """Canonical text record of a state (17-significant-digit floats)."""
    return canonical_json(snapshot_payload(state, cfg))


def run_script(events, cfg: SessionConfig = SessionConfig()):
    """Fold step() over events; returns [initial state, state after event 1, ...]."""
    state = SessionState.initial(cfg)
    trajectory = [state]
    for index, event in enumerate(events):
        try:
            state = step(state, event, cfg)
        except EventError as exc:
            raise EventError(f"event {index + 1}: {exc}") from None
        trajectory.append(state)
    return trajectory


def trajectory_serialize(states, cfg: SessionConfig) -> str:
    """One canonical snapshot per line; byte-identical across replays."""
    return "".join(snapshot_serialize(state, cfg) + "\n" for state in states)
