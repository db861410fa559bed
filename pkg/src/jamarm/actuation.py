"""Knob -> stepper -> spool actuation chain.

Four detented rotary knobs command the four tendon pairs: knobs 1/2 drive
segment 1's x/y pairs, knobs 3/4 segment 2's. Each detent is worth a fixed
motor angle; the decoupling law mixes the four knob increments into the four
motor rotations (ordered Ry2, Rx2, Ry1, Rx1), which are issued in
``substeps_j`` interleaved rounds so the motors advance together. Spool
rotation converts motor angle to tendon displacement, and the measured bend
gain closes the knob-angle -> bend-angle sensitivity chain.
"""

from dataclasses import dataclass, field
from fractions import Fraction
import json
import math

from .coupling import CouplingConfig, TendonCommand, decouple

QUANTIZATION_MODES = ("exact", "round_per_call", "residual_carry")

#: Controller outputs in the order they are issued each substep round.
OUTPUT_SLOTS = ("Ry2", "Rx2", "Ry1", "Rx1")

# Knob k feeds input slot k-1 of the command vector (x1, y1, x2, y2).
_KNOB_INPUTS = ("x1i", "y1i", "x2i", "y2i")


@dataclass(frozen=True)
class ActuatorConfig:
    """Fixed parameters of the knob/stepper/spool chain.

    motor_map assigns each controller output slot (Ry2, Rx2, Ry1, Rx1) to a
    motor index 1-4; the default is the built arm's wiring. The per-detent
    motor angle of 6.1875 deg comes from 27.5 microsteps of 1.8/16 deg per
    encoder edge, two edges per detent. bend_gain_deg_per_m is the measured
    segment bend per meter of pair displacement.
    """

    spool_radius_m: float = 0.010
    steps_per_rev: int = 200
    microstep: int = 16
    detent_deg: float = 18.0
    per_detent_motor_deg: float = 6.1875
    substeps_j: int = 6
    bend_gain_deg_per_m: float = 3361.1
    quantization_mode: str = "exact"
    motor_map: tuple = (1, 2, 3, 4)

    def __post_init__(self):
        for name in (
            "spool_radius_m",
            "steps_per_rev",
            "microstep",
            "detent_deg",
            "per_detent_motor_deg",
            "substeps_j",
            "bend_gain_deg_per_m",
        ):
            if not (getattr(self, name) > 0):
                raise ValueError(f"{name} must be > 0, got {getattr(self, name)}")
        if self.quantization_mode not in QUANTIZATION_MODES:
            raise ValueError(
                f"quantization_mode must be one of {QUANTIZATION_MODES}, "
                f"got {self.quantization_mode!r}"
            )
        object.__setattr__(self, "motor_map", tuple(self.motor_map))
        if sorted(self.motor_map) != [1, 2, 3, 4]:
            raise ValueError(
                f"motor_map must be a permutation of 1..4, got {self.motor_map}"
            )

    @property
    def microstep_deg(self) -> float:
        """Smallest commandable motor increment (deg), 0.1125 by default."""
        return 360.0 / (self.steps_per_rev * self.microstep)


def actuator_config_from_json(obj) -> ActuatorConfig:
    """Build an ActuatorConfig from a parsed JSON object.

    Keys are exactly the ActuatorConfig field names; all are optional.
    motor_map may be a 4-list of motor indices in output-slot order or a
    mapping like {"Ry2": 1, "Rx2": 2, "Ry1": 3, "Rx1": 4}.
    """
    if not isinstance(obj, dict):
        raise ValueError(f"actuator config must be a JSON object, got {type(obj).__name__}")
    known = set(ActuatorConfig.__dataclass_fields__)
    unknown = set(obj) - known
    if unknown:
        raise ValueError(f"unknown actuator config fields: {sorted(unknown)}")
    kwargs = dict(obj)
    if isinstance(kwargs.get("motor_map"), dict):
        mapping = kwargs["motor_map"]
        if set(mapping) != set(OUTPUT_SLOTS):
            raise ValueError(f"motor_map keys must be {OUTPUT_SLOTS}, got {sorted(mapping)}")
        kwargs["motor_map"] = tuple(mapping[slot] for slot in OUTPUT_SLOTS)
    return ActuatorConfig(**kwargs)


def load_actuator_config(path) -> ActuatorConfig:
    with open(path) as fh:
        return actuator_config_from_json(json.load(fh))


@dataclass(frozen=True)
class KnobEvent:
    """One detent turn (direction +-1) or button press on knob 1-4."""

    knob_id: int
    direction: int = 1
    button: bool = False

    def __post_init__(self):
        if self.knob_id not in (1, 2, 3, 4):
            raise ValueError(f"knob_id must be 1..4, got {self.knob_id}")
        if self.direction not in (1, -1):
            raise ValueError(f"direction must be +1 or -1, got {self.direction}")


@dataclass
class MotorState:
    """Cumulative commanded angle per motor, plus quantization bookkeeping.

    In the quantized modes the cumulative angle is kept as an integer
    microstep count so it stays an exact multiple of the microstep angle;
    residual_deg holds the not-yet-issued remainder in residual_carry mode.
    Exact mode keeps the running command sum as an exact rational (every
    float is one), so cumulative_deg is always the correctly rounded true
    sum and reversing a command sequence restores prior angles bitwise.
    """

    cumulative_deg: list = field(default_factory=lambda: [0.0] * 4)
    residual_deg: list = field(default_factory=lambda: [0.0] * 4)
    microsteps: list = field(default_factory=lambda: [0] * 4)
    exact_deg: list = field(default_factory=lambda: [Fraction(0)] * 4)

    def copy(self) -> "MotorState":
        return MotorState(
            list(self.cumulative_deg),
            list(self.residual_deg),
            list(self.microsteps),
            list(self.exact_deg),
        )


def detents_to_motor_deg(n: int, cfg: ActuatorConfig = ActuatorConfig()) -> float:
    """Motor angle (deg) commanded by n signed knob detents."""
    return n * cfg.per_detent_motor_deg


def motor_deg_to_tendon(deg: float, cfg: ActuatorConfig = ActuatorConfig()) -> float:
    """Tendon displacement (m) from a motor rotation (deg) via the spool."""
    return cfg.spool_radius_m * math.radians(deg)


def sensitivity(cfg: ActuatorConfig = ActuatorConfig()) -> float:
    """Segment bend per knob angle (deg/deg) through the whole chain.

    One detent turns the motor per_detent_motor_deg, the spool converts that
    to a pair displacement, and the measured bend gain converts displacement
    to bend; dividing by the detent angle gives the transfer ratio
    (0.20165 for the default configuration).
    """
    per_detent_bend = cfg.bend_gain_deg_per_m * motor_deg_to_tendon(
        cfg.per_detent_motor_deg, cfg
    )
    return per_detent_bend / cfg.detent_deg


@dataclass(frozen=True)
class TorqueMargin:
    required_nmm: float
    margin_ratio: float
    ok: bool


def torque_margin(
    max_tendon_force_n: float,
    cfg: ActuatorConfig = ActuatorConfig(),
    holding_torque_nmm: float = 392.0,
) -> TorqueMargin:
    """Spool torque needed at a tendon force versus the motor's holding torque.

    required = F * R. Zero force is allowed and reports an infinite margin.
    """
    if max_tendon_force_n < 0:
        raise ValueError(f"tendon force must be >= 0, got {max_tendon_force_n}")
    if not (holding_torque_nmm > 0):
        raise ValueError(f"holding torque must be > 0, got {holding_torque_nmm}")
    required = max_tendon_force_n * (cfg.spool_radius_m * 1000.0)
    margin = math.inf if required == 0.0 else holding_torque_nmm / required
    return TorqueMargin(required, margin, margin >= 1.0)


def quantize(deg: float, state: MotorState, motor: int, cfg: ActuatorConfig) -> float:
    """Rotate one motor (1-based index) by deg, honoring the driver granularity.

    exact applies the request as-is. round_per_call issues the nearest whole
    number of microsteps (ties to even) and discards the remainder.
    residual_carry adds the stored remainder first and carries the new one,
    so repeated small commands cannot drift by more than half a microstep.
    Returns the angle actually applied and updates the cumulative state.
    """
    i = motor - 1
    if cfg.quantization_mode == "exact":
        state.exact_deg[i] += Fraction(deg)
        state.cumulative_deg[i] = float(state.exact_deg[i])
        return deg
    micro = cfg.microstep_deg
    if cfg.quantization_mode == "round_per_call":
        want = deg
    else:  # residual_carry
        want = deg + state.residual_deg[i]
    steps = round(want / micro)
    applied = steps * micro
    if cfg.quantization_mode == "residual_carry":
        state.residual_deg[i] = want - applied
    state.microsteps[i] += steps
    state.cumulative_deg[i] = state.microsteps[i] * micro
    return applied


@dataclass(frozen=True)
class EventResult:
    """Outcome of one knob event before it reaches the motors.

    rotations_deg holds the four controller outputs in OUTPUT_SLOTS order;
    schedule lists substeps_j rounds of (motor_index, deg) in that same
    order; accumulators is the updated per-knob detent count.
    """

    rotations_deg: tuple
    schedule: tuple
    accumulators: tuple


def process_event(
    ev: KnobEvent,
    accumulators,
    cfg: ActuatorConfig = ActuatorConfig(),
    coupling: CouplingConfig = CouplingConfig(),
) -> EventResult:
    """Turn one knob event into motor rotations plus the substep schedule.

    A turn contributes direction * per_detent_motor_deg on the turned knob's
    input slot and zero elsewhere; the decoupling law (applied in motor-degree
    space, where it is unit-agnostic) mixes the four inputs into the four
    outputs. A button press instead commands -accumulated detents worth of
    rotation on the knob's mapped motor and zeroes that knob's accumulator.
    """
    accum = list(accumulators)
    if len(accum) != 4:
        raise ValueError(f"expected 4 knob accumulators, got {len(accum)}")
    k = ev.knob_id - 1
    if ev.button:
        rotations = [0.0] * 4
        rotations[k] = -accum[k] * cfg.per_detent_motor_deg
        accum[k] = 0
    else:
        inputs = [0.0] * 4
        inputs[k] = ev.direction * cfg.per_detent_motor_deg
        act = decouple(TendonCommand(*inputs), coupling)
        rotations = [act.y2o, act.x2o, act.y1o, act.x1o]
        accum[k] += ev.direction
    j = cfg.substeps_j
    rounds = tuple(
        tuple((cfg.motor_map[slot], rotations[slot] / j) for slot in range(4))
        for _ in range(j)
    )
    return EventResult(tuple(rotations), rounds, tuple(accum))


def apply_rotations(state: MotorState, result: EventResult, cfg: ActuatorConfig) -> None:
    """Drive the motors with one event's schedule, updating `state` in place.

    In exact mode each motor receives its event total in a single command
    (j equal substeps sum to the total, so the substep count cannot perturb
    the cumulative angles); in the quantized modes every scheduled substep
    goes through the driver granularity individually.
    """
    if cfg.quantization_mode == "exact":
        for slot in range(4):
            quantize(result.rotations_deg[slot], state, cfg.motor_map[slot], cfg)
        return
    for rnd in result.schedule:
        for motor, deg in rnd:
            quantize(deg, state, motor, cfg)
