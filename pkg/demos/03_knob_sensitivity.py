#!/usr/bin/env python3
"""Walk through the knob -> stepper -> spool -> bend sensitivity chain.

One 18-degree knob detent turns its motor 6.1875 degrees, the 10 mm spool
converts that to about 1.08 mm of tendon travel, and the measured bend gain
turns that into about 3.63 degrees of segment bend: 0.20165 deg of bend per
deg of knob. Also shows torque sizing and the driver quantization modes.
"""

from jamarm import (
    ActuatorConfig,
    KnobEvent,
    MotorState,
    apply_rotations,
    detents_to_motor_deg,
    motor_deg_to_tendon,
    process_event,
    sensitivity,
    torque_margin,
)

cfg = ActuatorConfig()
motor_deg = detents_to_motor_deg(1, cfg)
tendon = motor_deg_to_tendon(motor_deg, cfg)
print("== the chain, one detent at a time ==")
print(f"knob detent:        {cfg.detent_deg} deg")
print(f"motor rotation:     {motor_deg} deg")
print(f"tendon travel:      {tendon * 1000:.4f} mm")
print(f"bend increment:     {cfg.bend_gain_deg_per_m * tendon:.4f} deg")
print(f"sensitivity:        {sensitivity(cfg):.5f} deg bend per deg knob")

print("\n== motor torque sizing ==")
margin = torque_margin(30.0, cfg, holding_torque_nmm=392.0)
print(f"30 N tendon load on the 10 mm spool needs {margin.required_nmm:.0f} N·mm; "
      f"holding torque 392 N·mm -> margin {margin.margin_ratio:.3f} "
      f"({'ok' if margin.ok else 'undersized'})")

print("\n== one knob event through the controller ==")
result = process_event(KnobEvent(knob_id=1, direction=1), (0, 0, 0, 0), cfg)
for slot, rotation in zip(("Ry2", "Rx2", "Ry1", "Rx1"), result.rotations_deg):
    print(f"  {slot} -> motor {cfg.motor_map[('Ry2', 'Rx2', 'Ry1', 'Rx1').index(slot)]}: "
          f"{rotation:+.5f} deg (issued in {cfg.substeps_j} interleaved substeps)")

print("\n== driver quantization ==")
for mode in ("exact", "round_per_call", "residual_carry"):
    mcfg = ActuatorConfig(quantization_mode=mode, substeps_j=6)
    state = MotorState()
    accum = (0, 0, 0, 0)
    for _ in range(5):
        res = process_event(KnobEvent(1, 1), accum, mcfg)
        apply_rotations(state, res, mcfg)
        accum = res.accumulators
    print(f"  {mode:>15}: motor angles after 5 detents "
          f"{[round(v, 5) for v in state.cumulative_deg]}")
print(f"(microstep granularity is {ActuatorConfig().microstep_deg} deg; "
      "residual_carry never drifts more than half a microstep)")
