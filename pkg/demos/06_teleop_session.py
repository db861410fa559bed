#!/usr/bin/env python3
"""Drive a scripted teleoperation session end to end.

Replays the S-shape maneuver (segment 1 bent one way, segment 2 the other),
jams segment 1 and shows that further knob events cannot move it, hangs a
weight on the tip, and demonstrates byte-identical replay. The same script
runs from the command line via `jamarm simulate --script demos/s_shape.txt`.
"""

import math
import pathlib

from jamarm.simulator import (
    SessionConfig,
    parse_script_file,
    run_script,
    snapshot_payload,
    trajectory_serialize,
)

cfg = SessionConfig()
script = pathlib.Path(__file__).parent / "s_shape.txt"
events = parse_script_file(script)
trajectory = run_script(events, cfg)

print(f"script: {script.name} ({len(events)} events)\n")
print("seq  bend1 (deg)        bend2 (deg)        jammed   tip (m)")
for state in trajectory[:: max(1, len(trajectory) // 12)]:
    payload = snapshot_payload(state, cfg)
    b1 = "({:+6.2f},{:+6.2f})".format(*payload["bend_deg"][0])
    b2 = "({:+6.2f},{:+6.2f})".format(*payload["bend_deg"][1])
    tip = "({:+.3f},{:+.3f},{:+.3f})".format(*payload["tip_m"])
    print(f"{payload['seq']:3d}  {b1}  {b2}  {str(payload['jammed']):8s} {tip}")

final = snapshot_payload(trajectory[-1], cfg)
print(f"\nfinal bends: segment 1 {final['bend_deg'][0][0]:+.2f} deg, "
      f"segment 2 {final['bend_deg'][1][0]:+.2f} deg (opposite signs: S shape)")
if final["capacity_N"] is not None:
    print(f"tip load readout: capacity {final['capacity_N']:.2f} N, "
          f"deflection {final['deflection_m'] * 1000:.1f} mm")

again = trajectory_serialize(run_script(events, cfg), cfg)
assert again == trajectory_serialize(trajectory, cfg)
print("\nreplay is byte-identical; total bend plane of segment 1:",
      f"{math.degrees(trajectory[-1].bends[0].plane):.1f} deg")
print("to steer interactively: `jamarm serve --port 8731` plus the frontend/ client")
