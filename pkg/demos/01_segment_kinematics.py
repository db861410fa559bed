#!/usr/bin/env python3
"""Walk through the constant-curvature segment model.

Shows the tendon-displacement <-> bend-angle maps, per-tendon length changes
for a spatial bend, forward kinematics of one segment and the two-segment
arm, and backbone shape sampling. Pass --plot to save a 3D figure to
demos/out/arm_shape.png.
"""

import math
import sys

import numpy as np

from jamarm import (
    BendState,
    SegmentParams,
    arm_fk,
    arm_shape_samples,
    bend_from_tendon,
    segment_fk,
    tendon_from_bend,
    tendon_length_delta,
)

seg1 = SegmentParams(arc_length=0.1, tendon_separation=0.02, label="segment-1")
seg2 = SegmentParams(
    arc_length=0.1, tendon_separation=0.02, x_pair_azimuth=math.pi / 6, label="segment-2"
)

print("== tendon <-> bend ==")
dx = 0.001
theta = bend_from_tendon(dx, seg1.tendon_separation)
print(f"pulling the X pair by {dx * 1000:.1f} mm bends the segment {theta:.3f} rad "
      f"({math.degrees(theta):.2f} deg)")
print(f"inverse: {tendon_from_bend(theta, seg1.tendon_separation) * 1000:.3f} mm")

print("\n== per-tendon length changes for a diagonal bend ==")
bend = BendState(theta_x=0.4, theta_y=0.4)
for name, azimuth in [("x+", 0.0), ("y+", math.pi / 2), ("x-", math.pi), ("y-", -math.pi / 2)]:
    delta = tendon_length_delta(bend, azimuth, seg1.tendon_separation)
    print(f"  tendon {name}: {'shortens' if delta > 0 else 'lengthens'} {abs(delta) * 1000:.3f} mm")

print("\n== segment forward kinematics ==")
for tx in (0.0, math.pi / 4, math.pi / 2):
    f = segment_fk(seg1, BendState(tx, 0.0))
    print(f"  theta_x = {math.degrees(tx):5.1f} deg -> tip {np.round(f.position, 5)}")

print("\n== two-segment arm ==")
states = [BendState(0.6, 0.2), BendState(-0.5, 0.3)]
frames = arm_fk([seg1, seg2], states)
for params, frame in zip([seg1, seg2], frames):
    print(f"  {params.label} tip: {np.round(frame.position, 5)}")

shape = arm_shape_samples([seg1, seg2], states, points_per_segment=30)
print(f"backbone polyline: {shape.shape[0]} points, arm length along chords "
      f"{np.linalg.norm(np.diff(shape, axis=0), axis=1).sum():.4f} m")

if "--plot" in sys.argv:
    import pathlib

    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    out = pathlib.Path(__file__).parent / "out"
    out.mkdir(exist_ok=True)
    fig = plt.figure(figsize=(6, 6))
    ax = fig.add_subplot(projection="3d")
    ax.plot(*shape.T, lw=3)
    ax.scatter(*frames[-1].position, color="red", label="tip")
    ax.set_xlabel("x (m)"), ax.set_ylabel("y (m)"), ax.set_zlabel("z (m)")
    ax.legend()
    fig.savefig(out / "arm_shape.png", dpi=120)
    print(f"saved {out / 'arm_shape.png'}")
