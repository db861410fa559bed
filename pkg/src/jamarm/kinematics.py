"""Constant-curvature kinematics for a tendon-driven continuum arm segment.

Each segment is modeled as a circular arc of uniform curvature. An
antagonistic tendon pair a distance ``d`` apart bends the segment by
``theta = 2*dx/d`` where ``dx`` is the pair displacement; two orthogonal
pairs superpose into a spatial bend described by the pair (theta_x, theta_y).
Forward kinematics places the arc in 3D, and serial segments compose.
"""

from dataclasses import dataclass
import math

import numpy as np

TWO_PI = 2.0 * math.pi

# Below this total bend the arc-profile terms are 0/0 and switch to their
# series expansions.
SMALL_BEND_RAD = 1e-7


@dataclass(frozen=True)
class SegmentParams:
    """Geometry of one segment.

    Args:
        arc_length: backbone length L of the segment (m).
        tendon_separation: distance d between the two tendons of an
            antagonistic pair (m).
        x_pair_azimuth: azimuth of the X tendon pair's bending plane in the
            segment's local frame (rad); normalized to [0, 2*pi).
        label: free-form name for reports.
    """

    arc_length: float
    tendon_separation: float
    x_pair_azimuth: float = 0.0
    label: str = ""

    def __post_init__(self):
        if not (self.arc_length > 0.0):
            raise ValueError(f"arc_length must be > 0, got {self.arc_length}")
        if not (self.tendon_separation > 0.0):
            raise ValueError(
                f"tendon_separation must be > 0, got {self.tendon_separation}"
            )
        object.__setattr__(
            self, "x_pair_azimuth", float(self.x_pair_azimuth) % TWO_PI
        )


@dataclass(frozen=True)
class BendState:
    """Spatial bend of one segment as two orthogonal planar bends (rad).

    theta_x bends in the local ZX plane (toward +x), theta_y in the local
    ZY plane (toward +y). The total bend is hypot(theta_x, theta_y) and the
    bend-plane azimuth is atan2(theta_y, theta_x).
    """

    theta_x: float = 0.0
    theta_y: float = 0.0

    def __post_init__(self):
        if not (math.isfinite(self.theta_x) and math.isfinite(self.theta_y)):
            raise ValueError("bend angles must be finite")

    @property
    def total(self) -> float:
        return math.hypot(self.theta_x, self.theta_y)

    @property
    def plane(self) -> float:
        return math.atan2(self.theta_y, self.theta_x)


@dataclass(frozen=True)
class Frame:
    """Rigid transform: 3-vector position plus 3x3 rotation."""

    position: np.ndarray
    rotation: np.ndarray

    def __post_init__(self):
        p = np.asarray(self.position, dtype=float).reshape(3)
        r = np.asarray(self.rotation, dtype=float).reshape(3, 3)
        if np.max(np.abs(r.T @ r - np.eye(3))) > 1e-9:
            raise ValueError("rotation is not orthonormal within 1e-9")
        if abs(np.linalg.det(r) - 1.0) > 1e-9:
            raise ValueError("rotation determinant is not +1 within 1e-9")
        object.__setattr__(self, "position", p)
        object.__setattr__(self, "rotation", r)

    @classmethod
    def identity(cls) -> "Frame":
        return cls(np.zeros(3), np.eye(3))

    def compose(self, other: "Frame") -> "Frame":
        """This frame followed by `other` expressed in this frame."""
        return Frame(
            self.position + self.rotation @ other.position,
            self.rotation @ other.rotation,
        )


def bend_from_tendon(dx: float, d: float) -> float:
    """Planar bend angle (rad) produced by a pair displacement dx (m)."""
    if not (d > 0.0):
        raise ValueError(f"tendon separation must be > 0, got {d}")
    return 2.0 * dx / d


def tendon_from_bend(theta: float, d: float) -> float:
    """Pair displacement (m) required for a planar bend angle theta (rad)."""
    if not (d > 0.0):
        raise ValueError(f"tendon separation must be > 0, got {d}")
    return theta * d / 2.0


def tendon_length_delta(bend: BendState, pair_azimuth: float, d: float) -> float:
    """Shortening (m, positive = shorter) of the tendon at azimuth pair_azimuth.

    For a total bend theta in plane phi the tendon at azimuth psi shortens by
    (d/2) * theta * cos(psi - phi); the antagonist at psi + pi lengthens by
    the same amount.
    """
    if not (d > 0.0):
        raise ValueError(f"tendon separation must be > 0, got {d}")
    theta = bend.total
    if theta == 0.0:
        return 0.0
    return 0.5 * d * theta * math.cos(pair_azimuth - bend.plane)


def _rot_z(phi: float) -> np.ndarray:
    c, s = math.cos(phi), math.sin(phi)
    return np.array([[c, -s, 0.0], [s, c, 0.0], [0.0, 0.0, 1.0]])


def _rot_y(theta: float) -> np.ndarray:
    c, s = math.cos(theta), math.sin(theta)
    return np.array([[c, 0.0, s], [0.0, 1.0, 0.0], [-s, 0.0, c]])


def _arc_profile(arc_length: float, theta: float):
    """In-plane tip offsets (toward the bend, along the base tangent).

    Returns (a, b) with a = (L/theta)(1 - cos theta), b = (L/theta) sin theta,
    using series forms near theta = 0 where both are 0/0.
    """
    if abs(theta) < SMALL_BEND_RAD:
        t2 = theta * theta
        return 0.5 * arc_length * theta * (1.0 - t2 / 12.0), arc_length * (
            1.0 - t2 / 6.0
        )
    return (
        arc_length * (1.0 - math.cos(theta)) / theta,
        arc_length * math.sin(theta) / theta,
    )


def _arc_frame(arc_length: float, theta: float, phi: float) -> Frame:
    a, b = _arc_profile(arc_length, theta)
    rz = _rot_z(phi)
    position = rz @ np.array([a, 0.0, b])
    rotation = rz @ _rot_y(theta) @ _rot_z(-phi)
    return Frame(position, rotation)


def segment_fk(params: SegmentParams, bend: BendState) -> Frame:
    """Tip frame of one bent segment relative to its base.

    The bend plane azimuth is atan2(theta_y, theta_x) plus the segment's
    x_pair_azimuth, so a pure theta_x bend curves toward the X pair's plane.
    """
    return _arc_frame(
        params.arc_length, bend.total, bend.plane + params.x_pair_azimuth
    )


def arm_fk(segments, states) -> list:
    """Cumulative base-to-tip frames for a serial chain of segments.

    frames[k] is the tip frame of segment k in the arm base frame; each
    segment's bend is interpreted in its own local frame.
    """
    segments = list(segments)
    states = list(states)
    if len(segments) != len(states):
        raise ValueError(
            f"got {len(segments)} segments but {len(states)} bend states"
        )
    if not segments:
        raise ValueError("at least one segment is required")
    frames = []
    current = Frame.identity()
    for params, bend in zip(segments, states):
        current = current.compose(segment_fk(params, bend))
        frames.append(current)
    return frames


def segment_shape_samples(params: SegmentParams, bend: BendState, n: int) -> np.ndarray:
    """n points along the segment backbone, base (origin) to tip, shape (n, 3).

    Point i lies at partial arc length s = i*L/(n-1): the same circular arc
    with L scaled to s and the bend scaled by s/L.
    """
    if n < 2:
        raise ValueError(f"need at least 2 sample points, got {n}")
    theta = bend.total
    phi = bend.plane + params.x_pair_azimuth
    pts = np.empty((n, 3))
    for i, frac in enumerate(np.linspace(0.0, 1.0, n)):
        a, b = _arc_profile(params.arc_length * frac, theta * frac)
        pts[i] = _rot_z(phi) @ np.array([a, 0.0, b])
    return pts


def arm_shape_samples(segments, states, points_per_segment: int = 25) -> np.ndarray:
    """Backbone polyline of the whole arm in the base frame, shape (m, 3).

    The first point is the arm base; each segment contributes
    points_per_segment - 1 further points (shared joints are not repeated).
    """
    frames = arm_fk(segments, states)
    pts = [np.zeros((1, 3))]
    base = Frame.identity()
    for params, bend, tip in zip(segments, states, frames):
        local = segment_shape_samples(params, bend, points_per_segment)
        pts.append(base.position + local[1:] @ base.rotation.T)
        base = tip
    return np.vstack(pts)
