"""Tendon coupling/decoupling law for serially routed segments.

Segment 2's tendons run through segment 1, so bending segment 1 drags them
along, and pulling them flexes segment 1 slightly. The decoupling law turns
desired per-segment pair displacements into actuated displacements: segment-2
outputs carry a geometric feedforward share of the segment-1 inputs, and
segment-1 outputs subtract a small compensation (factor alpha) for the
disturbance that segment-2 actuation exerts through segment 1. Segment 2's
pairs sit at an azimuth offset (30 degrees on the built arm) from segment 1's.
"""

from dataclasses import dataclass
import math

import numpy as np

#: Empirical segment-1 compensation gain of the built two-segment arm.
DEFAULT_ALPHA = 1.00765

# recouple() refuses matrices with condition numbers beyond this.
_MAX_CONDITION = 1e12


@dataclass(frozen=True)
class TendonCommand:
    """Desired pair displacements (m): x/y pairs of segments 1 and 2."""

    x1i: float = 0.0
    y1i: float = 0.0
    x2i: float = 0.0
    y2i: float = 0.0

    def as_vector(self) -> np.ndarray:
        return np.array([self.x1i, self.y1i, self.x2i, self.y2i])


@dataclass(frozen=True)
class TendonActuation:
    """Actuated pair displacements (m) actually driven by the spools."""

    x1o: float = 0.0
    y1o: float = 0.0
    x2o: float = 0.0
    y2o: float = 0.0

    def as_vector(self) -> np.ndarray:
        return np.array([self.x1o, self.y1o, self.x2o, self.y2o])


@dataclass(frozen=True)
class CouplingConfig:
    """Decoupling-law gains.

    alpha scales the whole segment-1 compensation; beta additionally scales
    its cross-plane (sine) term only. seg2_offset is the azimuth of segment
    2's X pair relative to segment 1's (rad).
    """

    alpha: float = DEFAULT_ALPHA
    beta: float = 1.0
    seg2_offset: float = math.pi / 6.0

    def __post_init__(self):
        # alpha = 0 is meaningful: no compensation (rigid-plant assumption)
        if not (self.alpha >= 0.0):
            raise ValueError(f"alpha must be >= 0, got {self.alpha}")
        if not (self.beta > 0.0):
            raise ValueError(f"beta must be > 0, got {self.beta}")


def decouple(cmd: TendonCommand, cfg: CouplingConfig = CouplingConfig()) -> TendonActuation:
    """Actuated displacements for desired per-segment displacements.

    With offset psi (cos -> c, sin -> s), half-compensation k = alpha/2:

        x1o = x1i - k*c*x2i + k*beta*s*y2i
        y1o = y1i - k*c*y2i - k*beta*s*x2i
        x2o = x2i + c*x1i + s*y1i
        y2o = y2i + c*y1i - s*x1i

    Pure segment-1 commands pass through unchanged to (x1o, y1o); the
    segment-2 rows do not involve alpha or beta.
    """
    c = math.cos(cfg.seg2_offset)
    s = math.sin(cfg.seg2_offset)
    k = 0.5 * cfg.alpha
    return TendonActuation(
        x1o=cmd.x1i - k * c * cmd.x2i + k * cfg.beta * s * cmd.y2i,
        y1o=cmd.y1i - k * c * cmd.y2i - k * cfg.beta * s * cmd.x2i,
        x2o=cmd.x2i + c * cmd.x1i + s * cmd.y1i,
        y2o=cmd.y2i + c * cmd.y1i - s * cmd.x1i,
    )


def coupling_matrix(cfg: CouplingConfig = CouplingConfig()) -> np.ndarray:
    """4x4 matrix M with decouple(v) = M @ v in order (x1, y1, x2, y2)."""
    c = math.cos(cfg.seg2_offset)
    s = math.sin(cfg.seg2_offset)
    k = 0.5 * cfg.alpha
    return np.array(
        [
            [1.0, 0.0, -k * c, k * cfg.beta * s],
            [0.0, 1.0, -k * cfg.beta * s, -k * c],
            [c, s, 1.0, 0.0],
            [-s, c, 0.0, 1.0],
        ]
    )


def recouple(act: TendonActuation, cfg: CouplingConfig = CouplingConfig()) -> TendonCommand:
    """Desired displacements that decouple() would map to `act` (exact inverse)."""
    m = coupling_matrix(cfg)
    cond = np.linalg.cond(m)
    if not np.isfinite(cond) or cond > _MAX_CONDITION:
        raise ValueError(
            f"coupling matrix is numerically singular (condition number {cond:.3e})"
        )
    v = np.linalg.solve(m, act.as_vector())
    return TendonCommand(*v)


def seg2_local_displacements(
    act: TendonActuation,
    seg1_equivalent,
    cfg: CouplingConfig = CouplingConfig(),
):
    """Pair displacements reaching segment 2 after segment 1 takes its share.

    seg1_equivalent is (x_eq, y_eq): the tendon-equivalent displacements
    segment 1 actually realized. Removing their geometric share from the
    actuated segment-2 displacements leaves what bends segment 2 itself.
    """
    x_eq, y_eq = seg1_equivalent
    c = math.cos(cfg.seg2_offset)
    s = math.sin(cfg.seg2_offset)
    return (act.x2o - c * x_eq - s * y_eq, act.y2o - c * y_eq + s * x_eq)


def multi_segment_matrix(pair_azimuths, alpha: float = DEFAULT_ALPHA, beta: float = 1.0) -> np.ndarray:
    """Feedforward/compensation matrix for N serially routed segments.

    pair_azimuths lists each segment's X-pair azimuth (rad), base to tip.
    Rows/columns are ordered (x1, y1, ..., xN, yN). For segments k < j the
    deeper segment's outputs carry the shallower inputs rotated by the
    azimuth difference, and the shallower outputs subtract the alpha/2
    compensation for the deeper inputs. N = 2 reproduces coupling_matrix().

    Only the two-segment arm is validated against hardware-derived numbers;
    the N-segment form extends the same pairwise rule.
    """
    azimuths = [float(a) for a in pair_azimuths]
    n = len(azimuths)
    if n < 1:
        raise ValueError("at least one segment is required")
    m = np.eye(2 * n)
    k = 0.5 * alpha
    for j in range(n):
        for i in range(j):
            c = math.cos(azimuths[j] - azimuths[i])
            s = math.sin(azimuths[j] - azimuths[i])
            # feedforward: segment i inputs appear in segment j outputs
            m[2 * j : 2 * j + 2, 2 * i : 2 * i + 2] = [[c, s], [-s, c]]
            # compensation: segment j inputs corrected out of segment i outputs
            m[2 * i : 2 * i + 2, 2 * j : 2 * j + 2] = [
                [-k * c, k * beta * s],
                [-k * beta * s, -k * c],
            ]
    return m
