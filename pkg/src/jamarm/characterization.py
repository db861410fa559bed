"""Empirical models fitted from bench tests of the arm.

Covers the bend-angle extraction from tracked marker pairs, ordinary
least-squares calibration of bend angle versus tendon displacement with
95% confidence bounds, and the layer-jamming stiffness model: a table of
load capacity (force held at the 20 mm reference deflection) versus vacuum
pressure, linearized into a spring constant per pressure.
"""

from dataclasses import dataclass
import csv
import math

import numpy as np
from scipy import stats

#: Gravitational acceleration used to convert test weights to force (m/s^2).
STANDARD_GRAVITY = 9.81


@dataclass(frozen=True)
class MarkerPair:
    """Two tracked points on a segment, as (x, y) image-plane coordinates (m)."""

    a: tuple
    b: tuple

    def __post_init__(self):
        if tuple(self.a) == tuple(self.b):
            raise ValueError("marker points must be distinct")
        object.__setattr__(self, "a", (float(self.a[0]), float(self.a[1])))
        object.__setattr__(self, "b", (float(self.b[0]), float(self.b[1])))


def bend_angle_from_markers(markers: MarkerPair) -> float:
    """Bend angle (deg) of the line through a marker pair.

    The slope angle atan2(ya - yb, xa - xb) is folded into (-90, 90] so the
    result matches arctan(slope) while a vertical marker line maps to 90.
    """
    (xa, ya), (xb, yb) = markers.a, markers.b
    angle = math.degrees(math.atan2(ya - yb, xa - xb))
    if angle > 90.0:
        angle -= 180.0
    elif angle <= -90.0:
        angle += 180.0
    return angle


@dataclass(frozen=True)
class RegressionFit:
    """Ordinary least-squares line with t-based 95% confidence bounds."""

    slope: float
    intercept: float
    slope_ci95: tuple
    intercept_ci95: tuple
    r_squared: float
    n: int


def fit_linear(points) -> RegressionFit:
    """Fit y = slope*x + intercept by ordinary least squares.

    points is a sequence of (x, y) pairs (or an (n, 2) array), n >= 2 with
    non-degenerate x. With n >= 3 the 95% confidence bounds come from the
    t distribution on n - 2 degrees of freedom and the standard errors of
    slope and intercept; with n = 2 there are no residual degrees of freedom
    and the bounds are reported as (-inf, inf).
    """
    data = np.asarray(points, dtype=float)
    if data.ndim != 2 or data.shape[1] != 2:
        raise ValueError(f"expected (n, 2) points, got shape {data.shape}")
    n = data.shape[0]
    if n < 2:
        raise ValueError(f"need at least 2 points, got {n}")
    x, y = data[:, 0], data[:, 1]
    x_mean, y_mean = x.mean(), y.mean()
    sxx = float(np.sum((x - x_mean) ** 2))
    if sxx == 0.0:
        raise ValueError("x values are all equal; slope is undefined")
    slope = float(np.sum((x - x_mean) * (y - y_mean))) / sxx
    intercept = y_mean - slope * x_mean
    residuals = y - (intercept + slope * x)
    sse = float(np.sum(residuals**2))
    sst = float(np.sum((y - y_mean) ** 2))
    r_squared = 1.0 if sst == 0.0 else 1.0 - sse / sst
    if n >= 3:
        s2 = sse / (n - 2)
        se_slope = math.sqrt(s2 / sxx)
        se_intercept = math.sqrt(s2 * (1.0 / n + x_mean**2 / sxx))
        tq = float(stats.t.ppf(0.975, n - 2))
        slope_ci = (slope - tq * se_slope, slope + tq * se_slope)
        intercept_ci = (intercept - tq * se_intercept, intercept + tq * se_intercept)
    else:
        slope_ci = (-math.inf, math.inf)
        intercept_ci = (-math.inf, math.inf)
    return RegressionFit(slope, intercept, slope_ci, intercept_ci, r_squared, n)


@dataclass(frozen=True)
class StiffnessTable:
    """Load capacity (N, at the reference deflection) versus vacuum pressure (psi).

    rows must be sorted strictly increasing in pressure with non-decreasing
    capacities (jamming only stiffens).
    """

    rows: tuple
    reference_deflection_m: float = 0.020
    label: str = ""

    def __post_init__(self):
        rows = tuple((float(p), float(c)) for p, c in self.rows)
        if not rows:
            raise ValueError("stiffness table needs at least one row")
        pressures = [p for p, _ in rows]
        capacities = [c for _, c in rows]
        if any(p < 0 for p in pressures):
            raise ValueError("pressures must be >= 0")
        if any(c <= 0 for c in capacities):
            raise ValueError("capacities must be > 0")
        if any(p2 <= p1 for p1, p2 in zip(pressures, pressures[1:])):
            raise ValueError("pressures must be strictly increasing")
        if any(c2 < c1 for c1, c2 in zip(capacities, capacities[1:])):
            raise ValueError("capacities must be non-decreasing in pressure")
        if not (self.reference_deflection_m > 0):
            raise ValueError("reference deflection must be > 0")
        object.__setattr__(self, "rows", rows)

    @property
    def pressures(self) -> np.ndarray:
        return np.array([p for p, _ in self.rows])

    @property
    def capacities(self) -> np.ndarray:
        return np.array([c for _, c in self.rows])


#: Whole-arm capacities with both segments jammed, load at the segment-2 tip.
DEFAULT_TWO_SEGMENT_TABLE = StiffnessTable(
    rows=((0.0, 0.2), (12.5, 2.7)), label="two-segment"
)

#: Segment-1-only capacities, load at the connector.
DEFAULT_SEGMENT1_TABLE = StiffnessTable(
    rows=((0.0, 1.0), (12.5, 10.0)), label="segment-1"
)


def capacity_at(table: StiffnessTable, p: float) -> float:
    """Load capacity (N) at pressure p (psi), linearly interpolated between rows.

    No extrapolation: p outside the table's pressure range raises.
    """
    pressures = table.pressures
    if p < pressures[0] or p > pressures[-1]:
        raise ValueError(
            f"pressure {p} psi outside table range "
            f"[{pressures[0]}, {pressures[-1]}] ({table.label or 'unnamed'})"
        )
    return float(np.interp(p, pressures, table.capacities))


def stiffness_ratio(table: StiffnessTable, p: float) -> float:
    """Capacity at p divided by the unjammed (0 psi) capacity."""
    return capacity_at(table, p) / capacity_at(table, 0.0)


def spring_constant(table: StiffnessTable, p: float) -> float:
    """Linearized stiffness (N/m): capacity over the reference deflection."""
    return capacity_at(table, p) / table.reference_deflection_m


@dataclass(frozen=True)
class DeflectionResult:
    deflection_m: float
    #: True when the load would push past the reference deflection, i.e.
    #: beyond the table's rated capacity (value reported, not clamped).
    exceeds_reference: bool


def deflection_under_load(table: StiffnessTable, p: float, force_n: float) -> DeflectionResult:
    """Deflection (m) of the loading point under force_n at pressure p."""
    if force_n < 0:
        raise ValueError(f"load must be >= 0, got {force_n}")
    deflection = force_n / spring_constant(table, p)
    return DeflectionResult(deflection, deflection > table.reference_deflection_m)


def _read_csv_rows(path, expected_header):
    """Yield (line_number, [float, float]) rows; '#' comments and blanks skipped."""
    with open(path, newline="") as fh:
        header_seen = False
        for lineno, row in enumerate(csv.reader(fh), start=1):
            cells = [c.strip() for c in row]
            if not cells or not any(cells) or cells[0].startswith("#"):
                continue
            if not header_seen:
                if cells != list(expected_header):
                    raise ValueError(
                        f"{path}:{lineno}: expected header "
                        f"{','.join(expected_header)!r}, got {','.join(cells)!r}"
                    )
                header_seen = True
                continue
            if len(cells) != 2:
                raise ValueError(f"{path}:{lineno}: expected 2 columns, got {len(cells)}")
            try:
                yield lineno, [float(cells[0]), float(cells[1])]
            except ValueError:
                raise ValueError(f"{path}:{lineno}: could not parse numbers from {cells}")
        if not header_seen:
            raise ValueError(f"{path}: missing header row {','.join(expected_header)!r}")


def load_calibration_csv(path) -> np.ndarray:
    """Read calibration points from a CSV with header ``x_m,theta_deg``.

    Returns an (n, 2) array of (tendon displacement m, bend angle deg),
    ready for fit_linear().
    """
    rows = [values for _, values in _read_csv_rows(path, ("x_m", "theta_deg"))]
    if not rows:
        raise ValueError(f"{path}: no data rows")
    return np.array(rows)


def load_stiffness_csv(path, reference_deflection_m: float = 0.020, label: str = "") -> StiffnessTable:
    """Read a stiffness table from a CSV with header ``pressure_psi,capacity_N``."""
    rows = [tuple(values) for _, values in _read_csv_rows(path, ("pressure_psi", "capacity_N"))]
    if not rows:
        raise ValueError(f"{path}: no data rows")
    return StiffnessTable(
        rows=tuple(rows),
        reference_deflection_m=reference_deflection_m,
        label=label or str(path),
    )
