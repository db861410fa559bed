#!/usr/bin/env python3
"""Walk through the layer-jamming stiffness model.

Load capacity is the force held at the 20 mm reference deflection. The
shipped tables carry the bench-measured endpoints (0 and 12.5 psi vacuum)
for the whole two-segment arm and for segment 1 alone; capacities between
the knots interpolate linearly and nothing extrapolates past the data.
"""

import numpy as np

from jamarm import (
    DEFAULT_SEGMENT1_TABLE,
    DEFAULT_TWO_SEGMENT_TABLE,
    capacity_at,
    deflection_under_load,
    spring_constant,
    stiffness_ratio,
)

for table in (DEFAULT_TWO_SEGMENT_TABLE, DEFAULT_SEGMENT1_TABLE):
    print(f"== {table.label} ==")
    print(f"  measured rows: {table.rows}")
    for p in np.linspace(0.0, 12.5, 6):
        print(f"  {p:5.2f} psi: capacity {capacity_at(table, p):5.2f} N, "
              f"spring constant {spring_constant(table, p):6.1f} N/m, "
              f"stiffness ratio {stiffness_ratio(table, p):5.2f}")
    print()

print("== standard-weight checks at 12.5 psi ==")
g = 9.81
for grams, table, label in [
    (200, DEFAULT_TWO_SEGMENT_TABLE, "tip of segment 2"),
    (300, DEFAULT_TWO_SEGMENT_TABLE, "tip of segment 2"),
    (500, DEFAULT_SEGMENT1_TABLE, "connector (segment 1)"),
    (800, DEFAULT_SEGMENT1_TABLE, "connector (segment 1)"),
]:
    result = deflection_under_load(table, 12.5, grams / 1000 * g)
    verdict = "exceeds the 20 mm rating" if result.exceeds_reference else "holds"
    print(f"  {grams:4d} g at the {label}: deflects {result.deflection_m * 1000:5.1f} mm -> {verdict}")

print("\n(denser tables load from CSV, header `pressure_psi,capacity_N`;")
print(" see `jamarm stiffness --csv file.csv --pressure 8 --load 2`)")
