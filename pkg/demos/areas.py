"""Areas of geodesic triangles from kernel data, checked against direct
integration of the hyperbolic density.

Run: python3 demos/areas.py
"""

import numpy as np
from scipy.integrate import dblquad

from hyperkos.areas import area_bk2, area_ch1, polygon_area_ch1

# Beltrami-Klein right triangle (0, a, i b): integrate the area density.
a, b = 0.6, 0.5
density = lambda y, x: 4.0 / (1.0 - x * x - y * y) ** 1.5
direct, _ = dblquad(density, 0.0, a, 0.0, lambda x: b * (1.0 - x / a))
print(f"Klein right triangle: kernel {area_bk2([[0, 0], [a, 0], [0, b]]):.10f}, quadrature {direct:.10f}")

# Triangles in a complex geodesic, and a polygon as a sum of its fan.
T = [0.0, 0.5, 0.4j]
print("disk triangle area", area_ch1(T), "signed ccw", area_ch1(T, signed=True), "cw", area_ch1(T[::-1], signed=True))
P = 0.7 * np.exp(1j * np.linspace(0, 2 * np.pi, 7)[:-1])
fan = sum(area_ch1([P[0], P[i], P[i + 1]]) for i in range(1, len(P) - 1))
print(f"hexagon area {polygon_area_ch1(P):.10f}, fan sum {fan:.10f}")
