"""Gluing triangles into a tetrahedron.

Three faces meeting at a vertex fit together exactly when the third kos
value lies in a disk fixed by the other two. The same question for glued
Gram pieces is answered by the assembly gates.

Run: python3 demos/tetrahedron_assembly.py
"""

import numpy as np

from hyperkos.assembly import Piece, assemble_v2, q1_from_triangles, tetra_gate, third_triangle_disk
from hyperkos.ball import random_points

K23, K24 = 0.6 * np.exp(0.4j), 0.5 * np.exp(-1.1j)
center, radius = third_triangle_disk(K23, K24)
print(f"admissible K34: |K34 - {center:.4f}| <= {radius:.4f}")
for K34 in (center, center + 0.99 * radius, center + 1.01 * radius):
    v = tetra_gate(K23, K24, K34)
    print(f"  K34 = {K34:.4f}: feasible={v.feasible} conditions={v.details['conditions']}")

print("\nfaces in a complex line through vertex 1")
ok = q1_from_triangles(np.array([[0], [0.3], [0.5]]), np.array([[0], [0.5], [0.4]]), np.array([[0], [0.4], [0.3]]))
bad = q1_from_triangles(np.array([[0], [0.3], [0.5]]), np.array([[0], [0.5], [0.4]]), np.array([[0], [0.4], [-0.3]]))
print("  consistent faces  ->", ok.feasible)
print("  one face flipped  ->", bad.feasible, "failing minor", bad.failing_minor)

print("\nfaces cut from a random tetrahedron in the 3-ball")
X = random_points(np.random.default_rng(3), 4, 3, 0.8)
faces = [(0, 1, 2), (0, 2, 3), (0, 3, 1)]
pieces = [Piece.from_config(X[list(f)], f) for f in faces]
v = assemble_v2(pieces)
print("  feasible:", v.feasible, "witness rows:", None if v.witness is None else v.witness.shape)
