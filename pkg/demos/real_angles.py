"""Real hyperbolic trivalent vertices: which angle triples occur as face
angles or dihedral angles, and how the two descriptions are dual.

Run: python3 demos/real_angles.py
"""

import numpy as np

from hyperkos.realhyp import (
    angle_criteria_batch,
    cayley_classify,
    dihedral_from_vertex,
    dual,
    gda_check,
    gva_check,
    vertex_from_dihedral,
    vertex_gate,
)

va = np.array([0.9, 1.1, 1.3])
print("vertex angles", va, "->", vertex_gate(va))
cos_da = dihedral_from_vertex(va)
print("dihedral cosines", np.round(cos_da, 6))
print("back to vertex cosines", np.round(vertex_from_dihedral(np.arccos(cos_da)), 6), "vs", np.round(np.cos(va), 6))

for g in ([0.5, 0.6, 1.8], [0.9 * np.pi] * 3, [2.0, 2.0, 2.0]):
    g = np.array(g)
    print(f"{np.round(g, 3)}: face angles {gva_check(g)}, dual as dihedral {gda_check(dual(g))}")

# Grid census of both criteria against the positivity test they replace.
axis = np.linspace(0.05, np.pi - 0.05, 25)
grid = np.stack(np.meshgrid(axis, axis, axis, indexing="ij"), axis=-1).reshape(-1, 3)
crit = angle_criteria_batch(grid)
print(f"\n{len(grid)} triples: {crit.gva.sum()} face-angle triples, {crit.gda.sum()} dihedral triples")
print("angle triangle inequality alone admits", crit.tia.sum(), "triples")

for p in ([0, 0, 0], [1, 1, 1], [0.9, 0.9, 0.9], [1, 0, 0]):
    print("Cayley class of", p, "->", cayley_classify(p))
