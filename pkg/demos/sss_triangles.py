"""Side lengths alone do not fix a triangle in the complex ball: the family
below keeps all three pseudo-distances while its angular invariant moves.

Run: python3 demos/sss_triangles.py
"""

import numpy as np

from hyperkos.moduli import congruent
from hyperkos.rkhs import alpha, delta_h, gram_of_config, kos
from hyperkos.triangles import build_model_triangle, sdp_of_gram, sdp_to_sprime, sss_family

family = [sss_family(t) for t in np.linspace(1.0, np.sqrt(2.0), 5)]
print("   t      d12      d13      d23     alpha      |kos|")
for t, X in zip(np.linspace(1.0, np.sqrt(2.0), 5), family):
    G = gram_of_config(X)
    print(f"{t:6.4f}  {delta_h(G, 0, 1):.5f}  {delta_h(G, 0, 2):.5f}  {delta_h(G, 1, 2):.5f}"
          f"  {alpha(G, 0, 1, 2):+.5f}  {abs(kos(G, 0, 1, 2)):.5f}")

print("first and last members congruent:", congruent(family[0], family[-1]))

# Two sides plus the complex kos value do pin the triangle down.
data = sdp_of_gram(gram_of_config(family[2]))
rebuilt = build_model_triangle(data)
print("rebuilt from (d12, d13, kos) congruent:", congruent(rebuilt, family[2]))
print("same triangle as (d12, d13, d23, alpha):", sdp_to_sprime(data))
