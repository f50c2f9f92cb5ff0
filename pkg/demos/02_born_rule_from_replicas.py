"""How the fraction filter on N replicas singles out |A_k|^2.

The squared distance between the filtered and unfiltered N-replica state
goes to zero when the window [f - eps, f + eps] contains p_k = |A_k|^2 and
to one when it does not.
"""

import numpy as np

from latticeamp.born import (
    FractionWindow,
    convergence_scan,
    filter_distance_brute,
    filter_distance_closed_form,
)
from latticeamp.geometry import WeightedMeasure, born_probabilities, normalize

psi = normalize(WeightedMeasure.uniform(3), np.array([0.3 ** 0.5, 0.5, 0.2 ** 0.5 * 1j]))
p_k = abs(psi[0]) ** 2
print(f"p_k = |A_0|^2 = {p_k:.3f}")

print("\n   N   window [0.25, 0.35]   window [0.45, 0.55]")
inside = convergence_scan(p_k, 0.30, 0.05, [10, 100, 1000, 10000])
outside = convergence_scan(p_k, 0.50, 0.05, [10, 100, 1000, 10000])
for a, b in zip(inside, outside):
    print(f"{a.N:6d}   {a.distance_closed:18.3e}   {b.distance_closed:18.9f}")

# For small N the same distance from the explicit product state.
w = FractionWindow(0.3, 0.1, 8)
print(f"\nN=8 closed form {filter_distance_closed_form(p_k, w):.15f}")
print(f"N=8 tensor sum  {filter_distance_brute(psi, 0, w):.15f}")

# With unequal cell weights the same argument gives Pr(k) = w_k |A_k|^2.
m = WeightedMeasure.volume(g=[1.0, 4.0, 9.0], dx=0.5)
phi = normalize(m, np.array([1.0, 1.0, 1.0]))
print("\nvolume-weighted Born probabilities:", born_probabilities(m, phi))
