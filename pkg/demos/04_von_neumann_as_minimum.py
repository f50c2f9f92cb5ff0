"""Von Neumann entropy as the least array entropy and least measurement entropy."""

import numpy as np

from latticeamp.entropy import (
    DensityOperator,
    array_entropy,
    eigen_array,
    measurement_entropy,
    sample_same_rho_ensemble,
    von_neumann_entropy,
)
from latticeamp.sampling import make_rng, random_density_operator, random_orthonormal_basis

rng = make_rng(1)
rho = DensityOperator(random_density_operator(rng, 4))
s_vn = von_neumann_entropy(rho)
print(f"S_vN(rho) = {s_vn:.6f}")

arrays = [array_entropy(sample_same_rho_ensemble(rho, 6, seed)) for seed in range(1000)]
print(f"array entropy over 1000 same-rho arrays: min {min(arrays):.6f}, mean {np.mean(arrays):.6f}")
print(f"array entropy of the eigen-array:         {array_entropy(eigen_array(rho)):.6f}")

bases = [measurement_entropy(rho, random_orthonormal_basis(rng, 4).T) for _ in range(1000)]
_, eigvecs = rho.spectrum()
print(f"measurement entropy over 1000 bases:      min {min(bases):.6f}")
print(f"measurement entropy in the eigenbasis:    {measurement_entropy(rho, eigvecs.T):.6f}")
