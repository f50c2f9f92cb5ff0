"""Conserved array entropy forces conserved Hilbert distances.

A curve of states with a probability density has an entropy measured
against arc length.  If evolution leaves it unchanged for every curve,
the distances between neighbouring states must stay fixed, i.e. the
evolution is unitary.  A damped propagator shows what breaks otherwise.
"""

import numpy as np

from latticeamp.amplitudes import HamiltonianConfig, build_propagator
from latticeamp.entropy import (
    distance_drift_log,
    evolve_array,
    great_circle_line_array,
    line_array_entropy,
)
from latticeamp.sampling import make_rng, random_orthonormal_basis
from latticeamp.setups import LatticeSpec

M = 16
B = random_orthonormal_basis(make_rng(0), M)
line = great_circle_line_array(B[:, 0], B[:, 1], n=200)
lattice = LatticeSpec(M, tau=0.1)

for gamma in (0.0, 0.1):
    U = build_propagator(HamiltonianConfig.free(M, gamma=gamma), lattice)
    log = distance_drift_log(line, U, 100)
    later = evolve_array(line, U, 100)
    print(f"gamma={gamma}: max distance drift {log.max():.2e}, "
          f"entropy {line_array_entropy(line):.6f} -> {line_array_entropy(later):.6f}")
