"""Measuring an observable by steering each basis state to its own site."""

import numpy as np

from latticeamp.amplitudes import WaveFunction, evolve_step
from latticeamp.geometry import WeightedMeasure, born_probabilities
from latticeamp.observables import (
    design_detector_unitary,
    detection_probabilities,
    make_observable,
)
from latticeamp.sampling import make_rng, random_orthonormal_basis, random_state

rng = make_rng(2)
M = 5
obs = make_observable(random_orthonormal_basis(rng, M).T, values=[-2, -1, 0, 1, 2],
                      target_sites=[4, 0, 3, 1, 2])
psi = WaveFunction(0, random_state(rng, M))

V = design_detector_unitary(obs)
after = evolve_step(V, psi)
print("position probabilities after the detector:", np.round(born_probabilities(WeightedMeasure.uniform(M), after), 6))
print("read at the target sites:                 ",
      np.round(born_probabilities(WeightedMeasure.uniform(M), after)[list(obs.target_sites)], 6))
print("|<Phi_n|Psi>|^2 directly:                  ", np.round(detection_probabilities(psi, obs), 6))
