"""Observables as orthonormal detection bases.

An observable is a normal operator ``Q = sum_n f_n |Phi_n><Phi_n|``.  Only
the basis matters for what can be detected: a detector is an arrangement
of interactions that carries each ``Phi_j`` onto a delta at its own site
``x_j``, after which the position Born rule reads off ``|<Phi_j|Psi>|^2``.
The values ``f_n`` are labels and never enter a probability.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .amplitudes import Propagator, WaveFunction
from .entropy import DensityOperator, measurement_probabilities
from .errors import NotNormalized, NotSquare, SiteCollision
from .geometry import NORMALIZED_ATOL, basis_matrix

__all__ = [
    "NormalObservable",
    "make_observable",
    "check_normal",
    "expand_in_basis",
    "design_detector_unitary",
    "detection_probabilities",
]

NORMAL_ATOL = 1e-10


@dataclass(frozen=True, eq=False)
class NormalObservable:
    basis: np.ndarray  # unitary; column n is Phi_n
    values: np.ndarray
    target_sites: tuple

    @property
    def M(self) -> int:
        return self.basis.shape[0]

    @property
    def matrix(self) -> np.ndarray:
        B = self.basis
        return (B * self.values) @ B.conj().T

    def basis_states(self) -> list[WaveFunction]:
        return [WaveFunction(0, col) for col in self.basis.T]


def make_observable(basis, values, target_sites=None) -> NormalObservable:
    """Assemble ``Q`` from a basis (sequence of states) and one value per state.

    ``target_sites`` default to ``0, 1, ..., M-1``.
    """
    B = basis_matrix(basis)
    values = np.asarray(values, dtype=complex)
    if values.shape != (B.shape[1],):
        raise ValueError(f"need {B.shape[1]} values, got {values.shape}")
    if not np.all(np.isfinite(values)):
        raise ValueError("observable values must be finite")
    sites = tuple(range(B.shape[0])) if target_sites is None else tuple(int(s) for s in target_sites)
    if len(sites) != B.shape[1]:
        raise ValueError(f"need one target site per basis state, got {len(sites)}")
    B.setflags(write=False)
    values.setflags(write=False)
    return NormalObservable(B, values, sites)


def check_normal(matrix) -> bool:
    Q = np.asarray(matrix, dtype=complex)
    if Q.ndim != 2 or Q.shape[0] != Q.shape[1]:
        raise NotSquare(f"expected a square matrix, got shape {Q.shape}")
    QH = Q.conj().T
    return bool(np.linalg.norm(Q @ QH - QH @ Q) < NORMAL_ATOL)


def _amplitudes(psi):
    return psi.amplitudes if isinstance(psi, WaveFunction) else np.asarray(psi, dtype=complex)


def expand_in_basis(psi, obs: NormalObservable) -> np.ndarray:
    """Coefficients ``a_j = <Phi_j|Psi>``."""
    a = _amplitudes(psi)
    if abs(np.vdot(a, a).real - 1) > NORMALIZED_ATOL:
        raise NotNormalized("state must be normalized")
    return obs.basis.conj().T @ a


def design_detector_unitary(obs: NormalObservable) -> Propagator:
    """Kernel ``V = sum_j |x_j><Phi_j|`` sending each basis state to its site."""
    sites = obs.target_sites
    if len(set(sites)) != len(sites):
        raise SiteCollision(f"target sites {sites} are not distinct")
    if min(sites) < 0 or max(sites) >= obs.M:
        raise SiteCollision(f"target sites {sites} outside the lattice")
    V = np.zeros((obs.M, obs.M), dtype=complex)
    V[list(sites), :] = obs.basis.conj().T
    return Propagator(V, hermitian_generator=True)


def detection_probabilities(state, obs: NormalObservable) -> np.ndarray:
    """``p_n = <Phi_n| rho |Phi_n>``; a pure state is treated as ``|Psi><Psi|``."""
    if isinstance(state, DensityOperator):
        return measurement_probabilities(state, obs.basis.T)
    return np.abs(expand_in_basis(state, obs)) ** 2
