"""Array entropy, density operators and von Neumann entropy.

An *array* is a probability-weighted set of preparation states.  Its
entropy is the Shannon entropy of the weights, whether or not the states
are orthogonal.  Many arrays share one density operator; the smallest
array entropy among them, and the smallest Shannon entropy of detection
probabilities over orthonormal bases, are both the von Neumann entropy,
attained by the eigen-decomposition of ``rho``.

A *line array* is a one-parameter curve of states with a probability
density along it.  Its entropy is measured relative to Hilbert-space arc
length, which makes it independent of how the curve is parametrized and
ties its conservation in time to conservation of distances.

Entropies are in nats unless a ``base`` is given (``base=2`` for bits).
Density operators live in the uniform measure.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.integrate import trapezoid

from .amplitudes import Propagator, WaveFunction, evolve_step
from .errors import DegenerateCurve, DimensionMismatch, NotNormalized, RankError
from .geometry import WeightedMeasure, basis_matrix, norm_squared
from .sampling import make_rng, random_isometry

__all__ = [
    "ArrayState",
    "LineArray",
    "DensityOperator",
    "shannon_entropy",
    "array_entropy",
    "arclength_density",
    "line_array_entropy",
    "great_circle_line_array",
    "evolve_array",
    "distance_drift_log",
    "distance_drift",
    "density_operator",
    "von_neumann_entropy",
    "eigen_array",
    "ensemble_from_isometry",
    "sample_same_rho_ensemble",
    "measurement_probabilities",
    "measurement_entropy",
    "EIGEN_CLAMP",
]

EIGEN_CLAMP = 1e-12
_PROB_ATOL = 1e-12
_NORM_ATOL = 1e-9


def _log(x, base):
    return np.log(x) if base is None else np.log(x) / math.log(base)


def shannon_entropy(p, base=None) -> float:
    """``-sum p log p`` with ``0 log 0 = 0``."""
    p = np.asarray(p, dtype=float)
    nz = p[p > 0]
    return float(-np.sum(nz * _log(nz, base)))


@dataclass(frozen=True, eq=False)
class ArrayState:
    """States ``states[a]`` prepared with probability ``probabilities[a]``."""

    probabilities: np.ndarray
    states: tuple

    def __post_init__(self):
        p = np.array(self.probabilities, dtype=float)
        states = tuple(
            s if isinstance(s, WaveFunction) else WaveFunction(0, s) for s in self.states
        )
        if p.ndim != 1 or p.size != len(states) or p.size == 0:
            raise DimensionMismatch("need one probability per state")
        if np.any(p <= 0):
            raise ValueError("array probabilities must be strictly positive")
        if abs(p.sum() - 1) > _PROB_ATOL:
            raise ValueError(f"array probabilities sum to {p.sum()}, not 1")
        if len({s.tick for s in states}) != 1 or len({s.M for s in states}) != 1:
            raise DimensionMismatch("array members must share tick and lattice size")
        p.setflags(write=False)
        object.__setattr__(self, "probabilities", p)
        object.__setattr__(self, "states", states)

    @property
    def members(self):
        return list(zip(self.probabilities, self.states))

    @property
    def M(self) -> int:
        return self.states[0].M

    def unnormalized(self, m: WeightedMeasure | None = None) -> list[int]:
        """Indices of members whose norm has drifted away from 1."""
        m = m or WeightedMeasure.uniform(self.M)
        return [
            i for i, s in enumerate(self.states) if abs(norm_squared(m, s) - 1) > _NORM_ATOL
        ]


@dataclass(frozen=True, eq=False)
class LineArray:
    """States sampled along a curve, with a probability density over the parameter."""

    params: np.ndarray
    states: tuple
    density: np.ndarray

    def __post_init__(self):
        a = np.array(self.params, dtype=float)
        p = np.array(self.density, dtype=float)
        states = tuple(
            s if isinstance(s, WaveFunction) else WaveFunction(0, s) for s in self.states
        )
        if a.ndim != 1 or a.size < 3:
            raise ValueError("a line array needs at least 3 samples")
        if p.shape != a.shape or len(states) != a.size:
            raise DimensionMismatch("params, states and density must have equal length")
        if np.any(np.diff(a) <= 0):
            raise ValueError("parameter values must be strictly increasing")
        if np.any(p < 0):
            raise ValueError("density must be non-negative")
        mass = trapezoid(p, a)
        if abs(mass - 1) > 1e-6:
            raise ValueError(f"density integrates to {mass}, not 1")
        object.__setattr__(self, "params", a)
        object.__setattr__(self, "density", p)
        object.__setattr__(self, "states", states)

    @property
    def M(self) -> int:
        return self.states[0].M

    def matrix(self) -> np.ndarray:
        return np.stack([s.amplitudes for s in self.states])


def array_entropy(A: ArrayState, base=None) -> float:
    return shannon_entropy(A.probabilities, base)


def arclength_density(L: LineArray, m: WeightedMeasure | None = None) -> np.ndarray:
    """Hilbert-space speed ``||dPsi/dalpha||`` at every sample.

    Derivatives by second-order finite differences, centered inside and
    one-sided at the two ends.
    """
    m = m or WeightedMeasure.uniform(L.M)
    X = L.matrix()
    gaps = np.sqrt(np.sum(m.weights * np.abs(np.diff(X, axis=0)) ** 2, axis=1))
    if np.any(gaps == 0):
        raise DegenerateCurve("consecutive samples are the same state")
    deriv = np.gradient(X, L.params, axis=0, edge_order=2)
    ell = np.sqrt(np.sum(m.weights * np.abs(deriv) ** 2, axis=1))
    if np.any(ell == 0):
        raise DegenerateCurve("curve has zero speed at some sample")
    return ell


def line_array_entropy(L: LineArray, m: WeightedMeasure | None = None, base=None) -> float:
    """``-int p log(p / ell) dalpha`` by the trapezoid rule."""
    ell = arclength_density(L, m)
    p = L.density
    integrand = np.zeros_like(p)
    nz = p > 0
    integrand[nz] = p[nz] * _log(p[nz] / ell[nz], base)
    return float(-trapezoid(integrand, L.params))


def _evolve(psi, U, steps):
    for _ in range(steps):
        psi = evolve_step(U, psi)
    return psi


def great_circle_line_array(phi0, phi1, n: int = 20, span: float = np.pi / 2) -> LineArray:
    """``cos(a) phi0 + sin(a) phi1`` for ``a`` on ``n`` even steps over ``[0, span]``.

    ``phi0`` and ``phi1`` should be orthonormal; the density is uniform.
    """
    phi0 = np.asarray(getattr(phi0, "amplitudes", phi0), dtype=complex)
    phi1 = np.asarray(getattr(phi1, "amplitudes", phi1), dtype=complex)
    alphas = np.linspace(0.0, span, n)
    states = tuple(np.cos(a) * phi0 + np.sin(a) * phi1 for a in alphas)
    return LineArray(alphas, states, np.full(n, 1.0 / span))


def evolve_array(A, U: Propagator, steps: int = 1):
    """Evolve every member; probabilities and parameters are untouched.

    Members are not renormalized, so a damped propagator shows up as
    ``A.unnormalized()`` being non-empty.
    """
    if A.M != U.M:
        raise DimensionMismatch(f"array on {A.M} sites, kernel of size {U.M}")
    states = tuple(_evolve(s, U, steps) for s in A.states)
    if isinstance(A, LineArray):
        return LineArray(A.params, states, A.density)
    return ArrayState(A.probabilities, states)


def distance_drift_log(L: LineArray, U: Propagator, steps: int, m: WeightedMeasure | None = None):
    """Per-step maximum change of neighbouring-sample distances.

    Entry ``t`` is ``max_j |d_j(t) - d_j(0)|`` where ``d_j`` is the distance
    between samples ``j`` and ``j+1``; entry 0 is always 0.
    """
    if L.M != U.M:
        raise DimensionMismatch(f"array on {L.M} sites, kernel of size {U.M}")
    m = m or WeightedMeasure.uniform(L.M)
    X = np.ascontiguousarray(L.matrix().T)  # columns are samples
    K = U.kernel

    def gaps(X):
        return np.sqrt(np.sum(m.weights[:, None] * np.abs(np.diff(X, axis=1)) ** 2, axis=0))

    d0 = gaps(X)
    log = np.zeros(steps + 1)
    for t in range(1, steps + 1):
        X = K @ X
        log[t] = np.max(np.abs(gaps(X) - d0))
    return log


def distance_drift(L: LineArray, U: Propagator, steps: int, m: WeightedMeasure | None = None) -> float:
    return float(np.max(distance_drift_log(L, U, steps, m)))


@dataclass(frozen=True, eq=False)
class DensityOperator:
    matrix: np.ndarray

    def __post_init__(self):
        rho = np.array(self.matrix, dtype=complex)
        if rho.ndim != 2 or rho.shape[0] != rho.shape[1]:
            raise DimensionMismatch(f"density operator must be square, got {rho.shape}")
        if np.max(np.abs(rho - rho.conj().T)) > 1e-12:
            raise ValueError("density operator is not Hermitian")
        if abs(np.trace(rho) - 1) > 1e-12:
            raise ValueError(f"density operator has trace {np.trace(rho).real}")
        if np.min(np.linalg.eigvalsh(rho)) < -1e-12:
            raise ValueError("density operator has negative eigenvalues")
        rho.setflags(write=False)
        object.__setattr__(self, "matrix", rho)

    @property
    def M(self) -> int:
        return self.matrix.shape[0]

    def spectrum(self):
        """Eigenvalues (clamped at ``EIGEN_CLAMP``) and eigenvectors as columns."""
        w, v = np.linalg.eigh(self.matrix)
        w = np.where(w < EIGEN_CLAMP, 0.0, w)
        return w, v

    def conjugate(self, U: Propagator) -> "DensityOperator":
        """``K rho K^dagger`` for the one-tick kernel ``K``."""
        rho = U.kernel @ self.matrix @ U.kernel.conj().T
        return DensityOperator((rho + rho.conj().T) / 2)


def density_operator(A: ArrayState) -> DensityOperator:
    bad = A.unnormalized()
    if bad:
        raise NotNormalized(f"array members {bad} are not normalized")
    X = np.stack([s.amplitudes for s in A.states], axis=1)
    rho = (X * A.probabilities) @ X.conj().T
    return DensityOperator((rho + rho.conj().T) / 2)


def von_neumann_entropy(rho: DensityOperator, base=None) -> float:
    w, _ = rho.spectrum()
    return shannon_entropy(w, base)


def eigen_array(rho: DensityOperator) -> ArrayState:
    """The orthogonal array: eigenvectors weighted by their eigenvalues."""
    w, v = rho.spectrum()
    keep = w > 0
    p = w[keep] / w[keep].sum()
    return ArrayState(p, tuple(v[:, keep].T))


def ensemble_from_isometry(rho: DensityOperator, U: np.ndarray) -> ArrayState:
    """Array with ``sqrt(p_a) Psi_a = sum_b U[a, b] sqrt(w_b) |w_b>``.

    ``U`` is ``K x r`` with orthonormal columns, ``r`` the rank of ``rho``;
    the eigenvectors are taken in the order returned by
    :meth:`DensityOperator.spectrum` restricted to non-zero eigenvalues.
    """
    w, v = rho.spectrum()
    keep = w > 0
    w, v = w[keep], v[:, keep]
    U = np.asarray(U, dtype=complex)
    if U.ndim != 2 or U.shape[1] != w.size:
        raise RankError(f"isometry must have {w.size} columns, got shape {U.shape}")
    vectors = U @ (np.sqrt(w)[:, None] * v.T)  # row a is sqrt(p_a) Psi_a
    p = np.sum(np.abs(vectors) ** 2, axis=1)
    keep = p > 1e-15
    states = vectors[keep] / np.sqrt(p[keep])[:, None]
    p = p[keep]
    return ArrayState(p / p.sum(), tuple(states))


def sample_same_rho_ensemble(rho: DensityOperator, K: int, seed) -> ArrayState:
    """A random ``K``-member array whose density operator is ``rho``."""
    w, _ = rho.spectrum()
    rank = int(np.count_nonzero(w))
    if K < rank:
        raise RankError(f"need at least rank(rho) = {rank} members, got K = {K}")
    rng = make_rng(seed)
    return ensemble_from_isometry(rho, random_isometry(rng, K, rank))


def measurement_probabilities(rho: DensityOperator, basis) -> np.ndarray:
    """``<Phi_n| rho |Phi_n>`` for each vector of an orthonormal basis."""
    B = basis_matrix(basis)
    if B.shape[0] != rho.M:
        raise DimensionMismatch(f"basis in dimension {B.shape[0]}, rho in {rho.M}")
    p = np.einsum("in,ij,jn->n", B.conj(), rho.matrix, B).real
    return np.clip(p, 0.0, None)


def measurement_entropy(rho: DensityOperator, basis, base=None) -> float:
    return shannon_entropy(measurement_probabilities(rho, basis), base)
