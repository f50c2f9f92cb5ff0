"""Amplitudes of setups: wave functions, one-tick propagators and filters.

The amplitude of a setup is obtained by starting from a delta at the
source, alternately evolving one tick and projecting onto the holes of
any filter at that tick, and reading the result at the detector site.
:func:`amplitude_brute_force` computes the same number by summing
explicitly over every sequence of holes, and serves as the oracle.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

import numpy as np
import scipy.linalg

from .errors import DimensionMismatch, PathExplosion, TickMismatch
from .setups import Filter, LatticeSpec, Setup

__all__ = [
    "WaveFunction",
    "Propagator",
    "HamiltonianConfig",
    "tight_binding_hamiltonian",
    "build_propagator",
    "identity_propagator",
    "apply_filter",
    "evolve_step",
    "propagate_setup",
    "amplitude_of_setup",
    "amplitude_brute_force",
    "MAX_PATHS",
]

MAX_PATHS = 10**6


@dataclass(frozen=True, eq=False)
class WaveFunction:
    tick: int
    amplitudes: np.ndarray

    def __post_init__(self):
        amps = np.array(self.amplitudes, dtype=complex)
        if amps.ndim != 1:
            raise DimensionMismatch(f"amplitudes must be 1-d, got shape {amps.shape}")
        if not np.all(np.isfinite(amps)):
            raise ValueError("wave function has non-finite amplitudes")
        amps.setflags(write=False)
        object.__setattr__(self, "amplitudes", amps)

    @classmethod
    def delta(cls, M: int, site: int, tick: int = 0) -> "WaveFunction":
        amps = np.zeros(M, dtype=complex)
        amps[site] = 1.0
        return cls(tick, amps)

    @property
    def M(self) -> int:
        return self.amplitudes.shape[0]

    def __len__(self):
        return self.M

    def __repr__(self):
        return f"WaveFunction(tick={self.tick}, amplitudes={np.array2string(self.amplitudes, precision=4)})"


@dataclass(frozen=True, eq=False)
class Propagator:
    """Time-homogeneous one-tick kernel; ``kernel[x', x]`` maps site x to x'."""

    kernel: np.ndarray
    hermitian_generator: bool = True

    def __post_init__(self):
        k = np.array(self.kernel, dtype=complex)
        if k.ndim != 2 or k.shape[0] != k.shape[1]:
            raise DimensionMismatch(f"kernel must be square, got shape {k.shape}")
        if not np.all(np.isfinite(k)):
            raise ValueError("kernel has non-finite entries")
        k.setflags(write=False)
        object.__setattr__(self, "kernel", k)

    @property
    def M(self) -> int:
        return self.kernel.shape[0]


@dataclass(frozen=True, eq=False)
class HamiltonianConfig:
    """Tight-binding Hamiltonian with on-site potential and diagonal damping.

    ``gamma`` all zero gives a unitary propagator; positive entries make it
    contractive (used as the negative control for unitarity checks).
    """

    J: float
    potential: np.ndarray
    gamma: np.ndarray = field(default=None)
    boundary: str = "periodic"

    def __post_init__(self):
        pot = np.asarray(self.potential, dtype=float)
        gam = np.zeros_like(pot) if self.gamma is None else np.asarray(self.gamma, dtype=float)
        if pot.ndim != 1 or gam.shape != pot.shape:
            raise DimensionMismatch(
                f"potential {pot.shape} and gamma {gam.shape} must be equal-length sequences"
            )
        if np.any(gam < 0):
            raise ValueError("damping gamma must be non-negative")
        if self.boundary not in ("periodic", "open"):
            raise ValueError(f"unknown boundary {self.boundary!r}")
        object.__setattr__(self, "potential", pot)
        object.__setattr__(self, "gamma", gam)

    @property
    def M(self) -> int:
        return self.potential.shape[0]

    @classmethod
    def free(cls, M: int, J: float = 1.0, gamma: float = 0.0, boundary: str = "periodic"):
        return cls(J, np.zeros(M), np.full(M, float(gamma)), boundary)


def tight_binding_hamiltonian(config: HamiltonianConfig) -> np.ndarray:
    M = config.M
    H = np.diag(config.potential).astype(complex)
    for x in range(M - 1):
        H[x, x + 1] = H[x + 1, x] = -config.J
    if config.boundary == "periodic" and M > 2:
        H[0, M - 1] = H[M - 1, 0] = -config.J
    return H


def build_propagator(config: HamiltonianConfig, lattice: LatticeSpec) -> Propagator:
    """``exp(-i (H - i Gamma) tau)`` for the tight-binding ``H``.

    Uniform damping commutes with ``H``, so the exponential comes from the
    Hermitian eigendecomposition of ``H``; otherwise scaling-and-squaring.
    """
    if config.M != lattice.M:
        raise DimensionMismatch(f"config has {config.M} sites, lattice has {lattice.M}")
    H = tight_binding_hamiltonian(config)
    tau = lattice.tau
    gamma = config.gamma
    if np.all(gamma == gamma[0]):
        energies, vecs = np.linalg.eigh(H)
        phases = np.exp(-1j * energies * tau) * np.exp(-gamma[0] * tau)
        kernel = (vecs * phases) @ vecs.conj().T
    else:
        kernel = scipy.linalg.expm(-1j * tau * (H - 1j * np.diag(gamma)))
    return Propagator(kernel, hermitian_generator=bool(np.all(gamma == 0)))


def identity_propagator(M: int) -> Propagator:
    return Propagator(np.eye(M, dtype=complex))


def apply_filter(f: Filter, psi: WaveFunction) -> WaveFunction:
    if psi.tick != f.tick:
        raise TickMismatch(f"filter at tick {f.tick} applied to wave function at tick {psi.tick}")
    holes = list(f.holes)
    if max(holes) >= psi.M:
        raise DimensionMismatch(f"hole {max(holes)} outside wave function of length {psi.M}")
    out = np.zeros_like(psi.amplitudes)
    out[holes] = psi.amplitudes[holes]
    return WaveFunction(psi.tick, out)


def evolve_step(U: Propagator, psi: WaveFunction) -> WaveFunction:
    if U.M != psi.M:
        raise DimensionMismatch(f"kernel of size {U.M} applied to wave function of length {psi.M}")
    return WaveFunction(psi.tick + 1, U.kernel @ psi.amplitudes)


def propagate_setup(a: Setup, U: Propagator) -> WaveFunction:
    """Wave function at the detector tick, just before detection."""
    psi = WaveFunction.delta(U.M, a.source.site, a.source.tick)
    filters = {f.tick: f for f in a.filters}
    for tick in range(a.source.tick + 1, a.detector.tick + 1):
        psi = evolve_step(U, psi)
        if tick in filters:
            psi = apply_filter(filters[tick], psi)
    return psi


def amplitude_of_setup(a: Setup, U: Propagator) -> complex:
    return complex(propagate_setup(a, U).amplitudes[a.detector.site])


def amplitude_brute_force(a: Setup, U: Propagator, max_paths: int = MAX_PATHS) -> complex:
    """Sum over every hole sequence of products of kernel powers.

    Between consecutive constraint times ``t1 < t2`` the particle goes from
    site ``y`` to ``y'`` with amplitude ``(K ** (t2 - t1))[y', y]``.
    """
    n_paths = int(np.prod([len(f.holes) for f in a.filters], dtype=object))
    if n_paths > max_paths:
        raise PathExplosion(f"{n_paths} paths exceed the limit of {max_paths}")
    times = [a.source.tick] + [f.tick for f in a.filters] + [a.detector.tick]
    powers = [
        np.linalg.matrix_power(U.kernel, later - earlier)
        for earlier, later in zip(times, times[1:])
    ]
    total = 0j
    for path in itertools.product(*(f.sorted_holes() for f in a.filters)):
        sites = (a.source.site,) + path + (a.detector.site,)
        term = 1 + 0j
        for K, (y, y_next) in zip(powers, zip(sites, sites[1:])):
            term *= K[y_next, y]
        total += term
    return total
