"""Seeded random states, isometries and density operators.

Every function takes a :class:`numpy.random.Generator`; build one with
:func:`make_rng` so a single integer seed reproduces a whole experiment.
"""

import numpy as np

__all__ = [
    "make_rng",
    "complex_gaussian",
    "random_isometry",
    "random_orthonormal_basis",
    "random_state",
    "random_density_operator",
]


def make_rng(seed):
    """PCG64 generator seeded with ``seed`` (``numpy.random.default_rng``)."""
    return np.random.default_rng(seed)


def complex_gaussian(rng, shape):
    """Standard complex normal draws, E|z|^2 = 1."""
    return (rng.standard_normal(shape) + 1j * rng.standard_normal(shape)) / np.sqrt(2)


def random_isometry(rng, rows, cols):
    """``rows x cols`` matrix with orthonormal columns, Haar distributed.

    QR of a complex Gaussian matrix with the phases of ``diag(R)`` moved
    into ``Q``; without that correction the distribution is not invariant.
    """
    if cols > rows:
        raise ValueError(f"cannot fit {cols} orthonormal columns in dimension {rows}")
    q, r = np.linalg.qr(complex_gaussian(rng, (rows, cols)))
    d = np.diagonal(r)
    return q * (d / np.abs(d))


def random_orthonormal_basis(rng, M):
    """Columns form a Haar-random orthonormal basis of C^M."""
    return random_isometry(rng, M, M)


def random_state(rng, M):
    v = complex_gaussian(rng, M)
    return v / np.linalg.norm(v)


def random_density_operator(rng, M, rank=None):
    """``rho = G G^dagger / tr`` with ``G`` an ``M x rank`` complex Gaussian."""
    rank = M if rank is None else rank
    g = complex_gaussian(rng, (M, rank))
    rho = g @ g.conj().T
    rho = (rho + rho.conj().T) / 2
    return rho / np.trace(rho).real
