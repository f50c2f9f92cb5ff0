"""Inner product, norms and Born probabilities under a per-site measure.

Sites carry positive weights ``w_i`` and ``<i|j> = w_i delta_ij``.  With
equal weights this is the ordinary inner product; weighting each cell by
its volume, ``w_i = sqrt(g_i) * dx``, gives the curved-space version.
Detection probabilities then read ``Pr(k) = w_k |A_k|^2``.

Every function accepts either a :class:`WaveFunction` or a plain array of
amplitudes.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .amplitudes import WaveFunction
from .errors import DimensionMismatch, Incomplete, NotNormalized, NotOrthonormal, ZeroState

__all__ = [
    "WeightedMeasure",
    "inner_product",
    "norm_squared",
    "distance",
    "normalize",
    "born_probabilities",
    "basis_matrix",
    "NORMALIZED_ATOL",
]

# precondition check vs. guaranteed postcondition
NORMALIZED_ATOL = 1e-9


@dataclass(frozen=True, eq=False)
class WeightedMeasure:
    weights: np.ndarray
    provenance: str = "custom"
    g: np.ndarray | None = field(default=None, repr=False)
    dx: float | None = None

    def __post_init__(self):
        w = np.array(self.weights, dtype=float)
        if w.ndim != 1 or w.size == 0:
            raise DimensionMismatch(f"weights must be a non-empty 1-d sequence, got {w.shape}")
        if not np.all(w > 0):
            raise ValueError("weights must be strictly positive")
        w.setflags(write=False)
        object.__setattr__(self, "weights", w)

    @classmethod
    def uniform(cls, M: int) -> "WeightedMeasure":
        return cls(np.ones(M), "uniform")

    @classmethod
    def volume(cls, g, dx: float) -> "WeightedMeasure":
        """Cell weights ``sqrt(g_i) * dx`` from metric determinants ``g_i``."""
        g = np.asarray(g, dtype=float)
        if np.any(g <= 0) or not dx > 0:
            raise ValueError("volume measure needs g > 0 and dx > 0")
        return cls(np.sqrt(g) * dx, "volume", g=g, dx=float(dx))

    @property
    def M(self) -> int:
        return self.weights.shape[0]

    def scaled(self, c: float) -> "WeightedMeasure":
        return WeightedMeasure(self.weights * c, "custom")


def _amplitudes(state) -> np.ndarray:
    if isinstance(state, WaveFunction):
        return state.amplitudes
    return np.asarray(state, dtype=complex)


def _check(m: WeightedMeasure, *vectors):
    for v in vectors:
        if v.shape != (m.M,):
            raise DimensionMismatch(f"state of shape {v.shape} does not match measure on {m.M} sites")


def inner_product(m: WeightedMeasure, phi, psi) -> complex:
    """``sum_i w_i conj(B_i) A_i``; antilinear in ``phi``, linear in ``psi``."""
    b, a = _amplitudes(phi), _amplitudes(psi)
    _check(m, b, a)
    return complex(np.sum(m.weights * b.conj() * a))


def norm_squared(m: WeightedMeasure, psi) -> float:
    a = _amplitudes(psi)
    _check(m, a)
    return float(np.sum(m.weights * np.abs(a) ** 2))


def distance(m: WeightedMeasure, phi, psi) -> float:
    return float(np.sqrt(norm_squared(m, _amplitudes(phi) - _amplitudes(psi))))


def normalize(m: WeightedMeasure, psi):
    """Rescale to unit norm; returns the same kind of object it was given."""
    n2 = norm_squared(m, psi)
    if n2 == 0:
        raise ZeroState("cannot normalize the zero state")
    a = _amplitudes(psi) / np.sqrt(n2)
    if isinstance(psi, WaveFunction):
        return WaveFunction(psi.tick, a)
    return a


def born_probabilities(m: WeightedMeasure, psi) -> np.ndarray:
    """Detection probabilities ``w_k |A_k|^2`` of a normalized state."""
    a = _amplitudes(psi)
    _check(m, a)
    probs = m.weights * np.abs(a) ** 2
    total = probs.sum()
    if abs(total - 1) > NORMALIZED_ATOL:
        raise NotNormalized(f"state has squared norm {total}, expected 1")
    return probs


def basis_matrix(basis, atol: float = 1e-10) -> np.ndarray:
    """Stack an orthonormal basis into a unitary matrix, one vector per column.

    ``basis`` is a sequence of states (WaveFunction or array).  Raises
    :class:`NotOrthonormal` or :class:`Incomplete` when it is not a full
    orthonormal basis under the uniform measure.
    """
    vectors = [_amplitudes(b) for b in basis]
    if not vectors:
        raise Incomplete("empty basis")
    B = np.column_stack(vectors)
    M, n = B.shape
    gram = B.conj().T @ B
    if np.max(np.abs(gram - np.eye(n))) > atol:
        raise NotOrthonormal("basis vectors are not orthonormal")
    if n != M:
        raise Incomplete(f"{n} orthonormal vectors cannot span a space of dimension {M}")
    return B
