"""Fraction filters on N independent replicas.

For N copies of a normalized state, the fraction filter keeps only the
product components in which the number ``n`` of replicas found at site
``k`` satisfies ``f - eps <= n/N <= f + eps``.  Its squared distance from
the unfiltered product state is the binomial mass outside that window,
with success probability ``p_k = w_k |A_k|^2``.  As ``N`` grows the
binomial concentrates on ``p_k``, so the filter leaves the state alone
exactly when ``|p_k - f| < eps``.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np
from scipy.special import gammaln, logsumexp, ndtr

from .amplitudes import WaveFunction
from .errors import DomainError, NotNormalized, TensorExplosion
from .geometry import NORMALIZED_ATOL, WeightedMeasure, norm_squared

__all__ = [
    "FractionWindow",
    "binomial_log_pmf",
    "filter_distance_closed_form",
    "filter_distance_brute",
    "gaussian_window_mass",
    "convergence_scan",
    "ScanRow",
    "write_convergence_csv",
    "MAX_TENSOR_SIZE",
]

MAX_TENSOR_SIZE = 10**7
# slack for (f +- eps) * N landing a rounding error away from an integer
_BOUND_SLACK = 1e-9


@dataclass(frozen=True)
class FractionWindow:
    f: float
    epsilon: float
    N: int

    def __post_init__(self):
        if not 0 <= self.f <= 1:
            raise DomainError(f"fraction f={self.f} outside [0, 1]")
        if not 0 < self.epsilon <= 1:
            raise DomainError(f"epsilon={self.epsilon} outside (0, 1]")
        if int(self.N) != self.N or self.N < 1:
            raise DomainError(f"replica count N={self.N} must be a positive integer")

    @property
    def counts(self) -> tuple[int, int]:
        """Inclusive integer range ``(lo, hi)`` of admitted replica counts.

        ``lo > hi`` means the window admits nothing.
        """
        lo = math.ceil((self.f - self.epsilon) * self.N - _BOUND_SLACK)
        hi = math.floor((self.f + self.epsilon) * self.N + _BOUND_SLACK)
        return max(lo, 0), min(hi, self.N)


def _check_probability(p_k):
    if not 0 <= p_k <= 1:
        raise DomainError(f"probability p_k={p_k} outside [0, 1]")


def binomial_log_pmf(n, N: int, p: float) -> np.ndarray:
    """``log C(N, n) p^n (1-p)^(N-n)``, with ``0 * log 0 = 0``."""
    n = np.asarray(n, dtype=float)
    log_comb = gammaln(N + 1) - gammaln(n + 1) - gammaln(N - n + 1)
    with np.errstate(divide="ignore"):
        log_p = np.where(n > 0, n * np.log(p) if p > 0 else -np.inf, 0.0)
        log_q = np.where(N - n > 0, (N - n) * np.log1p(-p) if p < 1 else -np.inf, 0.0)
    return log_comb + log_p + log_q


def filter_distance_closed_form(p_k: float, w: FractionWindow) -> float:
    """Squared distance between the filtered and unfiltered replica state.

    Computed as the binomial mass *outside* the window so that distances
    near zero keep their relative precision.
    """
    _check_probability(p_k)
    lo, hi = w.counts
    if lo > hi:
        return 1.0
    outside = np.concatenate([np.arange(0, lo), np.arange(hi + 1, w.N + 1)])
    if outside.size == 0:
        return 0.0
    logs = binomial_log_pmf(outside, w.N, p_k)
    if np.all(np.isneginf(logs)):
        return 0.0
    return float(min(1.0, np.exp(logsumexp(logs))))


def filter_distance_brute(
    psi, k: int, w: FractionWindow, m: WeightedMeasure | None = None,
    max_size: int = MAX_TENSOR_SIZE,
) -> float:
    """Same distance from the explicit N-fold product state.

    Walks every product basis component, counts the replicas sitting at
    ``k`` and sums the weighted squared amplitudes of the components the
    filter removes.  No projector matrix is ever formed.
    """
    amps = psi.amplitudes if isinstance(psi, WaveFunction) else np.asarray(psi, dtype=complex)
    M = amps.shape[0]
    m = m or WeightedMeasure.uniform(M)
    if abs(norm_squared(m, amps) - 1) > NORMALIZED_ATOL:
        raise NotNormalized("replica state must be built from a normalized state")
    if M**w.N > max_size:
        raise TensorExplosion(f"{M}^{w.N} product components exceed the limit of {max_size}")

    # per-replica weighted |amplitude|^2; the product state's components are
    # outer products of these, and so are the weights of the product measure
    single = m.weights * np.abs(amps) ** 2
    at_k = (np.arange(M) == k).astype(np.int64)
    mass = np.ones(1)
    count = np.zeros(1, dtype=np.int64)
    for _ in range(w.N):
        mass = np.multiply.outer(mass, single).ravel()
        count = np.add.outer(count, at_k).ravel()
    lo, hi = w.counts
    blocked = (count < lo) | (count > hi)
    return float(mass[blocked].sum())


def gaussian_window_mass(p_k: float, w: FractionWindow) -> float:
    """Normal(p_k, p_k (1-p_k) / N) mass on ``[f - eps, f + eps]``."""
    if not 0 < p_k < 1:
        raise DomainError(f"Gaussian limit needs 0 < p_k < 1, got {p_k}")
    sigma = math.sqrt(p_k * (1 - p_k) / w.N)
    upper = (w.f + w.epsilon - p_k) / sigma
    lower = (w.f - w.epsilon - p_k) / sigma
    return float(ndtr(upper) - ndtr(lower))


class ScanRow(NamedTuple):
    N: int
    f: float
    epsilon: float
    p_k: float
    distance_closed: float
    distance_gaussian: float


CSV_COLUMNS = ScanRow._fields


def convergence_scan(p_k: float, f: float, epsilon: float, N_list) -> list[ScanRow]:
    N_list = [int(n) for n in N_list]
    if any(b <= a for a, b in zip(N_list, N_list[1:])):
        raise ValueError(f"N_list must be strictly ascending, got {N_list}")
    rows = []
    for N in N_list:
        w = FractionWindow(f, epsilon, N)
        gaussian = 1.0 - gaussian_window_mass(p_k, w) if 0 < p_k < 1 else float("nan")
        rows.append(ScanRow(N, f, epsilon, p_k, filter_distance_closed_form(p_k, w), gaussian))
    return rows


def write_convergence_csv(rows, fh):
    writer = csv.writer(fh, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for row in sorted(rows):
        writer.writerow([row.N, repr(row.f), repr(row.epsilon), repr(row.p_k),
                         repr(row.distance_closed), repr(row.distance_gaussian)])
