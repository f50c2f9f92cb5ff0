"""Experimental setups on a discrete lattice and their ``and``/``or`` algebra.

A setup is a source point, a time-ordered list of filters (screens with
holes) and a detector point.  Times are integer ticks; the physical time of
tick ``t`` is ``t * lattice.tau``.

All objects are frozen and kept in canonical form (sorted holes, filters
ordered by tick), so ``==`` is structural equality.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable

import numpy as np

from .errors import (
    EndpointMismatch,
    NotOrComposable,
    OrderViolation,
    OutOfBounds,
    TickCollision,
)

__all__ = [
    "LatticeSpec",
    "SpacetimePoint",
    "Filter",
    "Setup",
    "make_elementary_setup",
    "insert_filter",
    "compose_and",
    "compose_or",
    "validate_setup",
    "random_setup",
    "random_and_chain",
    "random_or_pair",
]

BOUNDARIES = ("periodic", "open")


@dataclass(frozen=True)
class LatticeSpec:
    M: int
    tau: float = 1.0
    boundary: str = "periodic"

    def __post_init__(self):
        if int(self.M) != self.M or self.M < 2:
            raise ValueError(f"lattice needs M >= 2 sites, got {self.M}")
        if not self.tau > 0:
            raise ValueError(f"tau must be positive, got {self.tau}")
        if self.boundary not in BOUNDARIES:
            raise ValueError(f"boundary must be one of {BOUNDARIES}, got {self.boundary!r}")


@dataclass(frozen=True, order=True)
class SpacetimePoint:
    site: int
    tick: int

    def __post_init__(self):
        if self.tick < 0:
            raise OrderViolation(f"negative tick {self.tick}")
        if self.site < 0:
            raise OutOfBounds(f"negative site {self.site}")


@dataclass(frozen=True)
class Filter:
    """A screen at ``tick`` that lets the particle through only at ``holes``."""

    tick: int
    holes: frozenset

    def __init__(self, tick: int, holes: Iterable[int]):
        holes = frozenset(int(h) for h in holes)
        if not holes:
            raise ValueError("a filter needs at least one hole")
        if min(holes) < 0:
            raise OutOfBounds(f"negative hole index in {sorted(holes)}")
        object.__setattr__(self, "tick", int(tick))
        object.__setattr__(self, "holes", holes)

    def sorted_holes(self) -> tuple[int, ...]:
        return tuple(sorted(self.holes))

    def __repr__(self):
        return f"Filter(tick={self.tick}, holes={set(self.sorted_holes())})"


@dataclass(frozen=True)
class Setup:
    """``[detector, filters..., source]`` with strictly increasing ticks."""

    source: SpacetimePoint
    detector: SpacetimePoint
    filters: tuple = field(default=())

    def __post_init__(self):
        filters = tuple(sorted(self.filters, key=lambda f: f.tick))
        object.__setattr__(self, "filters", filters)
        filter_ticks = [f.tick for f in filters]
        if len(set(filter_ticks)) != len(filter_ticks):
            raise TickCollision(f"more than one filter at a tick: {filter_ticks}")
        ticks = [self.source.tick] + filter_ticks + [self.detector.tick]
        if any(earlier >= later for earlier, later in zip(ticks, ticks[1:])):
            raise OrderViolation(f"ticks not strictly increasing: {ticks}")

    @property
    def duration(self) -> int:
        return self.detector.tick - self.source.tick

    def filter_at(self, tick: int) -> Filter | None:
        for f in self.filters:
            if f.tick == tick:
                return f
        return None

    def __repr__(self):
        inner = ", ".join(
            [f"x_f=({self.detector.site},{self.detector.tick})"]
            + [f"{set(f.sorted_holes())}@{f.tick}" for f in reversed(self.filters)]
            + [f"x_i=({self.source.site},{self.source.tick})"]
        )
        return f"Setup[{inner}]"


def _check_sites(lattice: LatticeSpec | None, *sites: int):
    if lattice is None:
        return
    for s in sites:
        if not 0 <= s < lattice.M:
            raise OutOfBounds(f"site {s} outside lattice of {lattice.M} sites")


def make_elementary_setup(
    source: SpacetimePoint, detector: SpacetimePoint, lattice: LatticeSpec | None = None
) -> Setup:
    """The filter-free setup ``[x_f, x_i]``.

    Site bounds are only checked when ``lattice`` is given.
    """
    _check_sites(lattice, source.site, detector.site)
    if source.tick >= detector.tick:
        raise OrderViolation(
            f"source tick {source.tick} must precede detector tick {detector.tick}"
        )
    return Setup(source, detector)


def insert_filter(a: Setup, f: Filter, lattice: LatticeSpec | None = None) -> Setup:
    _check_sites(lattice, *f.holes)
    if not a.source.tick < f.tick < a.detector.tick:
        raise OrderViolation(
            f"filter tick {f.tick} not strictly between {a.source.tick} and {a.detector.tick}"
        )
    if a.filter_at(f.tick) is not None:
        raise TickCollision(f"setup already has a filter at tick {f.tick}")
    return Setup(a.source, a.detector, a.filters + (f,))


def compose_and(a: Setup, b: Setup) -> Setup:
    """``a`` followed immediately by ``b``.

    The point where ``a`` ends and ``b`` begins becomes a single-hole filter,
    so the composite reads ``[b.detector, b.filters, {x}, a.filters, a.source]``.
    """
    if a.detector != b.source:
        raise EndpointMismatch(
            f"detector of first setup {a.detector} differs from source of second {b.source}"
        )
    joint = Filter(a.detector.tick, {a.detector.site})
    return Setup(a.source, b.detector, a.filters + (joint,) + b.filters)


def compose_or(a: Setup, b: Setup) -> Setup:
    """Merge two setups that differ only in the holes of one filter."""
    if a.source != b.source or a.detector != b.detector:
        raise NotOrComposable("setups have different source or detector")
    ticks_a = [f.tick for f in a.filters]
    ticks_b = [f.tick for f in b.filters]
    if ticks_a != ticks_b:
        raise NotOrComposable(f"filter ticks differ: {ticks_a} vs {ticks_b}")
    differing = [(fa, fb) for fa, fb in zip(a.filters, b.filters) if fa.holes != fb.holes]
    if len(differing) != 1:
        raise NotOrComposable(f"setups differ at {len(differing)} filters, need exactly 1")
    fa, fb = differing[0]
    overlap = fa.holes & fb.holes
    if overlap:
        raise NotOrComposable(f"holes {sorted(overlap)} at tick {fa.tick} are shared")
    merged = Filter(fa.tick, fa.holes | fb.holes)
    return Setup(
        a.source,
        a.detector,
        tuple(merged if f.tick == fa.tick else f for f in a.filters),
    )


def validate_setup(a: Setup, lattice: LatticeSpec) -> list:
    """Every violation of the setup invariants against ``lattice``.

    An empty list means the setup is valid.  Nothing is raised.
    """
    problems = []
    for name, point in (("source", a.source), ("detector", a.detector)):
        if not 0 <= point.site < lattice.M:
            problems.append(OutOfBounds(f"{name} site {point.site} outside [0, {lattice.M})"))
        if point.tick < 0:
            problems.append(OrderViolation(f"{name} tick {point.tick} is negative"))
    if a.source.tick >= a.detector.tick:
        problems.append(
            OrderViolation(f"source tick {a.source.tick} not before detector tick {a.detector.tick}")
        )
    seen = set()
    for f in a.filters:
        bad = sorted(h for h in f.holes if not 0 <= h < lattice.M)
        if bad:
            problems.append(OutOfBounds(f"filter at tick {f.tick} has holes {bad} outside [0, {lattice.M})"))
        if not a.source.tick < f.tick < a.detector.tick:
            problems.append(
                OrderViolation(
                    f"filter tick {f.tick} not strictly between {a.source.tick} and {a.detector.tick}"
                )
            )
        if f.tick in seen:
            problems.append(TickCollision(f"two filters at tick {f.tick}"))
        seen.add(f.tick)
    return problems


def _unchecked_setup(source, detector, filters) -> Setup:
    """Build a Setup skipping ``__post_init__``; used by the DSL to report all errors."""
    obj = object.__new__(Setup)
    object.__setattr__(obj, "source", source)
    object.__setattr__(obj, "detector", detector)
    object.__setattr__(obj, "filters", tuple(sorted(filters, key=lambda f: f.tick)))
    return obj


# Random generation for property checks.  All draws come from the caller's
# numpy Generator.


def _random_holes(rng: np.random.Generator, M: int, max_holes: int | None = None) -> set:
    k = int(rng.integers(1, (max_holes or M) + 1))
    return set(rng.choice(M, size=min(k, M), replace=False).tolist())


def random_setup(
    rng: np.random.Generator,
    M: int,
    T: int,
    max_filters: int = 4,
    source_tick: int = 0,
    source_site: int | None = None,
) -> Setup:
    """A random valid setup spanning ``T`` ticks from ``source_tick``."""
    if source_site is None:
        source_site = int(rng.integers(M))
    source = SpacetimePoint(source_site, source_tick)
    detector = SpacetimePoint(int(rng.integers(M)), source_tick + T)
    interior = np.arange(source_tick + 1, source_tick + T)
    n_filters = int(rng.integers(0, min(max_filters, len(interior)) + 1))
    ticks = sorted(rng.choice(interior, size=n_filters, replace=False).tolist()) if n_filters else []
    filters = tuple(Filter(t, _random_holes(rng, M)) for t in ticks)
    return Setup(source, detector, filters)


def random_and_chain(rng: np.random.Generator, M: int, count: int = 3, max_span: int = 3):
    """``count`` random setups, each starting where the previous one ends."""
    chain = []
    tick, site = 0, int(rng.integers(M))
    for _ in range(count):
        span = int(rng.integers(1, max_span + 1))
        s = random_setup(rng, M, span, max_filters=span - 1, source_tick=tick, source_site=site)
        chain.append(s)
        tick, site = s.detector.tick, s.detector.site
    return chain


def random_or_pair(rng: np.random.Generator, M: int, T: int, parts: int = 2):
    """``parts`` setups identical except for disjoint holes on one filter."""
    if T < 2:
        raise ValueError("need T >= 2 to place a filter")
    if parts > M:
        raise ValueError("cannot split fewer holes than parts")
    base = random_setup(rng, M, T, max_filters=min(3, T - 1))
    tick = int(rng.integers(1, T))
    others = tuple(f for f in base.filters if f.tick != tick)
    n_holes = int(rng.integers(parts, M + 1))
    holes = rng.permutation(M)[:n_holes]
    cuts = np.sort(rng.choice(np.arange(1, n_holes), size=parts - 1, replace=False))
    groups = np.split(holes, cuts)
    return [Setup(base.source, base.detector, others + (Filter(tick, g.tolist()),)) for g in groups]
