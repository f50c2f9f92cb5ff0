"""Randomized checks of the setup algebra and of the amplitude rules.

Structural laws compare canonical setups with ``==``; amplitude laws
compare complex numbers to an absolute tolerance.  Each failure is
returned as a :class:`LawFailure` holding the offending setups so that a
counterexample can be printed.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import scipy.linalg

from .amplitudes import Propagator, amplitude_of_setup
from .sampling import complex_gaussian
from .setups import (
    Setup,
    SpacetimePoint,
    compose_and,
    compose_or,
    random_and_chain,
    random_or_pair,
    random_setup,
)

__all__ = [
    "LawFailure",
    "LawReport",
    "random_hermitian_propagator",
    "and_noncommutativity_counterexample",
    "run_algebra_laws",
    "LAWS",
]

LAWS = (
    "or_commutative",
    "or_associative",
    "and_associative",
    "and_distributes_over_or",
    "sum_rule",
    "product_rule",
    "amplitude_distributivity",
)


@dataclass
class LawFailure:
    law: str
    case: int
    setups: tuple
    detail: str = ""

    def __str__(self):
        lines = [f"[{self.law}] case {self.case}: {self.detail}"]
        lines += [f"    {s!r}" for s in self.setups]
        return "\n".join(lines)


@dataclass
class LawReport:
    cases: int
    checked: dict = field(default_factory=lambda: dict.fromkeys(LAWS, 0))
    failures: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    def summary(self) -> str:
        lines = [f"{law}: {n} checked, {sum(f.law == law for f in self.failures)} failed"
                 for law, n in self.checked.items()]
        return "\n".join(lines)


def random_hermitian_propagator(rng, M: int, tau: float = 1.0) -> Propagator:
    """``exp(-i H tau)`` for ``H`` drawn from the Gaussian unitary ensemble."""
    g = complex_gaussian(rng, (M, M))
    H = (g + g.conj().T) / 2
    return Propagator(scipy.linalg.expm(-1j * tau * H), hermitian_generator=True)


def and_noncommutativity_counterexample():
    """Setups whose ``and`` is admissible in one order only.

    ``a`` runs from site 0 at tick 0 to site 1 at tick 1 and ``b`` from site
    1 at tick 1 to site 2 at tick 2: ``a`` then ``b`` is fine, but ``b``
    ends at (2, 2) while ``a`` starts at (0, 0), so ``b`` then ``a`` is not.
    """
    a = Setup(SpacetimePoint(0, 0), SpacetimePoint(1, 1))
    b = Setup(SpacetimePoint(1, 1), SpacetimePoint(2, 2))
    return a, b


def run_algebra_laws(rng, cases: int = 1000, M_range=(2, 5), T_max: int = 6,
                     atol: float = 1e-12) -> LawReport:
    report = LawReport(cases)

    def fail(law, i, setups, detail):
        report.failures.append(LawFailure(law, i, tuple(setups), detail))

    for i in range(cases):
        M = int(rng.integers(M_range[0], M_range[1] + 1))
        U = random_hermitian_propagator(rng, M, tau=float(rng.uniform(0.2, 1.5)))
        T = int(rng.integers(2, T_max + 1))

        a, b = random_or_pair(rng, M, T)
        report.checked["or_commutative"] += 1
        if compose_or(a, b) != compose_or(b, a):
            fail("or_commutative", i, (a, b), "a|b != b|a")

        report.checked["sum_rule"] += 1
        lhs = amplitude_of_setup(compose_or(a, b), U)
        rhs = amplitude_of_setup(a, U) + amplitude_of_setup(b, U)
        if abs(lhs - rhs) > atol:
            fail("sum_rule", i, (a, b), f"|{lhs} - {rhs}| > {atol}")

        # three disjoint hole sets need at least three sites
        x, y, z = random_or_pair(rng, max(M, 3), T, parts=3)
        report.checked["or_associative"] += 1
        if compose_or(compose_or(x, y), z) != compose_or(x, compose_or(y, z)):
            fail("or_associative", i, (x, y, z), "(x|y)|z != x|(y|z)")

        p, q, r = random_and_chain(rng, M, 3)
        report.checked["and_associative"] += 1
        if compose_and(compose_and(p, q), r) != compose_and(p, compose_and(q, r)):
            fail("and_associative", i, (p, q, r), "(pq)r != p(qr)")

        report.checked["product_rule"] += 1
        lhs = amplitude_of_setup(compose_and(p, q), U)
        rhs = amplitude_of_setup(p, U) * amplitude_of_setup(q, U)
        if abs(lhs - rhs) > atol:
            fail("product_rule", i, (p, q), f"|{lhs} - {rhs}| > {atol}")

        # (a' or a'') and b
        c = random_setup(rng, M, int(rng.integers(1, 4)), max_filters=2,
                         source_tick=a.detector.tick, source_site=a.detector.site)
        merged = compose_and(compose_or(a, b), c)
        split_a, split_b = compose_and(a, c), compose_and(b, c)
        report.checked["and_distributes_over_or"] += 1
        if merged != compose_or(split_a, split_b):
            fail("and_distributes_over_or", i, (a, b, c), "(a|b)c != ac|bc")
        report.checked["amplitude_distributivity"] += 1
        lhs = amplitude_of_setup(merged, U)
        rhs = amplitude_of_setup(split_a, U) + amplitude_of_setup(split_b, U)
        if abs(lhs - rhs) > atol:
            fail("amplitude_distributivity", i, (a, b, c), f"|{lhs} - {rhs}| > {atol}")
    return report
