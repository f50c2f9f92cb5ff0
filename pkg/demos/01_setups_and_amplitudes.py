"""Setups, the and/or algebra, and the amplitudes attached to them.

Run with ``python demos/01_setups_and_amplitudes.py``.
"""

import numpy as np

from latticeamp import (
    Filter,
    HamiltonianConfig,
    LatticeSpec,
    Setup,
    SpacetimePoint as P,
    amplitude_brute_force,
    amplitude_of_setup,
    build_propagator,
    compose_and,
    compose_or,
    parse_setup_dsl,
    render_setup_dsl,
)

# A free particle hopping on a ring of 9 sites.
lattice = LatticeSpec(9, tau=0.4)
U = build_propagator(HamiltonianConfig.free(9, J=1.0), lattice)

# Two setups that differ only by which hole is open at tick 3 ...
left = Setup(P(4, 0), P(4, 6), (Filter(3, {2}),))
right = Setup(P(4, 0), P(4, 6), (Filter(3, {6}),))
both = compose_or(left, right)
print("or of the two screens:", both)

# ... and the amplitude of the two-hole screen is the sum of the one-hole amplitudes.
a_left, a_right, a_both = (amplitude_of_setup(s, U) for s in (left, right, both))
print(f"psi(left) + psi(right) = {a_left + a_right:.12f}")
print(f"psi(left or right)     = {a_both:.12f}")

# Succession: the meeting point becomes a one-hole filter and amplitudes multiply.
first = Setup(P(4, 0), P(1, 2))
second = Setup(P(1, 2), P(4, 6), (Filter(4, {0, 2}),))
chained = compose_and(first, second)
print("\nand of two setups:", chained)
print(f"psi(first) psi(second) = {amplitude_of_setup(first, U) * amplitude_of_setup(second, U):.12f}")
print(f"psi(first and second)  = {amplitude_of_setup(chained, U):.12f}")

# The transfer-matrix value against an explicit sum over every hole sequence.
print(f"\npath enumeration       = {amplitude_brute_force(chained, U):.12f}")

# Setups can be written as text and read back.
text = render_setup_dsl(lattice, chained)
print("\n" + text)
assert parse_setup_dsl(text) == (lattice, chained)

# A screen with every hole open is no screen at all.
open_screen = Setup(P(4, 0), P(4, 6), (Filter(3, range(9)),))
print("open screen:", amplitude_of_setup(open_screen, U))
print("no screen:  ", amplitude_of_setup(Setup(P(4, 0), P(4, 6)), U))
np.testing.assert_allclose(amplitude_of_setup(open_screen, U), amplitude_of_setup(Setup(P(4, 0), P(4, 6)), U))
