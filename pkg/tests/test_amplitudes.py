import numpy as np
import pytest

from latticeamp.amplitudes import (
    HamiltonianConfig,
    WaveFunction,
    amplitude_brute_force,
    amplitude_of_setup,
    apply_filter,
    build_propagator,
    evolve_step,
    identity_propagator,
    propagate_setup,
    tight_binding_hamiltonian,
)
from latticeamp.checks import random_hermitian_propagator
from latticeamp.errors import DimensionMismatch, PathExplosion, TickMismatch
from latticeamp.sampling import complex_gaussian
from latticeamp.setups import (
    Filter,
    LatticeSpec,
    Setup,
    SpacetimePoint as P,
    compose_and,
    compose_or,
    random_or_pair,
    random_setup,
)


def lattice(M=6, tau=0.3, boundary="periodic"):
    return LatticeSpec(M, tau, boundary)


class TestBuildPropagator:
    def test_zero_generator_is_identity(self):
        U = build_propagator(HamiltonianConfig(0.0, np.zeros(5)), lattice(5))
        np.testing.assert_allclose(U.kernel, np.eye(5), atol=1e-15)

    @pytest.mark.parametrize("boundary", ["periodic", "open"])
    def test_unitary(self, rng, boundary):
        cfg = HamiltonianConfig(1.3, rng.normal(size=7), boundary=boundary)
        U = build_propagator(cfg, lattice(7, 0.7, boundary))
        assert U.hermitian_generator
        np.testing.assert_allclose(U.kernel.conj().T @ U.kernel, np.eye(7), atol=1e-12)

    def test_uniform_damping_shrinks_every_singular_value(self):
        tau = 0.3
        U = build_propagator(HamiltonianConfig.free(6, gamma=0.1), lattice(6, tau))
        assert not U.hermitian_generator
        s = np.linalg.svd(U.kernel, compute_uv=False)
        # exp(-Gamma tau) times a unitary
        np.testing.assert_allclose(s, np.exp(-0.1 * tau), rtol=1e-12)
        assert np.all(s < 1)

    def test_nonuniform_damping_matches_taylor_series(self, rng):
        gamma = rng.uniform(0, 0.5, 6)
        cfg = HamiltonianConfig(0.8, rng.normal(size=6), gamma)
        U = build_propagator(cfg, lattice(6))
        H = tight_binding_hamiltonian(cfg)
        # independent route: Taylor series of the generator
        G = -1j * 0.3 * (H - 1j * np.diag(gamma))
        series, term = np.eye(6, dtype=complex), np.eye(6, dtype=complex)
        for k in range(1, 40):
            term = term @ G / k
            series = series + term
        np.testing.assert_allclose(U.kernel, series, atol=1e-13)
        assert np.all(np.linalg.svd(U.kernel, compute_uv=False) < 1)

    def test_dimension_mismatch(self):
        with pytest.raises(DimensionMismatch):
            build_propagator(HamiltonianConfig.free(5), lattice(6))

    def test_hopping_matrix(self):
        H = tight_binding_hamiltonian(HamiltonianConfig(2.0, [1, 2, 3, 4]))
        expected = np.array([[1, -2, 0, -2], [-2, 2, -2, 0], [0, -2, 3, -2], [-2, 0, -2, 4]])
        np.testing.assert_array_equal(H.real, expected)


class TestApplyFilter:
    def test_idempotent(self, rng):
        psi = WaveFunction(2, complex_gaussian(rng, 6))
        f = Filter(2, {0, 3, 4})
        once = apply_filter(f, psi)
        assert np.array_equal(apply_filter(f, once).amplitudes, once.amplitudes)

    def test_all_holes_is_identity(self, rng):
        psi = WaveFunction(1, complex_gaussian(rng, 6))
        assert np.array_equal(apply_filter(Filter(1, range(6)), psi).amplitudes, psi.amplitudes)

    def test_blocks_delta(self):
        out = apply_filter(Filter(0, {2}), WaveFunction.delta(5, 4))
        assert not out.amplitudes.any()

    def test_tick_mismatch(self):
        with pytest.raises(TickMismatch):
            apply_filter(Filter(1, {0}), WaveFunction.delta(3, 0, tick=2))


class TestEvolveStep:
    def test_identity(self, rng):
        psi = WaveFunction(4, complex_gaussian(rng, 5))
        out = evolve_step(identity_propagator(5), psi)
        assert out.tick == 5
        np.testing.assert_array_equal(out.amplitudes, psi.amplitudes)

    def test_delta_picks_column(self, rng):
        U = random_hermitian_propagator(rng, 5)
        np.testing.assert_array_equal(evolve_step(U, WaveFunction.delta(5, 3)).amplitudes, U.kernel[:, 3])

    def test_linear(self, rng):
        U = random_hermitian_propagator(rng, 5)
        a, b = complex_gaussian(rng, 2)
        x, y = complex_gaussian(rng, (2, 5))
        lhs = evolve_step(U, WaveFunction(0, a * x + b * y)).amplitudes
        rhs = a * evolve_step(U, WaveFunction(0, x)).amplitudes + b * evolve_step(U, WaveFunction(0, y)).amplitudes
        np.testing.assert_allclose(lhs, rhs, atol=1e-12)

    def test_dimension_mismatch(self):
        with pytest.raises(DimensionMismatch):
            evolve_step(identity_propagator(4), WaveFunction.delta(5, 0))

    def test_unitary_preserves_norm(self, rng):
        U = build_propagator(HamiltonianConfig(1.0, rng.normal(size=8)), lattice(8))
        psi = WaveFunction(0, complex_gaussian(rng, 8))
        n0 = np.vdot(psi.amplitudes, psi.amplitudes).real
        for _ in range(50):
            psi = evolve_step(U, psi)
            assert abs(np.vdot(psi.amplitudes, psi.amplitudes).real - n0) < 1e-12 * max(1, n0)


class TestPropagateSetup:
    def test_identity_no_filters(self):
        psi = propagate_setup(Setup(P(2, 1), P(0, 5)), identity_propagator(4))
        assert psi.tick == 5
        np.testing.assert_array_equal(psi.amplitudes, np.eye(4)[2])

    def test_full_filter_equals_no_filter(self, rng):
        U = random_hermitian_propagator(rng, 5)
        plain = propagate_setup(Setup(P(1, 0), P(3, 4)), U)
        full = propagate_setup(Setup(P(1, 0), P(3, 4), (Filter(2, range(5)),)), U)
        np.testing.assert_array_equal(plain.amplitudes, full.amplitudes)

    def test_two_hole_superposition(self, rng):
        U = random_hermitian_propagator(rng, 5)
        one = propagate_setup(Setup(P(1, 0), P(3, 4), (Filter(2, {0}),)), U).amplitudes
        two = propagate_setup(Setup(P(1, 0), P(3, 4), (Filter(2, {4}),)), U).amplitudes
        both = propagate_setup(Setup(P(1, 0), P(3, 4), (Filter(2, {0, 4}),)), U).amplitudes
        np.testing.assert_allclose(both, one + two, atol=1e-14)


class TestAmplitude:
    def test_self_loop_identity(self):
        assert amplitude_of_setup(Setup(P(2, 0), P(2, 3)), identity_propagator(4)) == 1

    def test_product_rule(self, rng):
        U = random_hermitian_propagator(rng, 5)
        a = Setup(P(0, 0), P(3, 2), (Filter(1, {1, 2}),))
        b = Setup(P(3, 2), P(4, 5), (Filter(4, {0, 4}),))
        assert abs(amplitude_of_setup(compose_and(a, b), U)
                   - amplitude_of_setup(a, U) * amplitude_of_setup(b, U)) < 1e-12

    def test_sum_rule(self, rng):
        U = random_hermitian_propagator(rng, 5)
        a, b = random_or_pair(rng, 5, 5)
        assert abs(amplitude_of_setup(compose_or(a, b), U)
                   - amplitude_of_setup(a, U) - amplitude_of_setup(b, U)) < 1e-12


class TestBruteForce:
    def test_no_filters_is_kernel_power(self, rng):
        U = random_hermitian_propagator(rng, 4)
        expected = np.linalg.matrix_power(U.kernel, 3)[2, 1]
        assert amplitude_brute_force(Setup(P(1, 0), P(2, 3)), U) == pytest.approx(expected, abs=1e-15)

    def test_single_hole_is_product_of_two_entries(self, rng):
        U = random_hermitian_propagator(rng, 4)
        a = Setup(P(1, 0), P(2, 3), (Filter(1, {3}),))
        K2 = U.kernel @ U.kernel
        assert amplitude_brute_force(a, U) == pytest.approx(K2[2, 3] * U.kernel[3, 1], abs=1e-15)

    def test_agrees_with_transfer_matrix(self, rng):
        for _ in range(50):
            M = int(rng.integers(2, 6))
            U = random_hermitian_propagator(rng, M)
            a = random_setup(rng, M, int(rng.integers(1, 7)), max_filters=4)
            assert abs(amplitude_brute_force(a, U) - amplitude_of_setup(a, U)) < 1e-12

    def test_guard(self):
        a = Setup(P(0, 0), P(0, 8), tuple(Filter(t, range(10)) for t in range(1, 8)))
        with pytest.raises(PathExplosion):
            amplitude_brute_force(a, identity_propagator(10))
