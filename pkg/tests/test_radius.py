import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from conftest import complex_normal, dense_sweep_radius, haar_unitary
from numrad.cartesian import rotated_real_part
from numrad.errors import InvalidArgument, Unachievable
from numrad.linalg import block_2x2, spectral_norm
from numrad.radius import (a_priori_upper, fov_boundary, fov_contains, numerical_radius, radius_certified,
                           radius_via_circle, rayleigh_lower_bound)

TOL = 1e-9
SQRT2 = math.sqrt(2)
EX_T = block_2x2(np.zeros((2, 2)), [[1, 1], [0, 1]], [[0, 0], [-1, 0]], np.zeros((2, 2)))
ASTARB = np.array([[0, -1], [0, -1]])

seeds = st.integers(0, 2**32 - 1)
dims = st.integers(2, 8)


def rand(seed, n):
    return complex_normal(np.random.default_rng(seed), n, n)


def encloses(cert, value, slack=1e-12):
    return cert.lower - slack <= value <= cert.upper + slack


class TestRadiusExamples:
    def test_hermitian(self):
        h = np.array([[2, 1j], [-1j, -3]])
        c = radius_certified(h, TOL)
        assert encloses(c, spectral_norm(h)) and c.width <= TOL

    def test_square_zero(self):
        c = radius_certified([[0, 1], [0, 0]], TOL)
        assert encloses(c, 0.5) and c.width <= TOL

    def test_example_product(self):
        c = radius_certified(ASTARB, TOL)
        assert encloses(c, (1 + SQRT2) / 2) and c.width <= TOL

    def test_jordan_block_against_dense_oracle(self):
        t = np.array([[1, 1], [0, 1]])
        # oracle 1: dense theta sweep at spacing ~1e-5 with LAPACK eigenvalues
        dense = dense_sweep_radius(t, points=int(math.pi / 1e-5))
        # oracle 2: a million random unit vectors
        rng = np.random.default_rng(0)
        x = complex_normal(rng, 1_000_000, 2)
        x /= np.linalg.norm(x, axis=1, keepdims=True)
        ray = np.abs(np.einsum("ki,ij,kj->k", x.conj(), t, x)).max()
        assert dense == pytest.approx(1.5, abs=1e-9)
        assert ray <= 1.5 + 1e-12 and ray >= 1.5 - 1e-3
        c = radius_certified(t, TOL)
        assert encloses(c, 1.5) and c.width <= TOL

    def test_zero_matrix(self):
        c = radius_certified(np.zeros((3, 3)), TOL)
        assert c.lower == c.upper == 0.0

    def test_identity(self):
        assert numerical_radius(np.eye(4)) == pytest.approx(1.0, abs=TOL)

    def test_bad_tolerances(self):
        with pytest.raises(InvalidArgument):
            radius_certified(np.eye(2), 0.0)
        with pytest.raises(Unachievable):
            radius_certified(np.eye(2), 1e-20)
        with pytest.raises(Unachievable):
            radius_via_circle(np.eye(2) * 1e6, 1e-9)

    def test_certificate_fields(self):
        t = rand(1, 5)
        c = radius_certified(t, TOL)
        assert 0 <= c.lower <= c.upper and 0 <= c.theta_star < math.pi
        assert c.lower == pytest.approx(spectral_norm(rotated_real_part(t, c.theta_star).matrix), abs=1e-12)
        assert c.grid_evals >= 64 and c.method == "theta"
        d = c.as_dict()
        assert d["midpoint"] == c.midpoint and set(d) >= {"lower", "upper", "theta_star"}

    def test_bitwise_deterministic(self):
        t = rand(9, 7)
        assert radius_certified(t, TOL) == radius_certified(t, TOL)

    def test_a_priori_upper(self):
        t = rand(2, 4)
        assert a_priori_upper(t) >= dense_sweep_radius(t) - 1e-12
        assert a_priori_upper([[0, 3], [0, 0]]) == pytest.approx(1.5)


class TestViaCircle:
    def test_hermitian(self):
        h = np.diag([1.0, -4.0, 2.0])
        c = radius_via_circle(h, TOL)
        assert encloses(c, 4.0) and c.method == "circle"

    def test_example_product(self):
        assert encloses(radius_via_circle(ASTARB, TOL), (1 + SQRT2) / 2)

    @given(seeds, dims)
    def test_agrees_with_theta_sweep(self, seed, n):
        t = rand(seed, n)
        assert abs(radius_via_circle(t, TOL).midpoint - radius_certified(t, TOL).midpoint) <= 2 * TOL


class TestInvariants:
    @given(seeds, st.integers(2, 10))
    def test_matches_dense_oracle(self, seed, n):
        t = rand(seed, n)
        c = radius_certified(t, TOL)
        dense = dense_sweep_radius(t, points=4001)
        # the dense sweep is a lower bound; it misses the max by at most O(h^2)
        assert dense <= c.upper + 1e-12
        assert c.lower <= dense + 1e-5 * spectral_norm(t)

    def test_enclosure_soundness_1000(self):
        rng = np.random.default_rng(21)
        for k in range(1000):
            n = 2 + k % 7
            t = complex_normal(rng, n, n)
            c = radius_certified(t, TOL)
            assert rayleigh_lower_bound(t, 200, k) <= c.upper
            assert c.width <= TOL

    @given(seeds, dims)
    def test_norm_sandwich(self, seed, n):
        t = rand(seed, n)
        c = radius_certified(t, TOL)
        nt = spectral_norm(t)
        assert c.lower >= nt / 2 - 1e-8 and c.upper <= nt + 1e-8

    @given(seeds, dims)
    def test_real_and_imaginary_parts(self, seed, n):
        t = rand(seed, n)
        c = radius_certified(t, TOL)
        assert spectral_norm(t + t.conj().T) / 2 <= c.upper + 1e-8
        assert spectral_norm(t - t.conj().T) / 2 <= c.upper + 1e-8

    @given(seeds, dims)
    def test_weak_unitary_invariance(self, seed, n):
        rng = np.random.default_rng(seed)
        t = complex_normal(rng, n, n)
        u = haar_unitary(rng, n)
        assert abs(numerical_radius(u.conj().T @ t @ u) - numerical_radius(t)) <= 2 * TOL

    @given(seeds, dims, st.complex_numbers(min_magnitude=0.1, max_magnitude=10))
    def test_scaling(self, seed, n, c):
        t = rand(seed, n)
        # |c| w(T) inherits |c| times the enclosure error, so certify w(T) at tol / |c|
        assert abs(numerical_radius(c * t) - abs(c) * numerical_radius(t, TOL / abs(c))) <= 2 * TOL

    @given(seeds, dims)
    def test_monotone_refinement(self, seed, n):
        c = radius_certified(rand(seed, n), TOL)
        lows = [x[0] for x in c.trace]
        ups = [x[1] for x in c.trace]
        assert len(c.trace) == c.refinement_rounds + 1
        assert lows == sorted(lows) and ups == sorted(ups, reverse=True)

    @given(seeds, dims)
    def test_period_pi_sweep_equals_full_circle(self, seed, n):
        # sweeping [0, pi) loses nothing: the full-circle dense oracle has the same max
        t = rand(seed, n)
        th = np.linspace(0, 2 * math.pi, 1000, endpoint=False)
        full = max(spectral_norm(rotated_real_part(t, x).matrix) for x in th)
        assert full <= radius_certified(t, TOL).upper + 1e-12

    def test_square_zero_and_hermitian_families(self):
        rng = np.random.default_rng(8)
        for n in range(2, 9):
            u, v = complex_normal(rng, n), complex_normal(rng, n)
            u /= np.linalg.norm(u)
            v -= np.vdot(u, v) * u
            a = np.outer(u, v.conj())
            assert abs(numerical_radius(a) - spectral_norm(a) / 2) <= 2 * TOL
            g = complex_normal(rng, n, n)
            h = (g + g.conj().T) / 2
            assert abs(numerical_radius(h) - spectral_norm(h)) <= 2 * TOL


class TestRayleigh:
    def test_forced_probe(self):
        val = rayleigh_lower_bound(EX_T, 10, 0, probes=[0.5 * np.array([1j, 1, 1, 1])])
        assert val >= math.sqrt(10) / 4 - 1e-15

    def test_diagonal(self):
        d = np.diag([5.0, 1.0])
        assert rayleigh_lower_bound(d, 100, 3) <= 5.0
        assert rayleigh_lower_bound(d, 1, 3, probes=[[1, 0]]) == pytest.approx(5.0, abs=1e-15)

    def test_deterministic_and_validated(self):
        t = rand(3, 4)
        assert rayleigh_lower_bound(t, 50, 7) == rayleigh_lower_bound(t, 50, 7)
        with pytest.raises(InvalidArgument):
            rayleigh_lower_bound(t, 0, 1)


class TestFov:
    def test_diagonal_segment(self):
        b = fov_boundary(np.diag([0.0, 1.0]), 16)
        assert np.all(np.abs(b.points.imag) <= 1e-9)
        assert np.all((b.points.real >= -1e-9) & (b.points.real <= 1 + 1e-9))

    def test_square_zero_disk(self):
        b = fov_boundary([[0, 1], [0, 0]], 360)
        assert np.allclose(np.abs(b.points), 0.5, atol=1e-9)
        assert b.max_modulus() == pytest.approx(0.5, abs=1e-6)

    def test_example_product(self):
        b = fov_boundary(ASTARB, 360)
        assert b.max_modulus() == pytest.approx((1 + SQRT2) / 2, abs=1e-6)
        coarse = fov_boundary(ASTARB, 16).max_modulus()
        assert coarse <= b.max_modulus() + 1e-12

    @given(seeds, dims)
    def test_boundary_invariants(self, seed, n):
        t = rand(seed, n)
        b = fov_boundary(t, 64)
        assert np.all((b.angles >= 0) & (b.angles < 2 * math.pi))
        assert np.max(np.abs((np.exp(1j * b.angles) * b.points).real - b.support_values)) <= 1e-10
        top = np.array([np.linalg.eigvalsh(rotated_real_part(t, a).matrix)[-1] for a in b.angles])
        assert np.allclose(b.support_values, top, atol=1e-10)
        assert b.max_modulus() <= radius_certified(t, TOL).upper + 1e-10
        assert np.array_equal(b.angles, 2 * math.pi * np.arange(64) / 64)

    def test_needs_eight_angles(self):
        with pytest.raises(InvalidArgument):
            fov_boundary(np.eye(2), 7)

    def test_contains_examples(self):
        b = fov_boundary(ASTARB, 360)
        assert not fov_contains(b, (1 + math.sqrt(5)) / 2)
        assert fov_contains(fov_boundary([[0, 1], [0, 0]], 360), 0)
        for p in b.points[::37]:
            assert fov_contains(b, p, 1e-9)

    def test_contains_degenerate_segment(self):
        b = fov_boundary(np.diag([0.0, 1.0]), 16)
        assert fov_contains(b, 0.5)
        assert not fov_contains(b, 0.5 + 0.01j)
