import math

import numpy as np
import pytest
from numpy.polynomial import Polynomial

from src.numerics.integrate import rk4_step
from src.numerics.linalg import characteristic_poly, mat_mul, rank
from src.numerics.polynomial import poly_roots, residual
from src.utils.errors import DimensionError, NonFiniteError, UnsupportedDegreeError


# ── mat_mul ───────────────────────────────────────────────────────────────────

def test_mat_mul_identity():
    assert np.array_equal(mat_mul(np.eye(3), np.eye(3)), np.eye(3))


def test_mat_mul_hand_arithmetic():
    result = mat_mul([[1, 2], [3, 4]], [[1], [1]])
    assert result.shape == (2, 1)
    assert result.tolist() == [[3.0], [7.0]]


def test_mat_mul_matches_triple_loop(rng):
    a = rng.normal(size=(12, 12))
    b = rng.normal(size=(12, 4))
    expected = np.zeros((12, 4))
    for i in range(12):
        for j in range(4):
            for k in range(12):
                expected[i, j] += a[i, k] * b[k, j]
    assert np.allclose(mat_mul(a, b), expected, rtol=1e-12, atol=1e-12)


def test_mat_mul_is_associative(rng):
    for _ in range(20):
        a = rng.normal(size=(5, 7))
        b = rng.normal(size=(7, 4))
        c = rng.normal(size=(4, 6))
        left = mat_mul(mat_mul(a, b), c)
        right = mat_mul(a, mat_mul(b, c))
        assert np.max(np.abs(left - right)) <= 1e-9 * np.max(np.abs(left))


def test_mat_mul_shape_mismatch():
    with pytest.raises(DimensionError):
        mat_mul(np.ones((2, 3)), np.ones((2, 3)))


# ── rank ──────────────────────────────────────────────────────────────────────

def test_rank_identity():
    assert rank(np.eye(12), 1e-9) == 12


def test_rank_zero_matrix():
    assert rank(np.zeros((3, 3)), 1e-9) == 0


def test_rank_deficient():
    assert rank([[1.0, 2.0], [2.0, 4.0]]) == 1
    assert rank([[1.0, 0.0, 1.0], [0.0, 1.0, 1.0], [1.0, 1.0, 2.0]]) == 2


def test_rank_of_transpose(rng):
    for _ in range(50):
        rows, cols = rng.integers(1, 9, size=2)
        inner = int(rng.integers(1, 9))
        m = rng.normal(size=(rows, inner)) @ rng.normal(size=(inner, cols))
        assert rank(m) == rank(m.T) == min(rows, cols, inner)


def test_rank_does_not_modify_input():
    m = np.array([[0.0, 1.0], [1.0, 0.0]])
    rank(m)
    assert m.tolist() == [[0.0, 1.0], [1.0, 0.0]]


def test_rank_rejects_non_positive_tolerance():
    with pytest.raises(ValueError):
        rank(np.eye(2), 0.0)


# ── characteristic_poly ───────────────────────────────────────────────────────

def test_characteristic_poly_of_diagonal():
    poly = characteristic_poly(np.diag([1.0, 2.0, 3.0]))
    assert np.allclose(poly.coef, [-6.0, 11.0, -6.0, 1.0])


def test_characteristic_poly_roots_are_eigenvalues(rng):
    m = rng.normal(size=(4, 4))
    roots = np.sort_complex(characteristic_poly(m).roots())
    eigenvalues = np.sort_complex(np.linalg.eigvals(m))
    assert np.allclose(roots, eigenvalues, atol=1e-8)


def test_characteristic_poly_requires_square():
    with pytest.raises(DimensionError):
        characteristic_poly(np.ones((2, 3)))


# ── poly_roots ────────────────────────────────────────────────────────────────

def test_roots_of_difference_of_squares():
    roots = poly_roots([-1.0, 0.0, 1.0])
    assert [r.real for r in roots] == pytest.approx([-1.0, 1.0])
    assert all(r.imag == 0.0 for r in roots)


def test_roots_of_altitude_factor():
    roots = poly_roots([608.0, 32.8, 1.0])
    assert roots[0] == pytest.approx(complex(-16.40, -18.41), abs=0.01)
    assert roots[1] == pytest.approx(complex(-16.40, 18.41), abs=0.01)


def test_roots_of_pitch_quartic():
    coeffs = [11028.4, 3902.4, 552.7, 39.4, 1.0]
    roots = poly_roots(coeffs)

    assert len(roots) == 4
    for root in roots:
        assert residual(coeffs, root) < 1e-6

    expected = [complex(-20.36, 0), complex(-6.47, 0), complex(-6.29, -6.65), complex(-6.29, 6.65)]
    for want in expected:
        assert min(abs(root - want) for root in roots) < 0.01


def test_roots_come_in_exact_conjugate_pairs(rng):
    for _ in range(50):
        coeffs = np.append(rng.uniform(-10.0, 10.0, size=4), 1.0)
        roots = poly_roots(coeffs)
        assert len(roots) == 4
        for root in roots:
            if root.imag != 0.0:
                assert root.conjugate() in roots


def test_roots_small_residual_on_random_quartics(rng):
    for _ in range(50):
        coeffs = np.append(rng.uniform(-10.0, 10.0, size=4), 1.0)
        for root in poly_roots(coeffs):
            assert residual(coeffs, root) < 1e-8


@pytest.mark.parametrize("degree", [1, 2, 3, 4])
def test_roots_rebuild_the_polynomial(rng, degree):
    for _ in range(25):
        coeffs = np.append(rng.uniform(-10.0, 10.0, size=degree), 1.0)
        rebuilt = Polynomial.fromroots(poly_roots(coeffs))
        assert np.allclose(rebuilt.coef, coeffs, rtol=0, atol=1e-6)


def test_roots_sorted_by_real_then_imaginary():
    roots = poly_roots([1.0, 0.0, 1.0])
    assert roots == sorted(roots, key=lambda r: (r.real, r.imag))
    assert roots[0].imag < 0 < roots[1].imag


def test_leading_zeros_are_trimmed():
    assert len(poly_roots([2.0, 3.0, 1.0, 0.0])) == 2


@pytest.mark.parametrize("coeffs", [[5.0], [1.0, 0.0, 0.0, 0.0, 0.0, 1.0]])
def test_unsupported_degrees(coeffs):
    with pytest.raises(UnsupportedDegreeError):
        poly_roots(coeffs)


# ── rk4_step ──────────────────────────────────────────────────────────────────

def test_rk4_zero_derivative_keeps_state():
    state = np.array([1.0, -2.0, 3.0])
    assert np.array_equal(rk4_step(lambda t, y: np.zeros(3), state, 0.0, 0.1), state)


def test_rk4_exponential_growth():
    result = rk4_step(lambda t, y: y, np.array([1.0]), 0.0, 0.1)
    assert abs(result[0] - math.exp(0.1)) < 1e-7


def test_rk4_free_fall():
    g = 9.81
    state = np.zeros(2)  # z, z'
    for i in range(1000):
        state = rk4_step(lambda t, y: np.array([y[1], g]), state, i * 0.001, 0.001)
    assert abs(state[1] - g) < 1e-9
    assert abs(state[0] - 0.5 * g) < 1e-9


def test_rk4_fourth_order_convergence():
    def error(dt):
        steps = round(1.0 / dt)
        y = np.array([1.0])
        for i in range(steps):
            y = rk4_step(lambda t, v: -v, y, i * dt, dt)
        return abs(y[0] - math.exp(-1.0))

    slope = math.log2(error(0.1) / error(0.05))
    assert 3.8 < slope < 4.2
    slope = math.log2(error(0.05) / error(0.025))
    assert 3.8 < slope < 4.2


def test_rk4_rejects_non_positive_step():
    with pytest.raises(ValueError):
        rk4_step(lambda t, y: y, np.ones(1), 0.0, 0.0)


def test_rk4_non_finite_derivative():
    with pytest.raises(NonFiniteError):
        rk4_step(lambda t, y: np.array([np.nan]), np.ones(1), 0.0, 0.1)
