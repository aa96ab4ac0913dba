"""Tests for the Gaussian elimination and minimum-norm solvers."""

import numpy as np
import pytest

from olrwa.dense_linalg import invert, min_norm_solution, solve_linear
from olrwa.errors import DimensionMismatch, InconsistentSystem, SingularMatrix


class TestSolveLinear:

    def test_identity(self):
        np.testing.assert_array_equal(solve_linear(np.eye(3), [1, 2, 3]), [1.0, 2.0, 3.0])

    def test_diagonal(self):
        np.testing.assert_allclose(solve_linear(np.diag([2.0, 4.0]), [2, 8]), [1.0, 2.0])

    def test_rank_deficient_rows(self):
        with pytest.raises(SingularMatrix):
            solve_linear([[1, 1], [2, 2]], [1, 3])

    def test_zero_leading_entry_needs_pivoting(self):
        np.testing.assert_allclose(solve_linear([[0, 1], [1, 0]], [5, 7]), [7.0, 5.0])

    def test_non_square(self):
        with pytest.raises(DimensionMismatch):
            solve_linear(np.ones((2, 3)), [1, 2])

    def test_rhs_length(self):
        with pytest.raises(DimensionMismatch):
            solve_linear(np.eye(2), [1, 2, 3])

    def test_non_finite_rejected(self):
        with pytest.raises(ValueError):
            solve_linear([[1, np.nan], [0, 1]], [1, 1])

    def test_random_residuals(self, rng):
        for _ in range(200):
            n = int(rng.integers(1, 7))
            a = rng.normal(size=(n, n)) + n * np.eye(n)
            b = rng.normal(scale=10, size=n)
            x = solve_linear(a, b)
            assert np.max(np.abs(a @ x - b)) <= 1e-9 * max(1.0, np.max(np.abs(b)))

    def test_deterministic(self, rng):
        a = rng.normal(size=(5, 5))
        b = rng.normal(size=5)
        assert np.array_equal(solve_linear(a, b), solve_linear(a, b))

    def test_inputs_untouched(self):
        a = np.array([[4.0, 1.0], [2.0, 3.0]])
        b = np.array([1.0, 2.0])
        solve_linear(a, b)
        np.testing.assert_array_equal(a, [[4.0, 1.0], [2.0, 3.0]])
        np.testing.assert_array_equal(b, [1.0, 2.0])


class TestInvert:

    def test_identity(self):
        np.testing.assert_array_equal(invert(np.eye(2)), np.eye(2))

    def test_diagonal(self):
        np.testing.assert_allclose(invert(np.diag([2.0, 4.0])), np.diag([0.5, 0.25]))

    def test_singular(self):
        with pytest.raises(SingularMatrix):
            invert([[1, 2], [2, 4]])

    def test_product_is_identity(self, rng):
        a = rng.normal(size=(4, 4)) + 4 * np.eye(4)
        np.testing.assert_allclose(a @ invert(a), np.eye(4), atol=1e-9)

    def test_double_inverse(self, rng):
        for _ in range(50):
            a = rng.normal(size=(5, 5)) + 5 * np.eye(5)
            if np.linalg.cond(a) >= 1e6:
                continue
            np.testing.assert_allclose(invert(invert(a)), a, atol=1e-6)


class TestMinNormSolution:

    def test_single_constraint(self):
        np.testing.assert_allclose(min_norm_solution([[1, 1]], [2]), [1.0, 1.0])

    def test_full_rank(self):
        np.testing.assert_allclose(min_norm_solution([[1, 0], [0, 1]], [3, 4]), [3.0, 4.0])

    def test_parallel_different_offsets(self):
        with pytest.raises(InconsistentSystem):
            min_norm_solution([[1, 1], [1, 1]], [1, 2])

    def test_parallel_same_offset_collapses(self):
        np.testing.assert_allclose(min_norm_solution([[1, 1], [2, 2]], [2, 4]), [1.0, 1.0])

    def test_too_many_constraints(self):
        with pytest.raises(DimensionMismatch):
            min_norm_solution(np.ones((3, 2)), [1, 2, 3])

    def test_orthogonal_to_null_space(self, rng):
        for _ in range(100):
            n = int(rng.integers(2, 6))
            k = int(rng.integers(1, n))
            a = rng.normal(size=(k, n))
            b = rng.normal(size=k)
            x = min_norm_solution(a, b)
            np.testing.assert_allclose(a @ x, b, atol=1e-9)

            # null space basis from the trailing right singular vectors
            _, _, vt = np.linalg.svd(a)
            for v in vt[k:]:
                assert abs(x @ v) <= 1e-9 * np.linalg.norm(x) * np.linalg.norm(v) + 1e-12

    def test_matches_lstsq_min_norm(self, rng):
        a = rng.normal(size=(2, 4))
        b = rng.normal(size=2)
        expected = np.linalg.lstsq(a, b, rcond=None)[0]
        np.testing.assert_allclose(min_norm_solution(a, b), expected, atol=1e-10)
