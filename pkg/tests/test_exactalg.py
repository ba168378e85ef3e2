"""Exact linear algebra over GF(p) and the labeled PRNG streams."""

from fractions import Fraction
from itertools import permutations

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from levelalg import exactalg
from levelalg.lmatrix import SymbolicMatrix


def rational_rank(mat):
    """Row-echelon rank over the rationals (oracle for small matrices)."""
    rows = [[Fraction(int(x)) for x in row] for row in mat]
    rank = 0
    ncols = len(rows[0]) if rows else 0
    col = 0
    while rank < len(rows) and col < ncols:
        piv = next((k for k in range(rank, len(rows)) if rows[k][col]), None)
        if piv is None:
            col += 1
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        for k in range(len(rows)):
            if k != rank and rows[k][col]:
                f = rows[k][col] / rows[rank][col]
                rows[k] = [x - f * y for x, y in zip(rows[k], rows[rank])]
        rank += 1
        col += 1
    return rank


def permanent_style_det(mat, p):
    """Determinant by the Leibniz sum (oracle for n <= 5)."""
    n = len(mat)
    total = 0
    for perm in permutations(range(n)):
        inv = sum(1 for a in range(n) for b in range(a + 1, n)
                  if perm[a] > perm[b])
        term = (-1) ** inv
        for k in range(n):
            term *= int(mat[k][perm[k]])
        total += term
    return total % p


class TestPrimality:
    def test_is_prime(self):
        assert exactalg.is_prime(2)
        assert exactalg.is_prime(32749)
        assert not exactalg.is_prime(1)
        assert not exactalg.is_prime(32749 * 3)
        assert exactalg.is_prime(exactalg.DEFAULT_PRIME)


class TestStreams:
    def test_deterministic_and_label_separated(self):
        a1 = exactalg.sample((4, 4), 7, "alpha")
        a2 = exactalg.sample((4, 4), 7, "alpha")
        b = exactalg.sample((4, 4), 7, "beta")
        c = exactalg.sample((4, 4), 8, "alpha")
        assert np.array_equal(a1, a2)
        assert not np.array_equal(a1, b)
        assert not np.array_equal(a1, c)

    def test_sample_range(self):
        x = exactalg.sample((100,), 0, "range", p=97)
        assert x.dtype == np.int64
        assert x.min() >= 0 and x.max() < 97


class TestRank:
    def test_edge_cases(self):
        assert exactalg.rank(np.zeros((0, 5), dtype=np.int64)) == 0
        assert exactalg.rank(np.zeros((3, 0), dtype=np.int64)) == 0
        assert exactalg.rank(np.zeros((3, 3), dtype=np.int64)) == 0
        assert exactalg.rank(np.eye(4, dtype=np.int64)) == 4

    def test_modular_collapse(self):
        # a matrix of full rational rank that drops rank mod p
        p = 97
        m = np.array([[1, 0], [0, p]], dtype=np.int64)
        assert exactalg.rank(m, p) == 1
        assert rational_rank(m) == 2

    @given(rows=st.integers(1, 6), cols=st.integers(1, 6),
           seed=st.integers(0, 1000))
    @settings(max_examples=150, deadline=None)
    def test_matches_rational_rank(self, rows, cols, seed):
        # entries < 20 on a 6x6 grid cannot collapse mod 32749
        m = exactalg.sample((rows, cols), seed, "rank-test", p=20)
        assert exactalg.rank(m) == rational_rank(m)


class TestDet:
    @given(n=st.integers(1, 5), seed=st.integers(0, 500))
    @settings(max_examples=100, deadline=None)
    def test_matches_leibniz(self, n, seed):
        p = exactalg.DEFAULT_PRIME
        m = exactalg.sample((n, n), seed, "det-test", p=11)
        assert exactalg.det(m, p) == permanent_style_det(m, p)

    def test_singular(self):
        m = np.array([[1, 2], [2, 4]], dtype=np.int64)
        assert exactalg.det(m) == 0
        with pytest.raises(ValueError):
            exactalg.det(np.zeros((2, 3), dtype=np.int64))


class TestEvaluateSymbolic:
    def test_small_matrix(self):
        m = SymbolicMatrix((((2, "x"), None), ((1, "y"), (3, "x"))))
        got = exactalg.evaluate_symbolic(m, {"x": 5, "y": 7}, p=101)
        assert got.tolist() == [[10, 0], [7, 15]]
