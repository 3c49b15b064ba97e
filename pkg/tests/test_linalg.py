"""Exact linear algebra against independent numeric oracles."""

import random
from fractions import Fraction

import numpy as np
import pytest
import scipy.linalg

from triortho.errors import InconsistentParams, SingularMap
from triortho.linalg import (
    bareiss_echelon,
    exact_det,
    exact_ldlt,
    exact_nullspace,
    exact_rank,
    exact_solve,
    float_nullspace,
    generalized_eigmin,
    rational_rref,
)


def rand_matrix(rng, rows, cols, span=9):
    return [
        [Fraction(rng.randint(-span, span), rng.randint(1, 4)) for _ in range(cols)]
        for _ in range(rows)
    ]


def cofactor_det(M):
    n = len(M)
    if n == 1:
        return M[0][0]
    total = Fraction(0)
    for j in range(n):
        minor = [row[:j] + row[j + 1 :] for row in M[1:]]
        total += (-1) ** j * M[0][j] * cofactor_det(minor)
    return total


def test_det_matches_cofactor_expansion():
    rng = random.Random(1)
    for n in range(1, 6):
        for _ in range(5):
            M = rand_matrix(rng, n, n)
            assert exact_det(M) == cofactor_det(M)


def test_det_rejects_nonsquare():
    with pytest.raises(InconsistentParams):
        exact_det([[Fraction(1), Fraction(2)]])


def test_rank_matches_numpy():
    rng = random.Random(2)
    for _ in range(20):
        rows, cols = rng.randint(1, 6), rng.randint(1, 6)
        M = rand_matrix(rng, rows, cols)
        got = exact_rank(M)
        want = np.linalg.matrix_rank(np.array(M, dtype=float), tol=1e-9)
        assert got == want


def test_rank_deficient_products():
    rng = random.Random(3)
    # A (5x2) @ B (2x5) has rank at most 2
    A = rand_matrix(rng, 5, 2)
    B = rand_matrix(rng, 2, 5)
    M = [
        [sum(A[i][k] * B[k][j] for k in range(2)) for j in range(5)]
        for i in range(5)
    ]
    assert exact_rank(M) <= 2
    assert exact_det(M) == 0


def test_nullspace_vectors_annihilate():
    rng = random.Random(4)
    for _ in range(10):
        rows, cols = rng.randint(2, 5), rng.randint(2, 6)
        M = rand_matrix(rng, rows, cols)
        vecs = exact_nullspace(M)
        assert len(vecs) == cols - exact_rank(M)
        for v in vecs:
            for row in M:
                assert sum(a * b for a, b in zip(row, v)) == 0


def test_rref_pivots():
    M = [
        [Fraction(1), Fraction(2), Fraction(3)],
        [Fraction(2), Fraction(4), Fraction(7)],
    ]
    rows, pivots = rational_rref(M)
    assert pivots == [0, 2]
    assert rows[0][:3] == [Fraction(1), Fraction(2), Fraction(0)]
    assert rows[1][:3] == [Fraction(0), Fraction(0), Fraction(1)]


def test_echelon_consistent_with_rank():
    rng = random.Random(5)
    for _ in range(10):
        M = rand_matrix(rng, 4, 5)
        rows, pivots = bareiss_echelon(M)
        assert len(pivots) == exact_rank(M)


def test_solve_round_trip():
    rng = random.Random(6)
    for _ in range(10):
        n = rng.randint(1, 5)
        while True:
            A = rand_matrix(rng, n, n)
            if exact_det(A) != 0:
                break
        x = [Fraction(rng.randint(-9, 9), rng.randint(1, 3)) for _ in range(n)]
        b = [sum(A[i][j] * x[j] for j in range(n)) for i in range(n)]
        assert exact_solve(A, b) == x


def test_solve_singular_raises():
    A = [[Fraction(1), Fraction(2)], [Fraction(2), Fraction(4)]]
    with pytest.raises(SingularMap):
        exact_solve(A, [Fraction(1), Fraction(1)])


def spd_matrix(rng, n):
    B = rand_matrix(rng, n, n + 1, span=4)
    return [
        [sum(B[i][k] * B[j][k] for k in range(n + 1)) + (Fraction(1) if i == j else 0)
         for j in range(n)]
        for i in range(n)
    ]


def test_ldlt_reconstructs():
    rng = random.Random(7)
    for n in (1, 2, 4, 6):
        G = spd_matrix(rng, n)
        L, D = exact_ldlt(G)
        for i in range(n):
            for j in range(n):
                got = sum(L[i][k] * D[k] * L[j][k] for k in range(n))
                assert got == G[i][j]
        assert all(d > 0 for d in D)


def test_ldlt_rejects_indefinite():
    G = [[Fraction(0), Fraction(1)], [Fraction(1), Fraction(0)]]
    with pytest.raises(SingularMap):
        exact_ldlt(G)


def test_generalized_eigmin_matches_scipy():
    rng = random.Random(8)
    for n in (2, 4, 7, 12):
        A = spd_matrix(rng, n)
        B = spd_matrix(rng, n)
        want = float(
            scipy.linalg.eigh(
                np.array(A, dtype=float), np.array(B, dtype=float), eigvals_only=True
            )[0]
        )
        got_exact = generalized_eigmin(A, B, "exact")
        Af = [[float(x) for x in row] for row in A]
        Bf = [[float(x) for x in row] for row in B]
        got_float = generalized_eigmin(Af, Bf, "float")
        assert abs(got_exact - want) <= 1e-10 * max(1.0, abs(want))
        assert abs(got_float - want) <= 1e-10 * max(1.0, abs(want))


def test_float_nullspace_detects_constructed_kernel():
    rng = random.Random(9)
    # rows orthogonal to a known vector
    v = np.array([1.0, -2.0, 0.5, 3.0])
    rows = []
    for _ in range(6):
        r = np.array([rng.uniform(-1, 1) for _ in range(4)])
        r -= (r @ v) / (v @ v) * v
        rows.append(r.tolist())
    rank, vecs, tol = float_nullspace(rows)
    assert rank == 3 and len(vecs) == 1
    got = np.array(vecs[0])
    cosine = abs(got @ v) / (np.linalg.norm(got) * np.linalg.norm(v))
    assert abs(cosine - 1.0) < 1e-9
