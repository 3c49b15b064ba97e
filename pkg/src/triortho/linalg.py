"""Dense linear algebra kernels in exact rational and float modes.

Exact mode: rank and determinants via fraction-free (Bareiss) elimination
on integer-cleared rows; nullspaces and solves via rational Gauss-Jordan.
The two elimination routes cross-check each other on every nullspace call.
Float mode: numpy SVD with a relative singular-value cutoff. Generalized
symmetric eigenproblems are whitened (exact LDL^T or float Cholesky) and
finished with numpy's symmetric eigensolver.
"""

from __future__ import annotations

from fractions import Fraction
from math import lcm
from typing import Sequence

import numpy as np

from .errors import InconsistentParams, SingularMap

RATIONAL_RANK_TOL = 1e-9


def _as_fraction_rows(M: Sequence[Sequence]) -> list[list[Fraction]]:
    return [[Fraction(x) for x in row] for row in M]


def _integer_rows(M: Sequence[Sequence[Fraction]]) -> list[list[int]]:
    out = []
    for row in M:
        den = lcm(*(x.denominator for x in row)) if row else 1
        out.append([int(x * den) for x in row])
    return out


def bareiss_echelon(M: Sequence[Sequence]) -> tuple[list[list[int]], list[int]]:
    """Fraction-free row echelon form of an integer-cleared matrix.

    Returns the echelon rows and the pivot column indices. Row scalings do
    not change rank or pivot structure, so clearing denominators first is
    harmless.
    """
    A = _integer_rows(_as_fraction_rows(M))
    if not A:
        return [], []
    rows, cols = len(A), len(A[0])
    pivots: list[int] = []
    prev = 1
    r = 0
    for c in range(cols):
        pr = next((i for i in range(r, rows) if A[i][c] != 0), None)
        if pr is None:
            continue
        A[r], A[pr] = A[pr], A[r]
        for i in range(r + 1, rows):
            for j in range(c + 1, cols):
                A[i][j] = (A[r][c] * A[i][j] - A[i][c] * A[r][j]) // prev
            A[i][c] = 0
        prev = A[r][c]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    return A, pivots


def exact_rank(M: Sequence[Sequence]) -> int:
    return len(bareiss_echelon(M)[1])


def exact_det(M: Sequence[Sequence]) -> Fraction:
    """Determinant of a square rational matrix.

    Bareiss runs on integer-cleared rows; the clearing factors are divided
    back out at the end.
    """
    F = _as_fraction_rows(M)
    n = len(F)
    if any(len(row) != n for row in F):
        raise InconsistentParams("determinant needs a square matrix")
    if n == 0:
        return Fraction(1)
    scale = Fraction(1)
    cleared = []
    for row in F:
        den = lcm(*(x.denominator for x in row))
        scale *= den
        cleared.append([int(x * den) for x in row])
    A = [row[:] for row in cleared]
    sign = 1
    prev = 1
    for c in range(n - 1):
        pr = next((i for i in range(c, n) if A[i][c] != 0), None)
        if pr is None:
            return Fraction(0)
        if pr != c:
            A[c], A[pr] = A[pr], A[c]
            sign = -sign
        for i in range(c + 1, n):
            for j in range(c + 1, n):
                A[i][j] = (A[c][c] * A[i][j] - A[i][c] * A[c][j]) // prev
            A[i][c] = 0
        prev = A[c][c]
    return Fraction(sign * A[n - 1][n - 1], 1) / scale


def rational_rref(M: Sequence[Sequence]) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form over the rationals, with pivot columns."""
    A = _as_fraction_rows(M)
    if not A:
        return [], []
    rows, cols = len(A), len(A[0])
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        pr = next((i for i in range(r, rows) if A[i][c] != 0), None)
        if pr is None:
            continue
        A[r], A[pr] = A[pr], A[r]
        inv = 1 / A[r][c]
        A[r] = [x * inv for x in A[r]]
        for i in range(rows):
            if i != r and A[i][c] != 0:
                f = A[i][c]
                A[i] = [a - f * b for a, b in zip(A[i], A[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    return A, pivots


def exact_nullspace(M: Sequence[Sequence]) -> list[list[Fraction]]:
    """Basis of the rational nullspace; one vector per free column.

    Rank is computed independently by fraction-free elimination and must
    agree with the rational reduction.
    """
    A, pivots = rational_rref(M)
    if not A:
        return []
    cols = len(A[0])
    if exact_rank(M) != len(pivots):  # pragma: no cover - internal check
        raise InconsistentParams("elimination routes disagree on rank")
    free = [c for c in range(cols) if c not in pivots]
    basis = []
    for fc in free:
        v = [Fraction(0)] * cols
        v[fc] = Fraction(1)
        for r, pc in enumerate(pivots):
            v[pc] = -A[r][fc]
        basis.append(v)
    return basis


def exact_solve(A: Sequence[Sequence], b: Sequence) -> list[Fraction]:
    """Solve a square rational system; raises SingularMap when singular."""
    n = len(A)
    aug = [
        [Fraction(x) for x in row] + [Fraction(b[i])] for i, row in enumerate(A)
    ]
    R, pivots = rational_rref(aug)
    if len(pivots) == n and all(p < n for p in pivots):
        return [R[i][n] for i in range(n)]
    raise SingularMap("singular linear system")


def float_nullspace(
    M: Sequence[Sequence[float]], tol_factor: float = RATIONAL_RANK_TOL
) -> tuple[int, list[list[float]], float]:
    """SVD nullspace: (rank, basis vectors, absolute tolerance used)."""
    A = np.asarray(M, dtype=float)
    if A.size == 0:
        return 0, [], 0.0
    _, s, vt = np.linalg.svd(A)
    smax = float(s[0]) if len(s) else 0.0
    tol = tol_factor * smax
    rank = int(np.sum(s > tol)) if smax > 0 else 0
    null = [vt[i].tolist() for i in range(rank, A.shape[1])]
    return rank, null, tol


def exact_ldlt(G: Sequence[Sequence]) -> tuple[list[list[Fraction]], list[Fraction]]:
    """LDL^T factorization of a symmetric positive definite rational matrix."""
    A = _as_fraction_rows(G)
    n = len(A)
    L = [[Fraction(1) if i == j else Fraction(0) for j in range(n)] for i in range(n)]
    D = [Fraction(0)] * n
    for j in range(n):
        D[j] = A[j][j] - sum(L[j][k] * L[j][k] * D[k] for k in range(j))
        if D[j] <= 0:
            raise SingularMap("matrix is not positive definite")
        for i in range(j + 1, n):
            L[i][j] = (
                A[i][j] - sum(L[i][k] * L[j][k] * D[k] for k in range(j))
            ) / D[j]
    return L, D


def _forward_solve_unit(L: list[list[Fraction]], B: list[list[Fraction]]) -> list[list[Fraction]]:
    """Solve L X = B for unit lower triangular L, column by column."""
    n = len(L)
    cols = len(B[0])
    X = [[Fraction(0)] * cols for _ in range(n)]
    for c in range(cols):
        for i in range(n):
            X[i][c] = B[i][c] - sum(L[i][k] * X[k][c] for k in range(i))
    return X


def generalized_eigmin(A: Sequence[Sequence], B: Sequence[Sequence], mode: str) -> float:
    """Smallest eigenvalue of A v = lambda B v, A symmetric, B SPD.

    Exact mode whitens with a rational LDL^T of B and only leaves exactness
    for the final dense symmetric eigensolve; float mode whitens with a
    Cholesky factor. Both finish in numpy's eigvalsh.
    """
    if mode == "exact":
        L, D = exact_ldlt(B)
        Af = _as_fraction_rows(A)
        X = _forward_solve_unit(L, Af)
        # Y = L^{-1} A L^{-T} = (L^{-1} (L^{-1} A)^T)^T, symmetric
        Xt = [list(col) for col in zip(*X)]
        Y = _forward_solve_unit(L, Xt)
        Yf = np.array([[float(v) for v in row] for row in Y])
        scale = np.array([1.0 / float(d) ** 0.5 for d in D])
        W = (Yf * scale[None, :]) * scale[:, None]
    else:
        Bf = np.asarray(B, dtype=float)
        Af2 = np.asarray(A, dtype=float)
        C = np.linalg.cholesky(Bf)
        X2 = np.linalg.solve(C, Af2)
        W = np.linalg.solve(C, X2.T)
    W = 0.5 * (W + W.T)
    return float(np.linalg.eigvalsh(W)[0])
