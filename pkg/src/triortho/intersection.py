"""Intersections of degree-n complement spaces across triangles.

The central question: given two (or more) triangles, how large is the
intersection of their bubble-weighted orthogonal complements of degree n?
This module answers it three independent ways and keeps them comparable:

* stacked-coefficient nullspaces of actual complement bases (any triangles),
* the closed-form reduced linear system in the two-parameter family (c, d)
  that normalizes a shared-edge pair,
* explicit spanning polynomials for every exceptional parameter choice.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import factorial
from typing import Optional, Sequence, Union

from .errors import (
    EmptyFamily,
    InconsistentParams,
    IndexOutOfRange,
    NotDivisible,
    ParseError,
)
from .geometry import AffineMap, Point, Triangle
from .jacobi import JacobiParams, jacobi_poly, shifted_factorial
from .linalg import exact_nullspace, exact_rank, float_nullspace
from .orthobasis import complement_basis, pnk
from .polynomial import BivarPoly, affine_substitute, coeff_vector, graded_dim
from .scalar import EXACT, FLOAT, Scalar, common_mode, mode_of


@dataclass(frozen=True)
class CdParams:
    """Normalized shared-edge pair: partner triangle ((1,0),(0,0),D).

    D = (-c/(d-c), 1/(d-c)). Disjoint pairs have d < c; d > c means the
    partner overlaps the unit triangle but the algebra still makes sense.
    """

    c: Scalar
    d: Scalar

    def __post_init__(self) -> None:
        common_mode(self.c, self.d)
        if self.c == self.d:
            raise InconsistentParams("need c != d")

    @property
    def mode(self) -> str:
        return mode_of(self.c)

    def third_vertex(self) -> Point:
        span = self.d - self.c
        one = self.c * 0 + 1
        return (-self.c / span, one / span)


def triangle_cd(cd: CdParams) -> Triangle:
    """The partner triangle as a counterclockwise Triangle value."""
    mode = cd.mode
    z = Fraction(0) if mode == EXACT else 0.0
    o = Fraction(1) if mode == EXACT else 1.0
    D = cd.third_vertex()
    if cd.d < cd.c:
        return Triangle((o, z), (z, z), D)
    return Triangle((z, z), (o, z), D)


def cd_forward_map(cd: CdParams) -> AffineMap:
    """The substitution (x, y) -> (x + c y, (d - c) y)."""
    mode = cd.mode
    z = Fraction(0) if mode == EXACT else 0.0
    o = Fraction(1) if mode == EXACT else 1.0
    return AffineMap(((o, cd.c), (z, cd.d - cd.c)), (z, z))


def complement_basis_cd(n: int, cd: CdParams) -> list[BivarPoly]:
    """The family p_{n,k}(x + c y, (d - c) y), k = 0..n.

    These span the degree-n complement of the partner triangle; the reduced
    system's unknowns are coordinates in exactly this basis.
    """
    amap = cd_forward_map(cd)
    out = []
    for k in range(n + 1):
        ref = pnk(n, k)
        if cd.mode == FLOAT:
            ref = ref.to_float()
        out.append(affine_substitute(ref, amap))
    return out


@dataclass(frozen=True)
class IntersectionResult:
    """Dimension and basis of an intersection of complement spaces."""

    dim: int
    basis: tuple[BivarPoly, ...]
    mode: str
    rank_tolerance: Optional[float] = None
    geometrically_valid: Optional[bool] = None


def _combine(polys: Sequence[BivarPoly], weights: Sequence[Scalar], mode: str) -> BivarPoly:
    out = BivarPoly.zero(mode)
    for p, w in zip(polys, weights):
        if w != 0:
            out = out + p * w
    return out


def _intersect_spans(
    n: int, left: Sequence[BivarPoly], right: Sequence[BivarPoly], mode: str
) -> IntersectionResult:
    """Intersection of two spans via the stacked-coefficient nullspace.

    Columns are coefficient vectors of the left span followed by negated
    right-span vectors; a null vector (a, b) certifies sum a_i l_i =
    sum b_j r_j, and its left part maps back to a basis polynomial.
    """
    rows = graded_dim(n)
    cols_l = [coeff_vector(p, n) for p in left]
    cols_r = [coeff_vector(p, n) for p in right]
    M = [
        [col[i] for col in cols_l] + [-col[i] for col in cols_r]
        for i in range(rows)
    ]
    if mode == EXACT:
        null = exact_nullspace(M)
        basis = []
        for vec in null:
            poly = _combine(left, vec[: len(left)], mode)
            lead = next(c for _, _, c in poly.terms())
            basis.append(poly * (Fraction(1) / lead))
        return IntersectionResult(len(null), tuple(basis), EXACT)
    _, null_f, tol = float_nullspace(M)
    basis = []
    for vec in null_f:
        poly = _combine(left, vec[: len(left)], mode)
        big = max((abs(c) for _, _, c in poly.terms()), default=0.0)
        if big > 0:
            poly = poly * (1.0 / big)
        basis.append(poly)
    return IntersectionResult(len(null_f), tuple(basis), FLOAT, rank_tolerance=tol)


def intersect_pair(n: int, KA: Triangle, KB: Triangle) -> IntersectionResult:
    """Dimension and basis of the two triangles' complement intersection."""
    if n < 1:
        raise InconsistentParams("need n >= 1")
    mode = common_mode(*KA.A, *KB.A)
    left = complement_basis(n, KA).polys
    right = complement_basis(n, KB).polys
    return _intersect_spans(n, left, right, mode)


def intersect_many(n: int, Ks: Sequence[Triangle]) -> IntersectionResult:
    """Iterated pairwise intersection over a list of triangles."""
    if n < 1:
        raise InconsistentParams("need n >= 1")
    if len(Ks) < 2:
        raise EmptyFamily("need at least two triangles")
    mode = common_mode(*(c for K in Ks for c in K.A))
    current: Sequence[BivarPoly] = complement_basis(n, Ks[0]).polys
    result: Optional[IntersectionResult] = None
    worst_tol = 0.0
    for K in Ks[1:]:
        right = complement_basis(n, K).polys
        result = _intersect_spans(n, current, right, mode)
        if result.rank_tolerance:
            worst_tol = max(worst_tol, result.rank_tolerance)
        current = result.basis
        if result.dim == 0:
            break
    assert result is not None
    if mode == FLOAT:
        return IntersectionResult(result.dim, result.basis, mode, rank_tolerance=worst_tol)
    return result


def intersect_cd(n: int, cd: CdParams) -> IntersectionResult:
    """Intersection of the unit triangle's complement with the (c, d) partner."""
    mode = cd.mode
    z = Fraction(0) if mode == EXACT else 0.0
    o = Fraction(1) if mode == EXACT else 1.0
    T1 = Triangle((z, z), (o, z), (z, o))
    res = intersect_pair(n, T1, triangle_cd(cd))
    return IntersectionResult(
        res.dim,
        res.basis,
        res.mode,
        rank_tolerance=res.rank_tolerance,
        geometrically_valid=bool(cd.d < cd.c),
    )


def predicted_cd_dim(n: int, cd: CdParams) -> int:
    """Dimension of the complement intersection predicted by the case table.

    The pair (0, 1) makes the two triangles mirror images with identical
    complement spaces; otherwise the intersection is a line exactly on the
    exceptional locus, which shrinks to the single point (1, 0) plus the
    three lines once n exceeds 2.
    """
    if n < 1:
        raise InconsistentParams("need n >= 1")
    c, d = cd.c, cd.d
    if c == 0 and d == 1:
        return n + 1
    if n == 1:
        return 1
    on_lines = c == 0 or d == 1 or d - c == 1
    if n == 2:
        return 1 if (on_lines or d - c == -1) else 0
    return 1 if (on_lines or (c == 1 and d == 0)) else 0


# -- closed-form coefficient machinery ------------------------------------


def _rf(a: int, k: int) -> int:
    """Integer rising factorial."""
    out = 1
    for i in range(k):
        out *= a + i
    return out


def f_coefficient(k: int, r: int, m: int, cd: CdParams, n: int) -> Scalar:
    """Coefficient f_{k,r,m}(c, d) of the reduced intersection system.

    Equals r! times the (x^r y^m) coefficient of
    p_{n,k}(x, y) - p_{n,k}(x + c y, (d - c) y), written as the explicit
    terminating double/triple sum.
    """
    if not (0 <= r <= k <= n):
        raise IndexOutOfRange(f"need 0 <= r <= k <= n, got r={r}, k={k}, n={n}")
    if not (1 <= m <= n and r + m <= n):
        raise IndexOutOfRange(f"need 1 <= m and r + m <= n, got m={m}")
    return _f_any(k, r, m, cd, n)


def _f_any(k: int, r: int, m: int, cd: CdParams, n: int) -> Scalar:
    """f_{k,r,m} without the r <= k precondition (zero when r > k)."""
    c, d = cd.c, cd.d
    exact = cd.mode == EXACT

    def q(value: Fraction) -> Scalar:
        return value if exact else float(value)

    span = d - c
    span_pow = [span * 0 + 1]
    c_pow = [c * 0 + 1]
    for _ in range(m + k + 1):
        span_pow.append(span_pow[-1] * span)
        c_pow.append(c_pow[-1] * c)

    first = c * 0
    for i in range(max(0, m - k + r), min(m, n - k) + 1):
        pref = Fraction(
            _rf(-n + k, i) * _rf(n + k + 5, i) * _rf(-k, r) * _rf(k + 3, r) * _rf(r - k, m - i),
            _rf(2, i) * factorial(i) * _rf(2, r) * factorial(m - i),
        )
        first = first + q(pref)
    first = first * (span_pow[0] - span_pow[m])

    second = c * 0
    for i in range(max(0, m - k + r), min(m - 1, n - k) + 1):
        outer = Fraction(_rf(-n + k, i) * _rf(n + k + 5, i), _rf(2, i) * factorial(i))
        inner = c * 0
        for j in range(r + 1, min(k, m + r - i) + 1):
            pref = Fraction(
                _rf(-k, j) * _rf(k + 3, j) * _rf(j - k, m + r - i - j),
                _rf(2, j) * factorial(j - r) * factorial(m + r - i - j),
            )
            inner = inner + q(pref) * c_pow[j - r] * span_pow[m + r - j]
        second = second + q(outer) * inner
    return first - second


def f_rrm_closed(r: int, m: int, cd: CdParams, n: int) -> Scalar:
    """Closed form of the diagonal coefficient f_{r,r,m}(c, d)."""
    exact = cd.mode == EXACT
    pref = Fraction(
        (-1) ** r * factorial(2 * r + 2), (r + 1) * factorial(r + 2)
    ) * Fraction(_rf(-n + r, m) * _rf(n + r + 5, m), _rf(2, m) * factorial(m))
    span = cd.d - cd.c
    span_m = span * 0 + 1
    for _ in range(m):
        span_m = span_m * span
    one = span * 0 + 1
    return (pref if exact else float(pref)) * (one - span_m)


def f_shift_closed_dc1(r: int, m: int, c: Scalar, n: int) -> Scalar:
    """Closed form of f_{r+1,r,m}(c, c+1) on the d = c + 1 line."""
    if m < 1 or n - r - m < 0:
        raise IndexOutOfRange("need 1 <= m and r + m <= n")
    pref = Fraction(
        (-1) ** (m + r + 1) * factorial(n - r - 1) * _rf(n + r + 6, m - 1) * _rf(r + 4, r + 1),
        factorial(n - r - m) * factorial(m - 1) * factorial(m) * (r + 2),
    )
    return (pref if mode_of(c) == EXACT else float(pref)) * c


def reduced_system(n: int, cd: CdParams) -> list[list[Scalar]]:
    """The reduced linear system whose nullity is the intersection dimension.

    Rows are indexed by (r, m) with 0 <= r <= n-1, 1 <= m, r + m <= n;
    columns by k = 0..n; entries f_{k,r,m}(c, d) / r!. A coefficient
    vector (a_0..a_n) in the partner-triangle basis lies in the kernel
    exactly when the corresponding polynomial is in both complements.
    """
    if n < 1:
        raise InconsistentParams("need n >= 1")
    rows = []
    for r in range(n):
        for m in range(1, n - r + 1):
            fct = factorial(r)
            row = [_f_any(k, r, m, cd, n) / fct for k in range(n + 1)]
            rows.append(row)
    return rows


def reduced_system_nullity(n: int, cd: CdParams) -> int:
    M = reduced_system(n, cd)
    if cd.mode == EXACT:
        return (n + 1) - exact_rank(M)
    rank, _, _ = float_nullspace(M)
    return (n + 1) - rank


def det3(n: int, cd: CdParams) -> Scalar:
    """Determinant of the top 3x3 subsystem in the highest three unknowns.

    Rows (r, m) = (n-1, 1), (n-2, 1), (n-2, 2); columns k = n, n-1, n-2.
    """
    if n < 2:
        raise InconsistentParams("need n >= 2")
    rows_rm = [(n - 1, 1), (n - 2, 1), (n - 2, 2)]
    cols_k = [n, n - 1, n - 2]
    M = [
        [_f_any(k, r, m, cd, n) / factorial(r) for k in cols_k]
        for (r, m) in rows_rm
    ]
    a, b, c_ = M[0]
    d_, e, f_ = M[1]
    g, h, i_ = M[2]
    return a * (e * i_ - f_ * h) - b * (d_ * i_ - f_ * g) + c_ * (d_ * h - e * g)


def det3_closed(n: int, cd: CdParams) -> Scalar:
    """Product form of the same determinant; vanishes on the exceptional lines."""
    if n < 2:
        raise InconsistentParams("need n >= 2")
    pref = Fraction(
        (-1) ** (n + 1) * 2 ** (4 * n) * factorial(2 * n), 3 * factorial(n - 2) * factorial(n) * factorial(n + 1) ** 2
    )
    pref = pref * shifted_factorial(Fraction(1, 2), n - 1) * shifted_factorial(Fraction(1, 2), n + 2)
    c, d = cd.c, cd.d
    one = c * 0 + 1
    poly = c * (d - one) * (c - d + one) * (c - d - one)
    return (pref if cd.mode == EXACT else float(pref)) * poly


def q_poly(
    n: int,
    case: str,
    c: Optional[Scalar] = None,
    d: Optional[Scalar] = None,
) -> BivarPoly:
    """Explicit spanning polynomial of a one-dimensional intersection.

    Cases: "c0" (the c = 0 ray), "d1" (d = 1), "dc1" (d = c + 1), "q10"
    (the isolated point (c, d) = (1, 0)), "n2" (degree 2 on d = c - 1,
    needs c), "n1" (degree 1, any parameters, needs c and d). All exact.
    """
    x = BivarPoly.x(EXACT)
    y = BivarPoly.y(EXACT)
    one = BivarPoly.constant(1, EXACT)
    if case == "c0":
        arg = one - x * 2
        return jacobi_poly(JacobiParams(1, 3, n)).substitute(arg)
    if case == "d1":
        arg = (x + y) * 2 - one
        return jacobi_poly(JacobiParams(1, 3, n)).substitute(arg)
    if case == "dc1":
        arg = one - y * 2
        return jacobi_poly(JacobiParams(1, 3, n)).substitute(arg)
    if case == "q10":
        p_next = jacobi_poly(JacobiParams(1, 1, n + 1))
        total = p_next.substitute(one - (x + y) * 2) - p_next.substitute(one - x * 2)
        return _divide_out_y(total)
    if case == "n2":
        if n != 2:
            raise InconsistentParams("case n2 is the degree-2 branch")
        if c is None:
            raise InconsistentParams("case n2 needs c")
        cf = Fraction(c)
        return BivarPoly.from_dict(
            {
                (2, 0): 168,
                (1, 1): 168 * cf,
                (0, 2): 28 * cf * (cf + 1),
                (1, 0): -42 * (cf + 3),
                (0, 1): -21 * (cf + 3) * cf,
                (0, 0): 3 * cf * cf + 15 * cf + 18,
            },
            EXACT,
        )
    if case == "n1":
        if n != 1:
            raise InconsistentParams("case n1 is the degree-1 branch")
        if c is None or d is None:
            raise InconsistentParams("case n1 needs c and d")
        cf, df = Fraction(c), Fraction(d)
        return BivarPoly.from_dict(
            {
                (1, 0): 3 * (cf - df + 1),
                (0, 1): 3 * cf,
                (0, 0): -2 * cf + df - 1,
            },
            EXACT,
        )
    raise ParseError(f"unknown spanning case {case!r}")


def _divide_out_y(p: BivarPoly) -> BivarPoly:
    """Exact division by y; every monomial must contain a factor y."""
    entries = {}
    for r, m, coeff in p.terms():
        if m == 0:
            raise NotDivisible("polynomial has a y-free monomial")
        entries[(r, m - 1)] = coeff
    if not entries:
        return BivarPoly.zero(EXACT)
    return BivarPoly.from_dict(entries, EXACT)


def alpha_recursion_dc_minus1(n: int, c: Scalar) -> tuple[Scalar, Scalar]:
    """Trailing coefficient pattern on the d = c - 1 line, normalized a_n = 1.

    Returns (a_{n-1}, a_{n-2}) in the partner-triangle basis; for n > 2
    the remaining equations force the candidate out of the intersection
    unless c is 0, 1, or 2.
    """
    if n < 2:
        raise InconsistentParams("need n >= 2")
    exact = mode_of(c) == EXACT
    one = c * 0 + 1
    a1 = (c - one) * Fraction(n * (2 * n + 1), (n + 2) ** 2)
    num = 3 * (n + 1) * one + c * (c - 2 * one) * (2 * n + 1)
    pref = Fraction((n - 1) * n * (2 * n - 1), (n + 1) * (n + 2) ** 2 * (2 * n + 3))
    if not exact:
        return float(a1), float(pref) * num
    return a1, pref * num
