"""Bivariate and univariate polynomial algebra over dual-mode scalars.

BivarPoly stores a dense triangular coefficient table c[r][m] for the
monomial x^r y^m, r + m <= degree, in one scalar mode throughout. The
module provides arithmetic, affine substitution, evaluation, exact
integration over the open unit triangle T1 = conv((0,0),(1,0),(0,1)), and
the weighted inner product on an arbitrary triangle with the cubic bubble
weight (the product of the barycentric coordinates).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Union

from .errors import ModeMismatch, ParseError
from .geometry import AffineMap, Triangle, map_from_unit
from .scalar import (
    EXACT,
    FLOAT,
    Scalar,
    coerce,
    common_mode,
    mode_of,
    rational_factorial_ratio,
    zero as scalar_zero,
)


def _trim_rows(rows: list[list[Scalar]]) -> tuple[tuple[Scalar, ...], ...]:
    """Shrink a triangular table so degree matches the nonzero content."""
    deg = 0
    for r, row in enumerate(rows):
        for m, c in enumerate(row):
            if c != 0:
                deg = max(deg, r + m)
    return tuple(
        tuple(rows[r][m] for m in range(deg - r + 1)) for r in range(deg + 1)
    )


@dataclass(frozen=True)
class BivarPoly:
    """Dense triangular bivariate polynomial; immutable."""

    coeffs: tuple[tuple[Scalar, ...], ...]

    def __post_init__(self) -> None:
        common_mode(*(c for row in self.coeffs for c in row))

    # -- constructors ------------------------------------------------------

    @classmethod
    def from_rows(cls, rows: Iterable[Iterable[Union[Scalar, int]]], mode: str) -> "BivarPoly":
        full = [[coerce(c, mode) for c in row] for row in rows]
        n = len(full) - 1
        for r, row in enumerate(full):
            if len(row) != n - r + 1:
                raise ParseError("rows must form a triangular table")
        return cls(_trim_rows(full))

    @classmethod
    def from_dict(cls, entries: dict[tuple[int, int], Union[Scalar, int]], mode: str) -> "BivarPoly":
        n = max((r + m for r, m in entries), default=0)
        rows = [[scalar_zero(mode)] * (n - r + 1) for r in range(n + 1)]
        for (r, m), c in entries.items():
            rows[r][m] = rows[r][m] + coerce(c, mode)
        return cls(_trim_rows(rows))

    @classmethod
    def zero(cls, mode: str) -> "BivarPoly":
        return cls(((scalar_zero(mode),),))

    @classmethod
    def constant(cls, value: Union[Scalar, int], mode: str) -> "BivarPoly":
        return cls(((coerce(value, mode),),))

    @classmethod
    def x(cls, mode: str) -> "BivarPoly":
        return cls.from_dict({(1, 0): 1}, mode)

    @classmethod
    def y(cls, mode: str) -> "BivarPoly":
        return cls.from_dict({(0, 1): 1}, mode)

    # -- basic queries -----------------------------------------------------

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def mode(self) -> str:
        return mode_of(self.coeffs[0][0])

    def coeff(self, r: int, m: int) -> Scalar:
        if 0 <= r < len(self.coeffs) and 0 <= m < len(self.coeffs[r]):
            return self.coeffs[r][m]
        return scalar_zero(self.mode)

    def is_zero(self) -> bool:
        return self.degree == 0 and self.coeffs[0][0] == 0

    def eval(self, x: Scalar, y: Scalar) -> Scalar:
        acc = scalar_zero(self.mode)
        for r in range(self.degree, -1, -1):
            row = self.coeffs[r]
            inner = scalar_zero(self.mode)
            for m in range(len(row) - 1, -1, -1):
                inner = inner * y + row[m]
            acc = acc * x + inner
        return acc

    def to_float(self) -> "BivarPoly":
        return BivarPoly(tuple(tuple(float(c) for c in row) for row in self.coeffs))

    def terms(self) -> Iterable[tuple[int, int, Scalar]]:
        for r, row in enumerate(self.coeffs):
            for m, c in enumerate(row):
                if c != 0:
                    yield r, m, c

    # -- operator sugar over poly_arith ------------------------------------

    def __add__(self, other: "BivarPoly") -> "BivarPoly":
        return poly_arith(self, other, "add")

    def __sub__(self, other: "BivarPoly") -> "BivarPoly":
        return poly_arith(self, other, "sub")

    def __mul__(self, other: Union["BivarPoly", Scalar, int]) -> "BivarPoly":
        if isinstance(other, BivarPoly):
            return poly_arith(self, other, "mul")
        return poly_arith(self, other, "scale")

    def __rmul__(self, other: Union[Scalar, int]) -> "BivarPoly":
        return poly_arith(self, other, "scale")

    def __neg__(self) -> "BivarPoly":
        return poly_arith(self, -1, "scale")


def poly_arith(
    p: BivarPoly, q: Union[BivarPoly, Scalar, int], op: str
) -> BivarPoly:
    """Combine polynomials: add, sub, mul take two polys, scale takes a scalar."""
    mode = p.mode
    if op == "scale":
        s = coerce(q, mode)
        rows = [[c * s for c in row] for row in p.coeffs]
        return BivarPoly(_trim_rows(rows))
    if not isinstance(q, BivarPoly):
        raise ModeMismatch(f"{op} needs two polynomials")
    if q.mode != mode:
        raise ModeMismatch("mixed scalar modes in polynomial arithmetic")
    if op in ("add", "sub"):
        n = max(p.degree, q.degree)
        sign = 1 if op == "add" else -1
        rows = [
            [p.coeff(r, m) + sign * q.coeff(r, m) for m in range(n - r + 1)]
            for r in range(n + 1)
        ]
        return BivarPoly(_trim_rows(rows))
    if op == "mul":
        n = p.degree + q.degree
        rows = [[scalar_zero(mode)] * (n - r + 1) for r in range(n + 1)]
        for r1, row1 in enumerate(p.coeffs):
            for m1, c1 in enumerate(row1):
                if c1 == 0:
                    continue
                for r2, row2 in enumerate(q.coeffs):
                    for m2, c2 in enumerate(row2):
                        if c2 != 0:
                            rows[r1 + r2][m1 + m2] = rows[r1 + r2][m1 + m2] + c1 * c2
        return BivarPoly(_trim_rows(rows))
    raise ParseError(f"unknown polynomial op {op!r}")


def affine_substitute(p: BivarPoly, amap: AffineMap) -> BivarPoly:
    """Return p composed with the map: (p o amap)(x, y) = p(amap(x, y))."""
    mode = p.mode
    (a, b), (c, d) = amap.linear
    e, f = amap.shift
    X = BivarPoly.from_dict({(1, 0): coerce(a, mode), (0, 1): coerce(b, mode), (0, 0): coerce(e, mode)}, mode)
    Y = BivarPoly.from_dict({(1, 0): coerce(c, mode), (0, 1): coerce(d, mode), (0, 0): coerce(f, mode)}, mode)
    xpow = [BivarPoly.constant(1, mode)]
    ypow = [BivarPoly.constant(1, mode)]
    for _ in range(p.degree):
        xpow.append(xpow[-1] * X)
        ypow.append(ypow[-1] * Y)
    out = BivarPoly.zero(mode)
    for r, m, cc in p.terms():
        out = out + (xpow[r] * ypow[m]) * cc
    return out


def bubble_weight(mode: str) -> BivarPoly:
    """The cubic weight x y (1 - x - y) on the unit triangle."""
    return BivarPoly.from_dict({(1, 1): 1, (2, 1): -1, (1, 2): -1}, mode)


def integrate_T1(p: BivarPoly) -> Scalar:
    """Exact integral of p over the open unit triangle.

    Monomial moments: the integral of x^r y^m is r! m! / (r+m+2)!.
    """
    if p.mode == EXACT:
        total = Fraction(0)
        for r, m, c in p.terms():
            total += c * rational_factorial_ratio(r, m, 0)
        return total
    total_f = 0.0
    for r, m, c in p.terms():
        total_f += c * float(rational_factorial_ratio(r, m, 0))
    return total_f


def inner_product(u: BivarPoly, v: BivarPoly, K: Triangle) -> Scalar:
    """Bubble-weighted inner product over triangle K.

    Pulls both factors back to the unit triangle through the forward map
    L : T1 -> K and integrates (u o L)(v o L) against the T1 bubble weight,
    scaled by |det L|. The bubble weight is the product of barycentric
    coordinates, which is affine-natural, so this matches integrating
    u v times K's own bubble over K.
    """
    mode = u.mode
    if v.mode != mode or common_mode(*K.A, *K.B, *K.C) != mode:
        raise ModeMismatch("polynomials and triangle must share one mode")
    fwd = map_from_unit(K)
    uu = affine_substitute(u, fwd)
    vv = affine_substitute(v, fwd)
    det = fwd.det()
    return abs(det) * integrate_T1(uu * vv * bubble_weight(mode))


# -- graded monomial coordinates ------------------------------------------


def graded_monomials(n: int) -> list[tuple[int, int]]:
    """Monomial exponents (r, m) of total degree <= n, sorted by (r+m, r)."""
    return [(r, t - r) for t in range(n + 1) for r in range(t + 1)]


def graded_dim(n: int) -> int:
    return (n + 1) * (n + 2) // 2


def coeff_vector(p: BivarPoly, n: int) -> list[Scalar]:
    """Coefficients of p in the graded monomial basis of degree <= n."""
    if p.degree > n:
        raise ParseError(f"degree {p.degree} exceeds requested bound {n}")
    return [p.coeff(r, m) for r, m in graded_monomials(n)]


def from_coeff_vector(vec: list[Scalar], n: int, mode: str) -> BivarPoly:
    entries = {
        rm: c for rm, c in zip(graded_monomials(n), vec, strict=True)
    }
    return BivarPoly.from_dict(entries, mode)


@dataclass(frozen=True)
class UnivarPoly:
    """Dense univariate polynomial c[j] x^j; leading coefficient nonzero."""

    coeffs: tuple[Scalar, ...]

    def __post_init__(self) -> None:
        common_mode(*self.coeffs)

    @classmethod
    def from_list(cls, cs: Iterable[Union[Scalar, int]], mode: str) -> "UnivarPoly":
        full = [coerce(c, mode) for c in cs]
        while len(full) > 1 and full[-1] == 0:
            full.pop()
        return cls(tuple(full))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def mode(self) -> str:
        return mode_of(self.coeffs[0])

    def eval(self, x: Scalar) -> Scalar:
        acc = scalar_zero(self.mode)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def substitute(self, arg: BivarPoly) -> BivarPoly:
        """Compose with a bivariate argument: returns self(arg(x, y))."""
        mode = arg.mode
        out = BivarPoly.zero(mode)
        power = BivarPoly.constant(1, mode)
        for j, c in enumerate(self.coeffs):
            if j > 0:
                power = power * arg
            if c != 0:
                out = out + power * coerce(c, mode)
        return out

    def to_float(self) -> "UnivarPoly":
        return UnivarPoly(tuple(float(c) for c in self.coeffs))
