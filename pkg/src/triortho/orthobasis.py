"""Orthogonal polynomial bases on triangles with the bubble weight.

Constructs the classical two-variable orthogonal system on the unit
triangle for weight x^a y^b (1-x-y)^g, its six symmetry images, the
normalized degree-n family p_{n,k}, and the (n+1)-dimensional complement
space basis on an arbitrary triangle. The complement of degree n on K is
the orthogonal complement of the polynomials of degree below n inside
those of degree up to n, under the bubble-weighted inner product on K.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .errors import BadBaseIndex, InconsistentParams, IndexOutOfRange, ZeroNormalizer
from .geometry import AffineMap, Triangle, map_to_unit, point_mode
from .jacobi import JacobiParams, jacobi_poly
from .polynomial import BivarPoly, affine_substitute
from .scalar import EXACT, FLOAT

# substitution (x, y) -> arguments for the six symmetry images
_VARIANT_MAPS = {
    1: (((1, 0), (0, 1)), (0, 0)),
    2: (((0, 1), (1, 0)), (0, 0)),
    3: (((0, 1), (-1, -1)), (0, 1)),
    4: (((1, 0), (-1, -1)), (0, 1)),
    5: (((-1, -1), (1, 0)), (1, 0)),
    6: (((-1, -1), (0, 1)), (1, 0)),
}

# weight-exponent permutation (as positions of alpha, beta, gamma) per image
_VARIANT_WEIGHTS = {
    1: (0, 1, 2),
    2: (1, 0, 2),
    3: (1, 2, 0),
    4: (0, 2, 1),
    5: (2, 0, 1),
    6: (2, 1, 0),
}


@dataclass(frozen=True)
class TriangleWeights:
    """Exponents (alpha, beta, gamma) of the weight x^a y^b (1-x-y)^g."""

    alpha: Fraction = Fraction(1)
    beta: Fraction = Fraction(1)
    gamma: Fraction = Fraction(1)

    def __post_init__(self) -> None:
        for name in ("alpha", "beta", "gamma"):
            object.__setattr__(self, name, Fraction(getattr(self, name)))
        if min(self.alpha, self.beta, self.gamma) <= -1:
            raise InconsistentParams("weight exponents must exceed -1")


W111 = TriangleWeights(Fraction(1), Fraction(1), Fraction(1))


@lru_cache(maxsize=None)
def proriol(n: int, k: int, w: TriangleWeights = W111) -> BivarPoly:
    """Degree-n orthogonal polynomial with secondary index k, exact mode.

    (1-x)^k P_{n-k}^{(a, b+g+2k+1)}(1-2x) P_k^{(b,g)}(1-2y/(1-x)), with the
    (1-x)^k factor absorbed so the result is a genuine polynomial.
    """
    if not 0 <= k <= n:
        raise IndexOutOfRange(f"need 0 <= k <= n, got k={k}, n={n}")
    a, b, g = w.alpha, w.beta, w.gamma
    one_minus_2x = BivarPoly.from_dict({(0, 0): 1, (1, 0): -2}, EXACT)
    outer = jacobi_poly(JacobiParams(a, b + g + 2 * k + 1, n - k)).substitute(one_minus_2x)
    inner_coeffs = jacobi_poly(JacobiParams(b, g, k)).coeffs
    u = BivarPoly.from_dict({(0, 0): 1, (1, 0): -1, (0, 1): -2}, EXACT)  # 1-x-2y
    v = BivarPoly.from_dict({(0, 0): 1, (1, 0): -1}, EXACT)  # 1-x
    upow = [BivarPoly.constant(1, EXACT)]
    vpow = [BivarPoly.constant(1, EXACT)]
    for _ in range(k):
        upow.append(upow[-1] * u)
        vpow.append(vpow[-1] * v)
    cleared = BivarPoly.zero(EXACT)
    for j, cj in enumerate(inner_coeffs):
        if cj != 0:
            cleared = cleared + (upow[j] * vpow[k - j]) * cj
    return outer * cleared


def six_variant(base: int, n: int, k: int, w: TriangleWeights = W111) -> BivarPoly:
    """One of the six symmetry images of the triangle orthogonal system."""
    if base not in _VARIANT_MAPS:
        raise BadBaseIndex(f"base must be 1..6, got {base}")
    perm = _VARIANT_WEIGHTS[base]
    exps = (w.alpha, w.beta, w.gamma)
    wp = TriangleWeights(exps[perm[0]], exps[perm[1]], exps[perm[2]])
    reference = proriol(n, k, wp)
    lin, shift = _VARIANT_MAPS[base]
    amap = AffineMap(
        tuple(tuple(Fraction(c) for c in row) for row in lin),
        tuple(Fraction(c) for c in shift),
    )
    return affine_substitute(reference, amap)


@lru_cache(maxsize=None)
def pnk(n: int, k: int) -> BivarPoly:
    """Normalized degree-n complement member for the unit weight triple.

    p_{n,k}(x, y) is the swapped-argument system member scaled so that
    p_{n,k}(0, 0) = 1. The normalizer equals (n-k+1)(k+1), never zero.
    """
    raw = six_variant(2, n, k, W111)
    norm = raw.eval(Fraction(0), Fraction(0))
    if norm == 0:
        raise ZeroNormalizer(f"basis member ({n},{k}) vanishes at the origin")
    return raw * (Fraction(1) / norm)


@dataclass(frozen=True)
class ComplementBasis:
    """Basis of the degree-n orthogonal complement on a world triangle."""

    n: int
    K: Triangle
    polys: tuple[BivarPoly, ...]


def complement_basis(n: int, K: Triangle) -> ComplementBasis:
    """Construct the n+1 complement basis members in world coordinates.

    Each member is p_{n,k} composed with the affine map sending K onto the
    unit triangle (vertices in listed order). In float mode the members are
    rescaled to unit max-abs coefficient for conditioning.
    """
    phi = map_to_unit(K)
    mode = point_mode(K.A)
    members = []
    for k in range(n + 1):
        ref = pnk(n, k)
        if mode == FLOAT:
            ref = ref.to_float()
        world = affine_substitute(ref, phi)
        if mode == FLOAT:
            big = max(abs(c) for _, _, c in world.terms())
            world = world * (1.0 / big)
        members.append(world)
    return ComplementBasis(n, K, tuple(members))
