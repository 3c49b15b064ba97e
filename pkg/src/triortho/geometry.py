"""Plane geometry: triangles, affine maps, star patches, critical sets.

Points are (x, y) pairs of same-mode scalars (see scalar module). Predicates
are exact in exact mode; float mode uses a relative tolerance scaled to the
configuration size. Classification of a fourth vertex against the critical
point/line sets of a shared-edge triangle pair lives here, as do the
patch-level checks (validity, barycenter triples, first-degree moment
identity, full patch intersection).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Union

from .errors import (
    DegenerateConfiguration,
    DegenerateTriangle,
    InconsistentParams,
    InvalidPatch,
    NoSharedEdge,
    SingularMap,
)
from .scalar import EXACT, Scalar, common_mode

Point = tuple[Scalar, Scalar]

NON_CRITICAL = "NonCritical"
LINE_AB = "LineAB"
LINE_AC = "LineAC"
Q_POINT = "QPoint"
QUAD_LINE = "QuadLine"

FLOAT_REL_TOL = 1e-9


def vsub(p: Point, q: Point) -> Point:
    return (p[0] - q[0], p[1] - q[1])


def vadd(p: Point, q: Point) -> Point:
    return (p[0] + q[0], p[1] + q[1])


def cross(u: Point, v: Point) -> Scalar:
    return u[0] * v[1] - u[1] * v[0]


def orient(a: Point, b: Point, c: Point) -> Scalar:
    """Twice the signed area of (a, b, c); positive when counterclockwise."""
    return cross(vsub(b, a), vsub(c, a))


def point_mode(p: Point) -> str:
    return common_mode(p[0], p[1])


def _scale(points: list[Point]) -> float:
    m = 0.0
    for x, y in points:
        m = max(m, abs(float(x)), abs(float(y)))
    return max(m, 1.0)


def _cross_tol(points: list[Point]) -> float:
    """Zero in exact mode; scaled absolute tolerance for float crosses."""
    if point_mode(points[0]) == EXACT:
        return 0.0
    s = _scale(points)
    return FLOAT_REL_TOL * s * s


@dataclass(frozen=True)
class Triangle:
    """Nondegenerate triangle with vertices in counterclockwise order."""

    A: Point
    B: Point
    C: Point

    def __post_init__(self) -> None:
        common_mode(*self.A, *self.B, *self.C)
        area2 = orient(self.A, self.B, self.C)
        if area2 == 0:
            raise DegenerateTriangle(f"collinear vertices {self.vertices()}")
        if area2 < 0:
            raise DegenerateTriangle(
                f"clockwise vertex order {self.vertices()}"
            )

    def vertices(self) -> tuple[Point, Point, Point]:
        return (self.A, self.B, self.C)

    def barycenter(self) -> Point:
        mode = point_mode(self.A)
        three = Fraction(3) if mode == EXACT else 3.0
        return (
            (self.A[0] + self.B[0] + self.C[0]) / three,
            (self.A[1] + self.B[1] + self.C[1]) / three,
        )


@dataclass(frozen=True)
class AffineMap:
    """Invertible map p -> linear @ p + shift."""

    linear: tuple[tuple[Scalar, Scalar], tuple[Scalar, Scalar]]
    shift: Point

    def __post_init__(self) -> None:
        if self.det() == 0:
            raise SingularMap(f"zero determinant: {self.linear}")

    def det(self) -> Scalar:
        (a, b), (c, d) = self.linear
        return a * d - b * c

    def apply(self, p: Point) -> Point:
        (a, b), (c, d) = self.linear
        e, f = self.shift
        x, y = p
        return (a * x + b * y + e, c * x + d * y + f)

    def inverse(self) -> "AffineMap":
        (a, b), (c, d) = self.linear
        e, f = self.shift
        det = self.det()
        ia, ib, ic, id_ = d / det, -b / det, -c / det, a / det
        return AffineMap(
            ((ia, ib), (ic, id_)),
            (-(ia * e + ib * f), -(ic * e + id_ * f)),
        )

    def compose(self, other: "AffineMap") -> "AffineMap":
        """self after other: (self.compose(other)).apply(p) = self(other(p))."""
        (a, b), (c, d) = self.linear
        (p, q), (r, s) = other.linear
        lin = ((a * p + b * r, a * q + b * s), (c * p + d * r, c * q + d * s))
        return AffineMap(lin, self.apply(other.shift))


def map_from_unit(K: Triangle) -> AffineMap:
    """Affine map sending (0,0)->A, (1,0)->B, (0,1)->C."""
    ax, ay = K.A
    return AffineMap(
        ((K.B[0] - ax, K.C[0] - ax), (K.B[1] - ay, K.C[1] - ay)), (ax, ay)
    )


def map_to_unit(K: Triangle) -> AffineMap:
    """Affine map sending A->(0,0), B->(1,0), C->(0,1)."""
    return map_from_unit(K).inverse()


def unit_triangle(mode: str = EXACT) -> Triangle:
    z: Scalar = Fraction(0) if mode == EXACT else 0.0
    o: Scalar = Fraction(1) if mode == EXACT else 1.0
    return Triangle((z, z), (o, z), (z, o))


@dataclass(frozen=True)
class TrianglePatch:
    """Fan of triangles around a center: K_i = (z, ring[i], ring[i+1]).

    The ring is cyclic, so triangle q-1 closes back to ring[0]. Raw points
    are stored unvalidated; validate_patch reports problems as data.
    """

    z: Point
    ring: tuple[Point, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "ring", tuple(tuple(p) for p in self.ring))
        common_mode(*self.z, *(c for p in self.ring for c in p))

    @property
    def q(self) -> int:
        return len(self.ring)

    def triangle(self, i: int) -> Triangle:
        return Triangle(self.z, self.ring[i % self.q], self.ring[(i + 1) % self.q])

    def triangles(self) -> list[Triangle]:
        return [self.triangle(i) for i in range(self.q)]


@dataclass(frozen=True)
class CriticalClass:
    """Classification of a fourth vertex: tag plus the (c, d) parameters."""

    tag: str
    detail: dict = field(default_factory=dict)

    @property
    def is_critical(self) -> bool:
        return self.tag != NON_CRITICAL


def _triangles_separated(t1: tuple[Point, ...], t2: tuple[Point, ...]) -> bool:
    """True when the open interiors are disjoint (touching allowed).

    Separating-axis test over the six edges; both triangles must be listed
    counterclockwise.
    """
    for poly, other in ((t1, t2), (t2, t1)):
        for i in range(3):
            p, qq = poly[i], poly[(i + 1) % 3]
            if all(orient(p, qq, v) <= 0 for v in other):
                return True
    return False


def validate_patch(patch: TrianglePatch) -> list[dict]:
    """Check the patch invariants; an empty list means the patch is valid.

    Violations are dicts with a short machine code, the offending index or
    index pair, and a human message. Checks run in stages: ring size, then
    per-triangle orientation, then (only if all triangles are positively
    oriented) the full-turn coverage test and a pairwise overlap scan.
    """
    violations: list[dict] = []
    q = patch.q
    if q < 3:
        violations.append(
            {"code": "ring_size", "index": q, "message": f"ring has {q} < 3 vertices"}
        )
        return violations

    for i in range(q):
        for j in range(i + 1, q):
            if patch.ring[i] == patch.ring[j]:
                violations.append(
                    {
                        "code": "duplicate_vertex",
                        "index": (i, j),
                        "message": f"ring vertices {i} and {j} coincide",
                    }
                )
    if any(p == patch.z for p in patch.ring):
        violations.append(
            {"code": "duplicate_vertex", "index": None, "message": "ring vertex equals center"}
        )
    if violations:
        return violations

    pts = [patch.z, *patch.ring]
    tol = _cross_tol(pts)
    dirs = [vsub(p, patch.z) for p in patch.ring]
    oriented = True
    for i in range(q):
        c = cross(dirs[i], dirs[(i + 1) % q])
        if abs(float(c)) <= tol or c <= 0:
            oriented = False
            kind = "degenerate_triangle" if abs(float(c)) <= tol else "orientation"
            violations.append(
                {
                    "code": kind,
                    "index": i,
                    "message": f"triangle {i} has nonpositive orientation at the center",
                }
            )
    if not oriented:
        return violations

    # All sector angles are in (0, pi), so going once around the ring turns
    # by an exact positive multiple of a full turn. Valid patches turn once:
    # a direction strictly inside sector 0 must lie inside no other sector.
    e = None
    for k in range(1, q + 3):
        cand = (
            (k + 1) * dirs[0][0] + dirs[1][0],
            (k + 1) * dirs[0][1] + dirs[1][1],
        )
        if all(abs(float(cross(d, cand))) > tol * (k + 2) for d in dirs):
            e = cand
            break
    if e is None:  # pragma: no cover - q+2 candidates cannot all be parallel
        violations.append(
            {"code": "coverage", "index": None, "message": "no test direction found"}
        )
        return violations
    hits = sum(
        1
        for i in range(q)
        if cross(dirs[i], e) > 0 and cross(e, dirs[(i + 1) % q]) > 0
    )
    if hits != 1:
        violations.append(
            {
                "code": "coverage",
                "index": hits,
                "message": f"sectors wind {hits} times around the center, expected 1",
            }
        )
        return violations

    tris = [
        (patch.z, patch.ring[i], patch.ring[(i + 1) % q]) for i in range(q)
    ]
    for i in range(q):
        for j in range(i + 1, q):
            if not _triangles_separated(tris[i], tris[j]):
                violations.append(
                    {
                        "code": "overlap",
                        "index": (i, j),
                        "message": f"triangles {i} and {j} overlap",
                    }
                )
    return violations


def ring_vertex_convex(patch: TrianglePatch, i: int) -> bool:
    """True when the patch boundary turns left at ring vertex i.

    Equivalently the inner angle of the boundary polygon at ring[i] is
    below pi. Valid patches may have reflex ring vertices; some degenerate
    constructions are excluded by requiring convexity here.
    """
    q = patch.q
    a, b, c = patch.ring[(i - 1) % q], patch.ring[i % q], patch.ring[(i + 1) % q]
    return orient(a, b, c) > 0


def _shared_edge_frame(K1: Triangle, K2: Triangle) -> tuple[Point, Point, Point, Point]:
    """Return (A, B, C, D): shared edge A->B as K1 runs it, apexes C and D."""
    v1, v2 = K1.vertices(), K2.vertices()
    shared = [p for p in v1 if p in v2]
    if len(shared) != 2:
        raise NoSharedEdge(f"triangles share {len(shared)} vertices, need 2")
    idx = [i for i, p in enumerate(v1) if p in shared]
    # the two shared vertices are cyclically adjacent; find the directed order
    if (idx[0] + 1) % 3 == idx[1]:
        a_i, b_i = idx
    else:
        b_i, a_i = idx
    A, B = v1[a_i], v1[b_i]
    C = v1[3 - a_i - b_i]
    D = next(p for p in v2 if p not in shared)
    return A, B, C, D


def pair_cd(K1: Triangle, K2: Triangle) -> tuple[Scalar, Scalar]:
    """Normalize a shared-edge pair to the two-parameter family.

    Pull both triangles back by the map sending K1 to the unit triangle with
    the shared edge on [0,1] x {0}. The image of the opposite apex D then
    determines (c, d) with third vertex (-c/(d-c), 1/(d-c)); disjoint pairs
    have d < c.
    """
    A, B, C, D = _shared_edge_frame(K1, K2)
    phi = map_to_unit(Triangle(A, B, C))
    dx, dy = phi.apply(D)
    if dy == 0:
        raise DegenerateConfiguration("fourth vertex on the shared edge line")
    if dy > 0:
        raise DegenerateConfiguration("triangles lie on the same side of the shared edge")
    c = -dx / dy
    d = c + 1 / dy
    return c, d


def classify_fourth_vertex(K1: Triangle, D: Point, n: int) -> CriticalClass:
    """Classify D against the critical sets of K1 = (A, B, C) for degree n.

    The shared edge is the listed edge A->B; the partner triangle is
    (B, A, D) on the far side. Critical placements (where the complement
    intersection stays one-dimensional) are: the ray from C through A
    extended past A (LineAB), the ray from C through B past B (LineAC), the
    point A + B - C (QPoint), and for n = 2 only the whole line through
    2A - C parallel to the shared edge (QuadLine, which contains QPoint).
    """
    if n < 2:
        raise InconsistentParams("critical sets are defined for n >= 2")
    phi = map_to_unit(K1)
    dx, dy = phi.apply(D)
    if dy == 0:
        raise DegenerateConfiguration("fourth vertex on the shared edge line")
    if dy > 0:
        raise DegenerateConfiguration("fourth vertex on the interior side of the shared edge")
    c = -dx / dy
    d = c + 1 / dy
    detail = {"c": c, "d": d}
    if point_mode(D) == EXACT:
        tol = 0.0
    else:
        tol = FLOAT_REL_TOL * max(1.0, abs(float(c)), abs(float(d)))

    def near(value: Scalar, target: int) -> bool:
        return abs(float(value - target)) <= tol if tol else value == target

    if near(c, 1) and near(d, 0):
        return CriticalClass(Q_POINT, detail)
    if near(c, 0):
        return CriticalClass(LINE_AB, detail)
    if near(d, 1):
        return CriticalClass(LINE_AC, detail)
    if n == 2 and near(d - c, -1):
        return CriticalClass(QUAD_LINE, detail)
    return CriticalClass(NON_CRITICAL, detail)


def pair_critical_class(K1: Triangle, K2: Triangle, n: int) -> CriticalClass:
    """Frame the shared edge of a pair and classify the far apex."""
    A, B, C, D = _shared_edge_frame(K1, K2)
    return classify_fourth_vertex(Triangle(A, B, C), D, n)


def predicted_pair_dim(K1: Triangle, K2: Triangle, n: int) -> int:
    """Predicted dimension of the degree-n complement intersection: 0 or 1.

    First-degree complements always meet in a line. For n >= 2 the
    dimension is 1 exactly when the far apex sits in a critical set.
    """
    if n == 1:
        # still insist the pair is disjoint with a genuine shared edge
        pair_cd(K1, K2)
        return 1
    return 1 if pair_critical_class(K1, K2, n).is_critical else 0


def barycenters_collinear(patch: TrianglePatch) -> dict:
    """Find three consecutive triangles whose barycenters are not collinear.

    Returns {"exists_noncollinear_triple": bool, "witness": i or None} where
    i indexes the middle triangle of the triple (K_{i-1}, K_i, K_{i+1}).
    Every valid patch has such a triple.
    """
    if validate_patch(patch):
        raise InvalidPatch("patch invariants violated")
    q = patch.q
    centers = [patch.triangle(i).barycenter() for i in range(q)]
    tol = _cross_tol([patch.z, *patch.ring])
    for i in range(q):
        turn = orient(centers[(i - 1) % q], centers[i], centers[(i + 1) % q])
        if abs(float(turn)) > tol:
            return {"exists_noncollinear_triple": True, "witness": i}
    return {"exists_noncollinear_triple": False, "witness": None}


def lemma_barycenter_moment(K: Triangle, p) -> tuple[Scalar, Scalar]:
    """Weighted first-degree moment identity on one triangle.

    For deg p <= 1, the weighted integral of p over K equals p at the
    barycenter times the weighted area. Returns both sides as scalars;
    exact mode makes the equality exact.
    """
    from .polynomial import BivarPoly, inner_product

    mode = point_mode(K.A)
    one_poly = BivarPoly.constant(1, mode)
    lhs = inner_product(p, one_poly, K)
    mass = inner_product(one_poly, one_poly, K)
    mx, my = K.barycenter()
    rhs = p.eval(mx, my) * mass
    return lhs, rhs


def patch_theorem_check(patch: TrianglePatch, n: int):
    """Intersect the degree-n complements of every patch triangle.

    The expected dimension is 0 for every valid patch and n >= 1.
    """
    if n < 1:
        raise InconsistentParams("need n >= 1")
    if validate_patch(patch):
        raise InvalidPatch("patch invariants violated")
    from .intersection import intersect_many

    return intersect_many(n, patch.triangles())
