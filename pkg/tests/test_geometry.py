"""Triangles, affine maps, patch validity, critical classification."""

from fractions import Fraction

import pytest
from hypothesis import assume, given, strategies as st

from triortho import (
    AffineMap,
    BivarPoly,
    CdParams,
    DegenerateConfiguration,
    DegenerateTriangle,
    InconsistentParams,
    InvalidPatch,
    NoSharedEdge,
    SingularMap,
    Triangle,
    TrianglePatch,
    barycenters_collinear,
    classify_fourth_vertex,
    inner_product,
    lemma_barycenter_moment,
    map_from_unit,
    map_to_unit,
    pair_cd,
    pair_critical_class,
    patch_theorem_check,
    predicted_pair_dim,
    ring_vertex_convex,
    triangle_cd,
    unit_triangle,
    validate_patch,
)

F = Fraction

small = st.integers(min_value=-5, max_value=5).map(F)
points = st.tuples(small, small)


def square_patch():
    ring = ((F(1), F(-1)), (F(1), F(1)), (F(-1), F(1)), (F(-1), F(-1)))
    return TrianglePatch((F(0), F(0)), ring)


# ---------------------------------------------------------------- triangles


def test_collinear_vertices_rejected():
    with pytest.raises(DegenerateTriangle, match="collinear"):
        Triangle((F(0), F(0)), (F(1), F(1)), (F(2), F(2)))


def test_clockwise_order_rejected():
    with pytest.raises(DegenerateTriangle, match="clockwise"):
        Triangle((F(0), F(0)), (F(0), F(1)), (F(1), F(0)))


def test_barycenter_of_unit_triangle():
    assert unit_triangle().barycenter() == (F(1, 3), F(1, 3))


def test_mixed_mode_vertices_rejected():
    from triortho import ModeMismatch

    with pytest.raises(ModeMismatch):
        Triangle((0.0, 0.0), (F(1), F(0)), (F(0), F(1)))


# -------------------------------------------------------------- affine maps


@st.composite
def invertible_maps(draw):
    a, b, c, d = (draw(small) for _ in range(4))
    assume(a * d - b * c != 0)
    e, f = draw(small), draw(small)
    return AffineMap(((a, b), (c, d)), (e, f))


@given(invertible_maps(), points)
def test_inverse_round_trip(phi, p):
    assert phi.inverse().apply(phi.apply(p)) == p
    assert phi.apply(phi.inverse().apply(p)) == p


@given(invertible_maps(), invertible_maps(), points)
def test_compose_is_application_order(phi, psi, p):
    assert phi.compose(psi).apply(p) == phi.apply(psi.apply(p))


def test_singular_map_rejected():
    with pytest.raises(SingularMap):
        AffineMap(((F(1), F(2)), (F(2), F(4))), (F(0), F(0)))


def test_unit_maps_hit_vertices():
    K = Triangle((F(2), F(1)), (F(5), F(2)), (F(3), F(4)))
    fwd = map_from_unit(K)
    assert fwd.apply((F(0), F(0))) == K.A
    assert fwd.apply((F(1), F(0))) == K.B
    assert fwd.apply((F(0), F(1))) == K.C
    back = map_to_unit(K)
    assert back.apply(K.B) == (F(1), F(0))
    assert back.apply(K.C) == (F(0), F(1))


def test_forward_determinant_is_doubled_area(rng):
    from conftest import random_triangle

    for _ in range(10):
        K = random_triangle(rng)
        area2 = (K.B[0] - K.A[0]) * (K.C[1] - K.A[1]) - (K.B[1] - K.A[1]) * (
            K.C[0] - K.A[0]
        )
        assert map_from_unit(K).det() == area2 > 0


# ----------------------------------------------------------- patch validity


def test_patch_too_small():
    patch = TrianglePatch((F(0), F(0)), ((F(1), F(0)), (F(0), F(1))))
    codes = [v["code"] for v in validate_patch(patch)]
    assert codes == ["ring_size"]


def test_patch_duplicate_ring_vertex():
    patch = TrianglePatch(
        (F(0), F(0)), ((F(1), F(0)), (F(0), F(1)), (F(1), F(0)))
    )
    vio = validate_patch(patch)
    assert [v["code"] for v in vio] == ["duplicate_vertex"]
    assert vio[0]["index"] == (0, 2)


def test_patch_center_on_ring():
    patch = TrianglePatch(
        (F(1), F(0)), ((F(1), F(0)), (F(0), F(1)), (F(-1), F(0)))
    )
    assert "duplicate_vertex" in [v["code"] for v in validate_patch(patch)]


def test_patch_clockwise_sector():
    ring = ((F(1), F(-1)), (F(-1), F(-1)), (F(-1), F(1)), (F(1), F(1)))
    vio = validate_patch(TrianglePatch((F(0), F(0)), ring))
    assert all(v["code"] == "orientation" for v in vio)
    assert vio


def test_patch_degenerate_sector():
    # second ring vertex on the ray through the first
    ring = ((F(1), F(0)), (F(2), F(0)), (F(0), F(1)), (F(-1), F(-1)))
    vio = validate_patch(TrianglePatch((F(0), F(0)), ring))
    assert [v["code"] for v in vio] == ["degenerate_triangle"]
    assert vio[0]["index"] == 0


def test_patch_double_cover():
    # five rational directions stepping just under half a turn each time,
    # so the fan winds twice around the center
    ring = (
        (F(1), F(0)),
        (F(-4), F(3)),
        (F(1), F(-3)),
        (F(1), F(3)),
        (F(-4), F(-3)),
    )
    vio = validate_patch(TrianglePatch((F(0), F(0)), ring))
    assert [v["code"] for v in vio] == ["coverage"]
    assert vio[0]["index"] == 2


def test_square_patch_valid():
    assert validate_patch(square_patch()) == []


def test_float_patch_valid():
    patch = TrianglePatch(
        (0.0, 0.0), ((1.0, -1.0), (1.0, 1.0), (-1.0, 1.0), (-1.0, -1.0))
    )
    assert validate_patch(patch) == []


def test_ring_vertex_convexity():
    patch = square_patch()
    assert all(ring_vertex_convex(patch, i) for i in range(patch.q))
    dented = TrianglePatch(
        (F(0), F(0)),
        ((F(4), F(0)), (F(1), F(1)), (F(0), F(4)), (F(-4), F(0)), (F(0), F(-4))),
    )
    assert validate_patch(dented) == []
    flags = [ring_vertex_convex(dented, i) for i in range(dented.q)]
    assert flags == [True, False, True, True, True]


# ----------------------------------------------------- pair normal form


def test_pair_cd_recovers_parameters():
    for c, d in [(F(3), F(1)), (F(5, 2), F(-1, 3)), (F(0), F(-2)), (F(1), F(0))]:
        K2 = triangle_cd(CdParams(c, d))
        assert pair_cd(unit_triangle(), K2) == (c, d)


@given(invertible_maps())
def test_pair_cd_affine_invariant(phi):
    if phi.det() < 0:
        (a, b), (c, d) = phi.linear
        phi = AffineMap(((c, d), (a, b)), phi.shift)
    K1 = unit_triangle()
    K2 = triangle_cd(CdParams(F(7, 2), F(1, 3)))
    img1 = Triangle(*(phi.apply(v) for v in K1.vertices()))
    img2 = Triangle(*(phi.apply(v) for v in K2.vertices()))
    assert pair_cd(img1, img2) == (F(7, 2), F(1, 3))


def test_pair_cd_error_paths():
    K1 = unit_triangle()
    with pytest.raises(DegenerateConfiguration, match="same side"):
        pair_cd(K1, Triangle((F(0), F(0)), (F(1), F(0)), (F(1), F(1))))
    with pytest.raises(NoSharedEdge):
        pair_cd(K1, Triangle((F(5), F(5)), (F(6), F(5)), (F(5), F(6))))


# ------------------------------------------------- critical classification


def canonical_class(D, n):
    return classify_fourth_vertex(unit_triangle(), D, n)


def test_classify_q_point():
    cls = canonical_class((F(1), F(-1)), 2)
    assert cls.tag == "QPoint" and cls.is_critical
    assert (cls.detail["c"], cls.detail["d"]) == (F(1), F(0))
    assert canonical_class((F(1), F(-1)), 5).tag == "QPoint"


def test_classify_edge_rays():
    # extension of the C->A ray past A
    for t in (F(1, 2), F(3)):
        assert canonical_class((F(0), -t), 3).tag == "LineAB"
    # extension of the C->B ray past B: points (s, 1 - s) with s > 1
    assert canonical_class((F(3), F(-2)), 3).tag == "LineAC"
    assert canonical_class((F(3, 2), F(-1, 2)), 4).tag == "LineAC"


def test_classify_quadratic_line_only_at_two():
    D = (F(3), F(-1))
    assert canonical_class(D, 2).tag == "QuadLine"
    assert canonical_class(D, 3).tag == "NonCritical"
    assert canonical_class(D, 4).tag == "NonCritical"


def test_classify_priority_on_overlaps():
    # (1, -1) sits on the quadratic line too; the point tag wins
    assert canonical_class((F(1), F(-1)), 2).tag == "QPoint"
    # (0, -1) sits on both the first edge ray and the quadratic line
    assert canonical_class((F(0), F(-1)), 2).tag == "LineAB"


def test_classify_generic_point():
    cls = canonical_class((F(1, 2), F(-2)), 3)
    assert cls.tag == "NonCritical" and not cls.is_critical


def test_classify_rejects_low_degree_and_bad_side():
    with pytest.raises(InconsistentParams):
        canonical_class((F(1), F(-1)), 1)
    with pytest.raises(DegenerateConfiguration):
        canonical_class((F(2), F(0)), 2)
    with pytest.raises(DegenerateConfiguration):
        canonical_class((F(1, 2), F(1, 2)), 2)


def test_classify_float_tolerance():
    assert canonical_class((1.0 + 1e-12, -1.0), 3).tag == "QPoint"
    assert canonical_class((1.0 + 1e-6, -1.0), 3).tag == "NonCritical"


def test_pair_class_ignores_vertex_order():
    K2 = triangle_cd(CdParams(F(3), F(2)))
    expected = pair_critical_class(unit_triangle(), K2, 2).tag
    assert expected == "QuadLine"
    for rot1 in range(3):
        for rot2 in range(3):
            v1 = unit_triangle().vertices()
            v2 = K2.vertices()
            K1r = Triangle(*(v1[(i + rot1) % 3] for i in range(3)))
            K2r = Triangle(*(v2[(i + rot2) % 3] for i in range(3)))
            assert pair_critical_class(K1r, K2r, 2).tag == expected
            assert pair_critical_class(K2r, K1r, 2).tag == expected


def test_predicted_pair_dim_cases():
    K1 = unit_triangle()
    crit = triangle_cd(CdParams(F(1), F(0)))
    generic = triangle_cd(CdParams(F(1, 4), F(-1, 4)))
    for n in (1, 2, 3, 4):
        assert predicted_pair_dim(K1, crit, n) == 1
    assert predicted_pair_dim(K1, generic, 1) == 1
    for n in (2, 3, 4):
        assert predicted_pair_dim(K1, generic, n) == 0
    quad = triangle_cd(CdParams(F(3), F(2)))
    assert predicted_pair_dim(K1, quad, 2) == 1
    assert predicted_pair_dim(K1, quad, 3) == 0


# --------------------------------------------- patch-level theorem helpers


def test_barycenter_witness_on_patches(rng):
    from conftest import random_patch

    res = barycenters_collinear(square_patch())
    assert res["exists_noncollinear_triple"] is True
    assert 0 <= res["witness"] < 4
    for _ in range(5):
        patch = random_patch(rng, rng.choice([3, 4, 5]))
        out = barycenters_collinear(patch)
        assert out["exists_noncollinear_triple"] is True


def test_barycenters_require_valid_patch():
    bad = TrianglePatch((F(0), F(0)), ((F(1), F(0)), (F(0), F(1))))
    with pytest.raises(InvalidPatch):
        barycenters_collinear(bad)


def test_moment_identity_for_affine_integrands(rng):
    from conftest import rand_fraction, random_triangle

    for _ in range(10):
        K = random_triangle(rng)
        p = BivarPoly.from_dict(
            {
                (0, 0): rand_fraction(rng),
                (1, 0): rand_fraction(rng),
                (0, 1): rand_fraction(rng),
            },
            "exact",
        )
        lhs, rhs = lemma_barycenter_moment(K, p)
        assert lhs == rhs


def test_moment_identity_fails_for_quadratics():
    p = BivarPoly.from_dict({(2, 0): F(1)}, "exact")
    lhs, rhs = lemma_barycenter_moment(unit_triangle(), p)
    assert lhs == F(1, 840)
    assert rhs == F(1, 1080)
    assert lhs != rhs


def test_patch_intersection_is_trivial():
    patch = square_patch()
    for n in (1, 2):
        res = patch_theorem_check(patch, n)
        assert res.dim == 0
        assert res.basis == ()
    with pytest.raises(InconsistentParams):
        patch_theorem_check(patch, 0)
    bad = TrianglePatch((F(0), F(0)), ((F(1), F(0)), (F(0), F(1))))
    with pytest.raises(InvalidPatch):
        patch_theorem_check(bad, 2)
