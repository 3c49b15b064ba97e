"""Complement-space intersections: spans, reduced systems, closed forms."""

import random
from fractions import Fraction

import pytest

from conftest import rand_fraction, random_shared_edge_pair
from triortho.errors import (
    EmptyFamily,
    InconsistentParams,
    IndexOutOfRange,
    ModeMismatch,
    ParseError,
)
from triortho.geometry import (
    Triangle,
    predicted_pair_dim,
    unit_triangle,
)
from triortho.intersection import (
    CdParams,
    alpha_recursion_dc_minus1,
    cd_forward_map,
    complement_basis_cd,
    det3,
    det3_closed,
    f_coefficient,
    f_rrm_closed,
    f_shift_closed_dc1,
    intersect_cd,
    intersect_many,
    intersect_pair,
    predicted_cd_dim,
    q_poly,
    reduced_system,
    reduced_system_nullity,
    triangle_cd,
)
from triortho.orthobasis import pnk
from triortho.polynomial import (
    BivarPoly,
    affine_substitute,
    graded_monomials,
    inner_product,
)

T1 = unit_triangle("exact")


def in_complement(p, K, n) -> bool:
    if p.degree != n:
        return False
    for mono in graded_monomials(n - 1):
        m = BivarPoly.from_dict({mono: 1}, "exact")
        if inner_product(p, m, K) != 0:
            return False
    return True


# -- parameters and geometry ------------------------------------------------


def test_cd_params_validation():
    with pytest.raises(InconsistentParams):
        CdParams(Fraction(2), Fraction(2))
    with pytest.raises(ModeMismatch):
        CdParams(Fraction(1), 0.5)
    cd = CdParams(Fraction(3), Fraction(1))
    assert cd.third_vertex() == (Fraction(3, 2), Fraction(-1, 2))


def test_triangle_cd_is_valid_both_orientations():
    lo = triangle_cd(CdParams(Fraction(3), Fraction(1)))  # partner below
    hi = triangle_cd(CdParams(Fraction(1), Fraction(3)))  # partner above
    for K in (lo, hi):
        assert isinstance(K, Triangle)


def test_forward_map_sends_members_into_partner_complement():
    rng = random.Random(13)
    for _ in range(5):
        c = rand_fraction(rng)
        d = rand_fraction(rng)
        if c == d:
            continue
        cd = CdParams(c, d)
        K = triangle_cd(cd)
        n = 3
        for p in complement_basis_cd(n, cd):
            assert in_complement(p, K, n)


def test_complement_basis_cd_is_substituted_reference():
    cd = CdParams(Fraction(2), Fraction(-1))
    amap = cd_forward_map(cd)
    basis = complement_basis_cd(2, cd)
    for k, p in enumerate(basis):
        assert (p - affine_substitute(pnk(2, k), amap)).is_zero()


# -- the three equivalent dimension computations ---------------------------


def test_dimension_three_ways_on_random_pairs(rng):
    for _ in range(25):
        K1, K2 = random_shared_edge_pair(rng)
        for n in (1, 2, 3):
            res = intersect_pair(n, K1, K2)
            predicted = predicted_pair_dim(K1, K2, n)
            assert res.dim == predicted
            from triortho.geometry import pair_cd

            c, d = pair_cd(K1, K2)
            assert reduced_system_nullity(n, CdParams(c, d)) == res.dim


def test_exceptional_dimension_table():
    cases = [
        (Fraction(0), Fraction(5), {1: 1, 2: 1, 3: 1, 4: 1}),
        (Fraction(4), Fraction(1), {1: 1, 2: 1, 3: 1, 4: 1}),
        (Fraction(3), Fraction(4), {1: 1, 2: 1, 3: 1, 4: 1}),
        (Fraction(3), Fraction(2), {1: 1, 2: 1, 3: 0, 4: 0}),
        (Fraction(1), Fraction(0), {1: 1, 2: 1, 3: 1, 4: 1}),
        (Fraction(5), Fraction(-7), {1: 1, 2: 0, 3: 0, 4: 0}),
        (Fraction(0), Fraction(1), {1: 2, 2: 3, 3: 4}),
    ]
    for c, d, table in cases:
        cd = CdParams(c, d)
        for n, want in table.items():
            assert predicted_cd_dim(n, cd) == want
            assert intersect_cd(n, cd).dim == want
            assert reduced_system_nullity(n, cd) == want


def test_intersection_basis_lies_in_both_complements():
    cd = CdParams(Fraction(4), Fraction(1))  # on an exceptional line
    for n in (2, 3):
        res = intersect_cd(n, cd)
        assert res.dim == 1
        for p in res.basis:
            assert in_complement(p, T1, n)
            assert in_complement(p, triangle_cd(cd), n)


def test_geometric_validity_flag():
    assert intersect_cd(2, CdParams(Fraction(3), Fraction(1))).geometrically_valid
    assert not intersect_cd(2, CdParams(Fraction(3), Fraction(4))).geometrically_valid


def test_float_mode_agrees_generically():
    cd = CdParams(0.75, -0.5)
    res = intersect_cd(3, cd)
    assert res.dim == 0
    assert res.rank_tolerance is not None and res.rank_tolerance < 1e-6
    crit = intersect_cd(3, CdParams(1.0, 0.0))
    assert crit.dim == 1


def test_intersect_many_order_invariant(rng):
    from conftest import random_patch

    patch = random_patch(rng, 4)
    tris = patch.triangles()
    base = intersect_many(2, tris)
    shuffled = list(tris)
    random.Random(0).shuffle(shuffled)
    assert intersect_many(2, shuffled).dim == base.dim


def test_intersect_many_needs_two():
    with pytest.raises(EmptyFamily):
        intersect_many(2, [T1])


# -- coefficient identities -------------------------------------------------


def test_f_coefficient_guards():
    cd = CdParams(Fraction(2), Fraction(1))
    with pytest.raises(IndexOutOfRange):
        f_coefficient(1, 2, 1, cd, 3)  # r > k
    with pytest.raises(IndexOutOfRange):
        f_coefficient(4, 1, 0, cd, 4)  # m < 1
    with pytest.raises(IndexOutOfRange):
        f_coefficient(3, 3, 2, cd, 4)  # r + m > n


def test_system_entries_vanish_below_diagonal():
    # column k of a row with index r > k is structurally zero
    cd = CdParams(Fraction(5, 2), Fraction(-3))
    n = 4
    M = reduced_system(n, cd)
    labels = [(r, m) for r in range(n) for m in range(1, n - r + 1)]
    for (r, m), row in zip(labels, M):
        for k in range(r):
            assert row[k] == 0


def test_diagonal_closed_form_random_points(rng):
    for n in range(2, 6):
        for _ in range(3):
            c, d = rand_fraction(rng), rand_fraction(rng)
            if c == d:
                continue
            cd = CdParams(c, d)
            for r in range(n):
                for m in range(1, n - r + 1):
                    assert f_coefficient(r, r, m, cd, n) == f_rrm_closed(r, m, cd, n)


def test_collapse_on_shifted_diagonal(rng):
    # d = c + 1 wipes out the diagonal and leaves the closed subdiagonal
    for n in range(2, 6):
        c = rand_fraction(rng)
        cd = CdParams(c, c + 1)
        for r in range(n):
            for m in range(1, n - r + 1):
                assert f_coefficient(r, r, m, cd, n) == 0
        for r in range(n - 1):
            for m in range(1, n - r + 1):
                if r + 1 + m > n:
                    continue
                got = f_coefficient(r + 1, r, m, cd, n)
                assert got == f_shift_closed_dc1(r, m, c, n)


def test_float_f_matches_exact():
    c, d = Fraction(7, 3), Fraction(-1, 2)
    cdx = CdParams(c, d)
    cdf = CdParams(float(c), float(d))
    for (k, r, m) in [(2, 2, 1), (3, 2, 1), (1, 0, 2)]:
        ex = f_coefficient(k, r, m, cdx, 4)
        fl = f_coefficient(k, r, m, cdf, 4)
        assert isinstance(fl, float)
        assert abs(fl - float(ex)) <= 1e-9 * max(1.0, abs(float(ex)))


def test_determinant_identity_and_vanishing(rng):
    for n in range(2, 6):
        for _ in range(4):
            c, d = rand_fraction(rng), rand_fraction(rng)
            if c == d:
                continue
            cd = CdParams(c, d)
            assert det3(n, cd) == det3_closed(n, cd)
    # exact zeros on the four exceptional lines
    t = Fraction(7, 5)
    for cd in (
        CdParams(Fraction(0), t),
        CdParams(t, Fraction(1)),
        CdParams(t, t + 1),
        CdParams(t, t - 1),
    ):
        assert det3_closed(3, cd) == 0
        assert det3(3, cd) == 0


# -- spanning polynomials ---------------------------------------------------


def test_spanning_polynomials_in_both_complements(rng):
    for n in range(1, 6):
        cases = [
            ("c0", Fraction(0), rand_fraction(rng) or Fraction(2)),
            ("d1", Fraction(5, 3), Fraction(1)),
            ("dc1", Fraction(-2), Fraction(-1)),
            ("q10", Fraction(1), Fraction(0)),
        ]
        if n == 1:
            cases.append(("n1", Fraction(3), Fraction(-2)))
        if n == 2:
            cases.append(("n2", Fraction(4), Fraction(3)))
        for case, c, d in cases:
            if c == d:
                continue
            p = q_poly(n, case, c=c, d=d)
            assert not p.is_zero()
            assert in_complement(p, T1, n)
            assert in_complement(p, triangle_cd(CdParams(c, d)), n)


def test_edge_quotient_polynomial_low_degree():
    p = q_poly(1, "q10", c=Fraction(1), d=Fraction(0))
    assert {(r, m): v for (r, m, v) in p.terms()} == {
        (0, 0): Fraction(-15),
        (1, 0): Fraction(30),
        (0, 1): Fraction(15),
    }


def test_degree_two_line_case_reduces_to_edge_case():
    # where the two exceptional lines meet, both constructions coincide
    lhs = q_poly(2, "n2", c=Fraction(2), d=Fraction(1))
    rhs = q_poly(2, "d1", c=Fraction(2), d=Fraction(1))
    assert (lhs - 6 * rhs).is_zero()


def test_degree_one_spanning_is_reference_combination():
    c, d = Fraction(3), Fraction(-1)
    p = q_poly(1, "n1", c=c, d=d)
    combo = (
        pnk(1, 0) * (Fraction(1 - d - c) / 2)
        + pnk(1, 1) * (Fraction(3) * (d - c - 1) / 2)
    )
    amap = cd_forward_map(CdParams(c, d))
    assert (p - affine_substitute(combo, amap)).is_zero() or (
        p - combo
    ).is_zero()


def test_q_poly_guards():
    with pytest.raises(ParseError):
        q_poly(2, "bogus", c=Fraction(1), d=Fraction(0))
    with pytest.raises(InconsistentParams):
        q_poly(3, "n2", c=Fraction(1), d=Fraction(0))
    with pytest.raises(InconsistentParams):
        q_poly(1, "n1")  # this branch needs both parameters


def test_alpha_recursion_solves_corner_rows():
    # the two-term recursion pins the top coefficients; rows with
    # r >= n - 2 vanish, and for n > 2 an early row stays nonzero, which
    # is exactly why the line d = c - 1 stops being exceptional
    for n in (2, 3, 4):
        for c in (Fraction(3), Fraction(-2), Fraction(5, 2)):
            cd = CdParams(c, c - 1)
            a1, a2 = alpha_recursion_dc_minus1(n, c)
            alpha = [Fraction(0)] * (n + 1)
            alpha[n], alpha[n - 1], alpha[n - 2] = Fraction(1), a1, a2
            M = reduced_system(n, cd)
            labels = [(r, m) for r in range(n) for m in range(1, n - r + 1)]
            residual = {
                rm: sum(row[k] * alpha[k] for k in range(n + 1))
                for rm, row in zip(labels, M)
            }
            for (r, m), v in residual.items():
                if r >= n - 2:
                    assert v == 0
            if n == 2:
                assert all(v == 0 for v in residual.values())
            else:
                assert residual[(0, 1)] != 0


def test_alpha_recursion_matches_line_spanning_polynomial():
    for c in (Fraction(3), Fraction(-4), Fraction(7, 2)):
        cd = CdParams(c, c - 1)
        a1, a2 = alpha_recursion_dc_minus1(2, c)
        amap = cd_forward_map(cd)
        combo = (
            affine_substitute(pnk(2, 2), amap)
            + affine_substitute(pnk(2, 1), amap) * a1
            + affine_substitute(pnk(2, 0), amap) * a2
        )
        span = q_poly(2, "n2", c=c, d=c - 1)
        # proportional: cross-multiply leading data
        ratio = None
        for (r, m, v) in span.terms():
            w = combo.coeff(r, m)
            assert w != 0
            if ratio is None:
                ratio = v / w
            else:
                assert v / w == ratio
        assert (span - combo * ratio).is_zero()


def test_reduced_system_shape():
    cd = CdParams(Fraction(2), Fraction(-1))
    for n in (1, 2, 3, 4):
        M = reduced_system(n, cd)
        assert len(M) == n * (n + 1) // 2
        assert all(len(row) == n + 1 for row in M)
