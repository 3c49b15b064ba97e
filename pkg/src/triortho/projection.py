"""Projection operator onto lower degree and its injectivity constants.

For a triangle patch, project each polynomial of degree up to n onto the
polynomials of degree below n, triangle by triangle, under the
bubble-weighted inner product. Three constants quantify how much of the
polynomial survives:

* c_prime: weighted Rayleigh quotient of the projected images,
* c_doubleprime: reference-triangle ratio of weighted to unweighted mass,
* c_check: projected images against the plain L2 norm on the patch union.

Everything reduces to fixed rational matrices on the reference triangle
(weighted Gram, projected-pair Gram, unweighted Gram) combined with one
coefficient-pullback matrix per patch triangle, so exact patches get exact
Gram assembly and the only float step is the final symmetric eigensolve.
"""

from __future__ import annotations

import math
import os
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import factorial
from typing import Optional, Sequence

import numpy as np

from .errors import EmptyFamily, InconsistentParams, InvalidPatch
from .geometry import (
    Triangle,
    TrianglePatch,
    map_from_unit,
    map_to_unit,
    point_mode,
    validate_patch,
)
from .linalg import exact_solve, generalized_eigmin
from .polynomial import (
    BivarPoly,
    affine_substitute,
    coeff_vector,
    from_coeff_vector,
    graded_dim,
    graded_monomials,
)
from .scalar import EXACT, FLOAT

ANGLE_TOL = 1e-8


# -- reference-triangle matrices ------------------------------------------


@lru_cache(maxsize=None)
def reference_weighted_gram(n: int) -> tuple[tuple[Fraction, ...], ...]:
    """Gram of graded monomials of degree <= n on T1 under the bubble weight."""
    mons = graded_monomials(n)
    out = []
    for (a, b) in mons:
        row = []
        for (c, d) in mons:
            A, B = a + c + 1, b + d + 1
            row.append(Fraction(factorial(A) * factorial(B), factorial(A + B + 3)))
        out.append(tuple(row))
    return tuple(out)


@lru_cache(maxsize=None)
def reference_unweighted_gram(n: int) -> tuple[tuple[Fraction, ...], ...]:
    """Plain L2 Gram of graded monomials of degree <= n on T1."""
    mons = graded_monomials(n)
    out = []
    for (a, b) in mons:
        row = []
        for (c, d) in mons:
            A, B = a + c, b + d
            row.append(Fraction(factorial(A) * factorial(B), factorial(A + B + 2)))
        out.append(tuple(row))
    return tuple(out)


@lru_cache(maxsize=None)
def _projected_pair_gram(n: int) -> tuple[tuple[Fraction, ...], ...]:
    """S with (a, b) entry (Pi m_a, Pi m_b) under the T1 weight.

    Pi is the weighted projection onto degree <= n-1. With C the cross
    Gram (rows: low monomials, cols: all monomials) and W the low-degree
    weighted Gram, S = C^T W^{-1} C.
    """
    big = reference_weighted_gram(n)
    N = graded_dim(n)
    M = graded_dim(n - 1)
    # graded ordering nests by degree, so C is the top M rows of the big Gram
    C = [row[:N] for row in big[:M]]
    W = [row[:M] for row in big[:M]]
    X = [exact_solve(W, [C[i][b] for i in range(M)]) for b in range(N)]
    # X[b] = W^{-1} C e_b ; S[a][b] = (C e_a) . X[b]
    S = [
        tuple(sum(C[i][a] * X[b][i] for i in range(M)) for b in range(N))
        for a in range(N)
    ]
    return tuple(S)


def _solve_projection_coords(n: int, vec: Sequence[Fraction]) -> list[Fraction]:
    """Reference-coordinates of the weighted projection onto degree <= n-1."""
    big = reference_weighted_gram(n)
    M = graded_dim(n - 1)
    W = [row[:M] for row in big[:M]]
    rhs = [sum(big[j][b] * vec[b] for b in range(len(vec))) for j in range(M)]
    return exact_solve(W, rhs)


# -- patch Gram assembly ---------------------------------------------------


def _pullback_columns(K: Triangle, n: int):
    """Coefficient vectors of every graded monomial composed with T1 -> K."""
    fwd = map_from_unit(K)
    mode = point_mode(K.A)
    cols = []
    for (r, m) in graded_monomials(n):
        mono = BivarPoly.from_dict({(r, m): 1}, mode)
        cols.append(coeff_vector(affine_substitute(mono, fwd), n))
    return cols, fwd.det()


def _patch_grams(patch: TrianglePatch, n: int):
    """(G_pi, G_weighted, G_plain) over the monomial basis of P_n(union)."""
    if validate_patch(patch):
        raise InvalidPatch("patch invariants violated")
    if n < 1:
        raise InconsistentParams("need n >= 1")
    mode = point_mode(patch.z)
    N = graded_dim(n)
    W = reference_weighted_gram(n)
    S = _projected_pair_gram(n)
    U = reference_unweighted_gram(n)
    if mode == EXACT:
        GP = [[Fraction(0)] * N for _ in range(N)]
        GW = [[Fraction(0)] * N for _ in range(N)]
        GL = [[Fraction(0)] * N for _ in range(N)]
        for K in patch.triangles():
            cols, det = _pullback_columns(K, n)
            det = abs(det)
            for R, G in ((W, GW), (S, GP), (U, GL)):
                RV = [
                    [sum(R[i][j] * cols[b][j] for j in range(N)) for b in range(N)]
                    for i in range(N)
                ]
                for a in range(N):
                    va = cols[a]
                    for b in range(a, N):
                        G[a][b] += det * sum(va[i] * RV[i][b] for i in range(N))
        for G in (GP, GW, GL):
            for a in range(N):
                for b in range(a):
                    G[a][b] = G[b][a]
        return GP, GW, GL
    Wf = np.array([[float(x) for x in row] for row in W])
    Sf = np.array([[float(x) for x in row] for row in S])
    Uf = np.array([[float(x) for x in row] for row in U])
    GP = np.zeros((N, N))
    GW = np.zeros((N, N))
    GL = np.zeros((N, N))
    for K in patch.triangles():
        cols, det = _pullback_columns(K, n)
        V = np.array(cols, dtype=float).T  # columns are basis images
        det = abs(det)
        GW += det * V.T @ Wf @ V
        GP += det * V.T @ Sf @ V
        GL += det * V.T @ Uf @ V
    return GP.tolist(), GW.tolist(), GL.tolist()


@lru_cache(maxsize=None)
def orthonormal_reference_basis(n: int) -> tuple[BivarPoly, ...]:
    """Weighted-orthonormal basis of degree <= n on T1, graded order.

    The underlying family is already orthogonal under the bubble weight,
    so orthonormalization is a rescale: norms come out exact and only the
    square root is float. Members are float polynomials.
    """
    from .orthobasis import proriol
    from .polynomial import inner_product
    from .geometry import unit_triangle

    T1 = unit_triangle(EXACT)
    out = []
    for m in range(n + 1):
        for k in range(m + 1):
            p = proriol(m, k)
            norm2 = inner_product(p, p, T1)
            out.append(p.to_float() * (1.0 / math.sqrt(norm2)))
    return tuple(out)


# -- the operator and the constants ---------------------------------------


def project(v: BivarPoly, patch: TrianglePatch, n: int) -> list[BivarPoly]:
    """Per-triangle weighted projection of v onto degree <= n-1.

    Component i is the projection within triangle K_i, returned in world
    coordinates. Exact for exact inputs.
    """
    if validate_patch(patch):
        raise InvalidPatch("patch invariants violated")
    if v.degree > n:
        raise InconsistentParams(f"degree {v.degree} exceeds n={n}")
    mode = point_mode(patch.z)
    out = []
    for K in patch.triangles():
        fwd = map_from_unit(K)
        ref = affine_substitute(v, fwd)
        vec = coeff_vector(ref, n)
        if mode == EXACT:
            coords = _solve_projection_coords(n, vec)
        else:
            big = reference_weighted_gram(n)
            M = graded_dim(n - 1)
            Wf = np.array([[float(x) for x in row[:M]] for row in big[:M]])
            Cf = np.array([[float(x) for x in row] for row in big[:M]])
            coords = np.linalg.solve(Wf, Cf @ np.asarray(vec, dtype=float)).tolist()
        ref_proj = from_coeff_vector(list(coords), n - 1, mode)
        out.append(affine_substitute(ref_proj, map_to_unit(K)))
    return out


def c_prime(patch: TrianglePatch, n: int) -> float:
    """Smallest Rayleigh quotient of projected mass against weighted mass."""
    GP, GW, _ = _patch_grams(patch, n)
    mode = point_mode(patch.z)
    return generalized_eigmin(GP, GW, "exact" if mode == EXACT else "float")


def c_doubleprime(n: int) -> float:
    """Reference-triangle ratio: weighted mass over plain mass, worst case.

    Patch-independent; the smallest generalized eigenvalue of the weighted
    against the unweighted monomial Gram on T1, degree <= n.
    """
    if n < 0:
        raise InconsistentParams("need n >= 0")
    W = reference_weighted_gram(n)
    U = reference_unweighted_gram(n)
    return generalized_eigmin([list(r) for r in W], [list(r) for r in U], "exact")


def c_check(patch: TrianglePatch, n: int) -> float:
    """Projected mass against the plain L2 norm on the patch union."""
    GP, _, GL = _patch_grams(patch, n)
    mode = point_mode(patch.z)
    return generalized_eigmin(GP, GL, "exact" if mode == EXACT else "float")


@dataclass(frozen=True)
class ConstantsReport:
    """All three constants for one patch and degree."""

    n: int
    c_prime: float
    c_doubleprime: float
    c_check: float
    patch: TrianglePatch


def constants_report(patch: TrianglePatch, n: int) -> ConstantsReport:
    return ConstantsReport(
        n=n,
        c_prime=c_prime(patch, n),
        c_doubleprime=c_doubleprime(n),
        c_check=c_check(patch, n),
        patch=patch,
    )


# -- patch parametrization -------------------------------------------------


@dataclass(frozen=True)
class PatchParams:
    """Angle/radius description of a patch: per-triangle angles and radii.

    Triangle i has its apex angle alphas[i] at the center, betas[i] at
    ring vertex i, gammas[i] at ring vertex i+1; radii[i] is the distance
    from the center to ring vertex i. The reconstruction places ring
    vertex 0 on the positive x axis.
    """

    alphas: tuple[float, ...]
    betas: tuple[float, ...]
    gammas: tuple[float, ...]
    radii: tuple[float, ...]

    def __post_init__(self) -> None:
        q = len(self.alphas)
        if q < 3:
            raise InconsistentParams("need at least three triangles")
        if not (len(self.betas) == len(self.gammas) == len(self.radii) == q):
            raise InconsistentParams("parameter tuples must share one length")

    @property
    def q(self) -> int:
        return len(self.alphas)


def params_from_patch(patch: TrianglePatch) -> PatchParams:
    """Extract angles and radii; works for exact or float patches."""
    if validate_patch(patch):
        raise InvalidPatch("patch invariants violated")
    zx, zy = float(patch.z[0]), float(patch.z[1])
    ring = [(float(x) - zx, float(y) - zy) for x, y in patch.ring]
    q = len(ring)

    def angle(u, v):
        cr = u[0] * v[1] - u[1] * v[0]
        dt = u[0] * v[0] + u[1] * v[1]
        return math.atan2(abs(cr), dt)

    alphas, betas, gammas, radii = [], [], [], []
    for i in range(q):
        P = ring[i]
        Q = ring[(i + 1) % q]
        radii.append(math.hypot(*P))
        alphas.append(angle(P, Q))
        zp = (-P[0], -P[1])
        pq = (Q[0] - P[0], Q[1] - P[1])
        betas.append(angle(zp, pq))
        zq = (-Q[0], -Q[1])
        qp = (-pq[0], -pq[1])
        gammas.append(angle(zq, qp))
    return PatchParams(tuple(alphas), tuple(betas), tuple(gammas), tuple(radii))


def patch_from_params(pp: PatchParams) -> TrianglePatch:
    """Rebuild the float patch with ring vertex 0 on the positive x axis.

    The angle sums and the sine-rule compatibility between angles and radii
    are required to hold to a small tolerance.
    """
    q = pp.q
    if abs(sum(pp.alphas) - 2 * math.pi) > ANGLE_TOL:
        raise InconsistentParams("apex angles must sum to a full turn")
    for i in range(q):
        a, b, g = pp.alphas[i], pp.betas[i], pp.gammas[i]
        if min(a, b, g) <= 0 or max(a, b, g) >= math.pi:
            raise InconsistentParams(f"triangle {i} has an angle outside (0, pi)")
        if abs(a + b + g - math.pi) > ANGLE_TOL:
            raise InconsistentParams(f"triangle {i} angles do not sum to pi")
        r0, r1 = pp.radii[i], pp.radii[(i + 1) % q]
        if r0 <= 0 or r1 <= 0:
            raise InconsistentParams("radii must be positive")
        edge = math.sqrt(r0 * r0 + r1 * r1 - 2 * r0 * r1 * math.cos(a))
        scale = max(r0, r1, 1.0)
        if abs(math.sin(b) * edge - r1 * math.sin(a)) > ANGLE_TOL * scale:
            raise InconsistentParams(f"triangle {i} violates the sine rule")
        if abs(math.sin(g) * edge - r0 * math.sin(a)) > ANGLE_TOL * scale:
            raise InconsistentParams(f"triangle {i} violates the sine rule")
    ring = []
    theta = 0.0
    for i in range(q):
        ring.append((pp.radii[i] * math.cos(theta), pp.radii[i] * math.sin(theta)))
        theta += pp.alphas[i]
    patch = TrianglePatch((0.0, 0.0), tuple(ring))
    if validate_patch(patch):
        raise InconsistentParams("parameters do not produce a valid patch")
    return patch


def _triangle_angles(a: float, r0: float, r1: float) -> tuple[float, float]:
    """Angles (beta, gamma) at the ring vertices given apex angle and radii."""
    px, py = r0, 0.0
    qx, qy = r1 * math.cos(a), r1 * math.sin(a)

    def angle(ux, uy, vx, vy):
        return math.atan2(abs(ux * vy - uy * vx), ux * vx + uy * vy)

    beta = angle(-px, -py, qx - px, qy - py)
    gamma = angle(-qx, -qy, px - qx, py - qy)
    return beta, gamma


def _params_for(alphas: Sequence[float], radii: Sequence[float]) -> PatchParams:
    q = len(alphas)
    betas, gammas = [], []
    for i in range(q):
        b, g = _triangle_angles(alphas[i], radii[i], radii[(i + 1) % q])
        betas.append(b)
        gammas.append(g)
    return PatchParams(tuple(alphas), tuple(betas), tuple(gammas), tuple(radii))


def _feasible(pp: PatchParams, delta: float, rho: float) -> bool:
    if any(r < rho * (1 - 1e-12) for r in pp.radii):
        return False
    lo = delta * (1 - 1e-12)
    return all(
        min(pp.alphas[i], pp.betas[i], pp.gammas[i]) >= lo for i in range(pp.q)
    )


def _sweep_eval(args: tuple) -> dict:
    pp_tuple, n, kind, c2 = args
    pp = PatchParams(*pp_tuple)
    patch = patch_from_params(pp)
    return {
        "kind": kind,
        "alphas": list(pp.alphas),
        "betas": list(pp.betas),
        "gammas": list(pp.gammas),
        "radii": list(pp.radii),
        "c_prime": c_prime(patch, n),
        "c_doubleprime": c2,
        "c_check": c_check(patch, n),
    }


def sweep_X(
    q: int,
    delta: float,
    rho: float,
    samples: int,
    n: int,
    seed: int = 0,
    workers: Optional[int] = None,
) -> dict:
    """Sample the compact patch family and minimize the c_check constant.

    The family consists of patches with q triangles, every triangle angle
    at least delta, and every radius at least rho. Sampling is uniform in
    the free apex angles with rejection, radii between rho and 3 rho, plus
    deterministic boundary candidates (symmetric fans at the radius floor,
    extreme apex angles). Identical seeds give identical results; worker
    count comes from the TRIORTHO_THREADS environment variable when not
    passed explicitly.
    """
    if q < 3 or rho <= 0 or samples < 0 or n < 1:
        raise InconsistentParams("need q >= 3, rho > 0, samples >= 0, n >= 1")
    if not 0 < delta <= math.pi / 3:
        raise InconsistentParams("delta must be in (0, pi/3]")
    if q * delta > 2 * math.pi + 1e-12 or 2 * math.pi > q * (math.pi - 2 * delta) + 1e-12:
        raise EmptyFamily("no patch satisfies the angle constraints")

    rng = random.Random(seed)
    amin, amax = delta, math.pi - 2 * delta
    candidates: list[tuple[PatchParams, str]] = []

    sym = [2 * math.pi / q] * q
    for radii in ([rho] * q, [rho if i % 2 == 0 else 3 * rho for i in range(q)]):
        pp = _params_for(sym, radii)
        if _feasible(pp, delta, rho):
            candidates.append((pp, "boundary"))
    spread = (2 * math.pi - amax) / (q - 1)
    if amin <= spread <= amax:
        skew = [amax] + [spread] * (q - 1)
        pp = _params_for(skew, [rho] * q)
        if _feasible(pp, delta, rho):
            candidates.append((pp, "boundary"))
    spread = (2 * math.pi - amin) / (q - 1)
    if amin <= spread <= amax:
        skew = [amin] + [spread] * (q - 1)
        pp = _params_for(skew, [rho] * q)
        if _feasible(pp, delta, rho):
            candidates.append((pp, "boundary"))

    attempts = 0
    max_attempts = max(1000, 200 * samples)
    found = 0
    while found < samples and attempts < max_attempts:
        attempts += 1
        rest = [rng.uniform(amin, amax) for _ in range(q - 1)]
        first = 2 * math.pi - sum(rest)
        if not amin <= first <= amax:
            continue
        radii = [rho * rng.uniform(1.0, 3.0) for _ in range(q)]
        pp = _params_for([first] + rest, radii)
        if not _feasible(pp, delta, rho):
            continue
        candidates.append((pp, "random"))
        found += 1
    if not candidates:
        raise EmptyFamily("sampling found no feasible patch")

    c2 = c_doubleprime(n)
    jobs = [
        ((pp.alphas, pp.betas, pp.gammas, pp.radii), n, kind, c2)
        for pp, kind in candidates
    ]
    if workers is None:
        workers = int(os.environ.get("TRIORTHO_THREADS", "1"))
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            rows = list(pool.map(_sweep_eval, jobs))
    else:
        rows = [_sweep_eval(job) for job in jobs]
    best = min(range(len(rows)), key=lambda i: rows[i]["c_check"])
    return {
        "min_c_check": rows[best]["c_check"],
        "argmin": candidates[best][0],
        "rows": rows,
    }
