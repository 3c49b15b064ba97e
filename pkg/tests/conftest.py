"""Shared helpers: random rational geometry and an independent quadrature."""

from __future__ import annotations

import math
import random
from fractions import Fraction

import numpy as np
import pytest

from triortho.geometry import Triangle, TrianglePatch, validate_patch


def rand_fraction(rng: random.Random, span: int = 6, den: int = 6) -> Fraction:
    return Fraction(rng.randint(-span * den, span * den), rng.randint(1, den))


def random_triangle(rng: random.Random, span: int = 4) -> Triangle:
    """Exact triangle with counterclockwise vertices and area bounded away from 0."""
    while True:
        pts = [(rand_fraction(rng, span), rand_fraction(rng, span)) for _ in range(3)]
        a, b, c = pts
        area2 = (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])
        if area2 > Fraction(1, 4):
            return Triangle(a, b, c)
        if area2 < -Fraction(1, 4):
            return Triangle(a, c, b)


def random_shared_edge_pair(rng: random.Random) -> tuple[Triangle, Triangle]:
    """Disjoint pair sharing the edge A-B, apexes on opposite sides."""
    K1 = random_triangle(rng)
    A, B, C = K1.vertices()
    while True:
        u = rand_fraction(rng, 2, 8)
        v = rand_fraction(rng, 2, 8)
        if v > 0:
            break
    # D = A + u (B - A) - v (C - A) sits strictly on the far side
    D = (
        A[0] + u * (B[0] - A[0]) - v * (C[0] - A[0]),
        A[1] + u * (B[1] - A[1]) - v * (C[1] - A[1]),
    )
    return K1, Triangle(B, A, D)


def random_patch(rng: random.Random, q: int, max_tries: int = 400) -> TrianglePatch:
    """Valid exact-rational fan with q triangles around a random center."""
    for _ in range(max_tries):
        z = (rand_fraction(rng, 2, 4), rand_fraction(rng, 2, 4))
        cuts = sorted(rng.uniform(0.0, 2.0 * math.pi) for _ in range(q))
        gaps = [
            (cuts[(i + 1) % q] - cuts[i]) % (2.0 * math.pi) or 2.0 * math.pi
            for i in range(q)
        ]
        if min(gaps) < 0.3 or max(gaps) > math.pi - 0.15:
            continue
        ring = []
        for t in cuts:
            r = rng.uniform(0.8, 2.2)
            ring.append(
                (
                    z[0] + Fraction(r * math.cos(t)).limit_denominator(1000),
                    z[1] + Fraction(r * math.sin(t)).limit_denominator(1000),
                )
            )
        patch = TrianglePatch(z, tuple(ring))
        if not validate_patch(patch):
            return patch
    raise RuntimeError(f"no valid patch with q={q} found")


# -- independent quadrature oracle ----------------------------------------


def quad_T1(f, order: int = 14) -> float:
    """Gauss-Legendre quadrature over the unit triangle via a square map.

    Exact for polynomial integrands up to degree 2 * order - 2 in each
    mapped variable; serves as the independent check for closed-form
    integration.
    """
    nodes, weights = np.polynomial.legendre.leggauss(order)
    u = 0.5 * (nodes + 1.0)
    w = 0.5 * weights
    total = 0.0
    for i in range(order):
        for j in range(order):
            x = u[i] * (1.0 - u[j])
            y = u[j]
            total += w[i] * w[j] * (1.0 - u[j]) * f(x, y)
    return total


@pytest.fixture
def rng() -> random.Random:
    return random.Random(20240817)
