"""Univariate Jacobi polynomials via the terminating hypergeometric sum.

P_n^{(a,b)}(x) = ((a+1)_n / n!) * 2F1(-n, n+a+b+1; a+1; (1-x)/2).

Coefficients are always constructed in exact rational arithmetic (the sum
terminates, so this is a finite product-and-add); float consumers convert
afterwards. No recurrence is needed at the degrees this package uses.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial

from .errors import InconsistentParams
from .polynomial import UnivarPoly
from .scalar import EXACT, Scalar, mode_of


def shifted_factorial(a: Scalar, n: int) -> Scalar:
    """Rising product (a)_n = a (a+1) ... (a+n-1), with (a)_0 = 1."""
    if n < 0:
        raise InconsistentParams("shifted factorial needs n >= 0")
    out: Scalar = a * 0 + 1
    for i in range(n):
        out = out * (a + i)
    return out


@dataclass(frozen=True)
class JacobiParams:
    """Weight exponents and degree for one Jacobi polynomial."""

    alpha: Fraction
    beta: Fraction
    n: int

    def __post_init__(self) -> None:
        object.__setattr__(self, "alpha", Fraction(self.alpha))
        object.__setattr__(self, "beta", Fraction(self.beta))
        if self.alpha <= -1 or self.beta <= -1:
            raise InconsistentParams("Jacobi exponents must exceed -1")
        if self.n < 0:
            raise InconsistentParams("degree must be nonnegative")


@lru_cache(maxsize=None)
def jacobi_poly(params: JacobiParams) -> UnivarPoly:
    """Exact coefficient vector of P_n^{(alpha,beta)} in powers of x."""
    a, b, n = params.alpha, params.beta, params.n
    lead = Fraction(shifted_factorial(a + 1, n), factorial(n))
    # term j of the terminating sum, in the variable z = (1-x)/2
    zcoeffs = []
    for j in range(n + 1):
        num = shifted_factorial(Fraction(-n), j) * shifted_factorial(a + b + n + 1, j)
        den = shifted_factorial(a + 1, j) * factorial(j)
        zcoeffs.append(lead * num / den)
    # expand z^j = 2^-j (1-x)^j into powers of x
    xcoeffs = [Fraction(0)] * (n + 1)
    for j, cz in enumerate(zcoeffs):
        if cz == 0:
            continue
        scale = cz / 2**j
        for i in range(j + 1):
            xcoeffs[i] += scale * comb(j, i) * (-1) ** i
    return UnivarPoly.from_list(xcoeffs, EXACT)


def jacobi_eval(params: JacobiParams, x: Scalar) -> Scalar:
    """Evaluate P_n^{(alpha,beta)} at x, staying in x's scalar mode."""
    poly = jacobi_poly(params)
    if mode_of(x) == EXACT:
        return poly.eval(Fraction(x))
    return poly.to_float().eval(float(x))
