"""Dual-mode scalar layer: exact rationals or 64-bit floats.

Exact values are `fractions.Fraction` (always lowest terms, positive
denominator); float values are plain `float`. Every higher module threads
these through unchanged, so a whole computation runs either fully exact or
fully in floating point. Mixing modes in one operation is an error, and
exact -> float conversion only ever happens through `to_float`.
"""

from __future__ import annotations

from fractions import Fraction
from math import factorial
from typing import Union

from .errors import DivideByZero, ModeMismatch, ParseError

Scalar = Union[Fraction, float]

EXACT = "exact"
FLOAT = "float"


def mode_of(x: Scalar) -> str:
    """Return "exact" for Fraction-valued scalars, "float" for floats."""
    if isinstance(x, Fraction):
        return EXACT
    if isinstance(x, float):
        return FLOAT
    # plain ints are honorary exact values; they arise from literals
    if isinstance(x, int):
        return EXACT
    raise ModeMismatch(f"not a scalar: {x!r}")


def common_mode(*xs: Scalar) -> str:
    """Mode shared by all arguments; raises ModeMismatch if they disagree."""
    modes = {mode_of(x) for x in xs}
    if len(modes) != 1:
        raise ModeMismatch(f"mixed scalar modes {sorted(modes)}")
    return modes.pop()


def coerce(x: Union[Scalar, int], mode: str) -> Scalar:
    """Bring an int or scalar into the given mode.

    Ints coerce freely; a Fraction asked to become float (or vice versa)
    raises, because silent cross-mode conversion is exactly what this layer
    is meant to prevent.
    """
    if isinstance(x, bool):
        raise ModeMismatch(f"not a scalar: {x!r}")
    if isinstance(x, int):
        return Fraction(x) if mode == EXACT else float(x)
    if mode_of(x) != mode:
        raise ModeMismatch(f"cannot silently convert {x!r} to {mode} mode")
    return x


def zero(mode: str) -> Scalar:
    return Fraction(0) if mode == EXACT else 0.0


def one(mode: str) -> Scalar:
    return Fraction(1) if mode == EXACT else 1.0


def scalar_arith(a: Scalar, b: Scalar, op: str) -> Scalar:
    """Combine two same-mode scalars with add, sub, mul, or div."""
    mode = common_mode(a, b)
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        if b == 0:
            raise DivideByZero(f"division by zero in {mode} mode")
        return a / b
    raise ParseError(f"unknown scalar op {op!r}")


def to_float(x: Scalar) -> float:
    """Explicit conversion to float mode (the only sanctioned crossing)."""
    return float(x)


def rational_factorial_ratio(a: int, b: int, c: int) -> Fraction:
    """Exact value of a! b! c! / (a+b+c+2)!.

    This is the moment of the monomial x^a y^b (1-x-y)^c over the unit
    triangle, the one integral every exact inner product reduces to.
    """
    if a < 0 or b < 0 or c < 0:
        raise ParseError("factorial ratio needs nonnegative integers")
    return Fraction(
        factorial(a) * factorial(b) * factorial(c), factorial(a + b + c + 2)
    )


def scalar_to_string(x: Scalar) -> str:
    """Canonical serialization: "p/q" for exact values, repr for floats.

    Whole numbers print without the denominator.
    """
    if mode_of(x) == EXACT:
        f = Fraction(x)
        if f.denominator == 1:
            return str(f.numerator)
        return f"{f.numerator}/{f.denominator}"
    return repr(x)


def scalar_from_string(s: str, mode: str) -> Scalar:
    """Parse "p/q", integer, or decimal strings into the requested mode."""
    s = s.strip()
    try:
        if mode == EXACT:
            return Fraction(s)
        return float(Fraction(s)) if "/" in s else float(s)
    except (ValueError, ZeroDivisionError) as exc:
        raise ParseError(f"bad scalar literal {s!r}") from exc
