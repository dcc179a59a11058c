from __future__ import annotations

from fractions import Fraction
from numbers import Rational as _RationalABC
from typing import Union

Rational = Fraction
RationalLike = Union[int, Fraction, str]


def to_rational(value: RationalLike) -> Fraction:
    """Convert an exact scalar to a Fraction.

    Accepts integers, Fractions and rational strings such as ``"3/4"`` or ``"-2"``. Floats are rejected:
    every order relation in this package is decided exactly.

    Raises:
        TypeError: the value is a float, a bool or another inexact type
        ValueError: a string does not parse as a rational
    """
    if isinstance(value, bool):
        raise TypeError("Booleans are not scalars")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, _RationalABC):
        return Fraction(value.numerator, value.denominator)
    if isinstance(value, str):
        text = value.strip()
        if "." in text or "e" in text.lower():
            raise ValueError(f"Rational strings must be of the form p or p/q, got {value!r}")
        return Fraction(text)
    raise TypeError(f"Cannot convert {type(value).__name__} to an exact rational")


def format_rational(value: Fraction) -> str:
    """Canonical ``p/q`` rendering, integers without a denominator."""
    return str(value)


def approx(value: Fraction, digits: int = 6) -> str:
    """Non-authoritative decimal rendering, only for human eyes."""
    return f"~{float(value):.{digits}g}"


def dyadic(exponent: int) -> Fraction:
    """2**-exponent as an exact rational."""
    return Fraction(1, 2**exponent)
