"""Exact rational scalars.

The public scalar type is :class:`fractions.Fraction`.  Hot loops use
``gmpy2.mpq``, which compares and hashes equal to ``Fraction``; values are
converted back with :func:`to_fraction` before leaving a module.
"""
from __future__ import annotations

from fractions import Fraction

from gmpy2 import mpq

Rational = Fraction

__all__ = ["Rational", "mpq", "to_fraction", "to_mpq", "format_rational", "parse_rational"]


def to_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    return Fraction(int(x.numerator), int(x.denominator))


def to_mpq(x):
    if isinstance(x, Fraction):
        return mpq(x.numerator, x.denominator)
    return mpq(x)


def format_rational(x) -> str:
    """Canonical text form: ``"n"`` for integers, ``"num/den"`` otherwise."""
    x = to_fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def parse_rational(text: str) -> Fraction:
    """Parse ``"num/den"`` or ``"n"``; rejects floats and zero denominators."""
    s = text.strip()
    if "/" in s:
        num, den = s.split("/", 1)
        n, d = int(num), int(den)
        if d == 0:
            raise ValueError(f"zero denominator in {text!r}")
        return Fraction(n, d)
    return Fraction(int(s))
