"""Exact arithmetic: rationals, polynomials, truncated series, the critical-point ring."""
from .modring import ModulusRing, RingElement, critical_ring, ring_invert, ring_trace
from .mpoly import MPoly
from .polynomial import Poly, RationalFunction
from .rational import Rational, format_rational, parse_rational
from .series import Series, lagrange_invert, series_compose

TruncatedSeries = Series
ModulusRingElement = RingElement

__all__ = [
    "ModulusRing",
    "RingElement",
    "ModulusRingElement",
    "critical_ring",
    "ring_invert",
    "ring_trace",
    "MPoly",
    "Poly",
    "RationalFunction",
    "Rational",
    "format_rational",
    "parse_rational",
    "Series",
    "TruncatedSeries",
    "lagrange_invert",
    "series_compose",
]
