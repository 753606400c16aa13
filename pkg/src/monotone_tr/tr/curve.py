"""The spectral curve x = z(1 - z^q), y = z^{q-1}/(1 - z^q) and its local data.

All local expansions are at z = c + t where c is the generic root of
P(z) = (q+1) z^q - 1, i.e. coefficients live in Q[c]/(P).  Note x'(z) = -P(z).
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import comb

from ..kernel.modring import ModulusRing, RingElement, critical_ring
from ..kernel.polynomial import Poly, RationalFunction
from ..kernel.series import Series


@dataclass(frozen=True)
class SpectralCurve:
    q: int

    @property
    def x(self) -> Poly:
        return Poly([0, 1] + [0] * (self.q - 1) + [-1])

    @property
    def y(self) -> RationalFunction:
        return RationalFunction(Poly.monomial(self.q - 1), Poly([1] + [0] * (self.q - 1) + [-1]))

    @property
    def dx(self) -> Poly:
        return self.x.deriv()

    @property
    def P(self) -> Poly:
        return critical_point_value(self.q)

    @property
    def ring(self) -> ModulusRing:
        return critical_ring(self.q)


def critical_point_value(q: int) -> Poly:
    """P(z) = (q+1) z^q - 1; its roots are the critical points of x."""
    if q < 1:
        raise ValueError("q must be positive")
    return Poly([-1] + [0] * (q - 1) + [q + 1])


def taylor_at_c(poly: Poly, ring: ModulusRing) -> Series:
    """poly(c + t) as an exact polynomial in t with ring coefficients."""
    c = ring.gen
    cpow = [ring.one]
    for _ in range(poly.degree):
        cpow.append(cpow[-1] * c)
    coeffs = [ring.zero] * (poly.degree + 1)
    for a, pa in enumerate(poly.c):
        if pa:
            for j in range(a + 1):
                coeffs[j] = coeffs[j] + cpow[a - j] * (pa * comb(a, j))
    return Series(coeffs, 0, None, ring.zero)


@lru_cache(maxsize=None)
def local_x(q: int) -> Series:
    """x(c + t) - x(c), exact; valuation 2."""
    ring = critical_ring(q)
    s = taylor_at_c(SpectralCurve(q).x, ring)
    return Series([ring.zero] + s.coeffs[1:], 0, None, ring.zero) if s.lo == 0 else s


@lru_cache(maxsize=None)
def local_P_over_t(q: int) -> Series:
    """V(t) = P(c + t)/t, exact with V(0) = P'(c) invertible."""
    ring = critical_ring(q)
    s = taylor_at_c(critical_point_value(q), ring)
    if s.lo < 1:
        raise ArithmeticError("P(c) should vanish in the critical ring")
    return s.shift(-1)


@lru_cache(maxsize=None)
def local_V_power(q: int, d: int, cutoff: int) -> Series:
    """V(t)^{-d} up to t^cutoff."""
    ring = critical_ring(q)
    if d == 0:
        return Series([ring.one], 0, None, ring.zero)
    inv = local_P_over_t(q).inverse_to(cutoff)
    return (inv ** d).truncate(cutoff)


@lru_cache(maxsize=None)
def local_y(q: int, cutoff: int) -> Series:
    ring = critical_ring(q)
    curve = SpectralCurve(q)
    num = taylor_at_c(curve.y.num, ring)
    den = taylor_at_c(curve.y.den, ring)
    return (num * den.inverse_to(cutoff)).truncate(cutoff)


@lru_cache(maxsize=None)
def local_dx(q: int) -> Series:
    """x'(c + t) = -P(c + t), exact; valuation 1."""
    return -taylor_at_c(critical_point_value(q), critical_ring(q))


@lru_cache(maxsize=None)
def deck_series(q: int, order: int) -> Series:
    """sigma(t) = -t + a_2 t^2 + ... with x(c + sigma(t)) = x(c + t), up to t^order."""
    if order < 1:
        raise ValueError("order must be at least 1")
    ring = critical_ring(q)
    F = local_x(q)  # exact polynomial, valuation 2
    x2 = F[2]
    inv2x2 = 1 / (x2 * 2)
    sigma = [ring.zero, -ring.one]
    for n in range(2, order + 1):
        cur = Series(sigma, 0, n, ring.zero)
        lhs = F.compose(cur)[n + 1]
        rhs = F[n + 1]
        sigma.append((lhs - rhs) * inv2x2)
    return Series(sigma, 0, order, ring.zero)


def ring_series_value(s: Series, k: int) -> RingElement:
    return s[k]
