"""Ring-valued local series at the critical points shared by the recursion.

Everything here is a :class:`Series` in the local coordinate t = z - c with
coefficients in Q[c]/(P), cached per (q, cutoff).
"""
from __future__ import annotations

from functools import lru_cache

from ..kernel.modring import critical_ring
from ..kernel.series import Series
from .curve import deck_series, local_dx, local_P_over_t, local_y

_DECK_STEP = 8


def deck(q: int, order: int) -> Series:
    """Deck series to at least ``order``; orders are rounded up so caches are shared."""
    order = max(order, 4)
    order = -(-order // _DECK_STEP) * _DECK_STEP
    return deck_series(q, order)


@lru_cache(maxsize=None)
def sigma_inverse(q: int, cutoff: int) -> Series:
    return deck(q, cutoff + 2).inverse().truncate(cutoff)


@lru_cache(maxsize=None)
def sigma_deriv(q: int, cutoff: int) -> Series:
    return deck(q, cutoff + 1).deriv().truncate(cutoff)


@lru_cache(maxsize=None)
def sigma_power(q: int, a: int, cutoff: int) -> Series:
    """sigma(t)^a up to t^cutoff; a may be negative."""
    ring = critical_ring(q)
    if a == 0:
        return Series([ring.one], 0, None, ring.zero)
    if a > 0:
        base = deck(q, cutoff)
        prev = sigma_power(q, a - 1, cutoff)
        return (prev * base).truncate(cutoff)
    base = sigma_inverse(q, cutoff - a + 1)
    prev = sigma_power(q, a + 1, cutoff - a + 1)
    return (prev * base).truncate(cutoff)


@lru_cache(maxsize=None)
def sigma_pullback_basis(q: int, a: int, cutoff: int) -> Series:
    """sigma(t)^a * sigma'(t) up to t^cutoff."""
    out = sigma_power(q, a, cutoff + 1) * sigma_deriv(q, cutoff - min(a, 0) + 1)
    if out.cutoff is not None and out.cutoff < cutoff:
        raise ArithmeticError("pullback basis lost precision")
    return out.truncate(cutoff)


@lru_cache(maxsize=None)
def V_inverse_power(q: int, d: int, cutoff: int) -> Series:
    """V(t)^{-d} with V = P(c+t)/t, up to t^cutoff."""
    ring = critical_ring(q)
    if d == 0:
        return Series([ring.one], 0, None, ring.zero)
    inv = local_P_over_t(q).inverse_to(cutoff)
    return (inv**d).truncate(cutoff)


@lru_cache(maxsize=None)
def kernel_denominator_inverse(q: int, cutoff: int) -> Series:
    """1 / ((y(c+sigma) - y(c+t)) x'(c+t)); valuation -2."""
    n = cutoff + 4
    y = local_y(q, n + 2)
    ys = y.compose(deck(q, n + 2))
    den = ((ys - y) * local_dx(q)).truncate(n)
    return den.inverse().truncate(cutoff)


@lru_cache(maxsize=None)
def kernel_coefficient(q: int, k: int, cutoff: int) -> Series:
    """kappa_k = (sigma^k - t^k) / ((y(c+sigma) - y(c+t)) x'(c+t)) up to t^cutoff.

    The recursion kernel at z = c + t is
    1/2 sum_{k>=1} kappa_k(t) / (z0 - c)^{k+1} dz0 / dt.
    """
    ring = critical_ring(q)
    inv = kernel_denominator_inverse(q, cutoff - k + 2)
    diff = sigma_power(q, k, cutoff + 2) - Series.monomial(k, ring.one, None, ring.zero)
    return (diff * inv).truncate(cutoff)


@lru_cache(maxsize=None)
def omega02_diagonal(q: int, cutoff: int) -> Series:
    """omega_{0,2}(c+t, c+sigma(t)) / (dt dt) = sigma' / (t - sigma)^2."""
    t = Series.monomial(1, critical_ring(q).one, None, critical_ring(q).zero)
    diff = t - deck(q, cutoff + 4)
    inv = (diff * diff).truncate(cutoff + 4).inverse()
    return (inv * sigma_deriv(q, cutoff + 2)).truncate(cutoff)
