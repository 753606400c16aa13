"""Fractions num / prod_j P(z_j)^{d_j} with P(z) = (q+1) z^q - 1.

Slot 0 of the numerator is the generic critical point c (reduced by
c^q = 1/(q+1)); slots 1.. are curve variables.  Only powers of P ever appear
in denominators, so a fraction is a numerator plus an exponent vector.
"""
from __future__ import annotations

from functools import lru_cache

from ..kernel.modring import RingElement
from ..kernel.mpoly import MASK, MPoly, unit
from ..kernel.rational import mpq


def cmod(q: int):
    return (q, mpq(1, q + 1))


@lru_cache(maxsize=None)
def P_poly(q: int, slot: int, nvars: int) -> MPoly:
    return MPoly({q * unit(slot): mpq(q + 1), 0: mpq(-1)}, nvars, cmod(q))


@lru_cache(maxsize=4096)
def P_power(q: int, slot: int, nvars: int, k: int) -> MPoly:
    if k == 0:
        return MPoly.const(1, nvars, cmod(q))
    if k == 1:
        return P_poly(q, slot, nvars)
    h = P_power(q, slot, nvars, k // 2)
    out = h * h
    return out * P_poly(q, slot, nvars) if k % 2 else out


def P_coeffs(q: int) -> list:
    return [mpq(-1)] + [mpq(0)] * (q - 1) + [mpq(q + 1)]


class PFrac:
    __slots__ = ("num", "den", "q")

    def __init__(self, num: MPoly, den: tuple, q: int):
        self.num = num
        self.den = den
        self.q = q

    @classmethod
    def zero(cls, q: int, nvars: int) -> "PFrac":
        return cls(MPoly({}, nvars, cmod(q)), (0,) * nvars, q)

    @classmethod
    def from_poly(cls, p: MPoly, q: int) -> "PFrac":
        return cls(p, (0,) * p.nvars, q)

    @classmethod
    def from_ring(cls, e: RingElement, q: int, nvars: int) -> "PFrac":
        return cls(ring_to_mpoly(e, q, nvars), (0,) * nvars, q)

    @property
    def nvars(self) -> int:
        return self.num.nvars

    def __bool__(self):
        return bool(self.num)

    def __repr__(self):
        return f"PFrac({self.num!r} / P^{self.den})"

    def _lift(self, den: tuple) -> MPoly:
        num = self.num
        for slot, (a, b) in enumerate(zip(self.den, den)):
            if b > a:
                num = num * P_power(self.q, slot, self.nvars, b - a)
        return num

    def __add__(self, other):
        if not isinstance(other, PFrac):
            if other == 0:
                return self
            other = PFrac(MPoly.const(other, self.nvars, cmod(self.q)), (0,) * self.nvars, self.q)
        if not other.num:
            return self
        if not self.num:
            return other
        if self.den == other.den:
            return PFrac(self.num + other.num, self.den, self.q)
        den = tuple(max(a, b) for a, b in zip(self.den, other.den))
        return PFrac(self._lift(den) + other._lift(den), den, self.q)

    __radd__ = __add__

    def __neg__(self):
        return PFrac(-self.num, self.den, self.q)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, PFrac):
            if not self.num or not other.num:
                return PFrac.zero(self.q, self.nvars)
            return PFrac(self.num * other.num, tuple(a + b for a, b in zip(self.den, other.den)), self.q)
        if isinstance(other, RingElement):
            return PFrac(self.num * ring_to_mpoly(other, self.q, self.nvars), self.den, self.q)
        if isinstance(other, MPoly):
            return PFrac(self.num * other, self.den, self.q)
        if not other:
            return PFrac.zero(self.q, self.nvars)
        return PFrac(self.num.scale(other), self.den, self.q)

    __rmul__ = __mul__

    def with_den(self, den: tuple) -> "PFrac":
        if any(b < a for a, b in zip(self.den, den)):
            raise ValueError("target denominator must dominate")
        return PFrac(self._lift(den), den, self.q)


def ring_to_mpoly(e: RingElement, q: int, nvars: int) -> MPoly:
    return MPoly({i: a for i, a in enumerate(e.coeffs) if a}, nvars, cmod(q))


def trace_product(A: MPoly, B: MPoly, q: int) -> MPoly:
    """Tr_c(A * B) without forming the full product.

    With c^q reduced away, Tr(c^e) = q for e = 0 and 0 for 0 < e < q, so only
    pairs with e_A + e_B in {0, q} contribute.
    """
    ga: dict = {}
    for k, a in A.terms.items():
        ga.setdefault(k & MASK, {})[k - (k & MASK)] = a
    gb: dict = {}
    for k, b in B.terms.items():
        gb.setdefault(k & MASK, {})[k - (k & MASK)] = b
    nv = max(A.nvars, B.nvars)
    out = MPoly({}, nv)
    r = mpq(1, q + 1)
    for e, ta in ga.items():
        f = (q - e) % q
        tb = gb.get(f)
        if tb is None:
            continue
        prod = MPoly(ta, nv) * MPoly(tb, nv)
        out.add_scaled(prod, q * (r if e else 1))
    return out


def reduce_poles(num: MPoly, den: tuple, q: int, slots) -> tuple[MPoly, tuple]:
    """Cancel common factors P(z_slot) between numerator and denominator."""
    den = list(den)
    pc = P_coeffs(q)
    for s in slots:
        while den[s] > 0 and num:
            quo, rem = num.divmod_univariate(s, pc)
            if rem:
                break
            num = quo
            den[s] -= 1
        if not num:
            den[s] = 0
    return num, tuple(den)


def shift_slot_to_c(p: MPoly, slot: int, q: int) -> MPoly:
    """Substitute z_slot -> c + t, with t stored in the same slot."""
    groups = p.collect(slot)
    out = MPoly({}, p.nvars, cmod(q))
    for a, coeff in groups.items():
        out = out + coeff * _c_plus_t_power(q, slot, p.nvars, a)
    return out


@lru_cache(maxsize=4096)
def _c_plus_t_power(q: int, slot: int, nvars: int, a: int) -> MPoly:
    base = MPoly({unit(0): mpq(1), unit(slot): mpq(1)}, nvars, cmod(q))
    return base**a
