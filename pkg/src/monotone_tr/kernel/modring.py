"""Arithmetic in Q[c]/(P(c)) and the trace map to Q.

For the monotone curve the modulus is P(c) = (q+1) c^q - 1, whose roots are
the critical points of x(z) = z(1 - z^q).  An element stands for "the same
expression evaluated at every critical point at once"; summing over the
critical points is the trace.
"""
from __future__ import annotations

from functools import lru_cache

from ..errors import ZeroDivisor
from .polynomial import Poly, xgcd
from .rational import mpq, to_fraction


class ModulusRing:
    """The quotient ring Q[c]/(modulus)."""

    def __init__(self, modulus: Poly, name: str = "c"):
        if modulus.degree < 1:
            raise ValueError("modulus must have positive degree")
        self.modulus = modulus
        self.rank = modulus.degree
        self.name = name
        monic = modulus.monic()
        # c^rank = -(a_{rank-1} c^{rank-1} + ... + a_0)
        self._tail = tuple(-a for a in monic.c[:-1])
        self._power_sums = self._newton_power_sums(2 * self.rank)

    def __eq__(self, other):
        return isinstance(other, ModulusRing) and self.modulus == other.modulus

    def __hash__(self):
        return hash(self.modulus)

    def __repr__(self):
        return f"ModulusRing({self.modulus!r})"

    # -- construction -------------------------------------------------------
    def element(self, coeffs) -> "RingElement":
        return RingElement(self, self._reduce(list(coeffs)))

    def const(self, a) -> "RingElement":
        return RingElement(self, self._reduce([a]))

    @property
    def zero(self) -> "RingElement":
        return self.const(0)

    @property
    def one(self) -> "RingElement":
        return self.const(1)

    @property
    def gen(self) -> "RingElement":
        return self.element([0, 1])

    # -- internals ------------------------------------------------------------
    def _reduce(self, cs):
        r = self.rank
        cs = [mpq(a) for a in cs]
        for i in range(len(cs) - 1, r - 1, -1):
            a = cs[i]
            if a:
                for j, t in enumerate(self._tail):
                    cs[i - r + j] += a * t
        cs = cs[:r]
        cs += [mpq(0)] * (r - len(cs))
        return tuple(cs)

    def _newton_power_sums(self, upto: int):
        """Power sums p_k = sum over roots of root^k, k = 0..upto (Newton's identities)."""
        r = self.rank
        monic = self.modulus.monic()
        # x^r + e_1 x^{r-1} + ... + e_r  with e_i = monic.c[r - i]
        a = [monic.c[r - i] for i in range(r + 1)]  # a[0] = 1
        p = [mpq(r)]
        for k in range(1, upto + 1):
            s = mpq(0)
            for i in range(1, min(k - 1, r) + 1):
                s += a[i] * p[k - i]
            if k <= r:
                s += k * a[k]
            p.append(-s)
        return p

    def power_sum(self, k: int):
        """Sum of root^k over the roots of the modulus."""
        if k < len(self._power_sums):
            return self._power_sums[k]
        return ring_trace(self.gen ** k)


class RingElement:
    """a_0 + a_1 c + ... + a_{rank-1} c^{rank-1}, always reduced."""

    __slots__ = ("ring", "coeffs")

    def __init__(self, ring: ModulusRing, coeffs):
        self.ring = ring
        self.coeffs = tuple(coeffs)

    def __repr__(self):
        return f"RingElement({[str(a) for a in self.coeffs]})"

    def _coerce(self, other):
        if isinstance(other, RingElement):
            return other
        return self.ring.const(other)

    def __eq__(self, other):
        if isinstance(other, RingElement):
            return self.ring == other.ring and self.coeffs == other.coeffs
        if isinstance(other, (int, mpq)) or hasattr(other, "denominator"):
            return self.coeffs == self.ring.const(other).coeffs
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def __bool__(self):
        return any(self.coeffs)

    def __add__(self, other):
        other = self._coerce(other)
        return RingElement(self.ring, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    __radd__ = __add__

    def __neg__(self):
        return RingElement(self.ring, tuple(-a for a in self.coeffs))

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, RingElement):
            other = mpq(other) if not hasattr(other, "numerator") else mpq(other.numerator, other.denominator)
            return RingElement(self.ring, tuple(a * other for a in self.coeffs))
        r = self.ring.rank
        out = [mpq(0)] * (2 * r - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    if b:
                        out[i + j] += a * b
        return RingElement(self.ring, self.ring._reduce(out))

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            return ring_invert(self) ** (-k)
        out = self.ring.one
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __truediv__(self, other):
        if isinstance(other, RingElement):
            return self * ring_invert(other)
        return self * (1 / mpq(other))

    def __rtruediv__(self, other):
        return ring_invert(self) * other

    def inverse(self) -> "RingElement":
        return ring_invert(self)

    def as_poly(self) -> Poly:
        return Poly(self.coeffs)

    def to_json(self) -> list[str]:
        from .rational import format_rational

        return [format_rational(a) for a in self.coeffs]


def ring_trace(e: RingElement):
    """Sum of e over all roots of the modulus, as an exact rational."""
    ring = e.ring
    return to_fraction(sum((a * ring._power_sums[k] for k, a in enumerate(e.coeffs)), mpq(0)))


def ring_invert(e: RingElement) -> RingElement:
    """Inverse via the extended gcd of the representative with the modulus."""
    rep = e.as_poly()
    if rep.is_zero():
        raise ZeroDivisor("zero is not invertible")
    g, s, _ = xgcd(rep, e.ring.modulus)
    if g.degree != 0:
        raise ZeroDivisor(f"{e!r} vanishes at a root of the modulus")
    return e.ring.element(s.c)


@lru_cache(maxsize=None)
def critical_ring(q: int) -> ModulusRing:
    """Q[c]/((q+1)c^q - 1): c is a generic critical point of z(1 - z^q)."""
    if q < 1:
        raise ValueError("q must be a positive integer")
    return ModulusRing(Poly([-1] + [0] * (q - 1) + [q + 1]))


def critical_modulus(q: int) -> Poly:
    return critical_ring(q).modulus


def element_from_json(ring: ModulusRing, data) -> RingElement:
    from .rational import parse_rational

    if len(data) != ring.rank:
        raise ValueError(f"expected {ring.rank} coefficients, got {len(data)}")
    return ring.element(parse_rational(s) for s in data)
