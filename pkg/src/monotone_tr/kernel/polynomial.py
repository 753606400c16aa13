"""Dense univariate polynomials and rational functions over Q."""
from __future__ import annotations

from dataclasses import dataclass

from .rational import mpq, to_mpq


def _trim(cs):
    cs = list(cs)
    while cs and cs[-1] == 0:
        cs.pop()
    return tuple(cs)


class Poly:
    """Polynomial a_0 + a_1 t + ... with ``mpq`` coefficients (low degree first)."""

    __slots__ = ("c",)

    def __init__(self, coeffs=()):
        self.c = _trim(to_mpq(a) for a in coeffs)

    @classmethod
    def monomial(cls, k: int, a=1) -> "Poly":
        return cls([0] * k + [a])

    @property
    def degree(self) -> int:
        return len(self.c) - 1  # -1 for the zero polynomial

    def is_zero(self) -> bool:
        return not self.c

    def lead(self):
        return self.c[-1]

    def __eq__(self, other):
        if isinstance(other, (int, mpq)):
            other = Poly([other])
        return isinstance(other, Poly) and self.c == other.c

    def __hash__(self):
        return hash(self.c)

    def __repr__(self):
        return f"Poly({[str(a) for a in self.c]})"

    def __add__(self, other):
        other = _as_poly(other)
        n = max(len(self.c), len(other.c))
        a = self.c + (mpq(0),) * (n - len(self.c))
        b = other.c + (mpq(0),) * (n - len(other.c))
        return Poly(x + y for x, y in zip(a, b))

    __radd__ = __add__

    def __neg__(self):
        return Poly(-a for a in self.c)

    def __sub__(self, other):
        return self + (-_as_poly(other))

    def __rsub__(self, other):
        return _as_poly(other) - self

    def __mul__(self, other):
        other = _as_poly(other)
        if not self.c or not other.c:
            return Poly()
        out = [mpq(0)] * (len(self.c) + len(other.c) - 1)
        for i, a in enumerate(self.c):
            if a:
                for j, b in enumerate(other.c):
                    out[i + j] += a * b
        return Poly(out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        out = Poly([1])
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __call__(self, x):
        acc = 0 * x
        for a in reversed(self.c):
            acc = acc * x + a
        return acc

    def deriv(self) -> "Poly":
        return Poly(k * a for k, a in enumerate(self.c) if k)

    def divmod(self, other: "Poly"):
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.c)
        dq = other.degree
        quo = [mpq(0)] * max(len(rem) - dq, 0)
        inv = 1 / other.lead()
        for i in range(len(rem) - 1, dq - 1, -1):
            f = rem[i] * inv
            if f:
                quo[i - dq] = f
                for j, b in enumerate(other.c):
                    rem[i - dq + j] -= f * b
        return Poly(quo), Poly(rem[:dq] if dq > 0 else [])

    def __floordiv__(self, other):
        return self.divmod(_as_poly(other))[0]

    def __mod__(self, other):
        return self.divmod(_as_poly(other))[1]

    def monic(self) -> "Poly":
        return self * (1 / self.lead())


def _as_poly(x) -> Poly:
    return x if isinstance(x, Poly) else Poly([x])


def xgcd(a: Poly, b: Poly):
    """Return (g, s, t) with s*a + t*b = g and g monic (or zero)."""
    r0, r1 = a, b
    s0, s1 = Poly([1]), Poly()
    t0, t1 = Poly(), Poly([1])
    while not r1.is_zero():
        quo, rem = r0.divmod(r1)
        r0, r1 = r1, rem
        s0, s1 = s1, s0 - quo * s1
        t0, t1 = t1, t0 - quo * t1
    if r0.is_zero():
        return r0, s0, t0
    k = 1 / r0.lead()
    return r0 * k, s0 * k, t0 * k


def gcd(a: Poly, b: Poly) -> Poly:
    return xgcd(a, b)[0]


@dataclass(frozen=True)
class RationalFunction:
    """num/den in lowest terms with a monic denominator."""

    num: Poly
    den: Poly

    def __post_init__(self):
        if self.den.is_zero():
            raise ZeroDivisionError("zero denominator")
        g = gcd(self.num, self.den) if not self.num.is_zero() else self.den.monic()
        num, den = self.num // g, self.den // g
        k = 1 / den.lead()
        object.__setattr__(self, "num", num * k)
        object.__setattr__(self, "den", den * k)

    def __call__(self, x):
        return self.num(x) / self.den(x)

    def __mul__(self, other: "RationalFunction"):
        return RationalFunction(self.num * other.num, self.den * other.den)

    def __add__(self, other: "RationalFunction"):
        return RationalFunction(self.num * other.den + other.num * self.den, self.den * other.den)

    def deriv(self) -> "RationalFunction":
        return RationalFunction(
            self.num.deriv() * self.den - self.num * self.den.deriv(), self.den * self.den
        )
