"""Truncated univariate Laurent series with explicit validity cutoffs.

A :class:`Series` stores a_lo t^lo + ... + a_cut t^cut and promises that every
coefficient up to ``cutoff`` (inclusive) is exact.  ``cutoff=None`` marks an
exact (finite) Laurent polynomial.  Every operation computes the cutoff of its
result pessimistically, so precision is never silently lost.

Coefficients may live in any commutative ring supporting ``+ - *`` with ints;
inversion of a leading coefficient uses ``1 / a``.
"""
from __future__ import annotations

from ..errors import CutoffExceeded, ValuationError
from .rational import mpq


def _cmin(*cs):
    finite = [c for c in cs if c is not None]
    return min(finite) if finite else None


def _cadd(c, k):
    return None if c is None else c + k


class Series:
    __slots__ = ("lo", "coeffs", "cutoff", "zero")

    def __init__(self, coeffs, lo: int = 0, cutoff: int | None = None, zero=None):
        coeffs = list(coeffs)
        if zero is None:
            zero = coeffs[0] * 0 if coeffs else mpq(0)
        if cutoff is not None:
            coeffs = coeffs[: max(cutoff - lo + 1, 0)]
        # strip leading zeros so lo is the valuation when known
        i = 0
        while i < len(coeffs) and not coeffs[i]:
            i += 1
        lo += i
        coeffs = coeffs[i:]
        while coeffs and not coeffs[-1]:
            coeffs.pop()
        if not coeffs:
            lo = 0 if cutoff is None else cutoff + 1
        self.lo = lo
        self.coeffs = coeffs
        self.cutoff = cutoff
        self.zero = zero

    # -- constructors -------------------------------------------------------
    @classmethod
    def from_dict(cls, d: dict, cutoff=None, zero=None):
        if not d:
            return cls([], 0, cutoff, zero)
        lo, hi = min(d), max(d)
        z = zero if zero is not None else next(iter(d.values())) * 0
        return cls([d.get(k, z) for k in range(lo, hi + 1)], lo, cutoff, z)

    @classmethod
    def monomial(cls, k: int, a=1, cutoff=None, zero=None):
        return cls([a], k, cutoff, zero)

    def like(self, coeffs, lo, cutoff):
        return Series(coeffs, lo, cutoff, self.zero)

    # -- access ---------------------------------------------------------------
    @property
    def valuation(self):
        return self.lo

    @property
    def hi(self) -> int:
        return self.lo + len(self.coeffs) - 1

    def is_exact(self) -> bool:
        return self.cutoff is None

    def is_zero(self) -> bool:
        return not self.coeffs

    def __getitem__(self, k: int):
        if self.cutoff is not None and k > self.cutoff:
            raise CutoffExceeded(f"coefficient t^{k} beyond cutoff {self.cutoff}")
        i = k - self.lo
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return self.zero

    def items(self):
        for i, a in enumerate(self.coeffs):
            if a:
                yield self.lo + i, a

    def truncate(self, cutoff: int) -> "Series":
        return self.like(self.coeffs, self.lo, _cmin(cutoff, self.cutoff))

    def __repr__(self):
        terms = " + ".join(f"({a})t^{k}" for k, a in self.items()) or "0"
        tail = "" if self.cutoff is None else f" + O(t^{self.cutoff + 1})"
        return f"Series({terms}{tail})"

    def __eq__(self, other):
        if not isinstance(other, Series):
            return NotImplemented
        return (
            self.cutoff == other.cutoff
            and self.lo == other.lo
            and self.coeffs == other.coeffs
        )

    def agrees_with(self, other: "Series", upto: int | None = None) -> bool:
        """Coefficientwise equality up to the common cutoff (and ``upto``)."""
        top = _cmin(self.cutoff, other.cutoff, upto)
        if top is None:
            top = max(self.hi, other.hi)
        lo = min(self.lo, other.lo)
        return all(self[k] == other[k] for k in range(lo, top + 1))

    # -- ring operations -------------------------------------------------------
    def __add__(self, other):
        if not isinstance(other, Series):
            other = self.like([other], 0, None)
        cut = _cmin(self.cutoff, other.cutoff)
        lo = min(self.lo, other.lo) if (self.coeffs or other.coeffs) else 0
        hi = max(self.hi, other.hi)
        if cut is not None:
            hi = min(hi, cut)
        out = [self.zero] * max(hi - lo + 1, 0)
        for k, a in self.items():
            if k - lo < len(out):
                out[k - lo] = out[k - lo] + a
        for k, a in other.items():
            if k - lo < len(out):
                out[k - lo] = out[k - lo] + a
        return self.like(out, lo, cut)

    __radd__ = __add__

    def __neg__(self):
        return self.like([-a for a in self.coeffs], self.lo, self.cutoff)

    def __sub__(self, other):
        if not isinstance(other, Series):
            other = self.like([other], 0, None)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, a) -> "Series":
        return self.like([c * a for c in self.coeffs], self.lo, self.cutoff)

    def __mul__(self, other):
        if not isinstance(other, Series):
            return self.scale(other)
        cut = _cmin(_cadd(self.cutoff, other.lo), _cadd(other.cutoff, self.lo))
        if not self.coeffs or not other.coeffs:
            return self.like([], 0, cut)
        lo = self.lo + other.lo
        n = len(self.coeffs) + len(other.coeffs) - 1
        if cut is not None:
            n = min(n, cut - lo + 1)
        out = [self.zero] * max(n, 0)
        for i, a in enumerate(self.coeffs):
            if not a or i >= n:
                continue
            for j, b in enumerate(other.coeffs[: n - i]):
                if b:
                    out[i + j] = out[i + j] + a * b
        return self.like(out, lo, cut)

    def __rmul__(self, other):
        return self.scale(other)

    def shift(self, k: int) -> "Series":
        """Multiply by t^k."""
        return self.like(self.coeffs, self.lo + k, _cadd(self.cutoff, k))

    def inverse(self) -> "Series":
        if not self.coeffs:
            raise ZeroDivisionError("inverse of a series with no known nonzero coefficient")
        v = self.lo
        a0 = self.coeffs[0]
        inv0 = mpq(1) / a0
        # relative precision of the unit part
        rel = None if self.cutoff is None else self.cutoff - v
        if rel is None:
            if len(self.coeffs) > 1:
                raise ValuationError("exact inverse of a non-monomial needs an explicit cutoff")
            return self.like([inv0], -v, None)
        u = self.coeffs
        out = [inv0]
        for n in range(1, rel + 1):
            s = self.zero
            for k in range(1, min(n, len(u) - 1) + 1):
                s = s + u[k] * out[n - k]
            out.append(-(s * inv0))
        return self.like(out, -v, rel - v)

    def inverse_to(self, cutoff: int) -> "Series":
        """Inverse of an exact Laurent polynomial, valid up to t^cutoff."""
        v = self.lo
        base = self if self.cutoff is not None else self.truncate(cutoff + 2 * v)
        return base.inverse().truncate(cutoff)

    def __truediv__(self, other):
        if isinstance(other, Series):
            return self * other.inverse()
        return self.scale(mpq(1) / other)

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        out = self.like([self.zero + 1], 0, None)
        base = self
        while k:
            if k & 1:
                out = out * base
            k >>= 1
            if k:
                base = base * base
        return out

    def deriv(self) -> "Series":
        out = [a * (self.lo + i) for i, a in enumerate(self.coeffs)]
        return self.like(out, self.lo - 1, _cadd(self.cutoff, -1))

    def compose(self, inner: "Series") -> "Series":
        return series_compose(self, inner)

    def map(self, f) -> "Series":
        return Series([f(a) for a in self.coeffs], self.lo, self.cutoff, f(self.zero))


def series_compose(outer: Series, inner: Series) -> Series:
    """outer(inner(t)) with the propagated cutoff.

    ``inner`` must have valuation >= 1 unless ``outer`` is an exact
    polynomial.  Negative powers in ``outer`` need an invertible leading
    coefficient of ``inner``.
    """
    if inner.is_zero() and inner.cutoff is None:
        if outer.lo < 0:
            raise ValuationError("Laurent outer series composed with zero")
        return outer.like([outer[0]], 0, None)
    v = inner.lo
    if v < 1 and not (outer.is_exact() and outer.lo >= 0):
        raise ValuationError("inner series has a constant term and outer is not a polynomial")
    cut = None if outer.cutoff is None else (outer.cutoff + 1) * v - 1
    work = inner
    if cut is not None and (inner.cutoff is None or inner.cutoff > cut):
        work = inner.truncate(cut)
    result = outer.like([], 0, None)
    if outer.hi >= 0:
        acc = outer.like([outer[outer.hi]], 0, None)
        for k in range(outer.hi - 1, max(outer.lo, 0) - 1, -1):
            acc = acc * work + outer[k]
            if cut is not None:
                acc = acc.truncate(cut)
        if outer.lo > 0:
            acc = acc * (work ** outer.lo)
        result = acc
    if outer.lo < 0:
        inv = work.inverse()
        top = min(outer.hi, -1)
        acc = outer.like([outer[outer.lo]], 0, None)
        for k in range(outer.lo + 1, top + 1):
            acc = acc * inv + outer[k]
        acc = acc * (inv ** (-top))
        result = result + acc
    if cut is not None:
        result = result.truncate(cut)
    return result


def lagrange_invert(x_of_z: Series, cutoff: int) -> Series:
    """Compositional inverse z(x) of x(z) = a_1 z + ..., a_1 invertible.

    Uses [x^n] z(x) = (1/n) [z^{n-1}] (z / x(z))^n.
    """
    if x_of_z.lo != 1:
        raise ValuationError(f"leading exponent must be 1, got {x_of_z.lo}")
    if x_of_z.cutoff is not None:
        cutoff = min(cutoff, x_of_z.cutoff)
    ratio = x_of_z.shift(-1)  # x(z)/z
    if ratio.cutoff is None:
        ratio = ratio.truncate(cutoff)
    phi = ratio.inverse().truncate(cutoff)
    out = [x_of_z.zero]
    power = phi.like([phi.zero + 1], 0, None)
    for n in range(1, cutoff + 1):
        power = (power * phi).truncate(cutoff)
        out.append(power[n - 1] * mpq(1, n))
    return x_of_z.like(out, 0, cutoff)
