"""Sparse multivariate polynomials over Q with packed exponent keys.

Exponent vectors are packed into a single int, SHIFT bits per variable, so a
monomial product is one integer addition.  Optionally variable 0 is the
generator c of Q[c]/(c^q - r) and every product is reduced (``cmod=(q, r)``).
"""
from __future__ import annotations

from .rational import mpq

SHIFT = 16
MASK = (1 << SHIFT) - 1


def pack(exps) -> int:
    key = 0
    for i, e in enumerate(exps):
        if e < 0 or e > MASK:
            raise ValueError(f"exponent {e} out of range")
        key |= e << (SHIFT * i)
    return key


def unpack(key: int, nvars: int) -> tuple:
    return tuple((key >> (SHIFT * i)) & MASK for i in range(nvars))


def unit(i: int) -> int:
    return 1 << (SHIFT * i)


class MPoly:
    __slots__ = ("terms", "nvars", "cmod")

    def __init__(self, terms=None, nvars: int = 1, cmod=None):
        self.terms = terms if terms is not None else {}
        self.nvars = nvars
        self.cmod = cmod

    # -- construction -------------------------------------------------------
    @classmethod
    def from_dict(cls, d: dict, nvars: int, cmod=None) -> "MPoly":
        terms = {}
        for exps, a in d.items():
            if a:
                k = pack(exps)
                terms[k] = terms.get(k, 0) + mpq(a)
        p = cls({k: v for k, v in terms.items() if v}, nvars, cmod)
        return p.reduced() if cmod else p

    @classmethod
    def const(cls, a, nvars: int = 1, cmod=None) -> "MPoly":
        a = mpq(a)
        return cls({0: a} if a else {}, nvars, cmod)

    @classmethod
    def var(cls, i: int, nvars: int, cmod=None) -> "MPoly":
        p = cls({unit(i): mpq(1)}, nvars, cmod)
        return p.reduced() if cmod else p

    def like(self, terms) -> "MPoly":
        return MPoly(terms, self.nvars, self.cmod)

    def zero(self) -> "MPoly":
        return MPoly({}, self.nvars, self.cmod)

    def reduced(self) -> "MPoly":
        if not self.cmod:
            return self
        q, r = self.cmod
        out = {}
        for k, a in self.terms.items():
            e = k & MASK
            if e >= q:
                n, e2 = divmod(e, q)
                k = k - e + e2
                a = a * r**n
            out[k] = out.get(k, 0) + a
        return self.like({k: v for k, v in out.items() if v})

    # -- inspection -----------------------------------------------------------
    def __bool__(self):
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def __len__(self):
        return len(self.terms)

    def __eq__(self, other):
        if isinstance(other, MPoly):
            return self.terms == other.terms
        if other == 0:
            return not self.terms
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def items(self):
        n = self.nvars
        for k, a in self.terms.items():
            yield unpack(k, n), a

    def to_dict(self) -> dict:
        return dict(self.items())

    def degree(self, i: int) -> int:
        s = SHIFT * i
        return max(((k >> s) & MASK for k in self.terms), default=-1)

    def constant_term(self):
        return self.terms.get(0, mpq(0))

    def __repr__(self):
        return f"MPoly({ {e: str(a) for e, a in sorted(self.items())} }, nvars={self.nvars})"

    # -- arithmetic -------------------------------------------------------------
    def __add__(self, other):
        if not isinstance(other, MPoly):
            other = MPoly.const(other, self.nvars, self.cmod)
        out = dict(self.terms)
        for k, b in other.terms.items():
            v = out.get(k)
            if v is None:
                out[k] = b
            else:
                v = v + b
                if v:
                    out[k] = v
                else:
                    del out[k]
        return MPoly(out, max(self.nvars, other.nvars), self.cmod or other.cmod)

    __radd__ = __add__

    def __neg__(self):
        return self.like({k: -a for k, a in self.terms.items()})

    def __sub__(self, other):
        if not isinstance(other, MPoly):
            other = MPoly.const(other, self.nvars, self.cmod)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, a) -> "MPoly":
        a = mpq(a)
        if not a:
            return self.zero()
        return self.like({k: v * a for k, v in self.terms.items()})

    def __mul__(self, other):
        if not isinstance(other, MPoly):
            return self.scale(other)
        return MPoly(
            mul_terms(self.terms, other.terms, self.cmod or other.cmod),
            max(self.nvars, other.nvars),
            self.cmod or other.cmod,
        )

    def __rmul__(self, other):
        return self.scale(other)

    def __pow__(self, k: int) -> "MPoly":
        out = MPoly.const(1, self.nvars, self.cmod)
        base = self
        while k:
            if k & 1:
                out = out * base
            k >>= 1
            if k:
                base = base * base
        return out

    def add_scaled(self, other: "MPoly", a) -> None:
        """In-place self += a * other."""
        t = self.terms
        for k, b in other.terms.items():
            v = t.get(k, 0) + a * b
            if v:
                t[k] = v
            elif k in t:
                del t[k]

    def mul_monomial(self, key: int, a=1) -> "MPoly":
        a = mpq(a)
        p = self.like({k + key: v * a for k, v in self.terms.items()})
        return p.reduced() if self.cmod and key & MASK else p

    # -- variable manipulation -----------------------------------------------------
    def collect(self, i: int) -> dict:
        """Split by the exponent of variable i: {e: coefficient poly without x_i}."""
        s = SHIFT * i
        out: dict[int, dict] = {}
        for k, a in self.terms.items():
            e = (k >> s) & MASK
            out.setdefault(e, {})[k - (e << s)] = a
        return {e: self.like(t) for e, t in out.items()}

    def remap(self, mapping: dict, nvars: int, cmod=None) -> "MPoly":
        """Move variable i to slot mapping[i]; unmapped variables must be absent."""
        out = {}
        n = self.nvars
        for k, a in self.terms.items():
            nk = 0
            for i in range(n):
                e = (k >> (SHIFT * i)) & MASK
                if e:
                    nk |= e << (SHIFT * mapping[i])
            out[nk] = out.get(nk, 0) + a
        return MPoly({k: v for k, v in out.items() if v}, nvars, cmod)

    def subs_value(self, i: int, value) -> "MPoly":
        """Evaluate variable i at a rational value."""
        value = mpq(value)
        s = SHIFT * i
        out = {}
        pw = {}
        for k, a in self.terms.items():
            e = (k >> s) & MASK
            if e not in pw:
                pw[e] = value**e
            nk = k - (e << s)
            v = out.get(nk, 0) + a * pw[e]
            out[nk] = v
        return self.like({k: v for k, v in out.items() if v})

    def diff(self, i: int) -> "MPoly":
        s = SHIFT * i
        out = {}
        for k, a in self.terms.items():
            e = (k >> s) & MASK
            if e:
                out[k - (1 << s)] = a * e
        return self.like(out)

    def euler(self, i: int) -> "MPoly":
        """x_i d/dx_i."""
        s = SHIFT * i
        return self.like({k: a * ((k >> s) & MASK) for k, a in self.terms.items() if (k >> s) & MASK})

    def swap(self, i: int, j: int) -> "MPoly":
        mapping = {v: v for v in range(self.nvars)}
        mapping[i], mapping[j] = j, i
        return self.remap(mapping, self.nvars, self.cmod)

    def divmod_univariate(self, i: int, divisor) -> tuple["MPoly", "MPoly"]:
        """Divide by a univariate polynomial (coefficient list, low first) in x_i."""
        d = len(divisor) - 1
        lead_inv = mpq(1) / mpq(divisor[-1])
        groups = self.collect(i)
        rem = {e: MPoly(dict(p.terms), self.nvars, self.cmod) for e, p in groups.items()}
        quo: dict[int, MPoly] = {}
        top = max(rem, default=-1)
        for e in range(top, d - 1, -1):
            p = rem.pop(e, None)
            if p is None or not p:
                continue
            f = p.scale(lead_inv)
            quo[e - d] = f
            for j, b in enumerate(divisor[:-1]):
                if b:
                    tgt = rem.setdefault(e - d + j, self.zero())
                    tgt.add_scaled(f, -mpq(b))
        s = SHIFT * i

        def assemble(parts):
            out = {}
            for e, p in parts.items():
                for k, a in p.terms.items():
                    out[k + (e << s)] = a
            return self.like(out)

        return assemble(quo), assemble({e: p for e, p in rem.items() if p})

    def trace_c(self, power_sums) -> "MPoly":
        """Apply the trace on variable 0 (c), given Tr(c^e) for e < q."""
        out = {}
        for k, a in self.terms.items():
            e = k & MASK
            ps = power_sums[e]
            if ps:
                nk = k - e
                out[nk] = out.get(nk, 0) + a * ps
        return self.like({k: v for k, v in out.items() if v})


def mul_terms(a: dict, b: dict, cmod=None) -> dict:
    if len(a) < len(b):
        a, b = b, a
    out: dict = {}
    get = out.get
    if cmod is None:
        for kb, vb in b.items():
            for ka, va in a.items():
                k = ka + kb
                out[k] = get(k, 0) + va * vb
    else:
        q, r = cmod
        for kb, vb in b.items():
            eb = kb & MASK
            for ka, va in a.items():
                k = ka + kb
                if (ka & MASK) + eb >= q:
                    k -= q
                    out[k] = get(k, 0) + va * vb * r
                else:
                    out[k] = get(k, 0) + va * vb
    return {k: v for k, v in out.items() if v}
