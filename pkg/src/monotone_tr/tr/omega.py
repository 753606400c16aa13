"""Topological recursion on x = z(1 - z^q), y = z^{q-1}/(1 - z^q), B = dz1 dz2/(z1-z2)^2.

A correlator omega_{g,n} is stored as

    num(z_1, ..., z_s) / prod_i P(z_i)^{d_i}  dz_1 ... dz_s

where s <= n of the arguments are symbolic and the remaining ones are fixed
rational spectators (folded into the numerator).  All q critical points are
handled at once: residues at z = c + t are computed with coefficients in
Q[c]/(P) and summed over c with the trace.

Work layout of the recursion for a target with s symbolic points:
slot 0 = c, slot 1 = z_0 (and the local coordinate t while building the
recursion integrand), slots 2..s = symbolic spectators, slot s+1 = scratch.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import combinations

from ..errors import CutoffExceeded, OrderGuard, SpectatorAtPole, UnstableInput, ZeroDivisor
from ..kernel.modring import critical_ring, ring_invert
from ..kernel.mpoly import MPoly, unit, unpack
from ..kernel.rational import format_rational, mpq, to_fraction
from ..kernel.series import Series
from .local import (
    V_inverse_power,
    kernel_coefficient,
    omega02_diagonal,
    sigma_pullback_basis,
)
from .pfrac import P_power, PFrac, cmod, reduce_poles, shift_slot_to_c, trace_product

LOCAL = 1


@dataclass(frozen=True)
class OmegaForm:
    """One correlator with s symbolic points and some fixed spectators."""

    q: int
    g: int
    n: int
    fixed: tuple
    num: MPoly = field(compare=False)  # nvars = s + 1, slot 0 unused
    den: tuple = field(compare=False)  # pole order per slot, den[0] = 0

    @property
    def nsym(self) -> int:
        return self.num.nvars - 1

    @property
    def pole_orders(self) -> tuple:
        return self.den[1:]

    def evaluate(self, *zs) -> Fraction:
        """Value of omega / (dz_1 ... dz_s) at rational points."""
        if len(zs) != self.nsym:
            raise ValueError(f"expected {self.nsym} points")
        p = self.num
        den = mpq(1)
        for i, z in enumerate(zs, start=1):
            z = mpq(to_fraction(z))
            p = p.subs_value(i, z)
            pz = (self.q + 1) * z**self.q - 1
            if pz == 0 and self.den[i]:
                raise SpectatorAtPole(f"z_{i} = {z} is a ramification point")
            den *= pz ** self.den[i]
        return to_fraction(p.constant_term() / den)

    def numerator_dict(self) -> dict:
        out = {}
        for k, a in self.num.terms.items():
            e = unpack(k, self.num.nvars)[1:]
            out[e] = to_fraction(a)
        return out

    def to_json(self) -> dict:
        if self.fixed:
            raise ValueError("only fully symbolic forms are serialised")
        num = {
            ",".join(map(str, e)): format_rational(a)
            for e, a in sorted(self.numerator_dict().items())
        }
        return {
            "g": self.g,
            "n": self.n,
            "q": self.q,
            "pole_orders": list(self.pole_orders),
            "numerator": num,
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True)

    def degree_bound_holds(self) -> bool:
        """deg_{z_i} num <= q d_i - 2: no pole at infinity."""
        return all(
            self.num.degree(i) <= self.q * self.den[i] - 2 for i in range(1, self.nsym + 1) if self.num
        )

    def residues_vanish(self) -> bool:
        """Total residue over the critical points in z_1 is zero (spectators stay symbolic)."""
        if not self.num:
            return True
        s = self.nsym
        nv = s + 1
        local = _stable_local(self, list(range(2, s + 1)), nv, -1, pulled=False)
        r = local[-1]
        return not r or not trace_product(r.num, MPoly.const(1, nv, cmod(self.q)), self.q)

    def is_symmetric(self) -> bool:
        s = self.nsym
        if len(set(self.pole_orders)) > 1:
            return False
        for i in range(1, s):
            if self.num.swap(i, i + 1) != self.num:
                return False
        return True


@dataclass(frozen=True)
class SeedDifferential:
    """omega_{0,1} = y dx and omega_{0,2} = B, which are data rather than output."""

    q: int
    tag: str  # "ydx" or "B"

    @property
    def g(self) -> int:
        return 0

    @property
    def n(self) -> int:
        return 1 if self.tag == "ydx" else 2

    def rational(self):
        """omega_{0,1} / dz as a RationalFunction; B has no one-variable form."""
        from ..kernel.polynomial import Poly, RationalFunction
        from .curve import SpectralCurve

        if self.tag != "ydx":
            raise ValueError("B is the bidifferential dz1 dz2 / (z1 - z2)^2")
        curve = SpectralCurve(self.q)
        return curve.y * RationalFunction(curve.dx, Poly([1]))

    def evaluate(self, *zs) -> Fraction:
        zs = [to_fraction(z) for z in zs]
        if self.tag == "ydx":
            return self.rational()(zs[0])
        if zs[0] == zs[1]:
            raise SpectatorAtPole("B has a double pole on the diagonal")
        return 1 / (zs[0] - zs[1]) ** 2


OmegaDifferential = OmegaForm


# -- spectators --------------------------------------------------------------------
def _check_spectator(q: int, a) -> mpq:
    a = mpq(to_fraction(a))
    if (q + 1) * a**q == 1:
        raise SpectatorAtPole(f"spectator {a} is a ramification point")
    return a


@lru_cache(maxsize=None)
def _inv_spectator(q: int, a) -> object:
    """1/(a - c) in the critical ring."""
    ring = critical_ring(q)
    try:
        return ring_invert(ring.const(a) - ring.gen)
    except ZeroDivisor as exc:  # pragma: no cover - excluded by _check_spectator
        raise SpectatorAtPole(str(exc)) from exc


@lru_cache(maxsize=None)
def _S_poly(q: int, slot: int, nvars: int) -> MPoly:
    """S(z, c) = (q+1) sum_{i<q} z^{q-1-i} c^i, so that 1/(z - c) = S/P(z)."""
    terms = {(q - 1 - i) * unit(slot) + i * unit(0): mpq(q + 1) for i in range(q)}
    return MPoly(terms, nvars, cmod(q))


@lru_cache(maxsize=None)
def _S_power(q: int, slot: int, nvars: int, k: int) -> MPoly:
    if k == 0:
        return MPoly.const(1, nvars, cmod(q))
    return _S_power(q, slot, nvars, k - 1) * _S_poly(q, slot, nvars)


# -- local expansions at z = c + t ------------------------------------------------------
def _zero(q, nv):
    return PFrac.zero(q, nv)


def _lift(series: Series, q: int, nv: int) -> Series:
    """Ring-valued series -> PFrac-valued series."""
    return series.map(lambda r: PFrac.from_ring(r, q, nv)) if series.coeffs else Series([], 0, series.cutoff, _zero(q, nv))


def _pull(series: Series, q: int, nv: int | None, cutoff: int) -> Series:
    """F(t) dt -> F(sigma(t)) sigma'(t) dt, up to t^cutoff.

    With ``nv=None`` the coefficients are ring elements and so is the result.
    """
    lo = min(series.lo, 0) if series.coeffs else 0
    zero = critical_ring(q).zero if nv is None else _zero(q, nv)
    out = [zero] * (cutoff - lo + 1)
    for a, Fa in series.items():
        if a > cutoff:
            break
        basis = sigma_pullback_basis(q, a, cutoff)
        for j, r in basis.items():
            out[j - lo] = out[j - lo] + Fa * r
    return Series(out, lo, cutoff, zero)


def _from_poly_groups(groups: dict, den: tuple, q: int, nv: int, upto: int) -> Series:
    coeffs = [PFrac(groups[j], den, q) if j in groups else _zero(q, nv) for j in range(upto + 1)]
    return Series(coeffs, 0, upto, _zero(q, nv))


def _stable_local(form: OmegaForm, spect: list, nv: int, cutoff: int, pulled: bool) -> Series:
    """omega(c+t, I) / dt (or its pullback by sigma) in the work layout.

    ``spect`` lists the work slots receiving the form's symbolic points 2..s.
    """
    q = form.q
    mapping = {0: 0, 1: LOCAL}
    den = [0] * nv
    for i, s in enumerate(spect):
        mapping[2 + i] = s
        den[s] = form.den[2 + i]
    d = form.den[1]
    num = shift_slot_to_c(form.num.remap(mapping, nv, cmod(q)), LOCAL, q)
    groups = num.collect(LOCAL)
    poly = _from_poly_groups(groups, tuple(den), q, nv, cutoff + d)
    series = (poly * _lift(V_inverse_power(q, d, cutoff + d), q, nv)).truncate(cutoff + d).shift(-d)
    if pulled:
        series = _pull(series, q, nv, cutoff)
    return series


def _omega02_local(q: int, spect, nv: int, cutoff: int, pulled: bool) -> Series:
    """omega_{0,2}(c+t, p) / dt, p a symbolic slot or a fixed rational."""
    coeffs = []
    if isinstance(spect, int):
        P_slot = [0] * nv
        for m in range(cutoff + 1):
            den = list(P_slot)
            den[spect] = m + 2
            coeffs.append(PFrac(_S_power(q, spect, nv, m + 2).scale(m + 1), tuple(den), q))
        series = Series(coeffs, 0, cutoff, _zero(q, nv))
    else:
        inv = _inv_spectator(q, spect)
        ring = critical_ring(q)
        p = inv * inv
        rc = []
        for m in range(cutoff + 1):
            rc.append(p * (m + 1))
            p = p * inv
        series = _lift(Series(rc, 0, cutoff, ring.zero), q, nv)
    if pulled:
        series = _pull(series, q, nv, cutoff)
    return series


def _pole(form_or_none) -> int:
    return 0 if form_or_none is None else form_or_none.den[1]


# -- the recursion ----------------------------------------------------------------------------
def _splittings(g: int, spect: list, with_disk: bool = False):
    """(g1, I1, g2, I2) over subsets of spectator indices.

    omega_{0,1} halves are excluded unless ``with_disk`` (loop equations).
    """
    idx = range(len(spect))
    for g1 in range(g + 1):
        for r in range(len(spect) + 1):
            for I1 in combinations(idx, r):
                I2 = tuple(i for i in idx if i not in I1)
                if not with_disk and ((g1 == 0 and not I1) or (g - g1 == 0 and not I2)):
                    continue
                yield g1, I1, g - g1, I2


def _factor(q: int, g1: int, points: list, slack: int) -> tuple:
    """Sub-correlator omega_{g1, 1+|points|}(z, points) for the integrand.

    Returns (kind, form, symbolic work slots, spectator) with kind one of
    "disk", "cyl" (omega_{0,2} against one spectator) or "stable".
    """
    syms = [p[1] for p in points if p[0] == "s"]
    fixed = tuple(sorted(p[1] for p in points if p[0] == "f"))
    if g1 == 0 and not points:
        return "disk", None, [], None
    if g1 == 0 and len(points) == 1:
        return "cyl", None, syms, points[0][1]
    form = omega_form(q, g1, 1 + len(points), 1 + len(syms), fixed, slack)
    return "stable", form, syms, None


def _factor_pole(fac) -> int:
    return fac[1].den[1] if fac[0] == "stable" else 0


def disk_local(q: int, cutoff: int) -> Series:
    """omega_{0,1}(c+t) / dt = y(c+t) x'(c+t)."""
    from .curve import local_dx, local_y

    return (local_y(q, cutoff) * local_dx(q)).truncate(cutoff)


def _factor_series(q, fac, nv, cutoff, pulled) -> Series:
    kind, form, syms, spect = fac
    if kind == "disk":
        s = disk_local(q, cutoff)
        return _lift(_pull(s, q, None, cutoff) if pulled else s, q, nv)
    if kind == "cyl":
        return _omega02_local(q, spect, nv, cutoff, pulled)
    return _stable_local(form, syms, nv, cutoff, pulled)


def _term_A(q: int, g: int, n: int, sym_slots: list, fixed: tuple, nv: int, top: int, slack: int):
    """omega_{g-1, n+1}(z, sigma z, J) / (dt dt) up to t^top, or None when g = 0."""
    if g == 0:
        return None
    if g == 1 and n == 1:
        return _lift(omega02_diagonal(q, top), q, nv)
    sub = omega_form(q, g - 1, n + 1, 2 + len(sym_slots), fixed, slack)
    scratch = nv - 1
    mapping = {0: 0, 1: LOCAL, 2: scratch}
    den = [0] * nv
    for i, s in enumerate(sym_slots):
        mapping[3 + i] = s
        den[s] = sub.den[3 + i]
    dz, dw = sub.den[1], sub.den[2]
    num = sub.num.remap(mapping, nv, cmod(q))
    num = shift_slot_to_c(shift_slot_to_c(num, LOCAL, q), scratch, q)
    by_u = num.collect(scratch)
    den = tuple(den)
    # sum_j N_j(t) E_j(t) with E_j the pullback of u^{j-dw} V(u)^{-dw}
    acc = Series([], 0, dz + top, _zero(q, nv))
    Vw = V_inverse_power(q, dw, dz + dw + top + max(by_u, default=0) + 1)
    for j, Nj in by_u.items():
        Ej = _lift(_pull(Vw.shift(j - dw), q, None, dz + top), q, nv)
        poly = _from_poly_groups(Nj.collect(LOCAL), den, q, nv, dz + dw + top)
        acc = acc + (poly * Ej).truncate(dz + top)
    pre = _lift(V_inverse_power(q, dz, dz + dw + top), q, nv).shift(-dz)
    return (pre * acc).truncate(top)


def integrand_terms(
    q: int, g: int, n: int, sym_slots: list, fixed: tuple, nv: int, top: int,
    with_disk: bool = False, slack: int = 0,
) -> list:
    """The terms of omega_{g-1,n+1}(z,sigma z,J) + sum omega(z,I) omega(sigma z,J\\I) at z = c+t.

    Each term is a series in t (coefficient of dt dt) valid up to t^top.
    """
    points = [("s", s) for s in sym_slots] + [("f", a) for a in fixed]
    terms = []
    A = _term_A(q, g, n, sym_slots, fixed, nv, top, slack)
    if A is not None:
        terms.append(A)
    for g1, I1, g2, I2 in _splittings(g, points, with_disk):
        f1 = _factor(q, g1, [points[i] for i in I1], slack)
        f2 = _factor(q, g2, [points[i] for i in I2], slack)
        p1, p2 = _factor_pole(f1), _factor_pole(f2)
        s1 = _factor_series(q, f1, nv, p2 + top, pulled=False)
        s2 = _factor_series(q, f2, nv, p1 + top, pulled=True)
        terms.append((s1 * s2).truncate(top))
    return terms


def _sum_terms(terms: list, top: int) -> Series:
    total = terms[0]
    for t in terms[1:]:
        total = (total + t).truncate(top)
    if total.cutoff is None or total.cutoff < top:
        raise OrderGuard(f"integrand precision below t^{top}")
    return total


def _empty(q, g, n, fixed, nsym) -> OmegaForm:
    return OmegaForm(q, g, n, fixed, MPoly({}, nsym + 1, cmod(q)), (0,) * (nsym + 1))


def _recursion(q: int, g: int, n: int, nsym: int, fixed: tuple, slack: int) -> OmegaForm:
    nv = nsym + 2
    sym_slots = list(range(2, nsym + 1))
    terms = integrand_terms(q, g, n, sym_slots, fixed, nv, slack, slack=slack)
    if not terms:
        raise UnstableInput(f"empty recursion integrand for (g, n) = ({g}, {n})")
    Br = _sum_terms(terms, slack)
    if not Br.coeffs:
        return _empty(q, g, n, fixed, nsym)
    v = Br.lo
    kmax = 1 - v
    D = 2 - v
    # residues R_k = [t^-1] kappa_k Br, then 1/2 sum_k Tr(R_k S(z0,c)^{k+1}) P(z0)^{D-k-1}
    parts = []
    for k in range(1, kmax + 1):
        kap = kernel_coefficient(q, k, -1 - v + slack)
        R = _zero(q, nv)
        for j, a in kap.items():
            if j > -1 - v:
                break
            b = Br[-1 - j]
            if b:
                R = R + b * a
        if R:
            parts.append((k, R))
    if not parts:
        return _empty(q, g, n, fixed, nsym)
    den = tuple(max(p.den[i] for _, p in parts) for i in range(nv))
    total = MPoly({}, nv, cmod(q))
    for k, R in parts:
        Rn = R.with_den(den).num
        tr = trace_product(Rn, _S_power(q, LOCAL, nv, k + 1), q)
        if D - k - 1:
            tr = tr * P_power(q, LOCAL, nv, D - k - 1)
        total.add_scaled(tr, mpq(1, 2))
    total = MPoly(total.terms, nv, cmod(q))
    full_den = list(den)
    full_den[LOCAL] = D
    num, full_den = reduce_poles(total, tuple(full_den), q, range(1, nsym + 1))
    num = num.remap({i: i for i in range(nsym + 1)}, nsym + 1, cmod(q))
    return OmegaForm(q, g, n, fixed, num, tuple(full_den[: nsym + 1]))


MAX_SLACK = 64


@lru_cache(maxsize=None)
def omega_form(q: int, g: int, n: int, nsym: int | None = None, fixed: tuple = (), slack: int = 0) -> OmegaForm:
    """omega_{g,n} with ``nsym`` symbolic points and the given fixed spectators.

    ``slack`` carries every internal Laurent expansion that many orders past
    what the residue needs; the output must not depend on it.  On a precision
    shortfall the computation is retried with doubled slack.
    """
    if q < 1 or g < 0 or n < 1:
        raise ValueError("need q >= 1, g >= 0, n >= 1")
    if 2 * g - 2 + n <= 0:
        raise UnstableInput(f"(g, n) = ({g}, {n}) is not in the stable range")
    if nsym is None:
        nsym = n
    if nsym < 1 or nsym + len(fixed) != n:
        raise ValueError("need at least one symbolic point and nsym + len(fixed) = n")
    fixed = tuple(sorted(_check_spectator(q, a) for a in fixed))
    if len(set(fixed)) != len(fixed):
        raise SpectatorAtPole("two spectators coincide (diagonal pole)")
    s = slack
    while True:
        try:
            return _recursion(q, g, n, nsym, fixed, s)
        except (OrderGuard, CutoffExceeded) as exc:
            if s >= MAX_SLACK:
                raise OrderGuard(f"working order exhausted at slack {s}: {exc}") from exc
            s = 2 * s + 4


def compute_omega(g: int, n: int, q: int, slack: int = 0):
    """Fully symbolic omega_{g,n}; the seeds (0,1) and (0,2) come back tagged."""
    if (g, n) == (0, 1):
        return SeedDifferential(q, "ydx")
    if (g, n) == (0, 2):
        return SeedDifferential(q, "B")
    return omega_form(q, g, n, None, (), slack)


def recursion_kernel(q: int, order: int) -> Series:
    """The recursion kernel at z = c + t as a Laurent series up to t^order.

    Coefficients are PFracs in (c, z0) (slots 0, 1): the kernel equals
    1/2 sum_k kappa_k(t) S(z0,c)^{k+1} / P(z0)^{k+1}, times dz0/dt.
    """
    nv = 2
    out = Series([], -2, order, _zero(q, nv))
    for k in range(1, order + 3):
        kap = kernel_coefficient(q, k, order)
        coef = PFrac(_S_power(q, LOCAL, nv, k + 1).scale(mpq(1, 2)), (0, k + 1), q)
        out = out + _lift(kap, q, nv).map(lambda a: a * coef)
    return out


def clear_cache() -> None:
    omega_form.cache_clear()
