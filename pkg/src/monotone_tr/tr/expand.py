"""Expansion of correlators near x = 0 and comparison with Hurwitz numbers.

On the sheet z = x + O(x^2),

    omega_{g,n} = sum_{mu_1..mu_n >= 1} h_{g,mu} prod_i mu_i x_i^{mu_i - 1} dx_i,

with h the connected monotone orbifold number of the sorted tuple.  Since
dz = -dx / P(z), omega / prod dx_i = num * prod_i (-1) P(z_i)^{-d_i - 1}.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from itertools import product
from math import prod

from ..errors import UnstableInput
from ..kernel.mpoly import unpack
from ..kernel.rational import mpq, to_fraction
from ..kernel.series import Series, lagrange_invert
from ..partitions import Partition
from ..schur import hurwitz_schur
from .curve import SpectralCurve
from .omega import OmegaForm, compute_omega


@lru_cache(maxsize=None)
def z_of_x(q: int, cutoff: int) -> Series:
    """Inverse of x = z - z^{q+1} near the origin."""
    xz = Series(SpectralCurve(q).x.c, 0, None, mpq(0))
    return lagrange_invert(xz, cutoff)


@lru_cache(maxsize=None)
def _column_matrix(q: int, d: int, B: int) -> tuple:
    """M[b][a] = [x^b] z(x)^a (-P(z(x)))^{-d-1}, for a, b <= B."""
    z = z_of_x(q, B)
    minusP = (Series([mpq(1)], 0, None, mpq(0)) - (z**q).scale(q + 1)).truncate(B)
    w = minusP.inverse() ** (d + 1)
    w = w.truncate(B)
    rows = [[mpq(0)] * (B + 1) for _ in range(B + 1)]
    za = Series([mpq(1)], 0, None, mpq(0))
    for a in range(B + 1):
        col = (za * w).truncate(B)
        for b in range(B + 1):
            rows[b][a] = col[b]
        za = (za * z).truncate(B)
    return tuple(tuple(r) for r in rows)


def expand_in_x(form: OmegaForm, max_part: int) -> dict:
    """{mu (ordered tuple): [prod x_i^{mu_i-1}] omega / prod dx_i} for parts <= max_part."""
    if form.fixed:
        raise ValueError("expansion needs a fully symbolic correlator")
    n = form.nsym
    B = max_part - 1
    mats = [_column_matrix(form.q, form.den[i], B) for i in range(1, n + 1)]
    terms = []
    for k, a in form.num.terms.items():
        e = unpack(k, form.num.nvars)[1:]
        if all(x <= B for x in e):
            terms.append((e, a))
    out = {}
    for bs in product(range(B + 1), repeat=n):
        s = mpq(0)
        for e, a in terms:
            if all(x <= b for x, b in zip(e, bs)):
                s += a * prod(mats[i][bs[i]][e[i]] for i in range(n))
        out[tuple(b + 1 for b in bs)] = to_fraction(s)
    return out


@dataclass
class ExpansionReport:
    q: int
    g: int
    n: int
    max_part: int
    mismatches: list = field(default_factory=list)  # (mu, from omega, expected)
    checked: int = 0

    @property
    def agree(self) -> bool:
        return not self.mismatches


def check_expansion(g: int, n: int, q: int, max_part: int, oracle=None) -> ExpansionReport:
    """Compare the x-expansion of omega_{g,n} with prod mu_i * h_{g,mu}."""
    if oracle is None:
        oracle = lambda g_, mu: hurwitz_schur(g_, mu, q, connected=True)  # noqa: E731
    form = compute_omega(g, n, q)
    rep = ExpansionReport(q, g, n, max_part)
    seen: dict = {}
    for mu, val in expand_in_x(form, max_part).items():
        key = Partition(mu)
        if key not in seen:
            seen[key] = oracle(g, key)
        expected = prod(mu) * seen[key]
        rep.checked += 1
        if val != expected:
            rep.mismatches.append((mu, val, expected))
    return rep


def check_do_karev(q: int, g: int, n: int, mu_max: int) -> ExpansionReport:
    """Stable correlators against the Schur numbers; see :func:`check_expansion`."""
    if 2 * g - 2 + n <= 0:
        raise UnstableInput("use check_unstable for (0,1) and (0,2)")
    return check_expansion(g, n, q, mu_max)


# -- unstable correlators ----------------------------------------------------------------
@dataclass
class UnstableReport:
    q: int
    mu_max: int
    disk: list = field(default_factory=list)  # (mu, from y, mu h_{0,(mu)})
    cylinder: list = field(default_factory=list)  # ((mu1, mu2), from B, mu1 mu2 h_{0,(mu1,mu2)})

    @property
    def agree(self) -> bool:
        return all(a == b for _, a, b in self.disk) and all(a == b for _, a, b in self.cylinder)


def check_unstable(q: int, mu_max: int = 8) -> UnstableReport:
    """y(z(x)) = sum mu h_{0,(mu)} x^{mu-1}, and the regular part of B in x coordinates.

    For (0,2): (B - dx1 dx2/(x1-x2)^2)/(dx1 dx2) = d1 d2 log((z1 - z2)/(x1 - x2)),
    and (z1 - z2)/(x1 - x2) = sum_k [x^k] z(x) * (x1^k - x2^k)/(x1 - x2), so the
    mixed coefficients of the logarithm are the numbers h_{0,(mu1,mu2)} themselves.
    """
    if q < 1:
        raise UnstableInput("q must be positive")
    rep = UnstableReport(q, mu_max)
    B = mu_max - 1
    z = z_of_x(q, B + 1)
    one = Series([mpq(1)], 0, None, mpq(0))
    y = ((z ** (q - 1)) * (one - z**q).truncate(B + 1).inverse()).truncate(B)
    for mu in range(1, mu_max + 1):
        rep.disk.append((mu, to_fraction(y[mu - 1]), mu * hurwitz_schur(0, Partition((mu,)), q, True)))
    L = _log_divided_difference(q, mu_max)
    for m1 in range(1, mu_max + 1):
        for m2 in range(1, mu_max + 1):
            got = to_fraction(L.get((m1, m2), mpq(0)) * m1 * m2)
            rep.cylinder.append(((m1, m2), got, m1 * m2 * hurwitz_schur(0, Partition((m1, m2)), q, True)))
    return rep


def _log_divided_difference(q: int, mu_max: int) -> dict:
    """log((z(x1) - z(x2))/(x1 - x2)) as {(a, b): coefficient}, each exponent <= mu_max."""
    N = 2 * mu_max
    z = z_of_x(q, N + 1)
    X: dict = {}
    for k in range(2, N + 2):
        zk = z[k]
        if zk:
            for i in range(k):
                if i <= mu_max and k - 1 - i <= mu_max:
                    X[(i, k - 1 - i)] = X.get((i, k - 1 - i), mpq(0)) + zk
    # the constant term is [x^1] z = 1, so the logarithm is the series of log(1 + X)
    L: dict = {}
    power = {(0, 0): mpq(1)}
    m = 0
    while True:
        m += 1
        nxt: dict = {}
        for (a, b), u in power.items():
            for (c, d), v in X.items():
                if a + c <= mu_max and b + d <= mu_max:
                    key = (a + c, b + d)
                    nxt[key] = nxt.get(key, mpq(0)) + u * v
        power = {k: v for k, v in nxt.items() if v}
        if not power:
            break
        for key, v in power.items():
            L[key] = L.get(key, mpq(0)) + v * mpq((-1) ** (m + 1), m)
    return L
