"""Cut-and-join operators for the monotone orbifold partition function.

Two equations are checked at finite truncation:

* the evolution equation dZ/dhbar = J Z, with J assembled from the
  zeta-deformed operators Q_r and the coefficients c_alpha of z/zeta(z);
* the n-point cut-and-join equation for the generating functions
  H_{g,n}(x_1..x_n) = sum h_{g,mu} x^mu, including the singular (0,2) part
  log((xi - x)/(xi x)).

Symmetric functions are dicts {Partition: Fraction}; a truncated Z is a
dict {(Partition, hbar power): Fraction}.
"""
from __future__ import annotations

from collections import Counter, defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import factorial

from .errors import UnstableInput
from .kernel.mpoly import MASK, SHIFT, MPoly
from .kernel.rational import mpq, to_fraction
from .partitions import Partition, partitions
from .schur import (
    PartitionFunctionTruncation,
    build_partition_function,
    connected_from_disconnected,
    schur_in_p,
)


# -- z / zeta(z) ----------------------------------------------------------------
def _sinh_coeff(j: int) -> Fraction:
    """[z^{2j}] zeta(z)/z, zeta(z) = e^{z/2} - e^{-z/2}."""
    return Fraction(1, 4**j * factorial(2 * j + 1))


@lru_cache(maxsize=None)
def _c_table(n: int) -> tuple:
    b = [_sinh_coeff(j) for j in range(n + 1)]
    c = [Fraction(1)]
    for a in range(1, n + 1):
        c.append(-sum(b[j] * c[a - j] for j in range(1, a + 1)))
    return tuple(c)


def c_alpha(alpha: int) -> Fraction:
    """[z^{2 alpha}] z/zeta(z)."""
    if alpha < 0:
        raise ValueError("alpha must be non-negative")
    return _c_table(alpha)[alpha]


def _coeffs(n: int, flip: int | None = None) -> list[Fraction]:
    """c_0..c_n, optionally with the sign of c_flip reversed (fault injection)."""
    c = list(_c_table(n))
    if flip is not None and flip <= n:
        c[flip] = -c[flip]
    return c


def _even_mul(a: list, b: list, n: int) -> list:
    out = [Fraction(0)] * (n + 1)
    for i, x in enumerate(a[: n + 1]):
        if x:
            for j, y in enumerate(b[: n + 1 - i]):
                out[i + j] += x * y
    return out


# -- operators on symmetric functions ------------------------------------------------------
@dataclass
class GradedOperator:
    """sum coeff * p_mu d/dp_nu (multiply after differentiating), acting on weight <= W."""

    r: int
    weight: int
    terms: list = field(default_factory=list)  # (mu, nu, coeff)

    def apply(self, f: dict) -> dict:
        out: dict = defaultdict(Fraction)
        for lam, a in f.items():
            if lam.size > self.weight:
                continue
            have = Counter(lam.parts)
            for mu, nu, coef in self.terms:
                if nu.size > lam.size:
                    continue
                fac = 1
                left = Counter(have)
                for k, e in Counter(nu.parts).items():
                    n = left[k]
                    if n < e:
                        fac = 0
                        break
                    fac *= factorial(n) // factorial(n - e)
                    left[k] = n - e
                if not fac:
                    continue
                rest = tuple(left.elements())
                out[Partition(rest + mu.parts)] += a * coef * fac
        return {k: v for k, v in out.items() if v}


@lru_cache(maxsize=None)
def _zeta_scaled(a: int, n: int) -> tuple:
    """zeta(a z)/z as a list in powers of z^2, up to z^{2n}."""
    return tuple(Fraction(a ** (2 * t + 1)) * _sinh_coeff(t) for t in range(n + 1))


@lru_cache(maxsize=None)
def build_Q_r(r: int, W: int) -> GradedOperator:
    """[z^r] Q(z), restricted to weight <= W."""
    if r < 1:
        raise ValueError("r must be positive")
    op = GradedOperator(r, W)
    for s in range(1, W + 1):
        parts_s = list(partitions(s))
        for mu in parts_s:
            for nu in parts_s:
                k = mu.length + nu.length
                # Q ~ z^{-1} * z^{k} * (even series)
                rest = r - k + 1
                if rest < 0 or rest % 2:
                    continue
                n = rest // 2
                ser = list(_c_table(n))
                for a in mu.parts:
                    ser = _even_mul(ser, _zeta_scaled(a, n), n)
                for a in nu.parts:
                    ser = _even_mul(ser, _zeta_scaled(a, n), n)
                denom = mu.aut * nu.aut
                for a in mu.parts:
                    denom *= a
                coef = ser[n] / denom
                if coef:
                    op.terms.append((mu, nu, coef))
    return op


def f_r_eigenvalue(lam, r: int) -> Fraction:
    lam = Partition(lam)
    half = Fraction(1, 2)
    return sum(
        ((p - i + half) ** r - (-i + half) ** r for i, p in enumerate(lam.parts, start=1)),
        Fraction(0),
    )


def f_r_eigencheck(lam, r: int) -> bool:
    """r! Q_r s_lambda == eigenvalue * s_lambda."""
    lam = Partition(lam)
    s = schur_in_p(lam)
    lhs = build_Q_r(r, lam.size).apply(s)
    ev = f_r_eigenvalue(lam, r)
    rhs = {mu: ev * a for mu, a in s.items() if ev * a}
    lhs = {mu: factorial(r) * a for mu, a in lhs.items()}
    return lhs == rhs


# -- evolution equation --------------------------------------------------------------------
def apply_J(Z: PartitionFunctionTruncation, hbar_order: int | None = None, flip: int | None = None) -> dict:
    """J Z up to hbar^{hbar_order} (default: one below the truncation of Z)."""
    H = Z.hbar_order - 1 if hbar_order is None else hbar_order
    W = Z.weight
    c = _coeffs(H // 2 + 1, flip)
    by_k: dict = defaultdict(dict)
    for (mu, k), v in Z.coeffs.items():
        by_k[k][mu] = v
    out: dict = defaultdict(Fraction)

    def add(r, shift, weight):
        Q = build_Q_r(r, W)
        for k, f in by_k.items():
            j = k + shift
            if 0 <= j <= H:
                for mu, v in Q.apply(f).items():
                    out[(mu, j)] += weight * v

    for r in range(2, H + 3):
        add(r, r - 2, Fraction(factorial(r - 1)) * c[0])
    for alpha in range(1, H // 2 + 2):
        for r in range(1, H + 3 - 2 * alpha):
            add(r, r - 2 + 2 * alpha, c[alpha] * factorial(r - 1 + 2 * alpha))
    return {key: v for key, v in out.items() if v}


def evolution_residual(q: int, W: int, hbar_order: int, flip: int | None = None) -> dict:
    """Nonzero coefficients of dZ/dhbar - JZ up to hbar^{hbar_order - 1}."""
    Z = build_partition_function(q, W, hbar_order)
    JZ = apply_J(Z, hbar_order - 1, flip)
    diff: dict = defaultdict(Fraction)
    for (mu, k), v in Z.coeffs.items():
        if k >= 1:
            diff[(mu, k - 1)] += k * v
    for key, v in JZ.items():
        diff[key] -= v
    return {key: v for key, v in diff.items() if v}


def verify_evolution(q: int, W: int, hbar_order: int, flip: int | None = None) -> bool:
    return not evolution_residual(q, W, hbar_order, flip)


# -- the alternating identity ------------------------------------------------------------------
def alternating_sum(n: int) -> Fraction:
    """sum_k prod_{j != k} x_j/(x_k - x_j), which is a constant; returned exactly.

    Checked as a polynomial identity after multiplying by the Vandermonde
    product.  The value is (-1)^{n-1}: Lagrange interpolation of the constant
    1 at the nodes x_j, evaluated at 0.
    """
    if n < 1:
        raise ValueError("n must be positive")
    xs = [MPoly.var(i, n) for i in range(n)]
    V = MPoly.const(1, n)
    for i in range(n):
        for j in range(i + 1, n):
            V = V * (xs[i] - xs[j])
    total = MPoly.const(0, n)
    for k in range(n):
        term = MPoly.const(1, n)
        sign = 1
        for j in range(n):
            if j != k:
                term = term * xs[j]
                if j < k:
                    sign = -sign
        for i in range(n):
            for j in range(i + 1, n):
                if k not in (i, j):
                    term = term * (xs[i] - xs[j])
        total = total + term.scale(sign)
    # total = value * V for a constant value
    if V.terms == {0: mpq(1)}:
        return to_fraction(total.constant_term())
    key = max(V.terms)
    value = total.terms.get(key, mpq(0)) / V.terms[key]
    if total != V.scale(value):
        raise ArithmeticError("alternating sum is not constant")
    return to_fraction(value)


def alternating_sum_identity(n: int) -> bool:
    """True iff sum_k prod_{j != k} x_j/(x_k - x_j) = -1, which holds for even n only."""
    return alternating_sum(n) == -1


# -- n-point cut-and-join -----------------------------------------------------------------------
@lru_cache(maxsize=None)
def connected_table(q: int, W: int, gmax: int) -> dict:
    """{(g, mu): h_circ} for |mu| <= W and g <= gmax."""
    H = 2 * gmax - 2 + W + W // q
    Z = build_partition_function(q, W, max(H, 0))
    return {key: v for key, v in connected_from_disconnected(Z).items() if key[0] <= gmax}


def _compositions(total_max: int, length: int):
    """Tuples of `length` positive ints with sum <= total_max."""
    if length == 0:
        yield ()
        return
    for a in range(1, total_max - length + 2):
        for rest in _compositions(total_max - a, length - 1):
            yield (a,) + rest


def h_series(table: dict, g: int, n: int, T: int, nvars: int | None = None, slots=None) -> MPoly:
    """H_{g,n} truncated at total degree T, variables placed at `slots`."""
    nvars = n if nvars is None else nvars
    slots = list(range(n)) if slots is None else slots
    terms = {}
    for mu in _compositions(T, n):
        v = table.get((g, Partition(mu)))
        if v:
            key = 0
            for s, e in zip(slots, mu):
                key += e << (SHIFT * s)
            terms[key] = mpq(v.numerator, v.denominator)
    return MPoly(terms, nvars)


SHIFT_CONVENTIONS = ("consistent", "printed")


def tilde_shift(g: int, n: int, convention: str = "consistent", flip: int | None = None) -> Fraction:
    """Constant added to H_{g,n} in the n-point cut-and-join equation.

    ``printed``: sum_{alpha=0}^g c_alpha (2g-2+n+2alpha)!/(2g-2+n).

    ``consistent``: the constant forced by the degree-0 part of the equation.
    Only all-singular terms contribute there; they sum to
    (-1)^{n-1} (n+2g-2)! [z^{2g}] (z/zeta(z))^2 for n >= 2 and to 0 for n = 1.
    The two agree exactly when g = 0 and n is odd.
    """
    chi = 2 * g - 2 + n
    if chi <= 0:
        raise UnstableInput(f"(g, n) = ({g}, {n}) is unstable")
    c = _coeffs(g, flip)
    if convention == "printed":
        return sum((c[a] * Fraction(factorial(chi + 2 * a), chi) for a in range(g + 1)), Fraction(0))
    if convention != "consistent":
        raise ValueError(f"unknown convention {convention!r}")
    if n == 1:
        return Fraction(0)
    sq = sum((c[a] * c[g - a] for a in range(g + 1)), Fraction(0))
    return (-1) ** (n - 1) * factorial(n + 2 * g - 2) * sq / chi


@dataclass
class TildeH:
    """H_{g,n} plus a constant; for (0, 2) with one argument a xi-variable the
    singular part log((xi - x)/(xi x)) is carried symbolically."""

    g: int
    n: int
    series: MPoly
    constant: Fraction
    singular: bool = False

    def value(self) -> MPoly:
        return self.series + self.constant


def build_tilde_H(g: int, n: int, q: int, degree_cutoff: int, *, mixed: bool = True,
                  convention: str = "consistent", flip: int | None = None) -> TildeH:
    """Corrected generating function.

    For (0, 1) nothing is added; for (0, 2) the singular part is flagged when
    ``mixed`` (one xi-variable and one x-variable).  Stable cases get the
    constant :func:`tilde_shift` under ``convention``.
    """
    table = connected_table(q, degree_cutoff, g)
    series = h_series(table, g, n, degree_cutoff)
    if (g, n) == (0, 1):
        return TildeH(g, n, series, Fraction(0))
    if (g, n) == (0, 2):
        return TildeH(g, n, series, Fraction(0), singular=mixed)
    return TildeH(g, n, series, tilde_shift(g, n, convention, flip))


class _Graded:
    """Finite sums over grades (m, d, e) -> MPoly in x_0..x_{n-1}, W_0..W_{n-1}.

    m counts xi-variables, d the power of z^2, e the genus bookkeeping.
    Coefficients are truncated at x-degree T; W_j = x_k/(x_k - x_j) has degree 0.
    """

    def __init__(self, n, T, dmax, emax, data=None):
        self.n, self.T, self.dmax, self.emax = n, T, dmax, emax
        self.data = data if data is not None else {}

    def like(self, data):
        return _Graded(self.n, self.T, self.dmax, self.emax, data)

    def xdeg(self, key):
        return sum((key >> (SHIFT * i)) & MASK for i in range(self.n))

    def trunc(self, p: MPoly) -> MPoly:
        T = self.T
        return MPoly({k: v for k, v in p.terms.items() if self.xdeg(k) <= T}, p.nvars)

    def add_term(self, grade, p: MPoly):
        if not p:
            return
        cur = self.data.get(grade)
        self.data[grade] = p if cur is None else cur + p

    def __add__(self, other):
        out = self.like(dict(self.data))
        for gr, p in other.data.items():
            out.add_term(gr, p)
        return out

    def __mul__(self, other):
        out = self.like({})
        for (m1, d1, e1), p1 in self.data.items():
            for (m2, d2, e2), p2 in other.data.items():
                d, e = d1 + d2, e1 + e2
                if d > self.dmax or e > self.emax:
                    continue
                prod = self.trunc(p1 * p2)
                out.add_term((m1 + m2, d, e), prod)
        out.data = {g: p for g, p in out.data.items() if p}
        return out

    def scale_grade(self, f):
        return self.like({g: p.scale(f(g)) for g, p in self.data.items()})

    def exp(self):
        """exp of a graded element with no (0, 0, 0) part and positive x-valuation or m."""
        one = MPoly.const(1, 2 * self.n)
        out = self.like({(0, 0, 0): one})
        power = self.like({(0, 0, 0): one})
        j = 1
        while True:
            power = power * self
            if not power.data:
                break
            out = out + power.scale_grade(lambda g, j=j: Fraction(1, factorial(j)))
            j += 1
        return out


def _w_poly_derivation(p: MPoly, k: int, n: int) -> MPoly:
    """D_{x_k} with D_k x_k = x_k and D_k W_j = W_j - W_j^2."""
    out: dict = defaultdict(lambda: mpq(0))
    sk = SHIFT * k
    for key, a in p.terms.items():
        ek = (key >> sk) & MASK
        if ek:
            out[key] += a * ek
        for j in range(n):
            sj = SHIFT * (n + j)
            bj = (key >> sj) & MASK
            if bj:
                out[key] += a * bj
                out[key + (1 << sj)] -= a * bj
    return MPoly({kk: v for kk, v in out.items() if v}, p.nvars)


@lru_cache(maxsize=None)
def _singular_poly(r: int) -> tuple:
    """D_xi^r log((xi - x)/(xi x)) as a polynomial in w = xi/(xi - x), r >= 1 (low degree first)."""
    p = [Fraction(-1), Fraction(1)]  # w - 1
    for _ in range(r - 1):
        # D = w(1 - w) d/dw
        dp = [i * a for i, a in enumerate(p)][1:]
        new = [Fraction(0)] * (len(p) + 1)
        for i, a in enumerate(dp):
            new[i + 1] += a
            new[i + 2] -= a
        p = new
    return tuple(p)


@dataclass
class CutJoinReport:
    q: int
    g: int
    n: int
    degree_cutoff: int
    mismatches: dict  # degree -> number of mismatching monomials (after clearing denominators)
    constant_lhs: Fraction
    constant_rhs: Fraction

    @property
    def positive_degrees_agree(self) -> bool:
        return not any(d >= 1 for d in self.mismatches)

    @property
    def agree(self) -> bool:
        return not self.mismatches


def _block_weight(table, q, n, k, S: tuple, s: int, T: int, dmax: int, emax: int) -> _Graded:
    """EGF weight of one block: s xi-variables (all set to x_k) and x-variables S."""
    out = _Graded(n, T, dmax, emax)
    nv = 2 * n
    inv_s = Fraction(1, factorial(s))
    for gp in range(0, emax + 1):
        e = gp + s - 1
        if e > emax:
            break
        npts = s + len(S)
        if npts == 0:
            continue
        # regular part: sum over tuples (a_1..a_s, b_S)
        for tup in _compositions(T, npts):
            v = table.get((gp, Partition(tup)))
            if not v:
                continue
            a, b = tup[:s], tup[s:]
            # prod_j zeta(z a_j)/z: even series in z
            ser = [Fraction(1)] + [Fraction(0)] * dmax
            for aj in a:
                ser = _even_mul(ser, _zeta_scaled(aj, dmax), dmax)
            key = sum(a) << (SHIFT * k)
            for j, bj in zip(S, b):
                key += bj << (SHIFT * j)
            for d, coef in enumerate(ser):
                if coef:
                    out.add_term((s, d, e), MPoly({key: mpq(to_q(v * coef * inv_s))}, nv))
        if gp == 0 and s == 1 and len(S) == 1:
            # singular part: sum_t z^{2t}/(4^t (2t+1)!) D_xi^{2t+1} log(...), xi -> x_k
            j = S[0]
            for t in range(dmax + 1):
                poly = _singular_poly(2 * t + 1)
                terms = {}
                for i, cf in enumerate(poly):
                    if cf:
                        terms[i << (SHIFT * (n + j))] = mpq(to_q(cf * _sinh_coeff(t)))
                out.add_term((1, t, 0), MPoly(terms, nv))
    return out


def to_q(x: Fraction):
    return mpq(x.numerator, x.denominator)


def _set_partitions(items):
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for p in _set_partitions(rest):
        yield [(first,)] + p
        for i in range(len(p)):
            yield p[:i] + [(first,) + p[i]] + p[i + 1 :]


def npoint_sides(q: int, g: int, n: int, T: int, *, convention: str = "consistent", flip: int | None = None):
    """Return (LHS, [R_k for k in range(n)]) as polynomials in x and W (slots n..2n-1)."""
    if 2 * g - 2 + n <= 0:
        raise UnstableInput(f"(g, n) = ({g}, {n}) is unstable")
    table = connected_table(q, T, g)
    nv = 2 * n
    chi = 2 * g - 2 + n
    c = _coeffs(g + 1, flip)

    # LHS
    Ht = build_tilde_H(g, n, q, T, convention=convention, flip=flip)
    base = MPoly(dict(Ht.series.terms), nv)
    lhs = MPoly.const(Ht.constant * chi, nv)
    for key, a in base.terms.items():
        deg = sum((key >> (SHIFT * i)) & MASK for i in range(n))
        lhs.add_scaled(MPoly({key: a}, nv), chi + Fraction(deg, q))

    dmax = emax = g
    rights = []
    for k in range(n):
        labels = tuple(j for j in range(n) if j != k)
        # blocks with no x-labels
        w_empty = _Graded(n, T, dmax, emax)
        for s in range(1, g + 2):
            w_empty = w_empty + _block_weight(table, q, n, k, (), s, T, dmax, emax)
        G = w_empty.exp()
        acc = _Graded(n, T, dmax, emax)
        for pi in _set_partitions(labels):
            term = G
            for S in pi:
                wS = _Graded(n, T, dmax, emax)
                for s in range(1, g + 2):
                    wS = wS + _block_weight(table, q, n, k, S, s, T, dmax, emax)
                term = term * wS
                if not term.data:
                    break
            acc = acc + term
        # zeta(z D_k)/(z D_k) then z/zeta(z)
        after = _Graded(n, T, dmax, emax)
        for (m, d, e), p in acc.data.items():
            cur = p
            for t in range(0, dmax - d + 1):
                if t:
                    cur = _w_poly_derivation(_w_poly_derivation(cur, k, n), k, n)
                after.add_term((m, d + t, e), cur.scale(to_q(_sinh_coeff(t))))
        final = _Graded(n, T, dmax, emax)
        for (m, d, e), p in after.data.items():
            for a in range(0, dmax - d + 1):
                if c[a]:
                    final.add_term((m, d + a, e), p.scale(to_q(c[a])))
        R = MPoly({}, nv)
        for (m, d, e), p in final.data.items():
            if m < 1:
                continue
            if e == g - d and m + 2 * d >= 2:
                R.add_scaled(p, mpq(factorial(m + 2 * d - 1)))
            for alpha in range(1, g + 1):
                if e == g - d - alpha and m + 2 * d >= 1:
                    R.add_scaled(p, to_q(c[alpha]) * factorial(m + 2 * d - 1 + 2 * alpha))
        rights.append(R)
    return lhs, rights


def _clear_denominators(p: MPoly, k: int, n: int, E: int, T: int) -> MPoly:
    """V * p with V = prod_{i<j} (x_i - x_j)^E and W_j = x_k/(x_k - x_j)."""
    xs = [MPoly.var(i, n) for i in range(n)]
    groups: dict = defaultdict(dict)
    for key, a in p.terms.items():
        wkey = key >> (SHIFT * n)
        groups[wkey][key & ((1 << (SHIFT * n)) - 1)] = a
    out = MPoly({}, n)
    for wkey, terms in groups.items():
        N = MPoly(terms, n)
        b = [(wkey >> (SHIFT * j)) & MASK for j in range(n)]
        U = MPoly.const(1, n)
        for j in range(n):
            if j == k:
                continue
            U = U * (xs[k] ** b[j]) * ((xs[k] - xs[j]) ** (E - b[j]))
            if j < k and E % 2:
                U = -U
        out = out + N * U
    rest = MPoly.const(1, n)
    for i in range(n):
        for j in range(i + 1, n):
            if k not in (i, j):
                rest = rest * ((xs[i] - xs[j]) ** E)
    return out * rest


def verify_npoint_cj_report(q: int, g: int, n: int, degree_cutoff: int, *,
                            convention: str = "consistent", flip: int | None = None) -> CutJoinReport:
    T = degree_cutoff
    lhs, rights = npoint_sides(q, g, n, T, convention=convention, flip=flip)
    E = 0
    for R in rights:
        for key in R.terms:
            E = max(E, max((key >> (SHIFT * (n + j))) & MASK for j in range(n)))
    degV = E * n * (n - 1) // 2
    total = MPoly({}, n)
    for k, R in enumerate(rights):
        total = total + _clear_denominators(R, k, n, E, T)
    lhs_c = _clear_denominators(MPoly({kk: v for kk, v in lhs.terms.items()}, 2 * n), 0, n, E, T)
    diff = lhs_c - total
    mism: dict = defaultdict(int)
    for key in diff.terms:
        deg = sum((key >> (SHIFT * i)) & MASK for i in range(n)) - degV
        if deg <= T:
            mism[deg] += 1
    # constant terms of each side (before clearing denominators)
    lhs0 = to_fraction(lhs.terms.get(0, mpq(0)))
    V0 = _clear_denominators(MPoly.const(1, 2 * n), 0, n, E, T)
    rhs_deg0 = MPoly({kk: v for kk, v in total.terms.items()
                      if sum((kk >> (SHIFT * i)) & MASK for i in range(n)) == degV}, n)
    lead = max(V0.terms)
    rhs0 = to_fraction(rhs_deg0.terms.get(lead, mpq(0)) / V0.terms[lead])
    return CutJoinReport(q, g, n, T, dict(mism), lhs0, rhs0)


def verify_npoint_cj(q: int, g: int, n: int, degree_cutoff: int, **kw) -> bool:
    return verify_npoint_cj_report(q, g, n, degree_cutoff, **kw).agree
