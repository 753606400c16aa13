"""Partition function of monotone orbifold Hurwitz numbers via Schur functions.

    Z = sum_lambda s_lambda(delta_q) prod_{boxes} (1 - hbar * content)^{-1} s_lambda(p)

with s_lambda expanded in power sums by Murnaghan-Nakayama.  Disconnected
numbers are read off Z; connected numbers come from log Z, computed with the
exponential formula over set partitions of the parts of mu.
"""
from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import factorial

from .errors import CutoffExceeded, SizeMismatch
from .partitions import Partition, partitions, partitions_upto


# -- characters -----------------------------------------------------------------
def _beta(parts: tuple) -> tuple:
    n = len(parts)
    return tuple(p + n - 1 - i for i, p in enumerate(parts))


def _from_beta(beta) -> tuple:
    b = sorted(beta, reverse=True)
    n = len(b)
    return tuple(x for x in (v - (n - 1 - i) for i, v in enumerate(b)) if x > 0)


@lru_cache(maxsize=None)
def _mn(lam: tuple, mu: tuple) -> int:
    if not mu:
        return 1 if not lam else 0
    k, rest = mu[0], mu[1:]
    beta = _beta(lam)
    bset = set(beta)
    total = 0
    for b in beta:
        nb = b - k
        if nb < 0 or nb in bset:
            continue
        # leg length = number of beads jumped over
        sign = -1 if sum(1 for x in beta if nb < x < b) % 2 else 1
        new = _from_beta([nb if x == b else x for x in beta])
        total += sign * _mn(new, rest)
    return total


def mn_character(lam, mu) -> int:
    """chi^lambda at cycle type mu (Murnaghan-Nakayama)."""
    lam, mu = Partition(lam), Partition(mu)
    if lam.size != mu.size:
        raise SizeMismatch(f"|lambda| = {lam.size} but |mu| = {mu.size}")
    return _mn(lam.parts, mu.parts)


# -- symmetric functions in the power-sum basis ----------------------------------------
PowerSumPoly = dict  # Partition -> Fraction


@lru_cache(maxsize=None)
def _schur_in_p(lam: Partition) -> tuple:
    out = []
    for mu in partitions(lam.size):
        chi = _mn(lam.parts, mu.parts)
        if chi:
            out.append((mu, Fraction(chi, mu.z)))
    return tuple(out)


def schur_in_p(lam, W: int | None = None) -> PowerSumPoly:
    """s_lambda = sum_mu chi^lambda_mu p_mu / z_mu."""
    lam = Partition(lam)
    if W is not None and lam.size > W:
        return {}
    return dict(_schur_in_p(lam))


def content_product(lam, hbar_order: int) -> list[Fraction]:
    """Coefficients of prod_boxes (1 - hbar*cr)^{-1} up to hbar^hbar_order."""
    coeffs = [Fraction(1)] + [Fraction(0)] * hbar_order
    for c in Partition(lam).contents():
        if c == 0:
            continue
        # multiply by the geometric series in c*hbar
        for k in range(1, hbar_order + 1):
            coeffs[k] += c * coeffs[k - 1]
    return coeffs


def schur_at_delta_q(lam, q: int) -> Fraction:
    """s_lambda at p_j = delta_{j,q}: chi^lambda_{(q^k)} / (q^k k!)."""
    lam = Partition(lam)
    if lam.size % q:
        return Fraction(0)
    k = lam.size // q
    return Fraction(_mn(lam.parts, (q,) * k), q**k * factorial(k))


# -- partition function --------------------------------------------------------------
@dataclass
class PartitionFunctionTruncation:
    """Coefficients of p_mu hbar^k in Z for |mu| <= weight, k <= hbar_order."""

    q: int
    weight: int
    hbar_order: int
    coeffs: dict = field(default_factory=dict)  # (Partition, k) -> Fraction

    def coefficient(self, mu, k: int) -> Fraction:
        mu = Partition(mu)
        if mu.size > self.weight or k > self.hbar_order:
            raise CutoffExceeded(f"p_{mu} hbar^{k} is outside the truncation")
        return self.coeffs.get((mu, k), Fraction(0))

    def hbar_series(self, mu) -> list[Fraction]:
        mu = Partition(mu)
        return [self.coeffs.get((mu, k), Fraction(0)) for k in range(self.hbar_order + 1)]

    def monomials(self):
        return sorted({mu for mu, _ in self.coeffs}, key=lambda m: (m.size, m.parts))


def build_partition_function(q: int, W: int, hbar_order: int) -> PartitionFunctionTruncation:
    Z = PartitionFunctionTruncation(q, W, hbar_order)
    acc: dict = defaultdict(Fraction)
    for lam in partitions_upto(W):
        a = schur_at_delta_q(lam, q)
        if not a:
            continue
        cp = content_product(lam, hbar_order)
        for mu, s in _schur_in_p(lam):
            for k, c in enumerate(cp):
                if c:
                    acc[(mu, k)] += a * s * c
    Z.coeffs = {key: v for key, v in acc.items() if v}
    return Z


def hbar_power(g: int, mu: Partition, q: int) -> int | None:
    if mu.size % q:
        return None
    return 2 * g - 2 + mu.length + mu.size // q


def extract_disconnected(Z: PartitionFunctionTruncation, g: int, mu) -> Fraction:
    """h^bullet_{g,mu} = |Aut mu| * [p_mu hbar^{2g-2+l+|mu|/q}] Z."""
    mu = Partition(mu)
    k = hbar_power(g, mu, Z.q)
    if k is None or k < 0:
        return Fraction(0)
    return mu.aut * Z.coefficient(mu, k)


# -- connected numbers ------------------------------------------------------------------
def set_partitions(items: tuple):
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for p in set_partitions(rest):
        yield [(first,)] + p
        for i in range(len(p)):
            yield p[:i] + [(first,) + p[i]] + p[i + 1 :]


def _series_mul(a, b, n):
    out = [Fraction(0)] * (n + 1)
    for i, x in enumerate(a):
        if x:
            for j in range(n + 1 - i):
                out[i + j] += x * b[j]
    return out


def connected_series(Z: PartitionFunctionTruncation, mu) -> list[Fraction]:
    """hbar-series of connected numbers for the labelled parts of mu.

    Labelled disconnected series H(mu) = |Aut mu| [p_mu] Z.  The cumulant
    sum_pi (-1)^{|pi|-1} (|pi|-1)! prod_B H(mu_B) inverts the exponential
    formula block by block.
    """
    mu = Partition(mu)
    n = Z.hbar_order
    parts = mu.parts

    def labelled(sub):
        p = Partition(sub)
        return [p.aut * c for c in Z.hbar_series(p)]

    total = [Fraction(0)] * (n + 1)
    for pi in set_partitions(tuple(range(len(parts)))):
        term = [Fraction(1)] + [Fraction(0)] * n
        for block in pi:
            term = _series_mul(term, labelled(tuple(parts[i] for i in block)), n)
        k = len(pi)
        w = (-1) ** (k - 1) * factorial(k - 1)
        for i in range(n + 1):
            total[i] += w * term[i]
    return total


def connected_from_disconnected(Z: PartitionFunctionTruncation) -> dict:
    """{(g, mu): h^circ_{g,mu}} for every mu and genus inside the truncation."""
    out = {}
    for mu in partitions_upto(Z.weight):
        if not mu.parts or mu.size % Z.q:
            continue
        series = connected_series(Z, mu)
        base = hbar_power(0, mu, Z.q)
        for k in range(base, Z.hbar_order + 1):
            if (k - base) % 2 == 0:
                out[((k - base) // 2, mu)] = series[k]
    return out


def connected_number(Z: PartitionFunctionTruncation, g: int, mu) -> Fraction:
    mu = Partition(mu)
    k = hbar_power(g, mu, Z.q)
    if k is None or k < 0:
        return Fraction(0)
    if mu.size > Z.weight or k > Z.hbar_order:
        raise CutoffExceeded(f"(g={g}, mu={mu}) needs weight {mu.size} and hbar order {k}")
    return connected_series(Z, mu)[k]


@lru_cache(maxsize=None)
def _monomial_series(q: int, nu: Partition, H: int) -> tuple:
    """[p_nu] Z up to hbar^H, summing over lambda |- |nu| only."""
    acc = [Fraction(0)] * (H + 1)
    for lam in partitions(nu.size):
        a = schur_at_delta_q(lam, q)
        if not a:
            continue
        chi = _mn(lam.parts, nu.parts)
        if not chi:
            continue
        w = a * Fraction(chi, nu.z)
        for k, c in enumerate(content_product(lam, H)):
            if c:
                acc[k] += w * c
    return tuple(acc)


def _labelled_series(q: int, parts: tuple, H: int) -> list:
    nu = Partition(parts)
    if nu.size % q:
        return [Fraction(0)] * (H + 1)
    return [nu.aut * c for c in _monomial_series(q, nu, H)]


def connected_series_direct(q: int, mu, H: int) -> list[Fraction]:
    """As :func:`connected_series`, computing only the monomials p_nu with nu inside mu."""
    parts = Partition(mu).parts
    total = [Fraction(0)] * (H + 1)
    for pi in set_partitions(tuple(range(len(parts)))):
        term = [Fraction(1)] + [Fraction(0)] * H
        for block in pi:
            sub = tuple(sorted((parts[i] for i in block), reverse=True))
            term = _series_mul(term, _labelled_series(q, sub, H), H)
            if not any(term):
                break
        k = len(pi)
        w = (-1) ** (k - 1) * factorial(k - 1)
        for i in range(H + 1):
            total[i] += w * term[i]
    return total


def hurwitz_schur(g: int, mu, q: int, connected: bool) -> Fraction:
    """One Hurwitz number from the Schur expansion, touching only the monomials it needs."""
    mu = Partition(mu)
    k = hbar_power(g, mu, q)
    if k is None or k < 0:
        return Fraction(0)
    if not connected:
        return mu.aut * _monomial_series(q, mu, k)[k]
    return connected_series_direct(q, mu, k)[k]


# -- literal series logarithm (test oracle for the cumulant route) ---------------------------
def _poly_mul(a: dict, b: dict, W: int, H: int) -> dict:
    out: dict = defaultdict(Fraction)
    for (ma, ka), x in a.items():
        for (mb, kb), y in b.items():
            if ma.size + mb.size <= W and ka + kb <= H:
                out[(Partition(ma.parts + mb.parts), ka + kb)] += x * y
    return {k: v for k, v in out.items() if v}


def series_log(Z: PartitionFunctionTruncation) -> dict:
    """log Z = sum_k (-1)^{k+1} X^k / k with X = Z - 1, truncated in weight and hbar."""
    W, H = Z.weight, Z.hbar_order
    X = {key: v for key, v in Z.coeffs.items() if key[0].parts}
    out: dict = defaultdict(Fraction)
    power = dict(X)
    k = 1
    while power:
        for key, v in power.items():
            out[key] += Fraction((-1) ** (k + 1), k) * v
        power = _poly_mul(power, X, W, H)
        k += 1
    return {key: v for key, v in out.items() if v}
