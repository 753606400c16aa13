"""Linear and quadratic loop equations at the critical points.

Spectators are fixed generic rationals (1/5, 1/7, 1/11, ... by default), so
every check reduces to Laurent series in t = z - c over Q[c]/(P).

Linear:    f = omega_{g,n}(z, .)/dx(z) has f(c+t) + f(c+sigma(t)) regular at t = 0.
Quadratic: omega_{g-1,n+1}(z, sigma z, .) + sum_{splittings} omega(z, .) omega(sigma z, .),
           written as F(t) dt^2 (omega_{0,1} included), has F = O(t^2).
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from ..errors import SpectatorAtPole, UnstableInput
from ..kernel.modring import critical_ring
from ..kernel.rational import mpq, to_fraction
from ..kernel.series import Series
from .curve import local_dx
from .omega import (
    PFrac,
    _check_spectator,
    _lift,
    _omega02_local,
    _pull,
    _stable_local,
    disk_local,
    integrand_terms,
    omega_form,
)
from .local import V_inverse_power, sigma_power

DEFAULT_SPECTATORS = (Fraction(1, 5), Fraction(1, 7), Fraction(1, 11), Fraction(1, 13), Fraction(1, 17))
FAULT = mpq(1, 3)


def default_spectators(k: int) -> tuple:
    if k > len(DEFAULT_SPECTATORS):
        raise ValueError(f"only {len(DEFAULT_SPECTATORS)} default spectators")
    return DEFAULT_SPECTATORS[:k]


def _spectators(q: int, n: int, values) -> tuple:
    if values is None:
        values = default_spectators(n - 1)
    values = tuple(to_fraction(v) for v in values)
    if len(values) != n - 1:
        raise ValueError(f"need {n - 1} spectator values, got {len(values)}")
    if len(set(values)) != len(values):
        raise SpectatorAtPole("two spectators coincide (diagonal pole)")
    return tuple(_check_spectator(q, v) for v in values)


@dataclass
class LoopReport:
    kind: str
    q: int
    g: int
    n: int
    spectators: tuple
    mutated: bool
    offending: list = field(default_factory=list)  # t-exponents with a nonzero coefficient

    @property
    def holds(self) -> bool:
        return not self.offending


# -- linear -------------------------------------------------------------------------------
def _omega_over_dt(q: int, g: int, n: int, spect: tuple, cutoff: int, nv: int) -> Series:
    if (g, n) == (0, 1):
        return _lift(disk_local(q, cutoff), q, nv)
    if (g, n) == (0, 2):
        return _omega02_local(q, spect[0], nv, cutoff, pulled=False)
    form = omega_form(q, g, n, 1, tuple(sorted(spect)))
    return _stable_local(form, [], nv, cutoff, pulled=False)


def linear_loop_report(q: int, g: int, n: int, spectator_values=None, mutate: bool = False) -> LoopReport:
    """Negative t-powers of f(c+t) + f(c+sigma(t)), f = omega/dx.

    Mutation adds (1 + z) dz / (3 P(z)^2) to omega.  Neither part alone is
    visible for every q: for q = 1, P(sigma z) = -P(z) makes the f of dz/P^2
    odd under sigma; for q = 2, z dz / P^2 = d(-1/(6P)) is exact.
    """
    if g < 0 or n < 1:
        raise UnstableInput("need g >= 0 and n >= 1")
    spect = _spectators(q, n, spectator_values)
    nv = 2
    zero = PFrac.zero(q, nv)
    om = _omega_over_dt(q, g, n, spect, 0, nv)
    if mutate:
        ring = critical_ring(q)
        z_at = Series([ring.gen + 1, ring.one], 0, None, ring.zero)  # 1 + z at z = c + t
        fault = (z_at * V_inverse_power(q, 2, 2)).shift(-2).scale(FAULT).truncate(0)
        om = (om + _lift(fault, q, nv)).truncate(0)
    lo = min(om.lo, 0)
    f = (om * _lift(local_dx(q).inverse_to(-lo), q, nv)).truncate(-1)
    # f(c + sigma(t)): f is a function, so compose without the sigma' factor
    comp: dict = {}
    for a, Fa in f.items():
        for j, r in sigma_power(q, a, -1).items():
            comp[j] = comp.get(j, zero) + Fa * r
    total = (f + Series.from_dict(comp, cutoff=-1, zero=zero)).truncate(-1)
    rep = LoopReport("linear", q, g, n, tuple(to_fraction(v) for v in spect), mutate)
    rep.offending = [k for k, a in total.items() if k < 0 and a]
    return rep


def check_linear_loop(q: int, g: int, n: int, spectator_values=None, mutate: bool = False) -> bool:
    return linear_loop_report(q, g, n, spectator_values, mutate).holds


# -- quadratic ------------------------------------------------------------------------------
def quadratic_terms(q: int, g: int, n: int, spect: tuple, top: int = 1, disk_fault=None) -> list:
    """Every term of the quadratic combination as a series in t up to t^top."""
    nv = 3
    if (g, n) == (0, 1) and disk_fault is not None:
        y = disk_local(q, top)
        ring = critical_ring(q)
        faulty = y + Series([ring.one * disk_fault], 0, None, ring.zero)
        pulled = _pull(faulty, q, None, top)
        return [_lift((faulty * pulled).truncate(top), q, nv)]
    return integrand_terms(q, g, n, [], tuple(sorted(spect)), nv, top, with_disk=True)


def quadratic_loop_report(q: int, g: int, n: int, spectator_values=None, mutate: bool = False) -> LoopReport:
    """F(t) = O(t^2) for the quadratic combination, with F the dt^2 coefficient.

    Mutation doubles the first term of the combination; when the combination
    has a single term (g, n) = (0, 1), the fault is omega_{0,1} -> omega_{0,1} + dz/3.
    """
    if g < 0 or n < 1:
        raise UnstableInput("need g >= 0 and n >= 1")
    spect = _spectators(q, n, spectator_values)
    top = 1
    if mutate and (g, n) == (0, 1):
        terms = quadratic_terms(q, g, n, spect, top, disk_fault=FAULT)
    else:
        terms = quadratic_terms(q, g, n, spect, top)
        if mutate:
            terms[0] = terms[0].scale(2)
    total = terms[0]
    for t in terms[1:]:
        total = (total + t).truncate(top)
    rep = LoopReport("quadratic", q, g, n, tuple(to_fraction(s) for s in spect), mutate)
    rep.offending = [k for k, a in total.items() if k <= top and a]
    return rep


def check_quadratic_loop(q: int, g: int, n: int, spectator_values=None, mutate: bool = False) -> bool:
    return quadratic_loop_report(q, g, n, spectator_values, mutate).holds
