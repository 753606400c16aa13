import json
from fractions import Fraction

import pytest
from hypothesis import HealthCheck, given, settings
from hypothesis import strategies as st

from monotone_tr.errors import SpectatorAtPole, UnstableInput
from monotone_tr.kernel import Series, critical_ring, ring_invert, ring_trace
from monotone_tr.partitions import Partition
from monotone_tr.schur import hurwitz_schur
from monotone_tr.tr.curve import SpectralCurve, local_dx, local_x
from monotone_tr.tr.expand import check_do_karev, check_unstable, expand_in_x, z_of_x
from monotone_tr.tr.local import (
    deck,
    kernel_coefficient,
    kernel_denominator_inverse,
    sigma_power,
)
from monotone_tr.tr.loops import (
    check_linear_loop,
    check_quadratic_loop,
    linear_loop_report,
    quadratic_loop_report,
)
from monotone_tr.tr.omega import (
    PFrac,
    SeedDifferential,
    _lift,
    _stable_local,
    compute_omega,
    integrand_terms,
    omega_form,
    recursion_kernel,
)

QS = [1, 2, 3]
STABLE = [(0, 3), (1, 1), (0, 4), (1, 2)]


# -- curve and deck transformation ------------------------------------------------------------
@pytest.mark.parametrize("q", QS + [4])
def test_deck_is_involution_preserving_x(q):
    N = 8
    sig = deck(q, N)
    assert sig[1] == -critical_ring(q).one
    assert sig.compose(sig).truncate(N).agrees_with(Series.monomial(1, critical_ring(q).one), N)
    x = local_x(q)
    assert x.compose(sig).truncate(N).agrees_with(x.truncate(N), N)


@pytest.mark.parametrize("q", QS)
def test_critical_points_are_simple_zeros_of_dx(q):
    dx = local_dx(q)
    assert dx[0] == 0 and dx[1] != 0
    curve = SpectralCurve(q)
    assert curve.x(Fraction(1, 2)) == Fraction(1, 2) - Fraction(1, 2) ** (q + 1)


@pytest.mark.parametrize("q", QS)
def test_kernel_valuations(q):
    # the denominator has a double zero; sigma^k - t^k supplies one power of t back
    assert kernel_denominator_inverse(q, 4).valuation == -2
    assert kernel_coefficient(q, 1, 4).valuation == -1
    # for q = 1 sigma(t) = -t exactly, so the even kappa_k vanish
    assert all(kernel_coefficient(q, k, 4).valuation >= -1 for k in (2, 3, 4))
    assert recursion_kernel(q, 2).valuation == -1


# -- correlators -----------------------------------------------------------------------------
@pytest.mark.parametrize("q", QS)
@pytest.mark.parametrize("gn", STABLE)
def test_omega_invariants(q, gn):
    w = compute_omega(*gn, q)
    assert w.is_symmetric()
    assert w.degree_bound_holds()
    assert w.residues_vanish()
    g, n = gn
    assert w.pole_orders == (6 * g - 4 + 2 * n,) * n


@pytest.mark.parametrize("q", QS)
def test_omega03_closed_form(q):
    """omega_{0,3} = -sum_c B B B / (dx dy) at z = c, in the sign convention of the kernel."""
    ring = critical_ring(q)
    c = ring.gen
    curve = SpectralCurve(q)
    ev = lambda p: sum((c**i * a for i, a in enumerate(p.c)), ring.zero)  # noqa: E731
    dy = curve.y.deriv()
    val = -ring_invert(ev(curve.dx.deriv()) * ev(dy.num) * ring_invert(ev(dy.den)))
    zs = [Fraction(1, 5), Fraction(1, 7), Fraction(2, 3)]
    for z in zs:
        val = val * ring_invert((ring.const(z) - c) ** 2)
    assert compute_omega(0, 3, q).evaluate(*zs) == ring_trace(val)


@pytest.mark.parametrize("q", [1, 2])
def test_fixed_spectators_match_symbolic(q):
    full = compute_omega(1, 2, q)
    a = Fraction(1, 7)
    part = omega_form(q, 1, 2, 1, (a,))
    for z in (Fraction(1, 3), Fraction(-2, 5)):
        assert part.evaluate(z) == full.evaluate(z, a)


def test_slack_does_not_change_output():
    base = compute_omega(1, 1, 2)
    assert compute_omega(1, 1, 2, slack=6).numerator_dict() == base.numerator_dict()
    assert compute_omega(0, 3, 3, slack=3).pole_orders == compute_omega(0, 3, 3).pole_orders


def test_json_form():
    doc = json.loads(compute_omega(0, 3, 1).dumps())
    assert set(doc) == {"g", "n", "q", "pole_orders", "numerator"}
    assert doc["pole_orders"] == [2, 2, 2]
    assert all(len(k.split(",")) == 3 for k in doc["numerator"])


def test_seeds():
    ydx = compute_omega(0, 1, 2)
    assert isinstance(ydx, SeedDifferential) and (ydx.g, ydx.n) == (0, 1)
    z = Fraction(1, 3)
    # y dx / dz = z^{q-1} (1 - (q+1) z^q) / (1 - z^q)
    assert ydx.evaluate(z) == z * (1 - 3 * z**2) / (1 - z**2)
    B = compute_omega(0, 2, 2)
    assert B.evaluate(1, 3) == Fraction(1, 4)
    with pytest.raises(SpectatorAtPole):
        B.evaluate(2, 2)


def test_input_errors():
    with pytest.raises(UnstableInput):
        omega_form(1, 0, 2)
    with pytest.raises(SpectatorAtPole):
        omega_form(1, 0, 3, 1, (Fraction(1, 3), Fraction(1, 3)))
    with pytest.raises(SpectatorAtPole):
        omega_form(1, 0, 3, 1, (Fraction(1, 2), Fraction(1, 3)))  # 1/2 is the critical point for q = 1
    with pytest.raises(SpectatorAtPole):
        compute_omega(0, 3, 1).evaluate(Fraction(1, 2), 0, 0)


# -- expansion ---------------------------------------------------------------------------------
@pytest.mark.parametrize("q", QS)
def test_z_of_x_inverts_x(q):
    z = z_of_x(q, 8)
    x = Series(SpectralCurve(q).x.c)
    ident = x.compose(z).truncate(8)
    assert ident[1] == 1 and all(ident[k] == 0 for k in range(2, 9))


@pytest.mark.parametrize("q", QS)
@pytest.mark.parametrize("gn", [(0, 3), (1, 1)])
def test_expansion_matches_hurwitz_small(q, gn):
    rep = check_do_karev(q, *gn, 4)
    assert rep.agree and rep.checked == 4 ** gn[1]


def test_expansion_is_symmetric_in_order():
    vals = expand_in_x(compute_omega(0, 3, 2), 3)
    assert vals[(1, 2, 3)] == vals[(3, 1, 2)] == 6 * hurwitz_schur(0, Partition((3, 2, 1)), 2, True)


@pytest.mark.parametrize("q", QS)
def test_unstable(q):
    assert check_unstable(q, 6).agree


def test_expansion_check_rejects_unstable():
    with pytest.raises(UnstableInput):
        check_do_karev(1, 0, 2, 3)


# -- loop equations ------------------------------------------------------------------------------
LOOP_CASES = [(0, 1), (0, 2), (0, 3), (1, 1), (1, 2)]


@pytest.mark.parametrize("q", QS)
@pytest.mark.parametrize("gn", LOOP_CASES)
def test_loops_hold_and_detect_faults(q, gn):
    assert check_linear_loop(q, *gn)
    assert check_quadratic_loop(q, *gn)
    assert not check_linear_loop(q, *gn, mutate=True)
    assert not check_quadratic_loop(q, *gn, mutate=True)


spectator = st.fractions(min_value=-3, max_value=3, max_denominator=9).filter(lambda a: a not in (0, Fraction(1, 2)))


@given(st.lists(spectator, min_size=2, max_size=2, unique=True))
@settings(max_examples=8, deadline=None, suppress_health_check=[HealthCheck.too_slow])
def test_loops_for_random_spectators(values):
    assert check_linear_loop(2, 0, 3, values)
    rep = quadratic_loop_report(2, 0, 3, values)
    assert rep.holds and rep.spectators == tuple(values)


def test_loop_spectator_errors():
    with pytest.raises(SpectatorAtPole):
        linear_loop_report(1, 0, 3, [Fraction(1, 5), Fraction(1, 5)])
    with pytest.raises(ValueError):
        linear_loop_report(1, 0, 3, [Fraction(1, 5)])


def _symbolic_linear(q, g, n):
    """Negative t-powers of f(c+t) + f(c+sigma t) with every spectator kept symbolic."""
    nv = n + 1
    om = _stable_local(compute_omega(g, n, q), list(range(2, n + 1)), nv, 0, pulled=False)
    f = (om * _lift(local_dx(q).inverse_to(-min(om.lo, 0)), q, nv)).truncate(-1)
    zero = PFrac.zero(q, nv)
    comp = {}
    for a, Fa in f.items():
        for j, r in sigma_power(q, a, -1).items():
            comp[j] = comp.get(j, zero) + Fa * r
    total = (f + Series.from_dict(comp, cutoff=-1, zero=zero)).truncate(-1)
    return [k for k, a in total.items() if k < 0 and a]


def _symbolic_quadratic(q, g, n, double_first=False):
    terms = integrand_terms(q, g, n, list(range(2, n + 1)), (), n + 2, 1, with_disk=True)
    if double_first:
        terms[0] = terms[0].scale(2)
    total = terms[0]
    for t in terms[1:]:
        total = (total + t).truncate(1)
    return [k for k, a in total.items() if k <= 1 and a]


@pytest.mark.parametrize("q", QS)
@pytest.mark.parametrize("gn", [(0, 3), (1, 1), (1, 2)])
def test_loops_with_symbolic_spectators(q, gn):
    assert _symbolic_linear(q, *gn) == []
    assert _symbolic_quadratic(q, *gn) == []
    assert _symbolic_quadratic(q, *gn, double_first=True) != []


def test_documented_small_values():
    # omega_{0,1} for q = 1 is (1 - 2z)/(1 - z) dz
    z = Fraction(2, 7)
    assert compute_omega(0, 1, 1).evaluate(z) == (1 - 2 * z) / (1 - z)
    # the (1,1,1) coefficient of omega_{0,3} for q = 1 is h_{0,(1,1,1)} = 8
    assert expand_in_x(compute_omega(0, 3, 1), 1)[(1, 1, 1)] == 8
    # y(z(x)) = sum mu h_{0,(mu)} x^{mu-1}: q = 1 at x^2 gives 2, q = 2 at x^1 gives 1
    assert check_unstable(1, 3).disk[2][1] == 2
    assert check_unstable(2, 2).disk[1][1] == 1
    assert check_unstable(1, 1).cylinder == [((1, 1), 1, 1)]
    assert check_do_karev(2, 1, 1, 6).agree and check_do_karev(3, 0, 3, 6).agree
    assert check_linear_loop(1, 0, 3, [Fraction(1, 5), Fraction(1, 7)])
    # for q = 1 the deck map is exactly t -> -t
    sig = deck(1, 8)
    assert sig[1] == -1 and all(sig[k] == 0 for k in range(2, 9))
