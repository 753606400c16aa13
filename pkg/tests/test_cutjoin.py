from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from monotone_tr.cutjoin import (
    alternating_sum,
    alternating_sum_identity,
    build_Q_r,
    c_alpha,
    evolution_residual,
    f_r_eigencheck,
    f_r_eigenvalue,
    tilde_shift,
    verify_evolution,
    verify_npoint_cj_report,
)
from monotone_tr.errors import UnstableInput
from monotone_tr.partitions import Partition


def test_c_alpha_values():
    assert c_alpha(0) == 1
    assert c_alpha(1) == Fraction(-1, 24)
    assert c_alpha(2) == Fraction(7, 5760)
    with pytest.raises(ValueError):
        c_alpha(-1)


@given(st.lists(st.integers(1, 3), min_size=1, max_size=3), st.integers(1, 3))
@settings(max_examples=20, deadline=None)
def test_f_r_eigen(parts, r):
    assert f_r_eigencheck(parts, r)


def test_f_1_is_size():
    # F_1 counts boxes
    for lam in [(1,), (3, 1), (2, 2, 1)]:
        assert f_r_eigenvalue(lam, 1) == Partition(lam).size


@pytest.mark.parametrize("q", [1, 2, 3])
def test_evolution_small(q):
    assert verify_evolution(q, 4, 2)


def test_evolution_fault_detected():
    assert evolution_residual(1, 4, 3, flip=1)


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
def test_alternating_sum(n):
    assert alternating_sum(n) == (-1) ** (n - 1)
    assert alternating_sum_identity(n) == (n % 2 == 0)


def test_tilde_shift_conventions():
    # the two conventions coincide for genus 0 with an odd number of points
    for n in (3, 5):
        assert tilde_shift(0, n, "printed") == tilde_shift(0, n, "consistent")
    assert tilde_shift(1, 1, "printed") == Fraction(3, 4)
    assert tilde_shift(1, 1, "consistent") == 0
    with pytest.raises(UnstableInput):
        tilde_shift(0, 2)
    with pytest.raises(ValueError):
        tilde_shift(0, 3, "other")


@pytest.mark.parametrize("case", [(1, 0, 3), (1, 1, 1), (2, 0, 3), (2, 1, 1), (1, 0, 4), (1, 1, 2)])
def test_npoint_consistent(case):
    rep = verify_npoint_cj_report(*case, 4)
    assert rep.agree
    assert rep.constant_lhs == rep.constant_rhs


@pytest.mark.parametrize("case", [(1, 1, 1), (1, 0, 4)])
def test_npoint_printed_fails_only_in_degree_zero(case):
    rep = verify_npoint_cj_report(*case, 4, convention="printed")
    assert not rep.agree
    assert rep.positive_degrees_agree
    assert set(rep.mismatches) == {0}


def test_npoint_fault_detected():
    rep = verify_npoint_cj_report(1, 1, 1, 4, flip=1)
    assert not rep.agree


@pytest.mark.parametrize("case", [(1, 0, 3), (1, 1, 1), (2, 1, 1)])
def test_fault_visible_exactly_when_alpha_at_most_genus(case):
    g = case[1]
    for alpha in range(3):
        assert verify_npoint_cj_report(*case, 5, flip=alpha).agree == (alpha > g)


@given(st.lists(st.integers(1, 3), min_size=1, max_size=3), st.integers(1, 5))
@settings(max_examples=25, deadline=None)
def test_Q_r_preserves_weight(parts, r):
    mu = Partition(parts)
    out = build_Q_r(r, 6).apply({mu: Fraction(1)})
    assert all(nu.size == mu.size for nu in out)
