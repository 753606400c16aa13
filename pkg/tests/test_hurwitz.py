from fractions import Fraction
from math import comb, factorial

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from monotone_tr.errors import SizeGuard
from monotone_tr.hurwitz import (
    Permutation,
    count_connected,
    count_disconnected,
    naive_count,
    transposition_count,
    uniform_class,
)
from monotone_tr.partitions import Partition, partitions, partitions_upto
from monotone_tr.schur import (
    build_partition_function,
    connected_number,
    connected_series,
    connected_series_direct,
    content_product,
    extract_disconnected,
    hurwitz_schur,
    mn_character,
    schur_at_delta_q,
    series_log,
)

small_cases = st.tuples(
    st.integers(1, 3), st.integers(0, 1), st.lists(st.integers(1, 3), min_size=1, max_size=3)
).filter(lambda c: sum(c[2]) % c[0] == 0 and sum(c[2]) <= 5)


# -- partitions ----------------------------------------------------------------------------
def test_partition_counts():
    assert [sum(1 for _ in partitions(n)) for n in range(8)] == [1, 1, 2, 3, 5, 7, 11, 15]
    assert sum(1 for _ in partitions_upto(4)) == 1 + 1 + 2 + 3 + 5


def test_partition_basics():
    lam = Partition((1, 3, 1))
    assert lam.parts == (3, 1, 1)
    assert lam.transpose() == Partition((3, 1, 1))
    assert Partition((4, 2)).transpose() == Partition((2, 2, 1, 1))
    assert Partition.parse("(2;1,1)") == Partition((2, 1, 1))
    assert lam.aut == 2 and lam.z == 3 * 2
    assert sorted(Partition((2, 1)).contents()) == [-1, 0, 1]
    with pytest.raises(ValueError):
        Partition((2, 0))


# -- characters --------------------------------------------------------------------------------
@pytest.mark.parametrize("n", [3, 4, 5])
def test_character_orthogonality(n):
    lams = list(partitions(n))
    for a in lams:
        for b in lams:
            s = sum(Fraction(mn_character(a, mu) * mn_character(b, mu), mu.z) for mu in lams)
            assert s == (1 if a == b else 0)


def test_character_values():
    assert mn_character((2, 1), (1, 1, 1)) == 2
    assert mn_character((2, 1), (3,)) == -1
    assert mn_character((1, 1, 1), (2, 1)) == -1


def test_schur_at_delta_q_one_row():
    # h_n at p = delta_{j,q} is 1/(q^k k!) for n = qk
    for q in (1, 2, 3):
        for k in range(1, 3):
            assert schur_at_delta_q((q * k,), q) == Fraction(1, q**k * factorial(k))
    assert schur_at_delta_q((3,), 2) == 0


def test_content_product_is_complete_homogeneous():
    # prod (1 - hbar c)^{-1} over contents 0, 1, 2 of a one-row diagram
    assert content_product((3,), 3) == [1, 3, 7, 15]


# -- brute force ---------------------------------------------------------------------------------
def test_uniform_class_size():
    # (2k)! / (2^k k!) fixed-point-free involutions
    assert sum(1 for _ in uniform_class(4, 2)) == 3
    assert sum(1 for _ in uniform_class(6, 3)) == 40
    assert list(uniform_class(3, 1)) == [(0, 1, 2)]


def test_permutation_composition_order():
    s, t = Permutation.transposition(3, 0, 1), Permutation.transposition(3, 1, 2)
    # left to right: first s then t
    assert s.then(t).cycle_type() == Partition((3,))
    assert s.then(s) == Permutation.identity(3)


def test_transposition_count():
    assert transposition_count(0, Partition((2,)), 1) == 1
    assert transposition_count(0, Partition((1, 1, 1)), 1) == 4
    assert transposition_count(1, Partition((2, 2)), 2) == 4
    assert transposition_count(0, Partition((3,)), 2) is None


def test_known_small_numbers():
    # q = 1, genus 0, one part: monotone numbers are Catalan(mu - 1) / mu
    for mu in range(1, 6):
        catalan = comb(2 * mu - 2, mu - 1) // mu
        assert count_connected(0, (mu,), 1) == Fraction(catalan, mu)
    assert count_disconnected(0, (1,), 1) == 1


def test_size_guard():
    with pytest.raises(SizeGuard):
        count_connected(0, (5, 5), 1, max_size=8)


@given(small_cases)
@settings(max_examples=25, deadline=None)
def test_naive_matches_transfer(case):
    q, g, mu = case
    for connected in (False, True):
        fast = (count_connected if connected else count_disconnected)(g, mu, q)
        assert naive_count(g, mu, q, connected) == fast


# -- Schur oracle ------------------------------------------------------------------------------
@given(small_cases)
@settings(max_examples=25, deadline=None)
def test_schur_matches_brute(case):
    q, g, mu = case
    assert hurwitz_schur(g, mu, q, False) == count_disconnected(g, mu, q)
    assert hurwitz_schur(g, mu, q, True) == count_connected(g, mu, q)


@pytest.mark.parametrize("q", [1, 2, 3])
def test_cumulant_matches_series_log(q):
    W, H = 6, 6
    Z = build_partition_function(q, W, H)
    logZ = series_log(Z)
    for mu in partitions_upto(W):
        if not mu.parts:
            continue
        direct = connected_series_direct(q, mu, H)
        assert connected_series(Z, mu) == direct
        for k in range(H + 1):
            assert direct[k] == mu.aut * logZ.get((mu, k), 0)


def test_extract_and_connected_number():
    Z = build_partition_function(2, 4, 4)
    mu = Partition((2, 2))
    assert extract_disconnected(Z, 0, mu) == count_disconnected(0, mu, 2)
    assert connected_number(Z, 0, mu) == count_connected(0, mu, 2)


def test_vanishing_when_q_does_not_divide():
    assert hurwitz_schur(0, (3,), 2, True) == 0
    assert count_disconnected(1, (1, 2), 2) == 0
