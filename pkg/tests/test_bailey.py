import pytest

from qbailey.bailey import (
    BaileyPair,
    bailey_lemma,
    bailey_lemma_y_to_infinity,
    base_change,
    scaled_pair,
    unit_pair,
    verify_pair,
)
from qbailey.errors import DegenerateParameter, NonTerminating
from qbailey.qseries import Monomial, QSeries, poch_finite_inverse, poch_infinite, poch_infinite_inverse
from qbailey.pairs import pair_cor22, pair_cor23, pair_cor24, pair_x_to_zero


def test_unit_pair_satisfies_relation():
    for rel in (2, Monomial(1, 1), Monomial(-3, 2)):
        assert verify_pair(unit_pair(rel), 8, 40).ok


def test_unit_pair_in_base_q2():
    assert verify_pair(unit_pair(Monomial(1, 2), base_exp=2), 6, 40).ok


def test_corrupted_pair_is_reported():
    good = unit_pair(2)

    def beta(n, order):
        s = good.beta(n, order)
        return s + QSeries.monomial(1, 5, order) if n == 3 else s

    bad = BaileyPair(good.relative, 1, good.alpha, beta, "corrupt")
    rep = verify_pair(bad, 6, 30)
    assert not rep.ok
    n, exp, _, _ = rep.first_failure
    assert (n, exp) == (3, 5)


def test_base_change_preserves_the_relation():
    assert verify_pair(base_change(unit_pair(2)), 8, 40).ok
    assert verify_pair(base_change(unit_pair(Monomial(1, 1))), 8, 40).ok


def test_base_change_rejects_minus_one():
    with pytest.raises(DegenerateParameter):
        base_change(unit_pair(-1))


def test_scaling_keeps_pair_property():
    p = pair_cor24()
    scaled = scaled_pair(p, lambda order: QSeries([1, 1], order=order))
    assert verify_pair(scaled, 8, 40).ok
    assert verify_pair(scaled_pair(p, 7), 8, 40).ok


def test_lemma_sides_agree_for_unit_pair():
    lhs, rhs = bailey_lemma(unit_pair(Monomial(1, 1)), Monomial(-1, 1), Monomial(-1, 0), 60)
    assert lhs == rhs


def test_lemma_y_limit_for_unit_pair_gives_euler_type_sum():
    # relative q, X = -q: left side is sum (-q)_n (-1)^n q^{n(n-1)/2} q^n / ((q)_n (q^2;q)_n)
    lhs, rhs = bailey_lemma_y_to_infinity(unit_pair(Monomial(1, 1)), Monomial(-1, 1), 80)
    assert lhs == rhs
    # only alpha_0 is nonzero, so the right side is the prefactor (-q)_inf / (q^2;q)_inf
    expect = poch_infinite(-1, 1, 1, 80) * poch_infinite_inverse(1, 2, 1, 80)
    assert rhs == expect


def test_lemma_detects_nonvanishing_summands():
    with pytest.raises(NonTerminating):
        bailey_lemma(unit_pair(1), Monomial(-1, 0), Monomial(1, 1), 30)


def test_lemma_rejects_zero_parameter():
    with pytest.raises(DegenerateParameter):
        bailey_lemma(unit_pair(2), 0, 1, 10)


def test_lemma_with_q4_pair_gives_f1_prime_over_one_plus_q():
    from qbailey.identities import expand_named_series

    lhs, rhs = bailey_lemma(pair_cor23(), Monomial(1, 2), Monomial(-1, 3), 150)
    assert lhs == rhs
    f1p = expand_named_series("f1_prime", 150)
    assert lhs == f1p.div_binomial(-1, 1)


def test_lemma_with_cor24_pair_gives_triangular_theta():
    lhs, rhs = bailey_lemma(pair_cor24(), Monomial(-1, 1), Monomial(-1, 2), 150)
    assert lhs == rhs
    tri = QSeries.zero(150)
    m = 0
    while m * (m + 1) // 2 < 150:
        tri = tri + QSeries.monomial(1, m * (m + 1) // 2, 150)
        m += 1
    assert lhs == tri


def test_y_limit_with_cor22_pair():
    lhs, rhs = bailey_lemma_y_to_infinity(pair_cor22(), Monomial(1, 2), 150)
    assert lhs == rhs
    direct = QSeries.zero(150)
    n = 0
    while n * (2 * n + 1) < 150:
        e = n * (2 * n + 1)
        direct = direct + poch_finite_inverse(-1, 1, 1, 2 * n + 1, 150 - e).shift(e)
        n += 1
    assert lhs == direct


def test_x_to_zero_pair_in_lemma_gives_q2_product():
    lhs, rhs = bailey_lemma(pair_x_to_zero(Monomial(1, 1)), Monomial(-1, 1), Monomial(-1, 2), 120)
    assert lhs == rhs
    assert lhs == poch_infinite(1, 2, 2, 120)
