from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qbailey.errors import BeyondTruncation, NonConvergent, ZeroLeadingTerm
from qbailey.qseries import (
    Monomial,
    QSeries,
    TermAccumulator,
    arith,
    as_fraction,
    coeff_at,
    invert,
    poch_finite,
    poch_finite_inverse,
    poch_infinite,
    poch_infinite_inverse,
)


def naive_mul(a, b, order):
    out = {}
    for i, x in a.items():
        for j, y in b.items():
            if i + j < order:
                out[i + j] = out.get(i + j, 0) + x * y
    return out


def as_dict(s):
    return {e: c for e, c in s.terms()}


def pentagonal(order):
    out = {}
    k = 0
    while True:
        hit = False
        for m in ([0] if k == 0 else [k, -k]):
            e = m * (3 * m - 1) // 2
            if e < order:
                out[e] = out.get(e, 0) + (-1) ** (m % 2)
                hit = True
        if not hit:
            return out
        k += 1


small_rat = st.fractions(min_value=-5, max_value=5, max_denominator=7)


@st.composite
def series(draw, order=40):
    val = draw(st.integers(-3, 3))
    n = draw(st.integers(0, order - val))
    coeffs = draw(st.lists(small_rat, min_size=n, max_size=n))
    return QSeries(coeffs, val, order=order)


# ---------------------------------------------------------------------------
# construction and access


def test_rejects_floats():
    with pytest.raises(TypeError):
        as_fraction(0.5)
    with pytest.raises(TypeError):
        QSeries([1.0], order=3)
    assert as_fraction("3/4") == Fraction(3, 4)


def test_coeff_beyond_truncation_raises():
    s = QSeries([1, 2, 3], order=3)
    assert s[2] == 3
    assert s.coeff(-5) == 0
    with pytest.raises(BeyondTruncation):
        s.coeff(3)


def test_normalised_valuation():
    s = QSeries([0, 0, 5, 0], 1, order=10)
    assert s.valuation == 3
    assert s.nonzero_exponents() == [3]
    assert QSeries.zero(7).valuation == 7


def test_str_rendering():
    s = QSeries([1, 0, -1], order=10)
    assert str(s) == "1 - q^2 + O(q^10)"
    assert str(Monomial(Fraction(3, 2), -2)) == "3/2*q^-2"


def test_monomial_arithmetic():
    m = Monomial(2, 3)
    assert m * Monomial(Fraction(1, 2), -1) == Monomial(1, 2)
    assert (m**2) == Monomial(4, 6)
    assert (1 / m) == Monomial(Fraction(1, 2), -3)
    assert m.series(5) == QSeries.monomial(2, 3, 5)


# ---------------------------------------------------------------------------
# arithmetic


def test_geometric_inverse():
    one_minus_q = QSeries([1, -1], order=50)
    inv = one_minus_q.invert()
    assert all(inv[k] == 1 for k in range(50))
    assert invert(one_minus_q) == inv


def test_invert_needs_nonzero_leading_term():
    with pytest.raises(ZeroLeadingTerm):
        QSeries.zero(5).invert()


def test_invert_laurent_loses_precision_honestly():
    s = QSeries([1, 1], 2, order=20)  # q^2 + q^3
    inv = s.invert()
    assert inv.valuation == -2
    assert inv.order == 20 - 4
    prod = s * inv
    assert prod.order == 16
    assert prod == QSeries.one(16)


def test_pentagonal_number_theorem():
    euler = poch_infinite(1, 1, 1, 300)
    assert as_dict(euler) == {e: Fraction(c) for e, c in pentagonal(300).items() if c}


def test_partition_numbers():
    p = poch_infinite_inverse(1, 1, 1, 50)
    assert [int(p[k]) for k in range(12)] == [1, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42, 56]
    assert p[49] == 173525


def test_poch_infinite_rejects_nonpositive_base():
    with pytest.raises(NonConvergent):
        poch_infinite(1, 1, 0, 10)


def test_poch_finite_recurrence():
    # (c q^e; q^b)_{n+1} = (c q^e; q^b)_n (1 - c q^{e + b n})
    c, e, b = Fraction(-2, 3), 1, 2
    for n in range(8):
        lhs = poch_finite(c, e, b, n + 1, 60)
        rhs = poch_finite(c, e, b, n, 60).mul_binomial(c, e + b * n)
        assert lhs == rhs
        inv = poch_finite_inverse(c, e, b, n, 60)
        assert (inv * poch_finite(c, e, b, n, 60)) == QSeries.one(60)


def test_poch_finite_zero_length_is_one():
    assert poch_finite(5, 0, 1, 0, 10) == QSeries.one(10)


def test_kronecker_product_matches_schoolbook():
    a = QSeries([(-1) ** k * (k + 1) for k in range(300)], order=300)
    b = QSeries([Fraction(k, 7) for k in range(300)], 1, order=300)
    got = a * b
    want = naive_mul(as_dict(a), as_dict(b), 300)
    assert as_dict(got) == {e: c for e, c in want.items() if c}


def test_functional_surface():
    a = QSeries([1, 2], order=5)
    b = QSeries([3], order=5)
    assert arith("add", a, b) == a + b
    assert arith("mul", a, b) == a * b
    assert arith("negate", a) == -a
    assert coeff_at(a, 1) == 2


def test_accumulator():
    acc = TermAccumulator(10)
    acc.add(3)
    acc.add(3, 2)
    acc.add(12)  # beyond order: dropped
    assert acc.to_series() == QSeries.monomial(3, 3, 10)


def test_subs_power_and_parts():
    s = QSeries([1, 1, 1, 1], order=4)
    assert s.subs_power(2) == QSeries([1, 0, 1, 0, 1, 0, 1], order=8)
    assert s.negate_q() == QSeries([1, -1, 1, -1], order=4)
    assert s.even_part() == QSeries([1, 0, 1, 0], order=4)


# ---------------------------------------------------------------------------
# properties


@settings(max_examples=100, deadline=None)
@given(series(), series(), series())
def test_ring_axioms(a, b, c):
    assert a + b == b + a
    assert a * b == b * a
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c


@settings(max_examples=60, deadline=None)
@given(series(), st.integers(5, 40))
def test_truncation_commutes_with_operations(a, k):
    b = QSeries([1, 2, 3], -1, order=40)
    assert (a + b).truncate(k) == a.truncate(k) + b.truncate(k)
    full = a * b
    part = a.truncate(k + 1) * b  # b has valuation -1, so one extra term of a is needed
    assert part.order >= min(k, full.order)
    m = min(part.order, full.order)
    assert part.truncate(m) == full.truncate(m)


@settings(max_examples=60, deadline=None)
@given(series())
def test_inverse_is_inverse(a):
    if a.is_zero:
        return
    inv = a.invert()
    one = (a * inv)
    assert one.truncate(min(one.order, inv.order)) == QSeries.one(min(one.order, inv.order))


@settings(max_examples=60, deadline=None)
@given(series(), st.integers(0, 60))
def test_truncation_never_extends(a, k):
    t = a.truncate(k)
    assert t.order == min(k, a.order)
    for e in range(min(t.valuation, 0), t.order):
        assert t.coeff(e) == a.coeff(e)


@settings(max_examples=40, deadline=None)
@given(small_rat, st.integers(0, 4), st.integers(1, 3), st.integers(0, 6))
def test_div_binomial_matches_inverse(c, e, b, n):
    s = poch_finite(c, e, b, n, 30)
    if c == 1 and e == 0:
        return
    assert s.div_binomial(c, e) * QSeries([1], order=30).mul_binomial(c, e) == s
