"""Concrete Bailey pairs.

Free parameters are specialized to exact monomials ``c q^e`` (plain
rationals are monomials with ``e = 0``).  With ``b = -c`` the Andrews
``(a, b, c)`` pair depends on ``c`` only through ``x = c^2``, so no square
roots are ever needed.

Inner sums that start at ``j = 0`` with ``(a)_{j-1}`` use the convention
``(a)_{-1} = 1/(1 - a/q)``, which makes the ``j = 0`` summand exactly 1.
"""

from __future__ import annotations

from typing import Callable

from .bailey import BaileyPair, at_order, base_change
from .errors import DegenerateParameter, ZeroLeadingTerm
from .qseries import (
    Monomial,
    QSeries,
    poch_finite,
    poch_finite_inverse,
)

__all__ = [
    "corollary_alpha_literal",
    "pair_andrews_abc",
    "pair_andrews_b_neg_c",
    "pair_cor22",
    "pair_cor23",
    "pair_cor24",
    "pair_theorem21",
    "pair_x_to_zero",
    "theorem21_direct",
]

Factors = Callable[[int, int], list]  # (shift, k) -> [(coeff, exponent), ...]


def _mul_factors(s: QSeries, factors) -> QSeries:
    for c, e in factors:
        s = s.mul_binomial(c, e)
    return s


def _div_factors(s: QSeries, factors) -> QSeries:
    try:
        for c, e in factors:
            s = s.div_binomial(c, e)
    except ZeroLeadingTerm as exc:
        raise DegenerateParameter(str(exc)) from exc
    return s


def _checked(fn, *args):
    try:
        return fn(*args)
    except ZeroLeadingTerm as exc:
        raise DegenerateParameter(str(exc)) from exc


def _abc_pair(a: Monomial, bc: Monomial, pb: Factors, pab: Factors, label: str) -> BaileyPair:
    """Andrews' pair written against factor providers.

    ``pb(s, k)`` lists the k-th factors of ``(b q^s)_inf (c q^s)_inf`` and
    ``pab(s, k)`` those of ``(a q^s/b)_inf (a q^s/c)_inf``.
    """

    def inner_terms(n: int, w: int):
        # P_j = (a)_{j-1} (b, c)_j / ((q)_j (a/b, a/c)_j), built incrementally
        yield QSeries.one(w)
        p = QSeries.one(w)
        for j in range(1, n + 1):
            if j >= 2:
                p = p.mul_binomial(a.coeff, a.exponent + j - 2)
            p = _mul_factors(p, pb(0, j - 1))
            p = _div_factors(p, [(1, j)] + pab(0, j - 1))
            t = p.mul_binomial(a.coeff, a.exponent + 2 * j - 1)
            yield t * (Monomial((-1) ** j, -j * (j - 1) // 2) / bc**j)

    def alpha(n: int, order: int) -> QSeries:
        def build(w):
            inner = QSeries.zero(w)
            for t in inner_terms(n, w):
                inner = inner + t
            pre = QSeries.one(w)
            for k in range(n):
                pre = _mul_factors(pre, pab(0, k))
                pre = _div_factors(pre, pb(1, k))
            pre = pre.mul_binomial(a.coeff, a.exponent + 2 * n)
            pre = _div_factors(pre, [(a.coeff, a.exponent)])
            return pre * inner * (bc**n * Monomial(1, n * n))

        return at_order(build, order)

    def beta(n: int, order: int) -> QSeries:
        s = QSeries.one(order)
        for k in range(n):
            s = _div_factors(s, pb(1, k))
        return s

    return BaileyPair(a, 1, alpha, beta, label)


def pair_andrews_abc(a, b, c) -> BaileyPair:
    """Andrews' three-parameter pair relative to ``a`` in base ``q``.

    ``beta_n = 1/((bq)_n (cq)_n)``.
    """
    a, b, c = Monomial.of(a), Monomial.of(b), Monomial.of(c)
    if b.is_zero or c.is_zero:
        raise DegenerateParameter("b and c must be nonzero")
    if a.exponent == 0 and a.coeff == 1:
        raise DegenerateParameter("a = 1 makes 1 - a vanish")
    ab, ac = a / b, a / c

    def pb(s, k):
        return [(b.coeff, b.exponent + s + k), (c.coeff, c.exponent + s + k)]

    def pab(s, k):
        return [(ab.coeff, ab.exponent + s + k), (ac.coeff, ac.exponent + s + k)]

    return _abc_pair(a, b * c, pb, pab, f"andrews(a={a}, b={b}, c={c})")


def pair_andrews_b_neg_c(a, x) -> BaileyPair:
    """Andrews' pair at ``b = -c`` written in ``x = c^2``.

    ``(b q^s)_m (c q^s)_m = (x q^{2s}; q^2)_m`` and
    ``(a q^s/b)_m (a q^s/c)_m = (a^2 q^{2s}/x; q^2)_m``.
    """
    a, x = Monomial.of(a), Monomial.of(x)
    if x.is_zero:
        raise DegenerateParameter("x = 0 is the separate limiting pair")
    if a.exponent == 0 and a.coeff == 1:
        raise DegenerateParameter("a = 1 makes 1 - a vanish")
    a2x = a * a / x

    def pb(s, k):
        return [(x.coeff, x.exponent + 2 * (s + k))]

    def pab(s, k):
        return [(a2x.coeff, a2x.exponent + 2 * (s + k))]

    return _abc_pair(a, -x, pb, pab, f"andrews_b=-c(a={a}, x={x})")


def _check_theorem_params(a: Monomial, x: Monomial):
    if x.is_zero:
        raise DegenerateParameter("x = 0: use pair_x_to_zero")
    if x.exponent == 0 and x.coeff == 1:
        raise DegenerateParameter("x = 1 is excluded")
    if a.exponent == 0 and a.coeff in (1, -1):
        raise DegenerateParameter("1 - a^2 vanishes")


def pair_theorem21(a, x) -> BaileyPair:
    """The one-free-parameter pair relative ``a^2`` in base ``q^2``.

    Built by base change from the ``b = -c`` Andrews pair; compare with
    :func:`theorem21_direct` for the closed form.
    """
    a, x = Monomial.of(a), Monomial.of(x)
    _check_theorem_params(a, x)
    p = base_change(pair_andrews_b_neg_c(a, x))
    return BaileyPair(p.relative, p.base_exp, p.alpha, p.beta, f"theorem(a={a}, x={x})")


def theorem21_direct(a, x) -> BaileyPair:
    """Closed-form evaluation of the one-free-parameter pair."""
    a, x = Monomial.of(a), Monomial.of(x)
    _check_theorem_params(a, x)
    a2 = a * a
    a2x = a2 / x

    def alpha(n: int, order: int) -> QSeries:
        def build(w):
            inner = QSeries.zero(w)
            for j in range(n + 1):
                if j == 0:
                    inner = inner + QSeries.one(w)
                    continue
                t = poch_finite(a.coeff, a.exponent, 1, j - 1, w)
                t = t.mul_binomial(a.coeff, a.exponent + 2 * j - 1)
                t = t * poch_finite(x.coeff, x.exponent, 2, j, w)
                t = t * poch_finite_inverse(1, 1, 1, j, w)
                t = t * _checked(poch_finite_inverse, a2x.coeff, a2x.exponent, 2, j, w)
                inner = inner + t * (Monomial(1, -j * (j - 1) // 2) / x**j)
            pre = poch_finite(a2x.coeff, a2x.exponent, 2, n, w)
            pre = pre * _checked(poch_finite_inverse, x.coeff, x.exponent + 2, 2, n, w)
            pre = pre.mul_binomial(a2.coeff, a2.exponent + 4 * n)
            pre = _div_factors(pre, [(a2.coeff, a2.exponent)])
            return pre * inner * ((-x) ** n * Monomial(1, n * n - n))

        return at_order(build, order)

    def beta(n: int, order: int) -> QSeries:
        def build(w):
            s = poch_finite_inverse(-a.coeff, a.exponent, 1, 2 * n, w)
            s = s * poch_finite_inverse(1, 2, 2, n, w)
            s = s.mul_binomial(x.coeff, x.exponent)
            s = _div_factors(s, [(x.coeff, x.exponent + 2 * n)])
            return s * Monomial((-1) ** n, n * n)

        return _checked(at_order, build, order)

    return BaileyPair(a2, 2, alpha, beta, f"theorem_direct(a={a}, x={x})")


# ---------------------------------------------------------------------------
# closed-form specializations


def _tri_poly(n: int, order: int) -> QSeries:
    """``sum_{0<=j<=n} q^{-j(j+1)/2}`` as an exact Laurent polynomial."""
    if n < 0:
        return QSeries.zero(order)
    acc = {}
    for j in range(n + 1):
        e = -j * (j + 1) // 2
        acc[e] = acc.get(e, 0) + 1
    low = min(acc)
    coeffs = [0] * (max(acc) - low + 1)
    for e, c in acc.items():
        coeffs[e - low] = c
    return QSeries(coeffs, low, order=order)


def corollary_alpha_literal(which: str, n: int, order: int) -> QSeries:
    """The literal alpha closed forms of the three specializations.

    ``which`` is ``"cor22"``, ``"cor23"`` or ``"cor24"``.  For the first two
    the literal alpha is missing the constant factor carried by the
    beta; :func:`pair_cor22` and :func:`pair_cor23` divide it back out.
    """
    sign = (-1) ** n

    def build(w):
        if which == "cor22":
            s = QSeries.one(w).mul_binomial(1, 2 * n + 1).div_binomial(1, 1)
            return s * Monomial(sign, n * (n - 1) // 2)
        if which == "cor23":
            s = _tri_poly(n, w).mul_binomial(1, 4 * n + 4).div_binomial(1, 4)
            return s * Monomial(sign, n * n)
        if which == "cor24":
            s = (_tri_poly(n, w) + _tri_poly(n - 1, w)).mul_binomial(-1, 2 * n + 1)
            return s.div_binomial(1, 2) * Monomial(sign, n * n)
        raise ValueError(f"unknown specialization {which!r}")

    return at_order(build, order)


def _cor_pair(which: str, relative: Monomial, beta_extra, alpha_fix) -> BaileyPair:
    def alpha(n, order):
        return at_order(lambda w: alpha_fix(corollary_alpha_literal(which, n, w)), order)

    def beta(n, order):
        s = poch_finite_inverse(-1, 1, 1, 2 * n, order)
        s = s * poch_finite_inverse(1, 2, 2, n, order)
        s = beta_extra(s, n)
        return s * Monomial((-1) ** n, n * n)

    return BaileyPair(relative, 2, alpha, beta, which)


def pair_cor22() -> BaileyPair:
    """Relative ``q^2``: ``beta_n = (-1)^n q^{n^2} / ((-q)_{2n+1} (q^2;q^2)_n)``."""
    return _cor_pair(
        "cor22",
        Monomial(1, 2),
        lambda s, n: s.div_binomial(-1, 2 * n + 1),
        lambda s: s.div_binomial(-1, 1),
    )


def pair_cor23() -> BaileyPair:
    """Relative ``q^4``: ``beta_n = (-1)^n q^{n^2} / ((-q)_{2n} (q^2;q^2)_n (1 - q^{4n+2}))``."""
    return _cor_pair(
        "cor23",
        Monomial(1, 4),
        lambda s, n: s.div_binomial(1, 4 * n + 2),
        lambda s: s.div_binomial(1, 2),
    )


def pair_cor24() -> BaileyPair:
    """Relative ``q^2``: ``beta_n = (-1)^n q^{n^2} / ((-q)_{2n} (q^2;q^2)_n (1 - q^{2n+1}))``."""
    return _cor_pair(
        "cor24",
        Monomial(1, 2),
        lambda s, n: s.div_binomial(1, 2 * n + 1),
        lambda s: s,
    )


def pair_x_to_zero(a) -> BaileyPair:
    """The ``x -> 0`` limit of the one-parameter pair, relative ``a^2`` in base ``q^2``.

    ``beta_n = (-1)^n q^{n^2} / ((-a)_{2n} (q^2;q^2)_n)``; alpha is the
    termwise limit of the closed form.
    """
    a = Monomial.of(a)
    if a.exponent == 0 and a.coeff in (1, -1):
        raise DegenerateParameter("a = +-1 is not supported by the limiting pair")
    if a.is_zero:
        raise DegenerateParameter("a must be nonzero")
    a2 = a * a

    def alpha(n: int, order: int) -> QSeries:
        def build(w):
            inner = QSeries.zero(w)
            for j in range(n + 1):
                if j == 0:
                    inner = inner + QSeries.one(w)
                    continue
                t = poch_finite(a.coeff, a.exponent, 1, j - 1, w)
                t = t.mul_binomial(a.coeff, a.exponent + 2 * j - 1)
                t = t * poch_finite_inverse(1, 1, 1, j, w)
                inner = inner + t * (Monomial((-1) ** j, -3 * j * (j - 1) // 2) / a2**j)
            pre = QSeries.one(w).mul_binomial(a2.coeff, a2.exponent + 4 * n)
            pre = _div_factors(pre, [(a2.coeff, a2.exponent)])
            return pre * inner * (a2**n * Monomial(1, 2 * n * n - 2 * n))

        return at_order(build, order)

    def beta(n: int, order: int) -> QSeries:
        s = _checked(poch_finite_inverse, -a.coeff, a.exponent, 1, 2 * n, order)
        s = s * poch_finite_inverse(1, 2, 2, n, order)
        return s * Monomial((-1) ** n, n * n)

    return BaileyPair(a2, 2, alpha, beta, f"x_to_zero(a={a})")
