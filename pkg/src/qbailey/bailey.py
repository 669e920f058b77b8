"""Bailey pairs: relation checking, the q -> q^2 base change, and Bailey's lemma.

A pair lives in base ``Q = q**base_exp`` relative to a monomial ``A``.  Its
``alpha``/``beta`` members are callables ``(n, order) -> QSeries`` returning
the n-th term exactly up to ``order``.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass
from typing import Callable, Optional

from .errors import DegenerateParameter, NonTerminating, ZeroLeadingTerm
from .qseries import (
    Monomial,
    QSeries,
    poch_finite,
    poch_finite_inverse,
    poch_infinite,
    poch_infinite_inverse,
)

__all__ = [
    "BaileyPair",
    "PairCheckReport",
    "at_order",
    "bailey_lemma",
    "bailey_lemma_y_to_infinity",
    "base_change",
    "scaled_pair",
    "unit_pair",
    "verify_pair",
]

SeriesTerm = Callable[[int, int], QSeries]

_MAX_ORDER_ROUNDS = 12


def at_order(build: Callable[[int], QSeries], order: int) -> QSeries:
    """Evaluate ``build(work)`` with a working order large enough to be exact to ``order``.

    ``build`` is any honest series computation; its result order tells us how
    much precision was lost to negative valuations, so we simply retry with
    the deficit added back.
    """
    work = order
    for _ in range(_MAX_ORDER_ROUNDS):
        s = build(work)
        if s.order >= order:
            return s.truncate(order)
        work += order - s.order
    raise NonTerminating(f"could not reach truncation order {order}")


@dataclass(frozen=True)
class BaileyPair:
    """Sequences ``alpha(n)``, ``beta(n)`` relative to ``relative`` in base ``q**base_exp``."""

    relative: Monomial
    base_exp: int
    alpha: SeriesTerm
    beta: SeriesTerm
    label: str = ""

    def __post_init__(self):
        object.__setattr__(self, "relative", Monomial.of(self.relative))
        if self.base_exp < 1:
            raise ValueError("base exponent must be a positive integer")
        object.__setattr__(self, "alpha", functools.lru_cache(maxsize=None)(self.alpha))
        object.__setattr__(self, "beta", functools.lru_cache(maxsize=None)(self.beta))


@dataclass(frozen=True)
class PairCheckReport:
    n_checked: int
    order: int
    ok: bool
    first_failure: Optional[tuple] = None  # (n, exponent, beta coeff, sum coeff)
    label: str = ""


def _first_mismatch(a: QSeries, b: QSeries):
    order = min(a.order, b.order)
    start = min(a.valuation, b.valuation, 0)
    for k in range(start, order):
        ca, cb = a.coeff(k), b.coeff(k)
        if ca != cb:
            return k, ca, cb
    return None


def _guard(fn, *args):
    try:
        return fn(*args)
    except ZeroLeadingTerm as exc:
        raise DegenerateParameter(str(exc)) from exc


def verify_pair(p: BaileyPair, n_max: int, order: int) -> PairCheckReport:
    """Check ``beta_n = sum_i alpha_i / ((Q;Q)_{n-i} (AQ;Q)_{n+i})`` for n <= n_max.

    Raises :class:`ZeroLeadingTerm` when the relative parameter makes a
    denominator non-invertible.
    """
    b = p.base_exp
    A = p.relative

    def relation_sum(n: int, work: int) -> QSeries:
        total = QSeries.zero(work)
        for i in range(n + 1):
            den = poch_finite_inverse(1, b, b, n - i, work) * poch_finite_inverse(
                A.coeff, A.exponent + b, b, n + i, work
            )
            total = total + p.alpha(i, work) * den
        return total

    for n in range(n_max + 1):
        lhs = p.beta(n, order)
        rhs = at_order(lambda w: relation_sum(n, w), order)
        bad = _first_mismatch(lhs, rhs)
        if bad is not None:
            return PairCheckReport(n, order, False, (n,) + bad, p.label)
    return PairCheckReport(n_max + 1, order, True, None, p.label)


def unit_pair(relative, base_exp: int = 1) -> BaileyPair:
    """``alpha_0 = 1``, ``alpha_n = 0`` otherwise; ``beta_n = 1/((Q;Q)_n (AQ;Q)_n)``."""
    A = Monomial.of(relative)
    b = base_exp

    def alpha(n, order):
        return QSeries.one(order) if n == 0 else QSeries.zero(order)

    def beta(n, order):
        return poch_finite_inverse(1, b, b, n, order) * poch_finite_inverse(
            A.coeff, A.exponent + b, b, n, order
        )

    return BaileyPair(A, b, alpha, beta, f"unit({A})")


def scaled_pair(p: BaileyPair, factor, label: str | None = None) -> BaileyPair:
    """Multiply both sequences by a constant series-valued factor.

    ``factor`` is a rational, a :class:`Monomial`, or a callable ``order ->
    QSeries`` (a q-constant such as ``1/(1+q)``).
    """
    if callable(factor):
        make = factor
    else:
        m = Monomial.of(factor)
        make = lambda order: QSeries.monomial(m.coeff, m.exponent, order)  # noqa: E731

    def alpha(n, order):
        return at_order(lambda w: p.alpha(n, w) * make(w), order)

    def beta(n, order):
        return at_order(lambda w: p.beta(n, w) * make(w), order)

    return BaileyPair(p.relative, p.base_exp, alpha, beta, label or f"scaled({p.label})")


def base_change(p: BaileyPair) -> BaileyPair:
    """Send a pair relative ``a`` in base ``q`` to one relative ``a^2`` in base ``q^2``."""
    if p.base_exp != 1:
        raise ValueError("base change needs a pair in base q")
    a = p.relative
    if a.exponent == 0 and a.coeff == -1:
        raise DegenerateParameter("1 + a vanishes")
    if a.exponent < 0:
        raise DegenerateParameter("base change needs a relative parameter with nonnegative exponent")

    def alpha(n, order):
        def build(w):
            s = p.alpha(n, w).mul_binomial(-a.coeff, a.exponent + 2 * n)
            return _guard(s.div_binomial, -a.coeff, a.exponent).shift(-n)

        return at_order(build, order)

    def beta(n, order):
        def build(w):
            total = QSeries.zero(w)
            for k in range(n + 1):
                m = n - k
                weight = poch_finite_inverse(1, 2, 2, m, w).scale((-1) ** m).shift(m * m - m)
                total = total + weight * p.beta(k, w)
            # q^{-n} / (-a; q)_{2n}
            inv = _guard(poch_finite_inverse, -a.coeff, a.exponent, 1, 2 * n, w)
            return (total * inv).shift(-n)

        return at_order(build, order)

    return BaileyPair(a * a, 2, alpha, beta, f"base_change({p.label})")


# ---------------------------------------------------------------------------
# Bailey's lemma


def _sum_until_vanishing(term: Callable[[int], QSeries], order: int, window: int, max_terms: int):
    """Sum ``term(0) + term(1) + ...`` until valuations pass ``order``.

    Stops after ``window`` consecutive terms vanish below ``order``.  Fails if
    the minimum valuation of each successive probe window does not increase,
    or if ``max_terms`` is exhausted.
    """
    total = QSeries.zero(order)
    quiet = 0
    prev_min = None
    cur_min = None
    for n in range(max_terms):
        t = term(n)
        total = total + t
        if t.is_zero:
            quiet += 1
            if quiet >= window:
                return total, n + 1
        else:
            quiet = 0
            cur_min = t.valuation if cur_min is None else min(cur_min, t.valuation)
        if (n + 1) % window == 0:
            if cur_min is not None and prev_min is not None and cur_min <= prev_min:
                raise NonTerminating(
                    f"summand valuations stalled near q^{cur_min} after {n + 1} terms"
                )
            if cur_min is not None:
                prev_min = cur_min
            cur_min = None
    raise NonTerminating(f"summand did not vanish below q^{order} within {max_terms} terms")


def _poch(m: Monomial, b: int, n: int, order: int) -> QSeries:
    return poch_finite(m.coeff, m.exponent, b, n, order)


def _poch_inv(m: Monomial, b: int, n: int, order: int) -> QSeries:
    return _guard(poch_finite_inverse, m.coeff, m.exponent, b, n, order)


def _poch_inf(m: Monomial, b: int, order: int) -> QSeries:
    return poch_infinite(m.coeff, m.exponent, b, order)


def _poch_inf_inv(m: Monomial, b: int, order: int) -> QSeries:
    return _guard(poch_infinite_inverse, m.coeff, m.exponent, b, order)


def _check_monomial(m: Monomial, name: str):
    if m.is_zero:
        raise DegenerateParameter(f"{name} must be nonzero")


def bailey_lemma(
    p: BaileyPair,
    X,
    Y,
    order: int,
    *,
    window: int = 4,
    max_terms: int | None = None,
) -> tuple[QSeries, QSeries]:
    """Both sides of Bailey's lemma for the pair ``p`` and parameters X, Y.

    The left side sums ``(X)_n (Y)_n (AQ/XY)^n beta_n``; the right side is the
    infinite-product prefactor times the matching alpha sum.  The two sides
    are computed independently of each other.
    """
    X, Y = Monomial.of(X), Monomial.of(Y)
    _check_monomial(X, "X")
    _check_monomial(Y, "Y")
    b = p.base_exp
    AQ = p.relative * Monomial(1, b)
    ratio = AQ / (X * Y)
    aqx, aqy = AQ / X, AQ / Y
    max_terms = max_terms or 2 * order + 4 * window

    def lhs_term(n, w0):
        def build(w):
            s = _poch(X, b, n, w) * _poch(Y, b, n, w) * p.beta(n, w)
            return s * ratio**n
        return at_order(build, w0)

    def rhs_term(n, w0):
        def build(w):
            s = _poch(X, b, n, w) * _poch(Y, b, n, w) * p.alpha(n, w)
            s = s * _poch_inv(aqx, b, n, w) * _poch_inv(aqy, b, n, w)
            return s * ratio**n
        return at_order(build, w0)

    def prefactor(w):
        return (
            _poch_inf(aqx, b, w)
            * _poch_inf(aqy, b, w)
            * _poch_inf_inv(AQ, b, w)
            * _poch_inf_inv(ratio, b, w)
        )

    return _both_sides(lhs_term, rhs_term, prefactor, order, window, max_terms)


def bailey_lemma_y_to_infinity(
    p: BaileyPair,
    X,
    order: int,
    *,
    window: int = 4,
    max_terms: int | None = None,
) -> tuple[QSeries, QSeries]:
    """Bailey's lemma after letting ``Y -> infinity`` termwise.

    ``(Y;Q)_n (AQ/XY)^n`` tends to ``(-1)^n Q^(n(n-1)/2) (AQ/X)^n`` and every
    other Y-dependent factor tends to 1.
    """
    X = Monomial.of(X)
    _check_monomial(X, "X")
    b = p.base_exp
    AQ = p.relative * Monomial(1, b)
    aqx = AQ / X
    max_terms = max_terms or 2 * order + 4 * window

    def weight(n):
        return Monomial((-1) ** n, b * n * (n - 1) // 2) * aqx**n

    def lhs_term(n, w0):
        return at_order(lambda w: _poch(X, b, n, w) * p.beta(n, w) * weight(n), w0)

    def rhs_term(n, w0):
        def build(w):
            s = _poch(X, b, n, w) * p.alpha(n, w) * _poch_inv(aqx, b, n, w)
            return s * weight(n)
        return at_order(build, w0)

    def prefactor(w):
        return _poch_inf(aqx, b, w) * _poch_inf_inv(AQ, b, w)

    return _both_sides(lhs_term, rhs_term, prefactor, order, window, max_terms)


def _both_sides(lhs_term, rhs_term, prefactor, order, window, max_terms):
    lhs, _ = _sum_until_vanishing(lambda n: lhs_term(n, order), order, window, max_terms)

    def rhs_build(w):
        rsum, _ = _sum_until_vanishing(lambda n: rhs_term(n, w), w, window, max_terms)
        return prefactor(w) * rsum

    return lhs, at_order(rhs_build, order)
