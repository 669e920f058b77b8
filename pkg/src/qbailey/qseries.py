"""Exact truncated Laurent series in one variable ``q``.

A :class:`QSeries` stores every coefficient from its valuation up to (but not
including) its truncation order.  Coefficients are exact rationals kept over a
single common denominator, so integral series (the common case) run on plain
Python integers.  Products use Kronecker substitution: both operands are
packed into one big integer, multiplied once, and unpacked.

Truncation is tracked honestly.  A result never claims coefficients its
operands do not determine: a product is known up to
``min(o1, o2, o1 + v2, o2 + v1)`` where ``v``/``o`` are valuation/order.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational
from typing import Iterable, Iterator

from .errors import BeyondTruncation, NonConvergent, ZeroLeadingTerm

__all__ = [
    "Monomial",
    "QSeries",
    "TermAccumulator",
    "arith",
    "as_fraction",
    "coeff_at",
    "invert",
    "monomial_series",
    "poch_finite",
    "poch_finite_inverse",
    "poch_infinite",
    "poch_infinite_inverse",
]

_SCHOOLBOOK_CUTOFF = 40
_SPARSE_INVERT_TERMS = 24


def as_fraction(value) -> Fraction:
    """Coerce an exact rational (int, Fraction, ``"p/q"`` string) to Fraction.

    Floats are rejected: nothing in this package is allowed to round.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not coefficients")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    if isinstance(value, Rational):
        return Fraction(value.numerator, value.denominator)
    raise TypeError(f"exact rational required, got {type(value).__name__}")


def _is_scalar(value) -> bool:
    return isinstance(value, (int, Fraction, Rational)) and not isinstance(value, bool)


@dataclass(frozen=True)
class Monomial:
    """An exact term ``coeff * q**exponent``."""

    coeff: Fraction
    exponent: int = 0

    def __post_init__(self):
        object.__setattr__(self, "coeff", as_fraction(self.coeff))
        if not isinstance(self.exponent, int) or isinstance(self.exponent, bool):
            raise TypeError("monomial exponent must be an integer")

    @classmethod
    def of(cls, value) -> "Monomial":
        if isinstance(value, Monomial):
            return value
        if isinstance(value, tuple):
            return cls(*value)
        return cls(as_fraction(value), 0)

    @property
    def is_zero(self) -> bool:
        return self.coeff == 0

    def __mul__(self, other):
        if isinstance(other, Monomial):
            return Monomial(self.coeff * other.coeff, self.exponent + other.exponent)
        if _is_scalar(other):
            return Monomial(self.coeff * as_fraction(other), self.exponent)
        return NotImplemented

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = Monomial.of(other)
        if other.coeff == 0:
            raise ZeroDivisionError("division by the zero monomial")
        return Monomial(self.coeff / other.coeff, self.exponent - other.exponent)

    def __rtruediv__(self, other):
        return Monomial.of(other) / self

    def __pow__(self, k: int):
        if k < 0:
            return Monomial(1) / self ** (-k)
        return Monomial(self.coeff**k, self.exponent * k)

    def __neg__(self):
        return Monomial(-self.coeff, self.exponent)

    def series(self, order: int) -> "QSeries":
        return QSeries.monomial(self.coeff, self.exponent, order)

    def __str__(self):
        c = self.coeff
        if self.exponent == 0:
            return str(c)
        head = "" if c == 1 else "-" if c == -1 else f"{c}*"
        tail = "q" if self.exponent == 1 else f"q^{self.exponent}"
        return head + tail


# ---------------------------------------------------------------------------
# integer polynomial kernels


def _pack(coeffs, width: int) -> int:
    pos = b"".join((c if c > 0 else 0).to_bytes(width, "little") for c in coeffs)
    neg = b"".join((-c if c < 0 else 0).to_bytes(width, "little") for c in coeffs)
    return int.from_bytes(pos, "little") - int.from_bytes(neg, "little")


def _poly_mul(a, b, limit: int) -> list:
    """Product of integer coefficient lists, first ``limit`` coefficients."""
    a = a[:limit]
    b = b[:limit]
    if not a or not b or limit <= 0:
        return []
    if len(a) > len(b):
        a, b = b, a
    n = min(len(a) + len(b) - 1, limit)
    if len(a) <= _SCHOOLBOOK_CUTOFF:
        out = [0] * n
        for i, x in enumerate(a):
            if not x or i >= n:
                continue
            row = b[: n - i]
            end = i + len(row)
            out[i:end] = [o + x * y for o, y in zip(out[i:end], row)]
        return out
    ma = max(map(abs, a))
    mb = max(map(abs, b))
    if not ma or not mb:
        return [0] * n
    bound = ma * mb * len(a)
    width = (bound.bit_length() + 2 + 7) // 8
    prod = _pack(a, width) * _pack(b, width)
    total = len(a) + len(b) - 1
    half = 1 << (8 * width - 1)
    bias = int.from_bytes((b"\x00" * (width - 1) + b"\x80") * total, "little")
    raw = (prod + bias).to_bytes(total * width, "little")
    return [
        int.from_bytes(raw[i * width : (i + 1) * width], "little") - half
        for i in range(n)
    ]


def _newton_inverse(m, n: int) -> list:
    # m[0] == 1; returns the first n coefficients of 1/m
    h = [1]
    prec = 1
    while prec < n:
        prec = min(2 * prec, n)
        e = _poly_mul(m, h, prec)
        e += [0] * (prec - len(e))
        e[0] -= 1
        corr = _poly_mul(h, e, prec)
        corr += [0] * (prec - len(corr))
        h = h + [0] * (prec - len(h))
        h = [x - y for x, y in zip(h, corr)]
    return h


def _inverse_numerators(a, n: int) -> tuple[list, int]:
    """Return ``(nums, den)`` with ``nums/den`` the first n coefficients of 1/a."""
    c0 = a[0]
    a = list(a[:n])
    a += [0] * (n - len(a))
    # Rescale q -> q/c0 so the leading coefficient becomes 1 over the integers:
    # 1/a(q) has coefficient h_i / c0^(i+1) where h = 1/m, m_i = a_i c0^(i-1).
    if c0 in (1, -1):
        m = [x * c0 for x in a]
    else:
        m = [1] + [a[i] * c0 ** (i - 1) for i in range(1, n)]
    support = [(i, x) for i, x in enumerate(m) if x and i]
    if len(support) <= _SPARSE_INVERT_TERMS:
        h = [0] * n
        h[0] = 1
        for i in range(1, n):
            acc = 0
            for j, x in support:
                if j > i:
                    break
                acc += x * h[i - j]
            h[i] = -acc
    else:
        h = _newton_inverse(m, n)
    if c0 in (1, -1):
        return [x * c0 for x in h], 1
    return [h[i] * c0 ** (n - 1 - i) for i in range(n)], c0**n


# ---------------------------------------------------------------------------


class QSeries:
    """Truncated Laurent series with exact rational coefficients.

    ``QSeries([1, -1], order=10)`` is ``1 - q + O(q^10)``.  Instances are
    immutable; every operation returns a new series.
    """

    __slots__ = ("_val", "_num", "_den", "_order")

    def __init__(self, coeffs: Iterable = (), valuation: int = 0, *, order: int):
        coeffs = list(coeffs)
        if all(type(c) is int for c in coeffs):
            nums, den = coeffs, 1
        else:
            fr = [as_fraction(c) for c in coeffs]
            den = math.lcm(*(f.denominator for f in fr)) if fr else 1
            nums = [f.numerator * (den // f.denominator) for f in fr]
        self._assign(valuation, nums, den, order)

    # -- construction -----------------------------------------------------

    @classmethod
    def _new(cls, val: int, nums, den: int, order: int) -> "QSeries":
        obj = object.__new__(cls)
        obj._assign(val, nums, den, order)
        return obj

    def _assign(self, val, nums, den, order):
        if not isinstance(order, int):
            raise TypeError("truncation order must be an integer")
        if den == 0:
            raise ZeroDivisionError("zero denominator")
        length = order - val
        first = None
        if length > 0:
            nums = nums[:length]
            first = next((i for i, x in enumerate(nums) if x), None)
        if first is None:
            self._val, self._num, self._den, self._order = order, (), 1, order
            return
        if first:
            nums = nums[first:]
            val += first
        nums = list(nums)
        nums += [0] * (order - val - len(nums))
        if den < 0:
            nums = [-x for x in nums]
            den = -den
        if den != 1:
            g = math.gcd(den, *nums)
            if g != 1:
                nums = [x // g for x in nums]
                den //= g
        self._val, self._num, self._den, self._order = val, tuple(nums), den, order

    @classmethod
    def zero(cls, order: int) -> "QSeries":
        return cls._new(order, (), 1, order)

    @classmethod
    def one(cls, order: int) -> "QSeries":
        return cls.monomial(1, 0, order)

    @classmethod
    def constant(cls, value, order: int) -> "QSeries":
        return cls.monomial(value, 0, order)

    @classmethod
    def monomial(cls, coeff, exponent: int, order: int) -> "QSeries":
        c = as_fraction(coeff)
        return cls._new(exponent, [c.numerator], c.denominator, order)

    @classmethod
    def from_terms(cls, terms: Iterable[tuple[int, object]], order: int) -> "QSeries":
        """Sum of ``coeff * q**exp`` pairs; exponents at or above order are dropped."""
        acc = TermAccumulator(order)
        for exp, c in terms:
            acc.add(exp, c)
        return acc.to_series()

    # -- inspection -------------------------------------------------------

    @property
    def valuation(self) -> int:
        """Lowest exponent with a nonzero coefficient (``order`` if zero)."""
        return self._val

    @property
    def order(self) -> int:
        return self._order

    @property
    def is_zero(self) -> bool:
        return not self._num

    @property
    def denominator(self) -> int:
        """Common denominator of all stored coefficients."""
        return self._den

    def numerators(self) -> tuple:
        """Integer numerators for exponents ``valuation .. order-1``."""
        return self._num

    def coeff(self, k: int) -> Fraction:
        if k >= self._order:
            raise BeyondTruncation(f"coefficient of q^{k} requested, order is {self._order}")
        if k < self._val:
            return Fraction(0)
        return Fraction(self._num[k - self._val], self._den)

    __getitem__ = coeff

    def coefficients(self, start: int | None = None) -> list[Fraction]:
        """Coefficients for exponents ``start .. order-1`` (default start: min(0, valuation))."""
        if start is None:
            start = min(0, self._val)
        return [self.coeff(k) for k in range(start, self._order)]

    def terms(self) -> Iterator[tuple[int, Fraction]]:
        """Nonzero ``(exponent, coefficient)`` pairs in increasing exponent."""
        d = self._den
        for i, x in enumerate(self._num):
            if x:
                yield self._val + i, Fraction(x, d)

    def nonzero_exponents(self) -> list[int]:
        return [self._val + i for i, x in enumerate(self._num) if x]

    # -- truncation -------------------------------------------------------

    def truncate(self, order: int) -> "QSeries":
        """Drop coefficients at and above ``order``; never extends."""
        if order >= self._order:
            return self
        return QSeries._new(self._val, self._num, self._den, order)

    def _as_known_to(self, order: int) -> "QSeries":
        # Treat self as a polynomial known exactly up to `order`.  Internal use
        # only: callers must know the extra coefficients really are zero.
        if order <= self._order:
            return self.truncate(order)
        if self.is_zero:
            return QSeries.zero(order)
        return QSeries._new(self._val, self._num, self._den, order)

    # -- ring operations --------------------------------------------------

    def __neg__(self) -> "QSeries":
        return QSeries._new(self._val, [-x for x in self._num], self._den, self._order)

    def __pos__(self):
        return self

    def _coerce(self, other):
        if isinstance(other, QSeries):
            return other
        if isinstance(other, Monomial):
            # exact terms carry no truncation of their own
            return QSeries.monomial(other.coeff, other.exponent, max(self._order, other.exponent + 1))
        if _is_scalar(other):
            return QSeries.constant(other, max(self._order, 1))
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        o = min(self._order, other._order)
        if self.is_zero:
            return other.truncate(o)
        if other.is_zero:
            return self.truncate(o)
        v = min(self._val, other._val)
        if v >= o:
            return QSeries.zero(o)
        d1, d2 = self._den, other._den
        if d1 == d2:
            den, m1, m2 = d1, 1, 1
        else:
            den = math.lcm(d1, d2)
            m1, m2 = den // d1, den // d2
        out = [0] * (o - v)
        for series, m in ((self, m1), (other, m2)):
            off = series._val - v
            seg = series._num[: max(0, o - series._val)]
            end = off + len(seg)
            if m == 1:
                out[off:end] = [x + y for x, y in zip(out[off:end], seg)]
            else:
                out[off:end] = [x + m * y for x, y in zip(out[off:end], seg)]
        return QSeries._new(v, out, den, o)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        if _is_scalar(other):
            return self.scale(other)
        if isinstance(other, Monomial):
            return self.scale(other.coeff).shift(other.exponent)
        if not isinstance(other, QSeries):
            return NotImplemented
        o = min(
            self._order,
            other._order,
            self._order + other._val,
            other._order + self._val,
        )
        if self.is_zero or other.is_zero:
            return QSeries.zero(o)
        v = self._val + other._val
        if o <= v:
            return QSeries.zero(o)
        nums = _poly_mul(self._num, other._num, o - v)
        return QSeries._new(v, nums, self._den * other._den, o)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if _is_scalar(other):
            other = as_fraction(other)
            if other == 0:
                raise ZeroDivisionError("division by zero scalar")
            return self.scale(1 / other)
        if isinstance(other, Monomial):
            return self * (Monomial(1) / other)
        if not isinstance(other, QSeries):
            return NotImplemented
        return self * other.invert()

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other * self.invert()

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.invert() ** (-k)
        result = QSeries.one(self._order if self._val >= 0 else max(self._order, 1))
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def scale(self, c) -> "QSeries":
        c = as_fraction(c)
        if c == 0:
            return QSeries.zero(self._order)
        if c == 1:
            return self
        p, r = c.numerator, c.denominator
        nums = self._num if p == 1 else [p * x for x in self._num]
        return QSeries._new(self._val, nums, self._den * r, self._order)

    def shift(self, k: int) -> "QSeries":
        """Multiply by ``q**k`` exactly."""
        if k == 0:
            return self
        if self.is_zero:
            return QSeries.zero(self._order + k)
        return QSeries._new(self._val + k, self._num, self._den, self._order + k)

    def mul_binomial(self, c, k: int) -> "QSeries":
        """Multiply by ``(1 - c q^k)``."""
        c = as_fraction(c)
        if c == 0:
            return self
        if k == 0:
            return self.scale(1 - c)
        if k < 0:
            # 1 - c q^k = -c q^k (1 - q^{-k}/c)
            return self.scale(-c).shift(k).mul_binomial(1 / c, -k)
        if self.is_zero:
            return self
        a = self._num
        p, r = c.numerator, c.denominator
        if r == 1:
            if p == 1:
                tail = [x - y for x, y in zip(a[k:], a)]
            elif p == -1:
                tail = [x + y for x, y in zip(a[k:], a)]
            else:
                tail = [x - p * y for x, y in zip(a[k:], a)]
            nums = list(a[:k]) + tail
        else:
            nums = [r * x for x in a[:k]] + [r * x - p * y for x, y in zip(a[k:], a)]
        return QSeries._new(self._val, nums, self._den * r, self._order)

    def div_binomial(self, c, k: int) -> "QSeries":
        """Divide by ``(1 - c q^k)``."""
        c = as_fraction(c)
        if c == 0:
            return self
        if k == 0:
            if c == 1:
                raise ZeroLeadingTerm("division by 1 - q^0")
            return self.scale(1 / (1 - c))
        if k < 0:
            return self.scale(-1 / c).shift(-k).div_binomial(1 / c, -k)
        if self.is_zero:
            return self
        b = list(self._num)
        n = len(b)
        p, r = c.numerator, c.denominator
        if r == 1:
            for start in range(k, n, k):
                end = min(start + k, n)
                prev = b[start - k : end - k]
                if p == 1:
                    b[start:end] = [x + y for x, y in zip(b[start:end], prev)]
                elif p == -1:
                    b[start:end] = [x - y for x, y in zip(b[start:end], prev)]
                else:
                    b[start:end] = [x + p * y for x, y in zip(b[start:end], prev)]
            return QSeries._new(self._val, b, self._den, self._order)
        # B_i = b_i r^(i//k) stays integral: B_i = a_i r^(i//k) + p B_(i-k)
        top = (n - 1) // k
        for blk, start in enumerate(range(k, n, k), start=1):
            end = min(start + k, n)
            rp = r**blk
            prev = b[start - k : end - k]
            b[start:end] = [x * rp + p * y for x, y in zip(b[start:end], prev)]
        nums = []
        for blk, start in enumerate(range(0, n, k)):
            m = r ** (top - blk)
            nums.extend(x * m for x in b[start : start + k])
        return QSeries._new(self._val, nums, self._den * r**top, self._order)

    def invert(self, order: int | None = None) -> "QSeries":
        """Multiplicative inverse, known up to ``order - 2*valuation`` at most."""
        if self.is_zero:
            raise ZeroLeadingTerm(f"series is zero up to q^{self._order}")
        v = self._val
        limit = self._order - 2 * v
        if order is not None:
            limit = min(limit, order)
        n = limit + v
        if n <= 0:
            return QSeries.zero(limit)
        nums, den = _inverse_numerators(self._num, n)
        return QSeries._new(-v, [x * self._den for x in nums], den, limit)

    # -- substitutions ----------------------------------------------------

    def subs_power(self, m: int) -> "QSeries":
        """Substitute ``q -> q**m`` for a positive integer m."""
        if m < 1:
            raise ValueError("substitution power must be positive")
        if m == 1:
            return self
        if self.is_zero:
            return QSeries.zero(self._order * m)
        out = [0] * ((self._order - self._val) * m)
        out[::m] = self._num
        return QSeries._new(self._val * m, out, self._den, self._order * m)

    def negate_q(self) -> "QSeries":
        """Substitute ``q -> -q``."""
        s = -1 if self._val % 2 else 1
        nums = [x if (i % 2 == 0) else -x for i, x in enumerate(self._num)]
        if s < 0:
            nums = [-x for x in nums]
        return QSeries._new(self._val, nums, self._den, self._order)

    def even_part(self) -> "QSeries":
        """``(s(q) + s(-q)) / 2``: keep even exponents only."""
        nums = [x if (self._val + i) % 2 == 0 else 0 for i, x in enumerate(self._num)]
        return QSeries._new(self._val, nums, self._den, self._order)

    # -- comparison / display ---------------------------------------------

    def __eq__(self, other):
        if isinstance(other, QSeries):
            return (
                self._order == other._order
                and self._val == other._val
                and self._den == other._den
                and self._num == other._num
            )
        return NotImplemented

    def __hash__(self):
        return hash((self._val, self._order, self._den, self._num))

    def __repr__(self):
        return f"QSeries({self._format(8)})"

    def __str__(self):
        return self._format(12)

    def _format(self, max_terms: int) -> str:
        parts = []
        for idx, (e, c) in enumerate(self.terms()):
            if idx == max_terms:
                parts.append("...")
                break
            parts.append(str(Monomial(c, e)) if e else str(c))
        body = " + ".join(parts).replace("+ -", "- ") if parts else "0"
        return f"{body} + O(q^{self._order})"


class TermAccumulator:
    """Dense coefficient buffer filled by inserting single terms.

    Used for theta-type sums, where building each summand as a series and
    adding would cost a full pass per term.
    """

    def __init__(self, order: int, start: int = 0):
        self.order = order
        self.start = min(start, order)
        self._buf = [0] * (order - self.start)

    def add(self, exponent: int, coeff=1) -> None:
        if exponent >= self.order:
            return
        if exponent < self.start:
            raise ValueError(f"exponent {exponent} below accumulator start {self.start}")
        self._buf[exponent - self.start] += coeff

    def add_series(self, s: QSeries) -> None:
        if s.order < self.order:
            raise BeyondTruncation("added series is truncated below accumulator order")
        for e, c in s.terms():
            self.add(e, c.numerator if c.denominator == 1 else c)

    def to_series(self) -> QSeries:
        return QSeries(self._buf, self.start, order=self.order)


# ---------------------------------------------------------------------------
# functional surface


def monomial_series(m: Monomial, order: int) -> QSeries:
    """``m.coeff * q**m.exponent`` truncated at ``order``."""
    m = Monomial.of(m)
    return QSeries.monomial(m.coeff, m.exponent, order)


def arith(kind: str, s1: QSeries, s2=None) -> QSeries:
    """Dispatch one of ``add``, ``mul``, ``negate``, ``scale``."""
    if kind == "add":
        return s1 + s2
    if kind == "mul":
        return s1 * s2
    if kind == "negate":
        return -s1
    if kind == "scale":
        return s1.scale(s2)
    raise ValueError(f"unknown operation {kind!r}")


def invert(s: QSeries, order: int | None = None) -> QSeries:
    return s.invert(order)


def coeff_at(s: QSeries, k: int) -> Fraction:
    return s.coeff(k)


def _finite_factor_exponents(e: int, b: int, n: int) -> list[int]:
    return [e + i * b for i in range(n)]


def poch_finite(c, e: int, b: int, n: int, order: int) -> QSeries:
    """``(c q^e; q^b)_n``, the product of ``(1 - c q^(e + i b))`` for ``i < n``."""
    c = as_fraction(c)
    if n < 0:
        raise ValueError("Pochhammer length must be nonnegative")
    if c == 0 or n == 0:
        return QSeries.one(order)
    exps = _finite_factor_exponents(e, b, n)
    deficit = sum(-k for k in exps if k < 0)
    s = QSeries.one(order + deficit)
    for k in exps:
        s = s.mul_binomial(c, k)
    return s.truncate(order)


def poch_finite_inverse(c, e: int, b: int, n: int, order: int) -> QSeries:
    """``1 / (c q^e; q^b)_n`` by successive binomial division."""
    c = as_fraction(c)
    if n < 0:
        raise ValueError("Pochhammer length must be nonnegative")
    s = QSeries.one(order)
    if c == 0:
        return s
    exps = _finite_factor_exponents(e, b, n)
    # negative-exponent factors raise the valuation; start low enough to land on `order`
    surplus = sum(-k for k in exps if k < 0)
    s = QSeries.one(order - surplus)
    for k in exps:
        s = s.div_binomial(c, k)
    return s.truncate(order)


def _infinite_exponents(c, e: int, b: int, order: int) -> list[int]:
    if b <= 0:
        raise NonConvergent(f"factor exponents e + i*b with e={e}, b={b} do not grow")
    out = []
    k = e
    while k < order:
        out.append(k)
        k += b
    return out


def poch_infinite(c, e: int, b: int, order: int) -> QSeries:
    """``(c q^e; q^b)_inf`` truncated at ``order``.

    Factors with exponent at or above ``order`` are the identity modulo
    ``q^order`` and are skipped; a finite prefix of exponents <= 0 is
    multiplied exactly.
    """
    c = as_fraction(c)
    if c == 0:
        return QSeries.one(order)
    exps = _infinite_exponents(c, e, b, order)
    deficit = sum(-k for k in exps if k < 0)
    s = QSeries.one(order + deficit)
    for k in exps:
        s = s.mul_binomial(c, k)
    return s.truncate(order)


def poch_infinite_inverse(c, e: int, b: int, order: int) -> QSeries:
    """``1 / (c q^e; q^b)_inf`` truncated at ``order``."""
    c = as_fraction(c)
    if c == 0:
        return QSeries.one(order)
    exps = _infinite_exponents(c, e, b, order)
    surplus = sum(-k for k in exps if k < 0)
    s = QSeries.one(order - surplus)
    for k in exps:
        s = s.div_binomial(c, k)
    return s.truncate(order)
