"""Registry of the q-series identities, with independent builders for each side.

Every entry knows how to build its left and right sides as truncated series.
The builders never share intermediates beyond the series kernel; theta-type
sides are assembled by inserting single terms into a coefficient buffer.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Optional

from .combinatorics import _signed_counts, norm_form_count
from .errors import DegenerateParameter, UnknownName, ZeroLeadingTerm
from .qseries import (
    QSeries,
    TermAccumulator,
    as_fraction,
    poch_finite_inverse,
    poch_infinite,
    poch_infinite_inverse,
)

__all__ = [
    "Identity",
    "LacunarityReport",
    "NAMED_SERIES",
    "Param",
    "VerificationReport",
    "build_sides",
    "expand_named_series",
    "lacunarity_scan",
    "lookup",
    "registry",
    "verify_identity",
    "x_samples",
]


# ---------------------------------------------------------------------------
# basic hypergeometric-type sums


def _basic_sum(order, start, exponent, step, finish=None, sign=False) -> QSeries:
    """``sum_n (+-1)^n q^{exponent(n)} finish(D_n, n)`` with ``D_n = step(D_{n-1}, n)``.

    ``exponent`` must be increasing; ``D_n`` is kept only to the precision the
    n-th term needs.
    """
    total = QSeries.zero(order)
    d = QSeries.one(order)
    n = start
    while True:
        e = exponent(n)
        if e >= order:
            return total
        d = step(d.truncate(order - e), n)
        t = finish(d, n) if finish else d
        if sign and n % 2:
            t = -t
        total = total + t.shift(e)
        n += 1


def _sigma(order):
    return _basic_sum(
        order, 0, lambda n: n * (n + 1) // 2, lambda d, n: d.div_binomial(-1, n) if n else d
    )


def _sigma_star(order):
    return _basic_sum(order, 1, lambda n: n * n, lambda d, n: d.div_binomial(1, 2 * n - 1), sign=True)


def _o_star_gen(order):
    return _basic_sum(
        order,
        1,
        lambda n: n * n,
        lambda d, n: d.div_binomial(1, 2 * n - 1),
        lambda d, n: d.div_binomial(-1, 2 * n - 1),
        sign=True,
    )


def _f1(order):
    return _basic_sum(
        order,
        0,
        lambda n: n * (n + 1) // 2,
        lambda d, n: d.div_binomial(-1, n) if n else d,
        lambda d, n: d.div_binomial(1, 2 * n + 1),
    )


def _f1_prime(order):
    return _basic_sum(
        order,
        0,
        lambda n: n * (n + 1),
        lambda d, n: d.div_binomial(-1, 2 * n) if n else d,
        lambda d, n: d.div_binomial(1, 2 * n + 1),
    )


NAMED_SERIES: dict[str, Callable[[int], QSeries]] = {
    "sigma": _sigma,
    "sigma_star": _sigma_star,
    "o_star_gen": _o_star_gen,
    "f1": _f1,
    "f1_prime": _f1_prime,
}


def expand_named_series(name: str, order: int) -> QSeries:
    """Expand one of :data:`NAMED_SERIES` to the given order."""
    if order < 1:
        raise ValueError("order must be at least 1")
    try:
        fn = NAMED_SERIES[name.replace("-", "_").lower()]
    except KeyError:
        raise UnknownName(name) from None
    return fn(order)


# ---------------------------------------------------------------------------
# theta-type sides, by term insertion


def _tri(j: int) -> int:
    return j * (j + 1) // 2


def _theta_shifted_triangular(order: int) -> QSeries:
    # sum_{n>=1} q^{n^2} sum_{j=-n}^{n-1} q^{-j(j+1)/2}
    acc = TermAccumulator(order)
    n = 1
    while n * (n + 1) // 2 < order:
        for j in range(-n, n):
            acc.add(n * n - _tri(j))
        n += 1
    return acc.to_series()


def _theta_rank_parity(order: int) -> QSeries:
    # sum_{n>=0} q^{n(3n+1)/2} (1 - q^{2n+1})
    acc = TermAccumulator(order)
    n = 0
    while n * (3 * n + 1) // 2 < order:
        e = n * (3 * n + 1) // 2
        acc.add(e, 1)
        acc.add(e + 2 * n + 1, -1)
        n += 1
    return acc.to_series()


def _theta_f1_even(order: int) -> QSeries:
    # sum_{n>=0} q^{n(n+1)} (1 + q^{2n+2}) sum_{j=0}^{n} q^{-j(j+1)/2}
    acc = TermAccumulator(order)
    n = 0
    while n * (n + 1) // 2 < order:
        base = n * (n + 1)
        for j in range(n + 1):
            e = base - _tri(j)
            acc.add(e)
            acc.add(e + 2 * n + 2)
        n += 1
    return acc.to_series()


def _theta_square_triangular(order: int) -> QSeries:
    # sum_{n in Z, m >= 0} (-1)^n q^{n^2 + m(m+1)/2}
    acc = TermAccumulator(order)
    n = 0
    while n * n < order:
        sign = -1 if n % 2 else 1
        m = 0
        while n * n + _tri(m) < order:
            acc.add(n * n + _tri(m), sign if n == 0 else 2 * sign)
            m += 1
        n += 1
    return acc.to_series()


def _theta_square_triangular_indefinite(order: int) -> QSeries:
    # sum_{n>=0} (-1)^n q^{n(n+1)} (sum_{j<=n} + sum_{j<=n-1}) q^{-j(j+1)/2}
    acc = TermAccumulator(order)
    n = 0
    while n * (n + 1) // 2 < order:
        sign = -1 if n % 2 else 1
        base = n * (n + 1)
        for j in range(n + 1):
            acc.add(base - _tri(j), sign)
        for j in range(n):
            acc.add(base - _tri(j), sign)
        n += 1
    return acc.to_series()


def _theta_rogers(order: int) -> QSeries:
    # sum_{n>=0} q^{n(2n+1)} (1 - q^{2n+1}) sum_{|j|<=n} (-1)^j q^{-j(3j+1)/2}
    acc = TermAccumulator(order)
    n = 0
    while n * (n + 1) // 2 < order:
        base = n * (2 * n + 1)
        for j in range(-n, n + 1):
            e = base - j * (3 * j + 1) // 2
            s = -1 if j % 2 else 1
            acc.add(e, s)
            acc.add(e + 2 * n + 1, -s)
        n += 1
    return acc.to_series()


# ---------------------------------------------------------------------------
# per-entry builders; each takes (params, order)


def _fine_lhs(p, order):
    n, b = p["n"], p["b"]
    total = QSeries.zero(order)
    for i in range(n + 1):
        m = n - i
        e = (m * m - m) // 2
        if e >= order:
            continue
        t = poch_finite_inverse(1, 1, 1, m, order - e) * poch_finite_inverse(b, 1, 1, i, order - e)
        t = t.shift(e)
        total = total + (-t if m % 2 else t)
    return total


def _fine_rhs(p, order):
    n, b = p["n"], p["b"]
    e = n * (n + 1) // 2
    if e >= order:
        return QSeries.zero(order)
    s = poch_finite_inverse(1, 1, 1, n, order - e).scale(1 - b).div_binomial(b, n)
    s = s.shift(e)
    return -s if n % 2 else s


def _cor35_lhs(p, order):
    counts = _signed_counts(max(order - 1, 0), True)
    return QSeries([0] + [2 * c * (-1) ** k for k, c in enumerate(counts) if k], 0, order=order)


def _cor35_rhs(p, order):
    return _theta_shifted_triangular(order)


def _cor36_lhs(p, order):
    m = (order + 1 + 7) // 8 + 1
    return _o_star_gen(m).subs_power(8).scale(2).shift(-1).truncate(order)


def _cor36_rhs(p, order):
    acc = TermAccumulator(order)
    for N in range(7, order, 8):
        c = norm_form_count(N)
        acc.add(N, c.sign * c.count)
    return acc.to_series()


def _cor37_lhs(p, order):
    def step(d, n):
        if n == 0:
            return d.div_binomial(-1, 1)
        return d.div_binomial(-1, 2 * n).div_binomial(-1, 2 * n + 1)

    return _basic_sum(order, 0, lambda n: n * (2 * n + 1), step)


def _eq311_lhs(p, order):
    x = p["x"]
    return _basic_sum(
        order,
        0,
        lambda n: n * (n + 1),
        lambda d, n: d.div_binomial(1, 2 * n) if n else d,
        lambda d, n: d.scale(1 - x).div_binomial(x, 2 * n),
        sign=True,
    )


def _eq311_rhs(p, order):
    return poch_infinite(1, 2, 2, order) * poch_infinite_inverse(p["x"], 2, 2, order)


def _eq312_lhs(p, order):
    x = p["x"]
    s = poch_infinite(1, 1, 1, order) * poch_infinite(1, 2, 2, order)
    return s * poch_infinite_inverse(-1, 1, 1, order) * poch_infinite_inverse(x, 2, 2, order)


def _eq312_rhs(p, order):
    # Write pre_n = (q^2/x;q^2)_n/(q^2 x;q^2)_n and R_j = (x;q^2)_j/(q^2/x;q^2)_j.
    # pre_n R_n telescopes to (1-x)/(1-x q^{2n}), so P_n = pre_n * inner_n obeys
    #   P_n = P_{n-1} (1 - q^{2n}/x)/(1 - x q^{2n}) + (1-x)(1+q^n) q^{-n(n-1)/2} / (x^n (1 - x q^{2n}))
    # with no series products.  The inner factor is 1 at j = 0 and 1 + q^j after.
    x = p["x"]
    inv_x = 1 / x
    total = QSeries.zero(order)
    P = QSeries.one(order)
    n = 0
    while n * (n + 1) // 2 < order:
        if n:
            need = order - n * n
            P = P.truncate(need).mul_binomial(inv_x, 2 * n).div_binomial(x, 2 * n)
            tri = n * (n - 1) // 2
            fresh = QSeries.one(need + tri).mul_binomial(-1, n).div_binomial(x, 2 * n)
            P = P + fresh.scale((1 - x) * inv_x**n).shift(-tri)
        t = P.mul_binomial(1, 2 * n + 1).scale((-x) ** n).shift(n * n)
        total = total + t
        n += 1
    return total


def _eq313_lhs(p, order):
    e = poch_infinite(1, 1, 1, order)
    return e * e


def _sigma_star_rhs(p, order):
    counts = _signed_counts(max(order - 1, 0), False)
    return QSeries(list(counts), 0, order=order)


def _o_star_rhs(p, order):
    counts = _signed_counts(max(order - 1, 0), True)
    return QSeries(list(counts), 0, order=order)


def _x_span_eq311(order: int) -> int:
    return (order - 1) // 2 + 1


def _n_span(order: int) -> int:
    n = 0
    while (n + 1) * (n + 2) // 2 < order:
        n += 1
    return n


def _x_span_eq312(order: int) -> int:
    return 2 * ((order - 1) // 2) + _n_span(order)


# ---------------------------------------------------------------------------
# registry


@dataclass(frozen=True)
class Param:
    """A named parameter slot: ``kind`` is ``"rational"`` or ``"integer"``."""

    name: str
    kind: str = "rational"
    excluded: tuple = ()
    minimum: Optional[int] = None

    def coerce(self, value):
        if self.kind == "integer":
            try:
                v = int(value)
            except (TypeError, ValueError):
                raise DegenerateParameter(f"{self.name} must be an integer, got {value!r}") from None
            if str(value).strip() != str(v) and not isinstance(value, int):
                raise DegenerateParameter(f"{self.name} must be an integer, got {value!r}")
        else:
            try:
                v = as_fraction(value)
            except (TypeError, ValueError, ZeroDivisionError):
                raise DegenerateParameter(f"{self.name} must be an exact rational, got {value!r}") from None
        if self.minimum is not None and v < self.minimum:
            raise DegenerateParameter(f"{self.name} must be >= {self.minimum}")
        if v in self.excluded:
            raise DegenerateParameter(f"{self.name} = {v} is excluded")
        return v

    def describe(self) -> str:
        text = f"{self.name}: {self.kind}"
        if self.minimum is not None:
            text += f" >= {self.minimum}"
        if self.excluded:
            text += ", not in {" + ", ".join(str(e) for e in self.excluded) + "}"
        return text


@dataclass(frozen=True)
class Identity:
    id: str
    title: str
    lhs_builder: Callable[[dict, int], QSeries]
    rhs_builder: Callable[[dict, int], QSeries]
    reference: str
    params: tuple[Param, ...] = ()
    defaults: dict = field(default_factory=dict)
    x_degree_span: Optional[Callable[[int], int]] = None
    related: tuple[str, ...] = ()

    def normalize(self, params: Optional[dict]) -> dict:
        given = dict(self.defaults)
        given.update(params or {})
        unknown = set(given) - {p.name for p in self.params}
        if unknown:
            raise DegenerateParameter(f"unknown parameter(s) for {self.id}: {sorted(unknown)}")
        out = {}
        for p in self.params:
            if p.name not in given:
                raise DegenerateParameter(f"{self.id} needs parameter {p.name}")
            out[p.name] = p.coerce(given[p.name])
        return out


_X = Param("x", "rational", excluded=(0, 1))

_REGISTRY: tuple[Identity, ...] = (
    Identity(
        "fine-16.3",
        "Fine's finite sum at a -> 0, one identity per n",
        _fine_lhs,
        _fine_rhs,
        "Fine, Basic Hypergeometric Series, p.18 (16.3) with a -> 0",
        (Param("n", "integer", minimum=0), Param("b", "rational", excluded=(1,))),
        {"n": 5, "b": 2},
    ),
    Identity(
        "cor-3.5",
        "2 sum O*(n)(-q)^n equals the indefinite sum q^{n^2 - j(j+1)/2}, -n <= j < n",
        _cor35_lhs,
        _cor35_rhs,
        "O*(n) generating function against an indefinite theta series",
    ),
    Identity(
        "cor-3.6",
        "2 q^-1 sum O*(n) q^{8n} equals signed 2x^2 - y^2 representation counts",
        _cor36_lhs,
        _cor36_rhs,
        "O*(n) and norms from Q(sqrt 2) in the fundamental domain -x < y <= x",
    ),
    Identity(
        "cor-3.7",
        "sum q^{n(2n+1)}/(-q)_{2n+1} = sum q^{n(3n+1)/2}(1 - q^{2n+1})",
        _cor37_lhs,
        lambda p, order: _theta_rank_parity(order),
        "Andrews-Berndt, Ramanujan's Lost Notebook II, Entry 9.4.3",
    ),
    Identity(
        "cor-3.8",
        "sum q^{n(n+1)}/((-q^2;q^2)_n (1-q^{2n+1})) as an indefinite theta series",
        lambda p, order: _f1_prime(order),
        lambda p, order: _theta_f1_even(order),
        "f1'(q), whose even part is f1(q^2)",
    ),
    Identity(
        "cor-3.9",
        "sum_{n in Z, m >= 0} (-1)^n q^{n^2 + m(m+1)/2} as an indefinite sum",
        lambda p, order: _theta_square_triangular(order),
        lambda p, order: _theta_square_triangular_indefinite(order),
        "signed square-plus-triangular representations s+t(n)",
    ),
    Identity(
        "eq-3.11",
        "sum (-1)^n q^{n(n+1)}(1-x)/((q^2;q^2)_n (1-x q^{2n})) = (q^2;q^2)_inf/(x q^2;q^2)_inf",
        _eq311_lhs,
        _eq311_rhs,
        "limiting case of Fine (16.3)",
        (_X,),
        {"x": 2},
        _x_span_eq311,
    ),
    Identity(
        "eq-3.12",
        "(q)_inf (q^2;q^2)_inf/((-q)_inf (x q^2;q^2)_inf) as a double sum in x",
        _eq312_lhs,
        _eq312_rhs,
        "one-parameter expansion; x -> 0 gives the Rogers expansion (eq-3.13)",
        (_X,),
        {"x": 2},
        _x_span_eq312,
        ("eq-3.13",),
    ),
    Identity(
        "eq-3.13",
        "(q;q)_inf^2 = sum q^{n(2n+1)}(1 - q^{2n+1}) sum_{|j|<=n} (-1)^j q^{-j(3j+1)/2}",
        _eq313_lhs,
        lambda p, order: _theta_rogers(order),
        "Rogers' expansion of the weight one form (q;q)_inf^2",
        related=("eq-3.12",),
    ),
    Identity(
        "sigma-star-part",
        "sum (-1)^n q^{n^2}/(q;q^2)_n generates O(n)",
        lambda p, order: _sigma_star(order),
        _sigma_star_rhs,
        "Andrews-Dyson-Hickerson sigma*(q) against the O(n) enumeration",
    ),
    Identity(
        "o-star-part",
        "sum (-1)^n q^{n^2}/((q;q^2)_n (1+q^{2n-1})) generates O*(n)",
        lambda p, order: _o_star_gen(order),
        _o_star_rhs,
        "O*(n) series against the O*(n) enumeration",
    ),
)

_BY_ID = {ident.id: ident for ident in _REGISTRY}


def registry() -> list[Identity]:
    return list(_REGISTRY)


def lookup(identity_id: str) -> Identity:
    try:
        return _BY_ID[identity_id.strip().lower()]
    except KeyError:
        raise UnknownName(identity_id) from None


def build_sides(identity_id: str, params: Optional[dict], order: int) -> tuple[QSeries, QSeries]:
    """Build both sides of a registry entry, truncated at ``order``."""
    ident = lookup(identity_id)
    values = ident.normalize(params)
    try:
        lhs = ident.lhs_builder(values, order)
        rhs = ident.rhs_builder(values, order)
    except ZeroLeadingTerm as exc:
        raise DegenerateParameter(str(exc)) from exc
    return lhs.truncate(order), rhs.truncate(order)


# ---------------------------------------------------------------------------
# verification


@dataclass(frozen=True)
class VerificationReport:
    id: str
    params: dict
    order: int
    equal: bool
    first_mismatch: Optional[tuple] = None  # (exponent, lhs coeff, rhs coeff)
    elapsed_ms: float = 0.0

    def to_dict(self) -> dict:
        out = {
            "id": self.id,
            "params": {k: str(v) for k, v in self.params.items()},
            "order": self.order,
            "status": "ok" if self.equal else "mismatch",
            "equal": self.equal,
        }
        if self.first_mismatch is not None:
            e, lc, rc = self.first_mismatch
            out["first_mismatch_exponent"] = e
            out["lhs"] = str(lc)
            out["rhs"] = str(rc)
        out["elapsed_ms"] = round(self.elapsed_ms, 3)
        return out


def first_mismatch(lhs: QSeries, rhs: QSeries, order: Optional[int] = None):
    """Lowest exponent below ``order`` where the two series differ, or None."""
    order = min(lhs.order, rhs.order) if order is None else order
    lhs, rhs = lhs.truncate(order), rhs.truncate(order)
    if lhs == rhs:
        return None
    for k in range(min(lhs.valuation, rhs.valuation), order):
        a, b = lhs.coeff(k), rhs.coeff(k)
        if a != b:
            return k, a, b
    return None


def verify_identity(identity_id: str, params: Optional[dict], order: int) -> VerificationReport:
    """Compare both sides of a registry entry coefficient by coefficient."""
    if order < 1:
        raise ValueError("order must be at least 1")
    ident = lookup(identity_id)
    values = ident.normalize(params)
    t0 = time.perf_counter()
    lhs, rhs = build_sides(ident.id, values, order)
    bad = first_mismatch(lhs, rhs, order)
    elapsed = (time.perf_counter() - t0) * 1000.0
    return VerificationReport(ident.id, values, order, bad is None, bad, elapsed)


def x_samples(count: int, first=(2, -3, Fraction(1, 2))) -> list[Fraction]:
    """``count`` distinct rationals outside {0, 1}, starting with ``first``."""
    out = [as_fraction(v) for v in first][:count]
    k = 2
    while len(out) < count:
        for cand in (Fraction(-k + 1), Fraction(k)):
            if cand not in (0, 1) and cand not in out and len(out) < count:
                out.append(cand)
        k += 1
    return out


# ---------------------------------------------------------------------------
# lacunarity


@dataclass(frozen=True)
class LacunarityReport:
    series_id: str
    order: int
    nonzero_count: int
    density: float
    window_counts: tuple[int, int, int, int]
    window_densities: tuple[float, float, float, float]

    def to_dict(self) -> dict:
        return {
            "id": self.series_id,
            "order": self.order,
            "nonzero_count": self.nonzero_count,
            "density": self.density,
            "window_counts": list(self.window_counts),
            "window_densities": list(self.window_densities),
        }


def census(series: QSeries, order: int, series_id: str = "") -> LacunarityReport:
    """Nonzero-coefficient census of ``series`` over exponents ``0 .. order-1``."""
    if series.order < order:
        raise ValueError("series is truncated below the scan order")
    bounds = [0, order // 4, order // 2, 3 * order // 4, order]
    hits = [e for e in series.nonzero_exponents() if 0 <= e < order]
    counts = []
    for lo, hi in zip(bounds, bounds[1:]):
        counts.append(sum(1 for e in hits if lo <= e < hi))
    dens = tuple(c / (hi - lo) if hi > lo else 0.0 for c, lo, hi in zip(counts, bounds, bounds[1:]))
    return LacunarityReport(series_id, order, len(hits), len(hits) / order, tuple(counts), dens)


def lacunarity_scan(target, order: int, side: str = "lhs") -> LacunarityReport:
    """Density of nonzero coefficients for a named series, registry id, or series."""
    if order < 1000:
        raise ValueError("lacunarity scans need order >= 1000")
    if isinstance(target, QSeries):
        return census(target, order, "series")
    key = target.replace("-", "_").lower()
    if key in NAMED_SERIES:
        return census(NAMED_SERIES[key](order), order, target)
    lhs, rhs = build_sides(target, None, order)
    return census(lhs if side == "lhs" else rhs, order, f"{lookup(target).id}:{side}")
