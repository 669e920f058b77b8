"""Acceptance suite: one test per criterion, each printing a single PASS/FAIL line.

Every comparison is exact over the rationals; the only tolerances are the
wall-clock budgets pinned below.
"""

import random
import time
from fractions import Fraction

from qbailey.bailey import (
    bailey_lemma,
    bailey_lemma_y_to_infinity,
    base_change,
    scaled_pair,
    verify_pair,
)
from qbailey.combinatorics import norm_form_count, o_star_count, _signed_counts
from qbailey.identities import (
    build_sides,
    expand_named_series,
    lacunarity_scan,
    lookup,
    verify_identity,
    x_samples,
)
from qbailey.pairs import (
    pair_andrews_b_neg_c,
    pair_cor22,
    pair_cor23,
    pair_cor24,
    pair_theorem21,
    pair_x_to_zero,
    theorem21_direct,
)
from qbailey.qseries import Monomial, QSeries, poch_finite_inverse

q = Monomial(1, 1)

BUDGET_PAIRS_S = 30.0
BUDGET_IDENTITY_S = 10.0
BUDGET_LACUNARITY_S = 60.0
LAST_WINDOW_DENSITY_MAX = 0.1


def report(capsys, number, ok, detail):
    with capsys.disabled():
        print(f"\nacceptance {number:2d}: {'PASS' if ok else 'FAIL'}  {detail}")
    assert ok, detail


def test_01_one_parameter_pair_relation(capsys):
    t0 = time.perf_counter()
    bad = []
    for a, x in [(q, 3), (q, -2), (2, 5), (3, Fraction(1, 3))]:
        rep = verify_pair(pair_theorem21(a, x), 16, 50)
        if not rep.ok:
            bad.append((str(a), str(x), rep.first_failure))
    elapsed = time.perf_counter() - t0
    ok = not bad and elapsed < BUDGET_PAIRS_S
    report(capsys, 1, ok, f"4 parameter choices, n<=16, order 50, {elapsed:.2f}s; failures {bad}")


def test_02_specialized_pairs(capsys):
    t0 = time.perf_counter()
    bad = []
    for p in (pair_cor22(), pair_cor23(), pair_cor24(), pair_x_to_zero(q)):
        rep = verify_pair(p, 20, 80)
        if not rep.ok:
            bad.append((p.label, rep.first_failure))
    elapsed = time.perf_counter() - t0
    ok = not bad and elapsed < BUDGET_PAIRS_S
    report(capsys, 2, ok, f"3 specializations + x->0 pair, n<=20, order 80, {elapsed:.2f}s; failures {bad}")


def test_03_base_change_matches_closed_form(capsys):
    bad = []
    for a, x in [(2, 5), (3, Fraction(1, 3))]:
        via = base_change(pair_andrews_b_neg_c(a, x))
        direct = theorem21_direct(a, x)
        for n in range(11):
            if via.alpha(n, 40) != direct.alpha(n, 40) or via.beta(n, 40) != direct.beta(n, 40):
                bad.append((a, x, n))
    report(capsys, 3, not bad, f"n<=10 at (a,x) in {{(2,5),(3,1/3)}}, order 40; mismatches {bad}")


def test_04_bailey_lemma_instances(capsys):
    order = 200
    results = {}
    lhs, rhs = bailey_lemma(pair_cor23(), Monomial(1, 2), Monomial(-1, 3), order)
    results["q^4 pair, X=q^2, Y=-q^3"] = lhs == rhs
    lhs, rhs = bailey_lemma(pair_cor24(), Monomial(-1, 1), Monomial(-1, 2), order)
    results["cor24 pair, X=-q, Y=-q^2"] = lhs == rhs
    lhs, rhs = bailey_lemma_y_to_infinity(pair_cor22(), Monomial(1, 2), order)
    direct = QSeries.zero(order)
    n = 0
    while n * (2 * n + 1) < order:
        e = n * (2 * n + 1)
        direct = direct + poch_finite_inverse(-1, 1, 1, 2 * n + 1, order - e).shift(e)
        n += 1
    results["Y->inf, X=q^2"] = lhs == rhs
    results["Y->inf lhs is sum q^{n(2n+1)}/(-q)_{2n+1}"] = lhs == direct
    ok = all(results.values())
    report(capsys, 4, ok, f"order {order}: {results}")


def test_05_registry_at_acceptance_orders(capsys):
    checks = [
        ("cor-3.5", None, 500),
        ("cor-3.9", None, 500),
        ("cor-3.7", None, 1000),
        ("cor-3.8", None, 1000),
        ("eq-3.13", None, 2000),
    ]
    for x in (2, -3, Fraction(1, 2)):
        checks.append(("eq-3.11", {"x": x}, 300))
        checks.append(("eq-3.12", {"x": x}, 300))
    for b in (2, -3, Fraction(1, 2)):
        for n in range(26):
            checks.append(("fine-16.3", {"n": n, "b": b}, 200))
    samples = {}
    for ident in ("eq-3.11", "eq-3.12"):
        count = lookup(ident).x_degree_span(300) + 1
        samples[ident] = count
        for x in x_samples(count)[3:]:
            checks.append((ident, {"x": x}, 300))
    failures, slowest = [], 0.0
    for ident, params, order in checks:
        t0 = time.perf_counter()
        rep = verify_identity(ident, params, order)
        dt = time.perf_counter() - t0
        slowest = max(slowest, dt)
        if not rep.equal or dt >= BUDGET_IDENTITY_S:
            failures.append((ident, params, rep.first_mismatch, round(dt, 2)))
    ok = not failures
    report(
        capsys,
        5,
        ok,
        f"{len(checks)} checks (x samples {samples}), slowest {slowest:.2f}s; failures {failures[:3]}",
    )


def test_06_signed_partition_counts(capsys):
    order = 61
    o = QSeries(list(_signed_counts(order - 1, False)), order=order)
    o_star = QSeries(list(_signed_counts(order - 1, True)), order=order)
    eq_o = o == expand_named_series("sigma_star", order)
    eq_star = o_star == expand_named_series("o_star_gen", order)
    small = [o_star_count(n, "enumerate") for n in (1, 2, 4)]
    ok = eq_o and eq_star and small == [-1, 0, 1]
    report(capsys, 6, ok, f"n<=60: O(n) series {eq_o}, O*(n) series {eq_star}; O*(1,2,4) by enumeration {small}")


def test_07_norm_form_counts(capsys):
    bad = []
    n = 1
    while 8 * n - 1 <= 2000:
        c = norm_form_count(8 * n - 1)
        if 2 * o_star_count(n) != (-1) ** n * c.count or c.sign != (-1) ** n:
            bad.append(n)
        n += 1
    rep = verify_identity("cor-3.6", None, 2001)
    _, rhs = build_sides("cor-3.6", None, 10)
    seven = norm_form_count(7)
    ok = not bad and rep.equal and seven == (2, -1) and rhs.coeff(7) == -2
    report(
        capsys,
        7,
        ok,
        f"{n - 1} values of n, mismatches {bad}; series to q^2000 {rep.equal}; N=7 -> {tuple(seven)}, q^7 coeff {rhs.coeff(7)}",
    )


def test_08_parity_relation(capsys):
    f1p = expand_named_series("f1_prime", 400)
    even = (f1p + f1p.negate_q()).scale(Fraction(1, 2))
    ok = even == expand_named_series("f1", 200).subs_power(2)
    report(capsys, 8, ok, "(f1'(q) + f1'(-q))/2 == f1(q^2) through q^399")


def test_09_lacunarity_census(capsys):
    t0 = time.perf_counter()
    low = lacunarity_scan("cor-3.8", 5000)
    high = lacunarity_scan("cor-3.8", 20000)
    elapsed = time.perf_counter() - t0
    decreasing = high.density < low.density
    last = high.window_densities[-1]
    ok = decreasing and last < LAST_WINDOW_DENSITY_MAX and elapsed < BUDGET_LACUNARITY_S
    report(
        capsys,
        9,
        ok,
        f"density {low.density:.4f} at 5000 -> {high.density:.4f} at 20000 (decreasing: {decreasing}); "
        f"last quarter {last:.4f} (< {LAST_WINDOW_DENSITY_MAX} required); {elapsed:.2f}s",
    )


def _random_series(rng, order):
    val = rng.randint(-3, 3)
    n = rng.randint(0, order - val)
    coeffs = [Fraction(rng.randint(-9, 9), rng.randint(1, 9)) for _ in range(n)]
    return QSeries(coeffs, val, order=order)


def test_10_algebraic_properties(capsys):
    rng = random.Random(20261016)
    ring_ok = True
    for _ in range(100):
        a, b, c = (_random_series(rng, 40) for _ in range(3))
        ring_ok &= (a + b) + c == a + (b + c)
        ring_ok &= a * b == b * a
        ring_ok &= (a * b) * c == a * (b * c)
        ring_ok &= a * (b + c) == a * b + a * c
    base = pair_cor24()
    scale_ok = all(
        verify_pair(scaled_pair(base, f), 10, 40).ok
        for f in (Fraction(-7, 3), Monomial(2, 3), lambda order: QSeries([1, 1, 1], order=order))
    )
    trunc_ok = True
    for _ in range(50):
        a, b = _random_series(rng, 40), _random_series(rng, 40)
        k = rng.randint(1, 40)
        prod = a * b
        cut = a.truncate(k) * b.truncate(k)
        m = min(cut.order, prod.order)
        trunc_ok &= (a.truncate(k) + b.truncate(k)) == (a + b).truncate(k)
        trunc_ok &= cut.truncate(m) == prod.truncate(m)
        trunc_ok &= a.truncate(k).order == min(k, a.order)
    ok = ring_ok and scale_ok and trunc_ok
    report(capsys, 10, ok, f"ring axioms (100 triples) {ring_ok}; pair scaling {scale_ok}; truncation {trunc_ok}")
