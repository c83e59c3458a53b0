"""Coefficient-equation bounds, the circle-mean identity, and product checks."""

from __future__ import annotations

import math

import numpy as np
import pytest

from szego import (DomainError, Polynomial, VerificationError, bounds_report,
                   cauchy_bound, entropy, find_zeros, inner_cauchy_bound,
                   inner_van_vleck_bound, jensen_identity, reversed_companion,
                   van_vleck_bound, viete_checks, weak_jensen_check)


def _poly_from_roots(roots):
    c = np.atleast_1d(np.poly(np.asarray(roots, dtype=complex)))[::-1].copy()
    return Polynomial(c, len(roots))


def _bisect_increasing(f, lo, hi, iters=200):
    # sign-change bisection; f must be negative at lo and positive at hi
    assert f(lo) < 0 < f(hi)
    for _ in range(iters):
        mid = math.sqrt(lo * hi) if lo > 0 else 0.5 * (lo + hi)
        if f(mid) < 0:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def _cauchy_oracle(c):
    # direct bisection on |b_n| x^n - sum_{k<n} |b_k| x^k, in log form
    # to survive huge radii
    mags = np.abs(c)
    n = len(c) - 1
    ks = np.nonzero(mags[:n])[0]

    def f(x):
        lead = math.log(mags[n]) + n * math.log(x)
        rest = [math.log(mags[k]) + k * math.log(x) for k in ks]
        m = max(rest)
        return lead - (m + math.log(sum(math.exp(r - m) for r in rest)))

    return _bisect_increasing(f, 1e-80, 1e80)


def test_cauchy_bound_matches_bisection_oracle():
    rng = np.random.default_rng(11)
    for _ in range(40):
        deg = int(rng.integers(1, 20))
        c = rng.normal(size=deg + 1) + 1j * rng.normal(size=deg + 1)
        c[-1] += 1.5
        got = cauchy_bound(Polynomial(c, deg))
        assert got == pytest.approx(_cauchy_oracle(c), rel=1e-9)


def test_cauchy_bound_pinned_all_ones():
    # x^3 = x^2 + x + 1 and the mirrored equation 1 = y + y^2 + y^3,
    # solved independently by bisection and frozen
    P = Polynomial(np.ones(4), 3)
    assert cauchy_bound(P) == pytest.approx(1.8392867552141612, rel=1e-12)
    assert inner_cauchy_bound(P) == pytest.approx(0.5436890126920763, rel=1e-12)


def test_bounds_contain_all_zeros():
    rng = np.random.default_rng(77)
    for _ in range(30):
        deg = int(rng.integers(2, 24))
        c = rng.normal(size=deg + 1) + 1j * rng.normal(size=deg + 1)
        c[0] += 1.0
        c[-1] += 1.0
        P = Polynomial(c, deg)
        Z = find_zeros(P)
        ms = np.abs(Z.finite_zeros)
        C = cauchy_bound(P)
        lo = inner_cauchy_bound(P)
        assert np.all(ms <= C * (1 + 1e-9))
        assert np.all(ms >= lo * (1 - 1e-9))


def test_inner_cauchy_is_reciprocal_of_reversed_cauchy():
    rng = np.random.default_rng(13)
    for _ in range(20):
        deg = int(rng.integers(1, 16))
        c = rng.normal(size=deg + 1) + 1j * rng.normal(size=deg + 1)
        c[0] += 2.0
        c[-1] += 2.0
        P = Polynomial(c, deg)
        assert inner_cauchy_bound(P) == pytest.approx(
            1.0 / cauchy_bound(reversed_companion(P)), rel=1e-9)


def test_van_vleck_endpoints():
    rng = np.random.default_rng(17)
    c = rng.normal(size=9) + 1j * rng.normal(size=9)
    c[0] += 2.0
    c[-1] += 2.0
    P = Polynomial(c, 8)
    # m = n recovers the outer bound, m = 1 has the closed form
    assert van_vleck_bound(P, 8) == pytest.approx(cauchy_bound(P), rel=1e-10)
    assert van_vleck_bound(P, 1) == pytest.approx(
        (abs(c[0]) / abs(c[8])) ** (1 / 8), rel=1e-10)
    assert inner_van_vleck_bound(P, 8) == pytest.approx(
        inner_cauchy_bound(P), rel=1e-10)
    with pytest.raises(DomainError):
        van_vleck_bound(P, 0)
    with pytest.raises(DomainError):
        van_vleck_bound(P, 9)


def test_van_vleck_counts_zeros():
    rng = np.random.default_rng(19)
    for _ in range(15):
        deg = int(rng.integers(3, 20))
        c = rng.normal(size=deg + 1) + 1j * rng.normal(size=deg + 1)
        c[0] += 1.0
        c[-1] += 1.0
        P = Polynomial(c, deg)
        ms = np.sort(np.abs(find_zeros(P).finite_zeros))
        for m in range(1, deg + 1):
            V = van_vleck_bound(P, m)
            v = inner_van_vleck_bound(P, m)
            assert np.sum(ms <= V * (1 + 1e-9)) >= m
            assert np.sum(ms >= v * (1 - 1e-9)) >= m
        # the full-count radii agree with the global bounds
        assert van_vleck_bound(P, deg) <= cauchy_bound(P) * (1 + 1e-12)


def test_inner_van_vleck_slack_is_nonnegative():
    rng = np.random.default_rng(23)
    for _ in range(20):
        deg = int(rng.integers(2, 16))
        c = rng.normal(size=deg + 1) + 1j * rng.normal(size=deg + 1)
        c[0] += 1.0
        c[-1] += 1.0
        P = Polynomial(c, deg)
        for m in range(1, deg + 1):
            v, slack = inner_van_vleck_bound(P, m, return_slack=True)
            assert slack >= -1e-9


def test_binomial_column_identity():
    # sum_{k=n-m+1}^{n} C(k-1, k-(n-m)-1) == C(n, m-1), exhaustively
    for n in range(1, 31):
        for m in range(1, n + 1):
            total = sum(math.comb(k - 1, k - (n - m) - 1)
                        for k in range(n - m + 1, n + 1))
            assert total == math.comb(n, m - 1)


def test_entropy_bound_on_binomials():
    assert entropy(0.0) == 0.0
    assert entropy(1.0) == 0.0
    assert entropy(0.5) == pytest.approx(math.log(2))
    for n in range(1, 41):
        for k in range(n + 1):
            assert math.comb(n, k) <= math.exp(n * entropy(k / n)) * (1 + 1e-12)
    with pytest.raises(DomainError):
        entropy(1.5)


def test_jensen_identity_on_known_roots():
    rng = np.random.default_rng(29)
    for _ in range(15):
        deg = int(rng.integers(2, 20))
        # radii kept clear of 1 so the circle integrand stays smooth
        radii = np.concatenate([rng.uniform(0.2, 0.8, size=deg // 2),
                                rng.uniform(1.3, 3.0, size=deg - deg // 2)])
        roots = radii * np.exp(2j * np.pi * rng.random(deg))
        P = _poly_from_roots(roots)
        Z = find_zeros(P)
        lhs, rhs = jensen_identity(P, Z, quad_points=8192)
        expected = float(np.sum(np.abs(np.log(np.abs(roots)))))
        # lhs carries the root-finder's own error, about 1e-9 per zero
        assert lhs == pytest.approx(expected, rel=1e-6)
        assert rhs == pytest.approx(lhs, rel=1e-6, abs=1e-6)


def test_jensen_identity_warns_near_circle():
    P = _poly_from_roots([1.0 + 1e-12, 0.5])
    Z = find_zeros(P)
    with pytest.warns(RuntimeWarning):
        jensen_identity(P, Z)


def test_jensen_identity_preconditions():
    P = Polynomial(np.array([0.0, 1.0]), 1)
    with pytest.raises(DomainError):
        jensen_identity(P, find_zeros(P))


def test_weak_jensen_holds():
    rng = np.random.default_rng(31)
    for _ in range(10):
        deg = int(rng.integers(2, 24))
        c = rng.normal(size=deg + 1) + 1j * rng.normal(size=deg + 1)
        c[0] += 1.0
        c[-1] += 1.0
        P = Polynomial(c, deg)
        Z = find_zeros(P)
        for T in (1.1, 2.0, 10.0):
            lhs, rhs = weak_jensen_check(P, Z, T)
            assert lhs <= rhs + 1e-9
    with pytest.raises(DomainError):
        weak_jensen_check(P, Z, 1.0)


def test_viete_product_and_inequalities():
    rng = np.random.default_rng(37)
    for _ in range(20):
        deg = int(rng.integers(2, 20))
        c = rng.normal(size=deg + 1) + 1j * rng.normal(size=deg + 1)
        c[0] += 1.0
        c[-1] += 1.0
        P = Polynomial(c, deg)
        rep = viete_checks(P, find_zeros(P))
        assert rep.product_rel_err < 1e-8
        assert rep.min_slack() >= -1e-9


def test_viete_hand_example():
    # (z - 2)(z - 1/2): product of moduli 1 equals |b_0 / b_2|
    P = _poly_from_roots([2.0, 0.5])
    rep = viete_checks(P, find_zeros(P))
    assert rep.product_log_lhs == pytest.approx(0.0, abs=1e-10)
    assert rep.product_log_rhs == pytest.approx(0.0, abs=1e-10)


def test_viete_with_infinity_zeros():
    # formal leading coefficient zero: the product identity degenerates
    # to infinity on both sides and is reported as skipped, while the
    # small-moduli inequalities stay checkable
    P = Polynomial(np.array([2.0, 3.0, 1.0, 0.0]), 3)
    rep = viete_checks(P, find_zeros(P))
    assert rep.product_rel_err is None
    assert any(k == -1 for k, _ in rep.skipped)
    # two smallest moduli: 1 * 2 against C(3,2) |b_0|/|b_2| = 6
    assert rep.ineq_small_slack[2] == pytest.approx(math.log(3.0), abs=1e-9)
    assert rep.min_slack() >= -1e-9


def test_bounds_report_structure():
    P = Polynomial(np.ones(9), 8)
    rep = bounds_report(P)
    d = rep.to_dict()
    assert set(d) >= {"cauchy", "inner_cauchy", "van_vleck", "inner_van_vleck"}
    assert d["van_vleck"]["8"] == pytest.approx(d["cauchy"])
    assert len(d["van_vleck"]) == 8