"""Coefficient-based zero-location bounds and log-product inequality checkers."""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np

from .exceptions import ConvergenceError, DomainError, VerificationError
from .series import Polynomial

__all__ = [
    "BoundsReport",
    "VieteReport",
    "cauchy_bound",
    "inner_cauchy_bound",
    "van_vleck_bound",
    "inner_van_vleck_bound",
    "entropy",
    "jensen_identity",
    "weak_jensen_check",
    "viete_checks",
    "bounds_report",
]

#: zeros this close to the unit circle make the Jensen quadrature near-singular
UNIMODULAR_TOL = 1e-9


def _log_comb(n: int, k: int) -> float:
    if k < 0 or k > n:
        raise DomainError(f"binomial ({n}, {k}) out of range")
    return math.lgamma(n + 1) - math.lgamma(k + 1) - math.lgamma(n - k + 1)


def _logsumexp(a: np.ndarray) -> float:
    m = float(np.max(a))
    if not math.isfinite(m):
        return m
    return m + math.log(float(np.sum(np.exp(a - m))))


def _solve_log_equation(log_lhs: float, p: float, log_coeffs: np.ndarray,
                        powers: np.ndarray) -> float:
    """Positive root of lhs * x**p = sum_j exp(log_coeffs[j]) * x**powers[j].

    Solved for u = ln x as the root of
        psi(u) = logsumexp(log_coeffs + powers*u) - log_lhs - p*u,
    which is strictly monotone whenever p is strictly above or below every
    power, the only cases used here. Bisection brackets to 1e-3, then
    safeguarded Newton polishes to relative 1e-12 in x.
    """
    log_coeffs = np.asarray(log_coeffs, dtype=float)
    powers = np.asarray(powers, dtype=float)

    def psi(u: float) -> float:
        return _logsumexp(log_coeffs + powers * u) - log_lhs - p * u

    def psi_prime(u: float) -> float:
        a = log_coeffs + powers * u
        w = np.exp(a - np.max(a))
        return float(np.dot(w, powers) / np.sum(w)) - p

    increasing = psi_prime(0.0) > 0
    u0 = 0.0
    f0 = psi(u0)
    if f0 == 0.0:
        return 1.0
    # expand a bracket in the downhill direction
    direction = -1.0 if (f0 > 0) == increasing else 1.0
    step = 1.0
    ua, fa = u0, f0
    while True:
        ub = ua + direction * step
        fb = psi(ub)
        if fa * fb <= 0:
            break
        ua, fa = ub, fb
        step *= 2.0
        if abs(ub) > 1400:
            raise ConvergenceError("bound equation root exceeds double range",
                                   residual=abs(fb))
    lo, hi = (ua, ub) if ua < ub else (ub, ua)
    flo = psi(lo)
    while hi - lo > 1e-3:
        mid = 0.5 * (lo + hi)
        fm = psi(mid)
        if fm == 0.0:
            return math.exp(mid)
        if (fm > 0) == (flo > 0):
            lo, flo = mid, fm
        else:
            hi = mid
    u = 0.5 * (lo + hi)
    for _ in range(100):
        f = psi(u)
        if f == 0.0:
            break
        if (f > 0) == (flo > 0):
            lo = u
        else:
            hi = u
        d = psi_prime(u)
        un = u - f / d if d != 0 else math.inf
        if not lo < un < hi:
            un = 0.5 * (lo + hi)
        if abs(un - u) <= 1e-13 * max(1.0, abs(un)):
            u = un
            break
        u = un
    return math.exp(u)


def _abs_coeffs(P: Polynomial) -> np.ndarray:
    return np.abs(P.coeffs)


def cauchy_bound(P: Polynomial) -> float:
    """Radius C with every zero of P in |w| <= C.

    Unique positive root of |b_n| x^n = sum_{k<n} |b_k| x^k; +inf when the
    leading coefficient vanishes, 0 when no lower coefficient survives.
    """
    c = _abs_coeffs(P)
    n = P.formal_degree
    if not np.any(c > 0):
        raise DomainError("zero polynomial has no Cauchy bound")
    if c[n] == 0:
        return math.inf
    js = np.nonzero(c[:n] > 0)[0]
    if len(js) == 0:
        return 0.0
    return _solve_log_equation(math.log(c[n]), float(n), np.log(c[js]), js)


def inner_cauchy_bound(P: Polynomial) -> float:
    """Radius c with every zero of P in |w| >= c.

    Unique positive root of |b_0| = sum_{k>=1} |b_k| y^k. A constant
    polynomial has no finite zeros, so every radius works: returns +inf.
    """
    c = _abs_coeffs(P)
    if c[0] == 0:
        raise DomainError("constant coefficient is zero; deflate origin zeros first")
    ks = np.nonzero(c[1:] > 0)[0] + 1
    if len(ks) == 0:
        return math.inf
    return _solve_log_equation(math.log(c[0]), 0.0, np.log(c[ks]), ks)


def van_vleck_bound(P: Polynomial, m: int) -> float:
    """Radius V with at least m zeros of P in |w| <= V.

    Unique positive root of |b_n| x^n = sum_{j<m} C(n-j-1, m-j-1) |b_j| x^j;
    m = n recovers the Cauchy bound.
    """
    c = _abs_coeffs(P)
    n = P.formal_degree
    if not 1 <= m <= n:
        raise DomainError(f"m must lie in [1, {n}]")
    if c[n] == 0:
        return math.inf
    js = np.nonzero(c[:m] > 0)[0]
    if len(js) == 0:
        return 0.0
    logs = np.array([_log_comb(n - j - 1, m - j - 1) + math.log(c[j]) for j in js])
    return _solve_log_equation(math.log(c[n]), float(n), logs, js)


def inner_van_vleck_bound(P: Polynomial, m: int, return_slack: bool = False):
    """Radius v with at least m zeros of P in |w| >= v.

    Unique positive root of |b_0| = sum_{k=n-m+1}^{n} C(k-1, k-(n-m)-1) |b_k| y^k.
    With ``return_slack`` also returns the log-slack of the audit inequality
    ln|b_0| <= ln C(n, m-1) + max ln|b_k| + n ln max(1, v), which must be >= 0.
    """
    c = _abs_coeffs(P)
    n = P.formal_degree
    if not 1 <= m <= n:
        raise DomainError(f"m must lie in [1, {n}]")
    if c[0] == 0:
        raise DomainError("constant coefficient is zero; deflate origin zeros first")
    ks = np.arange(n - m + 1, n + 1)
    ks = ks[c[ks] > 0]
    if len(ks) == 0:
        v = math.inf
    else:
        logs = np.array(
            [_log_comb(k - 1, k - (n - m) - 1) + math.log(c[k]) for k in ks]
        )
        v = _solve_log_equation(math.log(c[0]), 0.0, logs, ks)
    if not return_slack:
        return v
    if len(ks) == 0:
        return v, math.inf
    max_log_bk = float(np.max(np.log(c[ks])))
    slack = (_log_comb(n, m - 1) + max_log_bk + n * max(0.0, math.log(v))
             - math.log(c[0]))
    return v, slack


def entropy(x: float) -> float:
    """Binary entropy -x ln x - (1-x) ln(1-x); H(0) = H(1) = 0."""
    x = float(x)
    if not 0 <= x <= 1:
        raise DomainError("entropy argument must lie in [0, 1]")
    if x in (0.0, 1.0):
        return 0.0
    return -(x * math.log(x) + (1 - x) * math.log(1 - x))


def _finite_zero_moduli(Z) -> np.ndarray:
    return np.abs(np.asarray(Z.finite_zeros, dtype=np.complex128))


def jensen_identity(P: Polynomial, Z, quad_points: int = 4096):
    """Both sides of the circular-mean identity for log zero moduli.

    lhs is the sum of |ln|w|| over the zeros; rhs is the trapezoid quadrature
    of the circle average of ln(|P|^2 / (|b_0||b_n|)). Zeros within 1e-9 of
    the unit circle degrade the quadrature and trigger a warning.
    """
    if quad_points < 1:
        raise DomainError("quad_points must be positive")
    c = P.coeffs
    n = P.formal_degree
    if c[0] == 0 or c[n] == 0:
        raise DomainError("identity needs nonzero first and last coefficients")
    moduli = _finite_zero_moduli(Z)
    with np.errstate(divide="ignore"):
        lhs = float(np.sum(np.abs(np.log(moduli))))
    if len(moduli) and float(np.min(np.abs(moduli - 1.0))) < UNIMODULAR_TOL:
        warnings.warn(
            "zero within 1e-9 of the unit circle; quadrature accuracy degrades "
            "to about 1e-3", RuntimeWarning, stacklevel=2)
    theta = np.linspace(0.0, 2.0 * math.pi, quad_points, endpoint=False)
    vals = np.abs(P(np.exp(1j * theta)))
    with np.errstate(divide="ignore"):
        mean_log = float(np.mean(2.0 * np.log(vals)))
    rhs = mean_log - math.log(abs(c[0])) - math.log(abs(c[n]))
    return lhs, rhs


def weak_jensen_check(P: Polynomial, Z, T: float, quad_points: int = 4096):
    """Both sides of the tail-mass inequality at threshold T > 1.

    lhs = ln(T) (1 - F(T) + F(1/T)) with F the zero-modulus distribution;
    rhs is the Jensen circle average divided by the formal degree. Raises
    VerificationError if lhs exceeds rhs beyond 1e-9.
    """
    T = float(T)
    if T <= 1:
        raise DomainError("threshold T must exceed 1")
    n = P.formal_degree
    if n < 1:
        raise DomainError("degree must be positive")
    moduli = _finite_zero_moduli(Z)
    F_T = float(np.count_nonzero(moduli <= T)) / n
    F_invT = float(np.count_nonzero(moduli <= 1.0 / T)) / n
    lhs = math.log(T) * (1.0 - F_T + F_invT)
    _, jensen_rhs = jensen_identity(P, Z, quad_points)
    rhs = jensen_rhs / n
    if lhs > rhs + 1e-9:
        raise VerificationError(
            f"weak Jensen inequality violated: lhs={lhs!r} > rhs={rhs!r}")
    return lhs, rhs


@dataclass
class VieteReport:
    """Log-space audit of the zero-product identity and its two inequalities."""

    product_log_lhs: float | None
    product_log_rhs: float | None
    product_rel_err: float | None
    ineq_small_slack: dict[int, float]
    ineq_large_slack: dict[int, float]
    skipped: list[tuple[int, str]]

    def min_slack(self) -> float:
        vals = list(self.ineq_small_slack.values()) + list(
            self.ineq_large_slack.values())
        return min(vals) if vals else math.inf


def viete_checks(P: Polynomial, Z) -> VieteReport:
    """Verify the modulus-product identity and binomial product inequalities.

    The identity |b_0|/|b_n| = prod |w| is checked in log space whenever both
    end coefficients are nonzero. For every k with b_k != 0, the product of
    the k smallest (resp. n-k largest) zero moduli is compared against the
    binomial bound; slacks are reported in nats and must be nonnegative.
    """
    c = _abs_coeffs(P)
    n = P.formal_degree
    moduli = np.sort(_finite_zero_moduli(Z))
    with np.errstate(divide="ignore"):
        logm = np.log(moduli)
    logm = np.concatenate([logm, np.full(Z.infinity_count, math.inf)])
    # prefix[k] = sum of logs of the k smallest moduli
    prefix = np.concatenate([[0.0], np.cumsum(logm)])
    total = prefix[-1]

    skipped: list[tuple[int, str]] = []
    if c[0] > 0 and c[n] > 0:
        lhs_log = float(total)
        rhs_log = math.log(c[0]) - math.log(c[n])
        rel = abs(math.expm1(lhs_log - rhs_log)) if math.isfinite(lhs_log) else math.inf
        product = (lhs_log, rhs_log, rel)
    else:
        product = (None, None, None)
        skipped.append((-1, "product identity needs b_0 and b_n nonzero"))

    small: dict[int, float] = {}
    large: dict[int, float] = {}
    for k in range(n + 1):
        if c[k] == 0:
            skipped.append((k, "coefficient is zero"))
            continue
        lc = _log_comb(n, k)
        if c[n] > 0:
            # n-k largest moduli against |b_k|/|b_n|
            tail = total - prefix[k] if math.isfinite(total) else math.inf
            large[k] = lc + tail - (math.log(c[k]) - math.log(c[n]))
        if c[0] > 0:
            small[k] = lc + math.log(c[0]) - math.log(c[k]) - prefix[k]
    return VieteReport(product[0], product[1], product[2], small, large, skipped)


@dataclass
class BoundsReport:
    """Outer/inner Cauchy radii and the partial-count radii maps."""

    cauchy: float
    inner_cauchy: float | None
    van_vleck: dict[int, float]
    inner_van_vleck: dict[int, float]

    def to_dict(self) -> dict:
        return {
            "cauchy": self.cauchy,
            "inner_cauchy": self.inner_cauchy,
            "van_vleck": {str(m): v for m, v in self.van_vleck.items()},
            "inner_van_vleck": {str(m): v for m, v in self.inner_van_vleck.items()},
        }


def bounds_report(P: Polynomial, m_values=None) -> BoundsReport:
    """Assemble the four bound families for a polynomial.

    ``m_values`` defaults to 1..min(n, 12). The inner radii are omitted
    (None / empty) when the constant coefficient vanishes.
    """
    n = P.formal_degree
    if m_values is None:
        m_values = range(1, min(n, 12) + 1)
    m_values = [int(m) for m in m_values]
    for m in m_values:
        if not 1 <= m <= n:
            raise DomainError(f"m={m} out of range [1, {n}]")
    c0_ok = abs(P.coeffs[0]) > 0
    return BoundsReport(
        cauchy=cauchy_bound(P),
        inner_cauchy=inner_cauchy_bound(P) if c0_ok else None,
        van_vleck={m: van_vleck_bound(P, m) for m in m_values},
        inner_van_vleck=(
            {m: inner_van_vleck_bound(P, m) for m in m_values} if c0_ok else {}
        ),
    )
