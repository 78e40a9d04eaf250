"""Ramanujan's tau function from the q-expansion of Delta = q prod (1 - q^n)^24.

Coefficients are exact Python integers (numpy object arrays during the
expansion).  tau(n) grows like n^(11/2), well past int64 near n = 3000.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from math import gcd

import numpy as np

from .errors import BoundViolated, NotCoprime, OutOfRange, SizeExceeded
from .ffield import is_prime
from .policy import Policy, resolve


@dataclass(frozen=True)
class QExpansion:
    B: int
    coeffs: tuple[int, ...]   # tau(1), ..., tau(B)

    def tau(self, n: int) -> int:
        if not 1 <= n <= self.B:
            raise OutOfRange(f"tau({n}) outside computed range 1..{self.B}")
        return self.coeffs[n - 1]


def pentagonal_terms(order: int) -> list[tuple[int, int]]:
    """Nonzero (exponent, sign) pairs of prod (1 - q^n) below ``order`` (Euler)."""
    out = [(0, 1)]
    k = 1
    while True:
        sign = -1 if k % 2 else 1
        e1 = k * (3 * k - 1) // 2
        e2 = k * (3 * k + 1) // 2
        if e1 >= order:
            break
        out.append((e1, sign))
        if e2 < order:
            out.append((e2, sign))
        k += 1
    return sorted(out)


def delta_expand(B: int, policy: Policy | None = None) -> QExpansion:
    """tau(1..B) by 24 sparse truncated multiplications with the pentagonal series."""
    pol = resolve(policy)
    if B < 1:
        raise OutOfRange("B must be >= 1")
    if B > pol.max_tau:
        raise SizeExceeded(f"B = {B} exceeds policy bound {pol.max_tau}")
    order = B  # prod^24 needed through q^(B-1)
    terms = pentagonal_terms(order)
    series = np.zeros(order, dtype=object)
    series[:] = 0
    series[0] = 1
    for _ in range(24):
        out = np.zeros(order, dtype=object)
        out[:] = 0
        for e, s in terms:
            if s > 0:
                out[e:] += series[: order - e]
            else:
                out[e:] -= series[: order - e]
        series = out
    return QExpansion(B, tuple(int(c) for c in series))


@dataclass(frozen=True)
class Verdict:
    passed: bool
    lhs: int
    rhs: int


def multiplicativity_check(exp: QExpansion, m: int, n: int) -> Verdict:
    if gcd(m, n) != 1:
        raise NotCoprime(f"gcd({m}, {n}) = {gcd(m, n)}")
    if m * n > exp.B:
        raise OutOfRange(f"{m}*{n} exceeds B = {exp.B}")
    lhs = exp.tau(m) * exp.tau(n)
    rhs = exp.tau(m * n)
    return Verdict(lhs == rhs, lhs, rhs)


def euler_recursion_check(exp: QExpansion, p: int, k: int) -> Verdict:
    """tau(p^(k+1)) = tau(p) tau(p^k) - p^11 tau(p^(k-1))."""
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if k < 1 or p ** (k + 1) > exp.B:
        raise OutOfRange(f"p^(k+1) = {p}^{k + 1} outside 1..{exp.B}")
    lhs = exp.tau(p ** (k + 1))
    rhs = exp.tau(p) * exp.tau(p**k) - p**11 * exp.tau(p ** (k - 1))
    return Verdict(lhs == rhs, lhs, rhs)


@dataclass(frozen=True)
class DeligneResult:
    passed: bool
    tau_p: int
    normalized: float


def deligne_check_value(tau_p: int, p: int) -> DeligneResult:
    """Exact test tau(p)^2 < 4 p^11; the normalized trace is for reporting."""
    return DeligneResult(tau_p * tau_p < 4 * p**11, tau_p, tau_p / (2 * p**5.5))


def deligne_bound_check(exp: QExpansion, p: int) -> DeligneResult:
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    return deligne_check_value(exp.tau(p), p)


def local_roots(exp: QExpansion, p: int) -> tuple[complex, complex]:
    """Roots alpha, beta of X^2 - tau(p) X + p^11 (complex conjugates under the bound)."""
    t = exp.tau(p)
    disc = t * t - 4 * p**11
    if disc >= 0:
        raise BoundViolated(f"discriminant {disc} >= 0 at p = {p}")
    # exact discriminant, one rounding in the float sqrt
    im = math.sqrt(-disc) / 2
    re = t / 2
    return complex(re, im), complex(re, -im)


def sigma(n: int, k: int) -> int:
    s = 0
    d = 1
    while d * d <= n:
        if n % d == 0:
            s += d**k
            if d * d != n:
                s += (n // d) ** k
        d += 1
    return s


def tau_csv_rows(exp: QExpansion) -> list[tuple[int, int]]:
    return [(n, t) for n, t in enumerate(exp.coeffs, start=1)]

