"""Polynomial systems and exhaustive point counting over finite fields.

Counting is vectorized over chunks of the enumeration domain.  Coordinate
tuples are numbered in base-q counting order (first coordinate least
significant), so a domain of ``q**k`` tuples is the integer range
``[0, q**k)``; it can be split into contiguous ranges counted
independently and summed.  Variables that occur in no polynomial (after
reducing coefficients mod p) are not enumerated: each contributes a
factor of q.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from . import upoly
from .errors import (
    EvenPrime,
    InconsistentCounts,
    NotHomogeneous,
    NotSquarefree,
)
from .ffield import FieldSpec, FieldTables, build_field, factorize, is_prime, tables
from .policy import Policy, resolve

Term = tuple[int, tuple[int, ...]]
Poly = tuple[Term, ...]

CHUNK = 1 << 18


def make_poly(terms: Iterable[tuple[int, Sequence[int]]], num_vars: int) -> Poly:
    """Canonical polynomial: like terms combined, zeros dropped, exponents descending."""
    acc: dict[tuple[int, ...], int] = {}
    for c, exps in terms:
        exps = tuple(int(e) for e in exps)
        if len(exps) != num_vars or any(e < 0 for e in exps):
            raise ValueError(f"bad exponent vector {exps} for {num_vars} variables")
        acc[exps] = acc.get(exps, 0) + int(c)
    return tuple((c, e) for e, c in sorted(acc.items(), reverse=True) if c != 0)


def total_degree(poly: Poly) -> int:
    return max((sum(e) for _, e in poly), default=0)


def is_homogeneous(poly: Poly) -> bool:
    return len({sum(e) for _, e in poly}) <= 1


@dataclass(frozen=True)
class PolySystem:
    num_vars: int
    polys: tuple[Poly, ...] = ()
    ambient: str = "affine"
    names: tuple[str, ...] | None = field(default=None, compare=False)

    def __post_init__(self):
        if self.num_vars < 1:
            raise ValueError("need at least one variable")
        if self.ambient not in ("affine", "projective"):
            raise ValueError(f"unknown ambient {self.ambient!r}")
        polys = tuple(make_poly(p, self.num_vars) for p in self.polys)
        for poly in polys:
            if not poly:
                raise ValueError("identically zero polynomial in system")
        object.__setattr__(self, "polys", polys)
        if self.ambient == "projective":
            for poly in polys:
                if not is_homogeneous(poly):
                    raise NotHomogeneous(f"polynomial {poly} is not homogeneous")

    @classmethod
    def from_terms(cls, num_vars: int, polys, ambient: str = "affine", names=None) -> "PolySystem":
        return cls(num_vars, tuple(tuple(p) for p in polys), ambient, names)

    def as_projective(self) -> "PolySystem":
        return PolySystem(self.num_vars, self.polys, "projective", self.names)

    def as_affine(self) -> "PolySystem":
        return PolySystem(self.num_vars, self.polys, "affine", self.names)

    @property
    def degrees(self) -> list[int]:
        return [total_degree(p) for p in self.polys]


@dataclass(frozen=True)
class CurveSpec:
    """Hyperelliptic model y^2 = f(x) over F_p, p odd, f squarefree mod p."""

    f: tuple[int, ...]
    p: int

    def __post_init__(self):
        if self.p == 2:
            raise EvenPrime("hyperelliptic models y^2 = f(x) need odd characteristic")
        if not is_prime(self.p):
            raise ValueError(f"{self.p} is not prime")
        red = upoly.reduce_mod(self.f, self.p)
        if len(red) < 2:
            raise ValueError("f must have degree >= 1 mod p")
        if not upoly.is_squarefree_mod(red, self.p):
            raise NotSquarefree(f"f = {upoly.to_str(self.f, 'x')} is not squarefree mod {self.p}")
        object.__setattr__(self, "f", tuple(red))

    @property
    def degree(self) -> int:
        return len(self.f) - 1

    @property
    def genus(self) -> int:
        return (self.degree - 1) // 2


@dataclass(frozen=True)
class PointCountSeries:
    q: int
    counts: tuple[int, ...]
    ambient: str = "affine"
    num_vars: int = 1

    def __post_init__(self):
        object.__setattr__(self, "counts", tuple(int(c) for c in self.counts))
        for n, c in enumerate(self.counts, start=1):
            if c < 0 or c > self.ambient_count(n):
                raise InconsistentCounts(f"N_{n} = {c} outside [0, {self.ambient_count(n)}]")

    @property
    def depth(self) -> int:
        return len(self.counts)

    def ambient_count(self, n: int) -> int:
        qn = self.q**n
        m = self.num_vars
        if self.ambient == "affine":
            return qn**m
        if self.ambient == "projective":
            return (qn**m - 1) // (qn - 1)
        if self.ambient == "curve":
            return 2 * qn + 2
        raise ValueError(f"unknown ambient {self.ambient!r}")


# -- evaluation kernels ---------------------------------------------------------

def _reduce_system(polys: Sequence[Poly], p: int) -> list[list[tuple[int, tuple[int, ...]]]]:
    out = []
    for poly in polys:
        red = [(c % p, e) for c, e in poly if c % p]
        out.append(red)
    return out


def _active_vars(polys, num_vars: int) -> list[int]:
    used = set()
    for poly in polys:
        for _, e in poly:
            used.update(i for i, k in enumerate(e) if k)
    return sorted(used)


def _eval_on(poly, logs: dict[int, np.ndarray], size: int, T: FieldTables) -> np.ndarray:
    """Evaluate a reduced polynomial given per-variable log arrays."""
    acc = np.zeros(size, dtype=np.int64)
    for c, e in poly:
        lsum = np.full(size, T.log[c], dtype=np.int64)
        zero = np.zeros(size, dtype=bool)
        for v, k in enumerate(e):
            if k:
                lv = logs[v]
                zero |= lv < 0
                lsum += k * lv
        val = np.where(zero, 0, T.exp[lsum % T.order])
        acc = T.add(acc, val)
    return acc


def _coords(start: int, stop: int, nvars: int, q: int) -> list[np.ndarray]:
    idx = np.arange(start, stop, dtype=np.int64)
    out = []
    for _ in range(nvars):
        out.append(idx % q)
        idx = idx // q
    return out


def _count_range(polys, active: list[int], T: FieldTables, start: int, stop: int) -> int:
    total = 0
    for lo in range(start, stop, CHUNK):
        hi = min(lo + CHUNK, stop)
        cols = _coords(lo, hi, len(active), T.q)
        logs = {v: T.log[col] for v, col in zip(active, cols)}
        ok = np.ones(hi - lo, dtype=bool)
        for poly in polys:
            ok &= _eval_on(poly, logs, hi - lo, T) == 0
        total += int(np.count_nonzero(ok))
    return total


def split_range(total: int, parts: int) -> list[tuple[int, int]]:
    parts = max(1, min(parts, total)) if total else 1
    bounds = [total * i // parts for i in range(parts + 1)]
    return [(bounds[i], bounds[i + 1]) for i in range(parts)]


def _count_reduced(polys, num_vars: int, T: FieldTables, pol: Policy,
                   partitions: int = 1, workers: int | None = None) -> int:
    """Zeros in F_q^num_vars of already-reduced polynomials."""
    for poly in polys:
        if poly and all(not any(e) for _, e in poly):
            # nonzero constant
            return 0
    polys = [poly for poly in polys if poly]
    active = _active_vars(polys, num_vars)
    q = T.q
    domain = q ** len(active)
    pol.check_budget(domain)
    ranges = split_range(domain, partitions)
    if workers and workers > 1 and len(ranges) > 1:
        with ThreadPoolExecutor(max_workers=workers) as ex:
            parts = list(ex.map(lambda r: _count_range(polys, active, T, *r), ranges))
    else:
        parts = [_count_range(polys, active, T, lo, hi) for lo, hi in ranges]
    return sum(parts) * q ** (num_vars - len(active))


# -- counting operations ------------------------------------------------------------

def count_affine(sys: PolySystem, field: FieldSpec, policy: Policy | None = None,
                 partitions: int = 1, workers: int | None = None) -> int:
    """Number of points of F_q^m where every polynomial of ``sys`` vanishes."""
    pol = resolve(policy)
    T = tables(field, pol)
    polys = _reduce_system(sys.polys, field.p)
    return _count_reduced(polys, sys.num_vars, T, pol, partitions, workers)


def count_projective(sys: PolySystem, field: FieldSpec, policy: Policy | None = None,
                     partitions: int = 1, workers: int | None = None) -> int:
    """Points of P^{m-1}(F_q) on a homogeneous system.

    Representatives have their first nonzero coordinate equal to 1; the
    block with leading coordinate k is an affine count in the trailing
    m - k - 1 coordinates.
    """
    for poly in sys.polys:
        if not is_homogeneous(poly):
            raise NotHomogeneous(f"polynomial {poly} is not homogeneous")
    pol = resolve(policy)
    T = tables(field, pol)
    m = sys.num_vars
    polys = _reduce_system(sys.polys, field.p)
    total = 0
    for k in range(m):
        sub = []
        for poly in polys:
            terms: dict[tuple[int, ...], int] = {}
            for c, e in poly:
                if any(e[:k]):
                    continue
                rest = (0,) * (k + 1) + e[k + 1 :]
                terms[rest] = (terms.get(rest, 0) + c) % field.p
            sub.append([(c, e) for e, c in terms.items() if c])
        if k == m - 1:
            # single point (0 : ... : 0 : 1); any surviving constant must vanish
            if all(not poly for poly in sub):
                total += 1
            continue
        total += _count_reduced(sub, m, T, pol, partitions, workers) // field.q ** (k + 1)
    return total


def _eval_univariate(f: Sequence[int], xs: np.ndarray, T: FieldTables) -> np.ndarray:
    acc = np.zeros_like(xs)
    for c in reversed(f):
        acc = T.add(T.mul(acc, xs), np.full_like(xs, T.from_int(c)))
    return acc


def count_hyperelliptic(curve: CurveSpec, field: FieldSpec, policy: Policy | None = None,
                        include_infinity: bool = True) -> int:
    """Points on the smooth projective model of y^2 = f(x) over ``field``.

    Affine part: sum over x of 1 + chi(f(x)).  At infinity: one point for
    odd deg f; for even deg f, two points if the leading coefficient is a
    square in the field, otherwise none.
    """
    if field.p != curve.p:
        raise ValueError(f"field characteristic {field.p} differs from curve prime {curve.p}")
    pol = resolve(policy)
    pol.check_budget(field.q)
    T = tables(field, pol)
    xs = np.arange(field.q, dtype=np.int64)
    chi = T.quadratic_character(_eval_univariate(curve.f, xs, T))
    affine = field.q + int(chi.sum())
    if not include_infinity:
        return affine
    if curve.degree % 2:
        return affine + 1
    return affine + (2 if T.is_square(T.from_int(curve.f[-1])) else 0)


def n_series(obj: PolySystem | CurveSpec, p: int, B: int, policy: Policy | None = None,
             base_degree: int = 1) -> PointCountSeries:
    """Counts N_1..N_B over the extensions of F_q, q = p**base_degree.

    Each term is an independent count over F_{q^n}; the counting mode
    follows the input (affine, projective, or hyperelliptic).
    """
    if B < 1:
        raise ValueError("depth B must be >= 1")
    pol = resolve(policy)
    counts = []
    for n in range(1, B + 1):
        k = build_field(p, n * base_degree, pol)
        if isinstance(obj, CurveSpec):
            counts.append(count_hyperelliptic(obj, k, pol))
        elif obj.ambient == "projective":
            counts.append(count_projective(obj, k, pol))
        else:
            counts.append(count_affine(obj, k, pol))
    q = p**base_degree
    if isinstance(obj, CurveSpec):
        return PointCountSeries(q, tuple(counts), "curve", 2)
    return PointCountSeries(q, tuple(counts), obj.ambient, obj.num_vars)


def mobius(n: int) -> int:
    fac = factorize(n)
    if any(k > 1 for k in fac.values()):
        return 0
    return -1 if len(fac) % 2 else 1


def divisors(n: int) -> list[int]:
    return [d for d in range(1, n + 1) if n % d == 0]


def closed_point_counts(series: PointCountSeries | Sequence[int]) -> list[int]:
    """Closed points of each degree d <= B, by Mobius inversion of N_n = sum_{d|n} d a_d."""
    counts = series.counts if isinstance(series, PointCountSeries) else tuple(series)
    out = []
    for d in range(1, len(counts) + 1):
        s = sum(mobius(d // e) * counts[e - 1] for e in divisors(d))
        a = Fraction(s, d)
        if a.denominator != 1 or a < 0:
            raise InconsistentCounts(f"closed-point count a_{d} = {a} is not a nonnegative integer")
        out.append(int(a))
    return out


def ambient_series(kind: str, dim: int, q: int, B: int) -> PointCountSeries:
    """Point counts of A^dim or P^dim computed by :func:`n_series` on the empty system."""
    if kind == "affine":
        sys = PolySystem(dim, (), "affine")
    elif kind == "projective":
        sys = PolySystem(dim + 1, (), "projective")
    else:
        raise ValueError(kind)
    fac = factorize(q)
    if len(fac) != 1:
        raise ValueError(f"{q} is not a prime power")
    (p, e), = fac.items()
    return n_series(sys, p, B, base_degree=e)

