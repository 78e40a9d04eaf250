"""Characters of finite fields, Gauss and Jacobi sums, diagonal equations,
and exponential sums with their square-root-cancellation bounds.

Complex values are numpy complex128.  Multiplicative characters are indexed
by an exponent k relative to the deterministic generator g of the field:
chi_k(g^j) = exp(2 pi i k j / (q - 1)) and chi_k(0) = 0.  The additive
character is psi(a) = exp(2 pi i Tr(a) / p).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import SmoothnessUnverified, ZeroCoefficient
from .ffield import FieldElement, FieldSpec, build_field, tables
from .policy import Policy, resolve
from .varieties import PolySystem, _coords, _eval_on, _reduce_system, split_range, CHUNK

TWO_PI = 2 * np.pi


@dataclass(frozen=True)
class MultChar:
    field: FieldSpec
    k: int

    def __post_init__(self):
        object.__setattr__(self, "k", self.k % (self.field.q - 1))

    @property
    def is_trivial(self) -> bool:
        return self.k == 0

    def __mul__(self, other: "MultChar") -> "MultChar":
        if other.field != self.field:
            raise ValueError("characters of different fields")
        return MultChar(self.field, self.k + other.k)

    def values(self, policy: Policy | None = None) -> np.ndarray:
        """chi(a) for every element index a (index 0 maps to 0)."""
        T = tables(self.field, policy)
        out = np.exp(1j * TWO_PI * self.k * T.log / T.order)
        out[0] = 0
        return out

    def __call__(self, a: FieldElement | int) -> complex:
        idx = a.index if isinstance(a, FieldElement) else int(a)
        return complex(self.values()[idx])


def quadratic_char(field: FieldSpec) -> MultChar:
    if (field.q - 1) % 2:
        raise ValueError("no quadratic character in characteristic 2")
    return MultChar(field, (field.q - 1) // 2)


def additive_values(field: FieldSpec, policy: Policy | None = None) -> np.ndarray:
    T = tables(field, policy)
    return np.exp(1j * TWO_PI * T.trace / field.p)


def additive_char(field: FieldSpec, a: FieldElement | int) -> complex:
    idx = a.index if isinstance(a, FieldElement) else int(a)
    return complex(additive_values(field)[idx])


def gauss_sum(chi: MultChar, policy: Policy | None = None) -> complex:
    """g(chi) = sum over a != 0 of chi(a) psi(a)."""
    vals = chi.values(policy)
    vals[0] = 0
    if chi.is_trivial:
        vals[1:] = 1
    return complex(np.sum(vals * additive_values(chi.field, policy)))


def jacobi_sum(chi1: MultChar, chi2: MultChar, policy: Policy | None = None) -> complex:
    """J(chi1, chi2) = sum over a + b = 1 of chi1(a) chi2(b), with chi(0) = 0 for every chi."""
    if chi1.field != chi2.field:
        raise ValueError("characters of different fields")
    T = tables(chi1.field, policy)
    a = np.arange(T.q, dtype=np.int64)
    b = T.sub(np.ones_like(a), a)
    return complex(np.sum(chi1.values(policy)[a] * chi2.values(policy)[b]))


def representation_counts(coeff: FieldElement, exponent: int, field: FieldSpec,
                          policy: Policy | None = None) -> np.ndarray:
    """r(u) = #{x : coeff * x^exponent = u}, indexed by element index u."""
    T = tables(field, policy)
    xs = np.arange(field.q, dtype=np.int64)
    vals = T.mul(np.full_like(xs, coeff.index), T.power(xs, exponent))
    return np.bincount(vals, minlength=field.q).astype(np.int64)


def _additive_convolve(r: np.ndarray, s: np.ndarray, T) -> np.ndarray:
    """(r * s)(w) = sum_u r(u) s(w - u) over the additive group."""
    q = T.q
    out = np.zeros(q, dtype=object if r.dtype == object else np.int64)
    idx = np.arange(q, dtype=np.int64)
    for u in np.nonzero(r)[0]:
        w = T.add(idx, np.full_like(idx, u))
        out[w] += r[u] * s
    return out


def count_diagonal(coeffs: Sequence[FieldElement | int], exponents: Sequence[int],
                   rhs: FieldElement | int, field: FieldSpec, policy: Policy | None = None) -> int:
    """Solutions of sum a_i x_i^{n_i} = rhs via representation-count convolution."""
    pol = resolve(policy)
    if len(coeffs) != len(exponents) or not coeffs:
        raise ValueError("need matching, nonempty coefficient and exponent lists")
    pol.check_budget(len(coeffs) * field.q**2)
    T = tables(field, pol)
    elems = [c if isinstance(c, FieldElement) else field.constant(c) for c in coeffs]
    for i, c in enumerate(elems):
        if c.is_zero():
            raise ZeroCoefficient(f"coefficient a_{i + 1} is zero in {field}")
    rhs_idx = rhs.index if isinstance(rhs, FieldElement) else field.constant(rhs).index
    acc = representation_counts(elems[0], exponents[0], field, pol)
    for c, e in zip(elems[1:], exponents[1:]):
        acc = _additive_convolve(acc, representation_counts(c, e, field, pol), T)
    return int(acc[rhs_idx])


def diagonal_system(coeffs: Sequence[int], exponents: Sequence[int], rhs: int = 1) -> PolySystem:
    """The same equation as a PolySystem with integer coefficients, for cross-checking."""
    m = len(coeffs)
    terms = []
    for i, (a, e) in enumerate(zip(coeffs, exponents)):
        exps = [0] * m
        exps[i] = e
        terms.append((a, tuple(exps)))
    terms.append((-rhs, (0,) * m))
    return PolySystem.from_terms(m, [terms])


# -- exponential sums -----------------------------------------------------------------

def _poly_of(f: PolySystem | Sequence) -> tuple[tuple, int]:
    if isinstance(f, PolySystem):
        if len(f.polys) != 1:
            raise ValueError("exponential sums take a single polynomial")
        return f.polys[0], f.num_vars
    terms = tuple(f)
    nv = len(terms[0][1]) if terms else 1
    return terms, nv


def exp_sum(f, p: int, n: int | None = None, policy: Policy | None = None) -> complex:
    """sum over x in F_p^n of exp(2 pi i f(x) / p).

    Accumulated in double precision, chunk by chunk in a fixed order; the
    rounding error is at most about n p^n 2^-50.
    """
    pol = resolve(policy)
    poly, nv = _poly_of(f)
    n = nv if n is None else n
    if n != nv:
        raise ValueError(f"polynomial has {nv} variables, not {n}")
    domain = p**n
    pol.check_budget(domain)
    field = build_field(p, 1, pol)
    T = tables(field, pol)
    red = _reduce_system([poly], p)[0]
    roots = np.exp(1j * TWO_PI * np.arange(p) / p)
    total = 0j
    for lo, hi in split_range(domain, max(1, domain // CHUNK)):
        cols = _coords(lo, hi, n, p)
        logs = {v: T.log[col] for v, col in enumerate(cols)}
        vals = _eval_on(red, logs, hi - lo, T)
        total += complex(np.sum(roots[vals]))
    return total


def _partials(poly, nv: int) -> list[list]:
    out = []
    for v in range(nv):
        terms = []
        for c, e in poly:
            if e[v]:
                e2 = list(e)
                e2[v] -= 1
                terms.append((c * e[v], tuple(e2)))
        out.append(terms)
    return out


def smoothness_screen(f, p: int, policy: Policy | None = None) -> bool:
    """True if no nontrivial common zero of the partials of the top-degree part
    exists over F_p or F_{p^2}.  A sufficient screen, not a proof of smoothness."""
    pol = resolve(policy)
    poly, nv = _poly_of(f)
    d = max(sum(e) for _, e in poly)
    top = [(c, e) for c, e in poly if sum(e) == d and c % p]
    for ext in (1, 2):
        field = build_field(p, ext, pol)
        T = tables(field, pol)
        parts = [[(c % p, e) for c, e in t if c % p] for t in _partials(top, nv)]
        domain = field.q**nv
        pol.check_budget(domain)
        for lo, hi in split_range(domain, max(1, domain // CHUNK)):
            cols = _coords(lo, hi, nv, field.q)
            logs = {v: T.log[col] for v, col in enumerate(cols)}
            common = np.ones(hi - lo, dtype=bool)
            for part in parts:
                common &= _eval_on(part, logs, hi - lo, T) == 0
            nontrivial = np.zeros(hi - lo, dtype=bool)
            for col in cols:
                nontrivial |= col != 0
            if np.any(common & nontrivial):
                return False
    return True


@dataclass(frozen=True)
class BoundResult:
    passed: bool
    modulus: float
    bound: float
    degree: int


def deligne_bound_check(f, p: int, n: int | None = None, policy: Policy | None = None) -> BoundResult:
    """|sum e(f(x)/p)| <= (d-1)^n p^(n/2) + 1e-6 for f of degree d < p with smooth top part."""
    poly, nv = _poly_of(f)
    n = nv if n is None else n
    d = max(sum(e) for c, e in poly if c % p) if any(c % p for c, _ in poly) else 0
    if not 1 <= d < p:
        raise ValueError(f"need 1 <= deg f < p, got deg {d} with p = {p}")
    if not smoothness_screen(f, p, policy):
        raise SmoothnessUnverified("top-degree part has a singular point over F_p or F_p^2")
    S = exp_sum(f, p, n, policy)
    bound = (d - 1) ** n * p ** (n / 2)
    return BoundResult(abs(S) <= bound + 1e-6, abs(S), bound, d)


def univariate_weil_sweep(p: int, d: int, coeff_tuples: np.ndarray | None = None) -> tuple[int, float]:
    """Check |sum_x e(f(x)/p)| <= (d-1) sqrt(p) for monic f of degree d.

    ``coeff_tuples`` holds rows (c_0, ..., c_{d-1}); by default every tuple
    mod p is used.  Returns (number of violations, largest ratio |S| / bound)
    where the ratio is taken as |S| for d = 1.
    """
    if coeff_tuples is None:
        grids = np.meshgrid(*[np.arange(p)] * d, indexing="ij")
        coeff_tuples = np.stack([g.ravel() for g in grids], axis=1)
    coeff_tuples = np.asarray(coeff_tuples, dtype=np.int64) % p
    xs = np.arange(p, dtype=np.int64)
    powers = np.stack([pow_mod_vec(xs, j, p) for j in range(d + 1)])  # (d+1, p)
    roots = np.exp(1j * TWO_PI * np.arange(p) / p)
    bound = (d - 1) * np.sqrt(p)
    violations, worst = 0, 0.0
    for lo in range(0, len(coeff_tuples), 4096):
        block = coeff_tuples[lo : lo + 4096]
        vals = (block @ powers[:d] + powers[d][None, :]) % p
        mods = np.abs(roots[vals].sum(axis=1))
        violations += int(np.count_nonzero(mods > bound + 1e-6))
        ratio = mods / bound if bound else mods
        worst = max(worst, float(ratio.max()))
    return violations, worst


def pow_mod_vec(xs: np.ndarray, e: int, p: int) -> np.ndarray:
    out = np.ones_like(xs)
    for _ in range(e):
        out = out * xs % p
    return out
