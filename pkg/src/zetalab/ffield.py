"""Exact arithmetic in F_p and F_{p^n}.

Elements are fixed-length coefficient vectors over F_p in the polynomial
basis 1, x, ..., x^{n-1} modulo a monic irreducible.  Every element also
has an integer *index*: its coefficient vector read as a base-p number with
the constant term least significant.  Index order is the enumeration order.

The vectorized counting kernels elsewhere in the package work on numpy
arrays of indices through :class:`FieldTables` (log/antilog tables built on
the deterministic generator).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from math import isqrt
from typing import Iterator, Sequence

import numpy as np

from . import upoly
from .errors import CompositeModulus, DivisionByZero, EvenPrime, SizeExceeded
from .policy import Policy, resolve


def is_prime(n: int) -> bool:
    """Deterministic trial division; fine up to the 2^31 policy bound."""
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0 or n % 3 == 0:
        return False
    i = 5
    while i * i <= n:
        if n % i == 0 or n % (i + 2) == 0:
            return False
        i += 6
    return True


def factorize(n: int) -> dict[int, int]:
    out: dict[int, int] = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def primes_up_to(n: int) -> list[int]:
    if n < 2:
        return []
    sieve = bytearray([1]) * (n + 1)
    sieve[0:2] = b"\x00\x00"
    for i in range(2, isqrt(n) + 1):
        if sieve[i]:
            sieve[i * i :: i] = bytearray(len(sieve[i * i :: i]))
    return [i for i in range(n + 1) if sieve[i]]


def _digits(k: int, p: int, n: int) -> tuple[int, ...]:
    out = []
    for _ in range(n):
        k, r = divmod(k, p)
        out.append(r)
    return tuple(out)


def is_irreducible(poly: Sequence[int], p: int) -> bool:
    """Irreducibility over F_p by exhaustive trial division.

    Checks for roots, then divides by every monic polynomial of degree
    2..deg/2.  Exponential in the degree; intended for desk-scale fields.
    """
    f = upoly.reduce_mod(poly, p)
    n = len(f) - 1
    if n < 1:
        return False
    if n == 1:
        return True
    if any(upoly.eval_mod(f, x, p) == 0 for x in range(p)):
        return False
    for d in range(2, n // 2 + 1):
        for k in range(p**d):
            g = list(_digits(k, p, d)) + [1]
            if not upoly.divmod_mod(f, g, p)[1]:
                return False
    return True


@dataclass(frozen=True)
class FieldSpec:
    p: int
    n: int
    modulus: tuple[int, ...]

    @property
    def q(self) -> int:
        return self.p**self.n

    def element(self, value: int | Sequence[int]) -> "FieldElement":
        """Element from an index (int) or a coefficient vector."""
        if isinstance(value, (int, np.integer)):
            return FieldElement(self, _digits(int(value), self.p, self.n))
        coeffs = [c % self.p for c in value]
        if len(coeffs) > self.n:
            raise ValueError(f"expected at most {self.n} coefficients")
        return FieldElement(self, tuple(coeffs + [0] * (self.n - len(coeffs))))

    def constant(self, c: int) -> "FieldElement":
        return self.element([c % self.p])

    @property
    def zero(self) -> "FieldElement":
        return self.element(0)

    @property
    def one(self) -> "FieldElement":
        return self.element(1)

    def __str__(self) -> str:
        if self.n == 1:
            return f"F_{self.p}"
        return f"F_{self.p}^{self.n} = F_{self.p}[x]/({upoly.to_str(self.modulus, 'x')})"


def _mulmod_coeffs(a: Sequence[int], b: Sequence[int], spec: FieldSpec) -> tuple[int, ...]:
    p, n, mod = spec.p, spec.n, spec.modulus
    prod = [0] * (2 * n - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                prod[i + j] += x * y
    for k in range(2 * n - 2, n - 1, -1):
        c = prod[k] % p
        if c:
            for i in range(n):
                prod[k - n + i] -= c * mod[i]
    return tuple(c % p for c in prod[:n])


@dataclass(frozen=True)
class FieldElement:
    spec: FieldSpec = field(repr=False)
    coeffs: tuple[int, ...]

    @property
    def index(self) -> int:
        k = 0
        for c in reversed(self.coeffs):
            k = k * self.spec.p + c
        return k

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def _coerce(self, other) -> "FieldElement":
        if isinstance(other, FieldElement):
            if other.spec != self.spec:
                raise ValueError("elements of different fields")
            return other
        return self.spec.constant(int(other))

    def __add__(self, other):
        o = self._coerce(other)
        p = self.spec.p
        return FieldElement(self.spec, tuple((x + y) % p for x, y in zip(self.coeffs, o.coeffs)))

    __radd__ = __add__

    def __neg__(self):
        p = self.spec.p
        return FieldElement(self.spec, tuple(-x % p for x in self.coeffs))

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        o = self._coerce(other)
        return FieldElement(self.spec, _mulmod_coeffs(self.coeffs, o.coeffs, self.spec))

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        result, base = self.spec.one, self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def inverse(self) -> "FieldElement":
        if self.is_zero():
            raise DivisionByZero("inverse of zero")
        return self ** (self.spec.q - 2)

    def __truediv__(self, other):
        return self * self._coerce(other).inverse()

    def __str__(self) -> str:
        return upoly.to_str(upoly.trim(self.coeffs), "x") if self.spec.n > 1 else str(self.coeffs[0])


# -- operations ----------------------------------------------------------------

def build_field(p: int, n: int = 1, policy: Policy | None = None) -> FieldSpec:
    """F_{p^n} with the lexicographically smallest monic irreducible modulus."""
    pol = resolve(policy)
    if n < 1:
        raise ValueError("extension degree must be >= 1")
    if p > pol.max_prime:
        raise SizeExceeded(f"prime {p} exceeds policy bound {pol.max_prime}")
    if not is_prime(p):
        raise CompositeModulus(f"{p} is not prime")
    if n > 1:
        pol.check_field(p**n)
    return _build_field(p, n)


@lru_cache(maxsize=None)
def _build_field(p: int, n: int) -> FieldSpec:
    for k in range(p**n):
        cand = list(_digits(k, p, n)) + [1]
        if is_irreducible(cand, p):
            return FieldSpec(p, n, tuple(cand))
    raise AssertionError("an irreducible polynomial of every degree exists")


def field_arith(spec: FieldSpec, a: FieldElement, b: FieldElement | int, op: str) -> FieldElement:
    """Apply ``op`` in {add, sub, mul, div, pow}; for pow, ``b`` is the integer exponent."""
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    if op == "pow":
        return a ** int(b)
    raise ValueError(f"unknown op {op!r}")


def enumerate_field(spec: FieldSpec, policy: Policy | None = None) -> Iterator[FieldElement]:
    resolve(policy).check_field(spec.q)
    for k in range(spec.q):
        yield spec.element(k)


def frobenius(spec: FieldSpec, a: FieldElement) -> FieldElement:
    return a ** spec.p


def generator(spec: FieldSpec) -> FieldElement:
    """Enumeration-least element of multiplicative order q - 1."""
    return spec.element(_generator_index(spec))


@lru_cache(maxsize=None)
def _generator_index(spec: FieldSpec) -> int:
    order = spec.q - 1
    cofactors = [order // ell for ell in factorize(order)]
    one = spec.one
    for k in range(1, spec.q):
        g = spec.element(k)
        if all(g**c != one for c in cofactors):
            return k
    raise AssertionError("the multiplicative group of a finite field is cyclic")


def legendre(a: int, p: int) -> int:
    if p == 2:
        raise EvenPrime("the Legendre symbol needs an odd prime")
    r = pow(a % p, (p - 1) // 2, p)
    return -1 if r == p - 1 else r


# -- vectorized tables ---------------------------------------------------------

def _mul_matrix(c: FieldElement) -> np.ndarray:
    """Matrix M with digits(a * c) = digits(a) @ M (mod p)."""
    spec = c.spec
    rows = []
    basis = spec.one
    x = spec.element([0, 1]) if spec.n > 1 else spec.one
    for _ in range(spec.n):
        rows.append((basis * c).coeffs)
        basis = basis * x
    return np.array(rows, dtype=np.int64)


class FieldTables:
    """Log/antilog and digit tables for vectorized arithmetic on index arrays.

    ``log[0]`` is -1; all other logs are taken to the base of
    :func:`generator`.  Arrays are int64 throughout.
    """

    def __init__(self, spec: FieldSpec):
        self.spec = spec
        p, n, q = spec.p, spec.n, spec.q
        self.p, self.n, self.q = p, n, q
        self.order = q - 1
        self.place = p ** np.arange(n, dtype=np.int64)
        idx = np.arange(q, dtype=np.int64)
        # int16 is enough: n > 1 and q <= 2^20 force p <= 1024
        self.digits = ((idx[:, None] // self.place[None, :]) % p).astype(np.int16) if n > 1 else None

        g = generator(spec)
        block = max(1024, isqrt(q) + 1)
        block = min(block, self.order)
        first = [spec.one]
        for _ in range(block - 1):
            first.append(first[-1] * g)
        first_digits = np.array([e.coeffs for e in first], dtype=np.int64)
        step = _mul_matrix(g**block)
        chunks = [first_digits]
        total = block
        cur = first_digits
        while total < self.order:
            cur = (cur @ step) % p
            chunks.append(cur)
            total += block
        exp_digits = np.concatenate(chunks)[: self.order]
        self.exp = exp_digits @ self.place
        self.log = np.full(q, -1, dtype=np.int64)
        self.log[self.exp] = np.arange(self.order, dtype=np.int64)
        if np.any(self.log[1:] < 0):
            raise AssertionError("generator table is not a bijection")
        self._trace = None

    # index-array arithmetic
    def add(self, a, b):
        if self.n == 1:
            return (a + b) % self.p
        s = self.digits[a] + self.digits[b]
        return (s % self.p).astype(np.int64) @ self.place

    def neg(self, a):
        if self.n == 1:
            return (-a) % self.p
        return ((-self.digits[a]) % self.p).astype(np.int64) @ self.place

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def mul(self, a, b):
        a = np.asarray(a)
        b = np.asarray(b)
        la, lb = self.log[a], self.log[b]
        out = self.exp[(la + lb) % self.order]
        return np.where((la < 0) | (lb < 0), 0, out)

    def power(self, a, e: int):
        """a**e elementwise with 0**0 = 1."""
        a = np.asarray(a)
        if e == 0:
            return np.ones_like(a)
        la = self.log[a]
        out = self.exp[(la * e) % self.order]
        return np.where(la < 0, 0, out)

    def from_int(self, c: int) -> int:
        """Index of the image of an integer in the prime subfield."""
        return c % self.p

    def quadratic_character(self, a):
        """chi(a) in {-1, 0, 1} for odd q."""
        if self.p == 2:
            raise EvenPrime("the quadratic character needs odd characteristic")
        la = self.log[np.asarray(a)]
        return np.where(la < 0, 0, np.where(la % 2 == 0, 1, -1))

    def is_square(self, a: int) -> bool:
        la = self.log[a]
        return la <= 0 or self.p == 2 or la % 2 == 0

    @property
    def trace(self) -> np.ndarray:
        """Absolute trace to F_p of every element, as an integer in [0, p)."""
        if self._trace is None:
            idx = np.arange(self.q, dtype=np.int64)
            acc = idx.copy()
            cur = idx
            for _ in range(self.n - 1):
                cur = self.power(cur, self.p)
                acc = self.add(acc, cur)
            if np.any(acc >= self.p):
                raise AssertionError("trace left the prime field")
            self._trace = acc
        return self._trace


@lru_cache(maxsize=32)
def _tables(spec: FieldSpec) -> FieldTables:
    return FieldTables(spec)


def tables(spec: FieldSpec, policy: Policy | None = None) -> FieldTables:
    resolve(policy).check_field(spec.q)
    return _tables(spec)
