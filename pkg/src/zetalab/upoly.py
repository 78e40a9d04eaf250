"""Dense univariate polynomials as coefficient lists, constant term first.

Two coefficient domains are supported: residues mod a prime ``p`` (the
``*_mod`` functions) and exact rationals/integers (the rest).  Polynomials
are plain lists or tuples; results are lists trimmed of trailing zeros,
with the zero polynomial represented as ``[]``.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Sequence


def trim(a: Sequence) -> list:
    out = list(a)
    while out and out[-1] == 0:
        out.pop()
    return out


def degree(a: Sequence) -> int:
    """Degree of ``a``; -1 for the zero polynomial."""
    return len(trim(a)) - 1


# -- arithmetic over F_p -----------------------------------------------------

def reduce_mod(a: Sequence[int], p: int) -> list[int]:
    return trim([c % p for c in a])


def mul_mod(a: Sequence[int], b: Sequence[int], p: int) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return reduce_mod(out, p)


def divmod_mod(a: Sequence[int], b: Sequence[int], p: int) -> tuple[list[int], list[int]]:
    a = reduce_mod(a, p)
    b = reduce_mod(b, p)
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    inv_lead = pow(b[-1], -1, p)
    quot = [0] * max(len(a) - len(b) + 1, 0)
    rem = a[:]
    while len(rem) >= len(b):
        shift = len(rem) - len(b)
        c = rem[-1] * inv_lead % p
        quot[shift] = c
        for i, y in enumerate(b):
            rem[shift + i] = (rem[shift + i] - c * y) % p
        rem = trim(rem)
    return trim(quot), rem


def gcd_mod(a: Sequence[int], b: Sequence[int], p: int) -> list[int]:
    """Monic gcd over F_p."""
    a = reduce_mod(a, p)
    b = reduce_mod(b, p)
    while b:
        a, b = b, divmod_mod(a, b, p)[1]
    if not a:
        return []
    inv = pow(a[-1], -1, p)
    return [c * inv % p for c in a]


def derivative(a: Sequence) -> list:
    return trim([i * c for i, c in enumerate(a)][1:])


def eval_mod(a: Sequence[int], x: int, p: int) -> int:
    acc = 0
    for c in reversed(a):
        acc = (acc * x + c) % p
    return acc


def is_squarefree_mod(f: Sequence[int], p: int) -> bool:
    """True iff gcd(f, f') = 1 over F_p (and f is nonconstant mod p)."""
    f = reduce_mod(f, p)
    if len(f) < 2:
        return False
    return len(gcd_mod(f, derivative(f), p)) == 1


# -- arithmetic over Z and Q ---------------------------------------------------

def add(a: Sequence, b: Sequence) -> list:
    n = max(len(a), len(b))
    return trim([(a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n)])


def scale(a: Sequence, c) -> list:
    return trim([c * x for x in a])


def mul(a: Sequence, b: Sequence) -> list:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return trim(out)


def mul_trunc(a: Sequence, b: Sequence, order: int) -> list:
    """Product truncated to degree < order (not trimmed)."""
    out = [0] * order
    for i, x in enumerate(a[:order]):
        if x:
            for j in range(min(len(b), order - i)):
                out[i + j] += x * b[j]
    return out


def divmod_q(a: Sequence, b: Sequence) -> tuple[list, list]:
    a = [Fraction(c) for c in trim(a)]
    b = [Fraction(c) for c in trim(b)]
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    quot = [Fraction(0)] * max(len(a) - len(b) + 1, 0)
    rem = a[:]
    while len(rem) >= len(b):
        shift = len(rem) - len(b)
        c = rem[-1] / b[-1]
        quot[shift] = c
        for i, y in enumerate(b):
            rem[shift + i] -= c * y
        rem = trim(rem)
    return trim(quot), rem


def gcd_q(a: Sequence, b: Sequence) -> list:
    """Monic gcd over Q."""
    a = [Fraction(c) for c in trim(a)]
    b = [Fraction(c) for c in trim(b)]
    while b:
        a, b = b, divmod_q(a, b)[1]
    if not a:
        return []
    lead = a[-1]
    return [c / lead for c in a]


def content(a: Sequence[int]) -> int:
    g = 0
    for c in a:
        g = gcd(g, int(c))
    return g


def integerize(a: Sequence) -> list[int] | None:
    """Exact integer coefficients of ``a`` if every entry is integral, else None."""
    out = []
    for c in a:
        c = Fraction(c)
        if c.denominator != 1:
            return None
        out.append(int(c))
    return trim(out)


def evaluate(a: Sequence, x):
    acc = 0
    for c in reversed(a):
        acc = acc * x + c
    return acc


def series_inverse(a: Sequence, order: int) -> list:
    """Power series 1/a to ``order`` terms; a[0] must be +-1 or the result is rational."""
    if not a or a[0] == 0:
        raise ZeroDivisionError("series inverse needs a nonzero constant term")
    a0 = Fraction(a[0])
    out = []
    for k in range(order):
        s = Fraction(1 if k == 0 else 0)
        for j in range(1, min(k, len(a) - 1) + 1):
            s -= a[j] * out[k - j]
        out.append(s / a0)
    return [int(c) if c.denominator == 1 else c for c in out]


def to_str(a: Sequence, var: str = "t") -> str:
    """Human-readable rendering, highest degree first."""
    parts = []
    for i in range(len(a) - 1, -1, -1):
        c = a[i]
        if c == 0:
            continue
        mono = "" if i == 0 else (var if i == 1 else f"{var}^{i}")
        mag = abs(c)
        body = str(mag) if (mag != 1 or not mono) else ""
        if body and mono:
            body += "*"
        body += mono
        sign = "-" if c < 0 else "+"
        parts.append((sign, body))
    if not parts:
        return "0"
    first_sign, first = parts[0]
    text = ("-" if first_sign == "-" else "") + first
    for sign, body in parts[1:]:
        text += f" {sign} {body}"
    return text
