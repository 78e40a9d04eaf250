"""Text format for integer polynomials.

Grammar::

    expr   := ['+'|'-'] term (('+'|'-') term)*
    term   := factor ('*' factor)*
    factor := base ('^' uint)?
    base   := int | var | '(' expr ')'

Variables are single letters (``x``, ``y``) or indexed names (``x0`` ..
``x9``); one system may not mix the two styles.  Multiplication is always
explicit: ``2*x``, never ``2x``.
"""

from __future__ import annotations

import re
from typing import Iterable, Sequence

from .errors import MixedVariables, PolySyntaxError
from .varieties import PolySystem, make_poly

# a polynomial during parsing: {((name, exp), ...) sorted by name: coeff}
_Mono = tuple[tuple[str, int], ...]
_P = dict[_Mono, int]

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z]\d?)|(.))")


def _tokenize(text: str, line: int) -> list[tuple[str, str, int]]:
    toks = []
    pos = 0
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            break
        col = m.start(m.lastindex) + 1
        if m.group(1) is not None:
            toks.append(("int", m.group(1), col))
        elif m.group(2) is not None:
            toks.append(("var", m.group(2), col))
        else:
            ch = m.group(3)
            if ch not in "+-*^()":
                raise PolySyntaxError(f"unexpected character {ch!r}", line, col)
            toks.append((ch, ch, col))
        pos = m.end()
    toks.append(("end", "", len(text) + 1))
    return toks


def _add(a: _P, b: _P, sign: int = 1) -> _P:
    out = dict(a)
    for k, v in b.items():
        out[k] = out.get(k, 0) + sign * v
    return {k: v for k, v in out.items() if v}


def _mul(a: _P, b: _P) -> _P:
    out: _P = {}
    for ka, va in a.items():
        for kb, vb in b.items():
            exps = dict(ka)
            for name, e in kb:
                exps[name] = exps.get(name, 0) + e
            key = tuple(sorted(exps.items()))
            out[key] = out.get(key, 0) + va * vb
    return {k: v for k, v in out.items() if v}


class _Parser:
    def __init__(self, text: str, line: int):
        self.toks = _tokenize(text, line)
        self.i = 0
        self.line = line

    def peek(self):
        return self.toks[self.i]

    def take(self):
        tok = self.toks[self.i]
        self.i += 1
        return tok

    def fail(self, msg: str, tok=None):
        tok = tok or self.peek()
        raise PolySyntaxError(msg, self.line, tok[2])

    def parse(self) -> _P:
        if self.peek()[0] == "end":
            self.fail("empty expression")
        p = self.expr()
        tok = self.peek()
        if tok[0] in ("int", "var", "("):
            self.fail("implicit multiplication is not allowed; write '*'")
        if tok[0] != "end":
            self.fail(f"unexpected {tok[1]!r}")
        return p

    def expr(self) -> _P:
        sign = 1
        if self.peek()[0] in ("+", "-"):
            sign = -1 if self.take()[0] == "-" else 1
        acc = {k: sign * v for k, v in self.term().items()}
        while self.peek()[0] in ("+", "-"):
            op = self.take()[0]
            acc = _add(acc, self.term(), 1 if op == "+" else -1)
        return acc

    def term(self) -> _P:
        acc = self.factor()
        while True:
            kind = self.peek()[0]
            if kind == "*":
                self.take()
                acc = _mul(acc, self.factor())
            elif kind in ("int", "var", "("):
                self.fail("implicit multiplication is not allowed; write '*'")
            else:
                return acc

    def factor(self) -> _P:
        base = self.base()
        if self.peek()[0] == "^":
            self.take()
            tok = self.take()
            if tok[0] != "int":
                self.fail("exponent must be a nonnegative integer", tok)
            out: _P = {(): 1}
            for _ in range(int(tok[1])):
                out = _mul(out, base)
            return out
        return base

    def base(self) -> _P:
        tok = self.take()
        if tok[0] == "int":
            v = int(tok[1])
            return {(): v} if v else {}
        if tok[0] == "var":
            return {((tok[1], 1),): 1}
        if tok[0] == "(":
            inner = self.expr()
            if self.take()[0] != ")":
                self.fail("expected ')'", self.toks[self.i - 1])
            return inner
        self.fail(f"unexpected {tok[1] or 'end of input'!r}", tok)


def _var_key(name: str):
    return (name[0], int(name[1:]) if len(name) > 1 else -1)


def _check_styles(names: Iterable[str]) -> None:
    styles = {len(n) > 1 for n in names}
    if len(styles) > 1:
        raise MixedVariables(f"mixed letter and indexed variables: {sorted(names)}")


def parse_polys(lines: Sequence[str], names: Sequence[str] | None = None) -> tuple[list[_P], list[str]]:
    """Parse nonblank, non-comment lines; returns raw polynomials and the variable order."""
    polys = []
    seen: set[str] = set()
    for lineno, raw in enumerate(lines, start=1):
        text = raw.split("#", 1)[0]
        if not text.strip():
            continue
        p = _Parser(text, lineno).parse()
        polys.append(p)
        for mono in p:
            seen.update(n for n, _ in mono)
    if names is None:
        _check_styles(seen)
        names = sorted(seen, key=_var_key)
    else:
        names = list(names)
        missing = seen - set(names)
        if missing:
            raise PolySyntaxError(f"undeclared variables {sorted(missing)}")
        _check_styles(names)
    return polys, list(names)


def parse_system(lines: Sequence[str] | str, ambient: str = "affine",
                 names: Sequence[str] | None = None) -> PolySystem:
    if isinstance(lines, str):
        lines = lines.splitlines()
    polys, names = parse_polys(lines, names)
    if not names:
        names = ["x"]
    index = {n: i for i, n in enumerate(names)}
    m = len(names)
    out = []
    for p in polys:
        terms = []
        for mono, c in p.items():
            exps = [0] * m
            for n, e in mono:
                exps[index[n]] = e
            terms.append((c, tuple(exps)))
        poly = make_poly(terms, m)
        if not poly:
            raise PolySyntaxError("polynomial is identically zero")
        out.append(poly)
    return PolySystem(m, tuple(out), ambient, tuple(names))


def parse_univariate(text: str, var: str = "x") -> list[int]:
    """Coefficient list (constant first) of a polynomial in one variable."""
    polys, names = parse_polys([text])
    if not polys:
        raise PolySyntaxError("empty expression")
    if set(names) - {var}:
        raise PolySyntaxError(f"expected a polynomial in {var} only, got variables {names}")
    p = polys[0]
    deg = max((e for mono in p for _, e in mono), default=0)
    coeffs = [0] * (deg + 1)
    for mono, c in p.items():
        coeffs[mono[0][1] if mono else 0] += c
    return coeffs


def format_poly(poly, names: Sequence[str]) -> str:
    """Canonical text for a polynomial; parses back to the same terms."""
    parts = []
    for c, exps in poly:
        factors = []
        for name, e in zip(names, exps):
            if e == 1:
                factors.append(name)
            elif e > 1:
                factors.append(f"{name}^{e}")
        mag = abs(c)
        if mag != 1 or not factors:
            factors.insert(0, str(mag))
        parts.append(("-" if c < 0 else "+", "*".join(factors)))
    if not parts:
        return "0"
    text = ("-" if parts[0][0] == "-" else "") + parts[0][1]
    for sign, body in parts[1:]:
        text += f" {sign} {body}"
    return text


def format_system(sys: PolySystem) -> list[str]:
    names = sys.names or tuple(f"x{i}" for i in range(sys.num_vars))
    return [format_poly(p, names) for p in sys.polys]
