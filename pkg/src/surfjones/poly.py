"""Exact Laurent polynomials in one graded variable and the homological variable z.

Two concrete types share one implementation:

* :class:`BracketPoly` -- variable ``A`` with integer exponents.
* :class:`TPoly` -- variable ``t`` stored in quarter units, so ``t^(1/2)`` is
  the key ``2``.  Renderable only when every quarter exponent is even.

Terms are kept in a dict ``{(exponent, zdeg): coeff}`` with no zero
coefficients.  Coefficients are Python ints.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Iterator, Mapping

Key = tuple[int, int]


class _Laurent:
    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[Key, int] | None = None) -> None:
        clean: dict[Key, int] = {}
        if terms:
            for (e, zd), c in terms.items():
                if zd < 0:
                    raise ValueError("negative z-degree")
                if c:
                    clean[(int(e), int(zd))] = int(c)
        self._terms = clean
        self._hash: int | None = None

    # construction helpers
    @classmethod
    def zero(cls):
        return cls()

    @classmethod
    def one(cls):
        return cls({(0, 0): 1})

    @classmethod
    def monomial(cls, coeff: int = 1, exp: int = 0, zdeg: int = 0):
        return cls({(exp, zdeg): coeff})

    # container protocol
    @property
    def terms(self) -> dict[Key, int]:
        return dict(self._terms)

    def items(self) -> Iterator[tuple[Key, int]]:
        """Terms in canonical order: z-degree ascending, then exponent."""
        for key in sorted(self._terms, key=lambda k: (k[1], k[0])):
            yield key, self._terms[key]

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, int):
            other = type(self).monomial(other) if other else type(self)()
        if type(other) is not type(self):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((type(self).__name__, frozenset(self._terms.items())))
        return self._hash

    def __repr__(self) -> str:
        body = ", ".join(f"{k}: {c}" for k, c in self.items())
        return f"{type(self).__name__}({{{body}}})"

    # ring operations
    def _coerce(self, other):
        if isinstance(other, int):
            return type(self).monomial(other) if other else type(self)()
        if type(other) is not type(self):
            return NotImplemented
        return other

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self._terms)
        for k, c in other._terms.items():
            out[k] = out.get(k, 0) + c
        return type(self)(out)

    __radd__ = __add__

    def __neg__(self):
        return type(self)({k: -c for k, c in self._terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out: dict[Key, int] = {}
        for (e1, z1), c1 in self._terms.items():
            for (e2, z2), c2 in other._terms.items():
                k = (e1 + e2, z1 + z2)
                out[k] = out.get(k, 0) + c1 * c2
        return type(self)(out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power")
        result = type(self).one()
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def mul_monomial(self, coeff: int = 1, exp: int = 0, zdeg: int = 0):
        return type(self)(
            {(e + exp, z + zdeg): c * coeff for (e, z), c in self._terms.items()}
        )

    def z_part(self, i: int):
        """Coefficient of ``z^i`` as a polynomial of z-degree 0."""
        return type(self)({(e, 0): c for (e, z), c in self._terms.items() if z == i})

    def z_degrees(self) -> list[int]:
        return sorted({z for _, z in self._terms})

    def max_exp(self) -> int:
        if not self._terms:
            raise ValueError("degree of the zero polynomial")
        return max(e for e, _ in self._terms)

    def min_exp(self) -> int:
        if not self._terms:
            raise ValueError("degree of the zero polynomial")
        return min(e for e, _ in self._terms)


class BracketPoly(_Laurent):
    """Polynomial in ``A`` (integer exponents) and ``z``."""

    __slots__ = ()

    @classmethod
    def loop(cls) -> "BracketPoly":
        """The trivial-circle value ``-A^2 - A^-2``."""
        return cls({(2, 0): -1, (-2, 0): -1})

    def mul_loop_power(self, k: int) -> "BracketPoly":
        if k < 0:
            raise ValueError("loop power must be non-negative")
        return self * BracketPoly.loop() ** k

    def dmax(self) -> int:
        return self.max_exp()

    def dmin(self) -> int:
        return self.min_exp()

    def span(self) -> int:
        return self.dmax() - self.dmin()

    def normalize_writhe(self, w: int) -> "BracketPoly":
        """Multiply by ``(-A)^(-3w)``."""
        return self.mul_monomial(-1 if w % 2 else 1, -3 * w)

    def to_t(self) -> "TPoly":
        """Substitute ``A = t^(-1/4)``."""
        return TPoly({(-e, z): c for (e, z), c in self._terms.items()})

    def render(self) -> str:
        return _render(self, _fmt_A)

    @classmethod
    def parse(cls, text: str) -> "BracketPoly":
        terms = {}
        for (e, z), c in parse_expression(text, "A").items():
            if e.denominator != 1:
                raise ValueError(f"non-integer A exponent {e}")
            terms[(int(e), z)] = c
        return cls(terms)


class TPoly(_Laurent):
    """Polynomial in ``t`` (quarter-unit exponents) and ``z``."""

    __slots__ = ()

    @classmethod
    def loop(cls) -> "TPoly":
        """``-t^(-1/2) - t^(1/2)``."""
        return cls({(-2, 0): -1, (2, 0): -1})

    def invert_t(self) -> "TPoly":
        return TPoly({(-e, z): c for (e, z), c in self._terms.items()})

    def substitute_z_loop(self) -> "TPoly":
        """Replace ``z`` by ``-t^(-1/2) - t^(1/2)``."""
        out = TPoly()
        loop = TPoly.loop()
        powers = {0: TPoly.one()}
        for (e, z), c in self._terms.items():
            if z not in powers:
                powers[z] = loop ** z
            out = out + powers[z].mul_monomial(c, e)
        return out

    def divide_by_loop(self) -> "TPoly":
        """Exact division by ``-t^(-1/2) - t^(1/2)``; raises if inexact."""
        result: dict[Key, int] = {}
        for zd in self.z_degrees():
            part = {e: c for (e, z), c in self._terms.items() if z == zd}
            # -u^-2 (1 + u^4) with u = t^(1/4): divide by (1 + u^4) from the top
            quotient: dict[int, int] = {}
            lo = min(part)
            while part:
                top = max(part)
                q = top - 4
                if q < lo:
                    raise ArithmeticError("polynomial is not divisible by the loop value")
                c = part.pop(top)
                quotient[q] = quotient.get(q, 0) + c
                part[q] = part.get(q, 0) - c
                if part[q] == 0:
                    del part[q]
            for q, c in quotient.items():
                if c:
                    # undo the -u^-2 factor
                    result[(q + 2, zd)] = -c
        out = TPoly(result)
        if out * TPoly.loop() != self:
            raise ArithmeticError("polynomial is not divisible by the loop value")
        return out

    def is_half_integral(self) -> bool:
        return all(e % 2 == 0 for e, _ in self._terms)

    def exponents(self, zdeg: int | None = None) -> list[Fraction]:
        return sorted(
            Fraction(e, 4) for e, z in self._terms if zdeg is None or z == zdeg
        )

    def render(self) -> str:
        if not self.is_half_integral():
            raise ValueError(f"quarter-integral t exponent in {self!r}")
        return _render(self, _fmt_t)

    def latex(self) -> str:
        if not self.is_half_integral():
            raise ValueError(f"quarter-integral t exponent in {self!r}")
        return _render_latex(self)

    @classmethod
    def parse(cls, text: str) -> "TPoly":
        terms = {}
        for (e, z), c in parse_expression(text, "t").items():
            q = e * 4
            if q.denominator != 1:
                raise ValueError(f"t exponent {e} is not a multiple of 1/4")
            terms[(int(q), z)] = c
        return cls(terms)


# ---------------------------------------------------------------- rendering

def _fmt_A(e: int) -> str:
    if e == 0:
        return ""
    if e == 1:
        return "A"
    return f"A^{e}" if e > 0 else f"A^({e})"


def _fmt_t(q: int) -> str:
    e = Fraction(q, 4)
    if e == 0:
        return ""
    if e == 1:
        return "t"
    if e.denominator == 1 and e > 0:
        return f"t^{e.numerator}"
    return f"t^({e})"


def _term(c: int, mono: str) -> str:
    if not mono:
        return str(c)
    if c == 1:
        return mono
    if c == -1:
        return "-" + mono
    return f"{c}*{mono}"


def _join(parts: list[str]) -> str:
    out = parts[0]
    for p in parts[1:]:
        out += p if p.startswith("-") else "+" + p
    return out


def _render(p: _Laurent, fmt) -> str:
    if not p:
        return "0"
    groups = []
    for zd in p.z_degrees():
        terms = [_term(c, fmt(e)) for (e, z), c in p.items() if z == zd]
        if zd == 0:
            groups.append(_join(terms))
            continue
        zs = "z" if zd == 1 else f"z^{zd}"
        if len(terms) > 1:
            groups.append(f"({_join(terms)})*{zs}")
        elif terms[0] == "1":
            groups.append(zs)
        elif terms[0] == "-1":
            groups.append("-" + zs)
        else:
            groups.append(f"{terms[0]}*{zs}")
    return _join(groups)


def _latex_mono(q: int) -> str:
    e = Fraction(q, 4)
    if e == 0:
        return ""
    if e == 1:
        return "t"
    if e.denominator == 1 and 0 < e < 10:
        return f"t^{e.numerator}"
    return "t^{" + str(e) + "}"


def _render_latex(p: TPoly) -> str:
    if not p:
        return "0"
    groups = []
    for zd in p.z_degrees():
        terms = []
        for (e, z), c in p.items():
            if z != zd:
                continue
            mono = _latex_mono(e)
            if not mono:
                terms.append(str(c))
            elif abs(c) == 1:
                terms.append(("-" if c < 0 else "") + mono)
            else:
                terms.append(f"{c}{mono}")
        body = _join(terms)
        zs = "" if zd == 0 else ("z" if zd == 1 else f"z^{zd}")
        if zd == 0:
            groups.append(f"({body})" if len(terms) > 1 and len(p.z_degrees()) > 1 else body)
        elif len(terms) > 1:
            groups.append(f"({body}){zs}")
        elif body in ("1", "-1"):
            groups.append(body[:-1] + zs)
        else:
            groups.append(body + zs)
    out = groups[0]
    for g in groups[1:]:
        out += " - " + g[1:] if g.startswith("-") else " + " + g
    return out


# ---------------------------------------------------------------- parsing

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z])|(\*\*|[-+*^()/]))")


def parse_expression(text: str, var: str) -> dict[tuple[Fraction, int], int]:
    """Parse a polynomial expression in ``var`` and ``z``.

    Grammar: sums/differences of products; factors are integers, ``var``,
    ``z``, or parenthesised expressions, each optionally raised to an
    exponent ``^k``, ``^(p/q)`` or ``^(-k)``.  ``**`` is accepted for ``^``.
    Fractional exponents are only allowed on ``var``.
    """
    tokens = []
    pos = 0
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ValueError(f"unexpected character at {pos}: {text[pos:pos + 10]!r}")
        num, name, op = m.groups()
        if num is not None:
            tokens.append(("num", int(num)))
        elif name is not None:
            if name not in (var, "z"):
                raise ValueError(f"unknown variable {name!r} at {pos}")
            tokens.append(("var", name))
        else:
            tokens.append(("op", "^" if op == "**" else op))
        pos = m.end()
    parser = _Parser(tokens, var)
    result = parser.expr()
    if parser.i != len(tokens):
        raise ValueError(f"trailing input in {text!r}")
    return result


class _Parser:
    def __init__(self, tokens, var):
        self.toks = tokens
        self.i = 0
        self.var = var

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else (None, None)

    def take(self, kind=None, value=None):
        tok = self.peek()
        if tok[0] is None or (kind and tok[0] != kind) or (value and tok[1] != value):
            raise ValueError(f"parse error at token {self.i}: {tok}")
        self.i += 1
        return tok

    def expr(self):
        sign = 1
        if self.peek() == ("op", "-"):
            self.take()
            sign = -1
        elif self.peek() == ("op", "+"):
            self.take()
        acc = _scale(self.product(), sign)
        while self.peek() in (("op", "+"), ("op", "-")):
            s = 1 if self.take()[1] == "+" else -1
            acc = _add(acc, _scale(self.product(), s))
        return acc

    def product(self):
        acc = self.power()
        while True:
            nxt = self.peek()
            if nxt == ("op", "*"):
                self.take()
                acc = _mul(acc, self.power())
            elif nxt[0] in ("num", "var") or nxt == ("op", "("):
                acc = _mul(acc, self.power())  # implicit product
            else:
                return acc

    def exponent(self) -> Fraction:
        if self.peek() == ("op", "("):
            self.take()
            sign = 1
            if self.peek() == ("op", "-"):
                self.take()
                sign = -1
            num = self.take("num")[1]
            den = 1
            if self.peek() == ("op", "/"):
                self.take()
                den = self.take("num")[1]
            self.take("op", ")")
            return Fraction(sign * num, den)
        if self.peek() == ("op", "-"):
            self.take()
            return -Fraction(self.take("num")[1])
        return Fraction(self.take("num")[1])

    def power(self):
        kind, val = self.peek()
        if kind == "num":
            self.take()
            base = {(Fraction(0), 0): val}
            atom = None
        elif kind == "var":
            self.take()
            atom = val
            base = None
        elif (kind, val) == ("op", "("):
            self.take()
            base = self.expr()
            self.take("op", ")")
            atom = None
        else:
            raise ValueError(f"parse error at token {self.i}: {(kind, val)}")
        exp = Fraction(1)
        if self.peek() == ("op", "^"):
            self.take()
            exp = self.exponent()
        if atom == self.var:
            return {(exp, 0): 1}
        if atom == "z":
            if exp.denominator != 1 or exp < 0:
                raise ValueError("z exponents must be non-negative integers")
            return {(Fraction(0), int(exp)): 1}
        if exp.denominator != 1 or exp < 0:
            raise ValueError("only monomials may carry fractional or negative exponents")
        out = {(Fraction(0), 0): 1}
        for _ in range(int(exp)):
            out = _mul(out, base)
        return out


def _scale(p, s):
    return {k: s * c for k, c in p.items()}


def _add(p, q):
    out = dict(p)
    for k, c in q.items():
        out[k] = out.get(k, 0) + c
        if out[k] == 0:
            del out[k]
    return out


def _mul(p, q):
    out: dict = {}
    for (e1, z1), c1 in p.items():
        for (e2, z2), c2 in q.items():
            k = (e1 + e2, z1 + z2)
            out[k] = out.get(k, 0) + c1 * c2
    return {k: c for k, c in out.items() if c}
