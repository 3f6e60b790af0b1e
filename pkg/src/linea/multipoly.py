"""Multivariate polynomials over Q in variables x0..xn.

Monomials are exponent tuples.  A :class:`Polynomial` is an immutable map
monomial -> nonzero ``mpq`` together with the number of variables and a
monomial order; terms are listed in descending order under that order.
"""

from __future__ import annotations

import re
from functools import lru_cache
from itertools import combinations_with_replacement
from math import comb
from typing import Dict, List, Sequence, Tuple

import gmpy2

mpq = gmpy2.mpq
Monomial = Tuple[int, ...]


# -- monomial orders ---------------------------------------------------------

def _grevlex_key(e: Sequence[int]):
    return (sum(e), tuple(-x for x in reversed(e)))


class MonomialOrder:
    """A term order given by a sort key.

    ``grevlex`` and ``lex`` use x0 > x1 > ... > xn.  ``elim(k)`` is the block
    order that compares the first ``k`` variables by grevlex first and breaks
    ties with grevlex on the rest, so the leading block is eliminated.
    """

    def __init__(self, kind: str, block: int = 0):
        if kind not in ("grevlex", "lex", "elim"):
            raise ValueError(f"unknown monomial order {kind!r}")
        if kind == "elim" and block < 1:
            raise ValueError("elimination order needs a block of size >= 1")
        self.kind = kind
        self.block = block if kind == "elim" else 0
        self._cache: Dict[Monomial, object] = {}

    def key(self, e: Monomial):
        k = self._cache.get(e)
        if k is None:
            if self.kind == "grevlex":
                k = _grevlex_key(e)
            elif self.kind == "lex":
                k = e
            else:
                b = self.block
                k = (_grevlex_key(e[:b]), _grevlex_key(e[b:]))
            if len(self._cache) < 2_000_000:
                self._cache[e] = k
        return k

    def __eq__(self, other):
        return (isinstance(other, MonomialOrder)
                and (self.kind, self.block) == (other.kind, other.block))

    def __hash__(self):
        return hash((self.kind, self.block))

    def __repr__(self):
        return f"MonomialOrder({self.kind!r}{', %d' % self.block if self.block else ''})"


GREVLEX = MonomialOrder("grevlex")
LEX = MonomialOrder("lex")


def elim(k: int) -> MonomialOrder:
    return _elim_cached(k)


@lru_cache(maxsize=None)
def _elim_cached(k: int) -> MonomialOrder:
    return MonomialOrder("elim", k)


# -- monomials ---------------------------------------------------------------

@lru_cache(maxsize=None)
def _monomials_of_degree(nvars: int, d: int) -> Tuple[Monomial, ...]:
    out = []
    for combo in combinations_with_replacement(range(nvars), d):
        e = [0] * nvars
        for i in combo:
            e[i] += 1
        out.append(tuple(e))
    return tuple(out)


def monomials_of_degree(n: int, d: int, order: MonomialOrder = GREVLEX) -> List[Monomial]:
    """All monomials of degree ``d`` in x0..xn, descending under ``order``."""
    if d < 0:
        raise ValueError("degree must be nonnegative")
    mons = list(_monomials_of_degree(n + 1, d))
    mons.sort(key=order.key, reverse=True)
    assert len(mons) == comb(n + d, d)
    return mons


def mono_mul(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x + y for x, y in zip(a, b))


def mono_divides(a: Monomial, b: Monomial) -> bool:
    return all(x <= y for x, y in zip(a, b))


def mono_div(b: Monomial, a: Monomial) -> Monomial:
    return tuple(y - x for x, y in zip(a, b))


def mono_lcm(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x if x > y else y for x, y in zip(a, b))


def unit(nvars: int, i: int) -> Monomial:
    e = [0] * nvars
    e[i] = 1
    return tuple(e)


# -- polynomials -------------------------------------------------------------

class Polynomial:
    __slots__ = ("nvars", "terms", "order", "_lm")

    def __init__(self, terms: Dict[Monomial, object], nvars: int,
                 order: MonomialOrder = GREVLEX, _clean: bool = False):
        if _clean:
            self.terms = terms
        else:
            self.terms = {}
            for m, c in terms.items():
                if len(m) != nvars:
                    raise ValueError(f"monomial {m} does not live in {nvars} variables")
                c = mpq(c)
                if c:
                    self.terms[tuple(m)] = c
        self.nvars = nvars
        self.order = order
        self._lm = None

    # constructors
    @classmethod
    def zero(cls, nvars: int, order: MonomialOrder = GREVLEX) -> "Polynomial":
        return cls({}, nvars, order, _clean=True)

    @classmethod
    def constant(cls, c, nvars: int, order: MonomialOrder = GREVLEX) -> "Polynomial":
        return cls({(0,) * nvars: c}, nvars, order)

    @classmethod
    def var(cls, i: int, nvars: int, order: MonomialOrder = GREVLEX) -> "Polynomial":
        return cls({unit(nvars, i): mpq(1)}, nvars, order, _clean=True)

    @classmethod
    def linear(cls, coeffs: Sequence, order: MonomialOrder = GREVLEX) -> "Polynomial":
        """The linear form sum coeffs[i] * x_i."""
        nv = len(coeffs)
        return cls({unit(nv, i): c for i, c in enumerate(coeffs)}, nv, order)

    # basic protocol
    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.nvars == other.nvars and self.terms == other.terms
        if other == 0:
            return not self.terms
        return NotImplemented

    def __hash__(self):
        return hash((self.nvars, frozenset(self.terms.items())))

    def __repr__(self):
        return f"Polynomial({format_polynomial(self)!r})"

    def __str__(self):
        return format_polynomial(self)

    def with_order(self, order: MonomialOrder) -> "Polynomial":
        return Polynomial(self.terms, self.nvars, order, _clean=True)

    def sorted_terms(self) -> List[Tuple[Monomial, object]]:
        key = self.order.key
        return sorted(self.terms.items(), key=lambda mc: key(mc[0]), reverse=True)

    @property
    def leading_monomial(self) -> Monomial:
        if self._lm is None:
            if not self.terms:
                raise ValueError("zero polynomial has no leading term")
            self._lm = max(self.terms, key=self.order.key)
        return self._lm

    def leading_term(self) -> Tuple[Monomial, object]:
        m = self.leading_monomial
        return m, self.terms[m]

    @property
    def leading_coefficient(self):
        return self.terms[self.leading_monomial]

    def degree(self) -> int:
        return max((sum(m) for m in self.terms), default=-1)

    def is_homogeneous(self) -> bool:
        return len({sum(m) for m in self.terms}) <= 1

    def is_linear_form(self) -> bool:
        return bool(self.terms) and all(sum(m) == 1 for m in self.terms)

    def coefficient_vector(self) -> list:
        """Coefficients of a linear form, indexed by variable."""
        v = [mpq(0)] * self.nvars
        for m, c in self.terms.items():
            if sum(m) != 1:
                raise ValueError("not a linear form")
            v[m.index(1)] = c
        return v

    # arithmetic
    def _check(self, other: "Polynomial"):
        if self.nvars != other.nvars:
            raise ValueError("polynomials live in different rings")

    def __add__(self, other):
        if not isinstance(other, Polynomial):
            other = Polynomial.constant(other, self.nvars, self.order)
        self._check(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            v = out.get(m, 0) + c
            if v:
                out[m] = v
            else:
                out.pop(m, None)
        return Polynomial(out, self.nvars, self.order, _clean=True)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial({m: -c for m, c in self.terms.items()}, self.nvars, self.order, _clean=True)

    def __sub__(self, other):
        if not isinstance(other, Polynomial):
            other = Polynomial.constant(other, self.nvars, self.order)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c) -> "Polynomial":
        c = mpq(c)
        if not c:
            return Polynomial.zero(self.nvars, self.order)
        return Polynomial({m: c * v for m, v in self.terms.items()}, self.nvars, self.order, _clean=True)

    def mul_monomial(self, mono: Monomial, c=1) -> "Polynomial":
        c = mpq(c)
        return Polynomial({mono_mul(m, mono): c * v for m, v in self.terms.items()},
                          self.nvars, self.order, _clean=True)

    def __mul__(self, other):
        if not isinstance(other, Polynomial):
            return self.scale(other)
        self._check(other)
        out: Dict[Monomial, object] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = mono_mul(m1, m2)
                v = out.get(m, 0) + c1 * c2
                if v:
                    out[m] = v
                else:
                    out.pop(m, None)
        return Polynomial(out, self.nvars, self.order, _clean=True)

    def __rmul__(self, other):
        return self.scale(other)

    def __pow__(self, k: int):
        out = Polynomial.constant(1, self.nvars, self.order)
        for _ in range(k):
            out = out * self
        return out

    def monic(self) -> "Polynomial":
        return self.scale(1 / self.leading_coefficient)

    def homogeneous_part(self, d: int) -> "Polynomial":
        return Polynomial({m: c for m, c in self.terms.items() if sum(m) == d},
                          self.nvars, self.order, _clean=True)

    def divide_exact(self, divisor: "Polynomial") -> "Polynomial":
        """Exact quotient; raises if ``divisor`` does not divide ``self``."""
        self._check(divisor)
        order = self.order
        divisor = divisor.with_order(order)
        lm, lc = divisor.leading_term()
        rem = dict(self.terms)
        quot: Dict[Monomial, object] = {}
        key = order.key
        while rem:
            m = max(rem, key=key)
            if not mono_divides(lm, m):
                raise ValueError("division is not exact")
            q = mono_div(m, lm)
            c = rem[m] / lc
            quot[q] = c
            for dm, dc in divisor.terms.items():
                t = mono_mul(dm, q)
                v = rem.get(t, 0) - c * dc
                if v:
                    rem[t] = v
                else:
                    rem.pop(t, None)
        return Polynomial(quot, self.nvars, order, _clean=True)

    def substitute_linear(self, images: Sequence["Polynomial"]) -> "Polynomial":
        """Replace x_i by images[i] (used for linear coordinate changes)."""
        nv = images[0].nvars
        out = Polynomial.zero(nv, self.order)
        for m, c in self.terms.items():
            t = Polynomial.constant(c, nv, self.order)
            for i, e in enumerate(m):
                if e:
                    t = t * images[i] ** e
            out = out + t
        return out

    def embed(self, nvars: int, offset: int) -> "Polynomial":
        """Same polynomial in a bigger ring, variables shifted by ``offset``."""
        pad_l = (0,) * offset
        pad_r = (0,) * (nvars - offset - self.nvars)
        return Polynomial({pad_l + m + pad_r: c for m, c in self.terms.items()},
                          nvars, self.order, _clean=True)

    def evaluate(self, point: Sequence) -> object:
        total = mpq(0)
        for m, c in self.terms.items():
            t = c
            for x, e in zip(point, m):
                if e:
                    t *= mpq(x) ** e
            total += t
        return total


# -- text form ---------------------------------------------------------------

def format_coefficient(c) -> str:
    c = mpq(c)
    if c.denominator == 1:
        return str(c.numerator)
    return f"{c.numerator}/{c.denominator}"


def format_monomial(m: Monomial) -> str:
    parts = []
    for i, e in enumerate(m):
        if e == 1:
            parts.append(f"x{i}")
        elif e > 1:
            parts.append(f"x{i}^{e}")
    return "*".join(parts)


def format_polynomial(p: Polynomial) -> str:
    if not p.terms:
        return "0"
    out = []
    for m, c in p.sorted_terms():
        mag = abs(c)
        mono = format_monomial(m)
        if not mono:
            body = format_coefficient(mag)
        elif mag == 1:
            body = mono
        else:
            body = f"{format_coefficient(mag)}*{mono}"
        if not out:
            out.append(("-" if c < 0 else "") + body)
        else:
            out.append((" - " if c < 0 else " + ") + body)
    return "".join(out)


_TOKEN = re.compile(r"\s*(?:(\d+(?:/\d+)?)|x(\d+)|(\^)|([-+*()]))")


def parse_polynomial(text: str, nvars: int, order: MonomialOrder = GREVLEX) -> Polynomial:
    """Parse polynomial text in x0..x{nvars-1}.

    Accepts integers and fractions ``p/q``, ``*``, ``^`` powers, parentheses
    and implicit multiplication by juxtaposition (``2x0``).
    """
    tokens = []
    pos = 0
    s = text.strip()
    while pos < len(s):
        m = _TOKEN.match(s, pos)
        if not m:
            raise ValueError(f"unexpected character in polynomial {text!r} at {s[pos:]!r}")
        num, var, caret, op = m.groups()
        if num is not None:
            tokens.append(("num", mpq(num)))
        elif var is not None:
            i = int(var)
            if i >= nvars:
                raise ValueError(f"variable x{i} out of range for {nvars} variables")
            tokens.append(("var", i))
        elif caret:
            tokens.append(("op", "^"))
        else:
            tokens.append(("op", op))
        pos = m.end()
    if not tokens:
        raise ValueError("empty polynomial")
    parser = _Parser(tokens, nvars, order)
    result = parser.expr()
    if parser.pos != len(tokens):
        raise ValueError(f"trailing input in polynomial {text!r}")
    return result


class _Parser:
    def __init__(self, tokens, nvars, order):
        self.tokens = tokens
        self.pos = 0
        self.nvars = nvars
        self.order = order

    def peek(self):
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def take(self):
        tok = self.peek()
        self.pos += 1
        return tok

    def expr(self):
        sign = 1
        tok = self.peek()
        if tok in (("op", "+"), ("op", "-")):
            self.take()
            sign = -1 if tok[1] == "-" else 1
        acc = self.term().scale(sign)
        while self.peek() in (("op", "+"), ("op", "-")):
            op = self.take()[1]
            t = self.term()
            acc = acc + t if op == "+" else acc - t
        return acc

    def term(self):
        acc = self.power()
        while True:
            tok = self.peek()
            if tok == ("op", "*"):
                self.take()
                acc = acc * self.power()
            elif tok is not None and (tok[0] in ("num", "var") or tok == ("op", "(")):
                acc = acc * self.power()
            else:
                return acc

    def power(self):
        base = self.atom()
        if self.peek() == ("op", "^"):
            self.take()
            tok = self.take()
            if tok is None or tok[0] != "num" or tok[1].denominator != 1:
                raise ValueError("exponent must be a nonnegative integer")
            base = base ** int(tok[1])
        return base

    def atom(self):
        tok = self.take()
        if tok is None:
            raise ValueError("unexpected end of polynomial")
        kind, val = tok
        if kind == "num":
            return Polynomial.constant(val, self.nvars, self.order)
        if kind == "var":
            return Polynomial.var(val, self.nvars, self.order)
        if tok == ("op", "("):
            inner = self.expr()
            if self.take() != ("op", ")"):
                raise ValueError("unbalanced parentheses")
            return inner
        if tok == ("op", "-"):
            return -self.power()
        raise ValueError(f"unexpected token {val!r}")
