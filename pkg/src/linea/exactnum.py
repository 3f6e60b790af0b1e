"""Exact scalars and one-variable rational functions of the form p(t)/(1-t)^d.

Coefficients are Python ints (arbitrary precision); scalar rationals are
``gmpy2.mpq``.  Nothing here touches floating point.
"""

from __future__ import annotations

import re
from math import comb
from typing import Iterable, Optional, Sequence

import gmpy2

mpq = gmpy2.mpq


def Q(value, denominator=None):
    """Build an exact rational from an int, a string like ``"3/7"`` or a pair."""
    if denominator is not None:
        return mpq(value, denominator)
    if isinstance(value, str):
        return mpq(value.strip())
    return mpq(value)


def _trim(coeffs: Iterable[int]) -> tuple:
    out = list(coeffs)
    while out and out[-1] == 0:
        out.pop()
    return tuple(out)


def poly_mul(a: Sequence[int], b: Sequence[int]) -> list:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def poly_add(a: Sequence[int], b: Sequence[int]) -> list:
    out = [0] * max(len(a), len(b))
    for i, x in enumerate(a):
        out[i] += x
    for i, y in enumerate(b):
        out[i] += y
    return out


def one_minus_t_power(d: int) -> list:
    """Coefficients of (1-t)^d."""
    return [(-1) ** k * comb(d, k) for k in range(d + 1)]


class RationalFunction1:
    """``numerator(t) / (1-t)**denom_power`` with an integer numerator.

    Stored normalized: common factors (1-t) are cancelled, so two instances
    describing the same function compare equal.
    """

    __slots__ = ("numerator", "denom_power")

    def __init__(self, numerator: Iterable[int], denom_power: int = 0):
        if denom_power < 0:
            raise ValueError("denominator power must be nonnegative")
        num = [int(c) for c in numerator]
        d = denom_power
        # cancel (1-t) while the numerator vanishes at t = 1
        while d > 0 and num and sum(num) == 0:
            num = _divide_by_one_minus_t(num)
            d -= 1
        if not _trim(num):
            d = 0
        self.numerator = _trim(num)
        self.denom_power = d

    @classmethod
    def from_values(cls, values: Sequence[int]) -> "RationalFunction1":
        """A polynomial (finite-length series) from its coefficient list."""
        return cls(values, 0)

    def __eq__(self, other):
        if not isinstance(other, RationalFunction1):
            return NotImplemented
        return self.numerator == other.numerator and self.denom_power == other.denom_power

    def __hash__(self):
        return hash((self.numerator, self.denom_power))

    def __repr__(self):
        return f"RationalFunction1({format_rational_function(self)!r})"

    def __str__(self):
        return format_rational_function(self)

    def _lift(self, d: int) -> list:
        # numerator rewritten over (1-t)^d, d >= self.denom_power
        return poly_mul(list(self.numerator), one_minus_t_power(d - self.denom_power))

    def __add__(self, other):
        if isinstance(other, int):
            other = RationalFunction1([other])
        d = max(self.denom_power, other.denom_power)
        return RationalFunction1(poly_add(self._lift(d), other._lift(d)), d)

    __radd__ = __add__

    def __neg__(self):
        return RationalFunction1([-c for c in self.numerator], self.denom_power)

    def __sub__(self, other):
        if isinstance(other, int):
            other = RationalFunction1([other])
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            return RationalFunction1([other * c for c in self.numerator], self.denom_power)
        return RationalFunction1(poly_mul(list(self.numerator), list(other.numerator)),
                                 self.denom_power + other.denom_power)

    __rmul__ = __mul__

    def shift(self, k: int) -> "RationalFunction1":
        """Multiply by t**k."""
        return RationalFunction1([0] * k + list(self.numerator), self.denom_power)

    def divide_by_t(self) -> "RationalFunction1":
        """Exact division by t; the constant term must vanish."""
        if self.numerator and self.numerator[0] != 0:
            raise ValueError("constant term is nonzero, not divisible by t")
        return RationalFunction1(list(self.numerator[1:]), self.denom_power)

    def expand(self, N: int) -> list:
        return series_expand(self, N)


def _divide_by_one_minus_t(num: Sequence[int]) -> list:
    # num(t) = (1 - t) q(t); q_k = sum_{i<=k} num_i
    q, acc = [], 0
    for c in num[:-1]:
        acc += c
        q.append(acc)
    return q


def series_expand(f: RationalFunction1, N: int) -> list:
    """Maclaurin coefficients of ``f`` in degrees ``0..N``."""
    if N < 0:
        raise ValueError("N must be nonnegative")
    d = f.denom_power
    if d == 0:
        base = [1] + [0] * N
    else:
        base = [comb(k + d - 1, d - 1) for k in range(N + 1)]
    out = [0] * (N + 1)
    for i, c in enumerate(f.numerator):
        if i > N:
            break
        if c:
            for k in range(N + 1 - i):
                out[i + k] += c * base[k]
    return out


def series_divide(num: Sequence[int], den: Sequence[int], N: int) -> list:
    """Coefficients of num/den through degree N; den[0] must be +-1."""
    if not den or den[0] not in (1, -1):
        raise ValueError("denominator constant term must be a unit")
    out = []
    num = list(num) + [0] * (N + 1)
    for k in range(N + 1):
        acc = num[k]
        for i in range(1, min(k, len(den) - 1) + 1):
            acc -= den[i] * out[k - i]
        out.append(acc * den[0])
    return out


def reciprocal_series(H: RationalFunction1, N: int) -> list:
    """Coefficients of 1/H(-t) through degree N.

    For a Hilbert series H(t) = p(t)/(1-t)^d this is (1+t)^d / p(-t).
    """
    p = list(H.numerator)
    if not p or p[0] != 1:
        raise ValueError("not a standard graded Hilbert series: H(0) != 1")
    p_neg = [c if i % 2 == 0 else -c for i, c in enumerate(p)]
    one_plus_t = [comb(H.denom_power, k) for k in range(H.denom_power + 1)]
    return series_divide(one_plus_t, p_neg, N)


def first_negative(seq: Sequence[int]) -> Optional[int]:
    for i, c in enumerate(seq):
        if c < 0:
            return i
    return None


# -- text form ---------------------------------------------------------------

_TERM = re.compile(r"([+-]?)\s*(\d*)\s*(\*?\s*t(?:\s*\^\s*(\d+))?)?")


def parse_univariate(text: str, var: str = "t") -> list:
    """Parse an integer polynomial such as ``-3*t^3+2*t^2+5*t+1``."""
    s = text.replace(" ", "")
    if var != "t":
        s = s.replace(var, "t")
    if not s:
        raise ValueError("empty polynomial")
    coeffs: dict = {}
    pos = 0
    while pos < len(s):
        m = _TERM.match(s, pos)
        if not m or m.end() == pos:
            raise ValueError(f"cannot parse polynomial near {s[pos:]!r}")
        sign, digits, tpart, power = m.groups()
        if not digits and not tpart:
            raise ValueError(f"cannot parse polynomial near {s[pos:]!r}")
        if pos > 0 and not sign:
            raise ValueError(f"missing operator near {s[pos:]!r}")
        c = int(digits) if digits else 1
        if sign == "-":
            c = -c
        e = 0
        if tpart:
            e = int(power) if power else 1
        coeffs[e] = coeffs.get(e, 0) + c
        pos = m.end()
    top = max(coeffs)
    return [coeffs.get(i, 0) for i in range(top + 1)]


def format_univariate(coeffs: Sequence[int], var: str = "t") -> str:
    parts = []
    for e in range(len(coeffs) - 1, -1, -1):
        c = coeffs[e]
        if c == 0:
            continue
        mag = abs(c)
        if e == 0:
            body = str(mag)
        else:
            mono = var if e == 1 else f"{var}^{e}"
            body = mono if mag == 1 else f"{mag}*{mono}"
        if not parts:
            parts.append(("-" if c < 0 else "") + body)
        else:
            parts.append(("-" if c < 0 else "+") + body)
    return "".join(parts) or "0"


_RF = re.compile(r"^\((?P<num>[^()]*)\)(?:/\(1-t\)(?:\^(?P<pow>\d+))?)?$")


def parse_rational_function(text: str) -> RationalFunction1:
    """Parse ``"(-3*t^3+2*t^2+5*t+1)/(1-t)^2"``; the denominator is optional."""
    s = text.replace(" ", "")
    m = _RF.match(s)
    if m:
        num = parse_univariate(m.group("num"))
        if s.endswith(")") and "/(1-t)" not in s:
            d = 0
        else:
            d = int(m.group("pow")) if m.group("pow") else (1 if "/(1-t)" in s else 0)
        return RationalFunction1(num, d)
    if "/" in s:
        raise ValueError(f"unsupported rational function {text!r}")
    return RationalFunction1(parse_univariate(s), 0)


def format_rational_function(f: RationalFunction1) -> str:
    num = format_univariate(f.numerator)
    if f.denom_power == 0:
        return f"({num})"
    if f.denom_power == 1:
        return f"({num})/(1-t)"
    return f"({num})/(1-t)^{f.denom_power}"
