"""Hilbert functions and series: closed forms for generic lines and points,
and two computational routes for an explicit ideal (standard monomials of
the initial ideal, and ranks of graded pieces).  Regularity values and bounds.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import comb, factorial
from typing import Dict, List, Optional, Sequence, Tuple

import gmpy2

from .exactnum import RationalFunction1, one_minus_t_power, poly_mul, series_expand
from .ideals import Ideal, degree_rows
from .linalg import rank
from .multipoly import Monomial, mono_divides


def _require_space(n: int):
    if n < 3:
        raise ValueError(
            "the line-arrangement Hilbert function formula is only used for n >= 3; "
            "for n <= 2 lines meet and the count changes (two lines in P^2 have value 5 in degree 2)")


def hh_hilbert(m: int, n: int, d: int) -> int:
    """Hilbert function of m generic lines in P^n: min{C(n+d,d), m(d+1)}."""
    if m < 1 or d < 0:
        raise ValueError("need m >= 1 and d >= 0")
    _require_space(n)
    return min(comb(n + d, d), m * (d + 1))


def points_hilbert(p: int, n: int, d: int) -> int:
    """Hilbert function of p generic points in P^n: min{C(n+d,d), p}."""
    if p < 1 or n < 1 or d < 0:
        raise ValueError("need p >= 1, n >= 1 and d >= 0")
    return min(comb(n + d, d), p)


def regularity_alpha(m: int, n: int) -> int:
    """Smallest alpha >= 0 with C(n+alpha, alpha) >= m(alpha+1)."""
    if m < 1:
        raise ValueError("need m >= 1")
    _require_space(n)
    a = 0
    while comb(n + a, a) < m * (a + 1):
        a += 1
    return a


def hh_series(m: int, n: int) -> RationalFunction1:
    """Hilbert series of m generic lines in P^n as p(t)/(1-t)^2."""
    alpha = regularity_alpha(m, n)
    top = alpha + 2
    values = [hh_hilbert(m, n, d) for d in range(top + 1)]
    # from degree alpha on the values are m(d+1), so the second difference vanishes
    num = poly_mul(values, one_minus_t_power(2))[:alpha + 2]
    return RationalFunction1(num, 2)


def closed_form_series(m: int, n: int) -> Optional[RationalFunction1]:
    """The closed numerators for regularity 1 and 2; None otherwise."""
    alpha = regularity_alpha(m, n)
    if alpha == 1:
        return RationalFunction1([1, 2 * (m - 1), 1 - m], 2)
    if alpha == 2:
        return RationalFunction1([1, n - 1, 3 * m - 2 * n - 1, 1 + n - 2 * m], 2)
    return None


def points_series(p: int, n: int) -> RationalFunction1:
    top = 0
    while comb(n + top, top) < p:
        top += 1
    values = [points_hilbert(p, n, d) for d in range(top + 2)]
    return RationalFunction1(poly_mul(values, [1, -1])[:top + 1], 1)


# -- regularity bound ------------------------------------------------------------

def _root_bounds(x: int, r: int, prec: int) -> Tuple[int, int, bool]:
    """floor and ceil of x^(1/r)·2^prec, and whether the root is exact."""
    scaled = x << (prec * r)
    root, exact = gmpy2.iroot(gmpy2.mpz(scaled), r)
    root = int(root)
    return root, root if exact else root + 1, bool(exact)


def regularity_bound(m: int, n: int) -> int:
    """ceil((n!)^(1/(n-1)) · (m^(1/(n-1)) - 1)), certified by integer roots.

    The value is c = (n!·m)^(1/r) - (n!)^(1/r) with r = n-1.  Both roots are
    enclosed in intervals of width 2^-prec; the precision doubles until the
    enclosure of c has a single ceiling.
    """
    if m < 1:
        raise ValueError("need m >= 1")
    _require_space(n)
    if m == 1:
        return 0
    r = n - 1
    A, B = factorial(n) * m, factorial(n)
    prec = 32
    while True:
        a_lo, a_hi, a_exact = _root_bounds(A, r, prec)
        b_lo, b_hi, b_exact = _root_bounds(B, r, prec)
        lo, hi = a_lo - b_hi, a_hi - b_lo  # c·2^prec lies in [lo, hi]
        scale = 1 << prec
        if a_exact and b_exact:
            return -((-lo) // scale)
        ceil_lo = -((-lo) // scale)
        ceil_hi = -((-hi) // scale)
        # c is irrational here, so a tight enough enclosure settles the ceiling
        if ceil_lo == ceil_hi:
            return ceil_hi
        prec *= 2
        if prec > 1 << 16:
            raise ArithmeticError("regularity bound did not separate from an integer")


# -- computational routes ---------------------------------------------------------

@dataclass
class HilbertProfile:
    values: Dict[int, int]
    series: Optional[RationalFunction1] = None
    source: str = "closed-form"

    def as_list(self) -> List[int]:
        return [self.values[d] for d in sorted(self.values)]

    def consistent(self) -> bool:
        if self.series is None:
            return True
        top = max(self.values)
        exp = series_expand(self.series, top)
        return all(exp[d] == v for d, v in self.values.items())


def hilbert_linalg(I: Ideal, d: int, exact: bool = False) -> int:
    """dim (S/I)_d = C(n+d,d) - rank of the degree-d multiples of the generators."""
    I.require_homogeneous()
    total = comb(I.nvars - 1 + d, d)
    rows, _ = degree_rows(I.generators, d, I.nvars)
    if not rows:
        return total
    return total - rank(rows, exact=exact).rank


def hilbert_gb(I: Ideal, d: int) -> int:
    """dim (S/I)_d by counting standard monomials of the initial ideal."""
    I.require_homogeneous()
    if I.is_zero():
        return comb(I.nvars - 1 + d, d)
    return I.gb().hilbert_value(d)


def _minimize(gens: List[Monomial]) -> List[Monomial]:
    gens = sorted(set(gens), key=sum)
    out: List[Monomial] = []
    for g in gens:
        if not any(mono_divides(h, g) for h in out):
            out.append(g)
    return out


@lru_cache(maxsize=None)
def _monomial_numerator(gens: Tuple[Monomial, ...]) -> Tuple[int, ...]:
    # N(I) with H_{S/I} = N(I)/(1-t)^nvars; N(I + (m)) = N(I) - t^deg(m) N(I : m)
    if not gens:
        return (1,)
    *rest, last = gens
    rest = tuple(rest)
    colon = tuple(sorted(_minimize([tuple(max(a - b, 0) for a, b in zip(g, last)) for g in rest])))
    base = list(_monomial_numerator(rest))
    sub = [0] * sum(last) + list(_monomial_numerator(colon))
    size = max(len(base), len(sub))
    out = [(base[i] if i < len(base) else 0) - (sub[i] if i < len(sub) else 0) for i in range(size)]
    while len(out) > 1 and out[-1] == 0:
        out.pop()
    return tuple(out)


def monomial_hilbert_series(leading: Sequence[Monomial], nvars: int) -> RationalFunction1:
    gens = tuple(sorted(_minimize(list(leading))))
    if any(sum(g) == 0 for g in gens):
        return RationalFunction1([0], 0)
    return RationalFunction1(list(_monomial_numerator(gens)), nvars)


def hilbert_series(I: Ideal) -> RationalFunction1:
    """Hilbert series of S/I from the initial ideal of its Gröbner basis."""
    I.require_homogeneous()
    if I.is_zero():
        return RationalFunction1([1], I.nvars)
    return monomial_hilbert_series(I.gb().leading_monomials, I.nvars)


def hilbert_profile(I: Ideal, max_deg: int, method: str = "gb", exact: bool = False) -> HilbertProfile:
    if method == "gb":
        vals = {d: hilbert_gb(I, d) for d in range(max_deg + 1)}
        return HilbertProfile(vals, hilbert_series(I), "initial-ideal")
    if method == "linalg":
        vals = {d: hilbert_linalg(I, d, exact=exact) for d in range(max_deg + 1)}
        return HilbertProfile(vals, None, "linear-algebra")
    raise ValueError(f"unknown method {method!r}")


def formula_profile(m: int, n: int, max_deg: int) -> HilbertProfile:
    vals = {d: hh_hilbert(m, n, d) for d in range(max_deg + 1)}
    return HilbertProfile(vals, hh_series(m, n), "closed-form")


def derksen_sidman_check(ideals: Sequence[Ideal]) -> bool:
    """reg of the intersection of ideals of linear forms is at most their number."""
    from .betti import graded_betti, reg_of
    from .ideals import intersect_all

    for I in ideals:
        if not all(g.is_linear_form() for g in I.generators):
            raise ValueError("every ideal must be generated by linear forms")
    J = intersect_all(list(ideals))
    k = len(ideals)
    nv = J.nvars
    # reg(J) = reg(S/J) + 1, and S/J has regularity below k; jmax leaves room to see it
    table = graded_betti(J, nv, nv + k + 1)
    return reg_of(table) + 1 <= k
