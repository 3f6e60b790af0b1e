"""Gröbner bases (Buchberger with Gebauer–Möller pair pruning) and ideal operations.

Internally polynomials are plain dicts monomial -> mpq; the public surface
uses :class:`~linea.multipoly.Polynomial`, :class:`Ideal` and
:class:`GroebnerBasis`.
"""

from __future__ import annotations

import json
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

import gmpy2

from .linalg import RankResult, rank
from .multipoly import (
    GREVLEX,
    Monomial,
    MonomialOrder,
    Polynomial,
    elim,
    format_polynomial,
    mono_div,
    mono_divides,
    mono_lcm,
    mono_mul,
    monomials_of_degree,
    parse_polynomial,
)

mpq = gmpy2.mpq
Poly = Dict[Monomial, object]


class NotHomogeneousError(ValueError):
    pass


# -- dict-level kernel -------------------------------------------------------

def _lm(f: Poly, key) -> Monomial:
    return max(f, key=key)


def _monic(f: Poly, lm: Monomial) -> Poly:
    c = f[lm]
    if c == 1:
        return f
    inv = 1 / c
    return {m: v * inv for m, v in f.items()}


def _find_divisor(m: Monomial, basis: Sequence[Tuple[Monomial, Poly]]):
    for lm, g in basis:
        if all(a <= b for a, b in zip(lm, m)):
            return lm, g
    return None


def _reduce(f: Poly, basis: Sequence[Tuple[Monomial, Poly]], key, full: bool = True) -> Poly:
    """Normal form of f by monic basis elements (lm, poly)."""
    f = dict(f)
    rem: Poly = {}
    while f:
        m = max(f, key=key)
        c = f.pop(m)
        hit = _find_divisor(m, basis)
        if hit is None:
            if not full:
                rem[m] = c
                rem.update(f)
                return rem
            rem[m] = c
            continue
        lm, g = hit
        q = tuple(b - a for a, b in zip(lm, m))
        for gm, gc in g.items():
            if gm == lm:
                continue
            t = tuple(a + b for a, b in zip(gm, q))
            v = f.get(t, 0) - c * gc
            if v:
                f[t] = v
            else:
                f.pop(t, None)
    return rem


def _spoly(f: Poly, lf: Monomial, g: Poly, lg: Monomial) -> Poly:
    l = mono_lcm(lf, lg)
    qf = mono_div(l, lf)
    qg = mono_div(l, lg)
    out: Poly = {}
    for m, c in f.items():
        if m != lf:
            out[mono_mul(m, qf)] = c
    for m, c in g.items():
        if m != lg:
            t = mono_mul(m, qg)
            v = out.get(t, 0) - c
            if v:
                out[t] = v
            else:
                out.pop(t, None)
    return out


def _coprime(a: Monomial, b: Monomial) -> bool:
    return all(x == 0 or y == 0 for x, y in zip(a, b))


def buchberger_dicts(polys: Iterable[Poly], order: MonomialOrder) -> List[Poly]:
    """Reduced Gröbner basis of the ideal generated by ``polys`` (monic dicts)."""
    key = order.key
    store: List[Tuple[Monomial, Poly]] = []
    active: List[int] = []
    pairs: List[Tuple[int, int]] = []
    lcms: Dict[Tuple[int, int], Monomial] = {}

    def pair_lcm(i, j):
        p = (i, j) if i < j else (j, i)
        l = lcms.get(p)
        if l is None:
            l = mono_lcm(store[i][0], store[j][0])
            lcms[p] = l
        return l

    def update(h: int):
        nonlocal active, pairs
        lh = store[h][0]
        C = [g for g in active]
        D: List[int] = []
        while C:
            g1 = C.pop()
            l1 = pair_lcm(h, g1)
            if _coprime(lh, store[g1][0]):
                D.append(g1)
                continue
            dominated = False
            for g2 in C + D:
                if mono_divides(pair_lcm(h, g2), l1):
                    dominated = True
                    break
            if not dominated:
                D.append(g1)
        E = [(h, g) for g in D if not _coprime(lh, store[g][0])]
        kept = []
        for (g1, g2) in pairs:
            l12 = pair_lcm(g1, g2)
            if (not mono_divides(lh, l12)) or pair_lcm(g1, h) == l12 or pair_lcm(g2, h) == l12:
                kept.append((g1, g2))
        pairs = kept + E
        active = [g for g in active if not mono_divides(lh, store[g][0])] + [h]

    def current():
        return [store[i] for i in active]

    inputs = [dict(p) for p in polys if p]
    inputs.sort(key=lambda p: key(_lm(p, key)))
    for f in inputs:
        r = _reduce(f, current(), key)
        if r:
            lm = _lm(r, key)
            store.append((lm, _monic(r, lm)))
            update(len(store) - 1)

    while pairs:
        best = min(range(len(pairs)), key=lambda k: key(pair_lcm(*pairs[k])))
        i, j = pairs.pop(best)
        s = _spoly(store[i][1], store[i][0], store[j][1], store[j][0])
        r = _reduce(s, current(), key)
        if r:
            lm = _lm(r, key)
            store.append((lm, _monic(r, lm)))
            update(len(store) - 1)

    return _interreduce([store[i] for i in active], key)


def _interreduce(basis: List[Tuple[Monomial, Poly]], key) -> List[Poly]:
    # drop elements whose leading monomial is divisible by another's
    basis = sorted(basis, key=lambda t: key(t[0]))
    minimal: List[Tuple[Monomial, Poly]] = []
    for lm, g in basis:
        if not any(mono_divides(l2, lm) for l2, _ in minimal):
            minimal.append((lm, g))
    out = []
    for idx, (lm, g) in enumerate(minimal):
        others = minimal[:idx] + minimal[idx + 1:]
        tail = {m: c for m, c in g.items() if m != lm}
        tail = _reduce(tail, others, key)
        tail[lm] = g[lm]
        out.append(_monic(tail, lm))
    return out


# -- public types ---------------------------------------------------------------

def _sort_key(p: Polynomial):
    lm = p.leading_monomial
    return (sum(lm), p.order.key(lm))


class GroebnerBasis:
    """A reduced Gröbner basis; elements sorted by degree, then leading monomial."""

    def __init__(self, elements: Sequence[Polynomial], nvars: int, order: MonomialOrder):
        self.nvars = nvars
        self.order = order
        self.elements = sorted((e.with_order(order) for e in elements), key=_sort_key)
        self._pairs = [(e.leading_monomial, e.terms) for e in self.elements]

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __eq__(self, other):
        if not isinstance(other, GroebnerBasis):
            return NotImplemented
        return (self.nvars == other.nvars and self.order == other.order
                and {frozenset(e.terms.items()) for e in self.elements}
                == {frozenset(e.terms.items()) for e in other.elements})

    def __repr__(self):
        return f"GroebnerBasis([{', '.join(format_polynomial(e) for e in self.elements)}])"

    @property
    def leading_monomials(self) -> List[Monomial]:
        return [lm for lm, _ in self._pairs]

    def is_unit(self) -> bool:
        return any(sum(lm) == 0 for lm in self.leading_monomials)

    def normal_form(self, f: Polynomial) -> Polynomial:
        if f.nvars != self.nvars:
            raise ValueError("polynomial lives in a different ring")
        r = _reduce(f.terms, self._pairs, self.order.key)
        return Polynomial(r, self.nvars, self.order, _clean=True)

    def contains(self, f: Polynomial) -> bool:
        return not self.normal_form(f)

    def is_standard(self, m: Monomial) -> bool:
        return not any(mono_divides(lm, m) for lm in self.leading_monomials)

    def standard_monomials(self, d: int) -> List[Monomial]:
        """Monomials of degree d outside the initial ideal, descending."""
        return [m for m in monomials_of_degree(self.nvars - 1, d, self.order) if self.is_standard(m)]

    def hilbert_value(self, d: int) -> int:
        lms = self.leading_monomials
        return sum(1 for m in monomials_of_degree(self.nvars - 1, d, self.order)
                   if not any(mono_divides(lm, m) for lm in lms))

    def initial_ideal(self) -> "Ideal":
        return Ideal([Polynomial({lm: 1}, self.nvars, self.order) for lm in self.leading_monomials],
                     self.nvars, self.order)


def buchberger(ideal: "Ideal", order: MonomialOrder = GREVLEX) -> GroebnerBasis:
    elems = buchberger_dicts((g.terms for g in ideal.generators), order)
    return GroebnerBasis([Polynomial(e, ideal.nvars, order, _clean=True) for e in elems],
                         ideal.nvars, order)


class Ideal:
    """An ideal of Q[x0..xn] given by generators; Gröbner bases are cached per order."""

    def __init__(self, generators: Iterable[Polynomial], nvars: Optional[int] = None,
                 order: MonomialOrder = GREVLEX):
        gens = [g for g in generators if g]
        if nvars is None:
            if not gens:
                raise ValueError("cannot infer ambient ring of the zero ideal")
            nvars = gens[0].nvars
        for g in gens:
            if g.nvars != nvars:
                raise ValueError("generators live in different rings")
        self.nvars = nvars
        self.order = order
        self.generators = [g.with_order(order) for g in gens]
        self._gb: Dict[MonomialOrder, GroebnerBasis] = {}

    @property
    def n(self) -> int:
        return self.nvars - 1

    @classmethod
    def parse(cls, gens: Sequence[str], n: int, order: MonomialOrder = GREVLEX) -> "Ideal":
        return cls([parse_polynomial(s, n + 1, order) for s in gens], n + 1, order)

    @classmethod
    def zero(cls, nvars: int) -> "Ideal":
        return cls([], nvars)

    @classmethod
    def maximal(cls, nvars: int) -> "Ideal":
        return cls([Polynomial.var(i, nvars) for i in range(nvars)], nvars)

    def __repr__(self):
        return f"Ideal([{', '.join(format_polynomial(g) for g in self.generators)}])"

    def gb(self, order: Optional[MonomialOrder] = None) -> GroebnerBasis:
        order = order or self.order
        g = self._gb.get(order)
        if g is None:
            g = buchberger(self, order)
            self._gb[order] = g
        return g

    def set_gb(self, basis: GroebnerBasis):
        """Install a Gröbner basis computed elsewhere (must be for this ideal)."""
        self._gb[basis.order] = basis

    def is_homogeneous(self) -> bool:
        return all(g.is_homogeneous() for g in self.generators)

    def require_homogeneous(self):
        if not self.is_homogeneous():
            raise NotHomogeneousError("ideal is not homogeneous")

    def is_zero(self) -> bool:
        return not self.generators

    def contains(self, f: Polynomial) -> bool:
        if not f:
            return True
        if self.is_zero():
            return False
        return self.gb().contains(f)

    def normal_form(self, f: Polynomial) -> Polynomial:
        if self.is_zero():
            return f
        return self.gb().normal_form(f)

    def issubset(self, other: "Ideal") -> bool:
        return all(other.contains(g) for g in self.generators)

    def __le__(self, other: "Ideal") -> bool:
        return self.issubset(other)

    def __eq__(self, other):
        if not isinstance(other, Ideal):
            return NotImplemented
        if self.nvars != other.nvars:
            return False
        if self.is_zero() or other.is_zero():
            return self.is_zero() == other.is_zero() or (self.issubset(other) and other.issubset(self))
        return self.gb(GREVLEX) == other.gb(GREVLEX)

    __hash__ = None

    def __add__(self, other) -> "Ideal":
        if isinstance(other, Polynomial):
            other = Ideal([other], self.nvars)
        return Ideal(self.generators + other.generators, self.nvars, self.order)

    def canonical_generators(self) -> List[Polynomial]:
        """Deterministic generator list: the reduced grevlex Gröbner basis."""
        if self.is_zero():
            return []
        return list(self.gb(GREVLEX).elements)

    def to_json(self) -> dict:
        gens = sorted(self.generators, key=_sort_key)
        return {"n": self.n, "generators": [format_polynomial(g) for g in gens]}

    @classmethod
    def from_json(cls, data: dict) -> "Ideal":
        return cls.parse(data["generators"], int(data["n"]))


# -- ideal operations -----------------------------------------------------------

def sum_ideals(*ideals: Ideal) -> Ideal:
    nv = ideals[0].nvars
    gens: List[Polynomial] = []
    for I in ideals:
        gens.extend(I.generators)
    return Ideal(gens, nv)


def eliminate(polys: Sequence[Polynomial], k: int) -> List[Polynomial]:
    """Generators of (polys) ∩ Q[x_k..]; the first k variables are eliminated."""
    nv = polys[0].nvars
    order = elim(k)
    G = buchberger_dicts((p.terms for p in polys), order)
    out = []
    for g in G:
        if all(not any(m[:k]) for m in g):
            out.append(Polynomial({m[k:]: c for m, c in g.items()}, nv - k, GREVLEX, _clean=True))
    return out


def intersect(I: Ideal, J: Ideal) -> Ideal:
    """I ∩ J via the auxiliary variable t: (t·I + (1-t)·J) ∩ S."""
    if I.nvars != J.nvars:
        raise ValueError("ideals live in different rings")
    if I.is_zero() or J.is_zero():
        return Ideal.zero(I.nvars)
    nv = I.nvars + 1
    t = Polynomial.var(0, nv)
    one_minus_t = Polynomial.constant(1, nv) - t
    polys = [t * f.embed(nv, 1) for f in I.generators]
    polys += [one_minus_t * g.embed(nv, 1) for g in J.generators]
    gens = eliminate(polys, 1)
    out = Ideal(gens, I.nvars)
    out.set_gb(GroebnerBasis(gens, I.nvars, GREVLEX))
    return out


def intersect_all(ideals: Sequence[Ideal]) -> Ideal:
    acc = ideals[0]
    for I in ideals[1:]:
        acc = intersect(acc, I)
    return acc


def colon(I: Ideal, f: Polynomial, method: str = "auto") -> Ideal:
    """The ideal quotient I : f.

    ``elimination`` computes (I ∩ (f)) / f.  ``linear`` (the default for a
    linear form and a homogeneous ideal) moves f to the last variable and
    divides the grevlex basis by it.
    """
    if not f:
        raise ValueError("colon by the zero polynomial")
    if I.is_zero():
        return Ideal.zero(I.nvars)
    if method == "auto":
        method = "linear" if f.is_linear_form() and I.is_homogeneous() else "elimination"
    if method == "linear":
        return _colon_linear(I, f)
    if method != "elimination":
        raise ValueError(f"unknown colon method {method!r}")
    meet = intersect(I, Ideal([f], I.nvars))
    gens = [g.divide_exact(f) for g in meet.generators]
    # the quotients form a Gröbner basis, but tails still need reducing
    key = GREVLEX.key
    monic = [g.monic().terms for g in gens]
    reduced = _interreduce([(_lm(g, key), g) for g in monic], key)
    out = Ideal([Polynomial(r, I.nvars, GREVLEX, _clean=True) for r in reduced], I.nvars)
    out.set_gb(GroebnerBasis(out.generators, I.nvars, GREVLEX))
    return out


def _colon_linear(I: Ideal, f: Polynomial) -> Ideal:
    # For homogeneous I and grevlex, in(I : x_last) = in(I) : x_last, so dividing
    # each basis element by x_last (when it divides) gives a basis of I : x_last.
    nv = I.nvars
    last = nv - 1
    c = f.coefficient_vector()
    k = max(i for i in range(nv) if c[i])
    x = [Polynomial.var(i, nv) for i in range(nv)]
    images = list(x)
    if k != last:
        images[last] = x[k]
    rest = Polynomial.zero(nv)
    for i in range(nv):
        if i != k and c[i]:
            rest = rest + images[i].scale(c[i])
    images[k] = (x[last] - rest).scale(1 / mpq(c[k]))
    moved = [g.substitute_linear(images).terms for g in I.generators]
    G = buchberger_dicts(moved, GREVLEX)
    divided = []
    for g in G:
        if all(m[last] > 0 for m in g):
            g = {m[:last] + (m[last] - 1,): v for m, v in g.items()}
        divided.append(Polynomial(g, nv, GREVLEX, _clean=True))
    inverse = list(x)
    if k != last:
        inverse[k] = x[last]
    inverse[last] = f.with_order(GREVLEX)
    return Ideal([g.substitute_linear(inverse) for g in divided], nv)


def colon_ideal(I: Ideal, J: Ideal) -> Ideal:
    """I : J as the intersection of I : g over the generators g of J."""
    if J.is_zero():
        return Ideal.maximal(I.nvars) + Ideal([Polynomial.constant(1, I.nvars)], I.nvars)
    parts = [colon(I, g) for g in J.generators]
    return intersect_all(parts) if len(parts) > 1 else parts[0]


def initial_ideal(G: GroebnerBasis) -> Ideal:
    return G.initial_ideal()


# -- graded linear algebra ----------------------------------------------------

def degree_rows(gens: Sequence[Polynomial], d: int, nvars: int,
                max_gen_degree: Optional[int] = None) -> Tuple[List[list], List[Monomial]]:
    """Coefficient rows of {u·g : deg(u·g) = d} in the monomial basis of S_d.

    Generators must be homogeneous.  With ``max_gen_degree`` only generators
    of degree at most that value contribute.
    """
    basis = monomials_of_degree(nvars - 1, d)
    index = {m: i for i, m in enumerate(basis)}
    rows = []
    for g in gens:
        e = g.degree()
        if e > d or (max_gen_degree is not None and e > max_gen_degree):
            continue
        for u in monomials_of_degree(nvars - 1, d - e):
            row = [0] * len(basis)
            for m, c in g.terms.items():
                row[index[mono_mul(m, u)]] = c
            rows.append(row)
    return rows, basis


def graded_dimension(I: Ideal, d: int, exact: bool = False) -> RankResult:
    """dim_Q I_d by rank of the degree-d multiples of the generators."""
    I.require_homogeneous()
    rows, _ = degree_rows(I.generators, d, I.nvars)
    if not rows:
        return RankResult(0, "exact")
    return rank(rows, exact=exact)


def minimal_generators_up_to(I: Ideal, D: int, exact: bool = False) -> Dict[int, int]:
    """Number of minimal generators in each degree j <= D.

    Computed as dim I_j - dim (S_1 · I_{j-1}); the latter is spanned by the
    multiples u·g with deg g < j.
    """
    I.require_homogeneous()
    out: Dict[int, int] = {}
    for j in range(0, D + 1):
        rows_all, _ = degree_rows(I.generators, j, I.nvars)
        if not rows_all:
            continue
        rows_low, _ = degree_rows(I.generators, j, I.nvars, max_gen_degree=j - 1)
        full = rank(rows_all, exact=exact).rank
        low = rank(rows_low, exact=exact).rank if rows_low else 0
        if full - low:
            out[j] = full - low
    return out


# -- JSON ---------------------------------------------------------------------

def ideal_to_json_text(I: Ideal) -> str:
    return json.dumps(I.to_json(), indent=2)


def ideal_from_json_text(text: str) -> Ideal:
    return Ideal.from_json(json.loads(text))
