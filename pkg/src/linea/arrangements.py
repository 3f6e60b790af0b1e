"""Line arrangements in P^n: constructors, defining ideals, position checks."""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, field
from itertools import combinations
from math import ceil
from typing import Dict, List, Optional, Sequence, Tuple

import gmpy2

from .hilbert import hh_hilbert, hilbert_gb, regularity_alpha
from .ideals import Ideal, intersect
from .linalg import rank_exact, rank_kernel
from .multipoly import Polynomial, format_polynomial, parse_polynomial

mpq = gmpy2.mpq

COORD_BOUND = 10 ** 6


def _integral(vec: Sequence) -> List[int]:
    """Scale a rational vector to a primitive integer vector."""
    qs = [mpq(v) for v in vec]
    den = 1
    for q in qs:
        den = int(gmpy2.lcm(den, q.denominator))
    ints = [int(q * den) for q in qs]
    g = 0
    for v in ints:
        g = int(gmpy2.gcd(g, v))
    return [v // g for v in ints] if g else ints


def _fmt_rat(q) -> str:
    q = mpq(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


@dataclass
class Line:
    forms: List[Polynomial]
    points: Optional[Tuple[List, List]] = None

    @property
    def nvars(self) -> int:
        return self.forms[0].nvars

    def ideal(self) -> Ideal:
        return Ideal(self.forms, self.nvars)

    def validate(self):
        nv = self.nvars
        if len(self.forms) != nv - 2:
            raise ValueError(f"a line in P^{nv - 1} needs {nv - 2} forms, got {len(self.forms)}")
        if not all(f.is_linear_form() for f in self.forms):
            raise ValueError("line forms must be linear")
        if rank_exact([f.coefficient_vector() for f in self.forms]) != nv - 2:
            raise ValueError("line forms are linearly dependent")
        if self.points is not None:
            for p in self.points:
                if any(f.evaluate(p) != 0 for f in self.forms):
                    raise ValueError("span point does not lie on the line")
            if rank_exact([list(p) for p in self.points]) != 2:
                raise ValueError("span points coincide")

    @classmethod
    def through(cls, p: Sequence, q: Sequence) -> "Line":
        """The line spanned by two points, cut out by an exact kernel basis."""
        nv = len(p)
        r, ker = rank_kernel([list(p), list(q)], nv)
        if r != 2:
            raise ValueError("points do not span a line")
        forms = [Polynomial.linear(_integral(v)) for v in ker]
        return cls(forms, ([mpq(x) for x in p], [mpq(x) for x in q]))

    @classmethod
    def from_forms(cls, forms: Sequence[Polynomial]) -> "Line":
        """Attach span points computed as a kernel of the form matrix."""
        nv = forms[0].nvars
        _, ker = rank_kernel([f.coefficient_vector() for f in forms], nv)
        pts = ([mpq(x) for x in ker[0]], [mpq(x) for x in ker[1]]) if len(ker) == 2 else None
        return cls(list(forms), pts)


@dataclass
class LineArrangement:
    n: int
    lines: List[Line]
    provenance: Dict = field(default_factory=dict)

    @property
    def m(self) -> int:
        return len(self.lines)

    @property
    def nvars(self) -> int:
        return self.n + 1

    def ideals(self) -> List[Ideal]:
        return [ln.ideal() for ln in self.lines]

    def validate(self):
        if not self.lines:
            raise ValueError("an arrangement needs at least one line")
        for ln in self.lines:
            if ln.nvars != self.nvars:
                raise ValueError("line lives in a different ambient space")
            ln.validate()
        ids = self.ideals()
        for a, b in combinations(range(len(ids)), 2):
            if ids[a] == ids[b]:
                raise ValueError(f"lines {a} and {b} coincide")

    def to_json(self) -> dict:
        lines = []
        for ln in self.lines:
            entry = {"forms": [format_polynomial(f) for f in ln.forms]}
            if ln.points is not None:
                entry["points"] = [[_fmt_rat(x) for x in p] for p in ln.points]
            lines.append(entry)
        return {"n": self.n, "provenance": self.provenance, "lines": lines}

    @classmethod
    def from_json(cls, data: dict) -> "LineArrangement":
        n = int(data["n"])
        lines = []
        for entry in data["lines"]:
            forms = [parse_polynomial(s, n + 1) for s in entry["forms"]]
            pts = entry.get("points")
            if pts is not None:
                pts = tuple([mpq(str(x)) for x in p] for p in pts)
                lines.append(Line(forms, pts))
            else:
                lines.append(Line.from_forms(forms))
        arr = cls(n, lines, dict(data.get("provenance", {})))
        arr.validate()
        return arr


# -- constructors -----------------------------------------------------------------

def random_generic(m: int, n: int, seed: int, bound: int = COORD_BOUND,
                   retries: int = 16) -> LineArrangement:
    """m lines through pairs of random integer points in [-bound, bound]^(n+1)."""
    if m < 1 or n < 3:
        raise ValueError("need m >= 1 and n >= 3")
    rng = random.Random(f"generic:{m}:{n}:{seed}")
    lines: List[Line] = []
    for _ in range(m):
        for _attempt in range(retries):
            p = [rng.randint(-bound, bound) for _ in range(n + 1)]
            q = [rng.randint(-bound, bound) for _ in range(n + 1)]
            if rank_exact([p, q]) == 2:
                lines.append(Line.through(p, q))
                break
        else:
            raise RuntimeError("could not draw independent points")
    return LineArrangement(n, lines, {"kind": "generic", "seed": seed})


def _pattern_line(forms_basis: Sequence[Polynomial], n: int, i: int) -> List[Polynomial]:
    # all basis forms except positions n-2i+1 and n-2i+2
    skip = {n - 2 * i + 1, n - 2 * i + 2}
    return [f for j, f in enumerate(forms_basis) if j not in skip]


def staircase(m: int, n: int) -> LineArrangement:
    """Coordinate lines L_i = (x_0, ..., skip x_{n-2i+1}, x_{n-2i+2}, ..., x_n)."""
    if m < 1 or 2 * m > n + 1:
        raise ValueError("the coordinate staircase needs 1 <= m and 2m <= n+1")
    x = [Polynomial.var(i, n + 1) for i in range(n + 1)]
    lines = [Line.from_forms(_pattern_line(x, n, i)) for i in range(1, m + 1)]
    return LineArrangement(n, lines, {"kind": "staircase"})


def generic_basis(n: int, seed: int, bound: int = 9) -> List[Polynomial]:
    """Seeded random linear forms l_0..l_n forming a basis of S_1."""
    rng = random.Random(f"basis:{n}:{seed}")
    while True:
        rows = [[rng.randint(-bound, bound) for _ in range(n + 1)] for _ in range(n + 1)]
        if rank_exact(rows) == n + 1:
            return [Polynomial.linear(r) for r in rows]


def split_staircase(m: int, n: int, seed: int) -> Tuple[LineArrangement, List[Polynomial], int, int]:
    """Two staircases: a lines in the coordinates x and b lines in a random basis l.

    a = ceil(m/2) and b = floor(m/2).  Returns (arrangement, l-basis, a, b).
    """
    a, b = (m + 1) // 2, m // 2
    if 2 * a > n + 1:
        raise ValueError("too many lines for the two-block layout")
    x = [Polynomial.var(i, n + 1) for i in range(n + 1)]
    l = generic_basis(n, seed)
    lines = [Line.from_forms(_pattern_line(x, n, i)) for i in range(1, a + 1)]
    lines += [Line.from_forms(_pattern_line(l, n, i)) for i in range(1, b + 1)]
    arr = LineArrangement(n, lines, {"kind": "split-staircase", "seed": seed, "blocks": [a, b]})
    return arr, l, a, b


def _lines_from_text(n: int, spec: Sequence[Sequence[str]], provenance: dict) -> LineArrangement:
    lines = [Line.from_forms([parse_polynomial(s, n + 1) for s in forms]) for forms in spec]
    return LineArrangement(n, lines, provenance)


DEFAULT_A = mpq(1009, 7919)
DEFAULT_B = mpq(7907, 1013)


def named(name: str, a=None, b=None) -> LineArrangement:
    """The named arrangements: three_p4, four_p3_special, five_p6 (parameters a, b)."""
    if name == "three_p4":
        return _lines_from_text(4, [["x0", "x1", "x3"], ["x0", "x2", "x4"], ["x1", "x2", "x3 + x4"]],
                                {"kind": "named", "id": "three_p4"})
    if name == "four_p3_special":
        return _lines_from_text(3, [["x0", "x1"], ["x2", "x3"], ["x0 + x2", "x1 - x3"],
                                    ["x0 - x2", "x1 + x3"]],
                                {"kind": "named", "id": "four_p3_special"})
    if name == "five_p6":
        a = DEFAULT_A if a is None else mpq(a)
        b = DEFAULT_B if b is None else mpq(b)
        if a == 0 or b == 0:
            raise ValueError("five_p6 parameters must be nonzero")
        fa, fb = _fmt_rat(a), _fmt_rat(b)
        spec = [["x0", "x3", "x4", "x5", "x6"],
                ["x0", "x1", "x4", "x5", f"x2 + ({fa})*x3 + x6"],
                ["x0", "x1", "x2", "x6", f"x3 + ({fb})*x4 + x5"],
                ["x1", "x2", "x3", "x5", "x0 + x4 + x6"],
                ["x2", "x3", "x4", "x6", "x0 + x1 + x5"]]
        return _lines_from_text(6, spec, {"kind": "named", "id": "five_p6", "a": fa, "b": fb})
    raise ValueError(f"unknown arrangement {name!r}")


# -- ideals and certificates ----------------------------------------------------

_IDEAL_CACHE: Dict[str, Ideal] = {}


def defining_ideal(A: LineArrangement) -> Ideal:
    """Intersection of the line ideals, generators = reduced grevlex basis."""
    key = json.dumps(A.to_json()["lines"], sort_keys=True) + str(A.n)
    hit = _IDEAL_CACHE.get(key)
    if hit is not None:
        return hit
    ids = A.ideals()
    acc = ids[0]
    for I in ids[1:]:
        acc = intersect(acc, I)
    if len(ids) == 1:
        acc = Ideal(acc.canonical_generators(), A.nvars)
    _IDEAL_CACHE[key] = acc
    return acc


def general_position_check(A: LineArrangement) -> bool:
    """Every s lines span a P^r with r = min(2s-1, n), for s up to ceil((n+1)/2)."""
    if any(ln.points is None for ln in A.lines):
        raise ValueError("span points are required")
    top = min(A.m, ceil((A.n + 1) / 2))
    for s in range(1, top + 1):
        for subset in combinations(A.lines, s):
            rows = [list(p) for ln in subset for p in ln.points]
            if rank_exact(rows) != min(2 * s, A.n + 1):
                return False
    # larger subsets contain a spanning subset once the space is filled
    return True


def genericity_certificate(A: LineArrangement, D: Optional[int] = None) -> bool:
    """Hilbert function of the arrangement equals the generic formula for d <= D."""
    if D is None:
        D = regularity_alpha(A.m, A.n) + 1
    J = defining_ideal(A)
    return all(hilbert_gb(J, d) == hh_hilbert(A.m, A.n, d) for d in range(D + 1))


def certified_generic(m: int, n: int, seed: int, attempts: int = 5) -> Tuple[LineArrangement, List[str]]:
    """random_generic with reseeding until the certificate holds; returns notes of reseeds."""
    notes = []
    for k in range(attempts):
        s = seed if k == 0 else f"{seed}/{k}"
        A = random_generic(m, n, s)
        if genericity_certificate(A):
            return A, notes
        notes.append(f"seed {s} failed the genericity certificate")
    raise RuntimeError("no generic draw passed the certificate")


def arrangement_to_json_text(A: LineArrangement) -> str:
    return json.dumps(A.to_json(), indent=2)


def arrangement_from_json_text(text: str) -> LineArrangement:
    return LineArrangement.from_json(json.loads(text))
