"""Koszul classification of generic line arrangements, Koszul filtrations
(data model, verifier, constructors) and the Hilbert-series bookkeeping used
by the two-block construction.

All filtration computations happen in S: an ideal of R = S/J generated by
linear forms is represented by its lift J + (forms), and equality in R is
equality of lifts.
"""

from __future__ import annotations

import json
import random
import re
from dataclasses import dataclass, field
from importlib import resources
from typing import Callable, Dict, Iterable, List, Optional, Sequence, Tuple

import gmpy2

from .arrangements import (DEFAULT_A, DEFAULT_B, LineArrangement, defining_ideal,
                           named, split_staircase, staircase)
from .exactnum import (RationalFunction1, first_negative, format_rational_function,
                       reciprocal_series, series_expand)
from .hilbert import hh_series, hilbert_linalg, hilbert_series, regularity_alpha
from .ideals import Ideal, colon, intersect
from .linalg import rank_exact, rref
from .multipoly import Polynomial, format_polynomial, parse_polynomial

mpq = gmpy2.mpq

KOSZUL, NOT_KOSZUL, UNKNOWN = "Koszul", "NotKoszul", "Unknown"

# verdict tags printed by the CLI
TAG_HYPERSURFACE = "hypersurface"
TAG_LINEAR = "linear ideal"
TAG_STAIRCASE = "Prop 4.1"
TAG_TWO_BLOCK = "Thm 4.3"
TAG_FIVE_SIX = "Prop 4.4"
TAG_THRESHOLD = "Thm 5.2"
TAG_CUBIC = "Prop 5.3"
TAG_NON_QUADRATIC = "non-quadratic"


# -- numerical criteria ------------------------------------------------------------

def threshold_exceeded(m: int, n: int) -> bool:
    """Exact test of 72m > 3(n^2+10n+13) + sqrt(3(n-1)^3(3n+5))."""
    if n < 2:
        raise ValueError("need n >= 2")
    A = 72 * m - 3 * (n * n + 10 * n + 13)
    return A > 0 and A * A > 3 * (n - 1) ** 3 * (3 * n + 5)


def discriminant(m: int, n: int) -> int:
    """Discriminant of the cubic numerator (1+n-2m)t^3 + ... of the regularity-2 series."""
    return -m * (108 * m * m - 9 * m * (n * n + 10 * n + 13) + 4 * (n + 2) ** 3)


def froberg_probe(m: int, n: int, N: int = 20) -> Optional[int]:
    """First index <= N where 1/H(-t) has a negative coefficient, else None."""
    return first_negative(reciprocal_series(hh_series(m, n), N))


@dataclass(frozen=True)
class Classification:
    verdict: str
    reason: Optional[str] = None

    def __post_init__(self):
        if self.verdict not in (KOSZUL, NOT_KOSZUL, UNKNOWN):
            raise ValueError(f"bad verdict {self.verdict!r}")
        if (self.verdict == UNKNOWN) != (self.reason is None):
            raise ValueError("Unknown carries no reason; the other verdicts need one")

    def to_json(self) -> dict:
        return {"verdict": self.verdict, "reason": self.reason}


def _koszul_rules(m: int, n: int) -> List[str]:
    """Every Koszul rule that fires, in precedence order."""
    out = []
    if m == 1:
        out.append(TAG_LINEAR)
    if 2 * m <= n + 1:
        out.append(TAG_STAIRCASE)
    if (m % 2 == 0 and m + 1 <= n) or (m % 2 == 1 and m + 2 <= n):
        out.append(TAG_TWO_BLOCK)
    if (m, n) == (5, 6):
        out.append(TAG_FIVE_SIX)
    return out


def _non_koszul_rules(m: int, n: int) -> List[str]:
    out = []
    if (m, n) == (3, 4):
        out.append(TAG_CUBIC)
    if threshold_exceeded(m, n):
        out.append(TAG_THRESHOLD)
    if regularity_alpha(m, n) >= 3:
        out.append(TAG_NON_QUADRATIC)
    return out


def classify(m: int, n: int) -> Classification:
    """Koszul verdict for the coordinate ring of m generic lines in P^n."""
    if m < 1 or n < 2:
        raise ValueError("need m >= 1 and n >= 2")
    if n == 2:
        # m lines in the plane: a single form of degree m
        return Classification(KOSZUL if m <= 2 else NOT_KOSZUL, TAG_HYPERSURFACE)
    yes = _koszul_rules(m, n)
    if yes:
        return Classification(KOSZUL, yes[0])
    no = _non_koszul_rules(m, n)
    if no:
        return Classification(NOT_KOSZUL, no[0])
    return Classification(UNKNOWN)


def rules_conflict(m: int, n: int) -> bool:
    """True when both a Koszul and a non-Koszul rule would fire."""
    if n == 2:
        return False
    return bool(_koszul_rules(m, n)) and bool(_non_koszul_rules(m, n))


def classification_grid(max_lines: int, max_dim: int) -> Dict[Tuple[int, int], Classification]:
    return {(m, n): classify(m, n)
            for m in range(1, max_lines + 1) for n in range(2, max_dim + 1)}


_SHORT = {KOSZUL: "K", NOT_KOSZUL: "N", UNKNOWN: "?"}


def render_grid(grid: Dict[Tuple[int, int], Classification]) -> str:
    """Rows are dimensions n, columns are line counts m."""
    ms = sorted({m for m, _ in grid})
    ns = sorted({n for _, n in grid})
    lines = ["n\\m " + " ".join(f"{m:>2}" for m in ms)]
    for n in ns:
        lines.append(f"{n:>3} " + " ".join(f"{_SHORT[grid[(m, n)].verdict]:>2}" for m in ms))
    lines.append("K = Koszul, N = not Koszul, ? = unknown")
    return "\n".join(lines)


# -- filtrations -----------------------------------------------------------------

class MalformedFiltration(ValueError):
    """The filtration data violates the structural rules before any algebra runs."""


class ConstructionError(RuntimeError):
    """A constructed step has a colon that is not a member (reseed or report)."""


@dataclass
class Step:
    ideal: str
    sub: str
    gen: Polynomial
    colon: str


@dataclass
class Filtration:
    """Ideals generated by linear forms, each non-zero one with a step certificate."""

    nvars: int
    ideals: Dict[str, List[Polynomial]]
    steps: List[Step]
    meta: Dict = field(default_factory=dict)

    def __len__(self):
        return len(self.ideals)

    def step_for(self, ideal_id: str) -> Optional[Step]:
        return next((s for s in self.steps if s.ideal == ideal_id), None)

    def to_json(self) -> dict:
        return {
            "n": self.nvars - 1,
            "ideals": [{"id": k, "gens": [format_polynomial(g) for g in v]}
                       for k, v in self.ideals.items()],
            "steps": [{"ideal": s.ideal, "sub": s.sub, "gen": format_polynomial(s.gen),
                       "colon": s.colon} for s in self.steps],
        }

    @classmethod
    def from_json(cls, data: dict, nvars: Optional[int] = None) -> "Filtration":
        if nvars is None:
            if "n" not in data:
                raise MalformedFiltration("the ambient dimension is unknown")
            nvars = int(data["n"]) + 1
        try:
            ideals: Dict[str, List[Polynomial]] = {}
            for entry in data["ideals"]:
                key = str(entry["id"])
                if key in ideals:
                    raise MalformedFiltration(f"duplicate ideal id {key}")
                ideals[key] = [parse_polynomial(s, nvars) for s in entry["gens"]]
            steps = [Step(str(s["ideal"]), str(s["sub"]), parse_polynomial(s["gen"], nvars),
                          str(s["colon"])) for s in data["steps"]]
        except (KeyError, TypeError) as exc:
            raise MalformedFiltration(f"bad filtration record: {exc}") from exc
        return cls(nvars, ideals, steps)


def _span_rank(forms: Sequence[Polynomial]) -> int:
    rows = [f.coefficient_vector() for f in forms if f]
    return rank_exact(rows) if rows else 0


def validate_filtration(J: Ideal, F: Filtration) -> Tuple[str, str]:
    """Structural checks; returns the ids of the zero and the maximal member."""
    nv = F.nvars
    if J.nvars != nv:
        raise MalformedFiltration(f"filtration lives in {nv} variables, the ring in {J.nvars}")
    for key, gens in F.ideals.items():
        for g in gens:
            if g and not g.is_linear_form():
                raise MalformedFiltration(f"ideal {key}: generator {format_polynomial(g)} is not linear")
    for s in F.steps:
        if not s.gen.is_linear_form():
            raise MalformedFiltration(f"step for {s.ideal}: generator is not linear")
        for ref in (s.ideal, s.sub, s.colon):
            if ref not in F.ideals:
                raise MalformedFiltration(f"step for {s.ideal} names missing member {ref}")
    linear_part = [g for g in J.gb().elements if g.is_linear_form()] if not J.is_zero() else []
    base = _span_rank(linear_part)
    zero = [k for k, g in F.ideals.items() if _span_rank(list(g) + linear_part) == base]
    full = [k for k, g in F.ideals.items() if _span_rank(list(g) + linear_part) == nv]
    if not zero:
        raise MalformedFiltration("the zero ideal is not a member")
    if not full:
        raise MalformedFiltration("the maximal ideal is not a member")
    stepped = {s.ideal for s in F.steps}
    missing = [k for k in F.ideals if k not in zero and k not in stepped]
    if missing:
        raise MalformedFiltration(f"members without a step: {', '.join(missing)}")
    return zero[0], full[0]


@dataclass
class StepResult:
    ideal: str
    sub: str
    colon: str
    cyclic: bool
    colon_ok: bool

    @property
    def ok(self) -> bool:
        return self.cyclic and self.colon_ok


@dataclass
class FiltrationReport:
    members: int
    distinct: int
    steps: List[StepResult]
    zero_id: str
    maximal_id: str
    label: str = ""

    @property
    def accepted(self) -> bool:
        return all(s.ok for s in self.steps)

    def failures(self) -> List[dict]:
        out = []
        for s in self.steps:
            if not s.cyclic:
                out.append({"ideal": s.ideal, "sub": s.sub, "check": "sub + gen != ideal"})
            if not s.colon_ok:
                out.append({"ideal": s.ideal, "sub": s.sub, "colon": s.colon,
                            "check": "sub : ideal != colon"})
        return out

    def to_json(self) -> dict:
        return {"label": self.label, "accepted": self.accepted, "members": self.members,
                "distinct": self.distinct, "steps": len(self.steps),
                "zero": self.zero_id, "maximal": self.maximal_id, "failures": self.failures()}


class _Lifts:
    """J + (linear forms) per member id, with their Gröbner bases cached."""

    def __init__(self, J: Ideal, F: Filtration):
        self.J, self.F = J, F
        self.cache: Dict[str, Ideal] = {}

    def __call__(self, key: str) -> Ideal:
        hit = self.cache.get(key)
        if hit is None:
            hit = self.plus(self.F.ideals[key])
            self.cache[key] = hit
        return hit

    def plus(self, forms: Iterable[Polynomial]) -> Ideal:
        return Ideal(list(self.J.generators) + [f for f in forms if f], self.J.nvars)


def verify_filtration(J: Ideal, F: Filtration, colon_method: str = "auto",
                      label: str = "") -> FiltrationReport:
    """Check every step: J+sub+(gen) = J+ideal and (J+sub):(J+ideal) = J+colon."""
    zero_id, full_id = validate_filtration(J, F)
    lift = _Lifts(J, F)
    results = []
    for s in F.steps:
        big = lift(s.ideal)
        small = lift(s.sub)
        cyclic = small.issubset(big) and lift.plus(list(F.ideals[s.sub]) + [s.gen]) == big
        # generators of the ideal already in the sub-ideal contribute S to the colon
        extra = [g for g in F.ideals[s.ideal] if g and not small.contains(g)]
        if not extra:
            colon_ok = False
        else:
            parts = [colon(small, g, method=colon_method) for g in extra]
            acc = parts[0]
            for P in parts[1:]:
                acc = intersect(acc, P)
            colon_ok = acc == lift(s.colon)
        results.append(StepResult(s.ideal, s.sub, s.colon, cyclic, colon_ok))
    distinct: List[Ideal] = []
    for key in F.ideals:
        I = lift(key)
        if not any(I == D for D in distinct):
            distinct.append(I)
    return FiltrationReport(len(F.ideals), len(distinct), results, zero_id, full_id, label)


def verify_filtration_across(build: Callable[[object], Tuple[Ideal, Filtration]],
                             seeds: Sequence, colon_method: str = "auto") -> List[FiltrationReport]:
    """Run the verifier once per seed or specialization."""
    reports = []
    for s in seeds:
        J, F = build(s)
        reports.append(verify_filtration(J, F, colon_method, label=str(s)))
    return reports


# -- the bundled 57-member filtration for five lines in P^6 ---------------------------

_TEMPLATE_TERM = re.compile(r"^\s*([+-]?)\s*(?:(1/a|1/b|a|b)\s*\*\s*)?x(\d+)\s*$")


def _instantiate(text: str, nvars: int, values: Dict[str, object]) -> Polynomial:
    coeffs = [mpq(0)] * nvars
    for term in re.findall(r"[+-]?[^+-]+", text.replace(" ", "")):
        match = _TEMPLATE_TERM.match(term)
        if not match:
            raise MalformedFiltration(f"cannot read template term {term!r}")
        sign, sym, idx = match.groups()
        c = mpq(1) if sym is None else mpq(values[sym])
        coeffs[int(idx)] += -c if sign == "-" else c
    return Polynomial.linear(coeffs)


def _template_data() -> dict:
    path = resources.files("linea") / "data" / "five_p6_filtration.json"
    return json.loads(path.read_text())


def five_p6_filtration(a=None, b=None) -> Filtration:
    """The 57-member filtration for five lines in P^6, for parameters (a, b)."""
    a = DEFAULT_A if a is None else mpq(a)
    b = DEFAULT_B if b is None else mpq(b)
    if a == 0 or b == 0:
        raise ValueError("parameters must be nonzero")
    values = {"a": a, "b": b, "1/a": 1 / a, "1/b": 1 / b}
    data = _template_data()
    nv = int(data["n"]) + 1
    ideals = {e["id"]: [_instantiate(g, nv, values) for g in e["gens"]] for e in data["ideals"]}
    steps = [Step(s["ideal"], s["sub"], _instantiate(s["gen"], nv, values), s["colon"])
             for s in data["steps"]]
    return Filtration(nv, ideals, steps, {"kind": "five_p6", "a": str(a), "b": str(b)})


def specializations(count: int, seed: int = 0) -> List[Tuple[object, object]]:
    """(a, b) pairs: the defaults first, then seeded ratios of random primes."""
    out = [(DEFAULT_A, DEFAULT_B)]
    rng = random.Random(f"specialize:{seed}")
    while len(out) < count:
        p, q, r, s = (int(gmpy2.next_prime(rng.randint(100, 10 ** 4))) for _ in range(4))
        if p == q or r == s:
            continue
        sign = rng.choice((1, -1))
        out.append((mpq(p, q) * sign, mpq(r, s)))
    return out


def five_p6_case(a=None, b=None) -> Tuple[Ideal, Filtration]:
    A = named("five_p6", a, b)
    return defining_ideal(A), five_p6_filtration(a, b)


# -- constructors -----------------------------------------------------------------

def _basis_extension(start: Sequence[Polynomial], pool: Sequence[Polynomial]) -> List[Polynomial]:
    """Members of pool that, added greedily, extend the span of start."""
    chosen: List[Polynomial] = []
    r = _span_rank(start)
    for f in pool:
        nr = _span_rank(list(start) + chosen + [f])
        if nr > r:
            chosen.append(f)
            r = nr
    return chosen


def linear_colon_forms(J: Ideal, forms: Sequence[Polynomial], f: Polynomial) -> List[Polynomial]:
    """Basis of {l in S_1 : f*l in J + (forms)} by a degree-1 kernel computation."""
    nv = J.nvars
    base = Ideal(list(J.generators) + list(forms), nv)
    G = base.gb()
    x = [Polynomial.var(i, nv) for i in range(nv)]
    images = [G.normal_form(f * xi) for xi in x]
    support = sorted({m for p in images for m in p.terms})
    if not support:
        return x
    # columns = variables, rows = standard monomials of degree 2
    rows = [[p.terms.get(mono, 0) for p in images] for mono in support]
    R, piv = rref(rows, nv)
    free = [c for c in range(nv) if c not in piv]
    out = []
    for fc in free:
        vec = [mpq(0)] * nv
        vec[fc] = mpq(1)
        for row, pc in zip(R, piv):
            vec[pc] = -mpq(row[fc])
        out.append(Polynomial.linear(vec))
    return out


def _chain_filtration(J: Ideal, chains: Sequence[Tuple[str, Sequence[Polynomial]]],
                      meta: dict) -> Filtration:
    """Members = prefixes of each chain; colons are computed and matched to members."""
    nv = J.nvars
    ideals: Dict[str, List[Polynomial]] = {"0": []}
    parent: Dict[str, Tuple[str, Polynomial]] = {}
    for name, chain in chains:
        prev = "0"
        for k in range(1, len(chain) + 1):
            key = "m" if _span_rank(chain[:k]) == nv else f"{name}{k}"
            if key not in ideals:
                ideals[key] = list(chain[:k])
                parent[key] = (prev, chain[k - 1])
            prev = key
            if key == "m":
                break
    lifts = {k: Ideal(list(J.generators) + g, nv) for k, g in ideals.items()}
    sizes = {k: _span_rank(g) for k, g in ideals.items()}
    steps = []
    for key, (sub, gen) in parent.items():
        C = colon(lifts[sub], gen)
        lin = [g for g in C.gb().elements if g.is_linear_form()]
        target = next((k for k, I in lifts.items() if sizes[k] == len(lin) and I == C), None)
        if target is None:
            raise ConstructionError(
                f"colon at step {sub} -> {key} is not a member "
                f"({len(lin)} linear generators)")
        steps.append(Step(key, sub, gen, target))
    return Filtration(nv, ideals, steps, meta)


def monomial_filtration(J: Ideal) -> Filtration:
    """Variable-generated ideals closed under colons, for a squarefree monomial J of degree <= 2.

    Variables lying in J are zero in R and are left out of every member.
    """
    nv = J.nvars
    for g in J.generators:
        if len(g.terms) != 1 or g.degree() > 2 or max(next(iter(g.terms))) > 1:
            raise ValueError("need an ideal generated by squarefree monomials of degree <= 2")
    dead = {next(iter(g.terms)).index(1) for g in J.generators if g.degree() == 1}
    universe = frozenset(range(nv)) - dead
    neighbours = {j: set() for j in range(nv)}
    for g in J.generators:
        if g.degree() == 2:
            i, j = [k for k, e in enumerate(next(iter(g.terms))) if e]
            neighbours[i].add(j)
            neighbours[j].add(i)
    x = [Polynomial.var(i, nv) for i in range(nv)]

    def name(s):
        if s == universe:
            return "m"
        return "x" + ".".join(map(str, sorted(s))) if s else "0"

    todo = [universe]
    seen: Dict[frozenset, Step] = {}
    members = {frozenset(), universe}
    while todo:
        V = todo.pop()
        if V in seen or not V:
            continue
        j = max(V)
        sub = V - {j}
        col = sub | (neighbours[j] - dead)
        seen[V] = Step(name(V), name(sub), x[j], name(col))
        for W in (sub, col):
            members.add(W)
            if W not in seen:
                todo.append(W)
    order = sorted(members, key=lambda s: (len(s), sorted(s)))
    ideals = {name(s): [x[i] for i in sorted(s)] for s in order}
    steps = [seen[s] for s in order if s]
    return Filtration(nv, ideals, steps, {"kind": "monomial"})


def thm43_band(m: int, n: int) -> bool:
    if m % 2 == 0:
        return m + 1 <= n <= 2 * (m - 1)
    return m + 2 <= n <= 2 * (m - 1)


def two_block_hypotheses(m: int, n: int) -> bool:
    """m >= 2 and n >= m+1 (m even) or n >= m+2 (m odd)."""
    return m >= 2 and n >= (m + 1 if m % 2 == 0 else m + 2)


@dataclass
class TwoBlockData:
    arrangement: LineArrangement
    J: Ideal
    l: List[Polynomial]
    a: int
    b: int


def two_block(m: int, n: int, seed: int) -> TwoBlockData:
    arr, l, a, b = split_staircase(m, n, seed)
    return TwoBlockData(arr, defining_ideal(arr), l, a, b)


def construct_filtration_thm43(m: int, n: int, seed: int = 0,
                               layout: str = "auto") -> Tuple[Ideal, Filtration]:
    """Build (J, F): the arrangement ideal and its Koszul filtration.

    In the two-block band, a = ceil(m/2) lines are coordinate staircase lines
    in x and b = floor(m/2) lines are staircase lines in a random basis l.
    Two chains are used:

        x_0, ..., x_{n-2a}, l_0, y..., l_1, u...
        l_0, ..., l_{n-2b}, x_0, z..., x_1, w...

    where the y's (z's) complete the linear part of (J+(l_0)):(l_1)
    (resp. (J+(x_0)):(x_1)) and u's, w's complete a basis of S_1.
    With 2m <= n+1 the configuration is monomial and the variable filtration
    is returned instead, unless ``layout="two-block"`` forces the chains.
    """
    if m < 2 or n < 3:
        raise ValueError("need m >= 2 and n >= 3")
    if layout not in ("auto", "two-block", "monomial"):
        raise ValueError(f"unknown layout {layout!r}")
    if layout == "monomial" or (layout == "auto" and 2 * m <= n + 1):
        arr = staircase(m, n)
        J = defining_ideal(arr)
        return J, monomial_filtration(J)
    if not two_block_hypotheses(m, n):
        raise ValueError(f"(m, n) = ({m}, {n}) is outside the two-block range")
    data = two_block(m, n, seed)
    J, l, a, b = data.J, data.l, data.a, data.b
    nv = n + 1
    x = [Polynomial.var(i, nv) for i in range(nv)]

    head_x = x[:n - 2 * a + 1]
    ys = linear_colon_forms(J, [l[0]], l[1])
    chain_x = head_x + [l[0]]
    chain_x += _basis_extension(chain_x, ys)
    if _span_rank(chain_x + [l[1]]) == _span_rank(chain_x):
        raise ConstructionError("l_1 lies in the span of the y forms; reseed")
    chain_x += [l[1]]
    chain_x += _basis_extension(chain_x, x)

    head_l = l[:n - 2 * b + 1]
    zs = linear_colon_forms(J, [x[0]], x[1])
    chain_l = head_l + [x[0]]
    chain_l += _basis_extension(chain_l, zs)
    if _span_rank(chain_l + [x[1]]) == _span_rank(chain_l):
        raise ConstructionError("x_1 lies in the span of the z forms; reseed")
    chain_l += [x[1]]
    chain_l += _basis_extension(chain_l, x)

    meta = {"kind": "two-block", "m": m, "n": n, "seed": seed, "blocks": [a, b]}
    return J, _chain_filtration(J, [("X", chain_x), ("L", chain_l)], meta)


# -- intermediate Hilbert series of the two-block construction ------------------------

def _reg1(k: int, denom: int) -> RationalFunction1:
    return RationalFunction1([1, 2 * (k - 1), 1 - k], denom)


@dataclass
class SeriesClaim:
    name: str
    expected: RationalFunction1
    computed: RationalFunction1
    values_ok: bool

    @property
    def ok(self) -> bool:
        return self.expected == self.computed and self.values_ok

    def to_json(self) -> dict:
        return {"name": self.name, "expected": format_rational_function(self.expected),
                "computed": format_rational_function(self.computed), "ok": self.ok}


@dataclass
class ClaimsReport:
    m: int
    n: int
    claims: List[SeriesClaim]
    equalities: Dict[str, bool]

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.claims) and all(self.equalities.values())

    def mismatches(self) -> List[dict]:
        return [c.to_json() for c in self.claims if not c.ok]

    def to_json(self) -> dict:
        return {"m": self.m, "n": self.n, "ok": self.ok,
                "claims": [c.to_json() for c in self.claims], "equalities": self.equalities}


def hilbert_claims_check(m: int, n: int, seed: int = 0, degree: int = 4) -> ClaimsReport:
    """Recompute the intermediate series of the two-block construction.

    Each expected series comes from closed forms and additivity along
    0 -> S/(C:f)(-1) -> S/C -> S/(C+f) -> 0.  Each computed series is read off
    the initial ideal, and its values in degrees <= ``degree`` are compared
    with ranks of graded pieces.  Needs n+1 <= 2m: otherwise the lines lie
    in a hyperplane and J contains linear forms.
    """
    if not two_block_hypotheses(m, n) or n + 1 > 2 * m:
        raise ValueError(f"(m, n) = ({m}, {n}) is outside the two-block range")
    data = two_block(m, n, seed)
    J, l, a, b = data.J, data.l, data.a, data.b
    nv = n + 1
    x = [Polynomial.var(i, nv) for i in range(nv)]
    lines = data.arrangement.ideals()
    K = intersect_lines(lines[:a])
    I = intersect_lines(lines[a:])
    t = RationalFunction1([0, 1], 0)
    claims: List[SeriesClaim] = []

    def check(name: str, ideal: Ideal, expected: RationalFunction1) -> RationalFunction1:
        got = hilbert_series(ideal)
        exp_vals = series_expand(got, degree)
        ok = all(hilbert_linalg(ideal, d) == exp_vals[d] for d in range(degree + 1))
        claims.append(SeriesClaim(name, expected, got, ok))
        return got

    def plus(base: Ideal, forms: Sequence[Polynomial]) -> Ideal:
        return Ideal(list(base.generators) + list(forms), nv)

    H_I = check("S/I", I, _reg1(b, 2))
    H_K = check("S/K", K, _reg1(a, 2))
    check("S/(I+(x0))", plus(I, [x[0]]), _reg1(b, 1))
    check("S/(I+(x1))", plus(I, [x[1]]), _reg1(b, 1))
    check("S/((I+(x0)) meet (I+(x1)))", intersect(plus(I, [x[0]]), plus(I, [x[1]])),
          RationalFunction1([1, 2 * b - 1], 1))
    check("S/(I+(x0,x1))", plus(I, x[:2]), RationalFunction1([1, 2 * (b - 1)], 0))
    check("S/(K+(l0,l1))", plus(K, l[:2]), RationalFunction1([1, 2 * (a - 1)], 0))
    H_cx = check("S/((J+(x0)):(x1))", colon(plus(J, [x[0]]), x[1]), RationalFunction1([1, b - 1], 1))
    H_cl = check("S/((J+(l0)):(l1))", colon(plus(J, [l[0]]), l[1]), RationalFunction1([1, a - 1], 1))
    H_J = check("S/J", J, hh_series(m, n))
    check("S/(J+(x0))", plus(J, [x[0]]), H_J - t * H_I)
    H_Jx01 = check("S/(J+(x0,x1))", plus(J, x[:2]), H_J - t * H_I - t * H_cx)
    H_Jl01 = H_J - t * H_K - t * H_cl
    claim45 = H_Jx01 + H_Jl01 - H_J
    if a == b:
        k = a
        if H_J != RationalFunction1([1, n - 1, 6 * k - 2 * n - 1, n + 1 - 4 * k], 2):
            claims.append(SeriesClaim("regularity-2 closed form of S/J", RationalFunction1(
                [1, n - 1, 6 * k - 2 * n - 1, n + 1 - 4 * k], 2), H_J, True))
        claim45 = RationalFunction1([1, n - 3], 0)
    check("S/(J+(x0,x1,l0,l1))", plus(J, x[:2] + l[:2]), claim45)
    for i in range(2, n - 2 * a + 1):
        expected = H_Jx01 - RationalFunction1([0, i - 1], 0)
        if a == b:
            k = a
            expected = RationalFunction1([1, n - i - 2, 3 * k - 2 * n + 2 * i + 1, n - 2 * k - i], 2)
        check(f"S/(J+(x0..x{i}))", plus(J, x[:i + 1]), expected)
    equalities = {
        "J+(x0..x_{n-2a}) = K": plus(J, x[:n - 2 * a + 1]) == K,
        "J+(l0..l_{n-2b}) = I": plus(J, l[:n - 2 * b + 1]) == I,
        "J:(x0) = I": colon(J, x[0]) == I,
        "J:(l0) = K": colon(J, l[0]) == K,
    }
    return ClaimsReport(m, n, claims, equalities)


def intersect_lines(ideals: Sequence[Ideal]) -> Ideal:
    acc = ideals[0]
    for P in ideals[1:]:
        acc = intersect(acc, P)
    return acc


# -- rejection harness for non-Koszul rings ----------------------------------------

def _canonical_span(forms: Sequence[Polynomial], nv: int) -> Tuple:
    rows = [f.coefficient_vector() for f in forms if f]
    if not rows:
        return ()
    R, piv = rref(rows, nv)
    return tuple(tuple(mpq(c) for c in R[i]) for i in range(len(piv)))


def candidate_filtration(J: Ideal, order: Sequence[Polynomial], max_members: int = 64) -> Optional[Filtration]:
    """A filtration candidate built from a chain of linear forms.

    Colon targets are claimed to be the linear parts of the true colons; every
    claimed member gets its own chain step.  Returns None if the closure grows
    past ``max_members``.
    """
    nv = J.nvars
    ids: Dict[Tuple, str] = {(): "0"}
    ideals: Dict[str, List[Polynomial]] = {"0": []}
    steps: List[Step] = []
    todo: List[List[Polynomial]] = []

    def register(forms: List[Polynomial]) -> str:
        key = _canonical_span(forms, nv)
        if key not in ids:
            ids[key] = f"C{len(ids)}"
            ideals[ids[key]] = list(forms)
            todo.append(list(forms))
        return ids[key]

    register(list(order))
    while todo:
        forms = todo.pop(0)
        if len(ideals) > max_members:
            return None
        # a chain through the forms, one step per prefix
        prev = "0"
        for k in range(1, len(forms) + 1):
            prefix = forms[:k]
            key = register(prefix)
            if any(s.ideal == key for s in steps):
                prev = key
                continue
            C = colon(Ideal(list(J.generators) + forms[:k - 1], nv), forms[k - 1])
            linear = [g for g in C.gb().elements if g.is_linear_form()]
            target = register(linear)
            steps.append(Step(key, prev, forms[k - 1], target))
            prev = key
    return Filtration(nv, ideals, steps, {"kind": "candidate"})


def rejection_harness(J: Ideal, count: int = 5, seed: int = 0) -> List[FiltrationReport]:
    """Verify candidate filtrations built from seeded orderings of linear forms."""
    nv = J.nvars
    rng = random.Random(f"candidates:{seed}")
    x = [Polynomial.var(i, nv) for i in range(nv)]
    reports = []
    tries = 0
    while len(reports) < count and tries < 10 * count:
        tries += 1
        if tries % 2:
            order = x[:]
            rng.shuffle(order)
        else:
            rows = [[rng.randint(-3, 3) for _ in range(nv)] for _ in range(nv)]
            if rank_exact(rows) < nv:
                continue
            order = [Polynomial.linear(r) for r in rows]
        F = candidate_filtration(J, order)
        if F is None:
            continue
        reports.append(verify_filtration(J, F, label=f"candidate {tries}"))
    return reports
