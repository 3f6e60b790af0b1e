"""Graded Betti numbers of S/J from Koszul homology, and a bounded resolution of
the residue field over R = S/J.

beta_{i,j}(S/J) = dim H_i(K(x_0..x_n) ⊗ S/J)_j, where the degree-j strand of
the Koszul complex is  ... -> Λ^i ⊗ R_{j-i} -> Λ^{i-1} ⊗ R_{j-i+1} -> ...
Each cell needs the ranks of the two adjacent differentials.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from itertools import combinations
from math import comb
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from .exactnum import poly_mul, one_minus_t_power
from .graded import Field, GradedQuotient
from .ideals import GroebnerBasis, Ideal
from .linalg import default_primes


class TruncatedTableError(ValueError):
    pass


@dataclass
class BettiTable:
    entries: Dict[Tuple[int, int], int]
    imax: int
    jmax: int
    truncated: bool = False
    path: str = "exact"
    primes: Tuple[int, ...] = ()

    def __getitem__(self, key: Tuple[int, int]) -> int:
        return self.entries.get(key, 0)

    def nonzero(self) -> Dict[Tuple[int, int], int]:
        return {k: v for k, v in sorted(self.entries.items()) if v}

    def column(self, i: int) -> Dict[int, int]:
        return {j: v for (a, j), v in self.nonzero().items() if a == i}

    def to_json(self) -> dict:
        return {
            "imax": self.imax,
            "jmax": self.jmax,
            "truncated": self.truncated,
            "path": self.path,
            "entries": [[i, j, v] for (i, j), v in self.nonzero().items()],
        }

    @classmethod
    def from_json(cls, data: dict) -> "BettiTable":
        entries = {(int(i), int(j)): int(v) for i, j, v in data["entries"]}
        return cls(entries, int(data["imax"]), int(data["jmax"]), bool(data.get("truncated", False)),
                   data.get("path", "exact"))

    def render(self) -> str:
        """Macaulay-style layout: columns i, rows j - i, dashes for zero."""
        nz = self.nonzero()
        if not nz:
            return "total:"
        top_i = max(i for i, _ in nz)
        top_r = max(j - i for i, j in nz)
        cols = list(range(top_i + 1))
        totals = [sum(v for (i, _), v in nz.items() if i == c) for c in cols]
        rows = []
        for r in range(top_r + 1):
            rows.append([nz.get((c, c + r), 0) for c in cols])
        width = max(len(str(x)) for x in totals + [v for row in rows for v in row]) + 1
        label_w = max(len("total:"), len(f"{top_r}:"))
        lines = [" " * label_w + "".join(str(c).rjust(width) for c in cols),
                 "total:".rjust(label_w) + "".join(str(t).rjust(width) for t in totals)]
        for r, row in enumerate(rows):
            cells = "".join(("." if v == 0 else str(v)).rjust(width) for v in row)
            lines.append(f"{r}:".rjust(label_w) + cells)
        return "\n".join(lines)


def pdim_of(table: BettiTable) -> int:
    if table.truncated:
        raise TruncatedTableError("table is truncated; enlarge imax/jmax")
    nz = table.nonzero()
    return max((i for i, _ in nz), default=0)


def reg_of(table: BettiTable) -> int:
    if table.truncated:
        raise TruncatedTableError("table is truncated; enlarge imax/jmax")
    nz = table.nonzero()
    return max((j - i for i, j in nz), default=0)


# -- Koszul homology ------------------------------------------------------------

def koszul_differential(R: GradedQuotient, i: int, j: int) -> np.ndarray:
    """Matrix of Λ^i ⊗ R_{j-i} -> Λ^{i-1} ⊗ R_{j-i+1}."""
    nv = R.nvars
    e = j - i
    f = R.field
    if i <= 0 or i > nv or e < 0:
        return f.zeros((0, 0))
    src = list(combinations(range(nv), i))
    dst = list(combinations(range(nv), i - 1))
    dst_pos = {s: k for k, s in enumerate(dst)}
    ds, dt = R.dim(e), R.dim(e + 1)
    D = f.zeros((len(dst) * dt, len(src) * ds))
    if ds == 0 or dt == 0:
        return D
    for c, I in enumerate(src):
        for r, k in enumerate(I):
            face = I[:r] + I[r + 1:]
            row0 = dst_pos[face] * dt
            M = R.mult(k, e)
            if r % 2:
                M = (-M) % f.p if f.p is not None else -M
            D[row0:row0 + dt, c * ds:(c + 1) * ds] = M
    return D


def chain_dim(R: GradedQuotient, i: int, j: int) -> int:
    if i < 0 or i > R.nvars or j < i:
        return 0
    return comb(R.nvars, i) * R.dim(j - i)


def _betti_over(R: GradedQuotient, imax: int, jmax: int) -> Dict[Tuple[int, int], int]:
    ranks: Dict[Tuple[int, int], int] = {}

    def rk(i, j):
        if (i, j) not in ranks:
            if i <= 0 or i > R.nvars or j < i:
                ranks[(i, j)] = 0
            else:
                ranks[(i, j)] = R.field.rank(koszul_differential(R, i, j))
        return ranks[(i, j)]

    out = {}
    for j in range(jmax + 1):
        for i in range(min(imax, j) + 1):
            b = chain_dim(R, i, j) - rk(i, j) - rk(i + 1, j)
            if b:
                out[(i, j)] = b
    return out


def _hilbert_numerator(R: GradedQuotient, top: int) -> List[int]:
    # K(t) = H(t)·(1-t)^{nvars}, truncated to degree top
    values = [R.dim(d) for d in range(top + 1)]
    return poly_mul(values, one_minus_t_power(R.nvars))[:top + 1]


def graded_betti(J: Ideal, imax: Optional[int] = None, jmax: Optional[int] = None,
                 exact: bool = False, primes: Optional[Sequence[int]] = None,
                 gb: Optional[GroebnerBasis] = None) -> BettiTable:
    """Graded Betti numbers beta_{i,j}(S/J) for i <= imax, j <= jmax.

    The modular path computes the table over two independent primes and
    accepts it only if they agree; otherwise the exact path runs.
    """
    J.require_homogeneous()
    nv = J.nvars
    imax = nv if imax is None else imax
    if imax > nv:
        raise ValueError(f"imax must be at most {nv}")
    if jmax is None:
        raise ValueError("jmax is required for a general ideal")
    G = None if J.is_zero() else (gb or J.gb())
    if exact:
        R = GradedQuotient(G, nv, Field(None))
        entries = _betti_over(R, imax, jmax)
        path, used = "exact", ()
    else:
        primes = list(primes) if primes else default_primes(2)
        tables = []
        R = None
        for p in primes:
            try:
                R = GradedQuotient(G, nv, Field(p))
                tables.append(_betti_over(R, imax, jmax))
            except ZeroDivisionError:
                tables.append(None)
        if all(t is not None for t in tables) and all(t == tables[0] for t in tables):
            entries, path, used = tables[0], "modular", tuple(primes)
        else:
            R = GradedQuotient(G, nv, Field(None))
            entries = _betti_over(R, imax, jmax)
            path, used = "exact", ()
    table = BettiTable(entries, imax, jmax, path=path, primes=used)
    table.truncated = _looks_truncated(table, R, nv)
    return table


def _looks_truncated(table: BettiTable, R: GradedQuotient, nv: int) -> bool:
    nz = table.nonzero()
    if table.imax < nv and any(i == table.imax for i, _ in nz):
        return True
    if any(j == table.jmax and i > 0 for i, j in nz):
        return True
    # the alternating sum of the table must reproduce the Hilbert numerator
    top = table.jmax
    numer = _hilbert_numerator(R, top)
    alt = [0] * (top + 1)
    for (i, j), v in nz.items():
        alt[j] += (-1) ** i * v
    if table.imax >= nv:
        return alt != numer
    return False


def betti_text(table: BettiTable) -> str:
    return table.render()


def mantero_inequality_check(table: BettiTable, g: int) -> bool:
    """True iff beta_{i,2i} <= C(g, i) for every i in 2..g.

    Koszul rings with g quadric generators satisfy this bound; the entry
    compared is the one in homological degree i on the i-th row of the table.
    """
    return all(table[(i, 2 * i)] <= comb(g, i) for i in range(2, g + 1))


# -- residue field over R ----------------------------------------------------

@dataclass
class ResidueResolution:
    betti: Dict[Tuple[int, int], int]
    steps: int
    cutoff: int
    field: str
    # generators whose degree equals the cutoff may have syzygies beyond it
    cutoff_reached: bool = False

    def __getitem__(self, key):
        return self.betti.get(key, 0)

    def nonlinear(self) -> Dict[Tuple[int, int], int]:
        return {k: v for k, v in self.betti.items() if v and k[0] != k[1]}


class _FreeModule:
    """A graded free R-module with generator degrees, element vectors per degree."""

    def __init__(self, R: GradedQuotient, degrees: List[int]):
        self.R = R
        self.degrees = degrees

    def offsets(self, j: int) -> List[int]:
        out, acc = [], 0
        for a in self.degrees:
            out.append(acc)
            acc += self.R.dim(j - a)
        out.append(acc)
        return out

    def dim(self, j: int) -> int:
        return self.offsets(j)[-1]

    def mult(self, k: int, j: int) -> np.ndarray:
        """x_k acting from degree j to degree j+1 (block diagonal)."""
        src, dst = self.offsets(j), self.offsets(j + 1)
        f = self.R.field
        M = f.zeros((dst[-1], src[-1]))
        for s, a in enumerate(self.degrees):
            e = j - a
            if e < 0 or src[s + 1] == src[s]:
                continue
            M[dst[s]:dst[s + 1], src[s]:src[s + 1]] = self.R.mult(k, e)
        return M


def _first_var(m) -> int:
    return next(i for i, e in enumerate(m) if e)


def _map_matrix(R: GradedQuotient, source: _FreeModule, target: _FreeModule,
                images: List[Dict[int, np.ndarray]], j: int) -> np.ndarray:
    """Matrix of the map F_source -> F_target in degree j.

    ``images[s]`` caches, for the s-th generator, the image of b·e_s for each
    degree; columns are ordered by generator then standard monomial b.
    """
    f = R.field
    cols = []
    for s, a in enumerate(source.degrees):
        e = j - a
        if e < 0:
            continue
        cols.append(_images_of(R, target, images[s], a, e))
    if not cols:
        return f.zeros((target.dim(j), 0))
    return np.concatenate(cols, axis=1)


def _images_of(R: GradedQuotient, target: _FreeModule, cache: Dict[int, np.ndarray],
               a: int, e: int) -> np.ndarray:
    # columns: images of b·g for standard b of degree e, g of degree a
    if e in cache:
        return cache[e]
    prev = _images_of(R, target, cache, a, e - 1)
    prev_basis = {m: i for i, m in enumerate(R.basis(e - 1))}
    f = R.field
    out = f.zeros((target.dim(a + e), R.dim(e)))
    mults = {}
    for c, b in enumerate(R.basis(e)):
        k = _first_var(b)
        b0 = tuple(x - (1 if i == k else 0) for i, x in enumerate(b))
        if k not in mults:
            mults[k] = target.mult(k, a + e - 1)
        out[:, c] = f.matmul(mults[k], prev[:, [prev_basis[b0]]])[:, 0]
    cache[e] = out
    return out


def residue_field_resolution(J: Ideal, steps: int = 3, cutoff: int = 5,
                             exact: bool = False, prime: Optional[int] = None,
                             gb: Optional[GroebnerBasis] = None) -> ResidueResolution:
    """Bounded minimal free resolution of the residue field over R = S/J.

    Returns beta^R_{i,j} for 0 <= i <= steps and j <= cutoff.  Generators are
    found degree by degree as the part of the syzygy space Z_j not reached by
    R_1·Z_{j-1}.
    """
    if cutoff < steps:
        raise ValueError("cutoff must be at least the number of steps")
    nv = J.nvars
    G = None if J.is_zero() else (gb or J.gb())
    field = Field(None) if exact else Field(prime or default_primes(1)[0])
    R = GradedQuotient(G, nv, field)
    betti: Dict[Tuple[int, int], int] = {(0, 0): 1}

    # F_1 = R(-1)^{nv} -> F_0 = R, generator images are the variables
    F0 = _FreeModule(R, [0])
    F1 = _FreeModule(R, [1] * nv)
    images = []
    for k in range(nv):
        col = field.zeros((R.dim(1), 1))
        col[R.basis(1).index(tuple(1 if i == k else 0 for i in range(nv))), 0] = 1
        images.append({0: col})
    betti[(1, 1)] = nv
    source, target = F1, F0
    reached = False
    for i in range(2, steps + 1):
        gens_deg: List[int] = []
        gens_img: List[Dict[int, np.ndarray]] = []
        prev_kernel = None
        for j in range(min(source.degrees), cutoff + 1):
            D = _map_matrix(R, source, target, images, j)
            Z = field.kernel(D, source.dim(j))
            if prev_kernel is not None and prev_kernel.shape[1]:
                parts = [field.matmul(source.mult(k, j - 1), prev_kernel) for k in range(nv)]
                lower = np.concatenate(parts, axis=1)
            else:
                lower = field.zeros((source.dim(j), 0))
            stacked = np.concatenate([lower, Z], axis=1)
            pivots = field.independent_columns(stacked)
            new = [c - lower.shape[1] for c in pivots if c >= lower.shape[1]]
            if new:
                betti[(i, j)] = len(new)
                if j == cutoff:
                    reached = True
                for c in new:
                    gens_deg.append(j)
                    gens_img.append({0: Z[:, [c]]})
            prev_kernel = Z
        # generator images live in source; the next map goes F_i -> F_{i-1}
        target = source
        source = _FreeModule(R, gens_deg)
        images = gens_img
        if not gens_deg:
            break
    return ResidueResolution(betti, steps, cutoff, repr(field), reached)


def betti_to_json_text(table: BettiTable) -> str:
    return json.dumps(table.to_json())
