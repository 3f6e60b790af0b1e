"""Graded pieces of a quotient ring R = S/J as explicit vector spaces.

R_d has the standard monomials of degree d (outside the initial ideal) as
basis.  Normal forms of all degree-d monomials are tabulated in increasing
monomial order: a nonstandard monomial m = u·LM(g) is rewritten as
-u·(g - LM(g)), whose monomials are all smaller than m and already known.

Coefficients live either in GF(p) (int64 numpy arrays, p < 2^31) or in Q
(numpy object arrays of mpq).
"""

from __future__ import annotations

from typing import Dict, List, Optional

import gmpy2
import numpy as np

from .ideals import GroebnerBasis
from .linalg import reduce_mod, rref, rref_mod_p
from .multipoly import GREVLEX, Monomial, mono_div, mono_divides, mono_mul, monomials_of_degree

mpq = gmpy2.mpq


class Field:
    """GF(p) when ``p`` is given, otherwise the rationals."""

    def __init__(self, p: Optional[int] = None):
        self.p = p

    @property
    def exact(self) -> bool:
        return self.p is None

    def __repr__(self):
        return "QQ" if self.p is None else f"GF({self.p})"

    def convert(self, c):
        return mpq(c) if self.p is None else reduce_mod(c, self.p)

    def zeros(self, shape):
        if self.p is None:
            out = np.empty(shape, dtype=object)
            out.fill(mpq(0))
            return out
        return np.zeros(shape, dtype=np.int64)

    def reduce(self, A):
        return A if self.p is None else A % self.p

    def matmul(self, A, B):
        if self.p is None:
            return A.dot(B)
        p = self.p
        if A.shape[1] == 0:
            return np.zeros((A.shape[0], B.shape[1]), dtype=np.int64)
        # split B into 16-bit halves so int64 accumulation cannot overflow
        lo = B & 0xFFFF
        hi = B >> 16
        return ((A.dot(hi) % p) * 65536 + A.dot(lo)) % p

    def rank(self, A) -> int:
        if A.shape[0] == 0 or A.shape[1] == 0:
            return 0
        if self.p is None:
            return len(rref(A.tolist(), A.shape[1])[1])
        if A.shape[0] > A.shape[1]:
            A = A.T
        return len(rref_mod_p(A, self.p)[1])

    def kernel(self, A, ncols: int):
        """Columns spanning {v : A v = 0}, as an (ncols x k) array."""
        if A.shape[0] == 0:
            K = self.zeros((ncols, ncols))
            for i in range(ncols):
                K[i, i] = 1 if self.p is not None else mpq(1)
            return K
        if self.p is None:
            R, piv = rref(A.tolist(), ncols)
        else:
            R, piv = rref_mod_p(A, self.p)
            R = R.tolist()
        pivset = set(piv)
        free = [c for c in range(ncols) if c not in pivset]
        K = self.zeros((ncols, len(free)))
        for col, f in enumerate(free):
            K[f, col] = 1 if self.p is not None else mpq(1)
            for row, pc in zip(R, piv):
                v = row[f]
                if v:
                    K[pc, col] = (-v) % self.p if self.p is not None else -v
        return K

    def independent_columns(self, A) -> List[int]:
        """Indices of a maximal set of independent columns, greedy from the left."""
        if A.shape[1] == 0 or A.shape[0] == 0:
            return []
        if self.p is None:
            return rref(A.tolist(), A.shape[1])[1]
        return rref_mod_p(A, self.p)[1]


class GradedQuotient:
    """The graded pieces R_0, R_1, ... of S/J for a homogeneous reduced Gröbner basis."""

    def __init__(self, G: Optional[GroebnerBasis], nvars: int, field: Field):
        self.nvars = nvars
        self.field = field
        self.order = GREVLEX
        self.basis_elems = []
        if G is not None:
            if G.order != GREVLEX:
                raise ValueError("graded quotient expects a grevlex basis")
            for e in G.elements:
                if not e.is_homogeneous():
                    raise ValueError("graded quotient needs a homogeneous ideal")
                lm = e.leading_monomial
                tail = [(m, field.convert(c)) for m, c in e.terms.items() if m != lm]
                self.basis_elems.append((lm, tail))
        self._basis: Dict[int, List[Monomial]] = {}
        self._index: Dict[int, Dict[Monomial, int]] = {}
        self._table: Dict[int, Dict[Monomial, np.ndarray]] = {}
        self._mult: Dict[tuple, np.ndarray] = {}

    def _build(self, d: int):
        f = self.field
        p = f.p
        mons = list(reversed(monomials_of_degree(self.nvars - 1, d, self.order)))
        std = [m for m in mons if not any(mono_divides(lm, m) for lm, _ in self.basis_elems)]
        index = {m: i for i, m in enumerate(std)}
        size = len(std)
        table: Dict[Monomial, np.ndarray] = {}
        for m in mons:
            if m in index:
                v = f.zeros(size)
                v[index[m]] = 1 if p is not None else mpq(1)
                table[m] = v
                continue
            lm, tail = next((lm, t) for lm, t in self.basis_elems if mono_divides(lm, m))
            u = mono_div(m, lm)
            acc = f.zeros(size)
            for tm, c in tail:
                w = table[mono_mul(tm, u)]
                if p is None:
                    acc = acc - c * w
                else:
                    acc = (acc - c * w) % p
            table[m] = acc
        self._basis[d] = std
        self._index[d] = index
        self._table[d] = table

    def basis(self, d: int) -> List[Monomial]:
        """Standard monomials of degree d, in increasing order."""
        if d < 0:
            return []
        if d not in self._basis:
            self._build(d)
        return self._basis[d]

    def dim(self, d: int) -> int:
        return len(self.basis(d))

    def normal_vector(self, m: Monomial) -> np.ndarray:
        d = sum(m)
        self.basis(d)
        return self._table[d][m]

    def mult(self, k: int, d: int) -> np.ndarray:
        """Matrix of multiplication by x_k from R_d to R_{d+1} (columns = images)."""
        key = (k, d)
        M = self._mult.get(key)
        if M is None:
            src = self.basis(d)
            self.basis(d + 1)
            M = self.field.zeros((self.dim(d + 1), len(src)))
            e = tuple(1 if i == k else 0 for i in range(self.nvars))
            for j, b in enumerate(src):
                M[:, j] = self._table[d + 1][mono_mul(b, e)]
            self._mult[key] = M
        return M
