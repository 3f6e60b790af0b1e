"""Dense linear algebra over Q and over prime fields.

Exact rank uses fraction-free (Bareiss) elimination on an integer copy of
the matrix; kernels come from a reduced row echelon form over ``mpq``.
The modular path reduces a rational matrix modulo several random primes and
eliminates with numpy when the prime fits in 31 bits.  A modular rank never
exceeds the rational rank, so agreement across independent primes is taken
as the answer and disagreement falls back to the exact route.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from math import lcm
from typing import List, Optional, Sequence, Tuple

import gmpy2
import numpy as np

mpq = gmpy2.mpq

Matrix = List[List[object]]

NUMPY_PRIME_LIMIT = 1 << 31


@dataclass(frozen=True)
class RankResult:
    rank: int
    path: str  # "exact" or "modular"
    primes: Tuple[int, ...] = ()


def random_prime(bits: int, rng: random.Random) -> int:
    lo = 1 << (bits - 1)
    return int(gmpy2.next_prime(rng.randrange(lo, 2 * lo - 1)))


def default_primes(count: int = 3, bits: int = 31, seed: int = 0x5EED) -> List[int]:
    rng = random.Random(seed)
    out: List[int] = []
    while len(out) < count:
        p = random_prime(bits, rng)
        if p < (1 << bits) and p not in out:
            out.append(p)
    return out


# -- exact ---------------------------------------------------------------

def _integer_rows(rows: Sequence[Sequence]) -> List[List[int]]:
    out = []
    for row in rows:
        qs = [mpq(x) for x in row]
        den = lcm(*[int(q.denominator) for q in qs]) if qs else 1
        out.append([int(q.numerator) * (den // int(q.denominator)) for q in qs])
    return out


def rank_exact(rows: Sequence[Sequence]) -> int:
    """Rank by fraction-free Gaussian elimination (Bareiss)."""
    A = [r for r in _integer_rows(rows) if any(r)]
    if not A:
        return 0
    ncols = len(A[0])
    rank = 0
    prev = 1
    for c in range(ncols):
        piv = None
        for i in range(rank, len(A)):
            if A[i][c]:
                piv = i
                break
        if piv is None:
            continue
        A[rank], A[piv] = A[piv], A[rank]
        prow = A[rank]
        pv = prow[c]
        for i in range(rank + 1, len(A)):
            row = A[i]
            f = row[c]
            if f:
                for j in range(c + 1, ncols):
                    row[j] = (pv * row[j] - f * prow[j]) // prev
                row[c] = 0
            else:
                for j in range(c + 1, ncols):
                    row[j] = (pv * row[j]) // prev
        prev = pv
        rank += 1
        if rank == len(A):
            break
    return rank


def rref(rows: Sequence[Sequence], ncols: Optional[int] = None) -> Tuple[Matrix, List[int]]:
    """Reduced row echelon form over Q; returns (nonzero rows, pivot columns)."""
    A = [[mpq(x) for x in r] for r in rows]
    if ncols is None:
        ncols = len(A[0]) if A else 0
    pivots: List[int] = []
    r = 0
    for c in range(ncols):
        piv = None
        for i in range(r, len(A)):
            if A[i][c]:
                piv = i
                break
        if piv is None:
            continue
        A[r], A[piv] = A[piv], A[r]
        inv = 1 / A[r][c]
        prow = [x * inv for x in A[r]]
        A[r] = prow
        nz = [j for j in range(c, ncols) if prow[j]]
        for i in range(len(A)):
            if i != r:
                f = A[i][c]
                if f:
                    row = A[i]
                    for j in nz:
                        row[j] -= f * prow[j]
        pivots.append(c)
        r += 1
        if r == len(A):
            break
    return A[:r], pivots


def kernel_from_rref(R: Matrix, pivots: List[int], ncols: int) -> Matrix:
    free = [c for c in range(ncols) if c not in set(pivots)]
    basis = []
    for f in free:
        v = [mpq(0)] * ncols
        v[f] = mpq(1)
        for row, pc in zip(R, pivots):
            v[pc] = -row[f]
        basis.append(v)
    return basis


def rank_kernel(rows: Sequence[Sequence], ncols: Optional[int] = None) -> Tuple[int, Matrix]:
    """Exact rank and a basis of the right null space {v : M v = 0}."""
    if ncols is None:
        ncols = len(rows[0]) if rows else 0
    R, piv = rref(rows, ncols)
    return len(piv), kernel_from_rref(R, piv, ncols)


def solve_in_span(basis_rows: Sequence[Sequence], target: Sequence) -> Optional[List]:
    """Coefficients c with sum c_i * basis_rows[i] == target, or None."""
    k = len(basis_rows)
    if k == 0:
        return [] if not any(target) else None
    ncols = len(target)
    # augmented system: columns of the basis vectors, right-hand side target
    aug = [[basis_rows[i][j] for i in range(k)] + [target[j]] for j in range(ncols)]
    R, piv = rref(aug, k + 1)
    if k in piv:
        return None
    sol = [mpq(0)] * k
    for row, pc in zip(R, piv):
        sol[pc] = row[k]
    return sol


# -- modular ---------------------------------------------------------------

def reduce_mod(x, p: int) -> int:
    q = mpq(x)
    den = int(q.denominator) % p
    if den == 0:
        raise ZeroDivisionError(f"denominator divisible by {p}")
    return int(q.numerator) * pow(den, -1, p) % p


def matrix_mod(rows: Sequence[Sequence], p: int) -> np.ndarray:
    if p >= NUMPY_PRIME_LIMIT:
        raise ValueError("numpy path needs a prime below 2^31")
    ncols = len(rows[0]) if rows else 0
    A = np.zeros((len(rows), ncols), dtype=np.int64)
    for i, r in enumerate(rows):
        for j, x in enumerate(r):
            if x:
                A[i, j] = reduce_mod(x, p)
    return A


def rref_mod_p(A: np.ndarray, p: int) -> Tuple[np.ndarray, List[int]]:
    """Row echelon form of an int64 matrix modulo a prime p < 2^31 (reduced)."""
    A = np.array(A, dtype=np.int64) % p
    nrows, ncols = A.shape
    pivots: List[int] = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        col = A[r:, c]
        nz = np.flatnonzero(col)
        if nz.size == 0:
            continue
        piv = r + int(nz[0])
        if piv != r:
            A[[r, piv]] = A[[piv, r]]
        inv = pow(int(A[r, c]), -1, p)
        A[r, c:] = (A[r, c:] * inv) % p
        others = np.flatnonzero(A[:, c])
        others = others[others != r]
        if others.size:
            A[others, c:] = (A[others, c:] - np.outer(A[others, c], A[r, c:])) % p
        pivots.append(c)
        r += 1
    return A[:r], pivots


def rank_mod_p(A, p: int) -> int:
    """Rank modulo p.  ``A`` is an int64 array (p < 2^31) or a list of int rows."""
    if isinstance(A, np.ndarray):
        if A.size == 0:
            return 0
        if A.shape[0] > A.shape[1]:
            A = A.T
        return _rank_mod_p_numpy(A, p)
    return _rank_mod_p_python([[x % p for x in r] for r in A], p)


def _rank_mod_p_numpy(A: np.ndarray, p: int) -> int:
    A = np.array(A, dtype=np.int64) % p
    nrows, ncols = A.shape
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        nz = np.flatnonzero(A[r:, c])
        if nz.size == 0:
            continue
        piv = r + int(nz[0])
        if piv != r:
            A[[r, piv]] = A[[piv, r]]
        inv = pow(int(A[r, c]), -1, p)
        A[r, c:] = (A[r, c:] * inv) % p
        below = r + 1 + np.flatnonzero(A[r + 1:, c])
        if below.size:
            A[below, c:] = (A[below, c:] - np.outer(A[below, c], A[r, c:])) % p
        r += 1
    return r


def _rank_mod_p_python(A: List[List[int]], p: int) -> int:
    A = [r for r in A if any(r)]
    if not A:
        return 0
    ncols = len(A[0])
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(A)) if A[i][c]), None)
        if piv is None:
            continue
        A[r], A[piv] = A[piv], A[r]
        inv = pow(A[r][c], -1, p)
        prow = [x * inv % p for x in A[r]]
        A[r] = prow
        for i in range(r + 1, len(A)):
            f = A[i][c]
            if f:
                row = A[i]
                for j in range(c, ncols):
                    row[j] = (row[j] - f * prow[j]) % p
        r += 1
        if r == len(A):
            break
    return r


def rational_rank_mod_p(rows: Sequence[Sequence], p: int) -> int:
    if p < NUMPY_PRIME_LIMIT:
        return rank_mod_p(matrix_mod(rows, p), p)
    return rank_mod_p([[reduce_mod(x, p) for x in r] for r in rows], p)


def rank(rows: Sequence[Sequence], exact: bool = False,
         primes: Optional[Sequence[int]] = None) -> RankResult:
    """Rank of a rational matrix, by the modular fast path unless ``exact``.

    The fast path is accepted only when every prime gives the same rank.
    """
    if not rows or not len(rows[0]):
        return RankResult(0, "exact")
    if exact:
        return RankResult(rank_exact(rows), "exact")
    primes = list(primes) if primes else default_primes()
    ranks = []
    used = []
    for p in primes:
        try:
            ranks.append(rational_rank_mod_p(rows, p))
            used.append(p)
        except ZeroDivisionError:
            continue
    if ranks and len(set(ranks)) == 1 and len(ranks) == len(primes):
        return RankResult(ranks[0], "modular", tuple(used))
    return RankResult(rank_exact(rows), "exact")
