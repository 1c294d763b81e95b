"""Exact linear algebra over the rationals and word-sized prime fields.

Small dense systems only: recurrence guessing needs kernels of matrices
with a few dozen columns.  Rank over a prime field certifies emptiness of
the rational kernel exactly (a primitive integer null vector survives
reduction mod p), so the expensive rational elimination runs only when a
modular kernel shows up.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Optional, Sequence

# fixed large primes for modular rank certificates
RANK_PRIMES = (2305843009213693951, 4611686018427387847)


def scale_rows_to_int(rows: Sequence[Sequence[Fraction | int]]) -> list[list[int]]:
    """Clear denominators row by row (row scaling preserves the kernel)."""
    out = []
    for row in rows:
        fracs = [Fraction(x) for x in row]
        lcm = 1
        for f in fracs:
            d = f.denominator
            g = _gcd(lcm, d)
            lcm = lcm // g * d
        out.append([int(f * lcm) for f in fracs])
    return out


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return a


def rank_mod(rows: Sequence[Sequence[int]], p: int) -> int:
    """Row-echelon rank of an integer matrix over GF(p)."""
    mat = [[x % p for x in row] for row in rows]
    ncols = len(mat[0]) if mat else 0
    rank = 0
    for col in range(ncols):
        pivot = next((r for r in range(rank, len(mat)) if mat[r][col]), None)
        if pivot is None:
            continue
        mat[rank], mat[pivot] = mat[pivot], mat[rank]
        inv = pow(mat[rank][col], p - 2, p)
        prow = [(inv * x) % p for x in mat[rank]]
        mat[rank] = prow
        for r in range(len(mat)):
            if r != rank and mat[r][col]:
                f = mat[r][col]
                mat[r] = [(x - f * y) % p for x, y in zip(mat[r], prow)]
        rank += 1
        if rank == len(mat):
            break
    return rank


def kernel_is_trivial(rows: Sequence[Sequence[int]]) -> bool:
    """Exact certificate that an integer matrix has no rational null vector."""
    if not rows:
        return False
    ncols = len(rows[0])
    if ncols == 0:
        return True
    return any(rank_mod(rows, p) == ncols for p in RANK_PRIMES)


def nullspace(rows: Sequence[Sequence[Fraction | int]]) -> list[list[Fraction]]:
    """Basis of the rational kernel, from a reduced row echelon form."""
    mat = [[Fraction(x) for x in row] for row in rows]
    if not mat:
        return []
    ncols = len(mat[0])
    pivots: list[int] = []
    rank = 0
    for col in range(ncols):
        pivot = next((r for r in range(rank, len(mat)) if mat[r][col]), None)
        if pivot is None:
            continue
        mat[rank], mat[pivot] = mat[pivot], mat[rank]
        inv = 1 / mat[rank][col]
        mat[rank] = [x * inv for x in mat[rank]]
        for r in range(len(mat)):
            if r != rank and mat[r][col]:
                f = mat[r][col]
                mat[r] = [x - f * y for x, y in zip(mat[r], mat[rank])]
        pivots.append(col)
        rank += 1
        if rank == len(mat):
            break
    free_cols = [c for c in range(ncols) if c not in pivots]
    basis = []
    for free in free_cols:
        vec = [Fraction(0)] * ncols
        vec[free] = Fraction(1)
        for r, col in enumerate(pivots):
            vec[col] = -mat[r][free]
        basis.append(vec)
    return basis


def solve(rows: Sequence[Sequence[Fraction | int]],
          rhs: Sequence[Fraction | int]) -> Optional[list[Fraction]]:
    """One exact solution of A x = b (free variables zero), or None."""
    mat = [[Fraction(x) for x in row] + [Fraction(b)]
           for row, b in zip(rows, rhs)]
    if not mat:
        return []
    ncols = len(mat[0]) - 1
    pivots: list[int] = []
    rank = 0
    for col in range(ncols):
        pivot = next((r for r in range(rank, len(mat)) if mat[r][col]), None)
        if pivot is None:
            continue
        mat[rank], mat[pivot] = mat[pivot], mat[rank]
        inv = 1 / mat[rank][col]
        mat[rank] = [x * inv for x in mat[rank]]
        for r in range(len(mat)):
            if r != rank and mat[r][col]:
                f = mat[r][col]
                mat[r] = [x - f * y for x, y in zip(mat[r], mat[rank])]
        pivots.append(col)
        rank += 1
        if rank == len(mat):
            break
    for r in range(rank, len(mat)):
        if mat[r][ncols] != 0:
            return None
    sol = [Fraction(0)] * ncols
    for r, col in enumerate(pivots):
        sol[col] = mat[r][ncols]
    return sol


def clear_denominators(vec: Sequence[Fraction]) -> list[int]:
    """Scale a rational vector to a primitive integer vector (first nonzero > 0)."""
    fracs = [Fraction(x) for x in vec]
    lcm = 1
    for f in fracs:
        d = f.denominator
        g = _gcd(lcm, d)
        lcm = lcm // g * d
    ints = [int(f * lcm) for f in fracs]
    g = 0
    for x in ints:
        g = _gcd(g, abs(x))
    if g > 1:
        ints = [x // g for x in ints]
    lead = next((x for x in ints if x != 0), 0)
    if lead < 0:
        ints = [-x for x in ints]
    return ints
