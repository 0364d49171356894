"""Small exact linear algebra over Q (lists of Fractions)."""

from __future__ import annotations

from fractions import Fraction
from math import lcm
from typing import Sequence

__all__ = ["rank", "nullspace", "matmul", "span_closure"]

Matrix = list[list[Fraction]]


def rank(rows: Sequence[Sequence]) -> int:
    """Rank over Q by fraction-free (Bareiss) elimination on integer-scaled rows."""
    mat = []
    for r in rows:
        r = [Fraction(x) for x in r]
        L = lcm(*[x.denominator for x in r]) if r else 1
        mat.append([int(x * L) for x in r])
    if not mat:
        return 0
    ncols = len(mat[0])
    rk = 0
    prev = 1
    for col in range(ncols):
        pivot = next((i for i in range(rk, len(mat)) if mat[i][col]), None)
        if pivot is None:
            continue
        mat[rk], mat[pivot] = mat[pivot], mat[rk]
        p = mat[rk][col]
        for i in range(rk + 1, len(mat)):
            a = mat[i][col]
            mat[i] = [(p * x - a * y) // prev for x, y in zip(mat[i], mat[rk])]
        prev = p
        rk += 1
        if rk == len(mat):
            break
    return rk


def _rref(rows: Matrix) -> tuple[Matrix, list[int]]:
    mat = [list(r) for r in rows]
    pivots = []
    r = 0
    ncols = len(mat[0]) if mat else 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(mat)) if mat[i][c]), None)
        if piv is None:
            continue
        mat[r], mat[piv] = mat[piv], mat[r]
        inv = 1 / mat[r][c]
        mat[r] = [x * inv for x in mat[r]]
        for i in range(len(mat)):
            if i != r and mat[i][c]:
                f = mat[i][c]
                mat[i] = [x - f * y for x, y in zip(mat[i], mat[r])]
        pivots.append(c)
        r += 1
    return mat, pivots


def nullspace(rows: Sequence[Sequence], ncols: int | None = None) -> Matrix:
    """Basis of ``{x : A x = 0}``."""
    mat = [[Fraction(x) for x in r] for r in rows]
    if ncols is None:
        ncols = len(mat[0]) if mat else 0
    if not mat:
        return [[Fraction(int(i == j)) for i in range(ncols)] for j in range(ncols)]
    red, pivots = _rref(mat)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for row, pc in zip(red, pivots):
            v[pc] = -row[f]
        basis.append(v)
    return basis


def matmul(a: Matrix, b: Matrix) -> Matrix:
    if not a or not b:
        return []
    cols = list(zip(*b))
    return [[sum((x * y for x, y in zip(row, col)), Fraction(0)) for col in cols] for row in a]


def span_closure(generators: Sequence[Sequence], operators: Sequence[Matrix]) -> int:
    """Dimension of the smallest subspace containing the generators and stable under the operators."""
    basis: Matrix = []
    queue = [[Fraction(x) for x in g] for g in generators]
    while queue:
        v = queue.pop()
        if rank(basis + [v]) == len(basis):
            continue
        basis.append(v)
        for op in operators:
            queue.append([sum((a * x for a, x in zip(row, v)), Fraction(0)) for row in op])
    return len(basis)
