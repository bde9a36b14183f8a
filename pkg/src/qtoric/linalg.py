"""Exact linear algebra over the rationals for small dense systems.

Everything here works on plain sequences of ``fractions.Fraction`` (or ints)
and is sized for the K <= 4 systems that toric quotient data produces, so
clarity wins over asymptotics throughout.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations
from math import gcd
from typing import Sequence


def _rows(a: Sequence[Sequence]) -> list[list[Fraction]]:
    return [[Fraction(x) for x in row] for row in a]


def determinant(a: Sequence[Sequence]) -> Fraction:
    """Determinant by fraction-free-ish Gaussian elimination with pivoting."""
    m = _rows(a)
    n = len(m)
    if any(len(row) != n for row in m):
        raise ValueError("determinant needs a square matrix")
    det = Fraction(1)
    for col in range(n):
        pivot = next((r for r in range(col, n) if m[r][col] != 0), None)
        if pivot is None:
            return Fraction(0)
        if pivot != col:
            m[col], m[pivot] = m[pivot], m[col]
            det = -det
        det *= m[col][col]
        inv = 1 / m[col][col]
        for r in range(col + 1, n):
            if m[r][col] == 0:
                continue
            factor = m[r][col] * inv
            for c in range(col, n):
                m[r][c] -= factor * m[col][c]
    return det


def solve_square(a: Sequence[Sequence], b: Sequence) -> list[Fraction] | None:
    """Solve ``a x = b`` exactly; returns None when ``a`` is singular."""
    m = _rows(a)
    n = len(m)
    rhs = [Fraction(x) for x in b]
    if len(rhs) != n or any(len(row) != n for row in m):
        raise ValueError("solve_square needs a square system")
    for col in range(n):
        pivot = next((r for r in range(col, n) if m[r][col] != 0), None)
        if pivot is None:
            return None
        if pivot != col:
            m[col], m[pivot] = m[pivot], m[col]
            rhs[col], rhs[pivot] = rhs[pivot], rhs[col]
        inv = 1 / m[col][col]
        for r in range(n):
            if r == col or m[r][col] == 0:
                continue
            factor = m[r][col] * inv
            for c in range(col, n):
                m[r][c] -= factor * m[col][c]
            rhs[r] -= factor * rhs[col]
    return [rhs[i] / m[i][i] for i in range(n)]


def inverse_unimodular(a: Sequence[Sequence[int]]) -> list[list[int]]:
    """Inverse of an integer matrix with determinant +-1, returned over ints."""
    n = len(a)
    det = determinant(a)
    if det not in (1, -1):
        raise ValueError(f"matrix is not unimodular (det={det})")
    cols = []
    for j in range(n):
        e = [Fraction(int(i == j)) for i in range(n)]
        col = solve_square(a, e)
        assert col is not None
        cols.append(col)
    inv = [[cols[j][i] for j in range(n)] for i in range(n)]
    out = []
    for row in inv:
        int_row = []
        for x in row:
            if x.denominator != 1:
                raise ValueError("unimodular inverse came out non-integer")
            int_row.append(int(x))
        out.append(int_row)
    return out


def _rank_and_solution(
    gens: Sequence[Sequence[int]], target: Sequence
) -> list[Fraction] | None:
    """Solve sum_i x_i gens[i] = target when the gens are independent.

    Returns the unique solution, or None if the system is inconsistent or the
    generators are dependent.
    """
    dim = len(target)
    r = len(gens)
    # Augmented columns: generators, then target.
    m = [[Fraction(gens[i][row]) for i in range(r)] + [Fraction(target[row])]
         for row in range(dim)]
    pivots = []
    row = 0
    for col in range(r):
        pivot = next((k for k in range(row, dim) if m[k][col] != 0), None)
        if pivot is None:
            return None  # dependent generators; a smaller subset covers this
        m[row], m[pivot] = m[pivot], m[row]
        inv = 1 / m[row][col]
        for k in range(dim):
            if k == row or m[k][col] == 0:
                continue
            factor = m[k][col] * inv
            for c in range(col, r + 1):
                m[k][c] -= factor * m[row][c]
        pivots.append((row, col))
        row += 1
        if row == dim:
            break
    if len(pivots) < r:
        return None
    # Consistency: rows without pivots must have zero rhs.
    for k in range(row, dim):
        if m[k][r] != 0:
            return None
    x = [Fraction(0)] * r
    for prow, pcol in pivots:
        x[pcol] = m[prow][r] / m[prow][pcol]
    return x


def in_cone(generators: Sequence[Sequence[int]], target: Sequence) -> bool:
    """Exact membership of ``target`` in cone(generators).

    By Caratheodory any member is a nonnegative combination of at most
    dim-many linearly independent generators, so subsets are enumerated and
    each square-ish system solved exactly.
    """
    target = [Fraction(x) for x in target]
    if all(x == 0 for x in target):
        return True
    gens = [g for g in generators if any(c != 0 for c in g)]
    if not gens:
        return False
    dim = len(target)
    for r in range(1, dim + 1):
        for subset in combinations(gens, r):
            x = _rank_and_solution(subset, target)
            if x is not None and all(xi >= 0 for xi in x):
                return True
    return False


def primitive(vec: Sequence[int]) -> tuple[int, ...]:
    """Divide an integer vector by the gcd of its entries (zero stays zero)."""
    g = 0
    for x in vec:
        g = gcd(g, abs(int(x)))
    if g <= 1:
        return tuple(int(x) for x in vec)
    return tuple(int(x) // g for x in vec)


def extreme_rays(generators: Sequence[Sequence[int]]) -> list[tuple[int, ...]]:
    """Inclusion-minimal generating set of cone(generators), as primitive vectors."""
    prims = []
    for g in generators:
        p = primitive(g)
        if any(c != 0 for c in p) and p not in prims:
            prims.append(p)
    rays = []
    for i, g in enumerate(prims):
        others = prims[:i] + prims[i + 1:]
        if not in_cone(others, g):
            rays.append(g)
    return rays
