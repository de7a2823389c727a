"""Exact linear programming over the rationals.

A plain two-phase simplex with Bland's rule, sized for the tiny programs
this package generates (a handful of variables, a few dozen constraints).
Everything is Fraction arithmetic, so optima are exact rationals.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .linalg import frac

OPTIMAL = "optimal"
INFEASIBLE = "infeasible"
UNBOUNDED = "unbounded"


@dataclass(frozen=True)
class LPResult:
    status: str
    x: tuple | None
    value: Fraction | None


def _pivot(tab, basis, row, col):
    piv = tab[row][col]
    tab[row] = [x / piv for x in tab[row]]
    for i in range(len(tab)):
        if i != row and tab[i][col] != 0:
            f = tab[i][col]
            tab[i] = [x - f * y for x, y in zip(tab[i], tab[row])]
    basis[row] = col


def _solve_phase(tab, basis, ncols):
    """Optimize the objective stored in the last tableau row; Bland's rule."""
    m = len(tab) - 1
    while True:
        obj = tab[-1]
        col = next((j for j in range(ncols) if obj[j] < 0), None)
        if col is None:
            return OPTIMAL
        row = None
        best = None
        for i in range(m):
            if tab[i][col] > 0:
                ratio = tab[i][-1] / tab[i][col]
                if best is None or ratio < best or \
                        (ratio == best and basis[i] < basis[row]):
                    best, row = ratio, i
        if row is None:
            return UNBOUNDED
        _pivot(tab, basis, row, col)


def simplex_standard(c, a, b):
    """min c.x subject to a x = b, x >= 0 (all exact rationals)."""
    m, n = len(a), len(c)
    c = [frac(x) for x in c]
    a = [[frac(x) for x in row] for row in a]
    b = [frac(x) for x in b]
    for i in range(m):
        if b[i] < 0:
            a[i] = [-x for x in a[i]]
            b[i] = -b[i]

    # phase 1: artificial variables n..n+m-1
    tab = [a[i] + [Fraction(1 if j == i else 0) for j in range(m)] + [b[i]]
           for i in range(m)]
    basis = [n + i for i in range(m)]
    obj = [Fraction(0)] * (n + m) + [Fraction(0)]
    for j in range(n + m):
        obj[j] = -sum(tab[i][j] for i in range(m) if basis[i] >= n)
    obj[-1] = -sum(tab[i][-1] for i in range(m) if basis[i] >= n)
    # artificial columns have coefficient 1 in the phase-1 objective
    for j in range(n, n + m):
        obj[j] += 1
    tab.append(obj)
    _solve_phase(tab, basis, n + m)
    if tab[-1][-1] < 0:
        return LPResult(INFEASIBLE, None, None)
    # drive remaining artificials out of the basis
    for i in range(m):
        if basis[i] >= n:
            col = next((j for j in range(n) if tab[i][j] != 0), None)
            if col is not None:
                _pivot(tab, basis, i, col)
    # drop rows still basic in an artificial (redundant constraints)
    keep = [i for i in range(m) if basis[i] < n]
    tab = [[tab[i][j] for j in range(n)] + [tab[i][-1]] for i in keep]
    basis = [basis[i] for i in keep]

    # phase 2
    obj = [frac(x) for x in c] + [Fraction(0)]
    for i, bi in enumerate(basis):
        if obj[bi] != 0:
            f = obj[bi]
            obj = [x - f * y for x, y in zip(obj, tab[i])]
    tab.append(obj)
    status = _solve_phase(tab, basis, n)
    if status == UNBOUNDED:
        return LPResult(UNBOUNDED, None, None)
    x = [Fraction(0)] * n
    for i, bi in enumerate(basis):
        x[bi] = tab[i][-1]
    value = sum(ci * xi for ci, xi in zip(c, x))
    return LPResult(OPTIMAL, tuple(x), value)


def linprog(c, a_ub=(), b_ub=(), a_eq=(), b_eq=(), nonneg=False):
    """min c.x with a_ub x <= b_ub and a_eq x = b_eq; variables are free
    unless nonneg is set.  Exact rational arithmetic throughout."""
    n = len(c)
    a_ub = [list(r) for r in a_ub]
    a_eq = [list(r) for r in a_eq]
    if nonneg:
        width = n
        expand = lambda row: [frac(x) for x in row]
        recover = lambda x: tuple(x[:n])
    else:
        width = 2 * n
        expand = lambda row: [frac(x) for x in row] + [-frac(x) for x in row]
        recover = lambda x: tuple(x[i] - x[n + i] for i in range(n))
    nslack = len(a_ub)
    rows, rhs = [], []
    for k, row in enumerate(a_ub):
        slack = [Fraction(1 if j == k else 0) for j in range(nslack)]
        rows.append(expand(row) + slack)
        rhs.append(frac(b_ub[k]))
    for k, row in enumerate(a_eq):
        rows.append(expand(row) + [Fraction(0)] * nslack)
        rhs.append(frac(b_eq[k]))
    cost = expand(c) + [Fraction(0)] * nslack
    res = simplex_standard(cost, rows, rhs)
    if res.status != OPTIMAL:
        return res
    return LPResult(OPTIMAL, recover(res.x), res.value)


def in_convex_hull(point, points) -> bool:
    """Exact membership of a point in the convex hull of a finite set."""
    pts = [tuple(frac(x) for x in p) for p in points]
    if not pts:
        return False
    d = len(point)
    a_eq = [[p[i] for p in pts] for i in range(d)]
    a_eq.append([Fraction(1)] * len(pts))
    b_eq = [frac(x) for x in point] + [Fraction(1)]
    res = linprog([Fraction(0)] * len(pts), a_eq=a_eq, b_eq=b_eq, nonneg=True)
    return res.status == OPTIMAL
