"""Small exact linear algebra over the rationals.

Matrices are tuples of row tuples of Fractions; vectors are tuples of
Fractions.  Everything is dense and tiny (dimension <= 8 or so), so plain
Gaussian elimination is all we need.
"""

from __future__ import annotations

from fractions import Fraction


def frac(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


def vec(xs):
    return tuple(frac(x) for x in xs)


def mat(rows):
    return tuple(vec(r) for r in rows)


def zeros(n):
    return tuple(Fraction(0) for _ in range(n))


def identity(n):
    return tuple(tuple(Fraction(1 if i == j else 0) for j in range(n))
                 for i in range(n))


def dot(u, v):
    return sum((a * b for a, b in zip(u, v)), Fraction(0))


def vadd(u, v):
    return tuple(a + b for a, b in zip(u, v))


def vsub(u, v):
    return tuple(a - b for a, b in zip(u, v))


def vscale(c, u):
    c = frac(c)
    return tuple(c * a for a in u)


def vneg(u):
    return tuple(-a for a in u)


def mat_vec(m, v):
    return tuple(dot(row, v) for row in m)


def mat_mul(a, b):
    bt = transpose(b)
    return tuple(tuple(dot(row, col) for col in bt) for row in a)


def transpose(m):
    if not m:
        return ()
    return tuple(tuple(row[j] for row in m) for j in range(len(m[0])))


def rref(m):
    """Reduced row echelon form; returns (rref_rows, pivot_columns)."""
    rows = [list(r) for r in m]
    nrows = len(rows)
    ncols = len(rows[0]) if rows else 0
    pivots = []
    r = 0
    for c in range(ncols):
        pivot = next((i for i in range(r, nrows) if rows[i][c] != 0), None)
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        inv = Fraction(1) / rows[r][c]
        rows[r] = [x * inv for x in rows[r]]
        for i in range(nrows):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return tuple(tuple(row) for row in rows), tuple(pivots)


def rank(m):
    if not m:
        return 0
    return len(rref(m)[1])


def solve(a, b):
    """One solution x of a x = b, or None if inconsistent."""
    if not a:
        return () if all(x == 0 for x in b) else None
    ncols = len(a[0])
    aug = tuple(row + (bi,) for row, bi in zip(a, b))
    red, pivots = rref(aug)
    if ncols in pivots:
        return None
    x = [Fraction(0)] * ncols
    for i, c in enumerate(pivots):
        x[c] = red[i][-1]
    return tuple(x)


def nullspace(m):
    """Basis of the kernel of m (as a tuple of vectors)."""
    if not m:
        return ()
    ncols = len(m[0])
    red, pivots = rref(m)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for i, c in enumerate(pivots):
            v[c] = -red[i][f]
        basis.append(tuple(v))
    return tuple(basis)


def column_space_contains(m, v):
    """True iff v is a linear combination of the columns of m."""
    return solve(m, v) is not None


def columns(m):
    return transpose(m)


def from_columns(cols, nrows=None):
    cols = tuple(tuple(c) for c in cols)
    if not cols:
        return tuple(() for _ in range(nrows or 0))
    return transpose(cols)


def span_intersection(basis_a, basis_b):
    """Basis of span(basis_a) ∩ span(basis_b); inputs are tuples of vectors."""
    if not basis_a or not basis_b:
        return ()
    # x in both spans: x = A s = B t; solve [A | -B] (s,t)^T = 0
    a_cols = from_columns(basis_a)
    b_cols = from_columns(basis_b)
    stacked = tuple(ra + tuple(-x for x in rb)
                    for ra, rb in zip(a_cols, b_cols))
    out = []
    for k in nullspace(stacked):
        s = k[:len(basis_a)]
        x = tuple(sum((si * ai for si, ai in zip(s, col)), Fraction(0))
                  for col in zip(*basis_a))
        out.append(x)
    return independent_subset(out)


def independent_subset(vectors):
    """Canonical maximal linearly independent subset, in input order."""
    picked = []
    for v in vectors:
        if any(x != 0 for x in v) and (not picked or
                                       rank(tuple(picked) + (v,)) > len(picked)):
            picked.append(tuple(v))
    return tuple(picked)
