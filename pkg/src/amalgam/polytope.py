"""Exact convex-polytope utilities at small dimension.

All polytopes handled here are full-dimensional, symmetric about the
origin, and tiny, so brute-force enumeration over point or constraint
subsets is exact and fast enough.  Facets of such a polytope can be written
a.x <= 1, which is the normal form used throughout.
"""

from __future__ import annotations

import itertools
from fractions import Fraction

from .errors import PreconditionError
from .lp import in_convex_hull
from .linalg import dot, frac, rank, rref, solve, vec


def extreme_points(points):
    """The extreme points of conv(points), canonically sorted."""
    pts = sorted({vec(p) for p in points})
    out = []
    for i, p in enumerate(pts):
        others = pts[:i] + pts[i + 1:]
        if not in_convex_hull(p, others):
            out.append(p)
    return tuple(out)


def hull_facets(points):
    """Facet normals a (with facet a.x = 1) of conv(points), for a
    full-dimensional polytope with the origin in its interior.

    Brute force: every facet is spanned by some d linearly independent
    vertices, so solving a.p_i = 1 over all d-subsets finds them all.
    """
    pts = extreme_points(points)
    if not pts:
        raise PreconditionError("empty point set")
    d = len(pts[0])
    if rank(pts) < d:
        raise PreconditionError("polytope is not full-dimensional")
    if d == 0:
        return ()
    normals = set()
    for subset in itertools.combinations(pts, d):
        if rank(subset) < d:
            continue
        a = solve(subset, tuple(Fraction(1) for _ in range(d)))
        if a is None:
            continue
        if all(dot(a, p) <= 1 for p in pts):
            normals.add(tuple(a))
    return tuple(sorted(normals))


def vertices_from_h(a_rows, b_vals):
    """Vertices of the bounded polyhedron {x : a_i.x <= b_i}: solutions of
    d-subsets of tight constraints that satisfy everything else."""
    a_rows = [vec(r) for r in a_rows]
    b_vals = [frac(b) for b in b_vals]
    if not a_rows:
        raise PreconditionError("no constraints")
    d = len(a_rows[0])
    verts = set()
    idx = range(len(a_rows))
    for subset in itertools.combinations(idx, d):
        sub_a = tuple(a_rows[i] for i in subset)
        if rank(sub_a) < d:
            continue
        x = solve(sub_a, tuple(b_vals[i] for i in subset))
        if x is None:
            continue
        if all(dot(a_rows[i], x) <= b_vals[i] for i in idx):
            verts.add(tuple(x))
    return tuple(sorted(verts))


def polar_vertices(points):
    """Vertices of the polar {y : y.x <= 1 for all x in conv(points)} of a
    full-dimensional symmetric polytope: one per facet of the hull."""
    return hull_facets(points)


def hull_contains(points, x) -> bool:
    return in_convex_hull(vec(x), [vec(p) for p in points])


def hulls_equal(points_a, points_b) -> bool:
    """conv(A) == conv(B), by mutual extreme-point membership."""
    ea, eb = extreme_points(points_a), extreme_points(points_b)
    return all(in_convex_hull(p, eb) for p in ea) and \
        all(in_convex_hull(p, ea) for p in eb)


def support(points, direction) -> Fraction:
    """max of direction.x over the finite point set."""
    return max(dot(vec(direction), vec(p)) for p in points)
