"""Finite-dimensional normed spaces with rational polytopal norms.

A space is R^n with norm(x) = max f(x) over a finite symmetric set of
rational functionals; ell-1 sums, quotient norms and push-outs all stay in
this class, so every construction and every verdict is exact.

The push-out of isometric embeddings u: R -> S and v: R -> X is realised as
the quotient of the ell-1 sum of S and X by the anti-diagonal copy of R.
Its unit ball is the image of the ell-1-sum ball under the quotient map,
which gives the dual generators by exact facet enumeration; dually, the
dual ball is the set of functional pairs on S and X that agree on R.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property

from .errors import DomainError, PreconditionError
from . import linalg as la
from .linalg import dot, frac, vec
from .lp import OPTIMAL, in_convex_hull, linprog
from .polytope import extreme_points, hull_facets, vertices_from_h


@dataclass(frozen=True)
class PolytopeSpace:
    """R^dim normed by the support maximum over symmetric rational
    functionals; dual_gens must span the dual space."""

    dim: int
    dual_gens: tuple

    @classmethod
    def create(cls, dim, dual_gens):
        gens = tuple(sorted({vec(g) for g in dual_gens}))
        if dim == 0:
            return cls(0, ())
        for g in gens:
            if len(g) != dim:
                raise DomainError("functional of wrong dimension")
            if tuple(-x for x in g) not in gens:
                raise DomainError("dual generators must be symmetric")
        if la.rank(gens) < dim:
            raise PreconditionError("dual generators do not span the dual "
                                    "space; the norm would be a seminorm")
        return cls(dim, gens)

    def norm(self, x) -> Fraction:
        x = vec(x)
        if len(x) != self.dim:
            raise DomainError("vector of wrong dimension")
        if self.dim == 0 or not self.dual_gens:
            return Fraction(0)
        return max(dot(g, x) for g in self.dual_gens)

    @property
    def zero(self):
        return la.zeros(self.dim)

    @cached_property
    def dual_vertices(self):
        """Extreme points of the dual ball conv(dual_gens)."""
        if self.dim == 0:
            return ()
        return extreme_points(self.dual_gens)

    @cached_property
    def dual_facets(self):
        """Facet normals a (a.phi <= 1) of the dual ball; by polarity these
        are exactly the vertices of the primal unit ball."""
        if self.dim == 0:
            return ()
        return hull_facets(self.dual_gens)

    @cached_property
    def ball_vertices(self):
        """Vertices of the primal unit ball (polar of the dual ball)."""
        if self.dim == 0:
            return ((),)
        return vertices_from_h(self.dual_gens,
                               [Fraction(1)] * len(self.dual_gens))


def zero_space() -> PolytopeSpace:
    return PolytopeSpace.create(0, ())


def sup_space(n) -> PolytopeSpace:
    """R^n with the sup norm: dual generators are the signed coordinates."""
    gens = []
    for i in range(n):
        e = [Fraction(0)] * n
        e[i] = Fraction(1)
        gens.append(tuple(e))
        gens.append(tuple(-x for x in e))
    return PolytopeSpace.create(n, gens)


def l1_space(n) -> PolytopeSpace:
    """R^n with the ell-1 norm: dual generators are all sign patterns."""
    gens = [tuple(Fraction(s) for s in signs)
            for signs in itertools.product((1, -1), repeat=n)]
    return PolytopeSpace.create(n, gens)


def line_space() -> PolytopeSpace:
    return l1_space(1)


def norm_eval(space: PolytopeSpace, x) -> Fraction:
    return space.norm(x)


def l1_sum(first: PolytopeSpace, second: PolytopeSpace) -> PolytopeSpace:
    """Direct sum normed by the sum of the component norms: dual generators
    are all pairs (f, g)."""
    fgens = extreme_points(first.dual_gens) if first.dim else ((),)
    sgens = extreme_points(second.dual_gens) if second.dim else ((),)
    gens = [f + g for f in fgens for g in sgens]
    return PolytopeSpace.create(first.dim + second.dim, gens)


def quotient_norm(space: PolytopeSpace, v_basis, y) -> Fraction:
    """inf over v in span(v_basis) of norm(y + v), as an exact LP optimum."""
    v_basis = tuple(vec(b) for b in v_basis)
    y = vec(y)
    if len(y) != space.dim or any(len(b) != space.dim for b in v_basis):
        raise DomainError("dimension mismatch")
    if v_basis and la.rank(v_basis) < len(v_basis):
        raise PreconditionError("subspace basis is not independent")
    if not v_basis:
        return space.norm(y)
    k = len(v_basis)
    # variables (lambda_1..lambda_k, t); minimize t
    a_ub, b_ub = [], []
    for f in space.dual_gens:
        a_ub.append([dot(f, b) for b in v_basis] + [Fraction(-1)])
        b_ub.append(-dot(f, y))
    res = linprog([Fraction(0)] * k + [Fraction(1)], a_ub=a_ub, b_ub=b_ub)
    assert res.status == OPTIMAL  # coercive: gens span, so never unbounded
    return res.value


def adjoint_gens(matrix, target: PolytopeSpace):
    """Images of the target's dual generators under the adjoint of the map
    given by the matrix (target.dim x source.dim)."""
    cols = la.transpose(matrix)
    return tuple(tuple(dot(f, c) for c in cols) for f in target.dual_gens)


def induced_subspace(target: PolytopeSpace, basis) -> "LinearEmbedding":
    """The span of the basis vectors with the norm inherited from the
    target, as an isometric embedding of an abstract space."""
    basis = tuple(vec(b) for b in basis)
    matrix = la.from_columns(basis, nrows=target.dim)
    if basis and la.rank(basis) < len(basis):
        raise PreconditionError("subspace basis is not independent")
    if not basis:
        return LinearEmbedding(zero_space(), target,
                               tuple(() for _ in range(target.dim)))
    gens = extreme_points(adjoint_gens(matrix, target))
    source = PolytopeSpace.create(len(basis), gens)
    return LinearEmbedding(source, target, matrix)


def isometry_defect(source: PolytopeSpace, target: PolytopeSpace, matrix):
    """None if the matrix is an isometric embedding, else a witness vector x
    with norm_source(x) != norm_target(M x)."""
    if source.dim == 0:
        return None
    adj = adjoint_gens(matrix, target)
    src = source.dual_gens
    for p in extreme_points(src):
        if not in_convex_hull(p, adj):
            return _direction_beyond(p, adj)
    for p in extreme_points(adj):
        if not in_convex_hull(p, src):
            return _direction_beyond(p, src)
    return None


def _direction_beyond(functional, gens):
    """A vector x with functional(x) > max over gens of g(x)."""
    res = linprog([-f for f in functional],
                  a_ub=list(gens), b_ub=[Fraction(1)] * len(gens))
    assert res.status == OPTIMAL and -res.value > 1
    return res.x


@dataclass(frozen=True)
class LinearEmbedding:
    """An isometric linear embedding source -> target; the matrix has the
    target dimension many rows."""

    source: PolytopeSpace
    target: PolytopeSpace
    matrix: tuple

    def __post_init__(self):
        if len(self.matrix) != self.target.dim or \
                any(len(r) != self.source.dim for r in self.matrix):
            raise DomainError("matrix shape mismatch")
        cols = la.transpose(self.matrix)
        if self.source.dim and la.rank(cols) < self.source.dim:
            raise PreconditionError("embedding matrix is not injective")
        witness = isometry_defect(self.source, self.target, self.matrix)
        if witness is not None:
            raise PreconditionError(
                "embedding is not isometric; witness vector %r" % (witness,))

    def __call__(self, x):
        return la.mat_vec(self.matrix, vec(x))

    @classmethod
    def identity(cls, space):
        return cls(space, space, la.identity(space.dim))

    def image_basis(self):
        return la.columns(self.matrix)


@dataclass(frozen=True)
class BanachPushout:
    """The push-out square of two isometric embeddings with common source,
    together with the quotient map identifying the ambient space."""

    r_to_s: LinearEmbedding
    r_to_x: LinearEmbedding
    s_to_y: LinearEmbedding
    x_to_y: LinearEmbedding
    space: PolytopeSpace          # the ambient Y
    quotient_rows: tuple          # Q: (S ell1+ X) -> Y, kernel = anti-diagonal R

    @property
    def s_space(self):
        return self.r_to_s.target

    @property
    def x_space(self):
        return self.r_to_x.target

    @property
    def r_space(self):
        return self.r_to_s.source

    def commutes(self) -> bool:
        m1 = la.mat_mul(self.s_to_y.matrix, self.r_to_s.matrix)
        m2 = la.mat_mul(self.x_to_y.matrix, self.r_to_x.matrix)
        return m1 == m2


def pushout_banach(u: LinearEmbedding, v: LinearEmbedding) -> BanachPushout:
    """Push-out of u: R -> S and v: R -> X along their common source."""
    if u.source != v.source:
        raise PreconditionError("embeddings do not share a source space")
    s_space, x_space, r_space = u.target, v.target, u.source
    ds, dx, dr = s_space.dim, x_space.dim, r_space.dim
    m = ds + dx

    # anti-diagonal copy of R inside S (+)ell1 X
    v_vectors = tuple(tuple(u.matrix[i][j] for i in range(ds)) +
                      tuple(-v.matrix[i][j] for i in range(dx))
                      for j in range(dr))
    if v_vectors:
        q_rows = la.nullspace(v_vectors)
    else:
        q_rows = la.identity(m)
    dy = len(q_rows)

    # unit ball of Y = image of the ell-1-sum ball under Q
    s_verts = s_space.ball_vertices if ds else ()
    x_verts = x_space.ball_vertices if dx else ()
    points = [tuple(dot(row, p + la.zeros(dx)) for row in q_rows)
              for p in s_verts]
    points += [tuple(dot(row, la.zeros(ds) + p) for row in q_rows)
               for p in x_verts]
    if dy == 0:
        y = zero_space()
    else:
        y = PolytopeSpace.create(dy, hull_facets(points))

    s_to_y = LinearEmbedding(
        s_space, y, tuple(row[:ds] for row in q_rows))
    x_to_y = LinearEmbedding(
        x_space, y, tuple(row[ds:] for row in q_rows))
    po = BanachPushout(r_to_s=u, r_to_x=v, s_to_y=s_to_y, x_to_y=x_to_y,
                       space=y, quotient_rows=q_rows)
    assert po.commutes()
    return po


@dataclass(frozen=True)
class BanachPushoutVerdict:
    ok: bool
    span_ok: bool
    norm_identity_ok: bool
    # on norm failure: (x, s) in ambient coordinates with
    # norm(x + s) < inf over r of norm(x + r) + norm(s - r)
    witness: tuple | None = None

    def __bool__(self):
        return self.ok


def is_internal_pushout_banach(space: PolytopeSpace, s_basis,
                               x_basis) -> BanachPushoutVerdict:
    """Internal push-out check for two subspaces of a polytopal space, with
    R their exact intersection: span(S) + span(X) must fill the space and
    the quotient-of-ell-1-sum norm must agree with the ambient norm.

    The norm identity is verified dually: the canonical map from the
    abstract push-out onto the ambient space is isometric iff the adjoint
    images of the dual generators have equal convex hulls.
    """
    s_basis = tuple(vec(b) for b in s_basis)
    x_basis = tuple(vec(b) for b in x_basis)
    for b in s_basis + x_basis:
        if len(b) != space.dim:
            raise PreconditionError("basis vector of wrong dimension")
    if (s_basis and la.rank(s_basis) < len(s_basis)) or \
            (x_basis and la.rank(x_basis) < len(x_basis)):
        raise PreconditionError("degenerate subspace basis")

    span_ok = la.rank(s_basis + x_basis) == space.dim

    s_incl = induced_subspace(space, s_basis)
    x_incl = induced_subspace(space, x_basis)
    r_basis = la.span_intersection(s_basis, x_basis)

    def coords(incl, basis_vecs):
        cols = [la.solve(incl.matrix, r) for r in basis_vecs]
        return la.from_columns(cols, nrows=incl.source.dim)

    r_in_s = induced_subspace(space, r_basis)
    u = LinearEmbedding(r_in_s.source, s_incl.source, coords(s_incl, r_basis))
    v = LinearEmbedding(r_in_s.source, x_incl.source, coords(x_incl, r_basis))
    po = pushout_banach(u, v)
    z = po.space

    if not span_ok or z.dim != space.dim:
        return BanachPushoutVerdict(False, span_ok, False)

    # canonical map T: Z -> Y with T o Q = [S-basis | X-basis]
    big = la.from_columns(s_basis + x_basis, nrows=space.dim)
    t_cols = []
    for j in range(z.dim):
        e = [Fraction(0)] * z.dim
        e[j] = Fraction(1)
        w = la.solve(po.quotient_rows, tuple(e))
        t_cols.append(la.mat_vec(big, w))
    t_matrix = la.from_columns(t_cols, nrows=space.dim)

    adj = adjoint_gens(t_matrix, space)
    # T never increases the norm, so conv(adj) is always inside the dual
    # ball of Z; failure can only be a Z-dual vertex outside conv(adj).
    assert all(in_convex_hull(p, z.dual_gens) for p in extreme_points(adj))
    offending = next((p for p in z.dual_vertices
                      if not in_convex_hull(p, adj)), None)
    if offending is None:
        return BanachPushoutVerdict(True, True, True)
    direction = _direction_beyond(offending, adj)
    w = la.solve(po.quotient_rows, vec(direction))
    ds = len(s_basis)
    s_part = la.mat_vec(la.from_columns(s_basis, nrows=space.dim), w[:ds])
    x_part = la.mat_vec(la.from_columns(x_basis, nrows=space.dim), w[ds:])
    return BanachPushoutVerdict(False, True, False, witness=(x_part, s_part))


def pushout_norm_value(space: PolytopeSpace, r_basis, x_vec, s_vec):
    """inf over r in span(r_basis) of norm(x + r) + norm(s - r), with the
    minimizer r at which it is attained (finite dimension: always attained)."""
    r_basis = tuple(vec(b) for b in r_basis)
    x_vec, s_vec = vec(x_vec), vec(s_vec)
    k = len(r_basis)
    gens = space.dual_gens
    # variables (c_1..c_k, t1, t2); minimize t1 + t2
    a_ub, b_ub = [], []
    for f in gens:
        a_ub.append([dot(f, b) for b in r_basis] +
                    [Fraction(-1), Fraction(0)])
        b_ub.append(-dot(f, x_vec))
        a_ub.append([-dot(f, b) for b in r_basis] +
                    [Fraction(0), Fraction(-1)])
        b_ub.append(-dot(f, s_vec))
    res = linprog([Fraction(0)] * k + [Fraction(1), Fraction(1)],
                  a_ub=a_ub, b_ub=b_ub)
    assert res.status == OPTIMAL
    c = res.x[:k]
    r_vec = tuple(sum((ci * b[i] for ci, b in zip(c, r_basis)), Fraction(0))
                  for i in range(space.dim))
    return res.value, r_vec


def dualball_pullback_check(po: BanachPushout) -> bool:
    """The dual ball of the push-out equals the set of functional pairs on
    the two summands that agree on the common subspace, checked by mutual
    containment through the H- and V-representations."""
    s_space, x_space, y = po.s_space, po.x_space, po.space
    ds, dx = s_space.dim, x_space.dim
    q_t = la.transpose(po.quotient_rows)

    s_facets = s_space.dual_facets  # H-rep of B_{S*}: a.phi <= 1
    x_facets = x_space.dual_facets
    u_t = la.transpose(po.r_to_s.matrix)
    v_t = la.transpose(po.r_to_x.matrix)

    # image of the Y dual ball inside the fiber polytope
    for phi in (y.dual_vertices if y.dim else ()):
        psi = la.mat_vec(q_t, phi)
        psi_s, psi_x = psi[:ds], psi[ds:]
        if any(dot(a, psi_s) > 1 for a in s_facets):
            return False
        if any(dot(a, psi_x) > 1 for a in x_facets):
            return False
        if la.mat_vec(u_t, psi_s) != la.mat_vec(v_t, psi_x):
            return False

    # fiber polytope inside the image: its support in every facet-normal
    # direction of the image (one per vertex of the unit ball of Y) is <= 1
    m = ds + dx
    for z in (extreme_points([v for v in _ball_verts(po)]) if y.dim else ()):
        w = la.solve(po.quotient_rows, vec(z))
        a_ub, b_ub = [], []
        for p in (s_space.ball_vertices if ds else ()):
            a_ub.append(list(p) + [Fraction(0)] * dx)
            b_ub.append(Fraction(1))
        for p in (x_space.ball_vertices if dx else ()):
            a_ub.append([Fraction(0)] * ds + list(p))
            b_ub.append(Fraction(1))
        a_eq, b_eq = [], []
        for j in range(po.r_space.dim):
            row = [u_t[j][i] for i in range(ds)] + \
                  [-v_t[j][i] for i in range(dx)]
            a_eq.append(row)
            b_eq.append(Fraction(0))
        res = linprog([-wi for wi in w], a_ub=a_ub, b_ub=b_ub,
                      a_eq=a_eq, b_eq=b_eq)
        if res.status != OPTIMAL or -res.value > 1:
            return False
    return True


def _ball_verts(po: BanachPushout):
    """Vertices of the unit ball of the push-out space (image of the
    ell-1-sum ball vertices under the quotient map)."""
    ds, dx = po.s_space.dim, po.x_space.dim
    pts = []
    for p in (po.s_space.ball_vertices if ds else ()):
        pts.append(tuple(dot(row, p + la.zeros(dx))
                         for row in po.quotient_rows))
    for p in (po.x_space.ball_vertices if dx else ()):
        pts.append(tuple(dot(row, la.zeros(ds) + p)
                         for row in po.quotient_rows))
    return pts


@dataclass(frozen=True)
class DualBall:
    """Dual unit ball in both representations: extreme functionals, and
    facet inequalities a.phi <= 1 (the normals a are exactly the vertices
    of the primal unit ball, by polarity)."""

    vertices: tuple
    facet_normals: tuple


def dual_ball(space: PolytopeSpace) -> DualBall:
    return DualBall(space.dual_vertices, space.dual_facets)


def embed_into_sup_space(space: PolytopeSpace) -> LinearEmbedding:
    """Evaluation at the extreme dual functionals: an isometric embedding
    into the sup-norm space of dimension = number of extreme functionals."""
    ext = space.dual_vertices
    target = sup_space(len(ext))
    matrix = tuple(tuple(f) for f in ext)
    return LinearEmbedding(space, target, matrix)
