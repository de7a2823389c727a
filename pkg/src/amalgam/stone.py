"""Finite Stone spaces, pull-back squares of surjections, and the executable
equivalence between Boolean push-outs and dual pull-backs.

A finite compact zero-dimensional space is just a finite discrete set, so
Stone duality here is the identification algebra <-> atom set, embedding <->
atom surjection.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

from .boolalg import (DualSurjection, Element, FiniteBoolAlg, PushoutSquare,
                      PushoutVerdict, Subalgebra, is_internal_pushout)
from .errors import DomainError, PreconditionError


@dataclass(frozen=True)
class FiniteSpace:
    """A finite discrete space given by its ordered point labels."""

    points: tuple

    def __post_init__(self):
        if len(self.points) == 0:
            raise DomainError("a space needs at least one point")
        if len(set(self.points)) != len(self.points):
            raise DomainError("point labels must be distinct")


@dataclass(frozen=True)
class SurjectionMap:
    """A surjective map between finite spaces, stored as sorted pairs."""

    source: FiniteSpace
    target: FiniteSpace
    pairs: tuple

    @classmethod
    def from_mapping(cls, source, target, mapping):
        items = tuple(sorted(mapping.items(),
                             key=lambda kv: source.points.index(kv[0])))
        obj = cls(source, target, items)
        obj._validate()
        return obj

    @cached_property
    def mapping(self):
        return dict(self.pairs)

    def _validate(self):
        m = self.mapping
        if set(m.keys()) != set(self.source.points):
            raise DomainError("map must be total on the source")
        if set(m.values()) != set(self.target.points):
            raise DomainError("map must be onto the target")

    def __call__(self, point):
        return self.mapping[point]

    def compose(self, inner: "SurjectionMap") -> "SurjectionMap":
        """self o inner (inner first)."""
        if inner.target != self.source:
            raise DomainError("composition mismatch")
        return SurjectionMap.from_mapping(
            inner.source, self.target,
            {p: self.mapping[inner.mapping[p]] for p in inner.source.points})


@dataclass(frozen=True)
class SquareOfSpaces:
    """A commuting square of surjections f: K->L, g: K->S, u: S->R, v: L->R."""

    f: SurjectionMap
    g: SurjectionMap
    u: SurjectionMap
    v: SurjectionMap

    def __post_init__(self):
        if self.f.source != self.g.source:
            raise DomainError("f and g must share their source K")
        if self.u.source != self.g.target or self.v.source != self.f.target:
            raise DomainError("square legs do not line up")
        if self.u.target != self.v.target:
            raise DomainError("u and v must share their target R")

    @property
    def corner(self) -> FiniteSpace:
        return self.f.source

    def commutes(self) -> bool:
        return all(self.u(self.g(x)) == self.v(self.f(x))
                   for x in self.corner.points)


@dataclass(frozen=True)
class PullbackVerdict:
    ok: bool
    injectivity_ok: bool
    surjectivity_ok: bool
    # a pair of corner points with equal images, or a compatible pair with
    # no corner preimage
    witness: tuple | None = None

    def __bool__(self):
        return self.ok


def stone_dual(algebra: FiniteBoolAlg) -> FiniteSpace:
    """Stone space of a finite Boolean algebra: its set of atoms."""
    return FiniteSpace(algebra.atoms)


def clopen_algebra(space: FiniteSpace) -> FiniteBoolAlg:
    """Algebra of clopen sets of a finite discrete space: its powerset."""
    return FiniteBoolAlg(space.points)


def dual_of_embedding(e: DualSurjection) -> SurjectionMap:
    """The surjection of Stone spaces dual to an embedding of algebras."""
    return SurjectionMap.from_mapping(stone_dual(e.target_alg),
                                      stone_dual(e.source_alg), e.mapping)


def embedding_of_surjection(m: SurjectionMap) -> DualSurjection:
    """The algebra embedding dual to a surjection of finite spaces."""
    return DualSurjection.from_mapping(clopen_algebra(m.target),
                                       clopen_algebra(m.source), m.mapping)


def pullback(u: SurjectionMap, v: SurjectionMap) -> SquareOfSpaces:
    """Canonical pull-back of u: S->R and v: L->R: the fiber product with
    coordinate projections, points sorted lexicographically."""
    if u.target != v.target:
        raise DomainError("maps do not share a target")
    pts = tuple((x, y) for x in u.source.points for y in v.source.points
                if u(x) == v(y))
    corner = FiniteSpace(pts)
    g = SurjectionMap.from_mapping(corner, u.source, {p: p[0] for p in pts})
    f = SurjectionMap.from_mapping(corner, v.source, {p: p[1] for p in pts})
    return SquareOfSpaces(f=f, g=g, u=u, v=v)


def is_pullback_diagram(sq: SquareOfSpaces) -> PullbackVerdict:
    """Check the two pull-back conditions: joint injectivity of (f, g), and
    joint surjectivity onto the compatible pairs."""
    if not sq.commutes():
        raise PreconditionError("square does not commute")
    seen = {}
    for x in sq.corner.points:
        key = (sq.g(x), sq.f(x))
        if key in seen:
            return PullbackVerdict(False, False, True, witness=(seen[key], x))
        seen[key] = x
    for s in sq.u.source.points:
        for l in sq.v.source.points:
            if sq.u(s) == sq.v(l) and (s, l) not in seen:
                return PullbackVerdict(False, True, False, witness=(s, l))
    return PullbackVerdict(True, True, True)


def space_square_of(po: PushoutSquare) -> SquareOfSpaces:
    """Dualize the four embeddings of an algebra square."""
    return SquareOfSpaces(f=dual_of_embedding(po.a_to_b),
                          g=dual_of_embedding(po.s_to_b),
                          u=dual_of_embedding(po.r_to_s),
                          v=dual_of_embedding(po.r_to_a))


def algebra_square_of(sq: SquareOfSpaces) -> PushoutSquare:
    """Clopen-algebra square of a square of spaces."""
    return PushoutSquare(r_to_s=embedding_of_surjection(sq.u),
                         r_to_a=embedding_of_surjection(sq.v),
                         s_to_b=embedding_of_surjection(sq.g),
                         a_to_b=embedding_of_surjection(sq.f))


def duality_square_check(po: PushoutSquare) -> bool:
    """Push-out verdict of the algebra square equals the pull-back verdict
    of its Stone dual; returns the (shared) pull-back verdict."""
    space_verdict = is_pullback_diagram(space_square_of(po))
    return bool(space_verdict)
