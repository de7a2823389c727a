"""Finite Boolean algebras, subalgebras, dual embeddings and push-outs.

Every algebra here is atomic and identified with the powerset of its atom
set, so an algebra is just an ordered tuple of atom labels, an element is a
subset of atoms, and a subalgebra is a partition of the atoms (its blocks
are the subalgebra's atoms).  Embeddings are carried dually as surjections
between atom sets, which turns the push-out into a fiber product of finite
sets and keeps every certificate exact.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property

from .errors import DomainError, PreconditionError


@dataclass(frozen=True)
class FiniteBoolAlg:
    """A finite Boolean algebra given by its ordered atom labels."""

    atoms: tuple

    def __post_init__(self):
        if len(self.atoms) == 0:
            raise DomainError("an algebra needs at least one atom")
        if len(set(self.atoms)) != len(self.atoms):
            raise DomainError("atom labels must be distinct")

    @cached_property
    def _index(self):
        return {a: i for i, a in enumerate(self.atoms)}

    def atom_key(self, atom_set):
        """Canonical sort key of a subset of atoms (tuple of atom indices)."""
        return tuple(sorted(self._index[a] for a in atom_set))

    def element(self, atom_iterable) -> "Element":
        atom_set = frozenset(atom_iterable)
        if not atom_set <= set(self.atoms):
            raise DomainError("atoms %r do not belong to this algebra"
                              % sorted(atom_set - set(self.atoms), key=repr))
        return Element(self, atom_set)

    @property
    def zero(self) -> "Element":
        return Element(self, frozenset())

    @property
    def one(self) -> "Element":
        return Element(self, frozenset(self.atoms))

    def elements(self):
        """All 2^n elements, in canonical order."""
        for r in range(len(self.atoms) + 1):
            for combo in itertools.combinations(self.atoms, r):
                yield Element(self, frozenset(combo))

    def __len__(self):
        return 2 ** len(self.atoms)


@dataclass(frozen=True)
class Element:
    """An element of a FiniteBoolAlg: a subset of its atoms."""

    algebra: FiniteBoolAlg
    atom_set: frozenset

    def _check(self, other):
        if self.algebra != other.algebra:
            raise DomainError("elements of different algebras")

    def __or__(self, other):
        self._check(other)
        return Element(self.algebra, self.atom_set | other.atom_set)

    def __and__(self, other):
        self._check(other)
        return Element(self.algebra, self.atom_set & other.atom_set)

    def __invert__(self):
        return Element(self.algebra, frozenset(self.algebra.atoms) - self.atom_set)

    def __sub__(self, other):
        self._check(other)
        return Element(self.algebra, self.atom_set - other.atom_set)

    def __le__(self, other):
        self._check(other)
        return self.atom_set <= other.atom_set

    @property
    def is_zero(self):
        return not self.atom_set

    def sort_key(self):
        return self.algebra.atom_key(self.atom_set)


def _sorted_blocks(parent, blocks):
    return tuple(sorted((frozenset(b) for b in blocks), key=parent.atom_key))


@dataclass(frozen=True)
class Subalgebra:
    """A subalgebra of a finite Boolean algebra, stored as the partition of
    the parent's atoms into the subalgebra's atoms (blocks)."""

    parent: FiniteBoolAlg
    blocks: tuple

    @classmethod
    def from_blocks(cls, parent, blocks):
        blocks = tuple(frozenset(b) for b in blocks)
        atoms = set(parent.atoms)
        for b in blocks:
            if not b <= atoms:
                raise DomainError("block contains a foreign atom")
        blocks = _sorted_blocks(parent, blocks)
        seen = set()
        for b in blocks:
            if not b:
                raise DomainError("empty block in partition")
            if b & seen:
                raise DomainError("blocks are not disjoint")
            seen |= b
        if seen != set(parent.atoms):
            raise DomainError("blocks do not cover the atoms")
        return cls(parent, blocks)

    @classmethod
    def trivial(cls, parent):
        return cls(parent, (frozenset(parent.atoms),))

    @classmethod
    def discrete(cls, parent):
        return cls.from_blocks(parent, [{a} for a in parent.atoms])

    @cached_property
    def _block_of(self):
        out = {}
        for b in self.blocks:
            for a in b:
                out[a] = b
        return out

    def block_of(self, atom):
        return self._block_of[atom]

    @property
    def is_discrete(self):
        return all(len(b) == 1 for b in self.blocks)

    @property
    def is_trivial(self):
        return len(self.blocks) == 1

    def element(self, block_indices) -> Element:
        """Element given by a set of block indices."""
        atoms = frozenset().union(*(self.blocks[i] for i in block_indices)) \
            if block_indices else frozenset()
        return Element(self.parent, atoms)

    def elements(self):
        """All elements of the subalgebra, as elements of the parent."""
        for r in range(len(self.blocks) + 1):
            for combo in itertools.combinations(self.blocks, r):
                yield Element(self.parent,
                              frozenset().union(*combo) if combo else frozenset())

    def contains(self, element: Element) -> bool:
        if element.algebra != self.parent:
            raise DomainError("element of a different parent algebra")
        s = element.atom_set
        return all((b <= s) or not (b & s) for b in self.blocks)

    def contains_subalgebra(self, other: "Subalgebra") -> bool:
        """True iff other (as a set of elements) is contained in self, i.e.
        every block of self lies inside a single block of other."""
        if other.parent != self.parent:
            raise DomainError("subalgebras of different parents")
        return all(len({other.block_of(a) for a in b}) == 1 for b in self.blocks)

    def block_elements(self):
        return [Element(self.parent, b) for b in self.blocks]

    def below(self, element: Element) -> Element:
        """Largest element of the subalgebra below the given parent element."""
        if element.algebra != self.parent:
            raise DomainError("element of a different parent algebra")
        s = element.atom_set
        return Element(self.parent,
                       frozenset().union(*[b for b in self.blocks if b <= s])
                       if any(b <= s for b in self.blocks) else frozenset())

    def above(self, element: Element) -> Element:
        """Smallest element of the subalgebra above the given parent element."""
        if element.algebra != self.parent:
            raise DomainError("element of a different parent algebra")
        s = element.atom_set
        hit = [b for b in self.blocks if b & s]
        return Element(self.parent,
                       frozenset().union(*hit) if hit else frozenset())


def generated_subalgebra(algebra: FiniteBoolAlg, generators) -> Subalgebra:
    """Smallest subalgebra containing the given elements: atoms are grouped
    by their membership signature across the generators."""
    gens = list(generators)
    for g in gens:
        if g.algebra != algebra:
            raise DomainError("generator does not belong to the algebra")
    sig = {}
    for a in algebra.atoms:
        key = tuple(a in g.atom_set for g in gens)
        sig.setdefault(key, set()).add(a)
    return Subalgebra.from_blocks(algebra, sig.values())


def join_subalgebras(algebra: FiniteBoolAlg, subalgebras) -> Subalgebra:
    """Subalgebra generated by a family of subalgebras (common refinement)."""
    subs = list(subalgebras)
    sig = {}
    for a in algebra.atoms:
        key = tuple(s.block_of(a) for s in subs)
        sig.setdefault(key, set()).add(a)
    return Subalgebra.from_blocks(algebra, sig.values())


def meet_subalgebras(s1: Subalgebra, s2: Subalgebra) -> Subalgebra:
    """Intersection of two subalgebras: the finest common coarsening of the
    two partitions (connected components of the block-overlap graph)."""
    if s1.parent != s2.parent:
        raise DomainError("subalgebras of different parents")
    parent = s1.parent
    # union-find over atoms
    root = {a: a for a in parent.atoms}

    def find(a):
        while root[a] != a:
            root[a] = root[root[a]]
            a = root[a]
        return a

    def union(a, b):
        ra, rb = find(a), find(b)
        if ra != rb:
            root[ra] = rb

    for s in (s1, s2):
        for b in s.blocks:
            it = iter(b)
            first = next(it)
            for a in it:
                union(first, a)
    groups = {}
    for a in parent.atoms:
        groups.setdefault(find(a), set()).add(a)
    return Subalgebra.from_blocks(parent, groups.values())


def projection(sub: Subalgebra, element: Element, direction: str) -> Element:
    """Principal generator of {a in A : a <= b} (direction 'below') or of the
    dual filter (direction 'above'), for A the subalgebra and b the element."""
    if direction == "below":
        return sub.below(element)
    if direction == "above":
        return sub.above(element)
    raise DomainError("direction must be 'below' or 'above'")


@dataclass(frozen=True)
class PushoutVerdict:
    """Result of an internal push-out check, with a certificate either way."""

    ok: bool
    generation_ok: bool
    interpolation_ok: bool
    meet: Subalgebra
    violation: tuple | None = None  # (a, s) with no interpolant

    def __bool__(self):
        return self.ok


def is_internal_pushout(algebra: FiniteBoolAlg, s_sub: Subalgebra,
                        a_sub: Subalgebra) -> PushoutVerdict:
    """Check whether the algebra is the internal push-out of the two
    subalgebras: generation, plus interpolation of disjoint pairs through
    the intersection subalgebra.

    The interpolation condition and its variant through pairs a <= s are
    both evaluated; they always agree and the shared verdict is returned.
    """
    for sub in (s_sub, a_sub):
        if sub.parent != algebra:
            raise DomainError("subalgebra of a different algebra")
    meet = meet_subalgebras(s_sub, a_sub)
    generation_ok = join_subalgebras(algebra, [s_sub, a_sub]).is_discrete

    violation = None
    # Disjoint-pair form: for each block a of A, the least element r_a of
    # A∩S above a must avoid every S-block disjoint from a.  Checking the
    # blocks of A suffices: both sides are join-homomorphic in a.
    for block in a_sub.blocks:
        a = Element(algebra, block)
        r_a = meet.above(a)
        s_star = ~s_sub.above(a)  # largest element of S disjoint from a
        if not (r_a & s_star).is_zero:
            violation = (a, s_star)
            break
    cond2 = violation is None

    # a <= s form: the least A∩S element above a must sit below the least
    # S element above a.
    cond2prime = all(
        meet.above(Element(algebra, block)) <= s_sub.above(Element(algebra, block))
        for block in a_sub.blocks)
    assert cond2 == cond2prime  # structural equivalence of the two forms

    ok = generation_ok and cond2
    return PushoutVerdict(ok=ok, generation_ok=generation_ok,
                          interpolation_ok=cond2, meet=meet,
                          violation=violation)


def interpolant(meet: Subalgebra, a: Element, s: Element) -> Element:
    """Least element r of the intersection subalgebra with a <= r and
    s <= ~r, for a disjoint pair (a, s).  Raises if none exists."""
    r = meet.above(a)
    if not (r & s).is_zero:
        raise DomainError("pair (a, s) admits no interpolant")
    return r


def interpolant_table(algebra: FiniteBoolAlg, s_sub: Subalgebra,
                      a_sub: Subalgebra) -> dict:
    """Chosen interpolant for every disjoint pair (a, s); the choice is the
    least witness, so the table is canonical."""
    meet = meet_subalgebras(s_sub, a_sub)
    table = {}
    for a in a_sub.elements():
        for s in s_sub.elements():
            if (a & s).is_zero:
                table[(a.atom_set, s.atom_set)] = interpolant(meet, a, s).atom_set
    return table


@dataclass(frozen=True)
class DualSurjection:
    """An embedding source_alg -> target_alg carried dually as a surjection
    atoms(target) -> atoms(source).

    atom_map is stored as a tuple of (target_atom, source_atom) pairs so the
    value stays hashable; use .mapping for dict access.
    """

    source_alg: FiniteBoolAlg
    target_alg: FiniteBoolAlg
    atom_map: tuple

    @classmethod
    def from_mapping(cls, source_alg, target_alg, mapping):
        items = tuple(sorted(mapping.items(),
                             key=lambda kv: target_alg.atom_key({kv[0]})))
        obj = cls(source_alg, target_alg, items)
        obj._validate()
        return obj

    @cached_property
    def mapping(self):
        return dict(self.atom_map)

    def _validate(self):
        m = self.mapping
        if set(m.keys()) != set(self.target_alg.atoms):
            raise DomainError("atom map must be total on the target atoms")
        if set(m.values()) != set(self.source_alg.atoms):
            raise DomainError("atom map must be onto the source atoms")

    def embed(self, element: Element) -> Element:
        """Image of a source element under the embedding (atom preimage)."""
        if element.algebra != self.source_alg:
            raise DomainError("element not in the source algebra")
        return Element(self.target_alg,
                       frozenset(t for t, s in self.atom_map
                                 if s in element.atom_set))

    @cached_property
    def image(self) -> Subalgebra:
        """Image of the embedding as a subalgebra of the target (partition
        by fibers of the atom map)."""
        fibers = {}
        for t, s in self.atom_map:
            fibers.setdefault(s, set()).add(t)
        return Subalgebra.from_blocks(self.target_alg, fibers.values())

    def compose(self, outer: "DualSurjection") -> "DualSurjection":
        """Dual of the composite embedding self.source -> self.target ->
        outer.target (requires outer.source == self.target)."""
        if outer.source_alg != self.target_alg:
            raise DomainError("composition mismatch")
        m = self.mapping
        return DualSurjection.from_mapping(
            self.source_alg, outer.target_alg,
            {t: m[s] for t, s in outer.atom_map})

    @classmethod
    def of_subalgebra(cls, sub: Subalgebra) -> "DualSurjection":
        """Dual of the inclusion of a subalgebra: each parent atom maps to
        its block, with blocks labelled by their canonical index."""
        labels = {b: i for i, b in enumerate(sub.blocks)}
        small = FiniteBoolAlg(tuple(range(len(sub.blocks))))
        return cls.from_mapping(small, sub.parent,
                                {a: labels[sub.block_of(a)]
                                 for a in sub.parent.atoms})


@dataclass(frozen=True)
class PushoutSquare:
    """A commuting square of embeddings R->S, R->A, S->B, A->B carried as
    dual surjections, together with its push-out certificates."""

    r_to_s: DualSurjection
    r_to_a: DualSurjection
    s_to_b: DualSurjection
    a_to_b: DualSurjection

    def __post_init__(self):
        if self.r_to_s.source_alg != self.r_to_a.source_alg:
            raise DomainError("R legs disagree")
        if self.s_to_b.source_alg != self.r_to_s.target_alg:
            raise DomainError("S legs disagree")
        if self.a_to_b.source_alg != self.r_to_a.target_alg:
            raise DomainError("A legs disagree")
        if self.s_to_b.target_alg != self.a_to_b.target_alg:
            raise DomainError("B corners disagree")

    @property
    def top(self) -> FiniteBoolAlg:
        return self.s_to_b.target_alg

    @property
    def base(self) -> FiniteBoolAlg:
        return self.r_to_s.source_alg

    def commutes(self) -> bool:
        # composite B -> S -> R versus B -> A -> R, on atoms
        ms, ma = self.s_to_b.mapping, self.a_to_b.mapping
        mrs, mra = self.r_to_s.mapping, self.r_to_a.mapping
        return all(mrs[ms[t]] == mra[ma[t]] for t in self.top.atoms)

    @cached_property
    def s_image(self) -> Subalgebra:
        return self.s_to_b.image

    @cached_property
    def a_image(self) -> Subalgebra:
        return self.a_to_b.image

    @cached_property
    def verdict(self) -> PushoutVerdict:
        return is_internal_pushout(self.top, self.s_image, self.a_image)

    @cached_property
    def interpolant_table(self) -> dict:
        return interpolant_table(self.top, self.s_image, self.a_image)


def pushout(u: DualSurjection, v: DualSurjection) -> PushoutSquare:
    """Push-out of two embeddings R->S (u) and R->A (v) with common source,
    built dually as the fiber product of the atom surjections."""
    if u.source_alg != v.source_alg:
        raise DomainError("embeddings do not share a source algebra")
    s_alg, a_alg = u.target_alg, v.target_alg
    mu, mv = u.mapping, v.mapping
    atoms = tuple((s, a) for s in s_alg.atoms for a in a_alg.atoms
                  if mu[s] == mv[a])
    top = FiniteBoolAlg(atoms)
    s_to_b = DualSurjection.from_mapping(s_alg, top, {p: p[0] for p in atoms})
    a_to_b = DualSurjection.from_mapping(a_alg, top, {p: p[1] for p in atoms})
    return PushoutSquare(r_to_s=u, r_to_a=v, s_to_b=s_to_b, a_to_b=a_to_b)


def square_from_subalgebras(algebra: FiniteBoolAlg, s_sub: Subalgebra,
                            a_sub: Subalgebra) -> PushoutSquare:
    """View two subalgebras of a common algebra as a commuting square over
    their intersection (whether or not it is a push-out)."""
    meet = meet_subalgebras(s_sub, a_sub)
    s_to_b = DualSurjection.of_subalgebra(s_sub)
    a_to_b = DualSurjection.of_subalgebra(a_sub)
    r_labels = {b: i for i, b in enumerate(meet.blocks)}
    r_alg = FiniteBoolAlg(tuple(range(len(meet.blocks))))
    # atoms of S are the blocks of s_sub; map each to the meet block around it
    r_to_s = DualSurjection.from_mapping(
        r_alg, s_to_b.source_alg,
        {i: r_labels[meet.block_of(next(iter(block)))]
         for i, block in enumerate(s_sub.blocks)})
    r_to_a = DualSurjection.from_mapping(
        r_alg, a_to_b.source_alg,
        {i: r_labels[meet.block_of(next(iter(block)))]
         for i, block in enumerate(a_sub.blocks)})
    return PushoutSquare(r_to_s=r_to_s, r_to_a=r_to_a,
                         s_to_b=s_to_b, a_to_b=a_to_b)


def squares_isomorphic(sq1: PushoutSquare, sq2: PushoutSquare) -> bool:
    """Equality of push-out squares up to relabelling of the top atoms:
    compare the canonical multisets of (S-atom, A-atom) fiber pairs, also
    allowing the S/A coordinate swap."""
    s1 = sorted((sq1.s_to_b.mapping[t], sq1.a_to_b.mapping[t])
                for t in sq1.top.atoms)
    s2 = sorted((sq2.s_to_b.mapping[t], sq2.a_to_b.mapping[t])
                for t in sq2.top.atoms)
    s2_swapped = sorted((b, a) for a, b in s2)
    return s1 == s2 or s1 == s2_swapped


@dataclass(frozen=True)
class PosexWitness:
    """Result of the witness closure: the constructed subalgebra S, the
    push-out verdict for (S, A), and how many closure rounds it took."""

    s_sub: Subalgebra
    verdict: PushoutVerdict
    iterations: int

    def __iter__(self):
        return iter((self.s_sub, self.verdict))


def posex_witness(a_sub: Subalgebra, generators) -> PosexWitness:
    """Closure construction of a push-out witness: starting from the
    subalgebra generated by the given elements, repeatedly adjoin the lower
    and upper projections into A of everything constructed so far.

    The verdict field reports is_internal_pushout(B, S, A).
    Raises PreconditionError if the generators do not generate B over A.
    """
    algebra = a_sub.parent
    gens = list(generators)
    for g in gens:
        if g.algebra != algebra:
            raise DomainError("generator does not belong to the algebra")
    full = join_subalgebras(algebra, [a_sub, generated_subalgebra(algebra, gens)])
    if not full.is_discrete:
        raise PreconditionError("generators do not generate B over A")

    s_sub = generated_subalgebra(algebra, gens)
    rounds = 0
    for _ in range(len(algebra)):
        # Adjoining the lower and upper projections of every element of S
        # is the same as adjoining the lower projections of the co-atoms:
        # below is a meet-homomorphism, every element is a meet of block
        # complements, and above(x) = ~below(~x).
        adjoined = [a_sub.below(~Element(algebra, block))
                    for block in s_sub.blocks]
        nxt = join_subalgebras(
            algebra, [s_sub, generated_subalgebra(algebra, adjoined)])
        if nxt == s_sub:
            break
        s_sub = nxt
        rounds += 1
    verdict = is_internal_pushout(algebra, s_sub, a_sub)
    return PosexWitness(s_sub, verdict, rounds)


def _is_ideal(a_sub: Subalgebra, elems) -> bool:
    elems = set(e.atom_set for e in elems)
    if frozenset() not in elems:
        return False
    members = [Element(a_sub.parent, e) for e in elems]
    for x in members:
        if not a_sub.contains(x):
            return False
        for y in members:
            if (x.atom_set | y.atom_set) not in elems:
                return False
    # downward closure inside A
    for a in a_sub.elements():
        if any(a.atom_set <= e and a.atom_set not in elems for e in elems):
            return False
    return True


def ideal_complete_witness(a_sub: Subalgebra, ideal_i, ideal_j):
    """Search for c in B with {a in A : a <= c} = I and {a in A : a <= ~c} = J.

    I and J must be orthogonal ideals of A.  Returns the first such element
    in canonical order, or None if the pair admits no witness in B.
    """
    algebra = a_sub.parent
    ideal_i = list(ideal_i)
    ideal_j = list(ideal_j)
    if not _is_ideal(a_sub, ideal_i) or not _is_ideal(a_sub, ideal_j):
        raise PreconditionError("inputs must be ideals of A containing 0")
    for x in ideal_i:
        for y in ideal_j:
            if not (x & y).is_zero:
                raise PreconditionError("ideals are not orthogonal")
    want_i = {e.atom_set for e in ideal_i}
    want_j = {e.atom_set for e in ideal_j}
    for c in algebra.elements():
        got_i = {a.atom_set for a in a_sub.elements() if a <= c}
        if got_i != want_i:
            continue
        cc = ~c
        got_j = {a.atom_set for a in a_sub.elements() if a <= cc}
        if got_j == want_j:
            return c
    return None


def leq_rel(a_sub: Subalgebra, b: Element, q_set, side: str) -> bool:
    """The <=_A relation between an element and a subset Q of A.

    side 'b_below_Q': {a in A : b <= a} equals the filter generated by Q.
    side 'Q_below_b': {a in A : a <= b} equals the ideal generated by Q.
    """
    q_set = list(q_set)
    for q in q_set:
        if not a_sub.contains(q):
            raise DomainError("Q must be a subset of A")
    algebra = a_sub.parent
    if side == "b_below_Q":
        meet = algebra.one
        for q in q_set:
            meet = meet & q
        return a_sub.above(b) == meet
    if side == "Q_below_b":
        join = algebra.zero
        for q in q_set:
            join = join | q
        return a_sub.below(b) == join
    raise DomainError("side must be 'b_below_Q' or 'Q_below_b'")


def free_boolean_algebra(names):
    """The free Boolean algebra on the given generator names: atoms are the
    sign patterns, generators are recoverable via free_generator."""
    names = tuple(names)
    atoms = tuple(itertools.product((0, 1), repeat=len(names)))
    return FiniteBoolAlg(atoms), names


def free_generator(algebra: FiniteBoolAlg, names, name) -> Element:
    i = names.index(name)
    return Element(algebra, frozenset(a for a in algebra.atoms if a[i] == 1))
