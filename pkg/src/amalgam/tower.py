"""Iterated push-out towers and their bookkeeping.

A tower is a finite chain B_0 < B_1 < ... < B_n where each stage is the
push-out of the previous one with an abstract extension S over a chosen
substructure R, starting from the trivial structure.  On top of that this
module provides the saturated-index-set machinery (E(Gamma), saturate,
the skeleton push-out check), completion of extension diagrams by search,
and back-and-forth construction of isomorphisms between tower tops,
including the point-tracking variant.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property

from .errors import DomainError, PreconditionError
from . import linalg as la
from .boolalg import (DualSurjection, Element, FiniteBoolAlg, PushoutSquare,
                      Subalgebra, join_subalgebras, posex_witness, pushout)
from .banach import (BanachPushout, LinearEmbedding, PolytopeSpace,
                     induced_subspace, pushout_banach, zero_space)

BOOLEAN = "boolean"
BANACH = "banach"


@dataclass(frozen=True)
class BoolStepSpec:
    """One boolean tower step: R is the subalgebra of the current stage
    with the given atom blocks (None = trivial), and S is the extension of
    R with fibers[i] atoms over the i-th block (canonical block order)."""

    r_blocks: tuple | None
    fibers: tuple


@dataclass(frozen=True)
class BanachStepSpec:
    """One polytopal tower step: R is the span of r_basis inside the
    current stage, S an abstract space, r_matrix the embedding R -> S
    (columns = images of the r_basis vectors, which must be isometric for
    the stage-induced norm on R)."""

    r_basis: tuple
    s_space: PolytopeSpace
    r_matrix: tuple


@dataclass(frozen=True)
class TowerStep:
    """A tower step together with its push-out certificate; the previous
    stage enters the square as the A-leg (a_to_b / x_to_y), the adjoined
    extension as the S-leg."""

    index: int
    square: object  # PushoutSquare (boolean) or BanachPushout (banach)


@dataclass(frozen=True)
class Tower:
    kind: str
    stages: tuple
    steps: tuple

    @property
    def top(self):
        return self.stages[-1]

    def __len__(self):
        return len(self.steps)

    @cached_property
    def _stage_to_top(self):
        """Embedding of each stage into the top, composed along the steps;
        boolean: DualSurjection per stage; banach: matrix per stage."""
        out = [None] * len(self.stages)
        if self.kind == BOOLEAN:
            for i in range(len(self.stages)):
                emb = None
                for j in range(i, len(self.steps)):
                    leg = self.steps[j].square.a_to_b
                    emb = leg if emb is None else emb.compose(leg)
                out[i] = emb  # None means stage == top
        else:
            for i in range(len(self.stages)):
                m = la.identity(self.top.dim)
                for j in range(len(self.steps) - 1, i - 1, -1):
                    m = la.mat_mul(m, self.steps[j].square.x_to_y.matrix)
                out[i] = m
        return tuple(out)

    def stage_image(self, i):
        """Image of stage i in the top: a Subalgebra (boolean) or a basis
        tuple (banach)."""
        if self.kind == BOOLEAN:
            emb = self._stage_to_top[i]
            if emb is None:
                return Subalgebra.discrete(self.top)
            return emb.image
        return la.columns(self._stage_to_top[i])

    def s_image(self, step_index):
        """Image in the top of the extension S adjoined at the step."""
        step = self.steps[step_index]
        if self.kind == BOOLEAN:
            emb = step.square.s_to_b
            tail = self._stage_to_top[step_index + 1]
            if tail is not None:
                emb = emb.compose(tail)
            return emb.image
        m = la.mat_mul(self._stage_to_top[step_index + 1],
                       step.square.s_to_y.matrix)
        return la.columns(m)

    def r_image(self, step_index):
        """Image in the top of the base R of the step."""
        step = self.steps[step_index]
        if self.kind == BOOLEAN:
            emb = step.square.r_to_a
            tail = self._stage_to_top[step_index]
            if tail is not None:
                emb = emb.compose(tail)
            return emb.image
        m = la.mat_mul(self._stage_to_top[step_index],
                       step.square.r_to_x.matrix)
        return la.columns(m)

    def generated(self, indices):
        """E(Gamma): the substructure of the top generated by the S-parts
        of the listed steps."""
        indices = sorted(set(indices))
        if any(i < 0 or i >= len(self.steps) for i in indices):
            raise DomainError("step index out of range")
        if self.kind == BOOLEAN:
            subs = [Subalgebra.trivial(self.top)]
            subs += [self.s_image(i) for i in indices]
            return join_subalgebras(self.top, subs)
        vectors = []
        for i in indices:
            vectors.extend(self.s_image(i))
        return la.independent_subset(vectors)


def trivial_tower(kind) -> Tower:
    if kind == BOOLEAN:
        return Tower(BOOLEAN, (FiniteBoolAlg((0,)),), ())
    if kind == BANACH:
        return Tower(BANACH, (zero_space(),), ())
    raise DomainError("unknown tower kind %r" % (kind,))


def build_tower(kind, step_specs) -> Tower:
    """Grow a tower from the trivial structure, one push-out per spec."""
    t = trivial_tower(kind)
    stages = list(t.stages)
    steps = []
    for idx, spec in enumerate(step_specs):
        stage = stages[-1]
        if kind == BOOLEAN:
            square = _bool_step(stage, spec)
            stages.append(square.top)
        else:
            square = _banach_step(stage, spec)
            stages.append(square.space)
        steps.append(TowerStep(idx, square))
    return Tower(kind, tuple(stages), tuple(steps))


def _bool_step(stage: FiniteBoolAlg, spec: BoolStepSpec) -> PushoutSquare:
    if spec.r_blocks is None:
        r_sub = Subalgebra.trivial(stage)
    else:
        r_sub = Subalgebra.from_blocks(stage, spec.r_blocks)
    v = DualSurjection.of_subalgebra(r_sub)
    r_alg = v.source_alg
    fibers = tuple(spec.fibers)
    if len(fibers) != len(r_sub.blocks) or any(f < 1 for f in fibers):
        raise PreconditionError("need one positive fiber size per R-atom")
    s_atoms = tuple((b, j) for b in range(len(fibers))
                    for j in range(fibers[b]))
    s_alg = FiniteBoolAlg(s_atoms)
    u = DualSurjection.from_mapping(r_alg, s_alg, {a: a[0] for a in s_atoms})
    return pushout(u, v)


def _banach_step(stage: PolytopeSpace, spec: BanachStepSpec) -> BanachPushout:
    incl = induced_subspace(stage, spec.r_basis)
    if spec.r_basis:
        matrix = la.mat(spec.r_matrix)
    else:
        matrix = tuple(() for _ in range(spec.s_space.dim))
    u = LinearEmbedding(incl.source, spec.s_space, matrix)
    return pushout_banach(u, incl)


# ---------------------------------------------------------------------------
# saturated index sets


@dataclass(frozen=True)
class SaturatedSet:
    ordinals: tuple
    generated: object  # Subalgebra (boolean) or basis tuple (banach)


def _contained(tower: Tower, small, big) -> bool:
    """small substructure-of-top contained in big."""
    if tower.kind == BOOLEAN:
        return big.contains_subalgebra(small)
    cols = la.from_columns(big, nrows=tower.top.dim)
    return all(la.solve(cols, v) is not None for v in small)


def is_saturated(tower: Tower, indices) -> bool:
    """R_alpha <= E(Gamma intersect alpha) for every alpha in Gamma."""
    indices = sorted(set(indices))
    for alpha in indices:
        below = [b for b in indices if b < alpha]
        if not _contained(tower, tower.r_image(alpha),
                          tower.generated(below)):
            return False
    return True


def saturate(tower: Tower, indices) -> SaturatedSet:
    """Close an index set under the saturation condition by adding earlier
    indices, lowest usable index first; max of the set never grows."""
    current = set(indices)
    if any(i < 0 or i >= len(tower.steps) for i in current):
        raise DomainError("step index out of range")
    changed = True
    while changed:
        changed = False
        for alpha in sorted(current):
            below = [b for b in current if b < alpha]
            if _contained(tower, tower.r_image(alpha),
                          tower.generated(below)):
                continue
            added = None
            for beta in range(alpha):
                if beta in current:
                    continue
                if _contained(tower, tower.r_image(alpha),
                              tower.generated(below + [beta])):
                    added = beta
                    break
            if added is None:
                added = next(b for b in range(alpha) if b not in current)
            current.add(added)
            changed = True
            break
    result = tuple(sorted(current))
    sat = SaturatedSet(result, tower.generated(result))
    assert is_saturated(tower, result)
    assert (not indices) or max(result) == max(indices)
    return sat


def skeleton_posex_check(tower: Tower, gamma, delta,
                         banach_budget=2000) -> bool:
    """Whether E(Gamma) has a push-out witness inside E(Gamma union Delta),
    for a saturated Gamma: boolean towers run the projection-closure
    witness construction, polytopal towers search over substructures E(F)
    for the internal push-out certificate."""
    gamma = tuple(sorted(set(gamma)))
    delta = tuple(sorted(set(delta)))
    if not is_saturated(tower, gamma):
        raise PreconditionError("index set is not saturated")
    union = tuple(sorted(set(gamma) | set(delta)))
    if set(union) == set(gamma):
        return True
    if tower.kind == BOOLEAN:
        return _skeleton_check_bool(tower, gamma, union)
    return _skeleton_check_banach(tower, gamma, union, banach_budget)


def _skeleton_check_bool(tower, gamma, union) -> bool:
    # work inside E(Gamma union Delta): quotient the top to its blocks
    big = tower.generated(union)
    labels = {b: i for i, b in enumerate(big.blocks)}
    algebra = FiniteBoolAlg(tuple(range(len(big.blocks))))

    def push_down(sub):
        # a subalgebra of the top contained in big, as a partition of the
        # quotient atoms
        blocks = {}
        for b in big.blocks:
            blocks.setdefault(sub.block_of(next(iter(b))), set()).add(
                labels[b])
        return Subalgebra.from_blocks(algebra, blocks.values())

    a_sub = push_down(tower.generated(gamma))
    gens = []
    for i in union:
        s_img = tower.s_image(i)
        for block in push_down(s_img).blocks:
            gens.append(Element(algebra, block))
    _, verdict = posex_witness(a_sub, gens)
    return verdict.ok


def _skeleton_check_banach(tower, gamma, union, budget) -> bool:
    from .banach import is_internal_pushout_banach
    big = tower.generated(union)
    incl = induced_subspace(tower.top, big)
    ambient = incl.source

    def coords(vectors):
        return tuple(la.solve(incl.matrix, v) for v in vectors)

    a_basis = coords(tower.generated(gamma))
    fresh = tuple(i for i in union if i not in gamma)
    pool = union
    tried = 0
    for size in range(len(fresh), len(pool) + 1):
        for combo in itertools.combinations(pool, size):
            if not set(fresh) <= set(combo):
                continue
            tried += 1
            if tried > budget:
                return False
            s_basis = coords(tower.generated(combo))
            if is_internal_pushout_banach(ambient, s_basis, a_basis).ok:
                return True
    return False


# ---------------------------------------------------------------------------
# diagram completion


def complete_diagram(tower: Tower, a_part, ext, budget=200000):
    """Embed the extension B of a substructure A of the tower top back into
    the top, commuting with the inclusion of A; None if no completion.

    Boolean: a_part is a Subalgebra of the top, ext a PushoutSquare whose
    A-leg algebra has the canonical block labels 0..k-1 of a_part; the
    search runs over dual atom maps atoms(top) -> atoms(B), first hit in
    lexicographic order.  Banach: see complete_diagram_banach.
    """
    if tower.kind == BANACH:
        return complete_diagram_banach(tower.top, a_part, ext, budget=budget)
    if not isinstance(ext, PushoutSquare):
        raise PreconditionError("extension must carry a push-out square")
    if not ext.commutes() or not ext.verdict.ok:
        raise PreconditionError("extension square is not a push-out")
    top = tower.top
    if ext.a_to_b.source_alg.atoms != tuple(range(len(a_part.blocks))):
        raise PreconditionError("extension A-leg does not match the "
                                "canonical labels of the substructure")
    pi = {t: i for i, block in enumerate(a_part.blocks) for t in block}
    rho = ext.a_to_b.mapping
    b_alg = ext.top
    b_atoms = sorted(b_alg.atoms, key=lambda a: b_alg.atom_key({a}))
    top_atoms = sorted(top.atoms, key=lambda a: top.atom_key({a}))
    if len(top_atoms) < len(b_atoms):
        return None

    by_label = {}
    for b in b_atoms:
        by_label.setdefault(rho[b], []).append(b)

    assignment = {}
    hit = {b: 0 for b in b_atoms}

    def feasible(pos):
        remaining = {}
        for t in top_atoms[pos:]:
            remaining[pi[t]] = remaining.get(pi[t], 0) + 1
        for label, bs in by_label.items():
            missing = sum(1 for b in bs if hit[b] == 0)
            if remaining.get(label, 0) < missing:
                return False
        return True

    def search(pos):
        if pos == len(top_atoms):
            return all(hit[b] for b in b_atoms)
        if not feasible(pos):
            return False
        t = top_atoms[pos]
        for b in by_label.get(pi[t], ()):
            assignment[t] = b
            hit[b] += 1
            if search(pos + 1):
                return True
            hit[b] -= 1
            del assignment[t]
        return False

    if not search(0):
        return None
    return DualSurjection.from_mapping(b_alg, top, dict(assignment))


def _entry_lattice(space: PolytopeSpace):
    vals = {Fraction(0)}
    for v in space.ball_vertices:
        for x in v:
            vals.add(x)
            vals.add(-x)
    return tuple(sorted(vals))


def complete_diagram_banach(target: PolytopeSpace, a_basis,
                            ext: BanachPushout, budget=200000):
    """Search an isometric embedding of the push-out extension ext.space
    into the target extending the identification of ext's X-leg with
    span(a_basis); candidate images have entries from the coordinate values
    of the target's unit-ball vertices, capped by the node budget.
    Returns a LinearEmbedding or None."""
    a_basis = tuple(la.vec(b) for b in a_basis)
    b_space = ext.space
    known_cols = la.columns(ext.x_to_y.matrix)
    if len(known_cols) != len(a_basis):
        raise PreconditionError("basis does not match the extension A-leg")
    # complete the known image columns to a basis of B with unit vectors
    basis_b = list(known_cols)
    extra = []
    for j in range(b_space.dim):
        e = tuple(Fraction(1 if i == j else 0) for i in range(b_space.dim))
        if la.rank(tuple(basis_b) + (e,)) > len(basis_b):
            basis_b.append(e)
            extra.append(e)
    entries = _entry_lattice(target)
    counter = [0]

    def candidates(norm_value):
        for combo in itertools.product(entries, repeat=target.dim):
            if target.norm(combo) == norm_value:
                yield la.vec(combo)

    images = list(a_basis)

    def isometric_so_far():
        cols_b = tuple(basis_b[:len(images)])
        cols_t = tuple(images)
        mat_b = la.from_columns(cols_b, nrows=b_space.dim)
        mat_t = la.from_columns(cols_t, nrows=target.dim)
        try:
            sub_b = induced_subspace(b_space, cols_b)
            LinearEmbedding(sub_b.source, target, mat_t)
        except PreconditionError:
            return False
        del mat_b
        return True

    def search(k):
        if k == len(extra):
            return True
        target_norm = b_space.norm(basis_b[len(a_basis) + k])
        for cand in candidates(target_norm):
            counter[0] += 1
            if counter[0] > budget:
                return False
            images.append(cand)
            if la.rank(tuple(images)) == len(images) and isometric_so_far():
                if search(k + 1):
                    return True
            images.pop()
        return False

    if not search(0):
        return None
    change = la.from_columns(tuple(basis_b), nrows=b_space.dim)
    # matrix of the embedding in the standard basis of B
    full = la.from_columns(tuple(images), nrows=target.dim)
    inv_cols = [la.solve(change, tuple(
        Fraction(1 if i == j else 0) for i in range(b_space.dim)))
        for j in range(b_space.dim)]
    inv = la.from_columns(inv_cols, nrows=b_space.dim)
    matrix = la.mat_mul(full, inv)
    return LinearEmbedding(b_space, target, matrix)


# ---------------------------------------------------------------------------
# back-and-forth


@dataclass(frozen=True)
class BackAndForthResult:
    ok: bool
    atom_map: tuple | None      # pairs (top atom of T, top atom of T')
    transcript: tuple           # per-round assignment records, replayable
    stalled_round: int | None = None

    def __bool__(self):
        return self.ok

    def apply(self, element: Element, top_b: FiniteBoolAlg) -> Element:
        m = dict(self.atom_map)
        return Element(top_b, frozenset(m[a] for a in element.atom_set))


@dataclass(frozen=True)
class PointedStructure:
    """A tower with a designated atom of its top algebra."""

    tower: Tower
    point: object

    def __post_init__(self):
        if self.tower.kind != BOOLEAN:
            raise DomainError("designated points require boolean towers")
        if self.point not in self.tower.top.atoms:
            raise DomainError("designated point is not an atom of the top")


def back_and_forth(t1: Tower, t2: Tower) -> BackAndForthResult:
    """Construct an isomorphism of the tower tops by alternately refining a
    block correspondence along the stage filtrations: even rounds split by
    the next stage of the first tower, odd rounds by the second, searching
    size-preserving block maps depth-first in canonical order."""
    return _back_and_forth(t1, t2, None, None)


def pointed_back_and_forth(p: PointedStructure,
                           q: PointedStructure) -> BackAndForthResult:
    """As back_and_forth, additionally forcing the designated atoms onto
    each other at every refinement round."""
    return _back_and_forth(p.tower, q.tower, p.point, q.point)


def _back_and_forth(t1, t2, point1, point2):
    if t1.kind != t2.kind:
        raise DomainError("towers of different kinds")
    if t1.kind != BOOLEAN:
        raise DomainError("back-and-forth runs on boolean towers; use "
                          "complete_diagram_banach for polytopal extensions")
    top1, top2 = t1.top, t2.top
    if len(top1.atoms) != len(top2.atoms):
        return BackAndForthResult(False, None, (), stalled_round=0)

    # round schedule: even rounds consume stages of t1, odd ones of t2
    schedule = []
    i = j = 1
    while i < len(t1.stages) or j < len(t2.stages):
        if i < len(t1.stages):
            schedule.append((0, i))
            i += 1
        if j < len(t2.stages):
            schedule.append((1, j))
            j += 1

    key1 = lambda s: top1.atom_key(s)
    key2 = lambda s: top2.atom_key(s)
    all1 = frozenset(top1.atoms)
    all2 = frozenset(top2.atoms)
    transcript = []
    deepest = [0]

    def refine(pairs, round_no):
        if round_no == len(schedule):
            singles = all(len(a) == 1 for a, _ in pairs)
            assert singles  # final stages are the full algebras
            return pairs
        side, stage = schedule[round_no]
        deepest[0] = max(deepest[0], round_no)
        if side == 0:
            out = _refine_round(pairs, t1.stage_image(stage), key1, key2,
                                point1, point2, swap=False)
        else:
            out = _refine_round([(b, a) for a, b in pairs],
                                t2.stage_image(stage), key2, key1,
                                point2, point1, swap=True)
        for choice, entry in out:
            transcript.append((round_no, side, entry))
            result = refine(choice, round_no + 1)
            if result is not None:
                return result
            transcript.pop()
        return None

    final = refine([(all1, all2)], 0)
    if final is None:
        return BackAndForthResult(False, None, (),
                                  stalled_round=deepest[0])
    atom_map = tuple(sorted(((next(iter(a)), next(iter(b)))
                             for a, b in final),
                            key=lambda p: top1.atom_key({p[0]})))
    return BackAndForthResult(True, atom_map, tuple(transcript))


def _refine_round(pairs, splitter, key_dom, key_cod, point_dom, point_cod,
                  swap):
    """Generate, lazily and in canonical order, all refinements of the
    block correspondence after splitting the domain side by the given
    subalgebra partition.  Yields (new pair list, transcript entry); the
    pair list is swapped back to (T, T') order when the round works on the
    second tower."""
    split_pairs = []
    for a, b in pairs:
        children = sorted(
            {frozenset(a & blk) for blk in splitter.blocks
             if a & blk}, key=key_dom)
        split_pairs.append((a, b, children))

    def per_pair_options(a, b, children):
        sizes = [len(c) for c in children]
        atoms_b = sorted(b, key=lambda x: key_cod({x}))
        options = list(_ordered_partitions(atoms_b, sizes))
        # prefer the aligned choice so identical towers yield the identity
        aligned = tuple(frozenset(c) for c in children)
        if aligned in options:
            options.remove(aligned)
            options.insert(0, aligned)
        for parts in options:
            assignment = list(zip(children, parts))
            if point_dom is not None and point_dom in a:
                holder = next(c for c, p in assignment if point_dom in c)
                part = dict(assignment)[holder]
                if point_cod not in part:
                    continue
            yield assignment

    def product(idx, acc):
        if idx == len(split_pairs):
            flat = [pair for block in acc for pair in block]
            entry = tuple(sorted(
                (tuple(sorted(c, key=repr)), tuple(sorted(p, key=repr)))
                for c, p in flat))
            if swap:
                yield [(p, c) for c, p in flat], entry
            else:
                yield list(flat), entry
            return
        a, b, children = split_pairs[idx]
        for choice in per_pair_options(a, b, children):
            yield from product(idx + 1, acc + [choice])

    return product(0, [])


def _ordered_partitions(atoms, sizes):
    """All ways to split the ordered atom list into labelled parts of the
    given sizes, lexicographically."""
    if not sizes:
        yield ()
        return
    first, rest_sizes = sizes[0], sizes[1:]
    for combo in itertools.combinations(atoms, first):
        remaining = [x for x in atoms if x not in combo]
        for rest in _ordered_partitions(remaining, rest_sizes):
            yield (frozenset(combo),) + rest
