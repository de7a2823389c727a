"""Seeded random generators for structures, squares and towers.

Everything is driven by a caller-supplied random.Random, so a fixed seed
reproduces the exact same stream of instances.
"""

from __future__ import annotations

import random
from fractions import Fraction

from . import linalg as la
from .boolalg import (DualSurjection, Element, FiniteBoolAlg, PushoutSquare,
                      Subalgebra, pushout, square_from_subalgebras)
from .banach import (LinearEmbedding, PolytopeSpace, embed_into_sup_space,
                     induced_subspace, l1_space, l1_sum, sup_space)
from .tower import BOOLEAN, BoolStepSpec, Tower, build_tower


def rand_algebra(rng: random.Random, max_atoms: int) -> FiniteBoolAlg:
    n = rng.randint(1, max_atoms)
    return FiniteBoolAlg(tuple(range(n)))


def rand_partition(rng: random.Random, items, max_blocks=None):
    """A uniform-ish random partition: each item joins a random block."""
    items = list(items)
    k = rng.randint(1, max_blocks or len(items))
    blocks = {}
    for i, item in enumerate(items):
        blocks.setdefault(i if i < k else rng.randrange(k), set()).add(item)
    return [b for b in blocks.values() if b]


def rand_subalgebra(rng: random.Random, algebra: FiniteBoolAlg) -> Subalgebra:
    return Subalgebra.from_blocks(algebra,
                                  rand_partition(rng, algebra.atoms))


def rand_coarsening(rng: random.Random, sub: Subalgebra) -> Subalgebra:
    """A random subalgebra of a subalgebra: merge its blocks at random."""
    groups = rand_partition(rng, range(len(sub.blocks)))
    blocks = [frozenset().union(*(sub.blocks[i] for i in g)) for g in groups]
    return Subalgebra.from_blocks(sub.parent, blocks)


def rand_element(rng: random.Random, algebra: FiniteBoolAlg) -> Element:
    return algebra.element(a for a in algebra.atoms if rng.random() < 0.5)


def rand_surjection_onto(rng: random.Random, target: FiniteBoolAlg,
                         source_atoms: int) -> DualSurjection:
    """Dual of a random embedding of a source_atoms-atom algebra into an
    extension whose dual map lands onto the target's atoms... i.e. a random
    surjection atoms(target) -> atoms(source)."""
    n = len(target.atoms)
    source_atoms = min(source_atoms, n)
    source = FiniteBoolAlg(tuple(range(source_atoms)))
    values = list(range(source_atoms))
    values += [rng.randrange(source_atoms) for _ in range(n - source_atoms)]
    rng.shuffle(values)
    mapping = dict(zip(target.atoms, values))
    return DualSurjection.from_mapping(source, target, mapping)


def rand_pushout_square(rng: random.Random, max_atoms: int) -> PushoutSquare:
    """A genuine push-out square: random R and random extensions S, A."""
    r = FiniteBoolAlg(tuple(range(rng.randint(1, max(1, max_atoms // 2)))))
    s = _rand_extension(rng, r, max_atoms)
    a = _rand_extension(rng, r, max_atoms)
    return pushout(s, a)


def _rand_extension(rng, r_alg, max_atoms) -> DualSurjection:
    """Dual of a random embedding of r_alg into a bigger algebra."""
    k = len(r_alg.atoms)
    n = rng.randint(k, max_atoms)
    target = FiniteBoolAlg(tuple(range(n)))
    values = list(r_alg.atoms)
    values += [rng.choice(r_alg.atoms) for _ in range(n - k)]
    rng.shuffle(values)
    return DualSurjection.from_mapping(r_alg, target,
                                       dict(zip(target.atoms, values)))


def rand_square(rng: random.Random, max_atoms: int) -> PushoutSquare:
    """Half the time a true push-out square, half the time the square of
    two arbitrary subalgebras over their intersection (often not one)."""
    if rng.random() < 0.5:
        return rand_pushout_square(rng, max_atoms)
    algebra = rand_algebra(rng, max_atoms)
    return square_from_subalgebras(algebra, rand_subalgebra(rng, algebra),
                                   rand_subalgebra(rng, algebra))


# ---------------------------------------------------------------------------
# polytopal side


def rand_space(rng: random.Random, max_dim: int, max_gens: int,
               coord_bound: int = 3) -> PolytopeSpace:
    d = rng.randint(1, max_dim)
    gens = set()
    # random symmetric functionals; top up with +-e_i so the gens span
    for _ in range(rng.randint(1, max(1, max_gens // 2))):
        g = tuple(Fraction(rng.randint(-coord_bound, coord_bound))
                  for _ in range(d))
        if any(x != 0 for x in g):
            gens.add(g)
            gens.add(tuple(-x for x in g))
    if la.rank(tuple(gens)) < d:
        for i in range(d):
            e = tuple(Fraction(1 if j == i else 0) for j in range(d))
            gens.add(e)
            gens.add(tuple(-x for x in e))
    return PolytopeSpace.create(d, gens)


def rand_vector(rng: random.Random, dim: int, bound: int = 6,
                den_bound: int = 4):
    return tuple(Fraction(rng.randint(-bound, bound),
                          rng.randint(1, den_bound)) for _ in range(dim))


def rand_subspace_basis(rng: random.Random, space: PolytopeSpace, dim: int):
    """A random independent family of integer vectors in the space."""
    basis = []
    guard = 0
    while len(basis) < dim and guard < 100:
        guard += 1
        v = tuple(Fraction(rng.randint(-2, 2)) for _ in range(space.dim))
        if la.rank(tuple(basis) + (v,)) > len(basis):
            basis.append(v)
    return tuple(basis)


def rand_isometric_pair(rng: random.Random, r_dim: int, increment: int):
    """Two isometric embeddings with a common source R of the given
    dimension: u realizes R as a subspace of a random space, v embeds the
    same R into an ell-1 sum or a sup-norm space."""
    s_space = rand_space(rng, r_dim + increment, 6)
    while s_space.dim < r_dim:
        s_space = rand_space(rng, r_dim + increment, 6)
    basis = rand_subspace_basis(rng, s_space, r_dim)
    u = induced_subspace(s_space, basis)
    r_space = u.source
    choice = rng.randrange(3)
    if choice == 0 and len(r_space.dual_vertices) <= r_dim + increment + 1:
        # keep the sup-space target low-dimensional, or the facet
        # enumeration of the push-out ball explodes combinatorially
        v = embed_into_sup_space(r_space)
    elif choice == 1 and increment > 0:
        pad = l1_space(rng.randint(1, increment))
        big = l1_sum(r_space, pad)
        matrix = tuple(tuple(Fraction(1 if i == j else 0)
                             for j in range(r_space.dim))
                       for i in range(big.dim))
        v = LinearEmbedding(r_space, big, matrix)
    else:
        v = LinearEmbedding.identity(r_space)
    return u, v


# ---------------------------------------------------------------------------
# towers


def rand_free_tower_steps(rng: random.Random, max_steps: int,
                          max_atoms: int):
    """A multiset of free steps (trivial R) whose product of fiber sizes
    stays within the atom cap."""
    steps = []
    total = 1
    for _ in range(rng.randint(1, max_steps)):
        k = rng.randint(2, 3)
        if total * k > max_atoms:
            break
        total *= k
        steps.append(BoolStepSpec(None, (k,)))
    if not steps:
        steps = [BoolStepSpec(None, (2,))]
    return steps


def rand_bool_tower(rng: random.Random, max_steps: int, max_atoms: int,
                    free_only: bool = False) -> Tower:
    """A random boolean tower; non-free steps choose a random subalgebra of
    the current stage as R and random fiber sizes."""
    t = build_tower(BOOLEAN, [])
    for _ in range(rng.randint(1, max_steps)):
        stage = t.top
        if free_only or rng.random() < 0.4 or len(stage.atoms) == 1:
            r_blocks, n_blocks = None, 1
        else:
            sub = rand_subalgebra(rng, stage)
            r_blocks, n_blocks = tuple(sub.blocks), len(sub.blocks)
        fibers = tuple(rng.randint(1, 3) for _ in range(n_blocks))
        spec = BoolStepSpec(r_blocks, fibers)
        grown = _grown_atoms(stage, spec)
        if grown > max_atoms:
            continue
        t = extend_tower(t, spec)
    return t


def _grown_atoms(stage, spec: BoolStepSpec) -> int:
    if spec.r_blocks is None:
        return len(stage.atoms) * spec.fibers[0]
    return sum(len(block) * f
               for block, f in zip(
                   sorted((frozenset(b) for b in spec.r_blocks),
                          key=stage.atom_key), spec.fibers))


def extend_tower(tower: Tower, spec) -> Tower:
    """The tower with one more step appended."""
    from .tower import TowerStep, _banach_step, _bool_step
    if tower.kind == BOOLEAN:
        square = _bool_step(tower.top, spec)
        stage = square.top
    else:
        square = _banach_step(tower.top, spec)
        stage = square.space
    return Tower(tower.kind, tower.stages + (stage,),
                 tower.steps + (TowerStep(len(tower.steps), square),))
