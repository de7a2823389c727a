"""Property suites: seeded batches of law checks with JSON-able reports.

Each suite returns a plain dict (serializable with serialization.dumps)
with the seed, instance count, parameters, and a list of violations; a
violation carries a replayable counterexample, shrunk by deleting atoms or
dual generators while the failure persists.
"""

from __future__ import annotations

import itertools
import random
from fractions import Fraction

from . import linalg as la
from . import serialization as ser
from .boolalg import (Element, FiniteBoolAlg, Subalgebra,
                      free_boolean_algebra, free_generator,
                      generated_subalgebra, is_internal_pushout,
                      join_subalgebras, meet_subalgebras, posex_witness,
                      pushout)
from .banach import (dualball_pullback_check, embed_into_sup_space,
                     is_internal_pushout_banach, pushout_banach,
                     quotient_norm)
from .lp import OPTIMAL
from .randgen import (rand_algebra, rand_coarsening, rand_element,
                      rand_free_tower_steps, rand_pushout_square,
                      rand_space, rand_square, rand_subalgebra, rand_vector,
                      rand_isometric_pair, _rand_extension)
from .stone import duality_square_check, algebra_square_of, \
    is_pullback_diagram, space_square_of
from .tower import (BOOLEAN, BoolStepSpec, PointedStructure, back_and_forth,
                    build_tower, is_saturated, pointed_back_and_forth,
                    saturate, skeleton_posex_check)

SUITES = {}


def _suite(name):
    def register(fn):
        SUITES[name] = fn
        return fn
    return register


def _report(name, seed, params, instances, violations):
    return {
        "suite": name,
        "seed": seed,
        "params": params,
        "instances": instances,
        "violations": sorted(violations, key=ser.dumps),
        "ok": not violations,
    }


# ---------------------------------------------------------------------------
# shrinking


def shrink_pushout_failure(algebra, s_sub, a_sub, expected):
    """Smallest sub-instance (by deleting atoms) on which the push-out
    verdict still differs from the expected one."""

    def still_fails(alg, s, a):
        return is_internal_pushout(alg, s, a).ok != expected

    changed = True
    while changed and len(algebra.atoms) > 1:
        changed = False
        for atom in algebra.atoms:
            keep = tuple(x for x in algebra.atoms if x != atom)
            smaller = FiniteBoolAlg(keep)
            s2 = _restrict(smaller, s_sub)
            a2 = _restrict(smaller, a_sub)
            if s2 is None or a2 is None:
                continue
            if still_fails(smaller, s2, a2):
                algebra, s_sub, a_sub = smaller, s2, a2
                changed = True
                break
    return algebra, s_sub, a_sub


def _restrict(smaller, sub):
    keep = set(smaller.atoms)
    blocks = [frozenset(b & keep) for b in sub.blocks]
    blocks = [b for b in blocks if b]
    if not blocks:
        return None
    return Subalgebra.from_blocks(smaller, blocks)


def _pushout_violation(algebra, s_sub, a_sub, expected, label):
    algebra, s_sub, a_sub = shrink_pushout_failure(
        algebra, s_sub, a_sub, expected)
    return {
        "law": label,
        "expected": expected,
        "algebra": ser.algebra_to_json(algebra),
        "s": ser.subalgebra_to_json(s_sub)["blocks"],
        "a": ser.subalgebra_to_json(a_sub)["blocks"],
    }


# ---------------------------------------------------------------------------
# boolean push-out laws


def _po_in_join(s_sub, a_sub):
    """Internal push-out verdict of two subalgebras inside their join,
    together with the data needed to state it there."""
    big = join_subalgebras(s_sub.parent, [s_sub, a_sub])
    labels = {b: i for i, b in enumerate(big.blocks)}
    algebra = FiniteBoolAlg(tuple(range(len(big.blocks))))

    def down(sub):
        blocks = {}
        for b in big.blocks:
            blocks.setdefault(sub.block_of(next(iter(b))), set()).add(
                labels[b])
        return Subalgebra.from_blocks(algebra, blocks.values())

    s2, a2 = down(s_sub), down(a_sub)
    return algebra, s2, a2, is_internal_pushout(algebra, s2, a2)


def _check_law(rng, law, max_atoms):
    """One instance of a push-out law; returns None or a violation dict.
    Instances are constructed so the law's premises hold (and re-verified;
    premise failures make the instance a skip, not a violation)."""
    if law == 1:
        # stable under increasing chains of S over a fixed A
        sq = rand_pushout_square(rng, max_atoms)
        b, s, a = sq.top, sq.s_image, sq.a_image
        a1 = rand_coarsening(rng, a)
        a0 = rand_coarsening(rng, a1)
        chain = [join_subalgebras(b, [s, x]) for x in (a0, a1, a)]
        for s_i in chain:
            if not is_internal_pushout(b, s_i, a).ok:
                return None  # premise must hold (law 2); treat as skip
        top_s = join_subalgebras(b, chain)
        if not is_internal_pushout(b, top_s, a).ok:
            return _pushout_violation(b, top_s, a, True, "law1")
    elif law == 2:
        sq = rand_pushout_square(rng, max_atoms)
        b, s, a = sq.top, sq.s_image, sq.a_image
        s_small = rand_coarsening(rng, s)
        a_small = rand_coarsening(rng, a)
        s2 = join_subalgebras(b, [s, a_small])
        a2 = join_subalgebras(b, [a, s_small])
        if not is_internal_pushout(b, s2, a2).ok:
            return _pushout_violation(b, s2, a2, True, "law2")
    elif law in (3, 5):
        # iterated push-outs compose (two steps for law 3, three for 5)
        steps = 2 if law == 3 else 3
        s0 = rand_algebra(rng, max(1, max_atoms // 2))
        u = _rand_extension(rng, s0, max_atoms)   # S0 -> S1
        v = _rand_extension(rng, s0, max_atoms)   # S0 -> B0
        sq = pushout(u, v)
        s0_in_top = sq.r_to_a.compose(sq.a_to_b)
        b0_in_top = sq.a_to_b
        s_top = sq.s_to_b
        for _ in range(steps - 1):
            u2 = _rand_extension(rng, s_top.source_alg, max_atoms)
            sq = pushout(u2, s_top)
            s0_in_top = s0_in_top.compose(sq.a_to_b)
            b0_in_top = b0_in_top.compose(sq.a_to_b)
            s_top = sq.s_to_b
        b = sq.top
        s_img, b0_img, s0_img = s_top.image, b0_in_top.image, s0_in_top.image
        verdict = is_internal_pushout(b, s_img, b0_img)
        meet_ok = meet_subalgebras(s_img, b0_img) == s0_img
        if not (verdict.ok and meet_ok):
            return _pushout_violation(b, s_img, b0_img, True,
                                      "law%d" % law)
    elif law == 4:
        sq = rand_pushout_square(rng, max_atoms)
        b, s, b0 = sq.top, sq.s_image, sq.a_image
        s0 = meet_subalgebras(s, b0)
        mid = join_subalgebras(b, [s0, rand_coarsening(rng, s)])
        chain_s = [s0, mid, s]
        for s_n in chain_s:
            b_n = join_subalgebras(b, [b0, s_n])
            alg, s2, a2, verdict = _po_in_join(s_n, b0)
            if not verdict.ok or \
                    meet_subalgebras(s_n, b0) != s0:
                return None  # premise fails (can happen); skip
            del b_n, alg, s2, a2
        union_s = join_subalgebras(b, chain_s)
        verdict = is_internal_pushout(b, union_s, b0)
        if not (verdict.ok and meet_subalgebras(union_s, b0) == s0):
            return _pushout_violation(b, union_s, b0, True, "law4")
    elif law == 6:
        algebra = rand_algebra(rng, max_atoms)
        a2 = rand_subalgebra(rng, algebra)
        s2 = rand_subalgebra(rng, algebra)
        a1 = rand_coarsening(rng, a2)
        s1 = rand_coarsening(rng, s2)
        for a_i in (a1, a2):
            for s_j in (s1, s2):
                if not _po_in_join(s_j, a_i)[3].ok:
                    return None  # premise fails; skip
        alg, s_d, a_d, verdict = _po_in_join(s2, a2)
        if not verdict.ok:
            return _pushout_violation(alg, s_d, a_d, True, "law6")
    else:
        raise ValueError("no such law %r" % (law,))
    return None


@_suite("boolean")
def suite_boolean_laws(seed=0, instances=1000, max_atoms=8, **_):
    rng = random.Random(seed)
    violations = []
    for i in range(instances):
        law = (i % 6) + 1
        v = _check_law(rng, law, max_atoms)
        if v is not None:
            v["instance"] = i
            violations.append(v)
    return _report("boolean", seed, {"max_atoms": max_atoms}, instances,
                   violations)


# ---------------------------------------------------------------------------
# posex witness soundness


@_suite("posex")
def suite_posex(seed=0, instances=500, max_atoms=8, **_):
    rng = random.Random(seed)
    violations = []
    for i in range(instances):
        algebra = rand_algebra(rng, max_atoms)
        a_sub = rand_subalgebra(rng, algebra)
        gens = [rand_element(rng, algebra)
                for _ in range(rng.randint(1, 3))]
        full = join_subalgebras(
            algebra, [a_sub, generated_subalgebra(algebra, gens)])
        if not full.is_discrete:
            gens += [algebra.element({x}) for x in algebra.atoms]
        w = posex_witness(a_sub, gens)
        if not w.verdict.ok or w.iterations > len(algebra.atoms):
            violations.append({
                "instance": i,
                "algebra": ser.algebra_to_json(algebra),
                "a": ser.subalgebra_to_json(a_sub)["blocks"],
                "iterations": w.iterations,
                "verdict_ok": w.verdict.ok,
            })
    return _report("posex", seed, {"max_atoms": max_atoms}, instances,
                   violations)


# ---------------------------------------------------------------------------
# the two-generator counterexample


@_suite("counterexample")
def suite_counterexample(seed=0, **_):
    algebra, names = free_boolean_algebra(("x1", "x2", "y"))
    x1 = free_generator(algebra, names, "x1")
    x2 = free_generator(algebra, names, "x2")
    y = free_generator(algebra, names, "y")
    a_sub = generated_subalgebra(algebra, [x1, x2])
    s_sub = generated_subalgebra(algebra, [y])
    d_sub = generated_subalgebra(algebra, [x1, x2, x1 & y, x2 & y])
    checks = {}
    checks["po_s_a"] = is_internal_pushout(algebra, s_sub, a_sub).ok is True
    vd = is_internal_pushout(algebra, s_sub, d_sub)
    checks["po_s_d_false"] = vd.ok is False
    checks["po_s_d_witness"] = vd.violation is not None
    meet_sd = meet_subalgebras(s_sub, d_sub)
    checks["s_meet_d_trivial"] = meet_sd.is_trivial
    regen = join_subalgebras(algebra, [meet_sd, a_sub])
    checks["d_not_generated"] = regen != d_sub
    checks["a_inside_d"] = d_sub.contains_subalgebra(a_sub)
    violations = [{"check": k} for k, v in sorted(checks.items()) if not v]
    return _report("counterexample", seed, {}, len(checks), violations)


# ---------------------------------------------------------------------------
# Stone duality


@_suite("duality")
def suite_duality(seed=0, instances=500, max_atoms=8, **_):
    rng = random.Random(seed)
    violations = []
    for i in range(instances):
        sq = rand_square(rng, max_atoms)
        po_ok = sq.verdict.ok and sq.commutes()
        space_sq = space_square_of(sq)
        pb = is_pullback_diagram(space_sq)
        back = algebra_square_of(space_sq)
        agree = (po_ok == pb.ok == duality_square_check(sq)
                 == (back.verdict.ok and back.commutes()))
        if not agree:
            violations.append({
                "instance": i,
                "pushout_ok": po_ok,
                "pullback_ok": pb.ok,
                "roundtrip_ok": back.verdict.ok,
                "square": ser.square_to_json(sq),
            })
    return _report("duality", seed, {"max_atoms": max_atoms}, instances,
                   violations)


# ---------------------------------------------------------------------------
# quotient norm against the breakpoint oracle


def quotient_norm_oracle(space, v_basis, y):
    """Brute-force minimum of max_f f(y + V lambda): the optimum of this
    coercive piecewise-linear program sits at a point where k+1 of the
    epigraph constraints are tight, so solve all (k+1)-subsets."""
    v_basis = tuple(la.vec(b) for b in v_basis)
    y = la.vec(y)
    gens = space.dual_gens
    k = len(v_basis)
    if k == 0:
        return space.norm(y)
    best = None
    for subset in itertools.combinations(gens, k + 1):
        rows = [tuple(la.dot(f, b) for b in v_basis) + (Fraction(-1),)
                for f in subset]
        if la.rank(rows) < k + 1:
            continue
        rhs = tuple(-la.dot(f, y) for f in subset)
        sol = la.solve(tuple(rows), rhs)
        if sol is None:
            continue
        lam, t = sol[:k], sol[k]
        point = tuple(yi + sum((l * b[j] for l, b in zip(lam, v_basis)),
                               Fraction(0))
                      for j, yi in enumerate(y))
        if all(la.dot(f, point) <= t for f in gens):
            if best is None or t < best:
                best = t
    assert best is not None
    return best


def _shrink_quotient(space, v_basis, y):
    """Drop dual generators (keeping symmetry and full rank) while the LP
    and the oracle still disagree."""
    from .banach import PolytopeSpace

    def disagrees(sp):
        return quotient_norm(sp, v_basis, y) != \
            quotient_norm_oracle(sp, v_basis, y)

    gens = list(space.dual_gens)
    changed = True
    while changed:
        changed = False
        for g in list(gens):
            neg = tuple(-x for x in g)
            trial = [x for x in gens if x not in (g, neg)]
            if len(trial) < 2 or la.rank(tuple(trial)) < space.dim:
                continue
            sp = PolytopeSpace.create(space.dim, trial)
            if disagrees(sp):
                gens = list(sp.dual_gens)
                space = sp
                changed = True
                break
    return space


@_suite("quotient")
def suite_quotient(seed=0, instances=200, max_dim=3, max_gens=12, **_):
    rng = random.Random(seed)
    violations = []
    for i in range(instances):
        space = rand_space(rng, max_dim, max_gens)
        k = rng.randint(0, max(0, space.dim - 1))
        v_basis = []
        while len(v_basis) < k:
            v = tuple(Fraction(rng.randint(-2, 2))
                      for _ in range(space.dim))
            if la.rank(tuple(v_basis) + (v,)) > len(v_basis):
                v_basis.append(v)
        y = rand_vector(rng, space.dim)
        lp_value = quotient_norm(space, v_basis, y)
        oracle = quotient_norm_oracle(space, v_basis, y)
        if lp_value != oracle:
            small = _shrink_quotient(space, v_basis, y)
            violations.append({
                "instance": i,
                "space": ser.space_to_json(small),
                "v_basis": ser.matrix_to_json(v_basis),
                "y": ser.vector_to_json(y),
                "lp": ser.frac_to_str(lp_value),
                "oracle": ser.frac_to_str(oracle),
            })
    return _report("quotient", seed,
                   {"max_dim": max_dim, "max_gens": max_gens}, instances,
                   violations)


# ---------------------------------------------------------------------------
# push-out identity and dual-ball pull-back


@_suite("banach-pushout")
def suite_banach_pushout(seed=0, instances=100, max_r_dim=2,
                         max_increment=2, **_):
    rng = random.Random(seed)
    violations = []
    for i in range(instances):
        r_dim = rng.randint(0, max_r_dim)
        inc = rng.randint(0 if r_dim else 1, max_increment)
        u, v = rand_isometric_pair(rng, r_dim, inc)
        po = pushout_banach(u, v)
        s_basis = po.s_to_y.image_basis()
        x_basis = po.x_to_y.image_basis()
        verdict = is_internal_pushout_banach(po.space, s_basis, x_basis)
        dual_ok = dualball_pullback_check(po)
        if not (verdict.ok and dual_ok and po.commutes()):
            violations.append({
                "instance": i,
                "pushout": ser.banach_pushout_to_json(po),
                "internal_ok": verdict.ok,
                "dualball_ok": dual_ok,
            })
    return _report("banach-pushout", seed,
                   {"max_r_dim": max_r_dim, "max_increment": max_increment},
                   instances, violations)


# ---------------------------------------------------------------------------
# sup-space embedding


@_suite("sup-embed")
def suite_sup_embed(seed=0, instances=100, vectors=100, max_dim=3,
                    max_gens=8, **_):
    rng = random.Random(seed)
    violations = []
    for i in range(instances):
        space = rand_space(rng, max_dim, max_gens)
        emb = embed_into_sup_space(space)
        for j in range(vectors):
            x = rand_vector(rng, space.dim)
            if emb.target.norm(emb(x)) != space.norm(x):
                violations.append({
                    "instance": i, "vector_index": j,
                    "space": ser.space_to_json(space),
                    "x": ser.vector_to_json(x),
                })
                break
    return _report("sup-embed", seed,
                   {"vectors": vectors, "max_dim": max_dim,
                    "max_gens": max_gens}, instances, violations)


# ---------------------------------------------------------------------------
# tower isomorphism


@_suite("tower-iso")
def suite_tower_iso(seed=0, instances=100, max_steps=4, max_atoms=16, **_):
    rng = random.Random(seed)
    violations = []
    for i in range(instances):
        steps = rand_free_tower_steps(rng, max_steps, max_atoms)
        permuted = list(steps)
        rng.shuffle(permuted)
        t1 = build_tower(BOOLEAN, steps)
        t2 = build_tower(BOOLEAN, permuted)
        r = back_and_forth(t1, t2)
        ok = r.ok and _iso_verified(t1, t2, r)
        replay = back_and_forth(t1, t2)
        deterministic = (r.atom_map == replay.atom_map
                         and r.transcript == replay.transcript)
        p = rng.choice(t1.top.atoms)
        q = rng.choice(t2.top.atoms)
        rp = pointed_back_and_forth(PointedStructure(t1, p),
                                    PointedStructure(t2, q))
        pointed_ok = rp.ok and dict(rp.atom_map)[p] == q
        if not (ok and deterministic and pointed_ok):
            violations.append({
                "instance": i,
                "steps": [list(s.fibers) for s in steps],
                "permuted": [list(s.fibers) for s in permuted],
                "ok": r.ok, "deterministic": deterministic,
                "pointed_ok": pointed_ok,
            })
    return _report("tower-iso", seed,
                   {"max_steps": max_steps, "max_atoms": max_atoms},
                   instances, violations)


def _iso_verified(t1, t2, result):
    m = dict(result.atom_map)
    if sorted(m.keys(), key=repr) != sorted(t1.top.atoms, key=repr):
        return False
    if sorted(m.values(), key=repr) != sorted(t2.top.atoms, key=repr):
        return False
    # an atom bijection always induces a Boolean isomorphism; spot-check
    # the homomorphism laws on a handful of element pairs anyway
    elems = list(itertools.islice(t1.top.elements(), 16))
    for x in elems[:4]:
        for y in elems[:4]:
            fx = result.apply(x, t2.top)
            fy = result.apply(y, t2.top)
            if result.apply(x | y, t2.top) != fx | fy:
                return False
            if result.apply(~x, t2.top) != ~fx:
                return False
    return True


# ---------------------------------------------------------------------------
# saturated-set skeleton


@_suite("skeleton")
def suite_skeleton(seed=0, instances=8, max_steps=5, max_atoms=32, **_):
    from .randgen import rand_bool_tower
    rng = random.Random(seed)
    violations = []
    for i in range(instances):
        t = rand_bool_tower(rng, max_steps, max_atoms)
        idx = range(len(t.steps))
        subsets = [frozenset(c) for r in range(len(t.steps) + 1)
                   for c in itertools.combinations(idx, r)]
        sats = {g: saturate(t, g).ordinals for g in subsets}
        for g in subsets:
            if saturate(t, sats[g]).ordinals != sats[g]:
                violations.append({"instance": i, "kind": "idempotence",
                                   "gamma": sorted(g)})
        # additivity: saturated sets are closed under union (a least
        # saturated superset need not exist, so inclusion-monotonicity of
        # the closure is not a law; union-closure is)
        for g1 in subsets:
            for g2 in subsets:
                union = set(sats[g1]) | set(sats[g2])
                if not is_saturated(t, union):
                    violations.append({"instance": i, "kind": "union",
                                       "gamma": sorted(g1),
                                       "gamma2": sorted(g2)})
        for g in subsets:
            if not is_saturated(t, g):
                continue
            for d in subsets:
                if not skeleton_posex_check(t, g, d):
                    violations.append({
                        "instance": i, "kind": "skeleton",
                        "gamma": sorted(g), "delta": sorted(d),
                        "stage_atoms": [len(s.atoms) for s in t.stages],
                    })
    return _report("skeleton", seed,
                   {"max_steps": max_steps, "max_atoms": max_atoms},
                   instances, violations)


def run_suite(name, **kwargs):
    if name not in SUITES:
        raise KeyError("unknown suite %r (have: %s)"
                       % (name, ", ".join(sorted(SUITES))))
    return SUITES[name](**kwargs)
