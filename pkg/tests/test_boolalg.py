"""Finite Boolean algebras: generation, projections, push-outs, witnesses.

Expected values for the small worked examples were derived by hand or by
independent brute-force enumeration and are frozen here as exact oracles.
"""

import itertools

import pytest

from amalgam.boolalg import (
    DualSurjection, Element, FiniteBoolAlg, Subalgebra, free_boolean_algebra,
    free_generator, generated_subalgebra, ideal_complete_witness,
    interpolant, interpolant_table, is_internal_pushout, join_subalgebras,
    leq_rel, meet_subalgebras, posex_witness, projection, pushout,
    square_from_subalgebras, squares_isomorphic)
from amalgam.errors import DomainError, PreconditionError


def alg(n):
    return FiniteBoolAlg(tuple(range(1, n + 1)))


def blocks_of(sub):
    return set(sub.blocks)


class TestGeneratedSubalgebra:
    def test_empty_generators_give_trivial_algebra(self):
        b = alg(3)
        sub = generated_subalgebra(b, [])
        assert blocks_of(sub) == {frozenset({1, 2, 3})}
        assert sub.is_trivial

    def test_one_generator_splits_once(self):
        b = alg(3)
        sub = generated_subalgebra(b, [b.element({1})])
        assert blocks_of(sub) == {frozenset({1}), frozenset({2, 3})}

    def test_two_singletons_generate_everything(self):
        b = alg(3)
        sub = generated_subalgebra(b, [b.element({1}), b.element({2})])
        assert sub.is_discrete
        assert len(list(sub.elements())) == 8

    def test_brute_force_closure_agreement(self):
        # independent oracle: close the generator set under |, &, ~ by hand
        b = alg(4)
        gens = [b.element({1, 2}), b.element({2, 3})]
        closed = {b.zero.atom_set, b.one.atom_set}
        closed |= {g.atom_set for g in gens}
        changed = True
        while changed:
            changed = False
            for x, y in itertools.product(list(closed), repeat=2):
                for z in (x | y, x & y, frozenset(b.atoms) - x):
                    if z not in closed:
                        closed.add(z)
                        changed = True
        sub = generated_subalgebra(b, gens)
        assert {e.atom_set for e in sub.elements()} == closed

    def test_foreign_element_rejected(self):
        with pytest.raises(DomainError):
            generated_subalgebra(alg(3), [alg(2).element({1})])


class TestProjection:
    def setup_method(self):
        self.b = alg(4)
        self.a = Subalgebra.from_blocks(self.b, [{1, 2}, {3, 4}])

    def test_straddling_element(self):
        e = self.b.element({1, 2, 3})
        assert projection(self.a, e, "below") == self.b.element({1, 2})
        assert projection(self.a, e, "above") == self.b.one

    def test_top_element(self):
        assert projection(self.a, self.b.one, "below") == self.b.one
        assert projection(self.a, self.b.one, "above") == self.b.one

    def test_small_element(self):
        e = self.b.element({1})
        assert projection(self.a, e, "below") == self.b.zero
        assert projection(self.a, e, "above") == self.b.element({1, 2})

    def test_sandwich_invariant(self):
        for e in self.b.elements():
            assert projection(self.a, e, "below") <= e
            assert e <= projection(self.a, e, "above")

    def test_bad_direction(self):
        with pytest.raises(DomainError):
            projection(self.a, self.b.one, "sideways")


class TestIsInternalPushout:
    def test_free_product_of_coordinates(self):
        b = FiniteBoolAlg(tuple(itertools.product((0, 1), repeat=2)))
        s = generated_subalgebra(
            b, [b.element(a for a in b.atoms if a[0] == 1)])
        a = generated_subalgebra(
            b, [b.element(at for at in b.atoms if at[1] == 1)])
        assert is_internal_pushout(b, s, a).ok

    def test_degenerate_equal_subalgebras(self):
        b = alg(3)
        d = Subalgebra.discrete(b)
        assert is_internal_pushout(b, d, d).ok

    def test_intermediate_subalgebra_counterexample(self):
        # B free on three generators; D sits strictly between A and B and
        # destroys the push-out property even though (S, A) has it.
        b, names = free_boolean_algebra(("x1", "x2", "y"))
        x1 = free_generator(b, names, "x1")
        x2 = free_generator(b, names, "x2")
        y = free_generator(b, names, "y")
        s = generated_subalgebra(b, [y])
        a = generated_subalgebra(b, [x1, x2])
        d = generated_subalgebra(b, [x1, x2, x1 & y, x2 & y])

        assert is_internal_pushout(b, s, a).ok
        verdict = is_internal_pushout(b, s, d)
        assert not verdict.ok
        assert verdict.generation_ok  # generation holds; interpolation fails
        av, sv = verdict.violation
        assert (av & sv).is_zero
        meet = meet_subalgebras(s, d)
        assert not (meet.above(av) & sv).is_zero  # genuinely no interpolant

        # the classical witnessing pair: x1∧y ≤ y admits no r with
        # x1∧y ≤ r ≤ y through S∩D, i.e. the disjoint pair (x1∧y, ~y)
        # has no interpolant
        with pytest.raises(DomainError):
            interpolant(meet, x1 & y, ~y)

        # S∩D is trivial and D is not generated by (S∩D) ∪ A
        assert meet.is_trivial
        assert blocks_of(join_subalgebras(b, [meet, a])) != blocks_of(d)

    def test_violation_certificate_is_live(self):
        b = alg(4)
        s = Subalgebra.from_blocks(b, [{1, 2}, {3, 4}])
        a = Subalgebra.from_blocks(b, [{1, 3}, {2, 4}])
        verdict = is_internal_pushout(b, s, a)
        if verdict.violation is not None:
            av, sv = verdict.violation
            with pytest.raises(DomainError):
                interpolant(verdict.meet, av, sv)

    def test_foreign_subalgebra_rejected(self):
        b = alg(3)
        with pytest.raises(DomainError):
            is_internal_pushout(b, Subalgebra.trivial(alg(2)),
                                Subalgebra.trivial(b))


class TestPushout:
    def test_free_sum_over_trivial_base(self):
        r = alg(1)
        s = DualSurjection.from_mapping(r, alg(2), {1: 1, 2: 1})
        a = DualSurjection.from_mapping(r, alg(2), {1: 1, 2: 1})
        sq = pushout(s, a)
        assert len(sq.top.atoms) == 4
        assert len(sq.top) == 16
        assert sq.verdict.ok

    def test_pushout_along_isomorphism(self):
        r = alg(2)
        u = DualSurjection.from_mapping(r, alg(2), {1: 2, 2: 1})  # iso
        v = DualSurjection.from_mapping(r, alg(3), {1: 1, 2: 2, 3: 2})
        sq = pushout(u, v)
        assert len(sq.top.atoms) == len(v.target_alg.atoms)
        # a_to_b is an isomorphism: its atom map is a bijection
        images = {sq.a_to_b.mapping[t] for t in sq.top.atoms}
        assert len(images) == len(sq.top.atoms)

    def test_fiber_product_atoms(self):
        r = FiniteBoolAlg(("r1", "r2"))
        s = DualSurjection.from_mapping(
            r, FiniteBoolAlg(("s1", "s2", "s3")),
            {"s1": "r1", "s2": "r2", "s3": "r2"})
        a = DualSurjection.from_mapping(
            r, FiniteBoolAlg(("a1", "a2", "a3")),
            {"a1": "r1", "a2": "r1", "a3": "r2"})
        sq = pushout(s, a)
        assert set(sq.top.atoms) == {("s1", "a1"), ("s1", "a2"),
                                     ("s2", "a3"), ("s3", "a3")}
        assert sq.verdict.ok and sq.commutes()

    def test_mismatched_base_rejected(self):
        u = DualSurjection.from_mapping(alg(1), alg(2), {1: 1, 2: 1})
        v = DualSurjection.from_mapping(alg(2), alg(2), {1: 1, 2: 2})
        with pytest.raises(DomainError):
            pushout(u, v)

    def test_symmetry_up_to_relabeling(self):
        r = alg(2)
        u = DualSurjection.from_mapping(r, alg(3), {1: 1, 2: 2, 3: 2})
        v = DualSurjection.from_mapping(r, alg(4),
                                        {1: 1, 2: 1, 3: 2, 4: 2})
        assert squares_isomorphic(pushout(u, v), pushout(v, u))

    def test_base_image_is_meet_exhaustively(self):
        # on every push-out square: the image of R inside the top equals
        # the intersection of the images of S and A
        r = alg(2)
        for s_vals in itertools.product(r.atoms, repeat=1):
            for a_vals in itertools.product(r.atoms, repeat=2):
                u_map = dict(zip((1, 2, 3), r.atoms + s_vals))
                v_map = dict(zip((1, 2, 3, 4), r.atoms + a_vals))
                u = DualSurjection.from_mapping(r, alg(3), u_map)
                v = DualSurjection.from_mapping(r, alg(4), v_map)
                sq = pushout(u, v)
                assert sq.verdict.ok
                meet = meet_subalgebras(sq.s_image, sq.a_image)
                r_image = u.compose(sq.s_to_b).image
                assert blocks_of(meet) == blocks_of(r_image)


class TestInterpolants:
    def test_table_is_least_witnesses(self):
        b = FiniteBoolAlg(tuple(itertools.product((0, 1), repeat=2)))
        s = generated_subalgebra(
            b, [b.element(a for a in b.atoms if a[0] == 1)])
        a = generated_subalgebra(
            b, [b.element(at for at in b.atoms if at[1] == 1)])
        meet = meet_subalgebras(s, a)
        table = interpolant_table(b, s, a)
        for (a_atoms, s_atoms), r_atoms in table.items():
            ae = Element(b, a_atoms)
            se = Element(b, s_atoms)
            re = Element(b, r_atoms)
            assert (ae & se).is_zero
            assert ae <= re and (re & se).is_zero
            assert meet.contains(re)
            # least: every other interpolant lies above it
            for cand in meet.elements():
                if ae <= cand and (cand & se).is_zero:
                    assert re <= cand


class TestPosexWitness:
    def test_full_subalgebra_needs_nothing(self):
        b = alg(3)
        w = posex_witness(Subalgebra.discrete(b), [])
        assert w.s_sub.is_trivial
        assert w.verdict.ok
        assert w.iterations == 0

    def test_free_pair_closure_is_immediate(self):
        b, names = free_boolean_algebra(("x", "y"))
        a = generated_subalgebra(b, [free_generator(b, names, "x")])
        y = free_generator(b, names, "y")
        s, verdict = posex_witness(a, [y])
        assert blocks_of(s) == blocks_of(generated_subalgebra(b, [y]))
        assert verdict.ok

    def test_closure_with_nontrivial_projections(self):
        b = alg(4)
        a = Subalgebra.from_blocks(b, [{1, 2}, {3, 4}])
        w = posex_witness(a, [b.element({1, 3})])
        assert w.verdict.ok
        assert is_internal_pushout(b, w.s_sub, a).ok
        assert w.iterations <= len(b)

    def test_non_generating_set_rejected(self):
        b = alg(3)
        a = Subalgebra.trivial(b)
        with pytest.raises(PreconditionError):
            posex_witness(a, [])

    def test_closure_matches_elementwise_oracle(self):
        # oracle: adjoin below/above projections of *every* element of S,
        # the literal transcription of the closure definition
        b = alg(5)
        a = Subalgebra.from_blocks(b, [{1, 2}, {3}, {4, 5}])
        gens = [b.element({1, 4}), b.element({2, 3})]
        s = generated_subalgebra(b, gens)
        while True:
            extra = []
            for e in s.elements():
                extra.append(a.below(e))
                extra.append(a.above(e))
            nxt = join_subalgebras(
                b, [s, generated_subalgebra(b, extra)])
            if blocks_of(nxt) == blocks_of(s):
                break
            s = nxt
        w = posex_witness(a, gens)
        assert blocks_of(w.s_sub) == blocks_of(s)


class TestIdealCompleteWitness:
    def test_zero_ideals_need_a_proper_splitter(self):
        b = alg(4)
        a = Subalgebra.from_blocks(b, [{1, 2}, {3, 4}])
        zero = [b.zero]
        c = ideal_complete_witness(a, zero, zero)
        assert c is not None
        # c splits every block of A properly
        for block in a.blocks:
            be = Element(b, block)
            assert not (be & c).is_zero and not (be & ~c).is_zero

    def test_principal_ideals_give_back_the_generator(self):
        b = alg(4)
        a = Subalgebra.from_blocks(b, [{1, 2}, {3, 4}])
        a0 = b.element({1, 2})
        ideal_i = [b.zero, a0]
        ideal_j = [b.zero, ~a0]
        assert ideal_complete_witness(a, ideal_i, ideal_j) == a0

    def test_overlapping_ideals_rejected(self):
        b = alg(4)
        a = Subalgebra.from_blocks(b, [{1, 2}, {3, 4}])
        shared = [b.zero, b.element({1, 2})]
        with pytest.raises(PreconditionError):
            ideal_complete_witness(a, shared, shared)

    def test_not_found_when_no_block_splits(self):
        b = alg(2)
        a = Subalgebra.discrete(b)  # B = A: nothing splits properly
        assert ideal_complete_witness(a, [b.zero], [b.zero]) is None


class TestLeqRel:
    def setup_method(self):
        self.b = alg(4)
        self.a = Subalgebra.from_blocks(self.b, [{1, 2}, {3, 4}])

    def test_trivial_filter(self):
        e = self.b.element({1, 3})  # above-projection is 1
        assert projection(self.a, e, "above") == self.b.one
        assert leq_rel(self.a, e, [self.b.one], "b_below_Q")

    def test_projection_generates_by_definition(self):
        for e in self.b.elements():
            up = projection(self.a, e, "above")
            down = projection(self.a, e, "below")
            assert leq_rel(self.a, e, [up], "b_below_Q")
            assert leq_rel(self.a, e, [down], "Q_below_b")

    def test_pushout_rephrasing(self):
        # on a push-out square, every S-element relates to R through both
        # sides of the calculus
        r = alg(2)
        u = DualSurjection.from_mapping(r, alg(3), {1: 1, 2: 2, 3: 2})
        v = DualSurjection.from_mapping(r, alg(3), {1: 1, 2: 1, 3: 2})
        sq = pushout(u, v)
        r_image = u.compose(sq.s_to_b).image
        for s_elem in sq.s_image.elements():
            down = r_image.below(s_elem)
            up = r_image.above(s_elem)
            assert leq_rel(r_image, s_elem, [down], "Q_below_b")
            assert leq_rel(r_image, s_elem, [up], "b_below_Q")

    def test_monotone_under_padding_below(self):
        e = self.b.element({1, 2, 3})
        down = projection(self.a, e, "below")
        assert leq_rel(self.a, e, [down], "Q_below_b")
        assert leq_rel(self.a, e, [down, self.b.zero], "Q_below_b")

    def test_foreign_q_rejected(self):
        with pytest.raises(DomainError):
            leq_rel(self.a, self.b.one, [self.b.element({1})], "Q_below_b")


class TestSquareFromSubalgebras:
    def test_exhaustive_partitions_verdict_matches_direct_check(self):
        b = alg(4)
        partitions = list(all_partitions(tuple(b.atoms)))
        for p1 in partitions:
            for p2 in partitions:
                s = Subalgebra.from_blocks(b, p1)
                a = Subalgebra.from_blocks(b, p2)
                sq = square_from_subalgebras(b, s, a)
                direct = is_internal_pushout(b, s, a)
                assert sq.verdict.ok == direct.ok


def all_partitions(items):
    if not items:
        yield []
        return
    head, rest = items[0], items[1:]
    for smaller in all_partitions(rest):
        for i in range(len(smaller)):
            yield smaller[:i] + [smaller[i] | {head}] + smaller[i + 1:]
        yield smaller + [{head}]
