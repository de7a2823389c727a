"""Polytopal-norm spaces: norms, sums, quotients, push-outs, dual balls."""

from fractions import Fraction as F

import pytest

from amalgam.banach import (LinearEmbedding, PolytopeSpace, dual_ball,
                            dualball_pullback_check, embed_into_sup_space,
                            induced_subspace, is_internal_pushout_banach,
                            l1_space, l1_sum, line_space, norm_eval,
                            pushout_banach, pushout_norm_value,
                            quotient_norm, sup_space, zero_space)
from amalgam.errors import AmalgamError, DomainError, PreconditionError


class TestNormEval:
    def test_sup_norm(self):
        assert norm_eval(sup_space(2), (F(3), F(-4))) == F(4)

    def test_l1_norm(self):
        assert norm_eval(l1_space(2), (F(3), F(-4))) == F(7)

    def test_zero_vector(self):
        assert norm_eval(l1_space(2), (F(0), F(0))) == F(0)

    def test_dimension_mismatch(self):
        with pytest.raises(AmalgamError):
            norm_eval(sup_space(2), (F(1),))

    def test_norm_axioms_on_a_grid(self):
        space = PolytopeSpace.create(
            2, [(F(1), F(2)), (F(-1), F(-2)), (F(1), F(0)), (F(-1), F(0)),
                (F(0), F(1)), (F(0), F(-1))])
        grid = [(F(a), F(b)) for a in range(-2, 3) for b in range(-2, 3)]
        for x in grid:
            nx = space.norm(x)
            assert nx >= 0
            assert space.norm(tuple(-c for c in x)) == nx
            assert space.norm(tuple(3 * c for c in x)) == 3 * nx
            for y in grid:
                xy = tuple(a + b for a, b in zip(x, y))
                assert space.norm(xy) <= nx + space.norm(y)

    def test_rank_deficient_gens_rejected(self):
        with pytest.raises(AmalgamError):
            PolytopeSpace.create(2, [(F(1), F(0)), (F(-1), F(0))])

    def test_asymmetric_gens_rejected(self):
        with pytest.raises(AmalgamError):
            PolytopeSpace.create(1, [(F(1),), (F(-2),)])


class TestL1Sum:
    def test_norm_is_sum_of_norms(self):
        space = l1_sum(sup_space(2), line_space())
        assert space.dim == 3
        assert space.norm((F(1), F(2), F(3))) == F(5)

    def test_zero_dimensional_factor(self):
        space = l1_sum(zero_space(), sup_space(2))
        assert space.dim == 2
        assert space.norm((F(3), F(-4))) == F(4)

    def test_gen_count_multiplies(self):
        a, b = sup_space(2), l1_space(2)
        assert len(l1_sum(a, b).dual_gens) == \
            len(a.dual_gens) * len(b.dual_gens)


class TestQuotientNorm:
    def test_l1_plane_mod_antidiagonal(self):
        space = l1_space(2)
        v = [(F(1), F(-1))]
        # inf_t |x1 - t| + |x2 + t| = |x1 + x2|
        assert quotient_norm(space, v, (F(3), F(-4))) == F(1)
        assert quotient_norm(space, v, (F(2), F(5))) == F(7)

    def test_trivial_subspace_gives_back_the_norm(self):
        space = l1_space(2)
        for x in [(F(3), F(-4)), (F(0), F(2)), (F(1, 2), F(1, 3))]:
            assert quotient_norm(space, [], x) == space.norm(x)

    def test_full_subspace_gives_zero(self):
        space = l1_space(2)
        v = [(F(1), F(0)), (F(0), F(1))]
        assert quotient_norm(space, v, (F(3), F(-4))) == F(0)

    def test_dependent_basis_rejected(self):
        with pytest.raises(PreconditionError):
            quotient_norm(l1_space(2), [(F(1), F(0)), (F(2), F(0))],
                          (F(1), F(1)))


class TestDualBall:
    def test_sup_plane_dual_is_cross_polytope(self):
        ball = dual_ball(sup_space(2))
        assert sorted(ball.vertices) == sorted(
            [(F(1), F(0)), (F(-1), F(0)), (F(0), F(1)), (F(0), F(-1))])

    def test_l1_plane_dual_is_square(self):
        ball = dual_ball(l1_space(2))
        assert sorted(ball.vertices) == sorted(
            [(F(1), F(1)), (F(1), F(-1)), (F(-1), F(1)), (F(-1), F(-1))])

    def test_hexagon_pruning(self):
        gens = [(F(2), F(0)), (F(1), F(2)), (F(-1), F(2)),
                (F(-2), F(0)), (F(-1), F(-2)), (F(1), F(-2)),
                (F(0), F(1)), (F(0), F(-1))]  # last pair is interior
        space = PolytopeSpace.create(2, gens)
        assert len(space.dual_vertices) == 6


class TestLinearEmbedding:
    def test_isometry_enforced(self):
        # inclusion of the sup-line into the l1 plane along (1,1) scales
        # the norm by 2, so it is rejected
        with pytest.raises(PreconditionError):
            LinearEmbedding(line_space(), l1_space(2),
                            ((F(1),), (F(1),)))

    def test_induced_subspace_is_isometric(self):
        emb = induced_subspace(l1_space(2), [(F(1), F(1))])
        assert emb.source.dim == 1
        assert emb.source.norm((F(1),)) == F(2)

    def test_non_injective_rejected(self):
        with pytest.raises(AmalgamError):
            LinearEmbedding(sup_space(2), sup_space(2),
                            ((F(1), F(1)), (F(1), F(1))))


class TestPushoutBanach:
    def test_trivial_base_gives_l1_sum(self):
        u = LinearEmbedding(zero_space(), sup_space(2),
                            tuple(() for _ in range(2)))
        v = LinearEmbedding(zero_space(), l1_space(2),
                            tuple(() for _ in range(2)))
        po = pushout_banach(u, v)
        assert po.space.dim == 4
        s_part = po.s_to_y((F(1), F(2)))
        x_part = po.x_to_y((F(3), F(-4)))
        combined = tuple(a + b for a, b in zip(s_part, x_part))
        assert po.space.norm(combined) == F(2) + F(7)

    def test_isomorphic_base_gives_other_factor(self):
        r = l1_space(2)
        u = LinearEmbedding.identity(r)
        v = induced_subspace(l1_sum(r, line_space()),
                             [(F(1), F(0), F(0)), (F(0), F(1), F(0))])
        u2 = LinearEmbedding(v.source, r, u.matrix)
        po = pushout_banach(u2, v)
        assert po.space.dim == v.target.dim
        # x_to_y is onto, hence an isometric isomorphism
        assert po.x_to_y.source.dim == po.space.dim

    def test_one_dimensional_class_norm(self):
        r = line_space()
        u = LinearEmbedding.identity(r)
        po = pushout_banach(u, u)
        assert po.space.dim == 1
        s = po.s_to_y((F(3),))
        x = po.x_to_y((F(-4),))
        total = tuple(a + b for a, b in zip(s, x))
        assert po.space.norm(total) == F(1)  # |3 + (-4)|

    def test_output_passes_both_checks(self):
        u = induced_subspace(sup_space(2), [(F(1), F(1))])
        v = induced_subspace(l1_space(2), [(F(1), F(0))])
        # make sources agree isometrically: rescale v's source to match
        r_norm_u = u.source.norm((F(1),))
        r_norm_v = v.source.norm((F(1),))
        scale = r_norm_u / r_norm_v
        v = LinearEmbedding(u.source,
                            v.target,
                            tuple((row[0] * scale,) for row in v.matrix))
        po = pushout_banach(u, v)
        verdict = is_internal_pushout_banach(
            po.space, po.s_to_y.image_basis(), po.x_to_y.image_basis())
        assert verdict.ok
        assert dualball_pullback_check(po)


class TestIsInternalPushoutBanach:
    def test_sup_plane_fails_with_witness(self):
        space = sup_space(2)
        verdict = is_internal_pushout_banach(
            space, [(F(1), F(0))], [(F(0), F(1))])
        assert verdict.span_ok and not verdict.norm_identity_ok
        x, s = verdict.witness
        combined = tuple(a + b for a, b in zip(x, s))
        inf_val, _ = pushout_norm_value(space, [], x, s)
        assert space.norm(combined) < inf_val

    def test_l1_plane_passes(self):
        verdict = is_internal_pushout_banach(
            l1_space(2), [(F(1), F(0))], [(F(0), F(1))])
        assert verdict.ok

    def test_degenerate_basis_rejected(self):
        with pytest.raises(PreconditionError):
            is_internal_pushout_banach(
                l1_space(2), [(F(1), F(0)), (F(2), F(0))], [(F(0), F(1))])

    def test_norm_value_minimizer_is_attained(self):
        space = l1_space(2)
        value, r = pushout_norm_value(space, [(F(1), F(-1))],
                                      (F(3), F(0)), (F(0), F(-4)))
        x_plus_r = tuple(a + b for a, b in zip((F(3), F(0)), r))
        s_minus_r = tuple(a - b for a, b in zip((F(0), F(-4)), r))
        assert space.norm(x_plus_r) + space.norm(s_minus_r) == value


class TestDualballPullback:
    def test_free_amalgam_dual_is_product(self):
        u = LinearEmbedding(zero_space(), sup_space(1),
                            ((),))
        v = LinearEmbedding(zero_space(), sup_space(1),
                            ((),))
        po = pushout_banach(u, v)
        assert dualball_pullback_check(po)
        # dual of the l1 plane is the square: 4 vertices
        assert len(po.space.dual_vertices) == 4

    def test_one_dimensional_diagonal(self):
        r = line_space()
        po = pushout_banach(LinearEmbedding.identity(r),
                            LinearEmbedding.identity(r))
        assert dualball_pullback_check(po)
        assert sorted(po.space.dual_vertices) == [(F(-1),), (F(1),)]


class TestSupEmbedding:
    def test_l1_plane_into_dimension_four(self):
        emb = embed_into_sup_space(l1_space(2))
        assert emb.target.dim == 4
        image = emb((F(3), F(-4)))
        assert max(abs(c) for c in image) == F(7)

    def test_sup_plane_norm_preserved(self):
        emb = embed_into_sup_space(sup_space(2))
        assert emb.target.dim == 4
        for x in [(F(3), F(-4)), (F(1, 2), F(5)), (F(0), F(0))]:
            assert emb.target.norm(emb(x)) == sup_space(2).norm(x)

    def test_zero_maps_to_zero(self):
        emb = embed_into_sup_space(l1_space(2))
        assert emb((F(0), F(0))) == (F(0),) * 4
