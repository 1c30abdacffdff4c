"""Linked-block structure: socles, bijections, frames, standardization."""

import random

import numpy as np
import pytest

from cycbase import constructions as cons
from cycbase.blocks import BlockSystem, block_stabilizer_restriction, minimal_block_system
from cycbase.errors import ArgumentError, FeasibilityViolation, StandardizeError
from cycbase.feasible import (
    WreathFrame,
    block_bijection,
    build_frame,
    build_Wstar,
    compute_E,
    compute_Eprime,
    family_permutation,
    feasible_context,
    section_of,
    socle_of_kernel,
    wreath_standardize,
)
from cycbase.group import Group, trivial_group
from cycbase.perm import Perm, conjugate
from cycbase.primitive import (
    RegularCyclicWitness,
    build_normalizer_tower,
    classify_primitive,
    find_regular_cyclic,
)


def five_ten_blocks():
    return BlockSystem(10, [range(5), range(5, 10)])


def diagonal_pair():
    """Diagonal A5 on two linked blocks of five, plus the block swap."""
    a5 = cons.alt(5)
    gens = [Perm(np.concatenate([g.images(), g.images() + 5]))
            for g in a5.generators]
    gens.append(Perm([*range(5, 10), *range(5)]))
    return Group(10, gens, name="diag-pair")


def witness_tower(m=5):
    w = cons.wreath(cons.sym(m), cons.cyclic(2))
    system = BlockSystem(2 * m, [range(m), range(m, 2 * m)])
    blockK = block_stabilizer_restriction(w, system, 0)
    wit = find_regular_cyclic(blockK, classify_primitive(blockK), seed=0)
    return build_normalizer_tower(wit)


class TestSocle:
    def test_independent_wreath(self):
        w = cons.wreath(cons.sym(5), cons.cyclic(2))
        S = socle_of_kernel(w, five_ten_blocks())
        assert S.order() == 3600
        # dual route: same order without any hint
        assert Group(10, list(S.generators)).order() == 3600

    def test_projective_blocks(self):
        w = cons.wreath(cons.psl(3, 2), cons.cyclic(2))
        system = BlockSystem(14, [range(7), range(7, 14)])
        S = socle_of_kernel(w, system)
        assert S.order() == 168 ** 2
        assert Group(14, list(S.generators)).order() == 168 ** 2

    def test_diagonal_socle(self):
        S = socle_of_kernel(diagonal_pair(), five_ten_blocks())
        assert S.order() == 60

    def test_solvable_blocks_rejected(self):
        w = cons.wreath(cons.cyclic(3), cons.cyclic(2))
        with pytest.raises(FeasibilityViolation):
            socle_of_kernel(w, BlockSystem(6, [range(3), range(3, 6)]))


class TestBlockBijection:
    def test_independent_blocks(self):
        S = cons.disjoint_union([cons.alt(5), cons.alt(5)])
        assert block_bijection(S, range(5), range(5, 10)) is None

    def test_diagonal_blocks(self):
        S = socle_of_kernel(diagonal_pair(), five_ten_blocks())
        f = block_bijection(S, range(5), range(5, 10))
        assert f == {i: i + 5 for i in range(5)}
        # equivariance: f(x^s) == f(x)^s for every generator
        for s in S.generators:
            for x, y in f.items():
                assert f[s.apply(x)] == s.apply(y)

    def test_twisted_diagonal(self):
        a5 = cons.alt(5)
        sigma = Perm([(2 * x + 1) % 5 for x in range(5)])
        gens = []
        for g in a5.generators:
            top = conjugate(g, sigma)
            gens.append(Perm(np.concatenate([g.images(),
                                             top.images() + 5])))
        S = Group(10, gens)
        f = block_bijection(S, range(5), range(5, 10))
        assert f == {i: sigma.apply(i) + 5 for i in range(5)}

    def test_same_block_rejected(self):
        S = cons.disjoint_union([cons.alt(5), cons.alt(5)])
        with pytest.raises(ArgumentError):
            block_bijection(S, range(5), range(5))

    def test_non_orbit_rejected(self):
        S = cons.disjoint_union([cons.alt(5), cons.alt(5)])
        with pytest.raises(ArgumentError):
            block_bijection(S, range(3), range(5, 10))


class TestClassPartitions:
    def test_independent_classes(self):
        w = cons.wreath(cons.sym(5), cons.cyclic(2))
        ctx = feasible_context(w, five_ten_blocks())
        assert ctx.linked_classes == ((0,), (1,))
        assert ctx.factor_classes == ((0,), (1,))
        assert ctx.classes_agree

    def test_diagonal_classes(self):
        ctx = feasible_context(diagonal_pair(), five_ten_blocks())
        assert ctx.linked_classes == ((0, 1),)
        assert ctx.factor_classes == ((0, 1),)
        assert ctx.classes_agree

    def test_mixed_three_blocks(self):
        # first two blocks diagonal, third independent
        a5 = cons.alt(5)
        gens = [Perm(np.concatenate([g.images(), g.images() + 5,
                                     np.arange(10, 15, dtype=np.int16)]))
                for g in a5.generators]
        gens += [Perm(np.concatenate([np.arange(10, dtype=np.int16),
                                      g.images() + 10]))
                 for g in a5.generators]
        S = Group(15, gens)
        system = BlockSystem(15, [range(5), range(5, 10), range(10, 15)])
        assert compute_E(S, system) == ((0, 1), (2,))
        assert compute_Eprime(S, system) == ((0, 1), (2,))

    def test_single_block(self):
        S = cons.alt(5)
        system = BlockSystem(5, [range(5)])
        assert compute_E(S, system) == ((0,),)
        assert compute_Eprime(S, system) == ((0,),)

    def test_asymmetric_support_rejected(self):
        # block 0 pointwise stabilizer is everything, block 1's is trivial:
        # the support relation fails to be symmetric
        S = Group(4, [Perm([0, 1, 3, 2])])
        system = BlockSystem(4, [(0, 1), (2, 3)])
        with pytest.raises(FeasibilityViolation):
            compute_Eprime(S, system)


class TestFrame:
    def test_independent_frame_preserves_group(self):
        w = cons.wreath(cons.sym(5), cons.cyclic(2))
        ctx = feasible_context(w, five_ten_blocks())
        frame = build_frame(ctx, range(5))
        assert frame.block_size == 5
        star = frame.star_group(w)
        assert star.order() == 28800
        # round trip through the frame is the identity on the group
        g = w.generators[0]
        assert frame.conjugate_out(frame.conjugate_in(g)) == g

    def test_scrambled_wreath_frame(self):
        rng = random.Random(11)
        shuffle = list(range(10))
        rng.shuffle(shuffle)
        c = Perm(shuffle)
        w = cons.wreath(cons.sym(5), cons.cyclic(2))
        K = Group(10, [conjugate(g, c) for g in w.generators],
                  order_hint=28800)
        system = minimal_block_system(K)
        assert system is not None
        ctx = feasible_context(K, system)
        frame = build_frame(ctx, system.blocks[0])
        assert frame.star_group(K).order() == 28800

    def test_diagonal_frame_is_relabelling(self):
        K = diagonal_pair()
        ctx = feasible_context(K, five_ten_blocks())
        frame = build_frame(ctx, range(5))
        # blocks already sit in product position and are linked by the
        # identity bijection, so nothing moves
        assert frame.to_product.is_identity()
        assert frame.star_group(K).order() == 120

    def test_diagonal_sections_match_within_class(self):
        K = diagonal_pair()
        ctx = feasible_context(K, five_ten_blocks())
        frame = build_frame(ctx, range(5))
        for g in K.generators[:-1]:
            gs = frame.conjugate_in(g)
            assert section_of(gs, 0, 0, 5) == section_of(gs, 1, 1, 5)

    def test_wrong_reference_block(self):
        w = cons.wreath(cons.sym(5), cons.cyclic(2))
        ctx = feasible_context(w, five_ten_blocks())
        with pytest.raises(ArgumentError):
            build_frame(ctx, range(3, 8))

    def test_frame_labels(self):
        K = diagonal_pair()
        ctx = feasible_context(K, five_ten_blocks())
        frame = build_frame(ctx, range(5))
        assert frame.label[0] == (0, 0)
        assert frame.label[7] == (2, 1)


class TestWstar:
    def test_order_with_cyclic_top(self):
        W = build_Wstar(witness_tower(), cons.cyclic(2))
        assert W.degree == 10
        assert W.order() == 800
        assert Group(10, list(W.generators)).order() == 800

    def test_order_with_trivial_top(self):
        W = build_Wstar(witness_tower(), trivial_group(1))
        assert W.degree == 5
        assert W.order() == 20

    def test_degenerate_fiber(self):
        wit = RegularCyclicWitness(Perm([0]), trivial_group(1))
        W = build_Wstar(build_normalizer_tower(wit), cons.cyclic(3))
        assert W.degree == 3
        assert W.order() == 3


class TestSections:
    def test_section_round_trip(self):
        rng = random.Random(3)
        secs = []
        for _ in range(4):
            img = list(range(5))
            rng.shuffle(img)
            secs.append(Perm(img))
        flat = family_permutation(secs, 5)
        for gamma, sec in enumerate(secs):
            assert section_of(flat, gamma, gamma, 5) == sec

    def test_section_escape(self):
        with pytest.raises(ArgumentError):
            section_of(Perm.identity(10), 0, 1, 5)

    def test_swap_section(self):
        z = Perm([*range(5, 10), *range(5)])
        assert section_of(z, 0, 1, 5).is_identity()
        assert section_of(z, 1, 0, 5).is_identity()


def straight_cycle():
    """A 10-cycle whose square is the diagonal 5-cycle on both blocks."""
    c5 = Perm([1, 2, 3, 4, 0])
    return Perm([*range(5, 10), *(c5.apply(i) for i in range(5))])


class TestStandardize:
    def test_straight_cycle(self):
        secs, C0 = wreath_standardize(Group(10, [straight_cycle()]),
                                      cons.cyclic(2))
        assert all(s.is_identity() for s in secs)
        assert C0.order() == 5

    def test_twisted_cycle(self):
        sigma = Perm([(2 * x + 1) % 5 for x in range(5)])
        tw = Perm(np.concatenate([np.arange(5, dtype=np.int16),
                                  sigma.images() + 5]))
        z = conjugate(straight_cycle(), tw)
        secs, C0 = wreath_standardize(Group(10, [z]), cons.cyclic(2))
        assert C0.order() == 5
        assert not all(s.is_identity() for s in secs)
        agl = cons.agl1(5)
        for s in secs:
            assert agl.contains(s)

    def test_random_normalizer_twists(self):
        agl = cons.agl1(5)
        rng = random.Random(7)
        z = straight_cycle()
        for _ in range(20):
            fam = [agl.random_element(rng) for _ in range(2)]
            zt = conjugate(z, family_permutation(fam, 5))
            secs, C0 = wreath_standardize(Group(10, [zt]), cons.cyclic(2))
            assert C0.order() == 5
            assert all(agl.contains(s) for s in secs)

    def test_full_wreath_standardizes_trivially(self):
        w = cons.wreath(cons.sym(5), cons.cyclic(2))
        secs, C0 = wreath_standardize(w, cons.cyclic(2))
        assert all(s.is_identity() for s in secs)
        assert C0.order() == 120

    def test_blocks_not_invariant(self):
        with pytest.raises(StandardizeError):
            wreath_standardize(cons.sym(4), cons.sym(2))

    def test_top_escape(self):
        w = cons.wreath(cons.sym(5), cons.cyclic(2))
        with pytest.raises(StandardizeError):
            wreath_standardize(w, trivial_group(2))

    def test_intransitive_rejected(self):
        C = cons.disjoint_union([cons.cyclic(5), cons.cyclic(5)])
        with pytest.raises(StandardizeError):
            wreath_standardize(C, cons.cyclic(2))

    def test_bad_degree_ratio(self):
        with pytest.raises(ArgumentError):
            wreath_standardize(cons.cyclic(10), cons.cyclic(3))
