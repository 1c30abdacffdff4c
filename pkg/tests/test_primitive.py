"""Primitive classification, full-cycle search, and the normalizer tower."""

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cycbase import constructions as cons
from cycbase.bsgs import build_chain
from cycbase.errors import ArgumentError, SearchExhausted
from cycbase.group import Group, is_solvable, trivial_group
from cycbase.perm import Perm, conjugate, element_order, power
from cycbase.primitive import (
    AFFINE,
    NO_REGULAR_CYCLIC,
    PROJECTIVE,
    SPORADIC,
    SYM_OR_ALT,
    RegularCyclicWitness,
    build_normalizer_tower,
    classify_primitive,
    find_regular_cyclic,
    _two_transitive,
)


def full_cycle(m):
    return Perm([*range(1, m), 0])


def witness_for(m):
    h = full_cycle(m)
    return RegularCyclicWitness(h, Group(m, [h], order_hint=m))


CLASSIFY_CASES = [
    ("agl1_5", lambda: cons.agl1(5), AFFINE, dict(p=5)),
    ("cyclic_5", lambda: cons.cyclic(5), AFFINE, dict(p=5)),
    ("dihedral_5", lambda: cons.dihedral(5), AFFINE, dict(p=5)),
    ("frobenius_21", lambda: cons.frobenius_subgroup(7, 3), AFFINE, dict(p=7)),
    ("sym_2", lambda: cons.sym(2), SYM_OR_ALT, dict(is_alt=False)),
    ("sym_4", lambda: cons.sym(4), SYM_OR_ALT, dict(is_alt=False)),
    ("alt_4", lambda: cons.alt(4), SYM_OR_ALT, dict(is_alt=True)),
    ("sym_6", lambda: cons.sym(6), SYM_OR_ALT, dict(is_alt=False)),
    ("alt_7", lambda: cons.alt(7), SYM_OR_ALT, dict(is_alt=True)),
    ("psl_3_2", lambda: cons.psl(3, 2), PROJECTIVE, dict(d=3, q=2)),
    ("pgl_2_5", lambda: cons.pgl(2, 5), PROJECTIVE, dict(d=2, q=5)),
    ("psl_2_7", lambda: cons.psl(2, 7), PROJECTIVE, dict(d=2, q=7)),
    ("psl_2_11_degree_12", lambda: cons.psl(2, 11), PROJECTIVE, dict(d=2, q=11)),
    ("pgammal_2_9", lambda: cons.pgammal(2, 9), PROJECTIVE, dict(d=2, q=9)),
    ("mathieu_11", cons.m11, SPORADIC, dict(name="mathieu-11")),
    ("psl_2_11_degree_11", cons.psl2_11_on_11, SPORADIC, dict(name="psl-2-11-points")),
    ("mathieu_23", cons.m23, SPORADIC, dict(name="mathieu-23")),
]


@pytest.mark.parametrize("label,factory,kind,fields",
                         CLASSIFY_CASES, ids=[c[0] for c in CLASSIFY_CASES])
def test_classify(label, factory, kind, fields):
    cls = classify_primitive(factory())
    assert cls.kind == kind
    for key, val in fields.items():
        assert getattr(cls, key) == val


def test_classify_rejects_imprimitive():
    with pytest.raises(ArgumentError):
        classify_primitive(cons.cyclic(4))


def test_classify_rejects_intransitive():
    with pytest.raises(ArgumentError):
        classify_primitive(cons.disjoint_union([cons.cyclic(2), cons.cyclic(2)]))


def test_classify_rejects_degree_one():
    with pytest.raises(ArgumentError):
        classify_primitive(trivial_group(1))


def test_two_transitive_probe():
    assert _two_transitive(cons.alt(5))
    assert not _two_transitive(cons.cyclic(5))
    assert not _two_transitive(cons.dihedral(5))


FIND_CASES = [
    ("sym_5", lambda: cons.sym(5), True),
    ("alt_5", lambda: cons.alt(5), True),
    ("alt_4", lambda: cons.alt(4), False),
    ("alt_6", lambda: cons.alt(6), False),
    ("agl1_5", lambda: cons.agl1(5), True),
    ("pgl_2_5", lambda: cons.pgl(2, 5), True),
    ("psl_2_7", lambda: cons.psl(2, 7), False),
    ("mathieu_11", cons.m11, True),
    ("psl_2_11_degree_11", cons.psl2_11_on_11, True),
]


@pytest.mark.parametrize("label,factory,expect_found",
                         FIND_CASES, ids=[c[0] for c in FIND_CASES])
def test_find_regular_cyclic(label, factory, expect_found):
    K = factory()
    cls = classify_primitive(K)
    w = find_regular_cyclic(K, cls, seed=7)
    if not expect_found:
        assert w is None
        return
    assert w.generator.is_full_cycle()
    assert K.contains(w.generator)
    assert w.subgroup.order() == K.degree
    assert w.degree == K.degree


def test_find_is_deterministic_per_seed():
    K = cons.pgl(2, 5)
    cls = classify_primitive(K)
    a = find_regular_cyclic(K, cls, seed=3)
    b = find_regular_cyclic(K, cls, seed=3)
    assert a.generator == b.generator


def test_find_in_large_group_by_sampling():
    K = cons.m23()
    w = find_regular_cyclic(K, classify_primitive(K), seed=1)
    assert w.generator.is_full_cycle()
    assert K.contains(w.generator)


def test_exhausted_search_is_an_error_not_an_answer():
    K = cons.m23()
    cls = classify_primitive(K)
    with pytest.raises(SearchExhausted):
        find_regular_cyclic(K, cls, seed=0, sample_budget=0, enum_cap=10)


def test_none_class_short_circuits():
    K = cons.alt(4)
    cls = classify_primitive(cons.alt(4))
    assert cls.kind == SYM_OR_ALT
    # a manufactured no-host tag returns None without touching the group
    from cycbase.primitive import PrimitiveClass
    assert find_regular_cyclic(K, PrimitiveClass(NO_REGULAR_CYCLIC)) is None


# frozen orders: (m, local, holomorph, extended), checked hint-free below
TOWER_ORDERS = [
    (2, 2, 2, 2),
    (3, 6, 6, 6),
    (4, 8, 8, 8),
    (5, 20, 20, 20),
    (6, 72, 12, 72),
    (8, 64, 32, 128),
    (12, 5184, 48, 10368),
]


@pytest.mark.parametrize("m,loc,hol,ext", TOWER_ORDERS,
                         ids=[f"m{c[0]}" for c in TOWER_ORDERS])
def test_tower_orders_dual_route(m, loc, hol, ext):
    tw = build_normalizer_tower(witness_for(m))
    assert tw.local_product.order() == loc
    assert tw.multiplier_part.order() == hol
    assert tw.extended.order() == ext
    # rebuild without order hints so the hints cannot vouch for themselves
    assert build_chain(m, tw.local_product.generators).order == loc
    assert build_chain(m, tw.multiplier_part.generators).order == hol
    assert build_chain(m, tw.extended.generators).order == ext


def test_tower_trivial_cycle():
    tw = build_normalizer_tower(witness_for(1))
    assert tw.p == 1
    assert tw.extended.order() == 1
    assert tw.blocks == ((0,),)


def test_tower_shape_m6():
    tw = build_normalizer_tower(witness_for(6))
    assert tw.p == 3
    assert element_order(tw.subcycle) == 3
    assert tw.subcycle == power(full_cycle(6), 2)
    assert len(tw.blocks) == 2
    assert sorted(x for b in tw.blocks for x in b) == list(range(6))
    assert all(len(b) == 3 for b in tw.blocks)


def test_tower_memberships_and_solvability():
    for m in (4, 6, 12):
        h = full_cycle(m)
        tw = build_normalizer_tower(witness_for(m))
        assert tw.local_product.contains(h)
        assert tw.multiplier_part.contains(h)
        for g in tw.local_product.generators:
            assert tw.extended.contains(g)
        for g in tw.multiplier_part.generators:
            assert tw.extended.contains(g)
        assert is_solvable(tw.local_product)
        assert is_solvable(tw.extended)


def test_tower_blocks_invariant_under_subcycle():
    tw = build_normalizer_tower(witness_for(12))
    for block in tw.blocks:
        assert tuple(sorted(tw.subcycle.apply(x) for x in block)) == tuple(sorted(block))


def test_multiplier_part_normalizes_the_cycle():
    for m in (5, 6, 8):
        h = full_cycle(m)
        w = witness_for(m)
        tw = build_normalizer_tower(w)
        for g in tw.multiplier_part.generators:
            assert w.subgroup.contains(conjugate(h, g))


def test_tower_rejects_non_cycle():
    g = Perm([1, 0, 3, 2])
    with pytest.raises(ArgumentError):
        build_normalizer_tower(RegularCyclicWitness(g, Group(4, [g])))


@settings(max_examples=12, deadline=None)
@given(st.integers(min_value=2, max_value=14))
def test_tower_hints_honest_for_small_m(m):
    tw = build_normalizer_tower(witness_for(m))
    for G in (tw.local_product, tw.multiplier_part, tw.extended):
        assert build_chain(m, G.generators).order == G.order()
