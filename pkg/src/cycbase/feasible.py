"""Linked-block structure over the socle of a block kernel.

For a transitive group K with a minimal invariant partition into blocks,
the subgroup fixing every block setwise has a well-behaved socle S when
each block restriction is a non-solvable primitive group hosting a full
cycle: S is the product of the simple block socles and is computed here
as a solvable residual, with the reasoning guarded by explicit post-hoc
checks rather than trusted.

Two blocks are linked when S cannot move their points independently; in
that case S has exactly two orbits on the pair set and the smaller orbit
is the graph of a bijection between the blocks.  Linkage partitions the
blocks into classes, and a second partition comes from asking which
blocks a block's pointwise stabilizer still moves.  The two partitions
agree whenever the ambient group has a regular cyclic subgroup, so a
disagreement is a certificate that none exists.

The frame machinery picks a reference block, transports every other
block onto it through class representatives and the linkage bijections,
and so rewrites K as a group of block-major product coordinates inside
Sym(block) wr Sym(blocks).  The standardization routine does the reverse
bookkeeping for a transitive subgroup of a product: it aligns all block
sections with the block-0 core by conjugating with a section family read
off a block transversal.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import factorial

import numpy as np

from .blocks import (
    BlockSystem,
    block_action_generators,
    block_stabilizer_restriction,
    induced_block_images,
    is_transitive,
    kernel_of_blocks,
    orbits,
    restriction_to_block,
)
from .constructions import wreath
from .errors import (
    ArgumentError,
    FeasibilityViolation,
    FrameError,
    StandardizeError,
)
from .group import Group, pointwise_stabilizer, solvable_residual
from .perm import Perm, compose, conjugate
from .primitive import (
    PROJECTIVE,
    SPORADIC,
    SYM_OR_ALT,
    NormalizerTower,
    PrimitiveClass,
    classify_primitive,
    _projective_order,
)

_SPORADIC_SOCLE = {
    "psl-2-11-points": 660,
    "mathieu-11": 7920,
    "mathieu-23": 10200960,
}


def _expected_socle_order(cls: PrimitiveClass, m: int) -> int:
    if cls.kind == SYM_OR_ALT:
        return factorial(m) // 2
    if cls.kind == PROJECTIVE:
        return _projective_order(cls.d, cls.q)
    if cls.kind == SPORADIC:
        return _SPORADIC_SOCLE[cls.name]
    raise FeasibilityViolation(
        "block restriction is solvable or has no regular cyclic subgroup, "
        "so the kernel socle shortcut does not apply")


def socle_of_kernel(K: Group, system: BlockSystem,
                    kernel: Group | None = None) -> Group:
    """Socle of the subgroup of K fixing every block of the system setwise.

    Computed as the solvable residual of the block kernel, which agrees
    with the socle exactly when every block restriction K^Delta is
    non-solvable primitive with a full cycle (each quotient over the
    block socle is then solvable).  That hypothesis is not assumed: the
    result must be transitive on each block and match, per block, the
    socle order that the classification of K^Delta dictates, otherwise
    FeasibilityViolation is raised.

    A caller that already holds the block kernel may pass it to skip
    recomputing it.
    """
    if kernel is None:
        kernel = kernel_of_blocks(K, system)
    S = solvable_residual(kernel)
    if orbits(S) != list(system.blocks):
        raise FeasibilityViolation(
            "kernel residual is not transitive on every block")
    block0 = system.blocks[0]
    try:
        cls = classify_primitive(block_stabilizer_restriction(K, system, 0))
    except ArgumentError as exc:
        raise FeasibilityViolation(
            f"block restriction is not primitive: {exc}") from exc
    expected = _expected_socle_order(cls, len(block0))
    # S is characteristic in the block kernel, hence normal in K, and K
    # permutes the blocks transitively, so every block restriction of S
    # is conjugate to the first one; checking one order checks them all
    restricted, _ = restriction_to_block(S, block0)
    if restricted.order() != expected:
        raise FeasibilityViolation(
            f"restriction of the kernel residual to block {block0[0]}.. "
            f"has order {restricted.order()}, expected {expected}")
    return S


def block_bijection(S: Group, delta, gamma) -> dict[int, int] | None:
    """The S-equivariant bijection between two linked blocks, or None.

    S must have both blocks among its orbits.  The orbits of S on the
    pair set delta x gamma are computed by union-find; two orbits whose
    smaller one is the graph of a bijection mean the blocks are linked
    and that graph is returned as a point map.  One orbit, or any other
    shape, means the blocks are independent.
    """
    delta = tuple(sorted(delta))
    gamma = tuple(sorted(gamma))
    if delta == gamma:
        raise ArgumentError("blocks must be distinct")
    orbs = set(orbits(S))
    if delta not in orbs or gamma not in orbs:
        raise ArgumentError("both blocks must be orbits of the group")

    md, mg = len(delta), len(gamma)
    pos_d = {p: i for i, p in enumerate(delta)}
    pos_g = {p: j for j, p in enumerate(gamma)}
    parent = list(range(md * mg))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(x: int, y: int) -> None:
        rx, ry = find(x), find(y)
        if rx != ry:
            parent[max(rx, ry)] = min(rx, ry)

    # most generators act on this block pair like one already seen (or
    # fix both blocks); equal actions produce the same unions
    seen_pair_actions = {(tuple(range(md)), tuple(range(mg)))}
    for s in S.generators:
        simg = s._img
        d_img = tuple(pos_d[int(simg[p])] for p in delta)
        g_img = tuple(pos_g[int(simg[q])] for q in gamma)
        if (d_img, g_img) in seen_pair_actions:
            continue
        seen_pair_actions.add((d_img, g_img))
        for i in range(md):
            for j in range(mg):
                union(i * mg + j, d_img[i] * mg + g_img[j])

    members: dict[int, list[int]] = {}
    for x in range(md * mg):
        members.setdefault(find(x), []).append(x)
    if len(members) != 2:
        return None
    small = min(members.values(), key=len)
    if len(small) != md or md != mg:
        return None
    f: dict[int, int] = {}
    hit = set()
    for x in small:
        i, j = divmod(x, mg)
        if delta[i] in f or j in hit:
            return None
        f[delta[i]] = gamma[j]
        hit.add(j)
    return f


def compute_E(S: Group, system: BlockSystem) -> tuple[tuple[int, ...], ...]:
    """Partition block indices into linkage classes via block_bijection."""
    classes: list[list[int]] = []
    reps: list[int] = []
    for i, block in enumerate(system.blocks):
        for ci, r in enumerate(reps):
            if block_bijection(S, system.blocks[r], block) is not None:
                classes[ci].append(i)
                break
        else:
            classes.append([i])
            reps.append(i)
    return tuple(tuple(c) for c in classes)


def _stabilizer_row(S: Group, system: BlockSystem, i: int) -> frozenset[int]:
    ker = pointwise_stabilizer(S, system.blocks[i])
    if not ker.generators:
        return frozenset(range(system.num_blocks))
    stacked = np.stack([g._img for g in ker.generators])
    fixed = (stacked == np.arange(S.degree, dtype=np.int16)).all(axis=0)
    return frozenset(j for j, blk in enumerate(system.blocks)
                     if bool(fixed[list(blk)].all()))


def _block_transversal(mover: Group, system: BlockSystem) -> list[Perm]:
    """One element of the mover per block, carrying block 0 onto it."""
    b = system.num_blocks
    trans: list[Perm | None] = [None] * b
    trans[0] = Perm.identity(mover.degree)
    queue = [0]
    while queue:
        i = queue.pop()
        for g in mover.generators:
            j = int(system.block_of[g.apply(system.blocks[i][0])])
            if trans[j] is None:
                trans[j] = compose(trans[i], g)
                queue.append(j)
    if any(t is None for t in trans):
        raise ArgumentError("mover is not transitive on the blocks")
    return trans


def compute_Eprime(S: Group, system: BlockSystem,
                   mover: Group | None = None) -> tuple[tuple[int, ...], ...]:
    """Partition block indices by which blocks a block's stabilizer fixes.

    Blocks i and j land together exactly when the pointwise stabilizer
    of block i inside S acts trivially on block j: the factor of S alive
    on block i is then the one alive on block j.  The relation must come
    out symmetric and transitive, else the socle hypothesis was wrong.

    When a mover is supplied it must normalize S and permute the blocks
    transitively; the stabilizer of one block is then computed once and
    its row carried to every other block by conjugation, which is much
    cheaper than one stabilizer chain per block.
    """
    b = system.num_blocks
    rows: list[frozenset[int]]
    if mover is None:
        rows = [_stabilizer_row(S, system, i) for i in range(b)]
    else:
        row0 = _stabilizer_row(S, system, 0)
        rows = []
        for t in _block_transversal(mover, system):
            rows.append(frozenset(
                int(system.block_of[t.apply(system.blocks[j][0])])
                for j in row0))
    for i, row in enumerate(rows):
        if i not in row or any(rows[j] != row for j in row):
            raise FeasibilityViolation(
                "stabilizer-support relation on blocks is not an equivalence")
    out = []
    seen: set[frozenset[int]] = set()
    for row in rows:
        if row not in seen:
            seen.add(row)
            out.append(tuple(sorted(row)))
    return tuple(out)


@dataclass(frozen=True)
class FeasibleContext:
    """Everything the frame step needs about one imprimitive layer."""

    K: Group
    system: BlockSystem
    socle: Group
    linked_classes: tuple[tuple[int, ...], ...]
    factor_classes: tuple[tuple[int, ...], ...]

    @property
    def classes_agree(self) -> bool:
        return self.linked_classes == self.factor_classes


def feasible_context(K: Group, system: BlockSystem,
                     kernel: Group | None = None) -> FeasibleContext:
    S = socle_of_kernel(K, system, kernel=kernel)
    return FeasibleContext(
        K, system, S,
        compute_E(S, system),
        compute_Eprime(S, system, mover=K))


@dataclass(frozen=True)
class WreathFrame:
    """Product coordinates exhibiting K inside Sym(delta) wr Sym(blocks).

    label maps each original point to its (reference-block point, block
    index) coordinates; to_product realizes that map as a permutation
    onto block-major positions, block j occupying [j*m, (j+1)*m).  reps
    holds one group element per linkage class carrying the reference
    class onto it, identity for the reference class itself.
    """

    delta: tuple[int, ...]
    system: BlockSystem
    classes: tuple[tuple[int, ...], ...]
    reps: tuple[Perm, ...]
    label: tuple[tuple[int, int], ...]
    to_product: Perm

    @property
    def block_size(self) -> int:
        return len(self.delta)

    def conjugate_in(self, g: Perm) -> Perm:
        return conjugate(g, self.to_product)

    def conjugate_out(self, g: Perm) -> Perm:
        return conjugate(g, self.to_product.inverse())

    def star_group(self, G: Group) -> Group:
        gens = [self.conjugate_in(g) for g in G.generators]
        hint = G.order_hint if G._chain is None else G.order()
        return Group(G.degree, gens, order_hint=hint)


def build_frame(ctx: FeasibleContext, delta) -> WreathFrame:
    """Assemble the coordinate frame with the given reference block."""
    system = ctx.system
    K = ctx.K
    n = K.degree
    delta = tuple(sorted(delta))
    if delta not in system.blocks:
        raise ArgumentError("reference block does not belong to the system")
    ref_block = system.blocks.index(delta)
    m = len(delta)
    b = system.num_blocks

    classes = ctx.linked_classes
    class_of = {}
    for ci, blocks_of_class in enumerate(classes):
        for j in blocks_of_class:
            class_of[j] = ci
    ref_class = class_of[ref_block]

    # transversal of the block orbit, words in the original generators
    top = block_action_generators(K, system)
    trans: dict[int, Perm] = {ref_block: Perm.identity(n)}
    queue = [ref_block]
    ptr = 0
    while ptr < len(queue):
        j = queue[ptr]
        ptr += 1
        for g, im in zip(K.generators, top):
            k = im.apply(j)
            if k not in trans:
                trans[k] = compose(trans[j], g)
                queue.append(k)
    if len(trans) != b:
        raise FrameError("group is not transitive on the blocks")

    reps = []
    for ci, blocks_of_class in enumerate(classes):
        target = ref_block if ci == ref_class else blocks_of_class[0]
        reps.append(trans[target])
    reps_inv = [r.inverse() for r in reps]

    pull: dict[int, dict[int, int]] = {ref_block: {p: p for p in delta}}
    for j in classes[ref_class]:
        if j == ref_block:
            continue
        f = block_bijection(ctx.socle, delta, system.blocks[j])
        if f is None:
            raise FrameError("a block of the reference class lost its bijection")
        pull[j] = {v: k for k, v in f.items()}

    pos_in_delta = {p: i for i, p in enumerate(delta)}
    label: list[tuple[int, int]] = [None] * n
    img = [0] * n
    for point in range(n):
        gi = system.block_index_of(point)
        moved = reps_inv[class_of[gi]].apply(point)
        gj = system.block_index_of(moved)
        back = pull.get(gj)
        if back is None or moved not in back:
            raise FrameError("class representative failed to reach the "
                             "reference class")
        dpt = back[moved]
        label[point] = (dpt, gi)
        img[point] = gi * m + pos_in_delta[dpt]
    fstar = Perm(img)

    product = BlockSystem(n, [range(i * m, (i + 1) * m) for i in range(b)])
    for g in K.generators:
        if induced_block_images(product, conjugate(g, fstar)) is None:
            raise FrameError("conjugated generators do not preserve the "
                             "product blocks")
    return WreathFrame(delta, system, classes, tuple(reps),
                       tuple(label), fstar)


def build_Wstar(tower: NormalizerTower, Kq: Group) -> Group:
    """Wreath of the extended overgroup by the block action, block-major."""
    return wreath(tower.extended, Kq)


def section_of(g: Perm, src_block: int, dst_block: int, m: int) -> Perm:
    """The block-size permutation a product element induces from one block
    to another, assuming g maps the source block onto the destination."""
    base = src_block * m
    off = dst_block * m
    img = [0] * m
    for i in range(m):
        y = g.apply(base + i) - off
        if not 0 <= y < m:
            raise ArgumentError("element does not map the source block "
                                "onto the destination block")
        img[i] = y
    return Perm(img)


def family_permutation(sections, m: int) -> Perm:
    """Flat product-coordinate permutation acting as section gamma on each
    block gamma, with trivial block action."""
    img = []
    for gamma, sec in enumerate(sections):
        base = gamma * m
        img.extend(base + sec.apply(i) for i in range(m))
    return Perm(img)


def wreath_standardize(C: Group, B: Group):
    """Align all block sections of a product-coordinate group with block 0.

    C acts on m*k points in block-major product coordinates, B on the k
    blocks.  Requires C transitive, the product blocks C-invariant, and
    the induced block action inside B.  Returns (t, C0) where C0 is the
    block-0 restriction of the block-0 setwise stabilizer and t is a
    family of per-block alignment sections: conjugating C by the flat
    permutation of t puts every section of every generator inside C0,
    and each t entry normalizes C0.  Any failed requirement raises
    StandardizeError.
    """
    n = C.degree
    k = B.degree
    if k == 0 or n % k:
        raise ArgumentError("point count is not a multiple of the block count")
    m = n // k
    if not is_transitive(C):
        raise StandardizeError("group must be transitive")
    product = BlockSystem(n, [range(i * m, (i + 1) * m) for i in range(k)])
    tops = []
    for g in C.generators:
        im = induced_block_images(product, g)
        if im is None:
            raise StandardizeError("product blocks are not invariant")
        t = Perm(im)
        if not B.contains(t):
            raise StandardizeError("block action escapes the top group")
        tops.append(t)

    C0 = block_stabilizer_restriction(C, product, 0)

    trans: dict[int, Perm] = {0: Perm.identity(n)}
    queue = [0]
    ptr = 0
    while ptr < len(queue):
        j = queue[ptr]
        ptr += 1
        for g, im in zip(C.generators, tops):
            dst = im.apply(j)
            if dst not in trans:
                trans[dst] = compose(trans[j], g)
                queue.append(dst)

    sections = tuple(section_of(trans[gamma], 0, gamma, m) for gamma in range(k))
    flat = family_permutation(sections, m)
    flat_inv = flat.inverse()

    for g, top in zip(C.generators, tops):
        conj = conjugate(g, flat_inv)
        for gamma in range(k):
            if not C0.contains(section_of(conj, gamma, top.apply(gamma), m)):
                raise StandardizeError(
                    "conjugated section escapes the block core; the block "
                    "restrictions are not a single common group")
    for sec in sections:
        for g0 in C0.generators:
            if not C0.contains(conjugate(g0, sec)):
                raise StandardizeError(
                    "alignment section does not normalize the block core")
    return sections, C0
