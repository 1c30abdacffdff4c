"""Orbits, block systems, and the action on a block system.

The action of a group on an invariant partition is realized as a
combined permutation action on ``degree + num_blocks`` points: original
points keep their labels and block ``i`` becomes point ``degree + i``.
Building one stabilizer chain for the combined action with the block
points as base prefix yields the image order, the kernel with its own
chain, and lifts of image elements, all from a single verification.
"""

from __future__ import annotations

from typing import Iterable, Sequence

import numpy as np

from .bsgs import StabChain, _Level, build_chain
from .errors import (
    ArgumentError,
    DegreeError,
    InvalidBlocksError,
    NotTransitiveError,
)
from .perm import MAX_DEGREE, Perm
from .group import Group, from_chain, trivial_group


def orbits(G: Group) -> list[tuple[int, ...]]:
    """Orbits on points, each sorted, ordered by smallest element.

    Cached on the group, since callers recompute orbits of the same
    group freely.  The search runs breadth-first on whole frontier
    arrays, one fancy index per generator per round.
    """
    if G._orbits is not None:
        return list(G._orbits)
    n = G.degree
    imgs = [g._img for g in G.generators]
    seen = np.zeros(n, dtype=bool)
    out = []
    for start in range(n):
        if seen[start]:
            continue
        seen[start] = True
        frontier = np.array([start], dtype=np.int16)
        members = [frontier]
        while frontier.size:
            nxt = np.unique(np.concatenate([im[frontier] for im in imgs])) \
                if imgs else np.empty(0, dtype=np.int16)
            nxt = nxt[~seen[nxt]]
            if nxt.size:
                seen[nxt] = True
                members.append(nxt)
            frontier = nxt
        orb = np.sort(np.concatenate(members))
        out.append(tuple(int(x) for x in orb))
    G._orbits = tuple(out)
    return list(out)


def is_transitive(G: Group) -> bool:
    return len(orbits(G)) == 1


class BlockSystem:
    """An invariant partition of the point set."""

    __slots__ = ("degree", "blocks", "block_of")

    def __init__(self, degree: int, blocks: Iterable[Sequence[int]]):
        blks = sorted((tuple(sorted(b)) for b in blocks), key=lambda b: b[0])
        block_of = np.full(degree, -1, dtype=np.int32)
        for i, b in enumerate(blks):
            if not b:
                raise InvalidBlocksError("empty block")
            for p in b:
                if not 0 <= p < degree:
                    raise InvalidBlocksError(f"point {p} out of range for degree {degree}")
                if block_of[p] != -1:
                    raise InvalidBlocksError(f"point {p} appears in two blocks")
                block_of[p] = i
        if (block_of == -1).any():
            missing = int(np.flatnonzero(block_of == -1)[0])
            raise InvalidBlocksError(f"point {missing} not covered by any block")
        block_of.setflags(write=False)
        self.degree = degree
        self.blocks = tuple(blks)
        self.block_of = block_of

    @property
    def num_blocks(self) -> int:
        return len(self.blocks)

    def is_trivial(self) -> bool:
        return len(self.blocks) == 1 or len(self.blocks) == self.degree

    def block_index_of(self, point: int) -> int:
        return int(self.block_of[point])

    def __repr__(self) -> str:
        return f"BlockSystem({self.num_blocks} blocks on {self.degree} points)"

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, BlockSystem):
            return NotImplemented
        return self.degree == other.degree and self.blocks == other.blocks

    def __hash__(self) -> int:
        return hash((self.degree, self.blocks))


def induced_block_images(system: BlockSystem, g: Perm) -> list[int] | None:
    """Images of block indices under g, or None when g does not permute
    the blocks."""
    mapped = system.block_of[g.images()]
    out = []
    for b in system.blocks:
        vals = mapped[list(b)]
        first = int(vals[0])
        if (vals != first).any():
            return None
        out.append(first)
    if len(set(out)) != len(out):
        return None
    return out


def _find(parent: list[int], x: int) -> int:
    root = x
    while parent[root] != root:
        root = parent[root]
    while parent[x] != root:
        parent[x], x = root, parent[x]
    return root


def _min_block_classes(gens: Sequence[Perm], n: int, a: int, b: int,
                       limit: int | None = None) -> list[int] | None:
    """Class roots of the finest invariant partition gluing a and b.

    Absorbed class roots are queued; processing a point against the
    current root of its class propagates the gluing through every
    generator until the partition is a congruence.

    With a limit, gives up and returns None as soon as the class of
    point 0 outgrows it.  Classes only ever merge, so the final class
    of 0 could not have been smaller than the limit either.
    """
    parent = list(range(n))
    size = [1] * n
    parent[b] = a
    size[a] = 2
    queue = [b]
    while queue:
        gamma = queue.pop()
        delta = _find(parent, gamma)
        for g in gens:
            gi = g._img
            x = _find(parent, int(gi[gamma]))
            y = _find(parent, int(gi[delta]))
            if x != y:
                parent[x] = y
                size[y] += size[x]
                queue.append(x)
        if limit is not None and size[_find(parent, 0)] > limit:
            return None
    return [_find(parent, p) for p in range(n)]


def minimal_block_system(G: Group) -> BlockSystem | None:
    """A minimal non-trivial block system of a transitive group, or None
    when the group is primitive.

    Among all candidate systems the one with the smallest block size wins;
    ties go to the lexicographically smallest block containing point 0.
    """
    if not is_transitive(G):
        raise NotTransitiveError("block systems require a transitive group")
    n = G.degree
    if n == 1:
        return None
    gens = list(G.generators)
    best: tuple[int, tuple[int, ...], list[int]] | None = None
    for b in range(1, n):
        limit = None if best is None else best[0]
        classes = _min_block_classes(gens, n, 0, b, limit=limit)
        if classes is None:
            continue
        root0 = classes[0]
        blk0 = tuple(p for p in range(n) if classes[p] == root0)
        size = len(blk0)
        if size == n:
            continue
        key = (size, blk0)
        if best is None or key < best[:2]:
            best = (size, blk0, classes)
            if size == 2:
                break
    if best is None:
        return None
    classes = best[2]
    groups: dict[int, list[int]] = {}
    for p in range(n):
        groups.setdefault(classes[p], []).append(p)
    return BlockSystem(n, groups.values())


def _slice_perm(g: Perm, n: int) -> Perm:
    img = np.array(g.images()[:n], dtype=np.int16)
    img.setflags(write=False)
    return Perm(img, _trusted=True)


def _shift_perm(g: Perm, offset: int, size: int) -> Perm:
    img = np.array(g.images()[offset : offset + size], dtype=np.int16) - offset
    img = img.astype(np.int16)
    img.setflags(write=False)
    return Perm(img, _trusted=True)


def _project_levels(levels: list[_Level], take) -> list[_Level]:
    out = []
    for lvl in levels:
        nl = _Level.__new__(_Level)
        nl.point = take.point_map(lvl.point)
        nl.gens = [take.perm_map(s) for s in lvl.gens]
        nl.orbit = {}
        nl.orbit_list = []
        for beta in lvl.orbit_list:
            u, uinv = lvl.orbit[beta]
            nl.orbit[take.point_map(beta)] = (take.perm_map(u), take.perm_map(uinv))
            nl.orbit_list.append(take.point_map(beta))
        nl.pend = []
        nl.pend_head = 0
        nl.enq_orbit = len(nl.orbit_list)
        nl.enq_gens = len(nl.gens)
        out.append(nl)
    return out


class _OmegaTake:
    def __init__(self, n: int):
        self.n = n

    def point_map(self, p: int) -> int:
        return p

    def perm_map(self, g: Perm) -> Perm:
        return _slice_perm(g, self.n)


class _BlockTake:
    def __init__(self, n: int, b: int):
        self.n = n
        self.b = b

    def point_map(self, p: int) -> int:
        return p - self.n

    def perm_map(self, g: Perm) -> Perm:
        return _shift_perm(g, self.n, self.b)


class BlockHom:
    """The homomorphism from a group onto its action on a block system."""

    def __init__(self, G: Group, system: BlockSystem):
        if system.degree != G.degree:
            raise DegreeError("block system degree does not match group degree")
        n = G.degree
        b = system.num_blocks
        if n + b > MAX_DEGREE:
            raise DegreeError(f"combined degree {n + b} exceeds maximum {MAX_DEGREE}")
        combined = []
        for g in G.generators:
            ind = induced_block_images(system, g)
            if ind is None:
                raise InvalidBlocksError("partition is not invariant under the group")
            img = np.empty(n + b, dtype=np.int16)
            img[:n] = g.images()
            for i, t in enumerate(ind):
                img[n + i] = n + t
            img.setflags(write=False)
            combined.append(Perm(img, _trusted=True))
        self.G = G
        self.system = system
        self._n = n
        self._b = b
        self._combined_gens = combined
        self._chain: StabChain | None = None
        self._image: Group | None = None
        self._kernel: Group | None = None

    def _known_order(self) -> int | None:
        if self._chain is not None:
            return self._chain.order
        if self.G._chain is not None:
            return self.G._chain.order
        return self.G.order_hint

    def chain(self) -> StabChain:
        if self._chain is None:
            n, b = self._n, self._b
            self._chain = build_chain(
                n + b,
                self._combined_gens,
                base_prefix=range(n, n + b),
                known_order=self._known_order(),
            )
        return self._chain

    def image(self) -> Group:
        """The action on blocks, as a group of degree num_blocks with a
        chain projected from the combined one."""
        if self._image is None:
            chain = self.chain()
            n, b = self._n, self._b
            levels = _project_levels(chain.levels[:b], _BlockTake(n, b))
            order = 1
            for lvl in levels:
                order *= len(lvl.orbit_list)
            img_chain = StabChain(b, levels, order)
            gens = [_shift_perm(g, n, b) for g in self._combined_gens]
            name = f"{self.G.name}/blocks" if self.G.name else None
            self._image = Group(b, gens, name=name, order_hint=order).with_chain(img_chain)
        return self._image

    def kernel(self) -> Group:
        """Elements fixing every block setwise, with a chain restricted
        from the combined one."""
        if self._kernel is None:
            chain = self.chain()
            n, b = self._n, self._b
            suffix = chain.stabilizer_suffix(b)
            levels = _project_levels(suffix.levels, _OmegaTake(n))
            ker_chain = StabChain(n, levels, suffix.order)
            self._kernel = from_chain(ker_chain)
        return self._kernel

    def apply(self, g: Perm) -> Perm:
        """Image of a single group element on the blocks."""
        ind = induced_block_images(self.system, g)
        if ind is None:
            raise InvalidBlocksError("element does not permute the blocks")
        return Perm(ind)

    def lift(self, q: Perm) -> Perm:
        """Some preimage of an image element q."""
        n, b = self._n, self._b
        if q.degree != b:
            raise DegreeError(f"expected degree {b}, got {q.degree}")
        img = np.empty(n + b, dtype=np.int16)
        img[:n] = np.arange(n, dtype=np.int16)
        img[n:] = q.images() + np.int16(n)
        img.setflags(write=False)
        embedded = Perm(img, _trusted=True)
        residue, t = self.chain().sift_with_witness(embedded, upto=b)
        for i in range(n, n + b):
            if residue.apply(i) != i:
                raise ArgumentError("element is not in the block image")
        return _slice_perm(t, n)

    def preimage(self, sub: Group) -> Group:
        """Full preimage of a subgroup of the image."""
        if sub.degree != self._b:
            raise DegreeError("subgroup degree does not match number of blocks")
        ker = self.kernel()
        gens = list(ker.generators) + [self.lift(q) for q in sub.generators]
        hint = None
        if sub.order_hint is not None or sub._chain is not None:
            hint = ker.order() * sub.order()
        return Group(self._n, gens, order_hint=hint)

    def stabilizer_of_block(self, i: int) -> Group:
        """Setwise stabilizer of block i: the preimage of the image-side
        point stabilizer, so only one combined chain is ever built."""
        from .group import pointwise_stabilizer

        if not 0 <= i < self._b:
            raise ArgumentError(f"block index {i} out of range")
        return self.preimage(pointwise_stabilizer(self.image(), [i]))


def action_on_blocks(G: Group, system: BlockSystem) -> tuple[BlockHom, Group]:
    hom = BlockHom(G, system)
    return hom, hom.image()


def block_action_generators(G: Group, system: BlockSystem) -> list[Perm]:
    """Generator images on the blocks, no chain involved."""
    out = []
    for g in G.generators:
        ind = induced_block_images(system, g)
        if ind is None:
            raise InvalidBlocksError("partition is not invariant under the group")
        out.append(Perm(ind))
    return out


def block_stabilizer_restriction(G: Group, system: BlockSystem, i: int) -> Group:
    """The setwise stabilizer of block i, restricted to that block.

    Works from Schreier generators over a transversal of the block orbit,
    so no stabilizer chain is needed.  Requires the blocks to form one
    orbit of the induced action.
    """
    from .perm import compose

    n = G.degree
    gens = list(G.generators)
    ind = []
    for g in gens:
        im = induced_block_images(system, g)
        if im is None:
            raise InvalidBlocksError("partition is not invariant under the group")
        ind.append(im)
    trans: dict[int, Perm] = {i: Perm.identity(n)}
    order_list = [i]
    ptr = 0
    while ptr < len(order_list):
        j = order_list[ptr]
        ptr += 1
        t = trans[j]
        for g, im in zip(gens, ind):
            k = im[j]
            if k not in trans:
                trans[k] = compose(t, g)
                order_list.append(k)
    if len(trans) != system.num_blocks:
        raise NotTransitiveError("blocks do not form a single orbit")
    block = system.blocks[i]
    seen: dict[bytes, Perm] = {}
    for j in order_list:
        t = trans[j]
        for g, im in zip(gens, ind):
            s = compose(compose(t, g), trans[im[j]].inverse())
            r = restriction_of_perm(s, block)
            seen.setdefault(r.key(), r)
    return Group(len(block), seen.values())


def kernel_of_blocks(G: Group, system: BlockSystem) -> Group:
    return BlockHom(G, system).kernel()


def block_stabilizer(G: Group, system: BlockSystem, i: int) -> Group:
    return BlockHom(G, system).stabilizer_of_block(i)


def restriction_to_block(G: Group, points: Sequence[int], name: str | None = None):
    """Restrict to an invariant point set, renumbered to 0..k-1 ascending.

    Returns the restricted group and the sorted point list, so position j
    of the list is the original label of new point j.
    """
    pts = sorted(set(points))
    if not pts:
        raise ArgumentError("empty point set")
    k = len(pts)
    n = G.degree
    pos = np.full(n, -1, dtype=np.int32)
    pos[pts] = np.arange(k, dtype=np.int32)
    arr = np.array(pts, dtype=np.int32)
    gens = []
    for g in G.generators:
        img = g.images()[arr]
        if (pos[img] == -1).any():
            raise ArgumentError("point set is not invariant")
        gens.append(Perm(pos[img].astype(np.int16)))
    return Group(k, gens, name=name), pts


def restriction_of_perm(g: Perm, pts: Sequence[int]) -> Perm:
    """Restrict one permutation to an invariant sorted point list."""
    arr = np.asarray(pts, dtype=np.int32)
    n = g.degree
    pos = np.full(n, -1, dtype=np.int32)
    pos[arr] = np.arange(len(arr), dtype=np.int32)
    img = pos[g.images()[arr]]
    if (img == -1).any():
        raise ArgumentError("point set is not invariant")
    return Perm(img.astype(np.int16))


def embed_perm(q: Perm, pts: Sequence[int], degree: int) -> Perm:
    """Inverse of restriction_of_perm: act as q on pts, fix the rest."""
    arr = np.asarray(pts, dtype=np.int32)
    img = np.arange(degree, dtype=np.int16)
    img[arr] = arr[q.images()]
    img.setflags(write=False)
    return Perm(img, _trusted=True)
