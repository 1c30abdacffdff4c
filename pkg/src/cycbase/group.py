"""Permutation groups with lazily built stabilizer chains.

A Group is an immutable bag of generators plus a cached chain.  The
structural operations (stabilizers, normal closure, derived series,
solvability) live here as module functions; anything that needs block
systems imports from the blocks module lazily to keep the dependency
one-way at import time.
"""

from __future__ import annotations

import random
import threading
from typing import Iterable, Sequence

from .bsgs import ChainBuilder, StabChain, build_chain
from .errors import ArgumentError, DegreeError
from .perm import Perm, commutator, compose, conjugate

_SMALL_GEN_SEED = 0x5EED


class Group:
    __slots__ = ("degree", "generators", "name", "order_hint", "_chain", "_lock",
                 "_small", "_orbits")

    def __init__(
        self,
        degree: int,
        generators: Iterable[Perm],
        name: str | None = None,
        order_hint: int | None = None,
    ):
        gens = []
        seen = set()
        for g in generators:
            if g.degree != degree:
                raise DegreeError(
                    f"generator degree {g.degree} does not match group degree {degree}"
                )
            if g.is_identity() or g.key() in seen:
                continue
            seen.add(g.key())
            gens.append(g)
        self.degree = degree
        self.generators = tuple(gens)
        self.name = name
        self.order_hint = order_hint
        self._chain: StabChain | None = None
        self._lock = threading.Lock()
        self._small: list[Perm] | None = None
        self._orbits: tuple[tuple[int, ...], ...] | None = None

    def chain(self) -> StabChain:
        c = self._chain
        if c is None:
            with self._lock:
                c = self._chain
                if c is None:
                    c = build_chain(self.degree, self.generators, known_order=self.order_hint)
                    self._chain = c
        return c

    def order(self) -> int:
        return self.chain().order

    def contains(self, g: Perm) -> bool:
        return self.chain().contains(g)

    def is_trivial(self) -> bool:
        return not self.generators

    def random_element(self, rng: random.Random) -> Perm:
        return self.chain().sample(rng)

    def with_chain(self, chain: StabChain) -> "Group":
        self._chain = chain
        return self

    def __repr__(self) -> str:
        label = self.name or "group"
        known = f", order={self._chain.order}" if self._chain is not None else ""
        return f"Group({label}, degree={self.degree}, ngens={len(self.generators)}{known})"


def trivial_group(degree: int) -> Group:
    return Group(degree, [], order_hint=1)


def from_chain(chain: StabChain, name: str | None = None) -> Group:
    g = Group(chain.degree, chain.strong_generators(), name=name, order_hint=chain.order)
    return g.with_chain(chain)


def pointwise_stabilizer(G: Group, points: Sequence[int]) -> Group:
    """Subgroup fixing every listed point, with its chain attached for free."""
    pts = list(dict.fromkeys(points))
    for p in pts:
        if not 0 <= p < G.degree:
            raise ArgumentError(f"point {p} out of range for degree {G.degree}")
    chain = build_chain(G.degree, G.generators, base_prefix=pts, known_order=G.order_hint)
    return from_chain(chain.stabilizer_suffix(len(pts)))


def small_generating_set(G: Group) -> list[Perm]:
    """A short generating list for G.

    Greedy membership filtering always runs; at modest degree a seeded
    sampling pass then tries to replace the survivors with 2 to 4 random
    elements, verified against the exact order.  Deterministic.
    """
    if G._small is not None:
        return list(G._small)
    gens = [g for g in G.generators if not g.is_identity()]
    if len(gens) > 8 or (len(gens) > 2 and G.degree <= 64):
        known = G._chain.order if G._chain is not None else G.order_hint
        builder = ChainBuilder(G.degree, known_order=known)
        builder.close()
        kept = []
        for g in gens:
            if builder.contains(g):
                continue
            builder.insert_gen(g)
            builder.close()
            kept.append(g)
        gens = kept
    if len(gens) > 2 and G.degree <= 64:
        order = G.order()
        chain = G.chain()
        rng = random.Random(_SMALL_GEN_SEED ^ (order % (1 << 61)) ^ G.degree)
        found = None
        for k in (2, 3, 4):
            if found or k >= len(gens):
                break
            for _ in range(8):
                cand = [chain.sample(rng) for _ in range(k)]
                trial = build_chain(G.degree, cand, known_order=order)
                if trial.order == order:
                    found = cand
                    break
        if found:
            gens = found
    G._small = list(gens)
    return list(gens)


def normal_closure(G: Group, seeds: Iterable[Perm]) -> Group:
    """Smallest subgroup containing the seeds that is normal in G.

    Conjugates of unprocessed elements by a short generating set of G are
    sifted into an incremental chain; the loop ends when every conjugate
    of every chain contributor is already a member, which is exactly
    normality plus closure.
    """
    conj_by = small_generating_set(G)
    builder = ChainBuilder(G.degree)
    builder.close()
    pending: list[Perm] = []
    for s in seeds:
        if s.degree != G.degree:
            raise DegreeError("seed degree mismatch")
        if not s.is_identity() and not builder.contains(s):
            builder.insert_gen(s)
            builder.close()
            pending.append(s)
    contributors = list(pending)
    while pending:
        h = pending.pop()
        for c in conj_by:
            t = conjugate(h, c)
            if not builder.contains(t):
                builder.insert_gen(t)
                builder.close()
                pending.append(t)
                contributors.append(t)
    chain = builder.freeze()
    return Group(G.degree, contributors, order_hint=chain.order).with_chain(chain)


def derived_subgroup(G: Group) -> Group:
    gens = small_generating_set(G)
    seeds = []
    for i, a in enumerate(gens):
        for b in gens[i + 1 :]:
            seeds.append(commutator(a, b))
    return normal_closure(G, seeds)


def derived_series(G: Group) -> list[Group]:
    """G, G', G'', ... down to the first repetition (stable term included)."""
    series = [G]
    current = G
    for _ in range(200):
        nxt = derived_subgroup(current)
        if nxt.order() == current.order():
            return series
        series.append(nxt)
        if nxt.order() == 1:
            return series
        current = nxt
    raise RuntimeError("derived series failed to stabilize")


def solvable_residual(G: Group) -> Group:
    """Last term of the derived series: trivial exactly for solvable G."""
    return derived_series(G)[-1]


def is_solvable(G: Group) -> bool:
    """Solvability by orbit and block decomposition.

    Intransitive groups embed in the product of their orbit restrictions;
    transitive imprimitive groups embed in the wreath product of a block
    stabilizer restriction with the block image.  Both directions preserve
    solvability, so only small primitive groups ever reach the derived
    series computation.
    """
    from .blocks import (
        block_action_generators,
        block_stabilizer_restriction,
        minimal_block_system,
        orbits,
        restriction_to_block,
    )

    if not G.generators:
        return True
    orbs = orbits(G)
    if len(orbs) > 1:
        for orb in orbs:
            part, _ = restriction_to_block(G, orb)
            if not is_solvable(part):
                return False
        return True
    if G.degree == 1:
        return True
    system = minimal_block_system(G)
    if system is not None and not system.is_trivial():
        top = Group(system.num_blocks, block_action_generators(G, system))
        if not is_solvable(top):
            return False
        return is_solvable(block_stabilizer_restriction(G, system, 0))
    return solvable_residual(G).order() == 1
