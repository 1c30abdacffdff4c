"""Construction of a solvable subgroup meeting every full-cycle class.

Given a transitive group K, the routine returns a solvable subgroup M
with the property that every cyclic subgroup of K generated by a full
cycle has a conjugate inside M, together with a machine-checkable
conclusion: either M controls the full cycles, or the construction
proves along the way that K has none at all, in which case M is the
trivial group.

The recursion peels one minimal invariant partition per level.  The
partition must be normal, meaning the orbits of its setwise kernel are
exactly the blocks; a full cycle forces that, so a non-normal partition
ends the run.  The block action is controlled recursively and K is cut
down to the preimage of the recursive answer before the current level
is attacked.  A solvable remainder is its own control.  Otherwise the
block restriction must host a regular cyclic subgroup and the
linked-block partitions must agree, and the control is read off in
product coordinates by intersecting with a wreath product around the
normalizer tower of the block cycle.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd

import numpy as np

from .backtrack import conjugating_element, intersection
from .blocks import (
    BlockSystem,
    action_on_blocks,
    block_stabilizer_restriction,
    induced_block_images,
    is_transitive,
    minimal_block_system,
    orbits,
)
from .errors import ArgumentError, CapError
from .feasible import build_frame, build_Wstar, feasible_context, section_of
from .group import Group, is_solvable, trivial_group
from .perm import Perm, conjugate, power
from .primitive import build_normalizer_tower, classify_primitive, find_regular_cyclic

CONTROLS = "controls"
PROVABLY_EMPTY = "provably-empty"
DEGREE_ONE = "degree-one"


@dataclass(frozen=True)
class ControlResult:
    """Outcome of the control construction.

    M is solvable and contains a conjugate of every full-cycle subgroup
    of the input whenever conclusion is "controls"; it is the trivial
    group when the run proved no full cycle exists, and the input itself
    in the degenerate degree-one case.  The trace holds one record per
    recursion level, outermost first.
    """

    M: Group
    conclusion: str
    trace: tuple[dict, ...]
    seed: int


def control_subgroup(K: Group, seed: int = 0) -> ControlResult:
    """Build a solvable subgroup controlling the full cycles of K.

    Deterministic for a fixed seed; the seed only steers the search for
    a regular cyclic subgroup inside non-solvable block restrictions.
    Raises SearchExhausted if that search gives out, which at the
    supported degrees indicates a budget problem rather than absence.
    """
    trace: list[dict] = []
    M, conclusion = _control(K, seed, trace, 0)
    return ControlResult(M, conclusion, tuple(trace), seed)


def _control(K: Group, seed: int, trace: list[dict], depth: int):
    n = K.degree
    rec: dict = {"depth": depth, "degree": n, "seed": seed}
    trace.append(rec)

    if n == 1:
        rec["branch"] = DEGREE_ONE
        return K, DEGREE_ONE
    if not is_transitive(K):
        rec["branch"] = "intransitive"
        return trivial_group(n), PROVABLY_EMPTY

    system = minimal_block_system(K)
    if system is None:
        system = BlockSystem(n, [range(n)])
        rec["primitive"] = True
    rec["blocks"] = system.num_blocks
    rec["block_size"] = n // system.num_blocks

    hom, Kq = action_on_blocks(K, system)
    kernel = hom.kernel()
    if orbits(kernel) != list(system.blocks):
        # a full cycle would power down to a kernel element transitive on
        # every block, so the partition of any viable group is normal
        rec["branch"] = "non-normal-blocks"
        return trivial_group(n), PROVABLY_EMPTY

    Mq, _ = _control(Kq, seed, trace, depth + 1)
    K = hom.preimage(Mq)

    if not is_transitive(K):
        # any full cycle of the original group maps to one of the block
        # action, lands in Mq, and so survives into the preimage; an
        # intransitive preimage leaves it no room
        rec["branch"] = "cut-intransitive"
        return trivial_group(n), PROVABLY_EMPTY
    if is_solvable(K):
        rec["branch"] = "solvable"
        return K, CONTROLS

    blockK = block_stabilizer_restriction(K, system, 0)
    cls = classify_primitive(blockK)
    rec["block_class"] = cls.kind
    witness = find_regular_cyclic(blockK, cls, seed=seed)
    if witness is None:
        rec["branch"] = "no-block-cycle"
        return trivial_group(n), PROVABLY_EMPTY
    rec["witness_images"] = tuple(int(x) for x in witness.generator.images())

    # the preimage of Mq contains the whole block kernel, so the kernel
    # computed for the normality check above is still this K's kernel
    ctx = feasible_context(K, system, kernel=kernel)
    if not ctx.classes_agree:
        rec["branch"] = "partition-mismatch"
        rec["linked"] = ctx.linked_classes
        rec["factor"] = ctx.factor_classes
        return trivial_group(n), PROVABLY_EMPTY

    frame = build_frame(ctx, system.blocks[0])
    tower = build_normalizer_tower(witness)
    W = build_Wstar(tower, Mq)
    star = frame.star_group(K)
    inter = _intersect_star_wreath(star, W, frame, hom, Mq, tower, system)
    if inter._chain is None and inter.order_hint is not None:
        inter_order = inter.order_hint
    else:
        inter_order = inter.order()
    back = frame.to_product.inverse()
    M = Group(n, [conjugate(g, back) for g in inter.generators],
              order_hint=inter_order)
    rec["branch"] = "intersection"
    rec["control_order"] = inter_order
    return M, CONTROLS


def _in_wreath(g: Perm, base: Group, top: Group, product: BlockSystem) -> bool:
    """Membership in base wr top, block-major coordinates: the product
    blocks must be permuted with top part inside the top group and every
    section inside the base group."""
    ind = induced_block_images(product, g)
    if ind is None:
        return False
    t = Perm(ind)
    if not top.contains(t):
        return False
    m = product.degree // product.num_blocks
    return all(base.contains(section_of(g, j, ind[j], m))
               for j in range(product.num_blocks))


def _in_star(w: Perm, frame, hom, Mq: Group, system: BlockSystem) -> bool:
    """Membership in the frame conjugate of the preimage of Mq, tested
    through the one combined chain already built: an element lies in the
    preimage exactly when it permutes the blocks with image in Mq and its
    block-point extension sifts through the ambient combined chain."""
    g = frame.conjugate_out(w)
    ind = induced_block_images(system, g)
    if ind is None:
        return False
    if not Mq.contains(Perm(ind)):
        return False
    n = system.degree
    b = system.num_blocks
    img = np.empty(n + b, dtype=np.int16)
    img[:n] = g.images()
    for i, t in enumerate(ind):
        img[n + i] = n + t
    img.setflags(write=False)
    return hom.chain().contains(Perm(img, _trusted=True))


def _intersect_star_wreath(star: Group, W: Group, frame, hom, Mq: Group,
                           tower, system: BlockSystem) -> Group:
    """star meet W, using the wreath shape of W and the preimage shape of
    star for cheap containment tests before falling back to the generic
    backtrack search.  Either containment returns the contained group
    itself, exactly as the generic search would."""
    n = star.degree
    b = system.num_blocks
    product = BlockSystem(n, [range(i * (n // b), (i + 1) * (n // b))
                              for i in range(b)])
    if all(_in_wreath(g, tower.extended, Mq, product) for g in star.generators):
        return star
    if all(_in_star(w, frame, hom, Mq, system) for w in W.generators):
        return W
    return intersection(star, W)


def canonical_cycle_subgroups(cycles, degree: int) -> list[Group]:
    """Deduplicate full cycles into the subgroups they generate.

    Each subgroup is returned once, generated by its lexicographically
    least generator, and the list is sorted by that generator, so the
    output does not depend on the iteration order of the input.
    """
    exps = [e for e in range(1, degree) if gcd(e, degree) == 1] or [1]
    seen: set[bytes] = set()
    out = []
    for g in cycles:
        if g.key() in seen:
            continue
        gens = [power(g, e) for e in exps]
        seen.update(h.key() for h in gens)
        canon = min(gens, key=Perm.key)
        out.append((canon, Group(degree, [canon], order_hint=degree)))
    out.sort(key=lambda pair: pair[0].key())
    return [W for _, W in out]


def full_cycle_subgroups(G: Group, cap: int = 10 ** 6) -> list[Group]:
    """All cyclic subgroups of G generated by a full cycle.

    Enumerates G, so its order must stay at or below cap.
    """
    if G.order() > cap:
        raise CapError(f"group order {G.order()} exceeds cap {cap}")
    return canonical_cycle_subgroups(
        (g for g in G.chain().elements() if g.is_full_cycle()), G.degree)


def verify_control(K: Group, M: Group, cycles, cap: int = 10 ** 6) -> dict:
    """Check that M meets every given full-cycle subgroup of K.

    cycles is a sequence of full-cycle permutations, one per conjugacy
    class to check.  For each, some full-cycle subgroup of M must be
    K-conjugate to the subgroup it generates.  Returns a report with
    per-cycle results; raises CapError if M is too large to enumerate.
    """
    n = K.degree
    hosted = full_cycle_subgroups(M, cap)
    results = []
    for c in cycles:
        if c.degree != n or not c.is_full_cycle():
            raise ArgumentError("verification input is not a full cycle "
                                "of the right degree")
        C = Group(n, [c], order_hint=n)
        ok = any(conjugating_element(K, C, W) is not None for W in hosted)
        results.append(ok)
    return {
        "checked": len(results),
        "controlled": sum(results),
        "hosted_classes": len(hosted),
        "ok": all(results),
    }
