"""Deterministic stabilizer chains.

A chain is a sequence of levels; level ``i`` holds a base point, the
generators known to fix the first ``i`` base points, and the orbit of
the base point under those generators together with a transversal.
Verification walks levels bottom-up checking that every Schreier
element sifts to the identity, so a frozen chain supports exact order,
membership, enumeration and uniform sampling.

When the caller already knows the group order, construction stops as
soon as the product of orbit lengths reaches it; the product can never
exceed the true order, so the early exit is sound.
"""

from __future__ import annotations

import random
from typing import Iterable, Iterator, Sequence

from .errors import ArgumentError, DegreeError
from .perm import Perm, compose, conjugate, identity_images


class _Level:
    __slots__ = ("point", "gens", "orbit", "orbit_list", "pend", "pend_head",
                 "enq_orbit", "enq_gens")

    def __init__(self, point: int, ident: Perm):
        self.point = point
        self.gens: list[Perm] = []
        # orbit maps a point to (u, u_inverse) with base^u = point
        self.orbit: dict[int, tuple[Perm, Perm]] = {point: (ident, ident)}
        self.orbit_list: list[int] = [point]
        # Schreier pairs awaiting verification; pend_head marks the consumed
        # prefix, enq_orbit/enq_gens how much of orbit x gens is queued.
        # A pair that once sifted to the identity stays clean forever,
        # because transversal entries are never rewritten, so each pair is
        # processed exactly once.
        self.pend: list[tuple[int, Perm]] = []
        self.pend_head = 0
        self.enq_orbit = 1
        self.enq_gens = 0

    def extend_orbit(self, first_new_gen: int) -> None:
        """Close the orbit under all gens, given it is closed under
        gens[:first_new_gen]."""
        gens = self.gens
        orbit = self.orbit
        olist = self.orbit_list
        old_len = len(olist)
        new_gens = gens[first_new_gen:]
        for idx in range(old_len):
            beta = olist[idx]
            u = orbit[beta][0]
            for s in new_gens:
                gamma = int(s._img[beta])
                if gamma not in orbit:
                    u2 = compose(u, s)
                    orbit[gamma] = (u2, u2.inverse())
                    olist.append(gamma)
        ptr = old_len
        while ptr < len(olist):
            beta = olist[ptr]
            u = orbit[beta][0]
            for s in gens:
                gamma = int(s._img[beta])
                if gamma not in orbit:
                    u2 = compose(u, s)
                    orbit[gamma] = (u2, u2.inverse())
                    olist.append(gamma)
            ptr += 1
        self._sync_pending()

    def _sync_pending(self) -> None:
        gens = self.gens
        olist = self.orbit_list
        pend = self.pend
        eo, eg = self.enq_orbit, self.enq_gens
        if eg < len(gens):
            new_gens = gens[eg:]
            for bi in range(eo):
                beta = olist[bi]
                for s in new_gens:
                    pend.append((beta, s))
        if eo < len(olist):
            for bi in range(eo, len(olist)):
                beta = olist[bi]
                for s in gens:
                    pend.append((beta, s))
        self.enq_orbit = len(olist)
        self.enq_gens = len(gens)


class ChainBuilder:
    """Incremental chain construction.

    Typical use: insert the generators, ``close()``, then ``freeze()``.
    ``insert_gen`` may be called again after a close (the chain reopens);
    ``contains`` is only meaningful while the chain is closed.  After
    ``freeze()`` the builder must not be touched again, since the frozen
    chain shares its levels.
    """

    def __init__(
        self,
        degree: int,
        base_prefix: Sequence[int] = (),
        known_order: int | None = None,
    ):
        if degree < 1:
            raise DegreeError(f"degree must be positive, got {degree}")
        self.degree = degree
        self.known_order = known_order
        self._ident = Perm.identity(degree)
        self._arange = identity_images(degree)
        self.levels: list[_Level] = []
        seen: set[int] = set()
        for beta in base_prefix:
            if not 0 <= beta < degree:
                raise ArgumentError(f"base point {beta} out of range for degree {degree}")
            if beta in seen:
                raise ArgumentError(f"repeated base point {beta}")
            seen.add(beta)
            self.levels.append(_Level(beta, self._ident))
        self._complete = known_order == 1

    def current_order(self) -> int:
        p = 1
        for lvl in self.levels:
            p *= len(lvl.orbit_list)
        return p

    @property
    def closed(self) -> bool:
        return self._complete

    def insert_gen(self, g: Perm) -> None:
        if g.degree != self.degree:
            raise DegreeError(f"degree mismatch: {g.degree} != {self.degree}")
        if (self._complete and self.known_order is not None
                and self.current_order() == self.known_order):
            # chain already generates the full group
            return
        if g.is_identity():
            return
        j = None
        for idx, lvl in enumerate(self.levels):
            if g.apply(lvl.point) != lvl.point:
                j = idx
                break
        if j is None:
            self.levels.append(_Level(g.min_moved(), self._ident))
            j = len(self.levels) - 1
        for idx in range(j + 1):
            lvl = self.levels[idx]
            lvl.gens.append(g)
            lvl.extend_orbit(len(lvl.gens) - 1)
        self._complete = False
        if self.known_order is not None and self.current_order() == self.known_order:
            self._complete = True

    def _sift_from_raw(self, start: int, img):
        """Sift a raw image array; returns (residue array, stop level).
        The result aliases the input when nothing strips.  A level whose
        base point is already fixed strips by the identity, so it is
        skipped outright; the base point's own transversal entry is the
        identity pair and never changes."""
        levels = self.levels
        for idx in range(start, len(levels)):
            lvl = levels[idx]
            p = lvl.point
            beta = img.item(p)
            if beta == p:
                continue
            entry = lvl.orbit.get(beta)
            if entry is None:
                return img, idx
            img = entry[1]._img[img]
        return img, len(levels)

    def contains(self, g: Perm) -> bool:
        """Membership test; call only while the chain is closed."""
        residue, _ = self._sift_from_raw(0, g._img)
        return bool((residue == self._arange).all())

    def _add_residue(self, h: Perm, lo: int, j: int) -> None:
        if j == len(self.levels):
            self.levels.append(_Level(h.min_moved(), self._ident))
        for idx in range(lo, j + 1):
            lvl = self.levels[idx]
            lvl.gens.append(h)
            lvl.extend_orbit(len(lvl.gens) - 1)

    def _verify_level(self, i: int) -> int | None:
        """Check pending Schreier elements at level i.  Returns the level
        to resume at when a new strong generator was planted, else None."""
        lvl = self.levels[i]
        orbit = lvl.orbit
        pend = lvl.pend
        arange = self._arange
        head = lvl.pend_head
        while head < len(pend):
            beta, s = pend[head]
            head += 1
            simg = s._img
            # Schreier element u * s * u2^-1 on raw arrays
            h = orbit[int(simg[beta])][1]._img[simg[orbit[beta][0]._img]]
            if (h == arange).all():
                continue
            residue, j = self._sift_from_raw(i + 1, h)
            if (residue == arange).all():
                continue
            residue.setflags(write=False)
            self._add_residue(Perm(residue, _trusted=True), i + 1, j)
            lvl.pend_head = head
            if head > 4096:
                del pend[:head]
                lvl.pend_head = 0
            return j
        pend.clear()
        lvl.pend_head = 0
        return None

    def close(self) -> None:
        if self._complete:
            return
        known = self.known_order
        check = known is not None
        i = len(self.levels) - 1
        while i >= 0:
            if check:
                check = False
                if self.current_order() == known:
                    self._complete = True
                    return
            resume = self._verify_level(i)
            if resume is not None:
                i = resume
                check = known is not None
            else:
                i -= 1
        self._complete = True

    def freeze(self) -> "StabChain":
        self.close()
        return StabChain(self.degree, self.levels, self.current_order())


class StabChain:
    """A frozen, verified stabilizer chain."""

    __slots__ = ("degree", "levels", "order")

    def __init__(self, degree: int, levels: list[_Level], order: int):
        self.degree = degree
        self.levels = levels
        self.order = order

    @property
    def base(self) -> tuple[int, ...]:
        return tuple(lvl.point for lvl in self.levels)

    def strong_generators(self) -> list[Perm]:
        return list(self.levels[0].gens) if self.levels else []

    def sift(self, g: Perm, *, upto: int | None = None) -> Perm:
        """Residue of g after stripping transversal parts through the first
        ``upto`` levels (all levels when None)."""
        stop = len(self.levels) if upto is None else upto
        h = g
        for idx in range(stop):
            lvl = self.levels[idx]
            beta = h._img.item(lvl.point)
            if beta == lvl.point:
                continue
            entry = lvl.orbit.get(beta)
            if entry is None:
                return h
            h = compose(h, entry[1])
        return h

    def sift_with_witness(self, g: Perm, *, upto: int | None = None) -> tuple[Perm, Perm]:
        """Like sift, also returning the transversal product T with
        g = residue * T."""
        stop = len(self.levels) if upto is None else upto
        h = g
        t = Perm.identity(self.degree)
        for idx in range(stop):
            lvl = self.levels[idx]
            beta = h._img.item(lvl.point)
            if beta == lvl.point:
                continue
            entry = lvl.orbit.get(beta)
            if entry is None:
                break
            h = compose(h, entry[1])
            t = compose(entry[0], t)
        return h, t

    def contains(self, g: Perm) -> bool:
        if g.degree != self.degree:
            raise DegreeError(f"degree mismatch: {g.degree} != {self.degree}")
        img = g._img
        for lvl in self.levels:
            p = lvl.point
            beta = img.item(p)
            if beta == p:
                continue
            entry = lvl.orbit.get(beta)
            if entry is None:
                return False
            img = entry[1]._img[img]
        return bool((img == identity_images(self.degree)).all())

    def elements(self) -> Iterator[Perm]:
        """All group elements, one per transversal combination."""
        levels = self.levels

        def rec(idx: int, acc: Perm) -> Iterator[Perm]:
            if idx < 0:
                yield acc
                return
            lvl = levels[idx]
            for beta in lvl.orbit_list:
                yield from rec(idx - 1, compose(acc, lvl.orbit[beta][0]))

        yield from rec(len(levels) - 1, Perm.identity(self.degree))

    def sample(self, rng: random.Random) -> Perm:
        """Uniformly random element."""
        acc = Perm.identity(self.degree)
        for lvl in reversed(self.levels):
            beta = lvl.orbit_list[rng.randrange(len(lvl.orbit_list))]
            acc = compose(acc, lvl.orbit[beta][0])
        return acc

    def stabilizer_suffix(self, k: int) -> "StabChain":
        """Chain of the pointwise stabilizer of the first k base points.
        Shares level objects with self."""
        if not 0 <= k <= len(self.levels):
            raise ArgumentError(f"suffix index {k} out of range")
        suffix = self.levels[k:]
        order = 1
        for lvl in suffix:
            order *= len(lvl.orbit_list)
        return StabChain(self.degree, suffix, order)

    def relabel(self, lam: Perm) -> "StabChain":
        """Chain of the conjugate group under ``g -> lam^-1 g lam``, obtained
        by transporting every stored object.  No re-verification needed."""
        if lam.degree != self.degree:
            raise DegreeError(f"degree mismatch: {lam.degree} != {self.degree}")
        new_levels: list[_Level] = []
        for lvl in self.levels:
            nl = _Level.__new__(_Level)
            nl.point = lam.apply(lvl.point)
            nl.gens = [conjugate(s, lam) for s in lvl.gens]
            nl.orbit = {}
            nl.orbit_list = []
            for beta in lvl.orbit_list:
                u, uinv = lvl.orbit[beta]
                nl.orbit[lam.apply(beta)] = (conjugate(u, lam), conjugate(uinv, lam))
                nl.orbit_list.append(lam.apply(beta))
            nl.pend = []
            nl.pend_head = 0
            nl.enq_orbit = len(nl.orbit_list)
            nl.enq_gens = len(nl.gens)
            new_levels.append(nl)
        return StabChain(self.degree, new_levels, self.order)


def build_chain(
    degree: int,
    gens: Iterable[Perm],
    base_prefix: Sequence[int] = (),
    known_order: int | None = None,
) -> StabChain:
    builder = ChainBuilder(degree, base_prefix, known_order)
    for g in gens:
        builder.insert_gen(g)
    builder.close()
    return builder.freeze()
