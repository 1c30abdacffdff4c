"""Brute-force ground truth and the committed test corpus.

Everything here deliberately avoids the stabilizer-chain and backtrack
machinery: groups are enumerated by breadth-first closure of their
generators, and conjugacy classes of regular cyclic subgroups are fused
by orbiting subgroup labels under generator conjugation.  The results
are slow but independently trustworthy, which is what the rest of the
test suite measures itself against.
"""

from __future__ import annotations

import random
import zlib
from dataclasses import dataclass
from math import gcd

from . import constructions as cons
from .errors import CapError
from .group import Group
from .perm import Perm, compose, conjugate, power

_ENUM_CAP = 10 ** 6


def enumerate_group(G: Group, cap: int = _ENUM_CAP) -> list[Perm]:
    """All elements of G by breadth-first closure of the generators."""
    idn = Perm.identity(G.degree)
    seen = {idn.key(): idn}
    frontier = [idn]
    while frontier:
        new = []
        for x in frontier:
            for g in G.generators:
                y = compose(x, g)
                k = y.key()
                if k not in seen:
                    if len(seen) >= cap:
                        raise CapError(
                            f"enumeration exceeded cap {cap}")
                    seen[k] = y
                    new.append(y)
        frontier = new
    return list(seen.values())


@dataclass(frozen=True)
class OracleCyc:
    """Ground truth about the regular cyclic subgroups of one group."""

    reps: tuple[Perm, ...]
    subgroup_count: int
    cycle_count: int

    @property
    def class_count(self) -> int:
        return len(self.reps)


def oracle_cyc(K: Group, cap: int = _ENUM_CAP) -> OracleCyc:
    """Partition the full-cycle subgroups of K into conjugacy classes.

    Subgroups are labelled by their least generator under the image-table
    order; classes are the orbits of those labels under conjugation by
    the group generators, and each class is reported by its least label.
    """
    n = K.degree
    elements = enumerate_group(K, cap)
    exps = [e for e in range(1, n) if gcd(e, n) == 1] or [1]

    def canon(c: Perm) -> Perm:
        return min((power(c, e) for e in exps), key=Perm.key)

    cycle_count = 0
    subs: dict[bytes, Perm] = {}
    for g in elements:
        if g.is_full_cycle():
            cycle_count += 1
            r = canon(g)
            subs[r.key()] = r

    reps = []
    unplaced = dict(subs)
    while unplaced:
        start = unplaced.pop(min(unplaced))
        best = start
        orbit = {start.key()}
        stack = [start]
        while stack:
            c = stack.pop()
            for g in K.generators:
                d = canon(conjugate(c, g))
                dk = d.key()
                if dk not in orbit:
                    orbit.add(dk)
                    unplaced.pop(dk, None)
                    if dk < best.key():
                        best = d
                    stack.append(d)
        reps.append(best)
    reps.sort(key=Perm.key)
    return OracleCyc(tuple(reps), len(subs), cycle_count)


@dataclass(frozen=True)
class CorpusEntry:
    """One committed test group: a name, its expected order, a factory."""

    name: str
    degree: int
    order: int
    factory: object
    tags: frozenset[str]

    def group(self) -> Group:
        G = self.factory()
        return Group(G.degree, list(G.generators), name=self.name,
                     order_hint=G.order_hint)


def _scramble(make, name):
    """Conjugate a construction by a name-seeded random relabelling."""

    def build():
        G = make()
        rng = random.Random(zlib.crc32(name.encode()))
        img = list(range(G.degree))
        rng.shuffle(img)
        c = Perm(img)
        return Group(G.degree, [conjugate(g, c) for g in G.generators],
                     name=name, order_hint=G.order_hint)

    return build


def _sym5_on_pairs():
    import itertools

    pairs = sorted(itertools.combinations(range(5), 2))
    idx = {p: i for i, p in enumerate(pairs)}
    gens = [Perm([idx[tuple(sorted((g.apply(a), g.apply(b))))]
                  for (a, b) in pairs])
            for g in cons.sym(5).generators]
    return Group(10, gens, name="sym5-pairs", order_hint=120)


def _fact(n):
    out = 1
    for i in range(2, n + 1):
        out *= i
    return out


def _entries() -> list[CorpusEntry]:
    e: list[CorpusEntry] = []

    def add(name, degree, order, factory, *tags):
        e.append(CorpusEntry(name, degree, order, factory, frozenset(tags)))

    for n in range(2, 11):
        add(f"cyclic-{n}", n, n, lambda n=n: cons.cyclic(n), "solvable",
            *( ("primitive",) if n in (2, 3, 5, 7) else () ))
    for n in range(3, 11):
        add(f"dihedral-{n}", n, 2 * n, lambda n=n: cons.dihedral(n),
            "solvable", *( ("primitive",) if n in (3, 5, 7) else () ))
    for q in (4, 5, 7, 8, 9):
        add(f"agl1-{q}", q, q * (q - 1), lambda q=q: cons.agl1(q),
            "solvable", "affine", "primitive")
    add("frobenius-7-3", 7, 21, lambda: cons.frobenius_subgroup(7, 3),
        "solvable", "affine", "primitive")

    for n in range(4, 10):
        add(f"sym-{n}", n, _fact(n), lambda n=n: cons.sym(n),
            "sym-alt", "primitive")
        add(f"alt-{n}", n, _fact(n) // 2, lambda n=n: cons.alt(n),
            "sym-alt", "primitive")

    add("psl-2-5", 6, 60, lambda: cons.psl(2, 5), "projective", "primitive")
    add("psl-2-7", 8, 168, lambda: cons.psl(2, 7), "projective", "primitive")
    add("psl-2-8", 9, 504, lambda: cons.psl(2, 8), "projective", "primitive")
    add("psl-2-9", 10, 360, lambda: cons.psl(2, 9), "projective", "primitive")
    add("psl-3-2", 7, 168, lambda: cons.psl(3, 2), "projective", "primitive")
    add("pgl-2-5", 6, 120, lambda: cons.pgl(2, 5), "projective", "primitive")
    add("pgl-2-7", 8, 336, lambda: cons.pgl(2, 7), "projective", "primitive")
    add("pgl-2-9", 10, 720, lambda: cons.pgl(2, 9), "projective", "primitive")
    add("pgammal-2-8", 9, 1512, lambda: cons.pgammal(2, 8),
        "projective", "primitive")
    add("pgammal-2-9", 10, 1440, lambda: cons.pgammal(2, 9),
        "projective", "primitive")
    add("sym5-pairs", 10, 120, _sym5_on_pairs, "primitive", "no-cycle")

    wreaths = [
        ("c2", cons.cyclic, 2, "c2", cons.cyclic, 2),
        ("c3", cons.cyclic, 3, "c2", cons.cyclic, 2),
        ("c2", cons.cyclic, 2, "c3", cons.cyclic, 3),
        ("s3", cons.sym, 3, "c2", cons.cyclic, 2),
        ("c2", cons.cyclic, 2, "s3", cons.sym, 3),
        ("c4", cons.cyclic, 4, "c2", cons.cyclic, 2),
        ("c2", cons.cyclic, 2, "c4", cons.cyclic, 4),
        ("d4", cons.dihedral, 4, "c2", cons.cyclic, 2),
        ("a4", cons.alt, 4, "c2", cons.cyclic, 2),
        ("s4", cons.sym, 4, "c2", cons.cyclic, 2),
        ("c5", cons.cyclic, 5, "c2", cons.cyclic, 2),
        ("d5", cons.dihedral, 5, "c2", cons.cyclic, 2),
        ("agl1-5", cons.agl1, 5, "c2", cons.cyclic, 2),
        ("a5", cons.alt, 5, "c2", cons.cyclic, 2),
        ("s5", cons.sym, 5, "c2", cons.cyclic, 2),
        ("c2", cons.cyclic, 2, "c5", cons.cyclic, 5),
        ("c2", cons.cyclic, 2, "d5", cons.dihedral, 5),
    ]
    for an, af, aa, bn, bf, ba in wreaths:
        A, B = af(aa), bf(ba)
        deg = A.degree * B.degree
        order = A.order_hint ** B.degree * B.order_hint
        add(f"wr-{an}-{bn}", deg, order,
            lambda af=af, aa=aa, bf=bf, ba=ba: cons.wreath(af(aa), bf(ba)),
            "wreath")

    diagonals = [
        ("s3", cons.sym, 3, 2), ("a4", cons.alt, 4, 2),
        ("d4", cons.dihedral, 4, 2), ("s4", cons.sym, 4, 2),
        ("d5", cons.dihedral, 5, 2), ("a5", cons.alt, 5, 2),
        ("agl1-5", cons.agl1, 5, 2),
    ]
    for an, af, aa, k in diagonals:
        A = af(aa)
        add(f"diag-{an}-{k}", A.degree * k, A.order_hint * k,
            lambda af=af, aa=aa, k=k:
            cons.diagonal_cyclic_product(af(aa), k),
            "diagonal")

    add("reg-s3", 6, 6, lambda: cons.regular_representation(cons.sym(3)),
        "regular")
    add("reg-d4", 8, 8,
        lambda: cons.regular_representation(cons.dihedral(4)), "regular")
    add("reg-d5", 10, 10,
        lambda: cons.regular_representation(cons.dihedral(5)), "regular")

    twisted = [
        ("sym-5", lambda: cons.sym(5), 5, 120),
        ("alt-6", lambda: cons.alt(6), 6, 360),
        ("psl-2-7", lambda: cons.psl(2, 7), 8, 168),
        ("wr-s5-c2", lambda: cons.wreath(cons.sym(5), cons.cyclic(2)),
         10, 28800),
        ("dihedral-8", lambda: cons.dihedral(8), 8, 16),
        ("agl1-8", lambda: cons.agl1(8), 8, 56),
        ("alt-7", lambda: cons.alt(7), 7, 2520),
        ("pgl-2-9", lambda: cons.pgl(2, 9), 10, 720),
    ]
    for base, make, deg, order in twisted:
        name = f"twist-{base}"
        add(name, deg, order, _scramble(make, name), "twisted")

    add("psl-2-11-points", 11, 660, cons.psl2_11_on_11,
        "sporadic", "primitive")
    add("mathieu-11", 11, 7920, cons.m11, "sporadic", "primitive")

    add("diag-a5-5", 25, 300,
        lambda: cons.diagonal_cyclic_product(cons.alt(5), 5),
        "diagonal", "big")
    add("wr-s5-c2-c2", 20, 28800 ** 2 * 2,
        lambda: cons.wreath(cons.wreath(cons.sym(5), cons.cyclic(2)),
                            cons.cyclic(2)),
        "wreath", "big")
    add("mathieu-23", 23, 10200960, cons.m23, "sporadic", "parse-only")
    return e


_TINY = {
    "cyclic-4", "cyclic-5", "cyclic-6", "dihedral-4", "dihedral-5",
    "sym-4", "alt-4", "sym-5", "agl1-5", "wr-c2-c2", "reg-s3", "diag-s3-2",
}


def generate_corpus(profile: str = "full") -> list[CorpusEntry]:
    """The committed corpus.

    "full" is every group eligible for oracle comparison (degree <= 12,
    order <= 10^6); "tiny" is a twelve-group subset for quick unit runs;
    "big" is the oversized tail (high degree or order, or parse-only);
    "all" is everything.
    """
    entries = _entries()
    if profile == "all":
        return entries
    if profile == "tiny":
        return [c for c in entries if c.name in _TINY]
    if profile == "full":
        return [c for c in entries
                if c.degree <= 12 and c.order <= _ENUM_CAP]
    if profile == "big":
        return [c for c in entries
                if c.degree > 12 or c.order > _ENUM_CAP]
    raise ValueError(f"unknown corpus profile: {profile}")
