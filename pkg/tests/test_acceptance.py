"""Acceptance checks for the whole pipeline.

Each test prints one PASS/FAIL line (run with -s to see them on
success).  The checks exercise the bundled corpus end to end: search
against brute force, the control property, the class-count bound, socle
fusion into the local normalizer, the linked-block dichotomy, the
standardization postconditions on randomized twists, the committed
certificate, and the scaling of the construction.
"""

import json
import random
import time
from importlib import resources

from cycbase import constructions as cons
from cycbase.blocks import (
    BlockSystem,
    induced_block_images,
    is_transitive,
    minimal_block_system,
)
from cycbase.control import (
    canonical_cycle_subgroups,
    control_subgroup,
    full_cycle_subgroups,
    verify_control,
)
from cycbase.cyclebase import cycle_base, matches_oracle, totient
from cycbase.errors import FeasibilityViolation
from cycbase.feasible import (
    build_frame,
    family_permutation,
    feasible_context,
    section_of,
    wreath_standardize,
)
from cycbase.group import Group, is_solvable, solvable_residual
from cycbase.io import make_certificate
from cycbase.oracle import enumerate_group, generate_corpus, oracle_cyc
from cycbase.perm import Perm, conjugate
from cycbase.primitive import (
    AFFINE,
    PROJECTIVE,
    SPORADIC,
    SYM_OR_ALT,
    build_normalizer_tower,
    classify_primitive,
    find_regular_cyclic,
)
from cycbase.report import fit_slope, run_scaling

_RESULTS: dict = {}


def _results():
    """Search result and oracle answer for every bundled group, cached.

    Degree stays at most 11: everything through degree 10 plus the two
    exceptional degree-11 groups, which are the only way to cover all
    four primitive kinds.
    """
    if not _RESULTS:
        for e in generate_corpus("full"):
            if e.degree > 11:
                continue
            K = e.group()
            r = cycle_base(K)
            oc = oracle_cyc(K)
            _RESULTS[e.name] = (K, r, oc)
    return _RESULTS


def _verdict(num: int, label: str, ok: bool, detail: str) -> None:
    print(f"[{num}/8] {label}: {'PASS' if ok else 'FAIL'} ({detail})")


def _canon_label(c: Perm, n: int) -> tuple[bytes, Perm]:
    W = canonical_cycle_subgroups([c], n)[0]
    g = W.generators[0]
    return g.key(), g


def _affine_socle(K: Group) -> Group:
    """Translation subgroup of a small affine group: the fixed-point-free
    elements together with the identity, verified regular."""
    els = enumerate_group(K, cap=10 ** 5)
    fpf = [g for g in els
           if not g.is_identity()
           and all(g.apply(x) != x for x in range(K.degree))]
    T = Group(K.degree, fpf)
    assert T.order() == K.degree, "translations do not form a regular subgroup"
    return T


def test_search_matches_enumeration():
    t0 = time.perf_counter()
    results = _results()
    small = {n: v for n, v in results.items() if v[0].degree <= 10}
    assert len(small) >= 60
    kinds = set()
    bad = []
    for name, (K, r, oc) in results.items():
        if not (r.verified and matches_oracle(K, r, oc)):
            bad.append(name)
        if minimal_block_system(K) is None and is_transitive(K):
            kinds.add(classify_primitive(K).kind)
    covered = {AFFINE, SYM_OR_ALT, PROJECTIVE, SPORADIC} <= kinds
    dt = time.perf_counter() - t0
    ok = not bad and covered and dt < 300
    _verdict(1, "search equals enumeration", ok,
             f"{len(results)} groups, kinds {sorted(kinds)}, {dt:.1f}s")
    assert not bad, f"mismatch on {bad}"
    assert covered, f"primitive kinds covered: {kinds}"
    assert dt < 300


def test_control_subgroup_hosts_every_class():
    t0 = time.perf_counter()
    bad = []
    checked = 0
    for name, (K, r, oc) in _results().items():
        M = r.control.M
        if not is_solvable(M):
            bad.append((name, "control not solvable"))
            continue
        if not all(K.contains(g) for g in M.generators):
            bad.append((name, "control not inside the group"))
            continue
        rep = verify_control(K, M, oc.reps)
        checked += rep["checked"]
        if not rep["ok"]:
            bad.append((name, "class not represented in control"))
    dt = time.perf_counter() - t0
    ok = not bad and dt < 600
    _verdict(2, "solvable control meets every class", ok,
             f"{len(_results())} groups, {checked} classes, {dt:.1f}s")
    assert not bad, bad
    assert dt < 600


def test_class_count_bound():
    worst = 0.0
    bad = []
    for name, (K, r, oc) in _results().items():
        phi = totient(K.degree)
        if oc.class_count > phi or r.size > phi:
            bad.append(name)
        worst = max(worst, oc.class_count / phi)
    _verdict(3, "class count within phi of the degree", not bad,
             f"max ratio {worst:.2f}")
    assert not bad, bad


def test_socle_fuses_classes_into_local_normalizer():
    t0 = time.perf_counter()
    hosted_total = 0
    skipped = []
    bad = []
    for name, (K, r, oc) in _results().items():
        n = K.degree
        if not (5 <= n <= 11 and is_transitive(K)
                and minimal_block_system(K) is None):
            continue
        if oc.class_count == 0:
            continue
        cls = classify_primitive(K)
        soc = _affine_socle(K) if cls.kind == AFFINE else solvable_residual(K)
        if soc.order() > 10 ** 5:
            skipped.append(name)
            continue
        witness = find_regular_cyclic(K, cls)
        assert witness is not None
        NH = build_normalizer_tower(witness).local_product
        targets = {W.generators[0].key()
                   for W in full_cycle_subgroups(NH)}
        for c in oc.reps:
            label, g = _canon_label(c, n)
            seen = {label}
            queue = [g]
            found = label in targets
            while queue and not found:
                h = queue.pop()
                for s in soc.generators:
                    lab, img = _canon_label(conjugate(h, s), n)
                    if lab in targets:
                        found = True
                        break
                    if lab not in seen:
                        seen.add(lab)
                        queue.append(img)
            if not found:
                bad.append((name, c))
            else:
                hosted_total += 1
    dt = time.perf_counter() - t0
    ok = not bad
    _verdict(4, "socle conjugates classes into the local normalizer", ok,
             f"{hosted_total} classes fused, skipped {skipped}, {dt:.1f}s")
    assert not bad, bad


def _pair_orbits(S: Group, delta, gamma):
    """Orbits of S on the pair set, by plain breadth-first search."""
    orbits = []
    left = {(p, q) for p in delta for q in gamma}
    while left:
        start = left.pop()
        orb = {start}
        queue = [start]
        while queue:
            p, q = queue.pop()
            for s in S.generators:
                t = (s.apply(p), s.apply(q))
                if t not in orb:
                    orb.add(t)
                    queue.append(t)
        left -= orb
        orbits.append(orb)
    return orbits


def test_linked_block_dichotomy_and_constant_sections():
    t0 = time.perf_counter()
    instances = 0
    bad = []
    entries = [e for e in generate_corpus("all")
               if "parse-only" not in e.tags and e.degree <= 25]
    for e in entries:
        K = e.group()
        if not is_transitive(K):
            continue
        system = minimal_block_system(K)
        if system is None:
            continue
        try:
            ctx = feasible_context(K, system)
        except FeasibilityViolation:
            continue
        instances += 1
        S = ctx.socle
        m = len(system.blocks[0])
        for i in range(system.num_blocks):
            for j in range(i + 1, system.num_blocks):
                orbs = _pair_orbits(S, system.blocks[i], system.blocks[j])
                if len(orbs) not in (1, 2):
                    bad.append((e.name, i, j, "orbit count"))
                elif len(orbs) == 2:
                    small = min(orbs, key=len)
                    rows = {p for p, _ in small}
                    cols = {q for _, q in small}
                    if not (len(small) == m and len(rows) == m
                            and len(cols) == m):
                        bad.append((e.name, i, j, "small orbit not a "
                                    "bijection graph"))
        frame = build_frame(ctx, system.blocks[0])
        star = frame.star_group(K)
        product = BlockSystem(K.degree,
                              [range(b * m, (b + 1) * m)
                               for b in range(system.num_blocks)])
        for g in star.generators:
            im = induced_block_images(product, g)
            if im is None:
                bad.append((e.name, "product blocks broken"))
                continue
            for cls_blocks in frame.classes:
                secs = {section_of(g, b, im[b], m).key()
                        for b in cls_blocks}
                if len(secs) != 1:
                    bad.append((e.name, cls_blocks, "sections differ"))
    dt = time.perf_counter() - t0
    ok = not bad and instances >= 3
    _verdict(5, "pair-orbit dichotomy and constant sections", ok,
             f"{instances} block instances, {dt:.1f}s")
    assert not bad, bad
    assert instances >= 3


def _straight_cycle(m: int, k: int) -> Perm:
    c = cons.cyclic(m).generators[0]
    img = [0] * (m * k)
    for i in range(k - 1):
        for j in range(m):
            img[i * m + j] = (i + 1) * m + j
    for j in range(m):
        img[(k - 1) * m + j] = c.apply(j)
    return Perm(img)


def test_standardize_on_randomized_twists():
    t0 = time.perf_counter()
    families = [
        (5, cons.agl1(5), 2),
        (5, cons.agl1(5), 4),
        (7, cons.agl1(7), 2),
        (4, cons.dihedral(4), 2),
        (3, cons.dihedral(3), 3),
    ]
    rng = random.Random(20260822)
    count = 0
    for m, hol, k in families:
        B = cons.sym(k)
        core = cons.cyclic(m)
        for _ in range(40):
            z = _straight_cycle(m, k)
            twist = family_permutation(
                [hol.random_element(rng) for _ in range(k)], m)
            C = Group(m * k, [conjugate(z, twist)])
            sections, C0 = wreath_standardize(C, B)
            flat = family_permutation(sections, m)
            conj = [conjugate(g, flat.inverse()) for g in C.generators]
            big = cons.wreath(C0, B)
            assert all(big.contains(g) for g in conj)
            assert all(C0.contains(conjugate(g0, s))
                       for s in sections for g0 in C0.generators)
            assert C0.order() == core.order()
            count += 1
    dt = time.perf_counter() - t0
    ok = count == 200
    _verdict(6, "standardization of randomized twisted cycles", ok,
             f"{count} instances over {len(families)} families, {dt:.1f}s")
    assert count == 200


def test_committed_certificate_reproduced():
    ref = json.loads(
        resources.files("cycbase")
        .joinpath("data/golden/wreath-s5-c2.json")
        .read_text(encoding="utf-8"))
    K = cons.wreath(cons.sym(5), cons.cyclic(2))
    cert = make_certificate(K, control_subgroup(K), cycle_base(K))
    ok = cert == ref
    _verdict(7, "committed certificate reproduced", ok,
             f"control order {cert['control']['order']}")
    assert ok


def test_scaling_of_the_construction():
    rows = run_scaling(levels=6)
    slope = fit_slope(rows)
    degrees = [r["degree"] for r in rows]
    last = rows[-1]
    ok = (degrees == [10, 20, 40, 80, 160, 320]
          and slope <= 6.0
          and last["seconds"] < 60
          and all(r["conclusion"] == "controls" for r in rows))
    _verdict(8, "construction scaling", ok,
             f"slope {slope:.2f}, degree 320 in {last['seconds']:.1f}s")
    assert degrees == [10, 20, 40, 80, 160, 320]
    assert slope <= 6.0
    assert last["seconds"] < 60
