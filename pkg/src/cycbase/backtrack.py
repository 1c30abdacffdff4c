"""Backtrack searches over stabilizer chains.

Subgroup intersection is the generic pruned search, not a method
specialized to solvable groups: at the degrees this engine targets the
generic search is fast enough, and the polynomial-time guarantee of the
specialized approach is knowingly given up.  Conjugacy search is
restricted to cyclic subgroups, which is all the pipeline compares.
"""

from __future__ import annotations

from math import gcd

from .bsgs import ChainBuilder, StabChain, build_chain
from .errors import ArgumentError
from .group import Group
from .perm import Perm, compose, conjugate, element_order, power


def _full_base_chain(G: Group, degree: int) -> StabChain:
    if G._chain is not None:
        known = G._chain.order
    else:
        known = G.order_hint
    return build_chain(
        degree, G.generators, base_prefix=tuple(range(degree)), known_order=known
    )


def intersection(G: Group, W: Group) -> Group:
    """The subgroup of elements lying in both groups.

    Both chains are rebased to the full point sequence, so a walk that
    matches every level is a membership proof.  The search keeps the
    subgroup found so far and, while the partial image prefix is still
    the identity, only explores images minimal in their orbit under the
    prefix stabilizer of that subgroup: anything else differs from an
    explored element by a factor already found.  Non-identity prefixes
    are never pruned this way, which keeps the search complete; a
    restart after every insertion makes the final pass a certificate.
    """
    if G.degree != W.degree:
        raise ArgumentError("intersection needs groups of equal degree")
    n = G.degree
    if all(W.contains(g) for g in G.generators):
        return G
    if all(G.contains(w) for w in W.generators):
        return W
    gchain = _full_base_chain(G, n)
    wchain = _full_base_chain(W, n)
    builder = ChainBuilder(n, base_prefix=tuple(range(n)))
    builder.close()
    found: list[Perm] = []

    def absorb(p: Perm) -> bool:
        if builder.contains(p):
            return False
        found.append(p)
        builder.insert_gen(p)
        builder.close()
        minrep.clear()
        return True

    minrep: dict[int, list[int]] = {}
    for g in G.generators:
        if wchain.contains(g):
            absorb(g)
    for w in W.generators:
        if gchain.contains(w):
            absorb(w)

    def orbit_min(level: int) -> list[int]:
        arr = minrep.get(level)
        if arr is not None:
            return arr
        parent = list(range(n))

        def find(x: int) -> int:
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for s in builder.levels[level].gens:
            for x in range(n):
                a, b = find(x), find(s.apply(x))
                if a != b:
                    parent[max(a, b)] = min(a, b)
        arr = [find(x) for x in range(n)]
        minrep[level] = arr
        return arr

    ident = Perm.identity(n)
    glevels = gchain.levels
    wlevels = wchain.levels

    def search(i: int, acc: Perm, waccinv: Perm, on_identity_prefix: bool) -> bool:
        if i == n:
            # full-base walk succeeded at every level, so acc is in W
            return absorb(acc)
        mins = orbit_min(i) if on_identity_prefix else None
        for beta in glevels[i].orbit_list:
            gamma = acc.apply(beta)
            if mins is not None and mins[gamma] != gamma:
                continue
            wentry = wlevels[i].orbit.get(waccinv.apply(gamma))
            if wentry is None:
                continue
            u = glevels[i].orbit[beta][0]
            if search(
                i + 1,
                compose(u, acc),
                compose(waccinv, wentry[1]),
                on_identity_prefix and gamma == i,
            ):
                return True
        return False

    while search(0, ident, ident, True):
        pass
    chain = builder.freeze()
    return Group(n, found, order_hint=chain.order).with_chain(chain)


def _partial_walk_ok(chain: StabChain, img: list[int]) -> bool:
    """Can some group element agree with the partial map on the chain's
    leading base points?  Stops at the first unassigned base point."""
    accinv = Perm.identity(chain.degree)
    for lvl in chain.levels:
        target = img[lvl.point]
        if target < 0:
            return True
        entry = lvl.orbit.get(accinv.apply(target))
        if entry is None:
            return False
        accinv = compose(accinv, entry[1])
    return True


def _element_conjugator(K: Group, c: Perm, e: Perm) -> Perm | None:
    """Some k in K with conjugate(c, k) == e, or None.

    k must map each cycle of c onto a cycle of e of the same length, and
    one anchor image per cycle determines the rest, so the search runs
    over cycle targets and phases with chain-walk pruning.
    """
    if c.cycle_type() != e.cycle_type():
        return None
    n = K.degree
    chain = K.chain()
    source = sorted(c.cycles(include_fixed=True), key=len, reverse=True)
    targets_by_len: dict[int, list[tuple[int, ...]]] = {}
    for cyc in e.cycles(include_fixed=True):
        targets_by_len.setdefault(len(cyc), []).append(cyc)
    img = [-1] * n
    used = [False] * n

    def search(ci: int) -> Perm | None:
        if ci == len(source):
            k = Perm(img)
            return k if chain.contains(k) else None
        cyc = source[ci]
        length = len(cyc)
        for target in targets_by_len[length]:
            if used[target[0]]:
                continue
            for phase in range(length):
                ok = True
                placed = []
                for j, x in enumerate(cyc):
                    y = target[(phase + j) % length]
                    if used[y]:
                        ok = False
                        break
                    img[x] = y
                    used[y] = True
                    placed.append((x, y))
                if ok and _partial_walk_ok(chain, img):
                    result = search(ci + 1)
                    if result is not None:
                        return result
                for x, y in placed:
                    img[x] = -1
                    used[y] = False
        return None

    return search(0)


def conjugating_element(K: Group, C: Group, D: Group) -> Perm | None:
    """Some k in K conjugating the cyclic group C onto D, or None.

    The conjugate of C's generator must be a generating power of D's, so
    the search runs once per power with exponent coprime to the order.
    """
    n = K.degree
    if C.degree != n or D.degree != n:
        raise ArgumentError("conjugacy search needs groups of equal degree")
    if len(C.generators) > 1 or len(D.generators) > 1:
        raise ArgumentError("conjugacy search expects single-generator groups")
    if not C.generators and not D.generators:
        return Perm.identity(n)
    if not C.generators or not D.generators:
        return None
    c = C.generators[0]
    d = D.generators[0]
    if not K.contains(c) or not K.contains(d):
        raise ArgumentError("both cyclic groups must lie inside the ambient group")
    order = element_order(c)
    if order != element_order(d):
        return None
    exponents = [a for a in range(1, order + 1) if gcd(a, order) == 1]
    for a in exponents:
        if power(d, a) == c:
            return Perm.identity(n)
    for a in exponents:
        k = _element_conjugator(K, c, power(d, a))
        if k is not None:
            return k
    return None
