"""Classification of primitive groups and the solvable normalizer scaffold.

A primitive group can host a regular cyclic subgroup only if it is one of:
a subgroup of the one-dimensional affine group in prime degree, a symmetric
or alternating group in its natural action, a group squeezed between a
projective linear group and its semilinear extension on projective points,
or one of three exceptional degree-11 and degree-23 actions.  The
classifier recognises which case applies from the group order and the
order of its solvable residual, without ever naming the group elementwise.

Once a regular cyclic subgroup H = <h> of order m is in hand, two solvable
overgroups are built from it.  Writing p for the largest prime divisor of
m and P for the order-p subgroup of H, the blocks of P partition the
domain into m/p intervals of the cycle.  The first overgroup is generated
by h together with an independent copy of AGL(1, p) on each block; the
second adds the full multiplier group of H (its holomorph).  Both are
solvable by construction and the second contains the first.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from math import factorial, gcd

from .blocks import is_transitive, minimal_block_system
from .errors import ArgumentError, SearchExhausted
from .group import Group, is_solvable, pointwise_stabilizer, solvable_residual, trivial_group
from .perm import Perm, element_order, power

AFFINE = "affine"
SYM_OR_ALT = "sym-or-alt"
PROJECTIVE = "projective"
SPORADIC = "sporadic"
NO_REGULAR_CYCLIC = "no-regular-cyclic"

SPORADIC_ORDERS = {
    (11, 660): "psl-2-11-points",
    (11, 7920): "mathieu-11",
    (23, 10200960): "mathieu-23",
}


@dataclass(frozen=True)
class PrimitiveClass:
    """Tag describing which family a primitive group belongs to.

    Only the fields relevant to the kind are set; the rest stay None.
    """

    kind: str
    p: int | None = None
    d: int | None = None
    q: int | None = None
    is_alt: bool | None = None
    name: str | None = None


@dataclass(frozen=True)
class RegularCyclicWitness:
    """A full cycle h inside a group, together with the subgroup <h>."""

    generator: Perm
    subgroup: Group

    @property
    def degree(self) -> int:
        return self.generator.degree


def _prime_factors(m: int) -> list[int]:
    out = []
    d = 2
    while d * d <= m:
        if m % d == 0:
            out.append(d)
            while m % d == 0:
                m //= d
        d += 1
    if m > 1:
        out.append(m)
    return out


def _is_prime(m: int) -> bool:
    return m >= 2 and _prime_factors(m) == [m]


def _prime_powers_upto(n: int) -> list[int]:
    """All prime powers q with 2 <= q <= n."""
    out = []
    for q in range(2, n + 1):
        f = _prime_factors(q)
        if len(f) == 1:
            out.append(q)
    return out


def _projective_order(d: int, q: int) -> int:
    """Order of the projective special linear group of rank d over GF(q)."""
    order = q ** (d * (d - 1) // 2)
    for i in range(2, d + 1):
        order *= q**i - 1
    return order // gcd(d, q - 1)


def _two_transitive(G: Group) -> bool:
    """True when G is transitive and a point stabilizer is transitive on the rest."""
    if G.degree < 2:
        return True
    if not is_transitive(G):
        return False
    stab = pointwise_stabilizer(G, [0])
    seen = {1}
    frontier = [1]
    while frontier:
        x = frontier.pop()
        for g in stab.generators:
            y = g.apply(x)
            if y not in seen:
                seen.add(y)
                frontier.append(y)
    return len(seen) == G.degree - 1


def classify_primitive(K: Group) -> PrimitiveClass:
    """Decide which family of regular-cyclic hosts a primitive group K falls in.

    K must be transitive and primitive and of degree at least 2; anything
    else raises ArgumentError.  The verdict NO_REGULAR_CYCLIC is a theorem,
    not a search failure: a primitive group outside the recognised families
    has no regular cyclic subgroup at all.
    """
    n = K.degree
    if n < 2:
        raise ArgumentError("classification needs degree at least 2")
    if not is_transitive(K):
        raise ArgumentError("classification needs a transitive group")
    if minimal_block_system(K) is not None:
        raise ArgumentError("classification needs a primitive group")

    order = K.order()
    full = factorial(n)
    # A subgroup of index 2 in Sym(n) is Alt(n), so order alone settles it.
    if order == full:
        return PrimitiveClass(SYM_OR_ALT, is_alt=False)
    if 2 * order == full:
        return PrimitiveClass(SYM_OR_ALT, is_alt=True)

    if is_solvable(K):
        if _is_prime(n):
            # Transitivity forces an order-p element, a p-cycle in degree p.
            if order % n != 0 or n * (n - 1) % order != 0:
                raise ArgumentError("solvable primitive group of prime degree "
                                    "must sit inside the affine line")
            return PrimitiveClass(AFFINE, p=n)
        return PrimitiveClass(NO_REGULAR_CYCLIC)

    S = solvable_residual(K)
    s_order = S.order()

    d = 2
    while 2 ** (d - 1) <= n:
        for q in _prime_powers_upto(n):
            if (q**d - 1) // (q - 1) != n:
                continue
            if s_order == _projective_order(d, q) and _two_transitive(S):
                return PrimitiveClass(PROJECTIVE, d=d, q=q)
        d += 1

    name = SPORADIC_ORDERS.get((n, s_order))
    if name is not None:
        return PrimitiveClass(SPORADIC, name=name)

    return PrimitiveClass(NO_REGULAR_CYCLIC)


def _witness(K: Group, h: Perm) -> RegularCyclicWitness:
    sub = Group(h.degree, [h], order_hint=element_order(h))
    return RegularCyclicWitness(h, sub)


def find_regular_cyclic(
    K: Group,
    cls: PrimitiveClass,
    seed: int = 0,
    sample_budget: int | None = None,
    enum_cap: int = 10**6,
) -> RegularCyclicWitness | None:
    """Produce a full cycle in K, or None when provably there is none.

    The classification tag decides the strategy.  Affine degree p: walk
    the group for an element of order divisible by p and power it down.
    Symmetric or alternating: the natural cycle, except that an even-degree
    alternating group has none since the cycle is an odd permutation.
    Projective and exceptional cases: seeded random sampling, then full
    enumeration when the order is within enum_cap.  A group too large to
    enumerate whose sampling found nothing raises SearchExhausted rather
    than pretending emptiness was proved.
    """
    n = K.degree
    if cls.kind == NO_REGULAR_CYCLIC:
        return None

    if cls.kind == SYM_OR_ALT:
        if cls.is_alt and n % 2 == 0:
            return None
        h = Perm([*range(1, n), 0])
        if not K.contains(h):
            raise ArgumentError("group is not the symmetric or alternating "
                                "group its classification claims")
        return _witness(K, h)

    if cls.kind == AFFINE:
        p = cls.p
        for g in K.generators:
            o = element_order(g)
            if o % p == 0:
                return _witness(K, power(g, o // p))
        for g in K.chain().elements():
            o = element_order(g)
            if o % p == 0:
                return _witness(K, power(g, o // p))
        raise ArgumentError("transitive group of prime degree lost its "
                            "order-p element; generators are inconsistent")

    rng = random.Random(seed)
    budget = sample_budget if sample_budget is not None else 300 + 20 * n
    for _ in range(budget):
        g = K.random_element(rng)
        if g.is_full_cycle():
            return _witness(K, g)
    if K.order() <= enum_cap:
        for g in K.chain().elements():
            if g.is_full_cycle():
                return _witness(K, g)
        return None
    raise SearchExhausted(
        f"no full cycle found in {budget} samples and the group order "
        f"{K.order()} exceeds the enumeration cap {enum_cap}")


@dataclass(frozen=True)
class NormalizerTower:
    """Solvable overgroups grown from a regular cycle h of order m.

    p is the largest prime divisor of m, subcycle generates the order-p
    subgroup of <h>, and blocks are its orbits.  local_product is generated
    by h and one affine line AGL(1, p) per block; extended adds the
    multiplier maps of <h> (so extended contains local_product, and both
    are solvable).  multiplier_part is the holomorph of <h> alone.
    """

    witness: RegularCyclicWitness
    p: int
    subcycle: Perm
    blocks: tuple[tuple[int, ...], ...]
    local_product: Group
    multiplier_part: Group
    extended: Group


def _euler_phi(m: int) -> int:
    out = m
    for f in _prime_factors(m):
        out -= out // f
    return out


def _cycle_labels(h: Perm) -> list[int]:
    """Position of each point along the cycle, starting the walk at point 0."""
    m = h.degree
    pos = [0] * m
    x = 0
    for i in range(m):
        pos[i] = x
        x = h.apply(x)
    return pos


def _primitive_root(p: int) -> int:
    rest = _prime_factors(p - 1)
    for u in range(2, p):
        if all(pow(u, (p - 1) // r, p) != 1 for r in rest):
            return u
    raise ArgumentError(f"{p} is not prime")


def build_normalizer_tower(witness: RegularCyclicWitness) -> NormalizerTower:
    """Construct the block-local and extended solvable overgroups of <h>.

    Raises ArgumentError unless the witness generator is a full cycle.
    """
    h = witness.generator
    m = h.degree
    if not h.is_full_cycle():
        raise ArgumentError("normalizer tower needs a full cycle")
    if m == 1:
        t = trivial_group(1)
        return NormalizerTower(witness, 1, h, ((0,),), t, t, t)

    p = _prime_factors(m)[-1]
    b = m // p
    q = power(h, b)
    pos = _cycle_labels(h)

    blocks = []
    seen = [False] * m
    for x in range(m):
        if seen[x]:
            continue
        cyc = []
        y = x
        for _ in range(p):
            cyc.append(y)
            seen[y] = True
            y = q.apply(y)
        blocks.append(tuple(cyc))
    blocks.sort(key=lambda c: c[0])

    local_gens = []
    root = _primitive_root(p) if p > 2 else None
    ident = list(range(m))
    for cyc in blocks:
        img = list(ident)
        for j in range(p):
            img[cyc[j]] = cyc[(j + 1) % p]
        local_gens.append(Perm(img))
        if root is not None:
            img = list(ident)
            for j in range(p):
                img[cyc[j]] = cyc[root * j % p]
            local_gens.append(Perm(img))

    mult_gens = []
    for a in range(2, m):
        if gcd(a, m) == 1:
            img = [0] * m
            for i in range(m):
                img[pos[i]] = pos[a * i % m]
            mult_gens.append(Perm(img))

    # Orders follow from the wreath shapes AGL(1,p) wr C_b and
    # AGL(1,p) wr hol(C_b); the tests rebuild them hint-free.
    base = (p * (p - 1)) ** b
    local = Group(m, [h, *local_gens], order_hint=base * b)
    holo = Group(m, [h, *mult_gens], order_hint=m * _euler_phi(m))
    extended = Group(m, [h, *mult_gens, *local_gens],
                     order_hint=base * b * _euler_phi(b))
    return NormalizerTower(witness, p, q, tuple(blocks), local, holo, extended)
