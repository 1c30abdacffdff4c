"""Class representatives for the full cycles of a permutation group.

The heavy lifting happens in the control construction: every conjugacy
class of full-cycle subgroups meets the much smaller solvable control,
so harvesting cycles there and fusing the finds under ambient
conjugation yields one representative per class.  Harvesting is
exhaustive whenever the control is small enough to enumerate, and falls
back to seeded sampling with an explicit completeness caveat when not.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from math import gcd

from .backtrack import conjugating_element
from .control import (
    PROVABLY_EMPTY,
    ControlResult,
    canonical_cycle_subgroups,
    control_subgroup,
)
from .group import Group
from .oracle import OracleCyc, oracle_cyc
from .perm import Perm

METHOD_SEARCH = "search+fusion"
METHOD_ORACLE = "oracle"


def totient(n: int) -> int:
    return sum(1 for k in range(1, n + 1) if gcd(k, n) == 1)


@dataclass(frozen=True)
class CycleBaseResult:
    """One full cycle per conjugacy class of regular cyclic subgroups.

    verified means the class list is provably complete: the control was
    exhaustively enumerated, the run proved there are no full cycles at
    all, or the list came straight from the brute-force oracle.  A
    sampled run sets verified to False and explains itself in caveat.
    """

    base: tuple[Perm, ...]
    method: str
    verified: bool
    phi_bound: int
    caveat: str | None = None
    control: ControlResult | None = None

    @property
    def size(self) -> int:
        return len(self.base)


def _check_bound(base, phi: int) -> None:
    if len(base) > phi:
        raise AssertionError(
            f"cycle base of size {len(base)} exceeds the totient bound "
            f"{phi}; this is a bug, not an input problem")


def cycle_base(K: Group, seed: int = 0, enum_cap: int = 10 ** 6,
               sample_budget: int | None = None) -> CycleBaseResult:
    """Compute a cycle base of K.

    Builds the solvable control, harvests its full cycles, and fuses
    them under K-conjugacy; the representative kept for each class is
    the least candidate in image-table order.  An intransitive K, or
    any run that proves no full cycle exists, yields an empty verified
    base.
    """
    n = K.degree
    phi = totient(n)
    res = control_subgroup(K, seed)
    if res.conclusion == PROVABLY_EMPTY:
        return CycleBaseResult((), METHOD_SEARCH, True, phi, control=res)

    M = res.M
    if M.order() <= enum_cap:
        candidates = canonical_cycle_subgroups(
            (g for g in M.chain().elements() if g.is_full_cycle()), n)
        verified, caveat = True, None
    else:
        budget = sample_budget if sample_budget is not None \
            else 200 * n * phi
        cycles = [g for g in M.generators if g.is_full_cycle()]
        for rec in res.trace:
            wi = rec.get("witness_images")
            if wi is not None and len(wi) == n:
                w = Perm(list(wi))
                if w.is_full_cycle() and M.contains(w):
                    cycles.append(w)
        rng = random.Random(seed)
        for _ in range(budget):
            g = M.random_element(rng)
            if g.is_full_cycle():
                cycles.append(g)
        candidates = canonical_cycle_subgroups(cycles, n)
        verified = False
        caveat = (f"control of order {M.order()} exceeds the enumeration "
                  f"cap {enum_cap}; sampled {budget} elements, so classes "
                  f"may be missing")

    kept: list[Group] = []
    for W in candidates:
        if all(conjugating_element(K, W, V) is None for V in kept):
            kept.append(W)
    base = tuple(W.generators[0] if W.generators else Perm.identity(n)
                 for W in kept)
    _check_bound(base, phi)
    return CycleBaseResult(base, METHOD_SEARCH, verified, phi,
                           caveat=caveat, control=res)


def from_oracle(K: Group, cap: int = 10 ** 6) -> CycleBaseResult:
    """Cycle base via brute-force enumeration of K itself."""
    oc = oracle_cyc(K, cap)
    phi = totient(K.degree)
    _check_bound(oc.reps, phi)
    return CycleBaseResult(oc.reps, METHOD_ORACLE, True, phi)


def matches_oracle(K: Group, result: CycleBaseResult,
                   oracle: OracleCyc | CycleBaseResult) -> bool:
    """Whether a computed base and an oracle answer name the same classes.

    True when the counts agree and the representatives pair off one to
    one under K-conjugacy.  Representatives need not be equal: the two
    sides canonicalize within different search spaces.
    """
    n = K.degree
    theirs = list(oracle.reps if isinstance(oracle, OracleCyc)
                  else oracle.base)
    if len(result.base) != len(theirs):
        return False
    for c in result.base:
        C = Group(n, [c], order_hint=n)
        hit = None
        for i, d in enumerate(theirs):
            D = Group(n, [d], order_hint=n)
            if conjugating_element(K, C, D) is not None:
                hit = i
                break
        if hit is None:
            return False
        theirs.pop(hit)
    return not theirs


def circulant_representations(K: Group, seed: int = 0,
                              enum_cap: int = 10 ** 6,
                              sample_budget: int | None = None) -> list[Perm]:
    """The full-cycle class representatives as a plain list.

    A group handed over as the automorphism group of some combinatorial
    object gets one representative per inequivalent cyclic regular
    relabelling of that object; the payload is exactly the cycle base.
    """
    return list(cycle_base(K, seed, enum_cap, sample_budget).base)
