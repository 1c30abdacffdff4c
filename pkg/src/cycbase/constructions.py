"""Standard permutation group constructions.

Everything here is built from first principles: finite fields come with
their tables verified at construction, the two large sporadic groups are
derived as automorphism groups of cyclic codes (one by a deterministic
generator scan, one by completing partial point maps through the Steiner
system of minimum-weight supports), and every order hint attached to a
group follows from a counting argument, never from a table lookup.
"""

from __future__ import annotations

from itertools import combinations, permutations
from math import comb, gcd
from typing import Iterable, Sequence

import numpy as np

from .bsgs import ChainBuilder
from .errors import ArgumentError, CapError
from .group import Group
from .perm import Perm, compose

# ---------------------------------------------------------------------------
# finite fields


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


# fixed defining polynomials, coefficients from constant term upward
_IRREDUCIBLE = {
    4: (1, 1, 1),
    8: (1, 1, 0, 1),
    9: (1, 0, 1),
    16: (1, 1, 0, 0, 1),
    25: (1, 1, 1),
    27: (1, 2, 0, 1),
    49: (3, 1, 1),
}


class GF:
    """Arithmetic tables for a small finite field.

    Elements are integers 0..q-1; for prime powers the base-p digits of an
    element are the coefficients of its polynomial representative.  The
    multiplication table is checked to be a Latin square on the nonzero
    elements, which pins down the field axioms given the ring structure.
    """

    def __init__(self, q: int):
        if q < 2:
            raise ArgumentError(f"field size must be at least 2, got {q}")
        p = None
        for cand in range(2, q + 1):
            if _is_prime(cand) and q % cand == 0:
                p = cand
                break
        if p is None:
            raise ArgumentError(f"{q} is not a prime power")
        e = 0
        t = q
        while t > 1:
            if t % p:
                raise ArgumentError(f"{q} is not a prime power")
            t //= p
            e += 1
        self.q = q
        self.p = p
        self.e = e
        if e == 1:
            self._mul = [[(a * b) % p for b in range(p)] for a in range(p)]
            self._add = [[(a + b) % p for b in range(p)] for a in range(p)]
        else:
            if q not in _IRREDUCIBLE:
                raise ArgumentError(f"no defining polynomial stored for GF({q})")
            mod = list(_IRREDUCIBLE[q])
            self._add = [
                [self._enc([(x + y) % p for x, y in zip(self._dec(a), self._dec(b))])
                 for b in range(q)]
                for a in range(q)
            ]
            self._mul = [[0] * q for _ in range(q)]
            for a in range(q):
                for b in range(q):
                    self._mul[a][b] = self._enc(
                        _poly_mod(_poly_mul(self._dec(a), self._dec(b), p), mod, p)
                    )
        for a in range(1, q):
            row = self._mul[a][1:]
            if len(set(row)) != q - 1 or 0 in row:
                raise ArgumentError(f"defining polynomial for GF({q}) is not irreducible")
        self._inv = [0] * q
        for a in range(1, q):
            self._inv[a] = self._mul[a].index(1)
        self._frob = [self.pow(a, p) for a in range(q)]

    def _dec(self, a: int) -> list[int]:
        out = []
        for _ in range(self.e):
            out.append(a % self.p)
            a //= self.p
        return out

    def _enc(self, coeffs: Sequence[int]) -> int:
        a = 0
        for c in reversed(list(coeffs)):
            a = a * self.p + c
        return a

    def add(self, a: int, b: int) -> int:
        return self._add[a][b]

    def neg(self, a: int) -> int:
        return self._add[a].index(0)

    def sub(self, a: int, b: int) -> int:
        return self._add[a][self.neg(b)]

    def mul(self, a: int, b: int) -> int:
        return self._mul[a][b]

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return self._inv[a]

    def pow(self, a: int, k: int) -> int:
        if k < 0:
            a, k = self.inv(a), -k
        r = 1
        while k:
            if k & 1:
                r = self._mul[r][a]
            a = self._mul[a][a]
            k >>= 1
        return r

    def frobenius(self, a: int) -> int:
        return self._frob[a]

    def multiplicative_generator(self) -> int:
        for a in range(1, self.q):
            x, seen = a, 0
            while True:
                seen += 1
                x = self._mul[x][a]
                if x == a:
                    break
            if seen == self.q - 1:
                return a
        raise RuntimeError("no multiplicative generator found")


def _poly_mul(a: Sequence[int], b: Sequence[int], p: int) -> list[int]:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    return out


def _poly_mod(a: Sequence[int], mod: Sequence[int], p: int) -> list[int]:
    a = list(a)
    d = len(mod) - 1
    lead_inv = pow(mod[-1], -1, p)
    while len(a) > d:
        c = (a[-1] * lead_inv) % p
        if c:
            for i in range(d + 1):
                a[len(a) - 1 - d + i] = (a[len(a) - 1 - d + i] - c * mod[i]) % p
        a.pop()
    while len(a) < d:
        a.append(0)
    return a


def _poly_divides(den: Sequence[int], num: Sequence[int], p: int) -> bool:
    return not any(_poly_mod(num, den, p))


# ---------------------------------------------------------------------------
# linear and projective groups


def projective_points(d: int, q: int, field: GF | None = None) -> list[tuple[int, ...]]:
    """One-dimensional subspaces of GF(q)^d: representatives with first
    nonzero coordinate 1, in lexicographic order."""
    field = field or GF(q)
    pts = []
    for idx in range(q**d):
        vec = []
        t = idx
        for _ in range(d):
            vec.append(t % q)
            t //= q
        vec = tuple(reversed(vec))
        lead = next((c for c in vec if c), None)
        if lead == 1:
            pts.append(vec)
    return sorted(pts)


def _mat_vec(field: GF, m: Sequence[Sequence[int]], v: Sequence[int]) -> tuple[int, ...]:
    return tuple(
        _sum_field(field, (field.mul(m[i][j], v[j]) for j in range(len(v))))
        for i in range(len(m))
    )


def _sum_field(field: GF, items: Iterable[int]) -> int:
    acc = 0
    for x in items:
        acc = field.add(acc, x)
    return acc


def _normalize(field: GF, v: Sequence[int]) -> tuple[int, ...]:
    lead = next((c for c in v if c), None)
    if lead is None:
        raise ArgumentError("zero vector has no projective point")
    s = field.inv(lead)
    return tuple(field.mul(s, c) for c in v)


def _perm_from_matrix(field: GF, pts, index, m) -> Perm:
    img = [index[_normalize(field, _mat_vec(field, m, v))] for v in pts]
    return Perm(img)


def _gl_order(d: int, q: int) -> int:
    o = 1
    for i in range(d):
        o *= q**d - q**i
    return o


def projective_linear_orders(d: int, q: int) -> tuple[int, int]:
    """(|projective special|, |projective general|) for dimension d over GF(q)."""
    pgl = _gl_order(d, q) // (q - 1)
    return pgl // gcd(d, q - 1), pgl


def psl(d: int, q: int) -> Group:
    """Projective special linear group on the projective points."""
    field = GF(q)
    pts = projective_points(d, q, field)
    index = {v: i for i, v in enumerate(pts)}
    zeta = field.multiplicative_generator()
    gens = []
    for i in range(d):
        for j in range(d):
            if i == j:
                continue
            for a in range(field.e):
                m = [[1 if r == c else 0 for c in range(d)] for r in range(d)]
                m[i][j] = field.pow(zeta, a)
                gens.append(_perm_from_matrix(field, pts, index, m))
    order, _ = projective_linear_orders(d, q)
    return Group(len(pts), gens, name=f"psl({d},{q})", order_hint=order)


def pgl(d: int, q: int) -> Group:
    """Projective general linear group on the projective points."""
    field = GF(q)
    pts = projective_points(d, q, field)
    index = {v: i for i, v in enumerate(pts)}
    zeta = field.multiplicative_generator()
    base = psl(d, q)
    m = [[1 if r == c else 0 for c in range(d)] for r in range(d)]
    m[0][0] = zeta
    gens = list(base.generators) + [_perm_from_matrix(field, pts, index, m)]
    _, order = projective_linear_orders(d, q)
    return Group(len(pts), gens, name=f"pgl({d},{q})", order_hint=order)


def pgammal(d: int, q: int) -> Group:
    """Projective semilinear group: the general group plus field
    automorphisms acting on coordinates."""
    field = GF(q)
    pts = projective_points(d, q, field)
    index = {v: i for i, v in enumerate(pts)}
    base = pgl(d, q)
    frob = Perm([index[tuple(field.frobenius(c) for c in v)] for v in pts])
    _, pgl_order = projective_linear_orders(d, q)
    return Group(
        len(pts),
        list(base.generators) + [frob],
        name=f"pgammal({d},{q})",
        order_hint=pgl_order * field.e,
    )


# ---------------------------------------------------------------------------
# affine groups on a field


def agl1(q: int) -> Group:
    """All maps x -> ax + b on the field, acting on its q elements."""
    field = GF(q)
    zeta = field.multiplicative_generator()
    gens = []
    for a in range(field.e):
        # translation by each basis element of the additive group
        basis = field._enc([1 if i == a else 0 for i in range(field.e)])
        gens.append(Perm([field.add(x, basis) for x in range(q)]))
    gens.append(Perm([field.mul(zeta, x) for x in range(q)]))
    return Group(q, gens, name=f"agl1({q})", order_hint=q * (q - 1))


def frobenius_subgroup(q: int, m: int) -> Group:
    """Maps x -> ax + b with a in the multiplicative subgroup of order m."""
    if (q - 1) % m:
        raise ArgumentError(f"{m} does not divide {q - 1}")
    field = GF(q)
    zeta = field.multiplicative_generator()
    a0 = field.pow(zeta, (q - 1) // m)
    gens = []
    for a in range(field.e):
        basis = field._enc([1 if i == a else 0 for i in range(field.e)])
        gens.append(Perm([field.add(x, basis) for x in range(q)]))
    if m > 1:
        gens.append(Perm([field.mul(a0, x) for x in range(q)]))
    return Group(q, gens, name=f"frobenius({q},{m})", order_hint=q * m)


# ---------------------------------------------------------------------------
# classical families


def cyclic(n: int) -> Group:
    gen = Perm([(i + 1) % n for i in range(n)])
    return Group(n, [gen], name=f"cyclic({n})", order_hint=n)


def dihedral(n: int) -> Group:
    """Symmetries of the regular n-gon, degree n, order 2n (n >= 3)."""
    if n < 3:
        raise ArgumentError("dihedral needs at least 3 vertices")
    rot = Perm([(i + 1) % n for i in range(n)])
    flip = Perm([(n - i) % n for i in range(n)])
    return Group(n, [rot, flip], name=f"dihedral({n})", order_hint=2 * n)


def sym(n: int) -> Group:
    if n == 1:
        return Group(1, [], name="sym(1)", order_hint=1)
    gens = [Perm([1, 0] + list(range(2, n)))]
    if n > 2:
        gens.append(Perm([(i + 1) % n for i in range(n)]))
    fact = 1
    for i in range(2, n + 1):
        fact *= i
    return Group(n, gens, name=f"sym({n})", order_hint=fact)


def alt(n: int) -> Group:
    if n <= 2:
        return Group(max(n, 1), [], name=f"alt({n})", order_hint=1)
    gens = []
    for i in range(n - 2):
        img = list(range(n))
        img[i], img[i + 1], img[i + 2] = img[i + 1], img[i + 2], img[i]
        gens.append(Perm(img))
    fact = 1
    for i in range(2, n + 1):
        fact *= i
    return Group(n, gens, name=f"alt({n})", order_hint=fact // 2)


# ---------------------------------------------------------------------------
# products


def wreath(A: Group, B: Group, name: str | None = None) -> Group:
    """The full wreath product of A (fiber) by B (top), in its imprimitive
    action: b copies of the A-points, block i occupying
    [i*m, (i+1)*m).  One A-copy per B-orbit plus lifted B-generators."""
    m = A.degree
    b = B.degree
    n = m * b
    gens = []
    from .blocks import orbits

    for orb in orbits(B):
        i0 = orb[0]
        for a in A.generators:
            img = np.arange(n, dtype=np.int16)
            img[i0 * m : (i0 + 1) * m] = a.images() + np.int16(i0 * m)
            gens.append(Perm(img))
    for g in B.generators:
        img = np.empty(n, dtype=np.int16)
        for i in range(b):
            img[i * m : (i + 1) * m] = np.arange(m, dtype=np.int16) + np.int16(
                g.apply(i) * m
            )
        gens.append(Perm(img))
    hint = None
    a_ord = A.order_hint if A._chain is None else A.order()
    b_ord = B.order_hint if B._chain is None else B.order()
    if a_ord is not None and b_ord is not None:
        hint = a_ord**b * b_ord
    label = name or (f"{A.name} wr {B.name}" if A.name and B.name else None)
    return Group(n, gens, name=label, order_hint=hint)


def disjoint_union(parts: Sequence[Group], name: str | None = None) -> Group:
    """Direct product acting on the disjoint union of the point sets."""
    total = sum(p.degree for p in parts)
    gens = []
    offset = 0
    hint = 1
    for part in parts:
        for g in part.generators:
            img = np.arange(total, dtype=np.int16)
            img[offset : offset + part.degree] = g.images() + np.int16(offset)
            gens.append(Perm(img))
        o = part.order_hint if part._chain is None else part.order()
        hint = None if (hint is None or o is None) else hint * o
        offset += part.degree
    return Group(total, gens, name=name, order_hint=hint)


def diagonal_cyclic_product(A: Group, copies: int, name: str | None = None) -> Group:
    """Diagonally embedded copies of A over a cyclic block shift.

    The diagonal acts identically in every block and commutes with the
    shift, so the order is |A| * copies.
    """
    m = A.degree
    n = m * copies
    gens = []
    for a in A.generators:
        img = np.empty(n, dtype=np.int16)
        for i in range(copies):
            img[i * m : (i + 1) * m] = a.images() + np.int16(i * m)
        gens.append(Perm(img))
    shift = np.empty(n, dtype=np.int16)
    for i in range(copies):
        shift[i * m : (i + 1) * m] = np.arange(m, dtype=np.int16) + np.int16(
            ((i + 1) % copies) * m
        )
    gens.append(Perm(shift))
    a_ord = A.order_hint if A._chain is None else A.order()
    hint = a_ord * copies if a_ord is not None else None
    return Group(n, gens, name=name, order_hint=hint)


def regular_representation(G: Group, cap: int = 5000) -> Group:
    """Right multiplication action on the sorted element list."""
    order = G.order()
    if order > cap:
        raise CapError(f"group of order {order} exceeds regular representation cap {cap}")
    elems = sorted(G.chain().elements(), key=Perm.as_tuple)
    index = {e.key(): i for i, e in enumerate(elems)}
    gens = [
        Perm([index[compose(e, g).key()] for e in elems]) for g in G.generators
    ]
    label = f"regular({G.name})" if G.name else None
    return Group(order, gens, name=label, order_hint=order)


# ---------------------------------------------------------------------------
# cyclic codes and their automorphism groups


def _divisors_of_degree(n: int, p: int, deg: int) -> list[tuple[int, ...]]:
    """Monic degree-deg divisors of x^n - 1 over GF(p), lexicographic."""
    target = [0] * (n + 1)
    target[0] = (-1) % p
    target[n] = 1
    found = []
    for idx in range(p ** deg):
        coeffs = []
        t = idx
        for _ in range(deg):
            coeffs.append(t % p)
            t //= p
        if coeffs[0] == 0:
            continue
        cand = coeffs + [1]
        if _poly_divides(cand, target, p):
            found.append(tuple(cand))
    return sorted(found)


class CyclicCode:
    """A cyclic code of length n over GF(p) given by a generator polynomial,
    with row-reduced basis for membership tests."""

    def __init__(self, n: int, p: int, gen_poly: Sequence[int]):
        self.n = n
        self.p = p
        k = n - (len(gen_poly) - 1)
        basis = []
        for i in range(k):
            row = [0] * n
            for j, c in enumerate(gen_poly):
                row[(i + j) % n] = c
            basis.append(row)
        self.k = k
        self._pivots: list[tuple[int, list[int]]] = []
        for row in basis:
            self._absorb(list(row))
        if len(self._pivots) != k:
            raise ArgumentError("generator polynomial rows are not independent")

    def _absorb(self, row: list[int]) -> bool:
        """Reduce row by the pivot rows; install it if nonzero.  Returns
        True when the row was already in the span."""
        p = self.p
        for col, base in self._pivots:
            c = row[col]
            if c:
                for i in range(self.n):
                    row[i] = (row[i] - c * base[i]) % p
        lead = next((i for i, c in enumerate(row) if c), None)
        if lead is None:
            return True
        inv = pow(row[lead], -1, p)
        row = [(c * inv) % p for c in row]
        self._pivots.append((lead, row))
        self._pivots.sort()
        return False

    def contains(self, word: Sequence[int]) -> bool:
        row = [c % self.p for c in word]
        for col, base in self._pivots:
            c = row[col]
            if c:
                for i in range(self.n):
                    row[i] = (row[i] - c * base[i]) % self.p
        return not any(row)

    def basis_rows(self) -> list[list[int]]:
        return [list(base) for _, base in self._pivots]

    def preserved_by(self, perm: Perm) -> bool:
        """Does relabeling coordinates by perm map the code into itself?"""
        for row in self.basis_rows():
            moved = [0] * self.n
            for i, c in enumerate(row):
                moved[perm.apply(i)] = c
            if not self.contains(moved):
                return False
        return True


def _quadratic_residue_code(n: int, p: int, deg: int) -> CyclicCode:
    divisors = _divisors_of_degree(n, p, deg)
    if not divisors:
        raise RuntimeError(f"no degree-{deg} divisor of x^{n}-1 over GF({p})")
    return CyclicCode(n, p, divisors[0])


def _piecewise_power_perm(n: int, c: int, j: int, d: int, k: int) -> Perm | None:
    """The map fixing 0, sending squares t to c*t^j and non-squares to
    d*t^k mod n; None when it is not a bijection."""
    squares = {pow(x, 2, n) for x in range(1, n)}
    img = [0] * n
    seen = {0}
    for t in range(1, n):
        v = (c * pow(t, j, n)) % n if t in squares else (d * pow(t, k, n)) % n
        if v in seen:
            return None
        seen.add(v)
        img[t] = v
    return Perm(img)


def _code_automorphism_group(n: int, p: int, deg: int, name: str) -> Group:
    """Automorphism group of the length-n quadratic residue code, generated
    by the coordinate shift, the multiplier by p, and one scanned
    piecewise power map outside the metacyclic part."""
    code = _quadratic_residue_code(n, p, deg)
    shift = Perm([(i + 1) % n for i in range(n)])
    mult = Perm([(p * i) % n for i in range(n)])
    if not code.preserved_by(shift) or not code.preserved_by(mult):
        raise RuntimeError("cyclic code lost its defining symmetries")
    # all maps t -> a * p^e * t, to recognize candidates already generated
    metacyclic = set()
    for a in range(1, n):
        scale = a
        for _ in range(n):
            key = tuple((scale * t) % n for t in range(n))
            if key in metacyclic:
                break
            metacyclic.add(key)
            scale = (scale * p) % n
    extra = None
    for j in range(3, n, 2):
        for k in range(3, n, 2):
            for c in range(1, n):
                for d in range(1, n):
                    cand = _piecewise_power_perm(n, c, j, d, k)
                    if cand is None or cand.as_tuple() in metacyclic:
                        continue
                    if code.preserved_by(cand):
                        extra = cand
                        break
                if extra is not None:
                    break
            if extra is not None:
                break
        if extra is not None:
            break
    if extra is None:
        raise RuntimeError(f"no extra automorphism found for the length-{n} code")
    return Group(n, [shift, mult, extra], name=name)


def _codeword_supports(code: CyclicCode, weight: int) -> list[tuple[int, ...]]:
    """Supports of all codewords of the given Hamming weight, as sorted
    tuples without repeats."""
    p, n = code.p, code.n
    rows = code.basis_rows()
    sups = set()
    for idx in range(p ** code.k):
        t = idx
        vec = [0] * n
        for row in rows:
            c = t % p
            t //= p
            if c:
                for i in range(n):
                    vec[i] = (vec[i] + c * row[i]) % p
        sup = tuple(i for i in range(n) if vec[i])
        if len(sup) == weight:
            sups.add(sup)
    return sorted(sups)


def _quads_to_blocks(n: int, blocks: Sequence[tuple[int, ...]]) -> dict[tuple[int, ...], int]:
    """Index the unique block through each 4-subset of points.

    Raises when some 4-subset lies in no block or in more than one, so a
    successful return certifies the blocks form a Steiner system with
    4-point intersections.
    """
    quad_block: dict[tuple[int, ...], int] = {}
    for bi, block in enumerate(blocks):
        for quad in combinations(block, 4):
            if quad in quad_block:
                raise RuntimeError("two blocks share four points")
            quad_block[quad] = bi
    if len(quad_block) != comb(n, 4):
        raise RuntimeError("some 4-subset lies in no block")
    return quad_block


def _block_map_completions(
    n: int,
    blocks: Sequence[tuple[int, ...]],
    quad_block: dict[tuple[int, ...], int],
    assign: dict[int, int],
):
    """Yield every automorphism of the block system extending a partial
    point map.

    Four mapped points of a block pin down the image block, which forces
    the image of the fifth point; forced deductions are propagated to a
    fixpoint and the smallest unmapped point is branched when they stall.
    Deductions are implied by the partial map, so no completion is lost,
    and completed maps are checked to send every block to a block.
    """
    assign = dict(assign)
    used = set(assign.values())
    if len(used) != len(assign):
        return
    while True:
        progress = False
        dom = sorted(assign)
        for quad in combinations(dom, 4):
            block = blocks[quad_block[quad]]
            img_quad = tuple(sorted(assign[x] for x in quad))
            img_block = blocks[quad_block[img_quad]]
            z = next(x for x in block if x not in quad)
            w = next(y for y in img_block if y not in img_quad)
            got = assign.get(z)
            if got is None:
                if w in used:
                    return
                assign[z] = w
                used.add(w)
                progress = True
            elif got != w:
                return
        if len(assign) == n:
            block_set = set(blocks)
            if all(
                tuple(sorted(assign[x] for x in block)) in block_set
                for block in blocks
            ):
                yield Perm([assign[i] for i in range(n)])
            return
        if not progress:
            break
    x = next(i for i in range(n) if i not in assign)
    for w in range(n):
        if w not in used:
            child = dict(assign)
            child[x] = w
            yield from _block_map_completions(n, blocks, quad_block, child)


def _chain_reaches_images(levels, degree: int, dst: Sequence[int]) -> bool:
    """Does the group of a chain contain an element sending the first
    len(dst) base points to dst, in order?"""
    accinv = Perm.identity(degree)
    for lvl, target in zip(levels, dst):
        beta = accinv.apply(target)
        entry = lvl.orbit.get(beta)
        if entry is None:
            return False
        accinv = compose(accinv, entry[1])
    return True


def m11() -> Group:
    """The sharply 4-transitive group on 11 points: the full automorphism
    group of the Steiner system formed by the 66 weight-5 supports of the
    perfect ternary code of length 11.

    Only the supports matter here; permutations preserving the code
    itself form a strictly smaller group.  Any four point images grow to
    an automorphism of the system by block completion.  Every
    automorphism fixing four points is enumerated once, and then one
    completion per residual 4-point assignment is enough: any missing
    automorphism would differ from a found one by a 4-point stabilizer
    element already present.
    """
    n = 11
    code = _quadratic_residue_code(n, 3, 5)
    shift = Perm([(i + 1) % n for i in range(n)])
    mult = Perm([(3 * i) % n for i in range(n)])
    if not code.preserved_by(shift) or not code.preserved_by(mult):
        raise RuntimeError("cyclic code lost its defining symmetries")
    blocks = _codeword_supports(code, 5)
    quad_block = _quads_to_blocks(n, blocks)
    base = (0, 1, 2, 3)
    builder = ChainBuilder(n, base_prefix=base)
    gens = [shift, mult]
    for g in gens:
        builder.insert_gen(g)
    builder.close()
    for tau in _block_map_completions(n, blocks, quad_block, dict(zip(base, base))):
        if not tau.is_identity() and not builder.contains(tau):
            gens.append(tau)
            builder.insert_gen(tau)
            builder.close()
    for dst in permutations(range(n), 4):
        if _chain_reaches_images(builder.levels, n, dst):
            continue
        extra = next(_block_map_completions(n, blocks, quad_block, dict(zip(base, dst))), None)
        if extra is not None:
            gens.append(extra)
            builder.insert_gen(extra)
            builder.close()
    chain = builder.freeze()
    return Group(n, gens, name="m11", order_hint=chain.order).with_chain(chain)


def m23() -> Group:
    """The 4-transitive group on 23 points, as the automorphism group of
    the perfect binary code of length 23."""
    return _code_automorphism_group(23, 2, 11, "m23")


def psl2_11_on_11() -> Group:
    """The degree-11 transitive action of the projective group of the line
    over GF(11): right multiplication on the cosets of an icosahedral
    subgroup, found by a deterministic search."""
    G = psl(2, 11)
    elems = sorted(G.chain().elements(), key=Perm.as_tuple)
    by_order: dict[int, list[Perm]] = {2: [], 3: []}
    for e in elems:
        o = e.order()
        if o in by_order:
            by_order[o].append(e)
    sub = None
    for a in by_order[2]:
        for b in by_order[3]:
            closure = _bounded_closure(G.degree, [a, b], 60)
            if closure is not None and len(closure) == 60:
                sub = closure
                break
        if sub is not None:
            break
    if sub is None:
        raise RuntimeError("no icosahedral subgroup found")
    sub_keys = {s.key() for s in sub}
    labels: dict[bytes, int] = {}
    reps: list[Perm] = []
    canon: list[bytes] = []
    for e in elems:
        lab = min(compose(s, e).key() for s in sub)
        if lab not in labels:
            labels[lab] = len(reps)
            reps.append(e)
            canon.append(lab)
    order_of = {lab: i for i, lab in enumerate(sorted(canon))}
    rename = [order_of[lab] for lab in canon]

    def coset_index(x: Perm) -> int:
        lab = min(compose(s, x).key() for s in sub)
        return rename[labels[lab]]

    gens = []
    for g in G.generators:
        img = [0] * len(reps)
        for i, r in enumerate(reps):
            img[rename[i]] = coset_index(compose(r, g))
        gens.append(Perm(img))
    return Group(len(reps), gens, name="psl2_11_on_11", order_hint=660)


def _bounded_closure(degree: int, gens: Sequence[Perm], cap: int) -> list[Perm] | None:
    ident = Perm.identity(degree)
    seen = {ident.key(): ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for g in frontier:
            for s in gens:
                h = compose(g, s)
                if h.key() not in seen:
                    if len(seen) >= cap:
                        return None
                    seen[h.key()] = h
                    nxt.append(h)
        frontier = nxt
    return list(seen.values())
