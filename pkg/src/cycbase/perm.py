"""Permutations on {0, ..., n-1} acting on the right.

A permutation is stored as its image array: point ``i`` maps to
``images[i]``.  Products compose left to right, so ``g * h`` means
"apply ``g``, then ``h``".  All arithmetic runs on read-only numpy
``int16`` arrays, which keeps composition a single fancy-indexing
operation and makes hashing a matter of hashing the raw bytes.
"""

from __future__ import annotations

import re
from functools import lru_cache
from math import gcd
from typing import Iterable, Iterator, Sequence

import numpy as np

from .errors import CycleFormatError, DegreeError, RepeatedPointError

MAX_DEGREE = 32767

_DTYPE = np.int16


@lru_cache(maxsize=None)
def _identity_images(n: int) -> np.ndarray:
    arr = np.arange(n, dtype=_DTYPE)
    arr.setflags(write=False)
    return arr


def identity_images(n: int) -> np.ndarray:
    """Read-only identity image array of degree ``n`` (shared, cached)."""
    if not 1 <= n <= MAX_DEGREE:
        raise DegreeError(f"degree must be in [1, {MAX_DEGREE}], got {n}")
    return _identity_images(n)


class Perm:
    """An immutable permutation of {0, ..., n-1}."""

    __slots__ = ("_img", "_hash")

    def __init__(self, images: Sequence[int] | np.ndarray, *, _trusted: bool = False):
        if _trusted:
            # images is already a read-only _DTYPE array owned by us
            self._img = images
            self._hash = None
            return
        arr = np.asarray(images, dtype=np.int64)
        if arr.ndim != 1 or arr.size == 0:
            raise DegreeError("images must be a non-empty 1-d sequence")
        n = arr.size
        if n > MAX_DEGREE:
            raise DegreeError(f"degree {n} exceeds maximum {MAX_DEGREE}")
        if arr.min() < 0 or arr.max() >= n:
            raise ValueError(f"images must be a bijection on 0..{n - 1}")
        if np.bincount(arr, minlength=n).max() != 1:
            raise ValueError("images contain a repeated value")
        img = arr.astype(_DTYPE)
        img.setflags(write=False)
        self._img = img
        self._hash = None

    @classmethod
    def identity(cls, n: int) -> "Perm":
        return cls(identity_images(n), _trusted=True)

    @classmethod
    def from_cycles(cls, n: int, cycles: Iterable[Sequence[int]]) -> "Perm":
        """Build from 0-based cycles, e.g. ``Perm.from_cycles(4, [(0, 1, 2)])``."""
        if not 1 <= n <= MAX_DEGREE:
            raise DegreeError(f"degree must be in [1, {MAX_DEGREE}], got {n}")
        img = np.arange(n, dtype=_DTYPE)
        seen = np.zeros(n, dtype=bool)
        for cyc in cycles:
            pts = list(cyc)
            for x in pts:
                if not 0 <= x < n:
                    raise ValueError(f"point {x} out of range for degree {n}")
                if seen[x]:
                    raise RepeatedPointError(f"point {x} repeated across cycles")
                seen[x] = True
            for i, x in enumerate(pts):
                img[x] = pts[(i + 1) % len(pts)]
        img.setflags(write=False)
        return cls(img, _trusted=True)

    @property
    def degree(self) -> int:
        return self._img.size

    def apply(self, point: int) -> int:
        """Image of a single point."""
        return int(self._img[point])

    def images(self) -> np.ndarray:
        """The underlying read-only image array."""
        return self._img

    def as_tuple(self) -> tuple[int, ...]:
        return tuple(int(x) for x in self._img)

    def inverse(self) -> "Perm":
        inv = np.empty(self._img.size, dtype=_DTYPE)
        inv[self._img] = np.arange(self._img.size, dtype=_DTYPE)
        inv.setflags(write=False)
        return Perm(inv, _trusted=True)

    def __mul__(self, other: "Perm") -> "Perm":
        return compose(self, other)

    def __pow__(self, k: int) -> "Perm":
        return power(self, k)

    def __call__(self, point: int) -> int:
        return int(self._img[point])

    def is_identity(self) -> bool:
        n = self._img.size
        return bool(np.array_equal(self._img, _identity_images(n)))

    def min_moved(self) -> int | None:
        """Smallest moved point, or None for the identity."""
        moved = np.flatnonzero(self._img != _identity_images(self._img.size))
        return int(moved[0]) if moved.size else None

    def moved_points(self) -> list[int]:
        return [int(x) for x in np.flatnonzero(self._img != _identity_images(self._img.size))]

    def cycles(self, *, include_fixed: bool = False) -> list[tuple[int, ...]]:
        """Disjoint cycles, each rotated to start at its smallest point,
        sorted by that point."""
        n = self._img.size
        seen = [False] * n
        out: list[tuple[int, ...]] = []
        img = self._img
        for start in range(n):
            if seen[start]:
                continue
            cyc = [start]
            seen[start] = True
            x = int(img[start])
            while x != start:
                cyc.append(x)
                seen[x] = True
                x = int(img[x])
            if len(cyc) > 1 or include_fixed:
                out.append(tuple(cyc))
        return out

    def cycle_type(self) -> tuple[int, ...]:
        """Cycle lengths including fixed points, sorted descending."""
        lengths = [len(c) for c in self.cycles(include_fixed=True)]
        return tuple(sorted(lengths, reverse=True))

    def order(self) -> int:
        o = 1
        for c in self.cycles():
            o = o * len(c) // gcd(o, len(c))
        return o

    def is_full_cycle(self) -> bool:
        """True when the permutation is a single cycle through every point."""
        cycs = self.cycles(include_fixed=True)
        return len(cycs) == 1

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Perm):
            return NotImplemented
        return self._img.size == other._img.size and bool(
            np.array_equal(self._img, other._img)
        )

    def __ne__(self, other: object) -> bool:
        eq = self.__eq__(other)
        return NotImplemented if eq is NotImplemented else not eq

    def __hash__(self) -> int:
        h = self._hash
        if h is None:
            h = hash((self._img.size, self._img.tobytes()))
            self._hash = h
        return h

    def key(self) -> bytes:
        """Raw bytes of the image array, for dict keys in hot loops."""
        return self._img.tobytes()

    def __repr__(self) -> str:
        return f"Perm(n={self.degree}, {format_cycles(self)})"


def compose(g: Perm, h: Perm) -> Perm:
    """The product "g then h": point ``i`` maps to ``h(g(i))``."""
    if g._img.size != h._img.size:
        raise DegreeError(f"degree mismatch: {g._img.size} != {h._img.size}")
    res = h._img[g._img]
    res.setflags(write=False)
    return Perm(res, _trusted=True)


def inverse(g: Perm) -> Perm:
    return g.inverse()


def conjugate(g: Perm, k: Perm) -> Perm:
    """``k^-1 g k``, the conjugate of ``g`` by ``k``."""
    if g._img.size != k._img.size:
        raise DegreeError(f"degree mismatch: {g._img.size} != {k._img.size}")
    # (k^-1 g k)(i) = k(g(k^-1(i))); build via scatter to avoid one inverse
    res = np.empty(g._img.size, dtype=_DTYPE)
    res[k._img] = k._img[g._img]
    res.setflags(write=False)
    return Perm(res, _trusted=True)


def commutator(a: Perm, b: Perm) -> Perm:
    """``a^-1 b^-1 a b``."""
    return compose(compose(a.inverse(), b.inverse()), compose(a, b))


def power(g: Perm, k: int) -> Perm:
    n = g._img.size
    if k == 0:
        return Perm.identity(n)
    base = g if k > 0 else g.inverse()
    k = abs(k)
    img = _identity_images(n)
    cur = base._img
    while True:
        if k & 1:
            img = cur[img]
        k >>= 1
        if k == 0:
            break
        cur = cur[cur]
    img = np.array(img, dtype=_DTYPE)
    img.setflags(write=False)
    return Perm(img, _trusted=True)


def element_order(g: Perm) -> int:
    return g.order()


_CYCLE_RE = re.compile(r"\(([^()]*)\)")
_WS_RE = re.compile(r"\s+")


def parse_cycles(text: str, degree: int) -> Perm:
    """Parse 1-based disjoint cycle notation, e.g. ``"(1,2,3)(4,5)"``.

    ``"()"`` denotes the identity.  Whitespace is ignored.
    """
    if not 1 <= degree <= MAX_DEGREE:
        raise DegreeError(f"degree must be in [1, {MAX_DEGREE}], got {degree}")
    s = _WS_RE.sub("", text)
    if not s:
        raise CycleFormatError("empty cycle expression")
    chunks = _CYCLE_RE.findall(s)
    if "".join(f"({c})" for c in chunks) != s:
        raise CycleFormatError(f"malformed cycle expression: {text!r}")
    cycles: list[list[int]] = []
    for chunk in chunks:
        if not chunk:
            continue
        try:
            pts = [int(tok) for tok in chunk.split(",")]
        except ValueError as exc:
            raise CycleFormatError(f"non-integer point in {text!r}") from exc
        for p in pts:
            if not 1 <= p <= degree:
                raise CycleFormatError(
                    f"point {p} out of range 1..{degree} in {text!r}"
                )
        cycles.append([p - 1 for p in pts])
    return Perm.from_cycles(degree, cycles)


def format_cycles(g: Perm) -> str:
    """1-based disjoint cycle notation; the identity prints as ``"()"``."""
    cycs = g.cycles()
    if not cycs:
        return "()"
    return "".join("(" + ",".join(str(x + 1) for x in c) + ")" for c in cycs)
