"""Orbits of permutation groups on (n-k)-partitions.

Two independent counting routes:

* Burnside: average the number of invariant partitions over the cycle-type
  histogram of the group. The invariant count for one cycle type is
  ``fixed_count``.
* Enumeration: list every partial partition of a shape, apply the group
  generators, and union-find the images.

A partition of {1..n} is stored as its *partial partition*, the blocks of
size >= 2; singletons are implicit.
"""

from __future__ import annotations

import math
import time
from collections import Counter
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations
from typing import Iterator, Sequence

import numpy as np

from . import _kernels
from .errors import CapExceeded, ConsistencyError, DegreeMismatch
from .permcore import CycleType, PermGroup, Permutation

DEFAULT_CAP = 200_000_000


# ---------------------------------------------------------------------------
# shapes


@dataclass(frozen=True, order=True)
class PartitionShape:
    """Type (l_1 >= ... >= l_k) of a set partition of {1..n}."""

    n: int
    parts: tuple[int, ...]

    def __post_init__(self):
        parts = tuple(self.parts)
        if any(p < 1 for p in parts) or sum(parts) != self.n:
            raise ValueError(f"{parts} is not a partition of {self.n}")
        if list(parts) != sorted(parts, reverse=True):
            raise ValueError(f"parts must be non-increasing: {parts}")
        object.__setattr__(self, "parts", parts)

    @classmethod
    def from_support(cls, n: int, support: Sequence[int]) -> "PartitionShape":
        mu = tuple(sorted((s for s in support if s > 1), reverse=True))
        ones = n - sum(mu)
        if ones < 0:
            raise ValueError(f"support {mu} does not fit in {n} points")
        return cls(n, mu + (1,) * ones)

    @classmethod
    def parse(cls, text: str, n: int) -> "PartitionShape":
        """Parse ``"3,2,1..."``, ``"(2,2,2,1,...)"``, ``"4,1^4"`` or ``"2,2"``."""
        t = text.strip().strip("()").replace(" ", "")
        parts = []
        for tok in t.split(","):
            if not tok or tok.strip(".") == "" or tok in ("1...", "1.."):
                continue
            tok = tok.rstrip(".")
            if "^" in tok:
                base, exp = tok.split("^")
                parts.extend([int(base)] * int(exp))
            else:
                parts.append(int(tok))
        return cls.from_support(n, parts)

    @property
    def support(self) -> tuple[int, ...]:
        """Block sizes >= 2 (the non-singleton part of the type)."""
        return tuple(p for p in self.parts if p > 1)

    @property
    def rank(self) -> int:
        return len(self.parts)

    def label(self) -> str:
        """Compact form like ``(3,2,1^12)``."""
        mu = self.support
        ones = self.n - sum(mu)
        items = [str(p) for p in mu]
        if ones == 1:
            items.append("1")
        elif ones > 1:
            items.append(f"1^{ones}")
        return "(" + ",".join(items) + ")"

    def __str__(self) -> str:
        return self.label()


def integer_partitions(k: int, max_part: int | None = None) -> Iterator[tuple[int, ...]]:
    """Partitions of k as non-increasing tuples, in reverse lexicographic order."""
    if max_part is None:
        max_part = k
    if k == 0:
        yield ()
        return
    for first in range(min(k, max_part), 0, -1):
        for rest in integer_partitions(k - first, first):
            yield (first,) + rest


def shapes_of_rank(n: int, rank: int) -> list[PartitionShape]:
    """All partition types of n with exactly ``rank`` parts."""
    out = []
    for lam in integer_partitions(n):
        if len(lam) == rank:
            out.append(PartitionShape(n, lam))
    return out


def total_count(shape: PartitionShape) -> int:
    """Number of set partitions of {1..n} of the given type."""
    denom = math.prod(math.factorial(l) for l in shape.parts)
    denom *= math.prod(math.factorial(m) for m in Counter(shape.parts).values())
    return math.factorial(shape.n) // denom


# ---------------------------------------------------------------------------
# partial partitions


class PartialPartition(tuple):
    """Non-singleton blocks of a partition, canonical: each block sorted,
    blocks ordered by their minimum. Points are one-based."""

    def __new__(cls, blocks):
        bl = [tuple(sorted(b)) for b in blocks]
        if any(len(b) < 2 for b in bl):
            raise ValueError("blocks of a partial partition have size >= 2")
        bl.sort()
        seen = [x for b in bl for x in b]
        if len(seen) != len(set(seen)):
            raise ValueError("blocks must be disjoint")
        return super().__new__(cls, bl)

    @property
    def support(self) -> frozenset:
        return frozenset(x for b in self for x in b)

    @property
    def sizes(self) -> tuple[int, ...]:
        return tuple(sorted((len(b) for b in self), reverse=True))

    def __repr__(self) -> str:
        return "{" + ",".join("{" + ",".join(map(str, b)) + "}" for b in self) + "}"


def act(P: PartialPartition, g: Permutation) -> PartialPartition:
    """Image of P under g (blocks mapped pointwise, re-canonicalized)."""
    if P and max(max(b) for b in P) > g.degree:
        raise DegreeMismatch("partial partition uses points beyond the degree")
    return PartialPartition(tuple(g(x) for x in b) for b in P)


def _combinations_array(n: int, k: int) -> np.ndarray:
    """All k-subsets of range(n) as sorted rows, in colex order.

    Colex order has the prefix property: the subsets of range(m) come first,
    so each level is built from slices of the previous one.
    """
    if k == 0:
        return np.zeros((1, 0), dtype=np.int16)
    prev = np.arange(n, dtype=np.int16)[:, None]
    for j in range(2, k + 1):
        parts = []
        for top in range(j - 1, n):
            lower = prev[:math.comb(top, j - 1)]
            tail = np.full((len(lower), 1), top, dtype=np.int16)
            parts.append(np.hstack([lower, tail]))
        prev = np.vstack(parts) if parts else np.zeros((0, j), dtype=np.int16)
    return prev


@lru_cache(maxsize=None)
def _binom_table(n: int, k: int) -> np.ndarray:
    t = np.zeros((n + 1, k + 1), dtype=np.int64)
    for a in range(n + 1):
        for b in range(k + 1):
            t[a, b] = math.comb(a, b)
    return t


class _ObjectSpace:
    """Every partial partition of one support shape, as rows of 0-based points.

    Row layout: blocks grouped by size (largest first), equal-size blocks
    ordered by minimum, points ascending inside a block. ``index`` maps
    rows in that layout back to positions.
    """

    def __init__(self, n: int, sizes: tuple[int, ...], cap: int = DEFAULT_CAP):
        self.n = n
        self.sizes = tuple(sorted(sizes, reverse=True))
        self.groups = []  # (start column, block size, multiplicity)
        col = 0
        for s, m in sorted(Counter(self.sizes).items(), reverse=True):
            self.groups.append((col, s, m))
            col += s * m
        self.width = col
        total = total_count(PartitionShape.from_support(n, self.sizes))
        if total > cap:
            raise CapExceeded(f"partial partitions of shape {self.sizes} on {n} points", total, cap)
        self.total = total
        self.single = len(self.sizes) == 1
        if self.single:
            self.rows = _combinations_array(n, self.sizes[0])
            self._binom = _binom_table(n, self.sizes[0])
        else:
            if n > 63:
                raise ValueError("multi-block enumeration supports n <= 63")
            self.rows = self._generate()
            space = math.prod(math.comb(n, s) for s in self.sizes)
            if space >= 2 ** 62:
                raise ValueError(f"key space {space} too large")
            self._binom = _binom_table(n, max(self.sizes))
            self._canon = tuple(np.array(c, dtype=np.int64) for c in zip(*self.groups))
            self.keys = self._keys(self.rows, np.arange(n, dtype=np.int64))
            if np.any(np.diff(self.keys) <= 0):
                order = np.argsort(self.keys, kind="stable")
                self.rows = self.rows[order]
                self.keys = self.keys[order]
        if len(self.rows) != total:
            raise ConsistencyError(f"enumerated {len(self.rows)} partials, expected {total}")

    def _generate(self) -> np.ndarray:
        n = self.n
        rows = np.zeros((1, 0), dtype=np.int16)
        masks = np.zeros(1, dtype=np.uint64)
        prev = None
        bits = np.uint64(1) << np.arange(n, dtype=np.uint64)
        for s in self.sizes:
            combos = _combinations_array(n, s)
            cmask = np.bitwise_or.reduce(bits[combos.astype(np.int64)], axis=1)
            same = prev == s
            out_rows, out_masks = [], []
            step = max(1, 4_000_000 // max(1, len(combos)))
            for lo in range(0, len(rows), step):
                r = rows[lo:lo + step]
                m = masks[lo:lo + step]
                ok = (m[:, None] & cmask[None, :]) == 0
                if same:
                    ok &= combos[None, :, 0] > r[:, -s][:, None]
                ri, ci = np.nonzero(ok)
                out_rows.append(np.hstack([r[ri], combos[ci]]))
                out_masks.append(m[ri] | cmask[ci])
            rows = np.vstack(out_rows)
            masks = np.concatenate(out_masks)
            prev = s
        return rows

    def canonicalize(self, rows: np.ndarray) -> np.ndarray:
        out = np.empty_like(rows)
        N = rows.shape[0]
        for start, s, m in self.groups:
            blk = np.sort(rows[:, start:start + s * m].reshape(N, m, s), axis=2)
            if m > 1:
                order = np.argsort(blk[:, :, 0], axis=1)
                blk = np.take_along_axis(blk, order[:, :, None], axis=1)
            out[:, start:start + s * m] = blk.reshape(N, s * m)
        return out

    def _keys(self, rows: np.ndarray, perm: np.ndarray) -> np.ndarray:
        return _kernels.image_keys(rows, perm, *self._canon, self._binom)

    def index(self, rows: np.ndarray) -> np.ndarray:
        """Positions of canonical rows."""
        if self.single:
            t = self._binom
            idx = np.zeros(len(rows), dtype=np.int64)
            for i in range(rows.shape[1]):
                idx += t[rows[:, i].astype(np.int64), i + 1]
            return idx
        keys = self._keys(rows, np.arange(self.n, dtype=np.int64))
        idx = np.searchsorted(self.keys, keys)
        if np.any(idx >= len(self.keys)) or np.any(self.keys[np.minimum(idx, len(self.keys) - 1)] != keys):
            raise ConsistencyError("image of a partial partition not found")
        return idx

    def images(self, g: Permutation, rows: np.ndarray | None = None) -> np.ndarray:
        """Index of the image of every object (or of ``rows``) under g."""
        perm = np.asarray(g.array, dtype=np.int64)
        src = self.rows if rows is None else rows
        if self.single:
            return _kernels.image_colex(src, perm, self._binom)
        keys = self._keys(src, perm)
        idx = np.searchsorted(self.keys, keys)
        if np.any(idx >= len(self.keys)) or np.any(self.keys[np.minimum(idx, len(self.keys) - 1)] != keys):
            raise ConsistencyError("image of a partial partition not found")
        return idx

    def to_partial(self, i: int) -> PartialPartition:
        row = self.rows[i].tolist()
        blocks = []
        col = 0
        for s in self.sizes:
            blocks.append([x + 1 for x in row[col:col + s]])
            col += s
        return PartialPartition(blocks)

    def from_partial(self, P: PartialPartition) -> int:
        blocks = sorted(P, key=lambda b: (-len(b), b[0]))
        row = np.array([[x - 1 for b in blocks for x in b]], dtype=np.int16)
        return int(self.index(self.canonicalize(row))[0])

    def lex_rank(self) -> np.ndarray:
        """Rank of each object in the lexicographic order of canonical
        PartialPartitions (blocks ordered by minimum)."""
        rank = np.empty(self.total, dtype=np.int64)
        rank[self.lex_order()] = np.arange(self.total)
        return rank

    def lex_order(self) -> np.ndarray:
        """Object indices sorted lexicographically (cached)."""
        if getattr(self, "_lex_order", None) is None:
            self._lex_order = self._lex_sort()
        return self._lex_order

    def _lex_sort(self) -> np.ndarray:
        N = len(self.rows)
        nb = len(self.sizes)
        w = max(self.sizes) + 1
        pad = np.zeros((N, nb, w), dtype=np.int16)
        col = 0
        for j, s in enumerate(self.sizes):
            pad[:, j, :s] = self.rows[:, col:col + s] + 1
            col += s
        if nb > 1:
            order = np.argsort(pad[:, :, 0], axis=1)
            pad = np.take_along_axis(pad, order[:, :, None], axis=1)
        flat = pad.reshape(N, nb * w)
        return np.lexsort(flat.T[::-1])


@lru_cache(maxsize=16)
def _space(n: int, sizes: tuple[int, ...], cap: int = DEFAULT_CAP) -> _ObjectSpace:
    return _ObjectSpace(n, sizes, cap)


def object_space(n: int, sizes: Sequence[int], cap: int = DEFAULT_CAP) -> _ObjectSpace:
    sizes = tuple(sorted(sizes, reverse=True))
    total = total_count(PartitionShape.from_support(n, sizes))
    if total > cap:
        raise CapExceeded(f"partial partitions of shape {sizes} on {n} points", total, cap)
    return _space(n, sizes)


def enumerate_partials(n: int, support: Sequence[int], cap: int = DEFAULT_CAP) -> Iterator[PartialPartition]:
    """Every partial partition with the given block sizes, each exactly once."""
    sp = object_space(n, support, cap)
    for i in range(sp.total):
        yield sp.to_partial(i)


# ---------------------------------------------------------------------------
# fixed counts


def _as_counts(t) -> tuple[tuple[int, int], ...]:
    if isinstance(t, dict):
        return tuple(sorted((int(k), int(v)) for k, v in t.items() if v))
    return tuple(sorted(Counter(t).items()))


def fixed_count(t: Sequence[int] | CycleType, support: Sequence[int]) -> int:
    """Number of partitions of type (support, 1, ..., 1) invariant under any
    permutation with cycle type t.

    An invariant family of blocks splits into orbits under <g>. An orbit of d
    blocks of size s covers complete cycles whose lengths are multiples of d
    and sum to d*s; each block meets each such cycle in exactly one of the d
    orbits of g^d on that cycle, so m cycles carry d^(m-1) distinct block
    orbits of period exactly d.
    """
    mu = tuple(sorted((int(s) for s in support if s > 1), reverse=True))
    if sum(mu) > sum(t):
        return 0
    return _fixed(_as_counts(t), _as_counts(mu))


@lru_cache(maxsize=None)
def _fixed(cycles: tuple[tuple[int, int], ...], blocks: tuple[tuple[int, int], ...]) -> int:
    if not blocks:
        return 1
    if not cycles:
        return 0
    avail = sum(l * c for l, c in cycles)
    need = sum(s * m for s, m in blocks)
    if need > avail:
        return 0
    cyc = dict(cycles)
    # anchor: one cycle of the largest length
    L = max(cyc)
    rest = dict(cyc)
    rest[L] -= 1
    if rest[L] == 0:
        del rest[L]
    total = _fixed(_pack(rest), blocks)  # anchor cycle left as singletons
    bl = dict(blocks)
    for d in _divisors(L):
        for s, m in blocks:
            if m < d or d * s < L:
                continue
            new_blocks = dict(bl)
            new_blocks[s] -= d
            if new_blocks[s] == 0:
                del new_blocks[s]
            nb = _pack(new_blocks)
            # other cycles in this block orbit: lengths divisible by d, summing to d*s - L
            for chosen, ways, count in _pick_cycles(_pack(rest), d, d * s - L):
                remaining = dict(rest)
                for l, c in chosen:
                    remaining[l] -= c
                    if remaining[l] == 0:
                        del remaining[l]
                total += ways * d ** count * _fixed(_pack(remaining), nb)
    return total


def _pack(d: dict) -> tuple[tuple[int, int], ...]:
    return tuple(sorted((k, v) for k, v in d.items() if v))


@lru_cache(maxsize=None)
def _divisors(n: int) -> tuple[int, ...]:
    return tuple(d for d in range(1, n + 1) if n % d == 0)


@lru_cache(maxsize=None)
def _pick_cycles(cycles: tuple[tuple[int, int], ...], d: int, target: int):
    """Ways to choose labelled cycles with lengths divisible by d summing to
    target. Yields (chosen multiset, number of labelled choices, #cycles)."""
    usable = [(l, c) for l, c in cycles if l % d == 0 and l <= target]
    out = []

    def rec(i, remaining, chosen, ways, count):
        if remaining == 0:
            out.append((tuple(chosen), ways, count))
            return
        if i == len(usable):
            return
        l, c = usable[i]
        for k in range(0, min(c, remaining // l) + 1):
            rec(i + 1, remaining - k * l, chosen + ([(l, k)] if k else []),
                ways * math.comb(c, k), count + k)

    rec(0, target, [], 1, 0)
    return tuple(out)


def fixed_count_brute(perm: Permutation, support: Sequence[int]) -> int:
    """Oracle: count invariant partials by explicit enumeration."""
    sp = object_space(perm.degree, support)
    return int(np.count_nonzero(sp.images(perm) == np.arange(sp.total)))


def fixed_subset_count(t: Sequence[int], k: int) -> int:
    """k-subsets invariant under a permutation of cycle type t: coefficient of
    x^k in prod over cycles of (1 + x^len)."""
    poly = [1] + [0] * k
    for l in t:
        for j in range(k, l - 1, -1):
            poly[j] += poly[j - l]
    return poly[k]


# ---------------------------------------------------------------------------
# Burnside


def burnside_orbit_count(G: PermGroup, shape: PartitionShape, threads: int = 1) -> int:
    if shape.n != G.degree:
        raise DegreeMismatch(f"shape of {shape.n} points for degree {G.degree} group")
    hist = G.cycle_type_histogram(threads)
    acc = sum(c * fixed_count(t, shape.support) for t, c in hist.items())
    q, r = divmod(acc, G.order())
    if r:
        raise ConsistencyError(f"Burnside sum {acc} not divisible by |G| = {G.order()}")
    return q


# ---------------------------------------------------------------------------
# enumeration


@dataclass
class OrbitReport:
    """Orbit census of one group on one shape."""

    shape: PartitionShape
    group: str
    count: int
    degree: int = 0
    method: str = "burnside"
    elapsed: float = 0.0
    representatives: list | None = None
    sizes: list | None = None
    stabilizer_orders: list | None = None
    labels: np.ndarray | None = field(default=None, repr=False)
    rep_index: np.ndarray | None = field(default=None, repr=False)

    def record(self) -> dict:
        return {
            "group": self.group,
            "degree": self.degree,
            "shape": self.shape.label(),
            "count": self.count,
            "method": self.method,
            "elapsed": round(self.elapsed, 3),
        }


def orbit_labels(G: PermGroup, space: _ObjectSpace, gens: Sequence[Permutation] | None = None) -> np.ndarray:
    """Union-find orbit labels (label = smallest index in the orbit)."""
    parent = np.arange(space.total, dtype=np.int64)
    for g in (G.generators if gens is None else gens):
        _kernels.union_images(parent, space.images(g))
    return _kernels.flatten_labels(parent)


def enumerate_orbits(G: PermGroup, shape: PartitionShape, cap: int = DEFAULT_CAP) -> OrbitReport:
    """Explicit orbit partition of all partials of the shape; representatives
    are the lexicographically smallest canonical member of each orbit."""
    if shape.n != G.degree:
        raise DegreeMismatch(f"shape of {shape.n} points for degree {G.degree} group")
    start = time.perf_counter()
    if not shape.support:
        return OrbitReport(shape, G.name, 1, G.degree, "enumeration", 0.0,
                           [PartialPartition(())], [1], [G.order()])
    space = object_space(shape.n, shape.support, cap)
    labels = orbit_labels(G, space)
    roots, sizes = np.unique(labels, return_counts=True)
    # walk objects in lex order; the first hit of each label is its rep
    by_lex = space.lex_order()
    _, first = np.unique(labels[by_lex], return_index=True)
    first.sort()
    rep_index = by_lex[first]
    sizes = sizes[np.searchsorted(roots, labels[rep_index])]
    order = G.order()
    reps = [space.to_partial(int(i)) for i in rep_index]
    size_list = [int(s) for s in sizes]
    if sum(size_list) != space.total:
        raise ConsistencyError("orbit sizes do not sum to the total count")
    if any(order % s for s in size_list):
        raise ConsistencyError("an orbit size does not divide |G|")
    return OrbitReport(
        shape, G.name, len(size_list), G.degree, "enumeration",
        time.perf_counter() - start, reps, size_list, [order // s for s in size_list],
        labels=labels, rep_index=rep_index,
    )


# ---------------------------------------------------------------------------
# k-subsets and homogeneity


def subset_orbit_count(G: PermGroup, k: int, method: str = "auto") -> int:
    """Number of G-orbits on k-subsets."""
    n = G.degree
    if not 0 <= k <= n:
        raise ValueError(f"k={k} outside 0..{n}")
    if method == "auto":
        method = "burnside" if math.comb(n, k) > 10 ** 7 or G.order() <= 10 ** 7 else "enumeration"
    if k in (0, n):
        return 1
    if method == "enumeration":
        space = object_space(n, (k,)) if k > 1 else None
        if k == 1:
            return _point_orbit_count(G)
        labels = orbit_labels(G, space)
        return len(np.unique(labels))
    hist = G.cycle_type_histogram()
    acc = sum(c * fixed_subset_count(t, k) for t, c in hist.items())
    q, r = divmod(acc, G.order())
    if r:
        raise ConsistencyError("Burnside sum on subsets not divisible by |G|")
    return q


def _point_orbit_count(G: PermGroup) -> int:
    parent = np.arange(G.degree, dtype=np.int64)
    for g in G.generators:
        _kernels.union_images(parent, np.asarray(g.array, dtype=np.int64))
    return len(np.unique(_kernels.flatten_labels(parent)))


def is_k_homogeneous(G: PermGroup, k: int) -> bool:
    return subset_orbit_count(G, k) == 1


def n2(G: PermGroup) -> int:
    """Number of orbits on 2-subsets."""
    return subset_orbit_count(G, 2)


# ---------------------------------------------------------------------------
# the square-multiplier affine group


def example28_check(p: int) -> tuple[tuple[int, int], int]:
    """Orbits of {x -> a x + b : a a nonzero square} mod p on (3,1,...) and
    (2,2,1,...) partitions, checked against the closed forms
    (p-2)/3, (p-2)(p-3)/4 and (3p^2 - 11p + 10)/12."""
    from .catalog.fields import field_make, is_prime
    from .catalog.groups import _affine

    if not is_prime(p) or p % 12 != 11:
        raise ValueError(f"p must be a prime congruent to 11 mod 12, got {p}")
    F = field_make(p, 1)
    G = PermGroup([_affine(F, 1, 1), _affine(F, F.mul(F.primitive, F.primitive), 0)], p,
                  name=f"ASL-squares(1,{p})")
    if G.order() != p * (p - 1) // 2:
        raise ConsistencyError("square-multiplier group has the wrong order")
    a = burnside_orbit_count(G, PartitionShape.from_support(p, (3,)))
    b = burnside_orbit_count(G, PartitionShape.from_support(p, (2, 2)))
    expected = ((p - 2) // 3, (p - 2) * (p - 3) // 4)
    total = (3 * p * p - 11 * p + 10) // 12
    if (a, b) != expected or a + b != total:
        raise ConsistencyError(f"p={p}: got {(a, b)}, closed form {expected}, total {total}")
    return (a, b), a + b
