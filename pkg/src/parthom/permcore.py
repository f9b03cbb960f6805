"""Permutations, stabilizer chains and generic orbits.

Points are one-based at the public surface and 0-based internally. Products
act left to right: ``(i)(p*q) = ((i)p)q``.
"""

from __future__ import annotations

import math
import random
from collections import Counter, deque
from dataclasses import dataclass, field
from typing import Callable, Hashable, Iterable, Iterator, Sequence

import numpy as np

from . import _kernels
from .errors import CapExceeded, DegreeMismatch

Perm0 = tuple  # 0-based image tuple, the internal representation


def _mul(p: Perm0, q: Perm0) -> Perm0:
    return tuple(map(q.__getitem__, p))


def _inv(p: Perm0) -> Perm0:
    out = [0] * len(p)
    for i, j in enumerate(p):
        out[j] = i
    return tuple(out)


class Permutation:
    """An immutable permutation of {1..n}.

    ``images[i-1]`` is the image of point ``i``.
    """

    __slots__ = ("_p", "_hash")

    def __init__(self, images: Sequence[int]):
        p = tuple(int(x) - 1 for x in images)
        if sorted(p) != list(range(len(p))):
            raise ValueError(f"not a permutation of 1..{len(p)}: {list(images)}")
        self._p = p
        self._hash = None

    @classmethod
    def _raw(cls, p0: Perm0) -> "Permutation":
        obj = cls.__new__(cls)
        obj._p = p0
        obj._hash = None
        return obj

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls._raw(tuple(range(n)))

    @classmethod
    def from_cycles(cls, n: int, *cycles: Sequence[int]) -> "Permutation":
        p = list(range(n))
        for cyc in cycles:
            for a, b in zip(cyc, cyc[1:] + type(cyc)(cyc[:1])):
                p[a - 1] = b - 1
        return cls._checked(p)

    @classmethod
    def _checked(cls, p0: Sequence[int]) -> "Permutation":
        t = tuple(p0)
        if sorted(t) != list(range(len(t))):
            raise ValueError("cycles do not describe a permutation")
        return cls._raw(t)

    @property
    def degree(self) -> int:
        return len(self._p)

    @property
    def images(self) -> tuple[int, ...]:
        return tuple(x + 1 for x in self._p)

    @property
    def array(self) -> Perm0:
        """0-based image tuple."""
        return self._p

    def __call__(self, point: int) -> int:
        return self._p[point - 1] + 1

    def __mul__(self, other: "Permutation") -> "Permutation":
        return compose(self, other)

    def __invert__(self) -> "Permutation":
        return inverse(self)

    def __pow__(self, e: int) -> "Permutation":
        base = self._p if e >= 0 else _inv(self._p)
        e = abs(e)
        result = tuple(range(len(base)))
        while e:
            if e & 1:
                result = _mul(result, base)
            base = _mul(base, base)
            e >>= 1
        return Permutation._raw(result)

    def __eq__(self, other) -> bool:
        return isinstance(other, Permutation) and self._p == other._p

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(self._p)
        return self._hash

    def __lt__(self, other: "Permutation") -> bool:
        return self._p < other._p

    def is_identity(self) -> bool:
        return all(i == x for i, x in enumerate(self._p))

    def cycles(self) -> list[tuple[int, ...]]:
        """Non-trivial cycles, one-based, each starting at its minimum."""
        seen = [False] * len(self._p)
        out = []
        for i in range(len(self._p)):
            if seen[i]:
                continue
            cyc = []
            j = i
            while not seen[j]:
                seen[j] = True
                cyc.append(j + 1)
                j = self._p[j]
            if len(cyc) > 1:
                out.append(tuple(cyc))
        return out

    def order(self) -> int:
        return math.lcm(*cycle_type(self)) if self._p else 1

    def __repr__(self) -> str:
        cyc = "".join("(" + " ".join(map(str, c)) + ")" for c in self.cycles())
        return f"Permutation<{self.degree}>{cyc or '()'}"


def identity(n: int) -> Permutation:
    return Permutation.identity(n)


def compose(p: Permutation, q: Permutation) -> Permutation:
    """Left-to-right product: apply p, then q."""
    if p.degree != q.degree:
        raise DegreeMismatch(f"degrees {p.degree} and {q.degree}")
    return Permutation._raw(_mul(p._p, q._p))


def inverse(p: Permutation) -> Permutation:
    return Permutation._raw(_inv(p._p))


def conjugate(p: Permutation, g: Permutation) -> Permutation:
    """g^-1 p g."""
    return Permutation._raw(_mul(_mul(_inv(g._p), p._p), g._p))


class CycleType(tuple):
    """Cycle lengths of a permutation, non-increasing, including 1-parts."""

    def __new__(cls, parts: Iterable[int]):
        return super().__new__(cls, sorted((int(x) for x in parts), reverse=True))

    @property
    def degree(self) -> int:
        return sum(self)

    def counts(self) -> dict[int, int]:
        return dict(Counter(self))


def cycle_type(p: Permutation | Perm0) -> CycleType:
    a = p._p if isinstance(p, Permutation) else p
    seen = [False] * len(a)
    parts = []
    for i in range(len(a)):
        if seen[i]:
            continue
        length = 0
        j = i
        while not seen[j]:
            seen[j] = True
            j = a[j]
            length += 1
        parts.append(length)
    return CycleType(parts)


# ---------------------------------------------------------------------------
# stabilizer chains


@dataclass
class _Level:
    point: int
    gens: list = field(default_factory=list)
    trans: dict = field(default_factory=dict)  # orbit point -> u with u[point] = pt
    inv: dict = field(default_factory=dict)

    def reset_orbit(self, n: int) -> None:
        e = tuple(range(n))
        self.trans = {self.point: e}
        self.inv = {self.point: e}
        self._extend(list(self.trans))

    def _extend(self, frontier: list) -> None:
        queue = deque(frontier)
        while queue:
            pt = queue.popleft()
            u = self.trans[pt]
            for s in self.gens:
                img = s[pt]
                if img not in self.trans:
                    v = _mul(u, s)
                    self.trans[img] = v
                    self.inv[img] = _inv(v)
                    queue.append(img)

    def add_gen(self, s: Perm0) -> None:
        self.gens.append(s)
        new = []
        for pt, u in list(self.trans.items()):
            img = s[pt]
            if img not in self.trans:
                v = _mul(u, s)
                self.trans[img] = v
                self.inv[img] = _inv(v)
                new.append(img)
        self._extend(new)


def _is_identity(p: Perm0) -> bool:
    return all(i == x for i, x in enumerate(p))


class StabilizerChain:
    """Base and strong generating set with explicit coset representatives.

    Built by randomized Schreier-Sims, then completed by a deterministic pass
    that sifts every Schreier generator at every level, so the order and
    membership test are exact regardless of the random phase.
    """

    def __init__(self, degree: int, generators: Iterable[Perm0], seed: int = 0,
                 base_prefix: Sequence[int] = ()):
        self.degree = degree
        self.levels: list[_Level] = []
        gens = [tuple(g) for g in generators]
        gens = [g for g in gens if not _is_identity(g)]
        for g in gens:
            if len(g) != degree:
                raise DegreeMismatch(f"generator of degree {len(g)} in degree {degree} group")
        self._gens = gens
        for b in base_prefix:
            self._new_level(b)
        for g in gens:
            self._insert(g, 0)
        if gens:
            self._random_phase(random.Random(seed))
            self._deterministic_pass()

    # -- construction helpers
    def _new_level(self, point: int) -> _Level:
        lv = _Level(point)
        lv.reset_orbit(self.degree)
        self.levels.append(lv)
        return lv

    def _sift(self, g: Perm0, start: int = 0) -> tuple[Perm0, int]:
        for i in range(start, len(self.levels)):
            lv = self.levels[i]
            uinv = lv.inv.get(g[lv.point])
            if uinv is None:
                return g, i
            g = _mul(g, uinv)
        return g, len(self.levels)

    def _insert(self, h: Perm0, start: int) -> int | None:
        """Sift h from level ``start``; on failure add the residue as a strong
        generator. Returns the deepest level touched, or None if h sifted."""
        h, j = self._sift(h, start)
        if _is_identity(h):
            return None
        if j == len(self.levels):
            moved = next(i for i, x in enumerate(h) if i != x)
            self._new_level(moved)
        for lv in self.levels[start:j + 1]:
            lv.add_gen(h)
        return j

    def _random_phase(self, rng: random.Random, patience: int = 24) -> None:
        pool = list(self._gens)
        while len(pool) < 10:
            pool.append(self._gens[len(pool) % len(self._gens)])
        acc = tuple(range(self.degree))
        for _ in range(40):  # warm up product replacement
            acc = self._pr_step(pool, acc, rng)
        quiet = 0
        while quiet < patience:
            acc = self._pr_step(pool, acc, rng)
            if self._insert(acc, 0) is None:
                quiet += 1
            else:
                quiet = 0

    @staticmethod
    def _pr_step(pool: list, acc: Perm0, rng: random.Random) -> Perm0:
        i, j = rng.sample(range(len(pool)), 2)
        if rng.random() < 0.5:
            pool[i] = _mul(pool[i], pool[j])
        else:
            pool[i] = _mul(pool[j], pool[i])
        return _mul(acc, pool[i])

    def _deterministic_pass(self) -> None:
        i = len(self.levels) - 1
        while i >= 0:
            lv = self.levels[i]
            failed_at = None
            for pt, u in list(lv.trans.items()):
                for s in list(lv.gens):
                    sch = _mul(_mul(u, s), lv.inv[s[pt]])
                    if _is_identity(sch):
                        continue
                    j = self._insert(sch, i + 1)
                    if j is not None:
                        failed_at = j
                        break
                if failed_at is not None:
                    break
            if failed_at is None:
                i -= 1
            else:
                i = failed_at

    # -- queries
    @property
    def base(self) -> list[int]:
        return [lv.point for lv in self.levels]

    def order(self) -> int:
        return math.prod(len(lv.trans) for lv in self.levels)

    def transversal_sizes(self) -> list[int]:
        return [len(lv.trans) for lv in self.levels]

    def contains(self, g: Perm0) -> bool:
        h, _ = self._sift(g)
        return _is_identity(h)

    def strong_generators(self) -> list[Perm0]:
        seen = []
        ids = set()
        for lv in self.levels:
            for s in lv.gens:
                if s not in ids:
                    ids.add(s)
                    seen.append(s)
        return seen

    def random_element(self, rng: random.Random) -> Perm0:
        g = tuple(range(self.degree))
        for lv in reversed(self.levels):
            u = lv.trans[rng.choice(list(lv.trans))]
            g = _mul(g, u)
        return g

    def rep_arrays(self) -> tuple[np.ndarray, np.ndarray]:
        """Coset representatives as a padded (levels, max_orbit, n) int32 array."""
        sizes = np.array(self.transversal_sizes(), dtype=np.int64)
        width = int(sizes.max()) if len(sizes) else 1
        reps = np.zeros((len(self.levels), width, self.degree), dtype=np.int32)
        for k, lv in enumerate(self.levels):
            for r, pt in enumerate(sorted(lv.trans)):
                reps[k, r] = lv.trans[pt]
        return reps, sizes


class PermGroup:
    """A permutation group given by generators; the stabilizer chain is built
    lazily on first use."""

    def __init__(self, generators: Iterable[Permutation], degree: int | None = None,
                 name: str = "", seed: int = 0):
        gens = list(generators)
        if degree is None:
            if not gens:
                raise ValueError("degree is required for an empty generator list")
            degree = gens[0].degree
        for g in gens:
            if g.degree != degree:
                raise DegreeMismatch(f"generator of degree {g.degree} in degree {degree} group")
        self.generators = gens
        self.degree = degree
        self.name = name
        self.seed = seed
        self._chain: StabilizerChain | None = None
        self._hist: dict | None = None

    @property
    def chain(self) -> StabilizerChain:
        if self._chain is None:
            self._chain = StabilizerChain(self.degree, (g.array for g in self.generators),
                                          seed=self.seed)
        return self._chain

    def order(self) -> int:
        return self.chain.order()

    def __len__(self) -> int:
        return self.order()

    def contains(self, p: Permutation) -> bool:
        if p.degree != self.degree:
            raise DegreeMismatch(f"degree {p.degree} permutation vs degree {self.degree} group")
        return self.chain.contains(p.array)

    __contains__ = contains

    def elements(self, top_range: tuple[int, int] | None = None) -> Iterator[Permutation]:
        """Each element exactly once, depth-first over the chain levels with the
        deepest level varying fastest. ``top_range`` restricts the top-level
        representative index, so disjoint ranges partition the group."""
        levels = self.chain.levels
        reps = [[lv.trans[pt] for pt in sorted(lv.trans)] for lv in levels]
        if not reps:
            yield Permutation.identity(self.degree)
            return
        lo, hi = top_range if top_range is not None else (0, len(reps[0]))
        depth_last = len(reps) - 1

        def walk(depth, prefix):
            choices = reps[depth] if depth else reps[0][lo:hi]
            for u in choices:
                g = tuple(map(prefix.__getitem__, u))
                if depth == depth_last:
                    yield Permutation._raw(g)
                else:
                    yield from walk(depth + 1, g)

        yield from walk(0, tuple(range(self.degree)))

    def element_array(self, cap: int = 5_000_000) -> np.ndarray:
        """All elements as an (order, n) int32 array of 0-based images."""
        order = self.order()
        if order > cap:
            raise CapExceeded("element array", order, cap)
        out = np.arange(self.degree, dtype=np.int32)[None, :]
        for lv in self.chain.levels:
            reps = np.array([lv.trans[pt] for pt in sorted(lv.trans)], dtype=np.int32)
            # new element = u * prefix  ->  image x -> prefix[u[x]]
            out = out[:, reps].reshape(-1, self.degree)
        return out

    def random_element(self, rng: random.Random) -> Permutation:
        return Permutation._raw(self.chain.random_element(rng))

    def cycle_type_histogram(self, threads: int = 1) -> dict[CycleType, int]:
        if self._hist is None:
            self._hist = _cycle_type_histogram(self, threads)
        return dict(self._hist)

    def is_subgroup_of(self, other: "PermGroup") -> bool:
        return all(other.contains(g) for g in self.generators)

    def __repr__(self) -> str:
        return f"PermGroup({self.name or '?'}, degree={self.degree})"


def build_chain(generators: Iterable[Permutation], degree: int | None = None,
                seed: int = 0) -> StabilizerChain:
    gens = list(generators)
    if degree is None:
        degree = gens[0].degree if gens else 1
    return StabilizerChain(degree, (g.array for g in gens), seed=seed)


def order(G: PermGroup) -> int:
    return G.order()


def contains(G: PermGroup, p: Permutation) -> bool:
    return G.contains(p)


def elements(G: PermGroup) -> Iterator[Permutation]:
    return G.elements()


def cycle_type_histogram(G: PermGroup) -> dict[CycleType, int]:
    return G.cycle_type_histogram()


def _radix_weights(n: int) -> np.ndarray | None:
    """Mixed-radix weights turning cycle-length counts into one int64 key,
    or None if the key space does not fit in 63 bits."""
    w = np.zeros(n + 1, dtype=np.int64)
    acc = 1
    for length in range(1, n + 1):
        w[length] = acc
        acc *= n // length + 1
        if acc >= 2 ** 63:
            return None
    return w


def _decode_key(key: int, n: int) -> CycleType:
    parts = []
    for length in range(1, n + 1):
        radix = n // length + 1
        key, c = divmod(key, radix)
        parts.extend([length] * c)
    return CycleType(parts)


def _cycle_type_histogram(G: PermGroup, threads: int = 1) -> dict[CycleType, int]:
    n = G.degree
    chain = G.chain
    weights = _radix_weights(n)
    hist: Counter = Counter()
    if weights is None:
        # large degree: groups in scope are small enough to materialize in chunks
        for chunk in _element_chunks(G):
            counts = _kernels.cycle_count_rows(chunk)
            rows, mult = np.unique(counts, axis=0, return_counts=True)
            for row, m in zip(rows, mult):
                parts = [length for length in range(1, n + 1) for _ in range(row[length])]
                hist[CycleType(parts)] += int(m)
    else:
        reps, sizes = chain.rep_arrays()
        top = int(sizes[0]) if len(sizes) else 1
        ranges = _split(top, max(1, threads))
        if threads > 1:
            from concurrent.futures import ThreadPoolExecutor
            with ThreadPoolExecutor(threads) as ex:
                parts = list(ex.map(lambda r: _kernels.sweep_cycle_keys(reps, sizes, r[0], r[1], weights), ranges))
        else:
            parts = [_kernels.sweep_cycle_keys(reps, sizes, lo, hi, weights) for lo, hi in ranges]
        for keys, vals in parts:
            for k, v in zip(keys.tolist(), vals.tolist()):
                hist[_decode_key(k, n)] += v
    total = sum(hist.values())
    if total != G.order():
        raise AssertionError(f"histogram total {total} != |G| = {G.order()}")
    return dict(hist)


def _split(total: int, parts: int) -> list[tuple[int, int]]:
    step = -(-total // parts)
    return [(lo, min(total, lo + step)) for lo in range(0, total, step)]


def _element_chunks(G: PermGroup, chunk: int = 1 << 18) -> Iterator[np.ndarray]:
    levels = G.chain.levels
    if not levels:
        yield np.arange(G.degree, dtype=np.int32)[None, :]
        return
    # inner block: deepest levels whose product stays below the chunk size
    k = len(levels)
    inner = np.arange(G.degree, dtype=np.int32)[None, :]
    size = 1
    while k > 0 and size * len(levels[k - 1].trans) <= chunk:
        k -= 1
        size *= len(levels[k].trans)
    for lv in levels[k:]:
        reps = np.array([lv.trans[pt] for pt in sorted(lv.trans)], dtype=np.int32)
        inner = inner[:, reps].reshape(-1, G.degree)
    # inner rows hold u_{L-1}..u_k products; walk outer prefixes in Python
    outer_levels = levels[:k]

    def walk(depth, prefix):
        if depth == len(outer_levels):
            yield prefix[inner]
            return
        lv = outer_levels[depth]
        for pt in sorted(lv.trans):
            u = np.asarray(lv.trans[pt], dtype=np.int32)
            yield from walk(depth + 1, prefix[u])

    yield from walk(0, np.arange(G.degree, dtype=np.int32))


# ---------------------------------------------------------------------------
# generic orbits


def orbit(seed: Hashable, gens: Sequence[Permutation],
          action: Callable[[Hashable, Permutation], Hashable],
          cap: int | None = None) -> tuple[list, dict]:
    """Breadth-first orbit of ``seed``.

    Returns the orbit (in discovery order) and, for each member, a word of
    generator indices whose left-to-right product maps seed to it.
    """
    words = {seed: ()}
    members = [seed]
    queue = deque([seed])
    while queue:
        x = queue.popleft()
        wx = words[x]
        for k, g in enumerate(gens):
            y = action(x, g)
            if y not in words:
                words[y] = wx + (k,)
                members.append(y)
                if cap is not None and len(members) > cap:
                    raise CapExceeded("orbit", len(members), cap)
                queue.append(y)
    return members, words


def word_to_perm(word: Sequence[int], gens: Sequence[Permutation], degree: int) -> Permutation:
    g = tuple(range(degree))
    for k in word:
        g = _mul(g, gens[k].array)
    return Permutation._raw(g)


def act_on_point(x: int, g: Permutation) -> int:
    return g(x)


def act_on_set(s: frozenset, g: Permutation) -> frozenset:
    return frozenset(g(x) for x in s)
