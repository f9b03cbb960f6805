"""Compiled inner loops (numba).

Everything here works on 0-based int32 arrays. The Python-facing wrappers
live in permcore / partorbits; this module only holds the hot loops.
"""

import numpy as np
from numba import njit


@njit(cache=True, nogil=True)
def _cycle_key(g, seen, weights):
    n = g.shape[0]
    for i in range(n):
        seen[i] = False
    key = 0
    for i in range(n):
        if seen[i]:
            continue
        length = 0
        j = i
        while not seen[j]:
            seen[j] = True
            j = g[j]
            length += 1
        key += weights[length]
    return key


@njit(cache=True, nogil=True)
def sweep_cycle_keys(reps, sizes, lo, hi, weights):
    """Walk the transversal tree and tally cycle-type keys.

    reps[level, k] is the k-th coset representative at that level; an
    element is u_{L-1} * ... * u_0 acting left to right. Only top-level
    representatives with index in [lo, hi) are visited, so disjoint ranges
    partition the group. Returns (keys, counts).
    """
    levels = reps.shape[0]
    n = reps.shape[2]
    prefix = np.empty((levels + 1, n), dtype=np.int32)
    for x in range(n):
        prefix[0, x] = x
    idx = np.zeros(levels, dtype=np.int64)
    seen = np.zeros(n, dtype=np.bool_)
    marks = np.zeros(n, dtype=np.int32)
    stamp = np.int32(0)
    # open-addressing tally; cycle types of one group number far below the
    # table size, and the key 0 never occurs (every type has a nonzero part)
    size = 1 << 14
    mask = size - 1
    table_keys = np.zeros(size, dtype=np.int64)
    table_vals = np.zeros(size, dtype=np.int64)

    if levels == 0:
        k = _cycle_key(prefix[0], seen, weights)
        _tally(table_keys, table_vals, mask, k)
    else:
        depth = 0
        idx[0] = lo
        while depth >= 0:
            limit = hi if depth == 0 else sizes[depth]
            if idx[depth] >= limit:
                depth -= 1
                if depth >= 0:
                    idx[depth] += 1
                continue
            u = reps[depth, idx[depth]]
            if depth == levels - 1:
                stamp += 1
                if stamp == 0x7FFFFFFF:
                    stamp = 1
                    marks[:] = 0
                g = prefix[depth + 1]
                for x in range(n):
                    g[x] = prefix[depth, u[x]]
                k = _stamped_key(g, marks, stamp, weights)
                _tally(table_keys, table_vals, mask, k)
                idx[depth] += 1
            else:
                for x in range(n):
                    prefix[depth + 1, x] = prefix[depth, u[x]]
                depth += 1
                idx[depth] = 0

    used = table_vals > 0
    return table_keys[used], table_vals[used]


@njit(cache=True, nogil=True)
def _stamped_key(g, marks, stamp, weights):
    # like _cycle_key, but a point is seen iff marks[x] == stamp
    n = g.shape[0]
    key = 0
    for i in range(n):
        if marks[i] == stamp:
            continue
        length = 0
        j = i
        while marks[j] != stamp:
            marks[j] = stamp
            j = g[j]
            length += 1
        key += weights[length]
    return key


@njit(cache=True, nogil=True)
def _tally(table_keys, table_vals, mask, k):
    h = (k * 2654435761) >> 7
    slot = h & mask
    while True:
        if table_vals[slot] == 0:
            table_keys[slot] = k
            table_vals[slot] = 1
            return
        if table_keys[slot] == k:
            table_vals[slot] += 1
            return
        slot = (slot + 1) & mask


@njit(cache=True, nogil=True)
def cycle_count_rows(elements):
    """Per-row cycle-length counts: out[r, l] = #cycles of length l."""
    m, n = elements.shape
    out = np.zeros((m, n + 1), dtype=np.int32)
    seen = np.zeros(n, dtype=np.bool_)
    for r in range(m):
        g = elements[r]
        for i in range(n):
            seen[i] = False
        for i in range(n):
            if seen[i]:
                continue
            length = 0
            j = i
            while not seen[j]:
                seen[j] = True
                j = g[j]
                length += 1
            out[r, length] += 1
    return out


@njit(cache=True, nogil=True)
def _find(parent, x):
    while parent[x] != x:
        parent[x] = parent[parent[x]]
        x = parent[x]
    return x


@njit(cache=True, nogil=True)
def union_images(parent, images):
    """Union every object i with images[i] (one generator's action)."""
    for i in range(images.shape[0]):
        a = _find(parent, i)
        b = _find(parent, images[i])
        if a != b:
            if a < b:
                parent[b] = a
            else:
                parent[a] = b


@njit(cache=True, nogil=True)
def flatten_labels(parent):
    """Return root label per object (roots are the minimal index of a class)."""
    out = np.empty(parent.shape[0], dtype=np.int64)
    for i in range(parent.shape[0]):
        out[i] = _find(parent, i)
    return out


@njit(cache=True, nogil=True)
def _canon_row(buf, starts, sizes, mults):
    # sort points inside each block, then equal-size blocks by their minimum
    for gi in range(starts.shape[0]):
        st = starts[gi]
        s = sizes[gi]
        m = mults[gi]
        for b in range(m):
            base = st + b * s
            for i in range(base + 1, base + s):
                v = buf[i]
                j = i - 1
                while j >= base and buf[j] > v:
                    buf[j + 1] = buf[j]
                    j -= 1
                buf[j + 1] = v
        for b in range(1, m):
            j = b
            while j > 0 and buf[st + (j - 1) * s] > buf[st + j * s]:
                lo = st + (j - 1) * s
                for c in range(s):
                    t = buf[lo + c]
                    buf[lo + c] = buf[lo + s + c]
                    buf[lo + s + c] = t
                j -= 1


@njit(cache=True, nogil=True)
def image_keys(src, perm, starts, sizes, mults, binom):
    """Key of the canonical image of every row under perm: the colex ranks
    of the blocks read as mixed-radix digits (radix C(n, block size))."""
    N, W = src.shape
    n = binom.shape[0] - 1
    out = np.empty(N, dtype=np.int64)
    buf = np.empty(W, dtype=np.int64)
    for r in range(N):
        for c in range(W):
            buf[c] = perm[src[r, c]]
        _canon_row(buf, starts, sizes, mults)
        key = 0
        for gi in range(starts.shape[0]):
            s = sizes[gi]
            radix = binom[n, s]
            for b in range(mults[gi]):
                base = starts[gi] + b * s
                rank = 0
                for c in range(s):
                    rank += binom[buf[base + c], c + 1]
                key = key * radix + rank
        out[r] = key
    return out


@njit(cache=True, nogil=True)
def image_colex(src, perm, binom):
    """Colex rank of the image of every k-subset row under perm."""
    N, k = src.shape
    out = np.empty(N, dtype=np.int64)
    buf = np.empty(k, dtype=np.int64)
    for r in range(N):
        for c in range(k):
            v = perm[src[r, c]]
            j = c - 1
            while j >= 0 and buf[j] > v:
                buf[j + 1] = buf[j]
                j -= 1
            buf[j + 1] = v
        idx = 0
        for c in range(k):
            idx += binom[buf[c], c + 1]
        out[r] = idx
    return out
