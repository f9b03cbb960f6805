"""Normalizers of catalog groups in the full symmetric group.

``normalizer_in_sym`` is constructive: every family maps to a known
overgroup. ``brute_normalizer`` scans all of S_n and is only an oracle for
small degree.
"""

from __future__ import annotations

import math
from itertools import permutations

import numpy as np

from ..errors import ConsistencyError, UnsupportedGroup
from ..permcore import Permutation, PermGroup
from .fields import prime_power
from .groups import DATA_FAMILIES, GroupSpec, build

BRUTE_MAX_DEGREE = 9

_PROJECTIVE = ("PSL2", "PGL2", "PSigmaL2", "PXL2", "PGammaL2")
_SELF = ("Sym", "AGammaL1", "AGLd2", "Mathieu11", "Mathieu11on12", "Mathieu12",
         "Mathieu22c2", "Mathieu23", "Mathieu24", "TwoFour_A7")


def normalizer_spec(spec: GroupSpec) -> GroupSpec:
    """Catalog spec of N_{S_n}(G)."""
    f, x = spec.family, spec.param
    if f in _PROJECTIVE:
        return GroupSpec("PGammaL2", x)
    if f == "AGL1":
        return GroupSpec("AGammaL1", x)
    if f == "Alt":
        return GroupSpec("Sym", x)
    if f in ("Cyclic", "Dihedral"):
        return GroupSpec("AGL1", x)
    if f == "Mathieu22":
        return GroupSpec("Mathieu22c2")
    if f in _SELF:
        return spec
    raise UnsupportedGroup(f"no normalizer rule for {spec}")


def normalizes(N: PermGroup, G: PermGroup) -> bool:
    """True iff every generator of N conjugates every generator of G into G."""
    for x in N.generators:
        xi = ~x
        for y in G.generators:
            if not G.contains(xi * y * x):
                return False
    return True


def normalizer_in_sym(spec: GroupSpec) -> PermGroup:
    G = build(spec)
    N = build(normalizer_spec(spec))
    if not G.is_subgroup_of(N) or not normalizes(N, G):
        raise ConsistencyError(f"{N.name} does not normalize {G.name}")
    return N


def _all_perms(n: int) -> np.ndarray:
    return np.array(list(permutations(range(n))), dtype=np.int8)


def _keys(rows: np.ndarray, n: int) -> np.ndarray:
    w = n ** np.arange(n - 1, -1, -1, dtype=np.int64)
    return rows.astype(np.int64) @ w


def brute_normalizer(G: PermGroup) -> PermGroup:
    """N_{S_n}(G) by testing every permutation of S_n (n <= 9)."""
    n = G.degree
    if n > BRUTE_MAX_DEGREE:
        raise ValueError(f"brute_normalizer refuses degree {n} > {BRUTE_MAX_DEGREE}")
    cand = _all_perms(n)
    inv = np.argsort(cand, axis=1).astype(np.int8)
    members = np.sort(_keys(G.element_array(cap=math.factorial(n)), n))
    ok = np.ones(len(cand), dtype=bool)
    for y in G.generators:
        ya = np.asarray(y.array, dtype=np.int8)
        # i -> i g^-1 -> (i g^-1) y -> ((i g^-1) y) g
        conj = np.take_along_axis(cand, ya[inv].astype(np.int64), axis=1)
        ok &= np.isin(_keys(conj, n), members)
    found = cand[ok]
    gens: list[Permutation] = []
    H = PermGroup([], n)
    for row in found:
        g = Permutation._raw(tuple(int(v) for v in row))
        if not H.contains(g):
            gens.append(g)
            H = PermGroup(gens, n, name=f"N({G.name})")
    if H.order() != len(found):
        raise ConsistencyError("normalizing permutations do not form a group")
    return H
