"""Cross ratios on the projective line.

Reordering four points permutes their cross ratio through six fractional
maps, so unordered 4-subsets of PG(1,q) up to PGL(2,q) correspond to classes
of GF(q) minus {0, 1} under those maps.
"""

from __future__ import annotations

from .fields import FiniteField, field_make, prime_power


def _six_maps(F: FiniteField, z: int) -> list[int]:
    one = 1
    zm1 = F.sub(z, one)
    omz = F.sub(one, z)
    return [
        z,
        F.inv(z),
        omz,
        F.inv(omz),
        F.div(z, zm1),
        F.div(zm1, z),
    ]


def cross_ratio_class(F: FiniteField, z: int) -> frozenset[int]:
    """Orbit of z under z, 1/z, 1-z, 1/(1-z), z/(z-1), (z-1)/z."""
    if z in (0, 1):
        raise ValueError("cross ratio 0 or 1 is degenerate")
    if not 0 <= z < F.q:
        raise ValueError(f"{z} is not an element of {F}")
    seen = {z}
    todo = [z]
    while todo:
        x = todo.pop()
        for y in _six_maps(F, x):
            if y not in seen:
                seen.add(y)
                todo.append(y)
    return frozenset(seen)


def cross_ratio_classes(F: FiniteField) -> list[frozenset[int]]:
    out = []
    covered: set[int] = set()
    for z in range(2, F.q):
        if z not in covered:
            c = cross_ratio_class(F, z)
            covered |= c
            out.append(c)
    return out


def pgl2_four_subset_orbit_count(q: int) -> int:
    """Orbits of PGL(2,q) on 4-subsets of the projective line."""
    p, s = prime_power(q)
    return len(cross_ratio_classes(field_make(p, s)))
