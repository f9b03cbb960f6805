"""Regenerate src/parthom/catalog/data/generators.json.

M24 is built on PG(1,23) from PSL(2,23) and one extra permutation fixing 0
and infinity; M23, M22 and M22:2 are point / pair stabilizers inside it. M12
and M11 come from the classical 12-point generators, M11 on 12 points from
the coset action on an L2(11) subgroup, and 2^4:A7 from an A7 inside
GL(4,2). Every record is validated by order before it is written.

    python scripts/make_generators.py [output-path]
"""

import json
import random
import sys
from pathlib import Path

from parthom.catalog.groups import DATA_FAMILIES, agl_d2_generators, projective_generators
from parthom.permcore import Permutation, PermGroup, StabilizerChain

OUT = Path(__file__).resolve().parents[1] / "src/parthom/catalog/data/generators.json"
ORDERS = {name: order for name, _, order in DATA_FAMILIES.values()}


def m24_generators():
    p = 23
    squares = {x * x % p for x in range(1, p)}
    inv9 = pow(9, -1, p)
    img = []
    for x in range(p):
        if x == 0:
            img.append(0)
        elif x in squares:
            img.append(pow(x, 3, p) * inv9 % p)
        else:
            img.append(9 * pow(x, 3, p) % p)
    img.append(p)
    return projective_generators("PSL2", 23) + [Permutation([i + 1 for i in img])]


def stabilizer(G, points):
    """Pointwise stabilizer generators, via a chain whose base starts with points."""
    chain = StabilizerChain(G.degree, (g.array for g in G.generators), base_prefix=points)
    k = len(points)
    gens = chain.levels[k].gens if len(chain.levels) > k else []
    return [Permutation._raw(g) for g in gens], chain


def restrict(perms, keep):
    """Restrict permutations preserving ``keep`` (0-based list) and relabel."""
    index = {x: i for i, x in enumerate(keep)}
    out = []
    for g in perms:
        out.append(Permutation._raw(tuple(index[g.array[x]] for x in keep)))
    return out


def shrink(gens, degree, order, rng, tries=200):
    """Replace a generating set by two random elements generating the same group."""
    G = PermGroup(gens, degree)
    assert G.order() == order
    for _ in range(tries):
        a, b = G.random_element(rng), G.random_element(rng)
        if PermGroup([a, b], degree).order() == order:
            return [a, b]
    return gens


def coset_action(G, H):
    """Action of G on the right cosets of the subgroup H."""
    reps = [Permutation.identity(G.degree)]
    queue = [reps[0]]
    while queue:
        x = queue.pop()
        for g in G.generators:
            y = x * g
            if not any(H.contains(y * ~r) for r in reps):
                reps.append(y)
                queue.append(y)
    images = []
    for g in G.generators:
        img = []
        for r in reps:
            y = r * g
            img.append(next(j for j, s in enumerate(reps) if H.contains(y * ~s)))
        images.append(Permutation._raw(tuple(img)))
    return images


def main(out=OUT):
    rng = random.Random(20151217)
    records = []

    def add(name, gens, degree):
        G = PermGroup(gens, degree, name=name)
        if G.order() != ORDERS[name]:
            raise SystemExit(f"{name}: order {G.order()} != {ORDERS[name]}")
        records.append({"name": name, "degree": degree,
                        "generators": [list(g.images) for g in gens]})
        print(f"{name}: degree {degree}, order {G.order()}, {len(gens)} generators")

    m24 = PermGroup(m24_generators(), 24)
    add("M24", shrink(m24.generators, 24, ORDERS["M24"], rng), 24)

    gens23, _ = stabilizer(m24, [23])
    m23 = restrict(gens23, list(range(23)))
    add("M23", shrink(m23, 23, ORDERS["M23"], rng), 23)

    gens22, _ = stabilizer(m24, [23, 22])
    m22 = shrink(restrict(gens22, list(range(22))), 22, ORDERS["M22"], rng)
    add("M22", m22, 22)
    while True:
        g = m24.random_element(rng)
        if g.array[22] == 23 and g.array[23] == 22:
            break
    swap = restrict([g], list(range(22)))[0]
    add("M22:2", m22 + [swap], 22)

    m12 = [
        Permutation.from_cycles(12, tuple(range(1, 12))),
        Permutation.from_cycles(12, (3, 7, 11, 8), (4, 10, 5, 6)),
        Permutation.from_cycles(12, (1, 12), (2, 11), (3, 6), (4, 8), (5, 9), (7, 10)),
    ]
    add("M12", shrink(m12, 12, ORDERS["M12"], rng), 12)
    m11 = restrict(m12[:2], list(range(11)))
    add("M11", m11, 11)

    M11 = PermGroup(m11, 11)
    while True:
        a, b = M11.random_element(rng), M11.random_element(rng)
        H = PermGroup([a, b], 11)
        if H.order() == 660:
            break
    add("M11@12", coset_action(M11, H), 12)

    agl = PermGroup(agl_d2_generators(4), 16)
    gl_gens, _ = stabilizer(agl, [0])
    GL = PermGroup(gl_gens, 16)
    while True:
        a, b = GL.random_element(rng), GL.random_element(rng)
        if PermGroup([a, b], 16).order() == 2520:
            break
    translation = Permutation._raw(tuple(x ^ 1 for x in range(16)))
    add("2^4:A7", [a, b, translation], 16)

    Path(out).write_text(json.dumps({"groups": records}, indent=1) + "\n")
    print(f"wrote {out}")


if __name__ == "__main__":
    main(*sys.argv[1:])
