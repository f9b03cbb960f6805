from __future__ import annotations

import math
import random
from itertools import combinations

import numpy as np
import pytest

import oracles
from parthom.catalog import build, parse_spec
from parthom.errors import CapExceeded, ConsistencyError, DegreeMismatch
from parthom.partorbits import (
    PartialPartition,
    PartitionShape,
    act,
    burnside_orbit_count,
    enumerate_orbits,
    enumerate_partials,
    example28_check,
    fixed_count,
    fixed_count_brute,
    fixed_subset_count,
    integer_partitions,
    is_k_homogeneous,
    n2,
    object_space,
    shapes_of_rank,
    subset_orbit_count,
    total_count,
)
from parthom.permcore import Permutation, PermGroup


def shape(n, *support):
    return PartitionShape.from_support(n, support)


# -- shapes

def test_shape_parse_and_label():
    assert PartitionShape.parse("3,2,1...", 17).label() == "(3,2,1^12)"
    assert PartitionShape.parse("(2,2,2,1,...)", 8) == shape(8, 2, 2, 2)
    assert PartitionShape.parse("4,1^4", 8) == shape(8, 4)
    assert PartitionShape.parse("2,2", 4).label() == "(2,2)"
    assert shape(5, 4).rank == 2
    with pytest.raises(ValueError):
        PartitionShape(4, (1, 3))
    with pytest.raises(ValueError):
        shape(3, 2, 2)


def test_shapes_of_rank_count_partitions():
    # rank n-k shapes are the partitions of k when 2k <= n
    for n, k in [(12, 5), (24, 5), (33, 4), (10, 3)]:
        assert len(shapes_of_rank(n, n - k)) == len(list(integer_partitions(k)))


def test_total_count_examples():
    assert total_count(shape(11, 3)) == 165
    assert total_count(shape(11, 2, 2)) == 990
    assert 165 + 990 == math.comb(11, 3) + 3 * math.comb(11, 4)
    assert total_count(shape(7)) == 1
    assert total_count(shape(6, 2, 2, 2)) == 15


@pytest.mark.parametrize("n,support", [(4, (2,)), (6, (2, 2)), (5, (3, 2)), (7, (3, 2)),
                                       (8, (2, 2, 2)), (9, (3, 3)), (6, (6,)), (8, (4, 4))])
def test_enumerate_partials_matches_brute(n, support):
    got = {frozenset(frozenset(x - 1 for x in b) for b in P)
           for P in enumerate_partials(n, support)}
    assert got == oracles.set_partials(n, support)
    assert len(got) == total_count(shape(n, *support))


def test_enumerate_partials_counts():
    assert len(list(enumerate_partials(4, (2,)))) == 6
    assert len(list(enumerate_partials(6, (2, 2)))) == 45
    assert len(list(enumerate_partials(5, (3, 2)))) == 10


def test_partial_canonical_form_and_act():
    P = PartialPartition([[3, 1], [2, 5]])
    assert P == ((1, 3), (2, 5))
    g = Permutation.from_cycles(3, (2, 3))
    assert act(PartialPartition([[1, 2]]), g) == PartialPartition([[1, 3]])
    with pytest.raises(DegreeMismatch):
        act(PartialPartition([[1, 9]]), g)


def test_space_index_roundtrip():
    sp = object_space(9, (3, 2, 2))
    for i in range(0, sp.total, 97):
        assert sp.from_partial(sp.to_partial(i)) == i


def test_space_cap():
    with pytest.raises(CapExceeded):
        object_space(20, (2, 2, 2, 2), cap=1000)


# -- fixed counts

def test_fixed_count_examples():
    assert fixed_count((5,), (2, 2)) == 0
    assert fixed_count((1,) * 7, (3, 2)) == total_count(shape(7, 3, 2))
    t = oracles.perm_with_type((3, 3))
    assert fixed_count((3, 3), (3, 3)) == oracles.fixed(t, (3, 3))
    t = oracles.perm_with_type((2, 2))
    assert fixed_count((2, 2), (2, 2)) == oracles.fixed(t, (2, 2)) == 3


def _supports(n, max_blocks):
    """Block-size multisets (sizes >= 2) fitting in n points."""
    out = set()
    for m in range(2, n + 1):
        for mu in integer_partitions(m):
            if 1 <= len(mu) <= max_blocks and min(mu) > 1:
                out.add(mu)
    return sorted(out)


@pytest.mark.parametrize("n", range(2, 8))
def test_fixed_count_matches_pure_python_brute(n):
    for t in integer_partitions(n):
        g = oracles.perm_with_type(t)
        for mu in _supports(n, 3):
            assert fixed_count(t, mu) == oracles.fixed(g, mu), (t, mu)


def test_fixed_count_brute_agrees_on_random_elements():
    rng = random.Random(5)
    for _ in range(40):
        n = rng.randint(4, 10)
        img = list(range(1, n + 1))
        rng.shuffle(img)
        g = Permutation(img)
        mu = rng.choice(_supports(n, 3))
        from parthom.permcore import cycle_type
        assert fixed_count(cycle_type(g), mu) == fixed_count_brute(g, mu)


def test_fixed_subset_count():
    for t in integer_partitions(7):
        g = oracles.perm_with_type(t)
        for k in range(8):
            brute = sum(1 for c in combinations(range(7), k) if {g[x] for x in c} == set(c))
            assert fixed_subset_count(t, k) == brute


# -- orbit counts

def test_a4_on_matchings():
    A4 = build(parse_spec("A4"))
    rep = enumerate_orbits(A4, shape(4, 2, 2))
    assert rep.count == 1 and rep.sizes == [3]
    assert burnside_orbit_count(A4, shape(4, 2, 2)) == 1


def test_m11_orbits_on_double_transpositions():
    M11 = build(parse_spec("M11"))
    rep = enumerate_orbits(M11, shape(11, 2, 2))
    assert sum(rep.sizes) == 990
    assert rep.count == burnside_orbit_count(M11, shape(11, 2, 2))
    assert all(7920 % s == 0 for s in rep.sizes)


def test_enumeration_matches_brute_orbits():
    G = build(parse_spec("PSL(2,7)"))
    els = oracles.group_elements([g.array for g in G.generators], 8)
    for support in [(2,), (2, 2), (3, 2), (4,), (2, 2, 2)]:
        objs = oracles.set_partials(8, support)
        brute = oracles.orbits(els, objs)
        rep = enumerate_orbits(G, shape(8, *support))
        assert rep.count == len(brute)
        assert sorted(rep.sizes) == sorted(len(o) for o in brute)


def test_representatives_are_lex_min():
    G = build(parse_spec("AGL(1,8)"))
    rep = enumerate_orbits(G, shape(8, 3, 2))
    els = list(G.elements())
    for P in rep.representatives:
        orbit = {act(P, g) for g in els}
        assert P == min(orbit)


def test_trivial_and_symmetric_groups():
    triv = PermGroup([], 7)
    S7 = build(parse_spec("S7"))
    for support in [(2,), (3, 2), (2, 2, 2), (4, 3)]:
        sh = shape(7, *support)
        assert burnside_orbit_count(triv, sh) == total_count(sh)
        assert burnside_orbit_count(S7, sh) == 1


def test_burnside_rejects_degree_mismatch():
    with pytest.raises(DegreeMismatch):
        burnside_orbit_count(build(parse_spec("S5")), shape(6, 2))


def test_psl216_rank14():
    G = build(parse_spec("PSL(2,16)"))
    counts = [burnside_orbit_count(G, shape(17, *s)) for s in [(4,), (3, 2), (2, 2, 2)]]
    assert counts == [3, 19, 72]


def test_pgammal232_large_shape():
    G = build(parse_spec("PGammaL(2,32)"))
    assert burnside_orbit_count(G, shape(33, 2, 2, 2, 2)) == 9191


# -- homogeneity

def test_homogeneity():
    assert is_k_homogeneous(build(parse_spec("M24")), 5)
    assert is_k_homogeneous(build(parse_spec("M11")), 4)
    assert not is_k_homogeneous(build(parse_spec("M11")), 5)
    assert n2(build(parse_spec("D7"))) == 3
    assert n2(build(parse_spec("C7"))) == 3


def test_subset_methods_agree():
    for name in ["PGL(2,7)", "AGL(1,9)", "M11", "AGL(3,2)"]:
        G = build(parse_spec(name))
        for k in range(0, 5):
            assert subset_orbit_count(G, k, "burnside") == subset_orbit_count(G, k, "enumeration")


def test_psl216_frobenius_square_extension():
    from parthom.catalog import ProjectiveLine, field_make
    from parthom.catalog.groups import projective_generators
    L = ProjectiveLine(field_make(2, 4))
    G = PermGroup(projective_generators("PSL2", 16) + [L.frobenius(2)], 17)
    assert G.order() == 8160
    assert subset_orbit_count(G, 4) == 3
    assert subset_orbit_count(build(parse_spec("PGammaL(2,16)")), 4) == 2


# -- square-multiplier affine groups

@pytest.mark.parametrize("p,expected", [(11, ((3, 18), 21)), (23, ((7, 105), 112)),
                                        (47, ((15, 495), 510))])
def test_example28(p, expected):
    assert example28_check(p) == expected


def test_example28_rejects_bad_primes():
    for p in (13, 15, 7):
        with pytest.raises(ValueError):
            example28_check(p)
