from __future__ import annotations

import random

import numpy as np
import pytest

import oracles
from parthom.catalog import build, parse_spec
from parthom.partorbits import PartitionShape, integer_partitions
from parthom.permcore import Permutation, PermGroup
from parthom.semigroupkit import (
    TransformationMap,
    characterization_check,
    closure,
    generated_minus_group,
    greens_check,
    hypotheses,
    idempotent_from,
    idempotent_match,
    idempotent_power,
    kernel_witness,
    map_of_type,
    normalizer_of_semigroup_scan,
    partition_count,
    required_generator_count,
    sandwich_check,
    two_generation_witness,
    verification_report,
)


def T(*images):
    return TransformationMap(images)


def rand_map(rng, n):
    return TransformationMap([rng.randint(1, n) for _ in range(n)])


def shape(n, *support):
    return PartitionShape.from_support(n, support)


# -- maps

def test_map_basics():
    t = T(1, 1, 3, 4)
    assert t.rank == 3 and t.image == frozenset({1, 3, 4})
    assert t.kernel_type == shape(4, 2)
    assert t.is_idempotent()
    p = TransformationMap.from_permutation(Permutation.from_cycles(4, (1, 2)))
    assert p.is_permutation()
    # left to right: 2 -> 1 under p, then 1 -> 1 under t
    assert (p * t)(2) == 1
    with pytest.raises(ValueError):
        T(0, 1)


def test_associativity_and_rank():
    rng = random.Random(2)
    for _ in range(200):
        n = rng.randint(2, 8)
        a, b, c = (rand_map(rng, n) for _ in range(3))
        assert (a * b) * c == a * (b * c)
        assert (a * b).rank <= min(a.rank, b.rank)


# -- closures

def test_closure_examples():
    assert len(closure([TransformationMap.identity(4)])) == 1
    S3 = build(parse_spec("S3"))
    assert len(closure(S3.generators + [T(1, 1, 3)])) == 27
    S4 = build(parse_spec("S4"))
    assert len(closure(S4.generators)) == 24


def test_closure_matches_naive():
    rng = random.Random(9)
    for _ in range(15):
        n = rng.randint(3, 5)
        gens = [rand_map(rng, n) for _ in range(rng.randint(1, 3))]
        naive = oracles.semigroup([tuple(x - 1 for x in g.images) for g in gens])
        S = closure(gens)
        assert {tuple(x - 1 for x in m.images) for m in S.maps()} == naive


def test_closure_is_idempotent():
    S = closure([T(2, 3, 1, 4, 5), T(1, 1, 3, 4, 5), T(5, 4, 3, 2, 1)])
    assert closure(S.maps()) == S


# -- idempotents

def test_idempotent_from():
    assert idempotent_from([[1], [2], [3]], [1, 2, 3]) == TransformationMap.identity(3)
    e = idempotent_from([[1, 2], [3], [4]], [1, 3, 4])
    assert e == T(1, 1, 3, 4) and e * e == e
    with pytest.raises(ValueError):
        idempotent_from([[1, 2], [3]], [1, 2])


def test_idempotent_from_random():
    rng = random.Random(4)
    for _ in range(50):
        n = rng.randint(2, 8)
        pts = list(range(1, n + 1))
        rng.shuffle(pts)
        cuts = sorted(rng.sample(range(1, n), rng.randint(0, n - 1)))
        blocks = [pts[a:b] for a, b in zip([0] + cuts, cuts + [n])]
        S = [rng.choice(b) for b in blocks]
        e = idempotent_from(blocks, S)
        assert e * e == e and e.image == frozenset(S)
        assert {frozenset(k) for k in e.kernel} == {frozenset(b) for b in blocks}


def test_idempotent_power():
    t = T(1, 1, 3, 4)
    assert idempotent_power(t) == t
    p = TransformationMap.from_permutation(Permutation.from_cycles(5, (1, 2, 3), (4, 5)))
    assert idempotent_power(p) == TransformationMap.identity(5)
    e = idempotent_power(T(2, 3, 4, 5, 5))
    assert e * e == e
    rng = random.Random(8)
    for _ in range(100):
        t = rand_map(rng, 7)
        e = idempotent_power(t)
        assert e * e == e


# -- hypotheses and checks

def test_hypotheses():
    C7 = build(parse_spec("C7"))
    h = hypotheses(C7, map_of_type(shape(7, 2)))
    assert not h.one_orbit and not h.ok
    S6 = build(parse_spec("S6"))
    assert hypotheses(S6, map_of_type(shape(6, 2, 2))).ok


def test_sandwich_examples():
    S6 = build(parse_spec("S6"))
    assert sandwich_check(S6, map_of_type(shape(6, 2, 2))) is True
    PGL = build(parse_spec("PGL(2,5)"))
    t = map_of_type(shape(6, 2, 2))
    if hypotheses(PGL, t).ok:
        assert sandwich_check(PGL, t) is True
    else:
        assert sandwich_check(PGL, t) is None
    C7 = build(parse_spec("C7"))
    assert sandwich_check(C7, map_of_type(shape(7, 2))) is None


def test_generated_minus_group_has_no_units():
    G = build(parse_spec("A5"))
    S = generated_minus_group(G, map_of_type(shape(5, 2)))
    assert all(m.rank < 5 for m in S.maps())


@pytest.mark.parametrize("n,support", [(4, (2,)), (5, (3, 2)), (5, (2, 2)), (6, (2,))])
def test_characterization(n, support):
    assert characterization_check(map_of_type(shape(n, *support)))


def test_characterization_rank5_is_all_singular():
    t = map_of_type(shape(6, 2))
    S = generated_minus_group(build(parse_spec("S6")), t)
    assert len(S) == 6 ** 6 - 720


@pytest.mark.parametrize("n,support", [(4, (2,)), (5, (2, 2)), (5, (3,))])
def test_greens_exhaustive(n, support):
    S = generated_minus_group(build(parse_spec(f"S{n}")), map_of_type(shape(n, *support)))
    assert greens_check(S)


def test_greens_sampled_n6():
    S = generated_minus_group(build(parse_spec("A6")), map_of_type(shape(6, 2, 2)))
    assert greens_check(S, samples=8, seed=3)


def test_idempotent_match_examples():
    assert idempotent_match(build(parse_spec("S5")), map_of_type(shape(5, 2, 2)))
    assert idempotent_match(build(parse_spec("PGL(2,5)")), map_of_type(shape(6, 2)))


def test_kernel_witness():
    S6 = build(parse_spec("S6"))
    t = map_of_type(shape(6, 2, 2))
    gh = kernel_witness(S6, t, [[2, 5], [1, 6], [3], [4]], [1, 2, 3, 4])
    assert gh is not None
    g, h = gh
    w = TransformationMap.from_permutation(~g) * t * TransformationMap.from_permutation(h)
    assert w.image == frozenset({1, 2, 3, 4})
    C6 = PermGroup([Permutation.from_cycles(6, (1, 2, 3, 4, 5, 6))], 6)
    assert kernel_witness(C6, map_of_type(shape(6, 2)), [[1, 3], [2], [4], [5], [6]],
                          [1, 2, 4, 5, 6]) is None


def test_two_generation():
    for name, order in [("S5", 120), ("M11", 7920), ("PGammaL(2,8)", 1512)]:
        G = build(parse_spec(name))
        a, b = two_generation_witness(G)
        assert PermGroup([a, b], G.degree).order() == order
        assert G.contains(a) and G.contains(b)
    assert two_generation_witness(build(parse_spec("C7"))) is None


def test_three_generators_suffice():
    # <a, b, t> = <G, t> for a generating pair (a, b) of G
    G = build(parse_spec("PGL(2,5)"))
    a, b = two_generation_witness(G)
    t = map_of_type(shape(6, 2))
    assert closure([a, b, t]) == closure(G.generators + [t])


def test_required_generator_counts():
    for n in range(6, 13):
        Sn = build(parse_spec(f"S{n}"))
        for k in range(1, min(5, n // 2) + 1):
            assert required_generator_count(Sn, n - k) == partition_count(k)
    for p in (3, 5, 7, 11, 13):
        assert required_generator_count(build(parse_spec(f"C{p}")), p - 1) == (p - 1) // 2
    assert partition_count(5) == 7 == len(list(integer_partitions(5)))


def test_normalizer_scan():
    for n in (4, 5):
        Sn = build(parse_spec(f"S{n}"))
        S = closure(Sn.generators + [map_of_type(shape(n, 2))])
        assert normalizer_of_semigroup_scan(S).order() == len(list(Sn.elements()))
    A4 = build(parse_spec("A4"))
    S = closure(A4.generators + [map_of_type(shape(4, 2))])
    N = normalizer_of_semigroup_scan(S)
    assert A4.is_subgroup_of(N) and 12 <= N.order() <= 24
    assert normalizer_of_semigroup_scan(closure([TransformationMap.identity(4)])).order() == 24


def test_verification_report_schema():
    rec = verification_report(build(parse_spec("S5")), map_of_type(shape(5, 2, 2)))
    assert set(rec) == {"group", "degree", "kernel_type", "hypotheses", "checks", "sizes"}
    assert all(v is True for v in rec["checks"].values())
    bad = verification_report(build(parse_spec("C7")), map_of_type(shape(7, 2)))
    assert all(v is None for v in bad["checks"].values())
