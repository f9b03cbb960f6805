from __future__ import annotations

import pytest

from parthom.catalog import build, normalizer_in_sym, parse_spec
from parthom.closedness import coset_transversal, fuse, is_closed, pxl_probe
from parthom.errors import CapExceeded
from parthom.partorbits import PartitionShape
from parthom.permcore import PermGroup


def shape(n, *support):
    return PartitionShape.from_support(n, support)


@pytest.mark.parametrize("group,support,closed", [
    ("AGL(1,8)", (4,), True),
    ("AGL(1,8)", (3, 2), False),
    ("AGL(1,8)", (2, 2, 2), False),
    ("PSL(2,7)", (4,), False),
    ("PSL(2,11)", (4,), True),
    ("PGL(2,8)", (4,), True),
    ("M10", (4,), True),
    ("M22", (4,), True),
    ("M22", (2, 2, 2), False),
])
def test_verdicts(group, support, closed):
    spec = parse_spec(group)
    got, rep = is_closed(spec, shape(spec.degree, *support))
    assert got is closed
    assert rep.complete


def test_agl18_fusion_counts():
    _, rep = is_closed("AGL(1,8)", "3,2,1...")
    assert (rep.g_orbit_count, rep.n_orbit_count) == (10, 4)
    _, rep = is_closed("M22", "2,2,2,1...")
    assert (rep.g_orbit_count, rep.n_orbit_count) == (11, 10)


def test_alternating_groups_are_closed():
    for n in range(4, 10):
        for support in [(2,), (2, 2), (3, 2), (4,)]:
            if sum(support) <= n:
                assert is_closed(f"A{n}", shape(n, *support))[0]


def test_self_normalizing_group_is_closed():
    spec = parse_spec("M11")
    G = build(spec)
    rep = fuse(G, G, shape(11, 3, 2))
    assert rep.closed and rep.quotient_order == 1
    assert set(rep.census) == {"G"}


def test_psl216_census():
    spec = parse_spec("PSL(2,16)")
    G, N = build(spec), normalizer_in_sym(spec)
    total = {}
    counts = []
    for support in [(4,), (3, 2), (2, 2, 2)]:
        rep = fuse(G, N, shape(17, *support))
        counts.append(rep.g_orbit_count)
        for k, v in rep.census.items():
            total[k] = total.get(k, 0) + v
    assert counts == [3, 19, 72]
    assert total == {"G": 72, "G:2": 18, "G:4": 4}


def test_coset_transversal():
    S5, A5 = build(parse_spec("S5")), build(parse_spec("A5"))
    reps = coset_transversal(S5, A5)
    assert len(reps) == 2 and reps[0].is_identity()


def test_fuse_requires_normality():
    S4 = build(parse_spec("S4"))
    H = PermGroup([S4.generators[0]], 4)
    with pytest.raises(ValueError):
        fuse(H, S4, shape(4, 2))


def test_cap():
    with pytest.raises(CapExceeded):
        is_closed("M22", "2,2,2,1...", cap=1000)


def test_probe_solved_cases():
    assert pxl_probe(9).closed is True
    assert pxl_probe(25).closed is True
    rep = pxl_probe(81)
    assert rep.closed is False and rep.complete


def test_probe_reports_incomplete_on_cap():
    rep = pxl_probe(49, cap=100)
    assert not rep.complete and rep.closed is None


def test_report_json_shape():
    _, rep = is_closed("PSL(2,7)", "4,1...")
    js = rep.to_json()
    assert set(js) == {"group", "normalizer", "shape", "closed", "complete", "orbits", "census"}
    assert js["closed"] is False
    assert sum(o["size"] for o in js["orbits"]) == 70
