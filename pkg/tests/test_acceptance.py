"""Acceptance suite: one check per criterion, each printing a PASS/FAIL line.

Run with ``pytest tests/test_acceptance.py -v`` (the lines also appear in the
terminal summary) or directly with ``python tests/test_acceptance.py``.
Everything runs, including the M24 sweeps.
"""

from __future__ import annotations

import sys
import time

import pytest

from parthom.catalog import brute_normalizer, build, normalizer_in_sym, parse_spec
from parthom.catalog.groups import catalog_specs
from parthom.cli import RunConfig, table_rows
from parthom.closedness import is_closed
from parthom.partorbits import (
    PartitionShape,
    burnside_orbit_count,
    enumerate_orbits,
    example28_check,
    fixed_count,
    fixed_count_brute,
    integer_partitions,
    is_k_homogeneous,
    total_count,
)
from parthom.permcore import Permutation, PermGroup
from parthom.semigroupkit import (
    characterization_check,
    generated_minus_group,
    greens_check,
    hypotheses,
    idempotent_match,
    map_of_type,
    partition_count,
    required_generator_count,
    sandwich_check,
    two_generation_witness,
)

RESULTS: dict[int, tuple[bool, str, float]] = {}

FULL = RunConfig(slow=True)


def _table_ok(table_id):
    rows = table_rows(table_id, FULL)
    bad = [r["source"] for r in rows if r["status"] != "PASS"]
    return not bad, f"{len(rows) - len(bad)}/{len(rows)} cells" + (f"; bad: {bad}" if bad else "")


def crit_1():
    return _table_ok("4hom")


def crit_2():
    return _table_ok("5hom")


def crit_3():
    return _table_ok("agl2")


def crit_4():
    return _table_ok("3hom")


def crit_5():
    return _table_ok("psl216")


CLOSED = [("AGL(1,8)", (4,)), ("PGL(2,8)", (4,)), ("PGL(2,9)", (4,)), ("M10", (4,)),
          ("PSL(2,11)", (4,)), ("M22", (4,)), ("PXL(2,25)", (4,)), ("PXL(2,49)", (4,))]
NOT_CLOSED = [("PSL(2,7)", (4,)), ("PXL(2,81)", (4,)), ("PXL(2,121)", (4,)),
              ("AGL(1,8)", (3, 2)), ("AGL(1,8)", (2, 2, 2)),
              ("M22", (3, 2)), ("M22", (2, 2, 2))]


def crit_6():
    bad = []
    for cases, want in ((CLOSED, True), (NOT_CLOSED, False)):
        for name, support in cases:
            spec = parse_spec(name)
            got, rep = is_closed(spec, PartitionShape.from_support(spec.degree, support))
            if got is not want or not rep.complete:
                bad.append(f"{name}{support}")
    n = len(CLOSED) + len(NOT_CLOSED)
    return not bad, f"{n - len(bad)}/{n} verdicts" + (f"; bad: {bad}" if bad else "")


def crit_7():
    got = {p: example28_check(p) for p in (11, 23)}
    want = {p: (((p - 2) // 3, (p - 2) * (p - 3) // 4), t) for p, t in ((11, 21), (23, 112))}
    return got == want, f"{got}"


def _supports(n, max_blocks=3):
    out = set()
    for m in range(2, n + 1):
        for mu in integer_partitions(m):
            if len(mu) <= max_blocks and min(mu) > 1:
                out.add(mu)
    return sorted(out)


def _perm_of_type(t):
    img, start = [], 0
    for l in t:
        img += list(range(start + 2, start + l + 1)) + [start + 1]
        start += l
    return Permutation(img)


def crit_8():
    fixed_cases = 0
    bad = []
    for n in range(1, 11):
        for t in integer_partitions(n):
            g = _perm_of_type(t)
            for mu in _supports(n):
                fixed_cases += 1
                if fixed_count(t, mu) != fixed_count_brute(g, mu):
                    bad.append(("fixed", t, mu))
    pairs = 0
    for spec in catalog_specs(17):
        G = build(spec)
        n = spec.degree
        for lam in integer_partitions(n):
            sh = PartitionShape(n, lam)
            if not sh.support or total_count(sh) > 10 ** 6:
                continue
            pairs += 1
            if burnside_orbit_count(G, sh) != enumerate_orbits(G, sh).count:
                bad.append((spec.name, sh.label()))
    return not bad, f"{fixed_cases} fixed-count cases, {pairs} group/shape pairs" + \
        (f"; bad: {bad[:5]}" if bad else "")


def _semigroup_groups(n):
    gs = [build(parse_spec(f"S{n}"))]
    if n >= 3:
        gs.append(build(parse_spec(f"A{n}")))
    if n == 6:
        gs.append(build(parse_spec("PGL(2,5)")))
    return gs


def crit_9():
    done, skipped, bad = 0, 0, []
    for n in range(2, 8):
        for G in _semigroup_groups(n):
            for lam in integer_partitions(n):
                k = len(lam)
                if k == n or 2 * k < n:
                    continue
                t = map_of_type(PartitionShape(n, lam))
                if not hypotheses(G, t).ok:
                    skipped += 1
                    continue
                S = generated_minus_group(G, t)
                checks = (sandwich_check(G, t), characterization_check(t),
                          greens_check(S), idempotent_match(G, t))
                done += 1
                if not all(c is True for c in checks):
                    bad.append((G.name, lam, checks))
    return not bad and done > 0, f"{done} instances pass, {skipped} fail the hypotheses" + \
        (f"; bad: {bad}" if bad else "")


def crit_10():
    done, bad = [], []
    for spec in catalog_specs(24):
        G = build(spec)
        if G.order() == 1 or not is_k_homogeneous(G, 2):
            continue
        pair = two_generation_witness(G)
        if pair is None or PermGroup(list(pair), G.degree).order() != G.order() \
                or not all(G.contains(x) for x in pair):
            bad.append(spec.name)
        else:
            done.append(spec.name)
    must = {"M11", "M12", "M22", "M23", "M24", "PGammaL(2,8)", "PGammaL(2,9)"}
    missing = must - set(done)
    return not bad and not missing, f"{len(done)} groups" + \
        (f"; bad: {bad}" if bad else "") + (f"; missing: {sorted(missing)}" if missing else "")


def crit_11():
    bad = []
    cases = 0
    for n in range(2, 13):
        Sn = build(parse_spec(f"S{n}"))
        for k in range(1, 6):
            if 2 * (n - k) < n:
                continue
            cases += 1
            if required_generator_count(Sn, n - k) != partition_count(k):
                bad.append((f"S{n}", k))
    for p in (3, 5, 7, 11, 13, 17, 19, 23):
        cases += 1
        if required_generator_count(build(parse_spec(f"C{p}")), p - 1) != (p - 1) // 2:
            bad.append(f"C{p}")
    cases += 1
    m24 = required_generator_count(build(parse_spec("M24")), 19)
    if m24 != 77:
        bad.append(("M24", m24))
    return not bad, f"{cases} cases, M24 rank 19 -> {m24}" + (f"; bad: {bad}" if bad else "")


def crit_12():
    bad = []
    specs = [s for s in catalog_specs(9)]
    for spec in specs:
        G = build(spec)
        N = normalizer_in_sym(spec)
        B = brute_normalizer(G)
        same = B.order() == N.order() and B.is_subgroup_of(N) and N.is_subgroup_of(B)
        if not same:
            bad.append((spec.name, B.order(), N.order()))
    return not bad, f"{len(specs)} groups" + (f"; bad: {bad}" if bad else "")


CRITERIA = {
    1: ("orbits on (n-4)-partitions, 4-homogeneous groups", crit_1),
    2: ("orbits on (n-5)-partitions, M12 and M24", crit_2),
    3: ("AGL(d,2) on (n-3)-partitions", crit_3),
    4: ("3-homogeneous groups on (n-3)-partitions", crit_4),
    5: ("PSL(2,16) orbits and stabilizer census", crit_5),
    6: ("closed-pair verdicts", crit_6),
    7: ("square-multiplier affine groups, p = 11, 23", crit_7),
    8: ("oracle equivalence: fixed counts and Burnside vs enumeration", crit_8),
    9: ("semigroup suite n <= 7", crit_9),
    10: ("2-generation of 2-homogeneous groups", crit_10),
    11: ("required generator counts", crit_11),
    12: ("normalizer oracle, degree <= 9", crit_12),
}


def line(i):
    ok, detail, dt = RESULTS[i]
    return f"CRITERION {i:2d} {'PASS' if ok else 'FAIL'}  {CRITERIA[i][0]}  [{detail}] ({dt:.1f}s)"


def evaluate(i):
    t0 = time.perf_counter()
    try:
        ok, detail = CRITERIA[i][1]()
    except Exception as exc:  # report, do not hide
        ok, detail = False, f"{type(exc).__name__}: {exc}"
    RESULTS[i] = (ok, detail, time.perf_counter() - t0)
    print(line(i), flush=True)
    return RESULTS[i]


@pytest.mark.slow
@pytest.mark.parametrize("i", sorted(CRITERIA))
def test_criterion(i):
    ok, detail, _ = evaluate(i)
    assert ok, detail


if __name__ == "__main__":
    failed = [i for i in sorted(CRITERIA) if not evaluate(i)[0]]
    sys.exit(1 if failed else 0)
