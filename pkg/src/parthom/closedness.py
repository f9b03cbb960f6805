"""Closed pairs: does the normalizer of G fuse any G-orbits on a shape?

The G-orbit partition comes from ``partorbits``; applying the normalizer's
generators to one representative per G-orbit is enough to find the N-orbits,
because N permutes the G-orbits. Stabilizers in N/G are read off a coset
transversal of N mod G.
"""

from __future__ import annotations

import time
from collections import Counter
from dataclasses import dataclass, field

import numpy as np

from . import _kernels
from .catalog import GroupSpec, build, normalizer_in_sym, parse_spec
from .catalog.normalizers import normalizes
from .errors import CapExceeded, ConsistencyError
from .partorbits import DEFAULT_CAP, PartitionShape, enumerate_orbits, object_space, total_count
from .permcore import Permutation, PermGroup

PROBE_CAP = 80_000_000


@dataclass
class OrbitFusion:
    rep: object
    size: int
    n_orbit: int
    stabilizer_index: int       # order of the stabilizer subgroup in N/G
    stabilizer_label: str


@dataclass
class FusionReport:
    group: str
    normalizer: str
    shape: PartitionShape
    quotient_order: int
    orbits: list[OrbitFusion] = field(default_factory=list)
    complete: bool = True
    elapsed: float = 0.0

    @property
    def g_orbit_count(self) -> int:
        return len(self.orbits)

    @property
    def n_orbit_count(self) -> int:
        return len({o.n_orbit for o in self.orbits})

    @property
    def closed(self) -> bool | None:
        if not self.complete:
            return None
        return self.n_orbit_count == self.g_orbit_count

    @property
    def census(self) -> dict[str, int]:
        c = Counter(o.stabilizer_label for o in self.orbits)
        return dict(sorted(c.items(), key=lambda kv: (len(kv[0]), kv[0])))

    def to_json(self) -> dict:
        return {
            "group": self.group,
            "normalizer": self.normalizer,
            "shape": self.shape.label(),
            "closed": self.closed,
            "complete": self.complete,
            "orbits": [
                {"rep": [list(b) for b in o.rep], "size": o.size,
                 "stabilizer_index": o.stabilizer_index}
                for o in self.orbits
            ],
            "census": self.census,
        }


def coset_transversal(N: PermGroup, G: PermGroup) -> list[Permutation]:
    """Right coset representatives of G in N, identity first."""
    reps = [Permutation.identity(N.degree)]
    queue = [reps[0]]
    index = N.order() // G.order()
    while queue and len(reps) < index:
        x = queue.pop()
        for g in N.generators:
            y = x * g
            if not any(G.contains(y * ~r) for r in reps):
                reps.append(y)
                queue.append(y)
    if len(reps) != index:
        raise ConsistencyError(f"found {len(reps)} cosets, expected {index}")
    return reps


def _coset_of(x: Permutation, reps: list[Permutation], G: PermGroup) -> int:
    for i, r in enumerate(reps):
        if G.contains(x * ~r):
            return i
    raise ConsistencyError("element outside every coset")


def _label(order: int) -> str:
    return "G" if order == 1 else f"G:{order}"


def fuse(G: PermGroup, N: PermGroup, shape: PartitionShape, cap: int = DEFAULT_CAP) -> FusionReport:
    start = time.perf_counter()
    if not G.is_subgroup_of(N) or not normalizes(N, G):
        raise ValueError(f"{G.name} is not normal in {N.name}")
    total = total_count(shape)
    if total > cap:
        raise CapExceeded(f"partials of shape {shape.label()}", total, cap)
    rep_g = enumerate_orbits(G, shape, cap)
    space = object_space(shape.n, shape.support, cap)
    labels = rep_g.labels
    k = rep_g.count
    # G-orbit number of each root label
    orbit_of_root = np.full(space.total, -1, dtype=np.int64)
    orbit_of_root[labels[rep_g.rep_index]] = np.arange(k)

    def orbit_id(idx: np.ndarray) -> np.ndarray:
        return orbit_of_root[labels[idx]]

    rep_rows = space.rows[rep_g.rep_index]
    parent = np.arange(k, dtype=np.int64)
    for g in N.generators:
        _kernels.union_images(parent, orbit_id(space.images(g, rep_rows)))
    n_label = _kernels.flatten_labels(parent)
    n_ids = {int(r): i for i, r in enumerate(sorted(set(n_label.tolist())))}

    reps = coset_transversal(N, G)
    stab = []
    for r in reps:
        stab.append(orbit_id(space.images(r, rep_rows)) == np.arange(k))
    stab = np.array(stab)  # (cosets, orbits)
    orbits = []
    for j in range(k):
        fixing = [i for i in range(len(reps)) if stab[i, j]]
        for a in fixing:
            for b in fixing:
                if _coset_of(reps[a] * reps[b], reps, G) not in fixing:
                    raise ConsistencyError("cosets fixing an orbit do not form a subgroup")
        orbits.append(OrbitFusion(rep_g.representatives[j], rep_g.sizes[j],
                                  n_ids[int(n_label[j])], len(fixing), _label(len(fixing))))
    fused = Counter(o.n_orbit for o in orbits)
    for o in orbits:
        if fused[o.n_orbit] * o.stabilizer_index != len(reps):
            raise ConsistencyError("orbit-stabilizer count fails in N/G")
    return FusionReport(G.name, N.name, shape, len(reps), orbits,
                        elapsed=time.perf_counter() - start)


def _as_spec(spec) -> GroupSpec:
    return parse_spec(spec) if isinstance(spec, str) else spec


def is_closed(spec, shape: PartitionShape | str, cap: int = DEFAULT_CAP) -> tuple[bool, FusionReport]:
    spec = _as_spec(spec)
    G = build(spec)
    if isinstance(shape, str):
        shape = PartitionShape.parse(shape, G.degree)
    rep = fuse(G, normalizer_in_sym(spec), shape, cap)
    return rep.closed, rep


def pxl_probe(q: int, cap: int = PROBE_CAP) -> FusionReport:
    """Closedness of PXL(2,q) on (4,1,...) partitions. Reports instead of
    asserting; on a cap overflow the report is flagged incomplete."""
    spec = GroupSpec("PXL2", q)
    shape = PartitionShape.from_support(spec.degree, (4,))
    try:
        return is_closed(spec, shape, cap)[1]
    except CapExceeded:
        return FusionReport(spec.name, f"PGammaL(2,{q})", shape, 2, [], complete=False)
