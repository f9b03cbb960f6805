"""Command-line front end.

    parthom <command> [args] [--format F] [--threads N] [--cap M] [--seed S]
                      [--slow] [--data PATH]

Exit codes: 0 ok, 1 expected-value mismatch, 2 hypothesis failure,
3 resource cap, 4 input error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
import time
from dataclasses import dataclass

from .catalog import GroupSpec, build, parse_spec
from .catalog.groups import set_data_path
from .closedness import PROBE_CAP, fuse, is_closed, pxl_probe
from .catalog.normalizers import normalizer_in_sym
from .errors import CapExceeded, ConsistencyError, IntegrityError, ParthomError, UnsupportedGroup
from .partorbits import (
    DEFAULT_CAP,
    PartitionShape,
    burnside_orbit_count,
    enumerate_orbits,
    example28_check,
    subset_orbit_count,
    total_count,
)
from .semigroupkit import (
    map_of_type,
    partition_count,
    required_generator_count,
    two_generation_witness,
    verification_report,
)

OK, MISMATCH, HYPOTHESIS, CAP, INPUT = 0, 1, 2, 3, 4

# enumerate when a shape has at most this many partials, else use Burnside
ENUM_LIMIT = 4_000_000


class InputError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(INPUT, f"{self.prog}: error: {message}\n")


@dataclass
class RunConfig:
    fmt: str = "text"
    threads: int = 1
    cap: int = DEFAULT_CAP
    seed: int = 0
    slow: bool = False
    data: str | None = None
    timing: bool = False
    budget: int = 400


# ---------------------------------------------------------------------------
# embedded expected values; shapes are given by their non-singleton blocks

_4HOM = {
    "PSL(2,8)": [1, 4, 4, 12, 5],
    "PGammaL(2,8)": [1, 2, 2, 4, 3],
    "M11": [2, 3, 2, 8, 6],
    "M12": [1, 2, 2, 3, 5],
    "M23": [2, 4, 3, 11, 18],
    "M24": [1, 2, 2, 3, 7],
    "PGammaL(2,32)": [3, 112, 82, 2772, 9191],
}
_4HOM_SHAPES = [(5,), (4, 2), (3, 3), (3, 2, 2), (2, 2, 2, 2)]

_5HOM = {
    "M12": [2, 2, 2, 5, 5, 8, 6],
    "M24": [2, 3, 3, 8, 8, 22, 31],
}
_5HOM_SHAPES = [(6,), (5, 2), (4, 3), (4, 2, 2), (3, 3, 2), (3, 2, 2, 2), (2, 2, 2, 2, 2)]

_3SHAPES = [(4,), (3, 2), (2, 2, 2)]

_AGL2 = {
    "AGL(3,2)": [2, 2, 3],
    "AGL(4,2)": [2, 3, 6],
    "AGL(5,2)": [2, 3, 7],
}

_3HOM = {
    "AGL(1,8)": [2, 10, 11],
    "AGammaL(1,8)": [2, 4, 5],
    "PSL(2,7)": [3, 4, 7],
    "PGL(2,7)": [2, 3, 5],
    "PSL(2,8)": [1, 4, 7],
    "PGammaL(2,8)": [1, 2, 3],
    "PGL(2,9)": [2, 5, 12],
    "M10": [2, 5, 9],
    "PGammaL(2,9)": [2, 4, 8],
    "M11@11": [1, 2, 4],
    "M11@12": [2, 4, 6],
    "M12": [1, 1, 3],
    "2^4:A7": [2, 4, 10],
    "M22": [2, 5, 11],
    "M22:2": [2, 4, 10],
    "M23": [1, 2, 3],
    "M24": [1, 1, 2],
    "PGammaL(2,32)": [1, 16, 127],
}

# orbits, then counts with stabilizer G, G:2, G:4 in N/G
_PSL216 = {
    (4,): (3, {"G": 0, "G:2": 2, "G:4": 1}),
    (3, 2): (19, {"G": 12, "G:2": 6, "G:4": 1}),
    (2, 2, 2): (72, {"G": 60, "G:2": 10, "G:4": 2}),
}

_EXAMPLE28 = {11: ((3, 18), 21), 23: ((7, 105), 112)}

# only cells whose Burnside sweep needs the M24 cycle-type histogram are slow
_SLOW_GROUPS = {"M24"}


def _shape(n: int, support) -> PartitionShape:
    return PartitionShape.from_support(n, support)


def _count(G, shape: PartitionShape, cfg: RunConfig) -> tuple[int, str]:
    if total_count(shape) <= min(ENUM_LIMIT, cfg.cap):
        return enumerate_orbits(G, shape, cfg.cap).count, "enumeration"
    return burnside_orbit_count(G, shape, cfg.threads), "burnside"


def _row(table, group, degree, shape, count, expected, method, elapsed, cfg):
    row = {
        "table": table,
        "group": group,
        "degree": degree,
        "shape": shape,
        "count": count,
        "expected": expected,
        "status": "PASS" if count == expected else "FAIL",
        "source": f"{table}/{group}/{shape}",
        "method": method,
    }
    if cfg.timing:
        row["elapsed"] = round(elapsed, 3)
    return row


def _skipped(table, group, degree, shape, expected):
    return {
        "table": table, "group": group, "degree": degree, "shape": shape,
        "count": None, "expected": expected, "status": "SKIP",
        "source": f"{table}/{group}/{shape}", "method": "needs --slow",
    }


def _orbit_table(table, data, shape_of, cfg: RunConfig) -> list[dict]:
    rows = []
    for name, expected in data.items():
        spec = parse_spec(name)
        shapes = [_shape(spec.degree, s) for s in shape_of(spec)]
        needs_slow = name in _SLOW_GROUPS and any(total_count(s) > ENUM_LIMIT for s in shapes)
        if needs_slow and not cfg.slow:
            for sh, e in zip(shapes, expected):
                rows.append(_skipped(table, name, spec.degree, sh.label(), e))
            rows.append(_skipped(table, name, spec.degree, "total", sum(expected)))
            continue
        G = build(spec)
        got = []
        for sh, e in zip(shapes, expected):
            t0 = time.perf_counter()
            c, method = _count(G, sh, cfg)
            got.append(c)
            rows.append(_row(table, name, spec.degree, sh.label(), c, e, method,
                             time.perf_counter() - t0, cfg))
        rows.append(_row(table, name, spec.degree, "total", sum(got), sum(expected),
                         "sum", 0.0, cfg))
    return rows


def table_rows(table_id: str, cfg: RunConfig, p: int | None = None) -> list[dict]:
    if table_id == "4hom":
        return _orbit_table("4hom", _4HOM, lambda s: _4HOM_SHAPES, cfg)
    if table_id == "5hom":
        return _orbit_table("5hom", _5HOM, lambda s: _5HOM_SHAPES, cfg)
    if table_id == "agl2":
        return _orbit_table("agl2", _AGL2, lambda s: _3SHAPES, cfg)
    if table_id == "3hom":
        return _orbit_table("3hom", _3HOM, lambda s: _3SHAPES, cfg)
    if table_id == "psl216":
        return _psl216_rows(cfg)
    if table_id == "example28":
        return _example28_rows(cfg, p)
    if table_id == "gens":
        return _gens_rows(cfg)
    raise InputError(f"unknown table {table_id!r}")


def _psl216_rows(cfg: RunConfig) -> list[dict]:
    spec = GroupSpec("PSL2", 16)
    G = build(spec)
    N = normalizer_in_sym(spec)
    rows = []
    for support, (orbits, census) in _PSL216.items():
        sh = _shape(spec.degree, support)
        t0 = time.perf_counter()
        rep = fuse(G, N, sh, cfg.cap)
        dt = time.perf_counter() - t0
        rows.append(_row("psl216", spec.name, spec.degree, sh.label(),
                         rep.g_orbit_count, orbits, "enumeration", dt, cfg))
        got = rep.census
        for label, e in census.items():
            r = _row("psl216", spec.name, spec.degree, f"{sh.label()} stabilizer {label}",
                     got.get(label, 0), e, "fusion", 0.0, cfg)
            rows.append(r)
    return rows


def _example28_rows(cfg: RunConfig, p: int | None) -> list[dict]:
    primes = [p] if p is not None else sorted(_EXAMPLE28)
    rows = []
    for q in primes:
        try:
            t0 = time.perf_counter()
            (a, b), total = example28_check(q)
            dt = time.perf_counter() - t0
        except ValueError as exc:
            raise InputError(str(exc)) from None
        except ConsistencyError:
            a = b = total = None
            dt = 0.0
        if q in _EXAMPLE28:
            (ea, eb), et = _EXAMPLE28[q]
        else:
            ea, eb = (q - 2) // 3, (q - 2) * (q - 3) // 4
            et = (3 * q * q - 11 * q + 10) // 12
        name = f"ASL-squares(1,{q})"
        rows.append(_row("example28", name, q, _shape(q, (3,)).label(), a, ea, "burnside", dt, cfg))
        rows.append(_row("example28", name, q, _shape(q, (2, 2)).label(), b, eb, "burnside", 0.0, cfg))
        rows.append(_row("example28", name, q, "total", total, et, "sum", 0.0, cfg))
    return rows


def _gens_rows(cfg: RunConfig) -> list[dict]:
    rows = []

    def add(name, r, expected, slow=False):
        spec = parse_spec(name)
        label = f"rank {r}"
        if slow and not cfg.slow:
            rows.append(_skipped("gens", name, spec.degree, label, expected))
            return
        t0 = time.perf_counter()
        c = required_generator_count(build(spec), r)
        rows.append(_row("gens", name, spec.degree, label, c, expected, "burnside",
                         time.perf_counter() - t0, cfg))

    for k in range(1, 6):
        add("S12", 12 - k, partition_count(k))
    for k in range(1, 6):
        add("A12", 12 - k, partition_count(k))
    for p in (3, 5, 7, 11, 13, 17, 19, 23):
        add(f"C{p}", p - 1, (p - 1) // 2)
    for p in (5, 7, 11, 13):
        add(f"D{p}", p - 1, (p - 1) // 2)
    add("PGammaL(2,32)", 30, 144)
    add("PGammaL(2,32)", 29, 12160)
    add("M24", 19, 77, slow=True)
    return rows


# ---------------------------------------------------------------------------
# output

_COLUMNS = ["table", "group", "degree", "shape", "count", "expected", "status", "method"]


def _emit(obj, cfg: RunConfig, out, columns=None) -> None:
    if cfg.fmt == "json":
        out.write(json.dumps(obj, indent=2) + "\n")
        return
    rows = obj["rows"] if isinstance(obj, dict) and "rows" in obj else [obj]
    if columns is None:
        columns = list(rows[0].keys()) if rows else []
        if cfg.timing is False:
            columns = [c for c in columns if c != "elapsed"]
    if cfg.fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(columns)
        for r in rows:
            w.writerow([_flat(r.get(c)) for c in columns])
        out.write(buf.getvalue())
        return
    cells = [[_flat(r.get(c)) for c in columns] for r in rows]
    widths = [max([len(c)] + [len(x[i]) for x in cells]) for i, c in enumerate(columns)]
    out.write("  ".join(c.ljust(w) for c, w in zip(columns, widths)).rstrip() + "\n")
    for x in cells:
        out.write("  ".join(v.ljust(w) for v, w in zip(x, widths)).rstrip() + "\n")


def _flat(v) -> str:
    if v is None:
        return "-"
    if isinstance(v, (dict, list)):
        return json.dumps(v, separators=(",", ":"))
    return str(v)


def _diff(rows: list[dict]) -> list[str]:
    return [f"MISMATCH {r['source']}: expected {r['expected']}, got {r['count']}"
            for r in rows if r["status"] == "FAIL"]


# ---------------------------------------------------------------------------
# commands


def cmd_table(args, cfg: RunConfig, out) -> int:
    rows = table_rows(args.table_id, cfg, args.p)
    diff = _diff(rows)
    status = "FAIL" if diff else "PASS"
    columns = _COLUMNS + ["elapsed"] if cfg.timing else _COLUMNS
    _emit({"table": args.table_id, "status": status, "rows": rows}, cfg, out, columns)
    for line in diff:
        print(line, file=sys.stderr)
    return MISMATCH if diff else OK


def _group_and_shape(group: str, shape: str):
    spec = parse_spec(group)
    try:
        sh = PartitionShape.parse(shape, spec.degree)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    return spec, sh


def cmd_closed(args, cfg: RunConfig, out) -> int:
    spec, sh = _group_and_shape(args.group, args.shape)
    _, rep = is_closed(spec, sh, cfg.cap)
    obj = rep.to_json()
    if cfg.fmt == "json":
        _emit(obj, cfg, out)
    else:
        summary = {"group": obj["group"], "normalizer": obj["normalizer"], "shape": obj["shape"],
                   "g_orbits": rep.g_orbit_count, "n_orbits": rep.n_orbit_count,
                   "closed": obj["closed"], "census": obj["census"]}
        _emit(summary, cfg, out)
    return OK


def cmd_probe(args, cfg: RunConfig, out) -> int:
    cap = cfg.cap if cfg.cap != DEFAULT_CAP else PROBE_CAP
    rep = pxl_probe(args.q, cap)
    obj = rep.to_json()
    if cfg.fmt == "json":
        _emit(obj, cfg, out)
    else:
        _emit({"group": obj["group"], "shape": obj["shape"], "complete": rep.complete,
               "g_orbits": rep.g_orbit_count, "n_orbits": rep.n_orbit_count,
               "closed": obj["closed"]}, cfg, out)
    return OK if rep.complete else CAP


def cmd_verify(args, cfg: RunConfig, out) -> int:
    spec, sh = _group_and_shape(args.group, args.kernel_type)
    G = build(spec)
    t = map_of_type(sh)
    rec = verification_report(G, t, spec.name)
    if cfg.fmt == "json":
        _emit(rec, cfg, out)
    else:
        flat = {"group": rec["group"], "degree": rec["degree"], "kernel_type": rec["kernel_type"]}
        flat.update({k: v for k, v in rec["hypotheses"].items()})
        flat.update({k: v for k, v in rec["checks"].items()})
        flat.update({f"size_{k}": v for k, v in rec["sizes"].items()})
        _emit(flat, cfg, out)
    hyp = rec["hypotheses"]
    if not (hyp["one_orbit"] and hyp["homogeneous"]) or 2 * t.rank < t.degree:
        return HYPOTHESIS
    if any(v is False for v in rec["checks"].values()):
        return MISMATCH
    return OK


def cmd_homog(args, cfg: RunConfig, out) -> int:
    spec = parse_spec(args.group)
    if not 0 <= args.k <= spec.degree:
        raise InputError(f"k={args.k} outside 0..{spec.degree}")
    G = build(spec)
    orbits = subset_orbit_count(G, args.k)
    _emit({"group": spec.name, "degree": spec.degree, "k": args.k,
           "orbits": orbits, "homogeneous": orbits == 1}, cfg, out)
    return OK


def cmd_twogen(args, cfg: RunConfig, out) -> int:
    spec = parse_spec(args.group)
    G = build(spec)
    if subset_orbit_count(G, 2) != 1:
        _emit({"group": spec.name, "degree": spec.degree, "two_homogeneous": False,
               "generators": None}, cfg, out)
        return HYPOTHESIS
    pair = two_generation_witness(G, budget=cfg.budget, seed=cfg.seed)
    rec = {"group": spec.name, "degree": spec.degree, "two_homogeneous": True,
           "order": G.order(),
           "generators": None if pair is None else [list(x.images) for x in pair]}
    _emit(rec, cfg, out)
    return OK if pair is not None else MISMATCH


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--format", dest="fmt", choices=["text", "csv", "json"], default="text")
    common.add_argument("--threads", type=int, default=1)
    common.add_argument("--cap", type=int, default=DEFAULT_CAP)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--slow", action="store_true", help="include the M24 sweeps")
    common.add_argument("--data", default=None, help="generator data file")
    common.add_argument("--timing", action="store_true", help="add elapsed seconds to rows")

    ap = _Parser(prog="parthom", description="orbits on partitions, closed pairs, semigroup checks")
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_Parser)
    t = sub.add_parser("table", parents=[common], help="reproduce a reference table")
    t.add_argument("table_id", choices=["4hom", "5hom", "agl2", "3hom", "psl216", "example28", "gens"])
    t.add_argument("--p", type=int, default=None, help="prime for example28")
    t.set_defaults(func=cmd_table)
    c = sub.add_parser("closed", parents=[common], help="is (G, shape) closed under N(G)")
    c.add_argument("group")
    c.add_argument("shape")
    c.set_defaults(func=cmd_closed)
    p = sub.add_parser("probe", parents=[common], help="PXL(2,q) on (4,1,...) partitions")
    p.add_argument("q", type=int)
    p.set_defaults(func=cmd_probe)
    v = sub.add_parser("verify", parents=[common], help="semigroup checks for (G, kernel type)")
    v.add_argument("group")
    v.add_argument("kernel_type")
    v.set_defaults(func=cmd_verify)
    h = sub.add_parser("homog", parents=[common], help="is G k-homogeneous")
    h.add_argument("group")
    h.add_argument("k", type=int)
    h.set_defaults(func=cmd_homog)
    w = sub.add_parser("twogen", parents=[common], help="find a generating pair")
    w.add_argument("group")
    w.add_argument("--budget", type=int, default=400)
    w.set_defaults(func=cmd_twogen)
    return ap


def main(argv=None, out=None) -> int:
    out = sys.stdout if out is None else out
    ap = build_parser()
    args = ap.parse_args(argv)
    if args.threads < 1 or args.cap < 1:
        print("parthom: --threads and --cap must be positive", file=sys.stderr)
        return INPUT
    cfg = RunConfig(args.fmt, args.threads, args.cap, args.seed, args.slow, args.data,
                    args.timing, getattr(args, "budget", 400))
    if cfg.data is not None:
        set_data_path(cfg.data)
    try:
        return args.func(args, cfg, out)
    except CapExceeded as exc:
        print(f"parthom: {exc}", file=sys.stderr)
        return CAP
    except (InputError, UnsupportedGroup, IntegrityError, OSError, ValueError) as exc:
        print(f"parthom: {exc}", file=sys.stderr)
        return INPUT
    except ParthomError as exc:
        print(f"parthom: {exc}", file=sys.stderr)
        return MISMATCH


if __name__ == "__main__":
    sys.exit(main())
