"""Experiment harness: ``generate``, ``run``, ``compare`` and ``stats``.

Exit codes: 0 success, 1 usage error, 2 data error, 3 internal error (any
failed run cell included).
"""

from __future__ import annotations

import argparse
import csv
import hashlib
import json
import logging
import sys
from collections import defaultdict
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from functools import lru_cache
from pathlib import Path

import numpy as np

from . import controller, ingest, metrics
from .graph import TemporalNetwork
from .matching import drivers_of, hopcroft_karp
from .synth import SynthConfig, generate_dynamic, instance_seed

log = logging.getLogger("doccontrol")

EXIT_OK, EXIT_USAGE, EXIT_DATA, EXIT_INTERNAL = 0, 1, 2, 3

DESK_K = [2.0, 4.0, 6.0, 8.0]
DESK_R = [0.05, 0.1, 0.2, 0.3]
FULL_K = [round(2.0 + 0.2 * i, 1) for i in range(31)]
FULL_R = [round(0.01 * i, 2) for i in range(1, 31)]

SUMMARY_FIELDS = [
    "run_id", "instance", "algorithm", "l", "n", "k", "r", "tau", "T", "seed",
    "config_hash", "umds", "ecc_total", "mean_mds",
]
SNAPSHOT_FIELDS = [
    "run_id", "snapshot_index", "n_nodes", "n_edges", "mds_size", "ecc_step", "s_n", "s_e",
]
MANIFEST_FIELDS = ["instance", "n", "k", "r", "t", "replicate", "seed", "path"]


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _fmt(x: float) -> str:
    return f"{x:g}"


# ---------------------------------------------------------------- sources


@dataclass(frozen=True)
class Source:
    """Where one network comes from; small enough to ship to workers."""

    instance: str
    kind: str  # "synthetic" | "dataset"
    n: int = 0
    k: float = 0.0
    r: float = 0.0
    t: int = 0
    seed: int = 0
    path: str = ""
    tau: int = 0
    t0: str = ingest.AUTO
    replicate: int = 0

    def describe(self) -> dict:
        if self.kind == "synthetic":
            return {"kind": self.kind, "n": self.n, "k": self.k, "r": self.r, "t": self.t, "seed": self.seed}
        return {"kind": self.kind, "path": Path(self.path).name, "tau": self.tau, "t0": self.t0}


def instance_name(n: int, k: float, r: float, replicate: int) -> str:
    return f"er_n{n}_k{_fmt(k)}_r{_fmt(r)}_s{replicate}"


def grid_sources(n, ks, rs, t, replicates, base_seed) -> list[Source]:
    out = []
    for k in ks:
        for r in rs:
            for rep in range(replicates):
                seed = instance_seed(base_seed, k, r, rep)
                SynthConfig(n, k, r, t, seed)  # validate early
                out.append(Source(instance_name(n, k, r, rep), "synthetic", n, k, r, t, seed, replicate=rep))
    return out


def manifest_sources(path) -> list[Source]:
    out = []
    with open(path, newline="") as fh:
        for row in csv.DictReader(fh):
            try:
                out.append(Source(
                    row["instance"], "synthetic", int(row["n"]), float(row["k"]),
                    float(row["r"]), int(row["t"]), int(row["seed"]),
                    replicate=int(row.get("replicate") or 0),
                ))
            except (KeyError, ValueError) as exc:
                raise ingest.DataError(f"bad manifest row {row!r}: {exc}") from None
    if not out:
        raise ingest.DataError(f"manifest {path} lists no instances")
    return out


@lru_cache(maxsize=4)
def build_network(src: Source) -> TemporalNetwork:
    if src.kind == "synthetic":
        return generate_dynamic(SynthConfig(src.n, src.k, src.r, src.t, src.seed))
    t0 = src.t0 if src.t0 == ingest.AUTO else int(src.t0)
    return ingest.load(src.path, src.tau, t0)


# ---------------------------------------------------------------- cells


@dataclass(frozen=True)
class Cell:
    source: Source
    algorithm: str
    l: str  # "" for MM

    @property
    def run_id(self) -> str:
        return f"{self.source.instance}:{self.algorithm}:{self.l or '-'}"

    def config_hash(self) -> str:
        blob = json.dumps(
            {"source": self.source.describe(), "algorithm": self.algorithm, "l": self.l},
            sort_keys=True,
        )
        return hashlib.sha256(blob.encode()).hexdigest()[:12]


def parse_l(text: str):
    if text.lower() == controller.ALL:
        return controller.ALL
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"l must be a positive integer or 'all', got {text!r}")
    if value < 1:
        raise argparse.ArgumentTypeError(f"l must be a positive integer or 'all', got {text!r}")
    return value


def scheme_for(net: TemporalNetwork, algorithm: str, l):
    if algorithm == "DOC":
        return controller.run(net, l)
    if algorithm == "MM":
        return controller.run_baseline(net)
    raise UsageError(f"unknown algorithm {algorithm!r}")


def summary_row(cell: Cell, net: TemporalNetwork, scheme) -> dict:
    rep = metrics.cost_report(scheme)
    src = cell.source
    synthetic = src.kind == "synthetic"
    return {
        "run_id": cell.run_id,
        "instance": src.instance,
        "algorithm": cell.algorithm,
        "l": cell.l,
        "n": src.n if synthetic else len(net.node_registry),
        "k": _fmt(src.k) if synthetic else "",
        "r": _fmt(src.r) if synthetic else "",
        "tau": "" if synthetic else src.tau,
        "T": rep.T,
        "seed": src.seed if synthetic else "",
        "config_hash": cell.config_hash(),
        "umds": rep.umds,
        "ecc_total": rep.ecc_total,
        "mean_mds": f"{np.mean(rep.mds_sizes):.4f}",
    }


def snapshot_rows(cell: Cell, net: TemporalNetwork, scheme) -> list[dict]:
    rep = metrics.cost_report(scheme)
    rows = []
    for i, s in enumerate(net.snapshots):
        row = {
            "run_id": cell.run_id,
            "snapshot_index": s.index,
            "n_nodes": s.n,
            "n_edges": s.m,
            "mds_size": rep.mds_sizes[i],
            "ecc_step": "",
            "s_n": "",
            "s_e": "",
        }
        if i:
            s_n, s_e = metrics.snapshot_similarity(net.snapshots[i - 1], s)
            row.update(ecc_step=rep.ecc_series[i - 1], s_n=f"{s_n:.6f}", s_e=f"{s_e:.6f}")
        rows.append(row)
    return rows


def execute(cell: Cell) -> tuple[Cell, dict | None, list[dict], str]:
    """Run one cell; never raises, errors come back as text."""
    try:
        net = build_network(cell.source)
        l = controller.ALL if cell.l == controller.ALL else (int(cell.l) if cell.l else None)
        scheme = scheme_for(net, cell.algorithm, l)
        return cell, summary_row(cell, net, scheme), snapshot_rows(cell, net, scheme), ""
    except Exception as exc:  # reported per cell, turned into exit code 3
        return cell, None, [], f"{type(exc).__name__}: {exc}"


def _write_csv(path: Path, fields, rows):
    with open(path, "w", newline="") as fh:
        w = csv.DictWriter(fh, fieldnames=fields, lineterminator="\n")
        w.writeheader()
        w.writerows(rows)


def _read_csv(path) -> list[dict]:
    try:
        with open(path, newline="") as fh:
            return list(csv.DictReader(fh))
    except OSError as exc:
        raise ingest.DataError(f"cannot read {path}: {exc}") from None


# ---------------------------------------------------------------- commands


def cmd_generate(args) -> int:
    if args.full_grid:
        n, ks, rs, t = 10_000, FULL_K, FULL_R, 100
    else:
        n, ks, rs, t = args.n, args.k, args.r, args.t
    sources = grid_sources(n, ks, rs, t, args.replicates, args.seed)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    rows = []
    for src in sources:
        path = ""
        if not args.manifest_only:
            net_dir = out / "networks"
            net_dir.mkdir(exist_ok=True)
            path = f"networks/{src.instance}.txt"
            ingest.dump(build_network(src), out / path)
        rows.append({
            "instance": src.instance, "n": src.n, "k": _fmt(src.k), "r": _fmt(src.r),
            "t": src.t, "replicate": src.replicate, "seed": src.seed, "path": path,
        })
    _write_csv(out / "manifest.csv", MANIFEST_FIELDS, rows)
    print(f"wrote {len(rows)} instance(s) to {out / 'manifest.csv'}")
    return EXIT_OK


def _run_sources(args) -> list[Source]:
    if args.dataset:
        if args.tau is None:
            raise UsageError("--dataset needs --tau")
        if not Path(args.dataset).exists():
            raise ingest.DataError(f"dataset {args.dataset} not found")
        name = Path(args.dataset).name.split(".")[0]
        return [Source(name, "dataset", path=str(args.dataset), tau=args.tau, t0=str(args.t0))]
    if args.manifest:
        return manifest_sources(args.manifest)
    return grid_sources(args.n, args.k, args.r, args.t, args.replicates, args.seed)


def cmd_run(args) -> int:
    algorithms = [a.upper() for a in args.algorithms]
    for a in algorithms:
        if a not in ("DOC", "MM"):
            raise UsageError(f"unknown algorithm {a!r}; choose DOC and/or MM")
    if "DOC" in algorithms and not args.l:
        raise UsageError("DOC needs at least one --l value")
    sources = _run_sources(args)
    for src in sources:
        if src.kind == "dataset":
            build_network(src)  # surface parse problems as data errors

    cells = []
    for src in sources:
        for a in algorithms:
            if a == "MM":
                cells.append(Cell(src, "MM", ""))
            else:
                cells.extend(Cell(src, "DOC", str(l)) for l in args.l)

    if args.workers > 1 and len(cells) > 1:
        with ProcessPoolExecutor(max_workers=args.workers) as pool:
            results = list(pool.map(execute, cells, chunksize=max(1, len(cells) // (4 * args.workers))))
    else:
        results = [execute(c) for c in cells]

    summary, snaps, failed = [], [], []
    for cell, row, rows, err in results:
        if err:
            failed.append((cell.run_id, err))
            continue
        summary.append(row)
        snaps.extend(rows)

    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    _write_csv(out / "summary.csv", SUMMARY_FIELDS, summary)
    _write_csv(out / "snapshots.csv", SNAPSHOT_FIELDS, snaps)
    if args.json:
        with open(out / "summary.json", "w") as fh:
            json.dump({"summary": summary, "snapshots": snaps}, fh, indent=1, sort_keys=True)
            fh.write("\n")
    print(f"{len(summary)} run(s) written to {out}")
    for run_id, err in failed:
        print(f"FAILED {run_id}: {err}", file=sys.stderr)
    if failed:
        return EXIT_INTERNAL
    return EXIT_OK


def _summary_path(p) -> Path:
    p = Path(p)
    return p / "summary.csv" if p.is_dir() else p


def _select(rows, algorithm, l, label) -> dict[str, dict]:
    picked = {}
    for row in rows:
        if algorithm and row["algorithm"] != algorithm:
            continue
        if l is not None and row["l"] != str(l):
            continue
        if row["instance"] in picked:
            raise ingest.DataError(
                f"{label}: instance {row['instance']} appears more than once after filtering; "
                "narrow it with --algo/--l options"
            )
        picked[row["instance"]] = row
    if not picked:
        raise ingest.DataError(f"{label}: no rows match algorithm={algorithm} l={l}")
    return picked


def compare_rows(a_rows, b_rows, algo_a="DOC", algo_b="MM", l_a=None, l_b=None):
    """Join two result tables on instance; return per-instance and per-cell ratios."""
    a = _select(a_rows, algo_a, l_a, "A")
    b = _select(b_rows, algo_b, l_b, "B")
    missing_b = sorted(set(a) - set(b))
    missing_a = sorted(set(b) - set(a))
    if missing_a or missing_b:
        raise ingest.DataError(
            "instance sets differ; missing from B: "
            f"{missing_b or '-'}; missing from A: {missing_a or '-'}"
        )
    per_instance = []
    cells = defaultdict(list)
    for inst in sorted(a):
        ra, rb = a[inst], b[inst]
        ecc_ratio = metrics.ratio(int(ra["ecc_total"]), int(rb["ecc_total"]))
        umds_ratio = metrics.ratio(int(ra["umds"]), int(rb["umds"]))
        per_instance.append({
            "instance": inst, "k": ra["k"], "r": ra["r"],
            "ecc_a": ra["ecc_total"], "ecc_b": rb["ecc_total"], "ecc_ratio": f"{ecc_ratio:.6f}",
            "umds_a": ra["umds"], "umds_b": rb["umds"], "umds_ratio": f"{umds_ratio:.6f}",
        })
        cells[(ra["k"], ra["r"])].append((ecc_ratio, umds_ratio))
    per_cell = [
        {
            "k": k, "r": r, "instances": len(v),
            "mean_ecc_ratio": f"{np.mean([x[0] for x in v]):.6f}",
            "mean_umds_ratio": f"{np.mean([x[1] for x in v]):.6f}",
        }
        for (k, r), v in cells.items()
    ]
    return per_instance, per_cell, a, b


def snapshot_ratio_rows(a_snap, b_snap, a_sel, b_sel) -> list[dict]:
    def index(rows, sel):
        ids = {row["run_id"]: inst for inst, row in sel.items()}
        return {
            (ids[r["run_id"]], int(r["snapshot_index"])): r
            for r in rows if r["run_id"] in ids and r["ecc_step"] != ""
        }

    ia, ib = index(a_snap, a_sel), index(b_snap, b_sel)
    out = []
    for key in sorted(set(ia) & set(ib)):
        ea, eb = int(ia[key]["ecc_step"]), int(ib[key]["ecc_step"])
        out.append({
            "instance": key[0], "snapshot_index": key[1], "ecc_a": ea, "ecc_b": eb,
            "ecc_ratio": f"{metrics.ratio(ea, eb):.6f}",
        })
    return out


def cmd_compare(args) -> int:
    pa, pb = _summary_path(args.a), _summary_path(args.b)
    per_instance, per_cell, a_sel, b_sel = compare_rows(
        _read_csv(pa), _read_csv(pb), args.algo_a, args.algo_b, args.l_a, args.l_b
    )
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    _write_csv(out / "ratios.csv", list(per_instance[0]), per_instance)
    _write_csv(out / "cells.csv", list(per_cell[0]), per_cell)
    sa, sb = pa.with_name("snapshots.csv"), pb.with_name("snapshots.csv")
    if sa.exists() and sb.exists():
        rows = snapshot_ratio_rows(_read_csv(sa), _read_csv(sb), a_sel, b_sel)
        _write_csv(out / "snapshot_ratios.csv",
                   ["instance", "snapshot_index", "ecc_a", "ecc_b", "ecc_ratio"], rows)
    for c in per_cell:
        print(f"k={c['k'] or '-'} r={c['r'] or '-'} n={c['instances']} "
              f"ECC ratio {c['mean_ecc_ratio']} UMDS ratio {c['mean_umds_ratio']}")
    return EXIT_OK


def dataset_stats(net: TemporalNetwork) -> tuple[list[dict], dict]:
    rows = []
    for i, s in enumerate(net.snapshots):
        mds = len(drivers_of(s, hopcroft_karp(s)))
        row = {
            "snapshot_index": s.index, "n_nodes": s.n, "n_edges": s.m,
            "avg_degree": f"{(2 * s.m / s.n if s.n else 0.0):.4f}", "mds_size": mds,
            "s_n": "", "s_e": "",
        }
        if i:
            s_n, s_e = metrics.snapshot_similarity(net.snapshots[i - 1], s)
            row.update(s_n=f"{s_n:.6f}", s_e=f"{s_e:.6f}")
        rows.append(row)

    def col(name):
        return [float(r[name]) for r in rows if r[name] != ""]

    summary = {"T": len(rows)}
    for name in ("n_nodes", "avg_degree", "s_n", "s_e", "mds_size"):
        mean, lo, hi = metrics.describe(col(name))
        summary[name] = {"mean": round(mean, 4), "min": round(lo, 4), "max": round(hi, 4)}
    return rows, summary


def cmd_stats(args) -> int:
    if not Path(args.dataset).exists():
        raise ingest.DataError(f"dataset {args.dataset} not found")
    net = ingest.load(args.dataset, args.tau, args.t0)
    rows, summary = dataset_stats(net)
    if args.out:
        _write_csv(Path(args.out), list(rows[0]), rows)
    print(json.dumps(summary, indent=1))
    return EXIT_OK


# ---------------------------------------------------------------- parser


def _ratio_arg(text: str) -> float:
    value = float(text)
    if not 0 < value < 1:
        raise argparse.ArgumentTypeError(f"r must be in (0, 1), got {text}")
    return value


def _t0_arg(text: str):
    return ingest.AUTO if text == ingest.AUTO else int(text)


def _add_grid(p):
    g = p.add_argument_group("synthetic grid")
    g.add_argument("--n", type=int, default=500, help="nodes per network (default 500)")
    g.add_argument("--k", type=float, nargs="+", default=DESK_K, help="average degrees 2L/n")
    g.add_argument("--r", type=_ratio_arg, nargs="+", default=DESK_R, help="rewire ratios")
    g.add_argument("--t", type=int, default=50, help="snapshots per network (default 50)")
    g.add_argument("--replicates", type=int, default=1, help="instances per (k, r) cell")
    g.add_argument("--seed", type=int, default=0, help="base seed")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="doccontrol", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("generate", help="generate synthetic dynamic networks")
    _add_grid(p)
    p.add_argument("--full-grid", action="store_true",
                   help="full grid: n=10000, 31 k values x 30 r values, t=100 (930 networks; slow)")
    p.add_argument("--manifest-only", action="store_true", help="write seeds only, no edge lists")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("run", help="compute DOC / MM control schemes and costs")
    _add_grid(p)
    src = p.add_mutually_exclusive_group()
    src.add_argument("--manifest", help="manifest.csv written by 'generate'")
    src.add_argument("--dataset", help="timestamped edge list (src dst t), optionally .gz")
    p.add_argument("--tau", type=int, help="window length for --dataset, in timestamp units")
    p.add_argument("--t0", type=_t0_arg, default=ingest.AUTO, help="window origin (default: first timestamp)")
    p.add_argument("--algorithms", nargs="+", default=["DOC", "MM"])
    p.add_argument("--l", type=parse_l, nargs="+", default=[5], help="DOC window lengths or 'all'")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--json", action="store_true", help="also write summary.json")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_run)

    p = sub.add_parser("compare", help="ECC and UMDS ratios between two result sets")
    p.add_argument("a", help="numerator summary.csv (or its directory)")
    p.add_argument("b", help="denominator summary.csv (or its directory)")
    p.add_argument("--algo-a", default="DOC")
    p.add_argument("--algo-b", default="MM")
    p.add_argument("--l-a", default=None)
    p.add_argument("--l-b", default=None)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_compare)

    p = sub.add_parser("stats", help="per-snapshot N, K, S_n, S_e of a dataset")
    p.add_argument("--dataset", required=True)
    p.add_argument("--tau", type=int, required=True)
    p.add_argument("--t0", type=_t0_arg, default=ingest.AUTO)
    p.add_argument("--out", help="per-snapshot CSV path")
    p.set_defaults(func=cmd_stats)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"doccontrol: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (ingest.DataError, OSError) as exc:
        print(f"doccontrol: data error: {exc}", file=sys.stderr)
        return EXIT_DATA
    except ValueError as exc:
        # config validation (SynthConfig, WindowSpec) is a usage problem
        print(f"doccontrol: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except Exception as exc:
        log.exception("internal error")
        print(f"doccontrol: internal error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
