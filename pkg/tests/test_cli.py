import csv
import json

import pytest

from doccontrol import cli
from doccontrol.controller import ControlScheme
from doccontrol.graph import Snapshot, TemporalNetwork
from doccontrol.matching import DriverSet

from .test_metrics import SCHEME_B, SCHEME_C

SMALL = ["--n", "80", "--k", "2", "4", "--r", "0.1", "0.3", "--t", "6"]


def rows(path):
    with open(path, newline="") as fh:
        return list(csv.DictReader(fh))


def test_generate_default_grid(tmp_path):
    assert cli.main(["generate", "--out", str(tmp_path), "--manifest-only"]) == 0
    manifest = rows(tmp_path / "manifest.csv")
    assert len(manifest) == 16
    assert {(m["k"], m["r"]) for m in manifest} == {
        (k, r) for k in ("2", "4", "6", "8") for r in ("0.05", "0.1", "0.2", "0.3")
    }
    assert all(m["n"] == "500" and m["t"] == "50" for m in manifest)


def test_full_grid_size():
    sources = cli.grid_sources(10_000, cli.FULL_K, cli.FULL_R, 100, 1, 0)
    assert len(sources) == 930


def test_generate_writes_edge_lists(tmp_path):
    assert cli.main(["generate", "--out", str(tmp_path), *SMALL]) == 0
    manifest = rows(tmp_path / "manifest.csv")
    assert len(manifest) == 4
    first = (tmp_path / manifest[0]["path"]).read_text().splitlines()
    assert len(first) == 80 * 6  # L = 80 edges per snapshot, 6 snapshots


def test_usage_errors(tmp_path, capsys):
    assert cli.main(["generate", "--out", str(tmp_path), "--r", "1.5"]) == 1
    assert cli.main(["run", "--out", str(tmp_path), "--algorithms", "XYZ"]) == 1
    assert cli.main(["run", "--out", str(tmp_path), "--dataset", "x.txt"]) == 1
    assert cli.main(["bogus"]) == 1
    assert cli.main(["run", "--out", str(tmp_path), "--l", "0"]) == 1
    assert cli.main(["--help"]) == 0


def test_data_errors(tmp_path):
    assert cli.main(["run", "--out", str(tmp_path), "--dataset", str(tmp_path / "nope.txt"), "--tau", "5"]) == 2
    bad = tmp_path / "bad.txt"
    bad.write_text("not an edge list\n")
    assert cli.main(["run", "--out", str(tmp_path / "o"), "--dataset", str(bad), "--tau", "5"]) == 2
    assert cli.main(["stats", "--dataset", str(bad), "--tau", "5"]) == 2


def test_run_summary_and_snapshots(tmp_path):
    out = tmp_path / "res"
    assert cli.main(["run", "--out", str(out), *SMALL, "--l", "1", "all", "--json"]) == 0
    summary = rows(out / "summary.csv")
    assert len(summary) == 4 * 3
    assert set(summary[0]) == set(cli.SUMMARY_FIELDS)
    for row in summary:
        assert row["seed"] and row["config_hash"] and row["algorithm"] in ("DOC", "MM")
    snaps = rows(out / "snapshots.csv")
    assert len(snaps) == 12 * 6
    by_run = {}
    for s in snaps:
        by_run.setdefault(s["run_id"], []).append(s)
    for row in summary:
        series = by_run[row["run_id"]]
        assert sum(int(s["ecc_step"]) for s in series[1:]) == int(row["ecc_total"])
        assert series[0]["ecc_step"] == ""
    doc = {r["instance"]: r for r in summary if r["algorithm"] == "DOC" and r["l"] == "1"}
    mm = {r["instance"]: r for r in summary if r["algorithm"] == "MM"}
    for inst in doc:
        assert doc[inst]["mean_mds"] == mm[inst]["mean_mds"]
    mirror = json.loads((out / "summary.json").read_text())
    assert len(mirror["summary"]) == 12


def test_one_instance_both_algorithms(tmp_path):
    out = tmp_path / "one"
    args = ["run", "--out", str(out), "--n", "300", "--k", "3", "--r", "0.1", "--t", "20", "--l", "5"]
    assert cli.main(args) == 0
    summary = rows(out / "summary.csv")
    assert len(summary) == 2
    ecc = {r["algorithm"]: int(r["ecc_total"]) for r in summary}
    assert ecc["DOC"] <= ecc["MM"]


def test_run_from_manifest_matches_grid(tmp_path):
    cli.main(["generate", "--out", str(tmp_path / "g"), *SMALL, "--manifest-only"])
    cli.main(["run", "--out", str(tmp_path / "a"), "--manifest", str(tmp_path / "g" / "manifest.csv")])
    cli.main(["run", "--out", str(tmp_path / "b"), *SMALL])
    assert (tmp_path / "a" / "summary.csv").read_bytes() == (tmp_path / "b" / "summary.csv").read_bytes()


def test_workers_do_not_change_output(tmp_path):
    cli.main(["run", "--out", str(tmp_path / "a"), *SMALL])
    cli.main(["run", "--out", str(tmp_path / "b"), *SMALL, "--workers", "2"])
    for name in ("summary.csv", "snapshots.csv"):
        assert (tmp_path / "a" / name).read_bytes() == (tmp_path / "b" / name).read_bytes()


def _scheme_summary(path, instance, sets, algorithm):
    net = TemporalNetwork(tuple(Snapshot.from_edges(i, [], s) for i, s in enumerate(sets, 1)))
    scheme = ControlScheme([DriverSet(frozenset(s), i) for i, s in enumerate(sets, 1)], algorithm)
    src = cli.Source(instance, "synthetic", 8, 2.0, 0.1, len(sets), 0)
    cell = cli.Cell(src, algorithm, "5" if algorithm == "DOC" else "")
    path.mkdir(parents=True, exist_ok=True)
    cli._write_csv(path / "summary.csv", cli.SUMMARY_FIELDS, [cli.summary_row(cell, net, scheme)])
    cli._write_csv(path / "snapshots.csv", cli.SNAPSHOT_FIELDS, cli.snapshot_rows(cell, net, scheme))


def test_compare_worked_example_schemes(tmp_path):
    _scheme_summary(tmp_path / "c", "fig3", SCHEME_C, "DOC")
    _scheme_summary(tmp_path / "b", "fig3", SCHEME_B, "MM")
    assert cli.main(["compare", str(tmp_path / "c"), str(tmp_path / "b"), "--out", str(tmp_path / "cmp")]) == 0
    (ratio,) = rows(tmp_path / "cmp" / "ratios.csv")
    assert float(ratio["umds_ratio"]) == pytest.approx(0.5)
    assert float(ratio["ecc_ratio"]) == pytest.approx(2 / 9, abs=1e-6)
    steps = rows(tmp_path / "cmp" / "snapshot_ratios.csv")
    assert [int(s["ecc_a"]) for s in steps] == [0, 1, 0, 1]
    assert [int(s["ecc_b"]) for s in steps] == [2, 3, 3, 1]


def test_compare_identical_and_mismatched(tmp_path):
    res = tmp_path / "res"
    cli.main(["run", "--out", str(res), *SMALL, "--algorithms", "MM"])
    assert cli.main(["compare", str(res), str(res), "--algo-a", "MM", "--out", str(tmp_path / "same")]) == 0
    for row in rows(tmp_path / "same" / "ratios.csv"):
        assert float(row["ecc_ratio"]) == 1.0 and float(row["umds_ratio"]) == 1.0
    other = tmp_path / "other"
    cli.main(["run", "--out", str(other), "--n", "80", "--k", "2", "--r", "0.1", "--t", "6", "--algorithms", "MM"])
    assert cli.main(["compare", str(res), str(other), "--algo-a", "MM", "--out", str(tmp_path / "x")]) == 2


def test_compare_missing_keys_listed(tmp_path):
    a = [{"instance": "i1", "algorithm": "DOC", "l": "5", "ecc_total": "1", "umds": "1", "k": "", "r": ""}]
    b = [{"instance": "i2", "algorithm": "MM", "l": "", "ecc_total": "1", "umds": "1", "k": "", "r": ""}]
    with pytest.raises(cli.ingest.DataError, match="i1.*i2"):
        cli.compare_rows(a, b)


def test_dataset_run_and_stats(tmp_path, capsys):
    data = tmp_path / "toy.txt"
    lines = []
    for w in range(7):
        base = w * 100
        lines += [f"u{i} u{(i + 1) % 6} {base + i}" for i in range(6)]
        lines.append(f"u{w % 6} hub {base + 50}")
    data.write_text("\n".join(lines) + "\n")
    out = tmp_path / "res"
    assert cli.main(["run", "--out", str(out), "--dataset", str(data), "--tau", "100"]) == 0
    summary = rows(out / "summary.csv")
    assert {r["T"] for r in summary} == {"7"}
    assert len(rows(out / "snapshots.csv")) == 2 * 7
    capsys.readouterr()
    assert cli.main(["stats", "--dataset", str(data), "--tau", "100", "--out", str(tmp_path / "st.csv")]) == 0
    stats = json.loads(capsys.readouterr().out)
    assert stats["T"] == 7 and stats["n_nodes"]["max"] == 7
    assert len(rows(tmp_path / "st.csv")) == 7


def test_failed_cell_exit_code(tmp_path, monkeypatch):
    def boom(net, algorithm, l):
        raise RuntimeError("kaput")

    monkeypatch.setattr(cli, "scheme_for", boom)
    assert cli.main(["run", "--out", str(tmp_path), *SMALL, "--algorithms", "MM"]) == 3
