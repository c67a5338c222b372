import gzip

import pytest

from doccontrol.ingest import (
    DataError, EdgeEvent, WindowSpec, dump, load, parse, read_events, window, window_counts,
)


def test_parse_basic():
    log = parse(["1 2 100\n", "2 3 150"])
    assert log.events == [EdgeEvent("1", "2", 100), EdgeEvent("2", "3", 150)]


def test_parse_comments_and_self_loops():
    log = parse(["# comment", "% also", "", "1 1 100", "1 2 5"])
    assert len(log) == 1 and log.self_loops == 1
    only_loop = parse(["1 1 100"])
    assert len(only_loop) == 0 and only_loop.self_loops == 1


def test_parse_malformed_counted():
    log = parse(["1 2", "a b c", "1 2 x", "3 4 10", "5 6 -3"])
    assert len(log) == 1 and log.malformed == 4
    assert log.bad_lines[0][0] == 1


def test_parse_all_bad():
    with pytest.raises(DataError, match="line 1"):
        parse(["garbage"])
    with pytest.raises(DataError):
        parse([])


def test_parse_float_timestamps():
    assert parse(["a b 12.0"]).events[0].timestamp == 12


def test_window_boundary_half_open():
    tau = 10
    net = window([EdgeEvent("a", "b", 0), EdgeEvent("b", "c", tau)], WindowSpec(tau))
    assert net.T == 2
    assert [s.m for s in net] == [1, 1]
    assert net.node_registry == {"a": 0, "b": 1, "c": 2}
    assert net[0].edges == {(0, 1)} and net[1].edges == {(1, 2)}


def test_window_single_and_empty_gaps():
    events = [EdgeEvent("a", "b", 5), EdgeEvent("a", "b", 7), EdgeEvent("b", "a", 9)]
    assert window(events, WindowSpec(100)).T == 1
    net = window([EdgeEvent("a", "b", 0), EdgeEvent("b", "c", 35)], WindowSpec(10))
    assert net.T == 4
    assert [s.m for s in net] == [1, 0, 0, 1]
    assert net[1].n == 0


def test_window_dedup_and_counts():
    events = [EdgeEvent("a", "b", t) for t in (0, 1, 2)] + [EdgeEvent("b", "a", 25)]
    spec = WindowSpec(10)
    net = window(events, spec)
    assert [s.m for s in net] == [1, 0, 1]
    counts = window_counts(events, spec)
    assert counts == [3, 0, 1] and sum(counts) == len(events)
    assert window(events, spec) == net


def test_window_origin():
    events = [EdgeEvent("a", "b", 12), EdgeEvent("b", "c", 19)]
    assert window(events, WindowSpec(10, t0=10)).T == 1
    assert window(events, WindowSpec(10)).T == 1
    assert window(events, WindowSpec(5, t0=10)).T == 2
    with pytest.raises(DataError):
        window(events, WindowSpec(10, t0=13))
    with pytest.raises(ValueError):
        WindowSpec(0)
    with pytest.raises(DataError):
        window([], WindowSpec(1))


def test_files_plain_and_gzip(tmp_path):
    text = "# src dst t\n1 2 0\n2 3 4\n3 1 11\n"
    plain = tmp_path / "net.txt"
    plain.write_text(text)
    packed = tmp_path / "net.txt.gz"
    with gzip.open(packed, "wt") as fh:
        fh.write(text)
    assert len(read_events(plain)) == 3
    a, b = load(plain, 10), load(packed, 10)
    assert a == b and a.T == 2


def test_dump_roundtrip(tmp_path):
    net = window([EdgeEvent("x", "y", 0), EdgeEvent("y", "z", 3), EdgeEvent("z", "x", 3)], WindowSpec(2))
    path = tmp_path / "dump.txt"
    dump(net, path)
    back = load(path, 1)
    assert back.T == net.T
    assert [s.m for s in back] == [s.m for s in net]
