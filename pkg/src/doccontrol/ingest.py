"""Timestamped edge lists (SNAP temporal format) and their windowing.

Input lines are ``src dst timestamp [...]``, whitespace separated; lines
starting with ``#`` or ``%`` and blank lines are ignored. Files ending in
``.gz`` are decompressed transparently.
"""

from __future__ import annotations

import gzip
import io
import logging
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable

from .graph import Snapshot, TemporalNetwork

log = logging.getLogger(__name__)

AUTO = "auto"


class DataError(ValueError):
    """Input data could not be turned into a temporal network."""


@dataclass(frozen=True)
class EdgeEvent:
    src: str
    dst: str
    timestamp: int


@dataclass
class EventLog:
    """Parsed events plus counts of what was skipped."""

    events: list[EdgeEvent] = field(default_factory=list)
    malformed: int = 0
    self_loops: int = 0
    bad_lines: list[tuple[int, str]] = field(default_factory=list)

    def __len__(self):
        return len(self.events)

    def __iter__(self):
        return iter(self.events)


def _timestamp(text: str) -> int:
    try:
        return int(text)
    except ValueError:
        value = float(text)
        if not math.isfinite(value):
            raise
        return int(value)


def parse(lines: Iterable[str]) -> EventLog:
    """Parse edge-list lines into events.

    Malformed lines are counted (the first few kept in ``bad_lines``) and
    skipped; self-loop events are dropped and counted.

    Raises
    ------
    DataError
        If no line yields an event.
    """
    out = EventLog()
    for lineno, line in enumerate(lines, start=1):
        text = line.strip()
        if not text or text[0] in "#%":
            continue
        fields = text.split()
        try:
            if len(fields) < 3:
                raise ValueError("fewer than 3 fields")
            ts = _timestamp(fields[2])
            if ts < 0:
                raise ValueError("negative timestamp")
        except ValueError as exc:
            out.malformed += 1
            if len(out.bad_lines) < 5:
                out.bad_lines.append((lineno, f"{text[:60]!r}: {exc}"))
            continue
        src, dst = fields[0], fields[1]
        if src == dst:
            out.self_loops += 1
            continue
        out.events.append(EdgeEvent(src, dst, ts))

    if not out.events and not out.self_loops:
        detail = "; ".join(f"line {n}: {msg}" for n, msg in out.bad_lines) or "no data lines"
        raise DataError(f"no parseable edge events ({detail})")
    if out.malformed:
        log.warning("skipped %d malformed line(s)", out.malformed)
    if out.self_loops:
        log.info("dropped %d self-loop event(s)", out.self_loops)
    return out


def open_text(path) -> io.TextIOBase:
    path = Path(path)
    if path.suffix == ".gz":
        return io.TextIOWrapper(gzip.open(path, "rb"), encoding="utf-8")
    return open(path, encoding="utf-8")


def read_events(path) -> EventLog:
    with open_text(path) as fh:
        return parse(fh)


@dataclass(frozen=True)
class WindowSpec:
    tau: int
    t0: int | str = AUTO

    def __post_init__(self):
        if self.tau <= 0:
            raise ValueError(f"tau must be positive, got {self.tau}")


def window(events: Iterable[EdgeEvent] | EventLog, spec: WindowSpec) -> TemporalNetwork:
    """Cut events into consecutive half-open windows ``[t0 + (n-1)tau, t0 + n*tau)``.

    Node ids are assigned over the whole event list in first-appearance
    order. Empty windows are kept as empty snapshots; the last window is
    the one containing the largest timestamp.
    """
    events = list(events)
    if not events:
        raise DataError("no events to window")
    tmin = min(e.timestamp for e in events)
    tmax = max(e.timestamp for e in events)
    t0 = tmin if spec.t0 == AUTO else int(spec.t0)
    if t0 > tmin:
        raise DataError(f"window origin {t0} is after the first event at {tmin}")

    registry: dict[str, int] = {}
    for e in events:
        for label in (e.src, e.dst):
            if label not in registry:
                registry[label] = len(registry)

    count = (tmax - t0) // spec.tau + 1
    buckets: list[set[tuple[int, int]]] = [set() for _ in range(count)]
    for e in events:
        buckets[(e.timestamp - t0) // spec.tau].add((registry[e.src], registry[e.dst]))

    snaps = tuple(Snapshot.from_edges(i, b) for i, b in enumerate(buckets, start=1))
    return TemporalNetwork(snaps, registry)


def window_counts(events: Iterable[EdgeEvent], spec: WindowSpec) -> list[int]:
    """Raw (pre-deduplication) event count per window."""
    events = list(events)
    tmin = min(e.timestamp for e in events)
    t0 = tmin if spec.t0 == AUTO else int(spec.t0)
    count = (max(e.timestamp for e in events) - t0) // spec.tau + 1
    out = [0] * count
    for e in events:
        out[(e.timestamp - t0) // spec.tau] += 1
    return out


def load(path, tau: int, t0: int | str = AUTO) -> TemporalNetwork:
    return window(read_events(path), WindowSpec(tau, t0))


def dump(net: TemporalNetwork, path):
    """Write ``src dst snapshot_index`` lines; readable back with ``tau=1``.

    Isolated nodes have no line, so a reloaded network only keeps the
    edge-induced node sets. Use seeds, not dumps, to reproduce runs.
    """
    labels = {v: k for k, v in net.node_registry.items()}
    with open(path, "w", encoding="utf-8") as fh:
        for s in net:
            for u, v in sorted(s.edges):
                fh.write(f"{labels.get(u, u)} {labels.get(v, v)} {s.index}\n")
