"""Control-cost metrics of a scheme and similarity of adjacent snapshots."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .graph import Snapshot


def _sets(scheme) -> list[frozenset]:
    sets = getattr(scheme, "sets", None)
    if sets is None:
        sets = [frozenset(getattr(d, "drivers", d)) for d in scheme]
    return list(sets)


def umds(scheme) -> int:
    """Number of distinct nodes driven at any time (size of the union)."""
    sets = _sets(scheme)
    if not sets:
        raise ValueError("empty control scheme")
    return len(frozenset().union(*sets))


def ecc(scheme) -> tuple[int, list[int]]:
    """Driver churn: per-step ``|MDS_i - MDS_{i-1}|`` for ``i = 2..T`` and its sum."""
    sets = _sets(scheme)
    if len(sets) < 2:
        raise ValueError("ECC needs at least two snapshots")
    series = [len(cur - prev) for prev, cur in zip(sets, sets[1:])]
    return sum(series), series


def jaccard(a: Iterable, b: Iterable) -> float:
    a, b = set(a), set(b)
    union = len(a | b)
    return len(a & b) / union if union else 0.0


def snapshot_similarity(a: Snapshot, b: Snapshot) -> tuple[float, float]:
    """Node-set and edge-set Jaccard similarity ``(S_n, S_e)``."""
    return jaccard(a.nodes, b.nodes), jaccard(a.edges, b.edges)


@dataclass(frozen=True)
class CostReport:
    umds: int
    ecc_total: int
    ecc_series: list[int]
    mds_sizes: list[int]

    @property
    def T(self) -> int:
        return len(self.mds_sizes)


def cost_report(scheme) -> CostReport:
    """UMDS, ECC and per-snapshot MDS sizes; ECC is 0 for a single snapshot."""
    sets = _sets(scheme)
    total, series = ecc(sets) if len(sets) >= 2 else (0, [])
    return CostReport(umds(sets), total, series, [len(s) for s in sets])


def ratio(a: float, b: float) -> float:
    """``a / b`` with ``0/0 = 1`` (two equally churn-free schemes)."""
    if b == 0:
        return 1.0 if a == 0 else float("inf")
    return a / b


def describe(values: Sequence[float]) -> tuple[float, float, float]:
    """``(mean, min, max)``; zeros for an empty sequence."""
    if not values:
        return 0.0, 0.0, 0.0
    return sum(values) / len(values), min(values), max(values)
