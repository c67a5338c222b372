"""Synthetic dynamic networks: a directed ER graph followed by edge rewiring."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .graph import Snapshot, TemporalNetwork


def edge_count(n: int, k: float) -> int:
    """``L = round(n * k / 2)``, halves rounded up, so that ``2L/n = k``."""
    return int(math.floor(n * k / 2 + 0.5))


@dataclass(frozen=True)
class SynthConfig:
    n: int
    k: float
    r: float
    t: int
    seed: int = 0

    def __post_init__(self):
        if self.n < 2:
            raise ValueError(f"n must be >= 2, got {self.n}")
        if not 0 < self.r < 1:
            raise ValueError(f"rewire ratio r must be in (0, 1), got {self.r}")
        if self.t < 1:
            raise ValueError(f"t must be >= 1, got {self.t}")
        L = edge_count(self.n, self.k)
        if L < 1:
            raise ValueError(f"n={self.n}, k={self.k} gives no edges")
        if L > self.n * (self.n - 1):
            raise ValueError(f"{L} edges do not fit in a simple digraph on {self.n} nodes")

    @property
    def L(self) -> int:
        return edge_count(self.n, self.k)


def _rng(seed) -> np.random.Generator:
    if isinstance(seed, np.random.Generator):
        return seed
    return np.random.default_rng(seed)


def _decode(codes: np.ndarray, n: int) -> list[tuple[int, int]]:
    # code in [0, n(n-1)) -> ordered pair (u, v), u != v
    u = codes // (n - 1)
    w = codes % (n - 1)
    v = np.where(w < u, w, w + 1)
    return list(zip(u.tolist(), v.tolist()))


def er_directed(n: int, k: float, seed=None, index: int = 1) -> Snapshot:
    """Simple digraph on nodes ``0..n-1`` with ``round(n*k/2)`` uniform random edges."""
    L = edge_count(n, k)
    total = n * (n - 1)
    if L > total:
        raise ValueError(f"{L} edges do not fit in a simple digraph on {n} nodes")
    codes = _rng(seed).choice(total, size=L, replace=False)
    return Snapshot.from_edges(index, _decode(np.sort(codes), n), range(n))


def rewire(s: Snapshot, r: float, seed=None, index: int | None = None) -> Snapshot:
    """Replace ``round(r * L)`` uniformly chosen edges with new absent pairs.

    Removed edges are not eligible for re-insertion, so exactly that many
    edges change. The node set and edge count are preserved.
    """
    if not 0 < r < 1:
        raise ValueError(f"rewire ratio r must be in (0, 1), got {r}")
    rng = _rng(seed)
    nodes = s.order
    n = len(nodes)
    edges = sorted(s.edges)
    L = len(edges)
    m = int(math.floor(r * L + 0.5))
    total = n * (n - 1)
    if L + m > total:
        raise ValueError(f"cannot rewire {m} of {L} edges among {n} nodes without reuse")

    drop = set(rng.choice(L, size=m, replace=False).tolist()) if m else set()
    kept = [e for i, e in enumerate(edges) if i not in drop]
    taken = set(edges)
    added = []
    while len(added) < m:
        need = m - len(added)
        for code in rng.integers(0, total, size=2 * need + 8).tolist():
            a, b = divmod(code, n - 1)
            if b >= a:
                b += 1
            e = (nodes[a], nodes[b])
            if e in taken:
                continue
            taken.add(e)
            added.append(e)
            if len(added) == m:
                break
    return Snapshot.from_edges(s.index + 1 if index is None else index, kept + added, nodes)


def generate_dynamic(cfg: SynthConfig) -> TemporalNetwork:
    """``cfg.t`` snapshots: an ER graph, then ``t - 1`` successive rewirings."""
    rng = np.random.default_rng(cfg.seed)
    s = er_directed(cfg.n, cfg.k, rng)
    snaps = [s]
    for i in range(2, cfg.t + 1):
        s = rewire(s, cfg.r, rng, index=i)
        snaps.append(s)
    return TemporalNetwork(tuple(snaps))


def instance_seed(base_seed: int, k: float, r: float, replicate: int) -> int:
    """Deterministic 64-bit seed for one grid cell replicate."""
    key = [base_seed, int(round(k * 1000)), int(round(r * 1000)), replicate]
    return int(np.random.SeedSequence(key).generate_state(1, dtype=np.uint64)[0])
