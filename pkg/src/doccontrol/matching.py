"""Maximum matchings of a snapshot's controllability bipartite graph.

Each node ``v`` is split into an out-copy ``v+`` and an in-copy ``v-``; the
directed edge ``u -> v`` becomes the bipartite edge ``u+ -- v-``. A matching
is therefore a set of directed edges sharing no source and no target, and
the driver nodes are the nodes whose in-copy is left unmatched.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from . import kernels
from .graph import Edge, Snapshot


@dataclass(frozen=True)
class Matching:
    """A set of directed edges, no two sharing a source or a target."""

    pairs: frozenset[Edge] = frozenset()

    def __post_init__(self):
        object.__setattr__(self, "pairs", frozenset(self.pairs))
        srcs = [u for u, _ in self.pairs]
        dsts = [v for _, v in self.pairs]
        if len(set(srcs)) != len(srcs) or len(set(dsts)) != len(dsts):
            raise ValueError("pairs share a source or a target; not a matching")

    def __len__(self):
        return len(self.pairs)

    def __iter__(self):
        return iter(sorted(self.pairs))

    def __contains__(self, edge):
        return edge in self.pairs

    def matched_targets(self) -> frozenset[int]:
        return frozenset(v for _, v in self.pairs)

    def check(self, s: Snapshot):
        """Raise ``ValueError`` unless every pair is an edge of ``s``."""
        stray = self.pairs - s.edges
        if stray:
            raise ValueError(
                f"matching uses {len(stray)} edge(s) absent from snapshot "
                f"{s.index}, e.g. {min(stray)}"
            )


@dataclass(frozen=True)
class DriverSet:
    """Driver nodes (MDS) selected for one snapshot."""

    drivers: frozenset[int]
    snapshot_index: int

    def __len__(self):
        return len(self.drivers)

    def __iter__(self):
        return iter(sorted(self.drivers))

    def __contains__(self, v):
        return v in self.drivers


def _to_mates(s: Snapshot, m: Matching) -> tuple[np.ndarray, np.ndarray]:
    pos = s.position
    mate_out = np.full(s.n, -1, dtype=np.intp)
    mate_in = np.full(s.n, -1, dtype=np.intp)
    for u, v in m.pairs:
        mate_out[pos[u]] = pos[v]
        mate_in[pos[v]] = pos[u]
    return mate_out, mate_in


def _from_mates(s: Snapshot, mate_out: np.ndarray) -> Matching:
    order = s.order
    return Matching(
        frozenset((order[u], order[v]) for u, v in enumerate(mate_out.tolist()) if v >= 0)
    )


def _drivers(s: Snapshot, mate_in: np.ndarray, fallback: int | None) -> DriverSet:
    order = s.order
    free = frozenset(order[v] for v, u in enumerate(mate_in.tolist()) if u < 0)
    if not free and s.n:
        # perfect matching: one input is still needed
        free = frozenset([fallback if fallback is not None else order[-1]])
    return DriverSet(free, s.index)


def hopcroft_karp(s: Snapshot) -> Matching:
    """Maximum matching of ``s``, scanning nodes in ascending id order."""
    ptr, idx = s.csr("out")
    mate_out, _ = kernels.hopcroft_karp(s.n, ptr, idx)
    return _from_mates(s, mate_out)


def restrict(prev: Matching, s: Snapshot) -> Matching:
    """Keep the pairs of ``prev`` that are still edges of ``s``."""
    return Matching(prev.pairs & s.edges)


def _positions(s: Snapshot, order: Sequence[int]) -> np.ndarray:
    pos = s.position
    if len(order) != s.n:
        raise ValueError(
            f"order has {len(order)} entries but snapshot {s.index} has {s.n} nodes"
        )
    try:
        roots = np.fromiter((pos[v] for v in order), dtype=np.intp, count=s.n)
    except KeyError as exc:
        raise ValueError(f"order names node {exc.args[0]} absent from snapshot {s.index}") from None
    if s.n and np.bincount(roots, minlength=s.n).max() != 1:
        raise ValueError("order repeats a node; it must be a permutation of the snapshot's nodes")
    return roots


def ordered_augment(
    s: Snapshot, seed: Matching, order: Sequence[int]
) -> tuple[Matching, DriverSet]:
    """Extend ``seed`` to a maximum matching, trying free in-copies in ``order``.

    Nodes early in ``order`` get the first chance to be matched, so nodes
    late in ``order`` are the ones left over as drivers. Under a perfect
    matching the last node of ``order`` is the single driver.

    Raises
    ------
    ValueError
        If ``order`` is not a permutation of ``s.nodes`` or ``seed`` is not
        a matching of ``s``.
    """
    roots = _positions(s, order)
    seed.check(s)
    mate_out, mate_in = _to_mates(s, seed)
    ptr, idx = s.csr("in")
    kernels.ordered_augment(s.n, ptr, idx, mate_out, mate_in, roots)
    fallback = order[-1] if len(order) else None
    return _from_mates(s, mate_out), _drivers(s, mate_in, fallback)


def drivers_of(s: Snapshot, m: Matching, order: Sequence[int] | None = None) -> DriverSet:
    """Nodes of ``s`` with no matched in-edge.

    For a perfect matching the fallback driver is the last node of
    ``order``, or the largest node id when no order is given.
    """
    m.check(s)
    _, mate_in = _to_mates(s, m)
    fallback = order[-1] if order else None
    return _drivers(s, mate_in, fallback)


def is_maximum(s: Snapshot, m: Matching) -> bool:
    """True when no augmenting path exists for ``m`` in ``s``."""
    m.check(s)
    mate_out, mate_in = _to_mates(s, m)
    ptr, idx = s.csr("in")
    roots = np.arange(s.n, dtype=np.intp)
    kernels.ordered_augment(s.n, ptr, idx, mate_out, mate_in, roots)
    return int((mate_in >= 0).sum()) == len(m)


def driver_count(s: Snapshot, matching_size: int) -> int:
    """``max(1, N - |M*|)``, or 0 for an empty snapshot."""
    if s.n == 0:
        return 0
    return max(1, s.n - matching_size)

