"""Directed snapshot graphs and temporal sequences of them.

A :class:`Snapshot` is one static directed graph ``G_t`` of a dynamic
network; a :class:`TemporalNetwork` is the ordered sequence of snapshots
together with the registry that maps external labels to integer node ids.
Node ids are global, so the same id refers to the same entity in every
snapshot.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Mapping

import numpy as np

Edge = tuple[int, int]


@dataclass(frozen=True, eq=False)
class Snapshot:
    """One directed graph of a temporal sequence.

    Parameters
    ----------
    index : int
        1-based position of the snapshot in its sequence.
    nodes : frozenset of int
        Node ids present in the snapshot, isolated nodes included.
    edges : frozenset of (int, int)
        Directed edges ``(src, dst)``. Self-loops are rejected.
    """

    index: int
    nodes: frozenset[int]
    edges: frozenset[Edge]

    def __post_init__(self):
        if self.index < 1:
            raise ValueError(f"snapshot index must be >= 1, got {self.index}")
        for u, v in self.edges:
            if u == v:
                raise ValueError(f"self-loop on node {u} in snapshot {self.index}")
            if u not in self.nodes or v not in self.nodes:
                raise ValueError(
                    f"edge ({u}, {v}) has an endpoint outside the node set "
                    f"of snapshot {self.index}"
                )

    @classmethod
    def from_edges(
        cls, index: int, edges: Iterable[Edge], nodes: Iterable[int] = ()
    ) -> "Snapshot":
        """Build a snapshot from an edge list; duplicates collapse.

        The node set is the union of ``nodes`` and all edge endpoints.
        """
        edge_set = frozenset((int(u), int(v)) for u, v in edges)
        node_set = set(int(v) for v in nodes)
        for u, v in edge_set:
            node_set.add(u)
            node_set.add(v)
        return cls(index, frozenset(node_set), edge_set)

    def __eq__(self, other):
        if not isinstance(other, Snapshot):
            return NotImplemented
        return (
            self.index == other.index
            and self.nodes == other.nodes
            and self.edges == other.edges
        )

    def __hash__(self):
        return hash((self.index, self.nodes, self.edges))

    def __repr__(self):
        return (
            f"Snapshot(index={self.index}, n={len(self.nodes)}, "
            f"m={len(self.edges)})"
        )

    @property
    def n(self) -> int:
        return len(self.nodes)

    @property
    def m(self) -> int:
        return len(self.edges)

    # Derived structures below are computed once per snapshot and reused by
    # the matching kernels and the stability computation.

    @cached_property
    def order(self) -> list[int]:
        """Node ids in ascending order; position ``i`` is compact index ``i``."""
        return sorted(self.nodes)

    @cached_property
    def position(self) -> dict[int, int]:
        return {v: i for i, v in enumerate(self.order)}

    @cached_property
    def _adjacency(self) -> tuple[dict[int, list[int]], dict[int, list[int]]]:
        out: dict[int, list[int]] = {v: [] for v in self.nodes}
        inc: dict[int, list[int]] = {v: [] for v in self.nodes}
        for u, v in self.edges:
            out[u].append(v)
            inc[v].append(u)
        for lst in out.values():
            lst.sort()
        for lst in inc.values():
            lst.sort()
        return out, inc

    def successors(self, v: int) -> list[int]:
        self._check(v)
        return self._adjacency[0][v]

    def predecessors(self, v: int) -> list[int]:
        self._check(v)
        return self._adjacency[1][v]

    @cached_property
    def incidence(self) -> dict[int, frozenset[Edge]]:
        """Map node id -> incident edges (in and out) as ordered pairs."""
        out, inc = self._adjacency
        return {
            v: frozenset([(v, w) for w in out[v]] + [(u, v) for u in inc[v]])
            for v in self.nodes
        }

    def csr(self, direction: str = "out") -> tuple[np.ndarray, np.ndarray]:
        """Compact CSR adjacency ``(indptr, indices)`` over positions.

        ``direction="out"`` lists successors of each node, ``"in"`` lists
        predecessors. Neighbour lists are sorted ascending by node id.
        """
        if direction == "out":
            return self._csr_out
        if direction == "in":
            return self._csr_in
        raise ValueError(f"direction must be 'out' or 'in', got {direction!r}")

    def _build_csr(self, adj: Mapping[int, list[int]]):
        pos = self.position
        indptr = np.zeros(len(self.order) + 1, dtype=np.intp)
        indices = np.empty(len(self.edges), dtype=np.intp)
        k = 0
        for i, v in enumerate(self.order):
            for w in adj[v]:
                indices[k] = pos[w]
                k += 1
            indptr[i + 1] = k
        return indptr, indices

    @cached_property
    def _csr_out(self):
        return self._build_csr(self._adjacency[0])

    @cached_property
    def _csr_in(self):
        return self._build_csr(self._adjacency[1])

    def _check(self, v: int):
        if v not in self.nodes:
            raise KeyError(f"node {v} is not in snapshot {self.index}")


def degree(s: Snapshot, v: int) -> int:
    """Total degree (in + out) of ``v``; a reciprocal pair counts twice."""
    return len(s.successors(v)) + len(s.predecessors(v))


def incident_edges(s: Snapshot, v: int) -> frozenset[Edge]:
    s._check(v)
    return s.incidence[v]


@dataclass(frozen=True)
class TemporalNetwork:
    """Ordered snapshots plus the label -> node id registry.

    Snapshot indices must run 1, 2, ..., T.
    """

    snapshots: tuple[Snapshot, ...]
    node_registry: Mapping[str, int] = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "snapshots", tuple(self.snapshots))
        for expected, s in enumerate(self.snapshots, start=1):
            if s.index != expected:
                raise ValueError(
                    f"snapshot indices must be consecutive from 1; "
                    f"position {expected} holds index {s.index}"
                )
        ids = list(self.node_registry.values())
        if len(set(ids)) != len(ids):
            raise ValueError("node registry maps two labels to the same node id")

    def __len__(self):
        return len(self.snapshots)

    def __iter__(self):
        return iter(self.snapshots)

    def __getitem__(self, i):
        return self.snapshots[i]

    @property
    def T(self) -> int:
        return len(self.snapshots)

    @classmethod
    def from_edge_lists(
        cls, edge_lists: Iterable[Iterable[Edge]], nodes: Iterable[int] | None = None
    ) -> "TemporalNetwork":
        """Convenience constructor; ``nodes`` (if given) is added to every snapshot."""
        base = tuple(nodes) if nodes is not None else ()
        return cls(
            tuple(
                Snapshot.from_edges(i, edges, base)
                for i, edges in enumerate(edge_lists, start=1)
            )
        )
