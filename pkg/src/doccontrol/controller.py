"""Dynamic optimal control (DOC) of a snapshot sequence.

Each snapshot gets a node importance ``q_v = 2l * [v was a driver] + sigma(v)``
where ``sigma`` sums, over the last ``l`` snapshot transitions, the Jaccard
similarity of ``v``'s incident edges times its degree centrality. Free
in-copies are then searched in ascending ``q`` starting from the previous
maximum matching restricted to the current snapshot, so previous drivers and
stable nodes are the ones left unmatched, i.e. selected as drivers again.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field, replace
from typing import Callable, Literal, Union

from .graph import Snapshot, TemporalNetwork, degree, incident_edges
from .matching import DriverSet, Matching, drivers_of, hopcroft_karp, ordered_augment, restrict

ALL = "all"
Window = Union[int, Literal["all"]]


def check_window(window) -> Window:
    if window == ALL:
        return ALL
    if isinstance(window, bool) or not isinstance(window, int) or window < 1:
        raise ValueError(f"window length must be a positive integer or 'all', got {window!r}")
    return window


def edge_similarity(v: int, cur: Snapshot, prev: Snapshot | None) -> float:
    """Jaccard similarity of ``v``'s incident edges in ``prev`` and ``cur``."""
    if prev is None or v not in prev.nodes:
        return 0.0
    a = incident_edges(cur, v)
    b = incident_edges(prev, v)
    union = len(a | b)
    if union == 0:
        return 0.0
    return len(a & b) / union


def degree_centrality(v: int, s: Snapshot) -> float:
    """Total degree over ``N - 1``, in ``[0, 2]``; 0 for a single-node snapshot."""
    if s.n < 2:
        s._check(v)
        return 0.0
    return degree(s, v) / (s.n - 1)


def importance(v: int, sigma: float, in_prev_mds: bool, l: int, *, allow_marginal: bool = False) -> float:
    """``2l * [in_prev_mds] + sigma``.

    ``sigma`` must lie in ``[0, 2l)``; ``allow_marginal`` also admits
    ``sigma == 2l``, reachable only by a node reciprocally linked to every
    other node in each windowed snapshot.
    """
    hi = 2 * l
    if sigma < 0 or sigma > hi or (sigma == hi and not allow_marginal):
        raise ValueError(
            f"stability {sigma!r} of node {v} outside [0, {hi}); "
            "degree centrality above 2 means a malformed snapshot"
        )
    return hi * (1 if in_prev_mds else 0) + sigma


@dataclass
class WeightState:
    """Per-run state threaded through :func:`step`.

    ``history`` holds one ``{node: similarity * centrality}`` map per
    transition, newest last, trimmed to the window length. ``last_q`` and
    ``last_order`` record the weights and root order of the latest step.
    """

    window: Window
    history: deque = field(default_factory=deque)
    prev_mds: frozenset[int] = frozenset()
    prev_snapshot: Snapshot | None = None
    prev_matching: Matching = field(default_factory=Matching)
    last_q: dict[int, float] = field(default_factory=dict)
    last_order: list[int] = field(default_factory=list)

    def __post_init__(self):
        self.window = check_window(self.window)
        self.history = deque(self.history, maxlen=None if self.window == ALL else self.window)

    @property
    def coefficient_window(self) -> int:
        """The ``l`` used in ``2l``; for ``all`` it is the transitions seen so far."""
        if self.window == ALL:
            return len(self.history)
        return self.window

    def stability(self, v: int) -> float:
        return sum(h.get(v, 0.0) for h in self.history)


def stability(v: int, state: WeightState, cur: Snapshot) -> float:
    """Windowed stability of ``v`` at ``cur``, including the ``prev -> cur`` term.

    ``state`` is the state *before* ``cur`` is processed.
    """
    cur._check(v)
    if state.prev_snapshot is None:
        return 0.0
    hist = list(state.history)
    if state.window != ALL:
        hist = hist[len(hist) - state.window + 1:] if state.window > 1 else []
    term = edge_similarity(v, cur, state.prev_snapshot) * degree_centrality(v, cur)
    return term + sum(h.get(v, 0.0) for h in hist)


def _transition_terms(cur: Snapshot, prev: Snapshot | None) -> dict[int, float]:
    if prev is None:
        return {}
    terms = {}
    for v in cur.nodes:
        sim = edge_similarity(v, cur, prev)
        if sim:
            c = degree_centrality(v, cur)
            if c:
                terms[v] = sim * c
    return terms


def root_order(q: dict[int, float], prev_mds: frozenset[int]) -> list[int]:
    """Nodes by ascending ``q``; ties go to non-drivers first, then ascending id."""
    return sorted(q, key=lambda v: (q[v], v in prev_mds, v))


def step(state: WeightState, cur: Snapshot) -> tuple[DriverSet, WeightState]:
    """Process one snapshot; return its driver set and the advanced state."""
    expected = 1 if state.prev_snapshot is None else state.prev_snapshot.index + 1
    if cur.index != expected:
        raise ValueError(f"expected snapshot {expected}, got {cur.index}")

    history = deque(state.history, maxlen=state.history.maxlen)
    if state.prev_snapshot is not None:
        history.append(_transition_terms(cur, state.prev_snapshot))
    nxt = replace(state, history=history)

    l = nxt.coefficient_window
    q = {}
    for v in cur.nodes:
        sigma = nxt.stability(v)
        q[v] = importance(v, sigma, v in state.prev_mds, l, allow_marginal=True)
    order = root_order(q, state.prev_mds)

    seed = restrict(state.prev_matching, cur)
    matching, drivers = ordered_augment(cur, seed, order)

    nxt.prev_mds = drivers.drivers
    nxt.prev_snapshot = cur
    nxt.prev_matching = matching
    nxt.last_q = q
    nxt.last_order = order
    return drivers, nxt


@dataclass
class ControlScheme:
    """Driver sets for every snapshot of a run."""

    mds_sequence: list[DriverSet]
    algorithm: str
    window: Window | None = None

    def __len__(self):
        return len(self.mds_sequence)

    def __iter__(self):
        return iter(self.mds_sequence)

    @property
    def sets(self) -> list[frozenset[int]]:
        return [d.drivers for d in self.mds_sequence]


def run(
    net: TemporalNetwork,
    window: Window = 5,
    on_step: Callable[[Snapshot, WeightState, WeightState], None] | None = None,
) -> ControlScheme:
    """DOC control scheme for ``net``.

    ``on_step(snapshot, before, after)`` is called after every snapshot.
    """
    if not len(net):
        raise ValueError("temporal network has no snapshots")
    state = WeightState(window)
    out = []
    for s in net:
        drivers, nxt = step(state, s)
        if on_step is not None:
            on_step(s, state, nxt)
        out.append(drivers)
        state = nxt
    return ControlScheme(out, "DOC", state.window)


def run_baseline(net: TemporalNetwork) -> ControlScheme:
    """Independent Hopcroft-Karp matching per snapshot (the MM baseline)."""
    if not len(net):
        raise ValueError("temporal network has no snapshots")
    out = [drivers_of(s, hopcroft_karp(s)) for s in net]
    return ControlScheme(out, "MM", None)
