"""Cycle surgery across a subcube split, plus the construction trace.

All sequences here are in Q_n coordinates.  ``C0`` lives in one half, the
paths/cycle passed for the other half live in the opposite half; the crossing
edges are always of the form ``v -- partner(v)``.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .cube import Edge, SubcubeSplit
from .errors import InternalInvariantError, PreconditionError
from .structures import cycle_edges, cycle_from_edges, path_edges


def _e(a: int, b: int) -> Edge:
    return Edge(a, b) if a < b else Edge(b, a)


@dataclass
class TraceStep:
    n: int
    j: int | None
    label: str
    calls: list[str] = field(default_factory=list)
    removed: tuple = ()
    added: tuple = ()
    parts: tuple = ()
    result: tuple = ()


class ConstructionTrace:
    """Per-level record of the case tree; ``keep_parts`` also stores the merged pieces."""

    def __init__(self, keep_parts: bool = False):
        self.keep_parts = keep_parts
        self.steps: list[TraceStep] = []

    def record(self, n, j, label, calls=(), removed=(), added=(), parts=(), result=()):
        step = TraceStep(n, j, label, list(calls), tuple(removed), tuple(added))
        if self.keep_parts:
            step.parts = tuple((kind, tuple(seq)) for kind, seq in parts)
            step.result = tuple(result)
        self.steps.append(step)
        return step

    @property
    def labels(self) -> list[str]:
        return [s.label for s in self.steps]

    def replay(self) -> bool:
        """Re-run every recorded merge and compare with the stored result."""
        if not self.keep_parts:
            raise ValueError("trace was recorded without parts")
        for step in self.steps:
            if not step.parts:
                continue
            edges = set()
            for kind, seq in step.parts:
                edges |= cycle_edges(seq) if kind == "cycle" else path_edges(seq)
            edges -= set(step.removed)
            edges |= set(step.added)
            if edges != cycle_edges(step.result):
                return False
        return True


def _assemble(parts, removed, added, num_vertices, trace=None, n=None, j=None, label=None):
    edges = set()
    for kind, seq in parts:
        edges |= cycle_edges(seq) if kind == "cycle" else path_edges(seq)
    missing = [e for e in removed if e not in edges]
    if missing:
        raise PreconditionError(f"surgery removes edges not present: {missing}")
    edges.difference_update(removed)
    if set(added) & edges:
        raise PreconditionError("surgery adds an edge that is already present")
    edges |= set(added)
    try:
        cyc = cycle_from_edges(edges, num_vertices)
    except InternalInvariantError as exc:
        raise PreconditionError(f"surgery pattern does not close into one cycle: {exc}") from None
    if trace is not None and label is not None:
        trace.record(n, j, label, removed=removed, added=added, parts=parts, result=cyc)
    return cyc


def merge_cycles(C0: Sequence[int], C1: Sequence[int], uv: Edge, sp: SubcubeSplit, trace=None, label=None) -> list[int]:
    """Drop ``uv`` from C0 and its partner from C1, join with the two crossing edges."""
    u, v = uv
    uv = _e(u, v)
    u1v1 = sp.partner_edge(uv)
    if uv not in cycle_edges(C0):
        raise PreconditionError(f"{uv} is not an edge of C0")
    if u1v1 not in cycle_edges(C1):
        raise PreconditionError(f"{u1v1} is not an edge of C1")
    added = (_e(u, sp.partner(u)), _e(v, sp.partner(v)))
    return _assemble([("cycle", C0), ("cycle", C1)], (uv, u1v1), added, 1 << sp.n, trace, sp.n, sp.j, label)


def _crossings(sp: SubcubeSplit, paths) -> list[Edge]:
    out = []
    for p in paths:
        for end in {p[0], p[-1]}:
            out.append(_e(end, sp.partner(end)))
    return out


def merge_cycle_path(
    C0: Sequence[int],
    P1: Sequence[int],
    cut: Iterable[Edge],
    sp: SubcubeSplit,
    bridge: Iterable[Edge] = (),
    trace=None,
    label=None,
) -> list[int]:
    """C0 minus ``cut`` plus ``bridge`` must be a path between the partners of P1's ends.

    With ``cut = [uv]`` this is the plain cycle+path merge; with
    ``cut = [xs, yt], bridge = [xy]`` it reinserts a withheld edge xy.
    """
    cut = [_e(*e) for e in cut]
    bridge = [_e(*e) for e in bridge]
    ends0 = {sp.partner(P1[0]), sp.partner(P1[-1])}
    if len(P1) >= 2 and len(ends0) != 2:
        raise PreconditionError("path endpoints coincide")
    deg = defaultdict(int)
    for e in set(cycle_edges(C0)) - set(cut) | set(bridge):
        deg[e[0]] += 1
        deg[e[1]] += 1
    if {v for v, d in deg.items() if d == 1} != ends0:
        raise PreconditionError("half-1 path endpoints do not match the open ends of C0")
    return _assemble(
        [("cycle", C0), ("path", P1)], cut, bridge + _crossings(sp, [P1]), 1 << sp.n, trace, sp.n, sp.j, label
    )


def merge_cycle_two_paths(
    C0: Sequence[int],
    P1a: Sequence[int],
    P1b: Sequence[int],
    cut: Iterable[Edge],
    sp: SubcubeSplit,
    bridge: Iterable[Edge] = (),
    trace=None,
    label=None,
) -> list[int]:
    """C0 minus ``cut`` plus ``bridge`` joined through two spanning paths of the other half."""
    if set(P1a) & set(P1b):
        raise PreconditionError("half-1 paths are not vertex-disjoint")
    cut = [_e(*e) for e in cut]
    bridge = [_e(*e) for e in bridge]
    return _assemble(
        [("cycle", C0), ("path", P1a), ("path", P1b)],
        cut,
        bridge + _crossings(sp, [P1a, P1b]),
        1 << sp.n,
        trace,
        sp.n,
        sp.j,
        label,
    )


def closes_single_cycle(C0: Sequence[int], cut: Iterable[Edge], bridge: Iterable[Edge], connectors: Iterable[tuple[int, int]]) -> bool:
    """Would C0 - cut + bridge + (abstract connectors) be one cycle through all of C0?

    Connectors stand for paths in the other half joining two C0 vertices;
    they may be parallel to real edges, so a multigraph walk is used.
    """
    cut = {_e(*e) for e in cut}
    links = [e for e in cycle_edges(C0) if e not in cut] + [_e(*e) for e in bridge] + [tuple(c) for c in connectors]
    adj = defaultdict(list)
    for k, (a, b) in enumerate(links):
        adj[a].append((b, k))
        adj[b].append((a, k))
    if len(adj) != len(C0) or any(len(x) != 2 for x in adj.values()):
        return False
    start = C0[0]
    prev_edge, cur, steps = -1, start, 0
    while True:
        nxt = adj[cur][0] if adj[cur][0][1] != prev_edge else adj[cur][1]
        cur, prev_edge = nxt
        steps += 1
        if cur == start:
            break
    return steps == len(links)


class Halves:
    """(M, F) split by E_j, with the side playing "half 0" chosen by the caller.

    Edge sets stay in Q_n coordinates; :meth:`down` projects for recursive
    calls and :meth:`up` lifts their answers back.
    """

    def __init__(self, n: int, j: int, M: Iterable[Edge], F: Iterable[Edge] = (), side0: int = 0):
        self.n, self.j = n, j
        self.sp = SubcubeSplit(n, j)
        self.side = (side0, 1 - side0)
        parts = ([set(), set(), set()], [set(), set(), set()])
        for k, src in enumerate((M, F)):
            for e in src:
                e = _e(*e)
                a, b = self.sp.side(e[0]), self.sp.side(e[1])
                parts[k][2 if a != b else (0 if a == side0 else 1)].add(e)
        (self.M0, self.M1, self.Mc), (self.F0, self.F1, self.Fc) = [tuple(map(frozenset, p)) for p in parts]

    @classmethod
    def oriented(cls, n: int, j: int, M, F=()) -> "Halves":
        """|M0| >= |M1|, then |F0| >= |F1|, then bit value 0 as half 0."""
        h = cls(n, j, M, F, 0)
        if (len(h.M1), len(h.F1)) > (len(h.M0), len(h.F0)):
            h = cls(n, j, M, F, 1)
        return h

    def half_of(self, v: int) -> int:
        return 0 if self.sp.side(v) == self.side[0] else 1

    def partner(self, v: int) -> int:
        return self.sp.partner(v)

    def partner_edge(self, e) -> Edge:
        return self.sp.partner_edge(_e(*e))

    def down(self, edges) -> set[Edge]:
        return {self.sp.project_edge(_e(*e)) for e in edges}

    def down_v(self, v: int) -> int:
        return self.sp.project(v)

    def up(self, seq, half: int) -> list[int]:
        return self.sp.lift_seq(seq, self.side[half])


def cycle_pairs(C: Sequence[int]):
    """Consecutive (a, b) pairs of a cycle, in order, closing back to the start."""
    k = len(C)
    for i in range(k):
        yield C[i], C[(i + 1) % k]


def cycle_neighbors(C: Sequence[int], v: int) -> tuple[int, int]:
    """(successor, predecessor) of v on C."""
    i = C.index(v)
    return C[(i + 1) % len(C)], C[i - 1]
