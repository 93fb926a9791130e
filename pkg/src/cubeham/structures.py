"""Edge-set predicates, cycle/path witnesses and their validators."""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .cube import Edge, edge, is_adjacent
from .errors import InternalInvariantError, MalformedInstanceError


def is_matching(edges: Iterable[Edge]) -> bool:
    seen = set()
    for a, b in edges:
        if a in seen or b in seen:
            return False
        seen.add(a)
        seen.add(b)
    return True


def is_linear_forest(edges: Iterable[Edge]) -> bool:
    """Max degree <= 2 and no cycle (union-find over the edge list)."""
    deg: dict[int, int] = defaultdict(int)
    parent: dict[int, int] = {}

    def find(x):
        while parent.get(x, x) != x:
            parent[x] = parent.get(parent[x], parent[x])
            x = parent[x]
        return x

    for a, b in set(edges):
        deg[a] += 1
        deg[b] += 1
        if deg[a] > 2 or deg[b] > 2:
            return False
        ra, rb = find(a), find(b)
        if ra == rb:
            return False
        parent[ra] = rb
    return True


def vertices_of(edges: Iterable[Edge]) -> set[int]:
    return {v for e in edges for v in e}


def normalize_edges(pairs: Iterable[Sequence[int]], n: int | None = None) -> frozenset:
    """Turn vertex pairs into normalized edges, rejecting non-edges."""
    out = set()
    for pair in pairs:
        a, b = pair
        try:
            out.add(edge(a, b, n))
        except ValueError as exc:
            raise MalformedInstanceError(str(exc)) from None
    return frozenset(out)


def check_instance(n: int, M: Iterable[Edge], F: Iterable[Edge] = ()) -> tuple[frozenset, frozenset]:
    """Validate (M, F) at the API boundary and return them as frozensets."""
    M = normalize_edges(M, n)
    F = normalize_edges(F, n)
    if not is_matching(M):
        raise MalformedInstanceError("M is not a matching")
    if M & F:
        raise MalformedInstanceError(f"M and F share edges: {sorted(M & F)}")
    return M, F


def cycle_edges(seq: Sequence[int]) -> set[Edge]:
    k = len(seq)
    out = set()
    for i in range(k):
        a, b = seq[i], seq[(i + 1) % k]
        out.add(Edge(a, b) if a < b else Edge(b, a))
    return out


def path_edges(seq: Sequence[int]) -> set[Edge]:
    out = set()
    for a, b in zip(seq, seq[1:]):
        out.add(Edge(a, b) if a < b else Edge(b, a))
    return out


def normalize_cycle(seq: Sequence[int]) -> tuple[int, ...]:
    """Rotate the minimum vertex to the front and orient toward the smaller neighbor."""
    k = len(seq)
    if k == 0:
        return ()
    i = min(range(k), key=seq.__getitem__)
    rot = list(seq[i:]) + list(seq[:i])
    if k > 2 and rot[-1] < rot[1]:
        rot = [rot[0]] + rot[:0:-1]
    return tuple(rot)


def cycle_from_edges(edges: Iterable[Edge], num_vertices: int) -> list[int]:
    """Walk a 2-regular edge set; it must be a single cycle through all vertices."""
    adj: dict[int, list[int]] = defaultdict(list)
    count = 0
    for a, b in edges:
        adj[a].append(b)
        adj[b].append(a)
        count += 1
    if count != num_vertices or len(adj) != num_vertices or any(len(x) != 2 for x in adj.values()):
        raise InternalInvariantError("edge set is not 2-regular on all vertices")
    start = min(adj)
    seq = [start]
    prev, cur = start, min(adj[start])
    while cur != start:
        seq.append(cur)
        a, b = adj[cur]
        prev, cur = cur, (b if a == prev else a)
    if len(seq) != num_vertices:
        raise InternalInvariantError(f"edge set splits into several cycles ({len(seq)} of {num_vertices})")
    return seq


@dataclass
class CycleVerdict:
    """Four independent checks plus any input-shape problems."""

    adjacent: bool
    covers_all: bool
    contains_matching: bool
    avoids_faults: bool
    malformed: list[str] = field(default_factory=list)
    missing: list[Edge] = field(default_factory=list)
    used_faults: list[Edge] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.adjacent and self.covers_all and self.contains_matching and self.avoids_faults and not self.malformed

    def lines(self) -> list[str]:
        def mark(ok):
            return "ok" if ok else "FAIL"

        out = [
            f"(a) adjacency: {mark(self.adjacent)}",
            f"(b) covers all vertices once: {mark(self.covers_all)}",
            f"(c) contains matching: {mark(self.contains_matching)}"
            + (f" missing {' '.join(map(str, self.missing))}" if self.missing else ""),
            f"(d) avoids faults: {mark(self.avoids_faults)}"
            + (f" uses {' '.join(map(str, self.used_faults))}" if self.used_faults else ""),
        ]
        out += [f"malformed input: {m}" for m in self.malformed]
        out.append("PASS" if self.passed else "FAIL")
        return out


def _pairs(edges):
    return [tuple(e) for e in edges]


def validate_cycle(cycle: Sequence[int], n: int, M: Iterable = (), F: Iterable = ()) -> CycleVerdict:
    """Check a claimed Hamiltonian cycle of Q_n containing M and avoiding F.

    Never raises; every problem is reported in the verdict.
    """
    malformed = []
    Mset, Fset = set(), set()
    for label, src, dst in (("M", M, Mset), ("F", F, Fset)):
        for a, b in _pairs(src):
            if not is_adjacent(a, b) or max(a, b) >= 1 << n or min(a, b) < 0:
                malformed.append(f"{label} pair {a}-{b} is not an edge of Q_{n}")
            else:
                dst.add(Edge(min(a, b), max(a, b)))
    if not is_matching(Mset):
        malformed.append("M is not a matching")
    seq = list(cycle)
    k = len(seq)
    adjacent = k >= 3 or (k == 2 and n == 1)
    adjacent = adjacent and all(is_adjacent(seq[i], seq[(i + 1) % k]) for i in range(k))
    covers = k == 1 << n and set(seq) == set(range(1 << n))
    used = cycle_edges(seq) if k >= 2 else set()
    missing = sorted(e for e in Mset if e not in used)
    bad = sorted(e for e in Fset if e in used)
    contains = not missing and not any(m.startswith("M pair") for m in malformed)
    return CycleVerdict(adjacent, covers, contains, not bad, malformed, missing, bad)


def is_hamiltonian_path(path: Sequence[int], vertex_set: Iterable[int], start=None, end=None) -> bool:
    verts = set(vertex_set)
    if len(path) != len(verts) or set(path) != verts:
        return False
    if start is not None and path[0] != start:
        return False
    if end is not None and path[-1] != end:
        return False
    return all(is_adjacent(a, b) for a, b in zip(path, path[1:]))


def validate_path(path: Sequence[int], n: int, start=None, end=None, required=(), forbidden=(), vertex_set=None) -> bool:
    if vertex_set is None:
        vertex_set = range(1 << n)
    if not is_hamiltonian_path(path, vertex_set, start, end):
        return False
    used = path_edges(path)
    return all(e in used for e in required) and not any(e in used for e in forbidden)


def validate_spanning_pair(p1: Sequence[int], p2: Sequence[int], n: int) -> bool:
    if set(p1) & set(p2):
        return False
    verts = set(p1) | set(p2)
    if verts != set(range(1 << n)) or len(p1) + len(p2) != 1 << n:
        return False
    return all(is_adjacent(a, b) for p in (p1, p2) for a, b in zip(p, p[1:]))
