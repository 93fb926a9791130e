"""Backtracking search for Hamiltonian paths/cycles with prescribed and forbidden edges.

The graph is Q_n minus the forbidden edges (and minus any excluded vertices).
A query asks for vertex-disjoint paths ``s_i -> t_i`` that together cover every
remaining vertex and use every required edge; a cycle query is reduced to a
single path whose ends are joined by a required (or a chosen) edge.

Vertex sets are Python ints used as bitsets.
"""

from __future__ import annotations

import random
from typing import Iterable, Sequence

from .errors import BudgetExceeded


def _bits(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def _color_diff(s: int, t: int) -> int:
    ps, pt = s.bit_count() & 1, t.bit_count() & 1
    if ps != pt:
        return 0
    return 1 if ps == 0 else -1


class _Search:
    def __init__(self, n, required, forbidden, excluded, limit):
        N = 1 << n
        self.n = n
        self.limit = limit
        self.nodes = 0
        excl = 0
        for v in excluded:
            excl |= 1 << v
        self.all = ((1 << N) - 1) & ~excl
        forb = {(min(a, b), max(a, b)) for a, b in forbidden}
        adj = [0] * N
        for v in range(N):
            if excl >> v & 1:
                continue
            m = 0
            for i in range(n):
                w = v ^ (1 << i)
                if excl >> w & 1 or (min(v, w), max(v, w)) in forb:
                    continue
                m |= 1 << w
            adj[v] = m
        self.adj = adj
        req = [0] * N
        self.ok = True
        for a, b in required:
            if not (adj[a] >> b & 1):
                self.ok = False
                continue
            req[a] |= 1 << b
            req[b] |= 1 << a
        for r in req:
            if r.bit_count() > 2:
                self.ok = False
        self.req = req

    def run(self, segments: Sequence[tuple[int, int]], limit: int | None = None, seed: int | None = None):
        if not self.ok:
            return None
        adj, req, ALL = self.adj, self.req, self.all
        starts = [s for s, _ in segments]
        ends = [t for _, t in segments]
        endpoints = starts + ends
        if len(set(endpoints)) != len(endpoints):
            return None
        for v in endpoints:
            if not (ALL >> v & 1) or req[v].bit_count() > 1:
                return None
        even = 0
        for v in _bits(ALL):
            even += 1 if v.bit_count() & 1 == 0 else -1
        if even != sum(_color_diff(s, t) for s, t in segments):
            return None
        last = len(segments) - 1
        # reserved[k]: endpoints of segments after k, which segment k may not touch
        reserved = []
        for k in range(len(segments)):
            m = 0
            for s, t in segments[k + 1:]:
                m |= 1 << s | 1 << t
            reserved.append(m)
        endmask = 0
        for v in endpoints:
            endmask |= 1 << v
        if limit is None:
            limit = self.limit
        limit += self.nodes
        if seed is None:
            prio = range(len(adj))
        else:
            prio = list(range(len(adj)))
            random.Random(seed).shuffle(prio)
        path: list[int] = [starts[0]]
        bounds: list[int] = [0]

        def connected(mask, start):
            seen = 1 << start
            frontier = seen
            while frontier:
                nxt = 0
                f = frontier
                while f:
                    low = f & -f
                    nxt |= adj[low.bit_length() - 1]
                    f ^= low
                nxt &= mask & ~seen
                seen |= nxt
                frontier = nxt
            return seen == mask

        def dfs(h, k, visited):
            self.nodes += 1
            if self.nodes > limit:
                raise BudgetExceeded(f"search exceeded {self.limit} nodes")
            t = ends[k]
            if h == t:
                if k == last:
                    return visited == ALL
                s = starts[k + 1]
                if req[s] & visited:
                    return False
                rest = ALL & ~visited
                if k + 1 == last and not connected(rest, s):
                    return False
                bounds.append(len(path))
                path.append(s)
                if dfs(s, k + 1, visited | 1 << s):
                    return True
                path.pop()
                bounds.pop()
                return False
            hb = 1 << h
            forced = req[h] & ~visited
            if forced:
                if forced & (forced - 1):
                    return False
                cands = [forced.bit_length() - 1]
            else:
                cm = adj[h] & ~visited & ~reserved[k]
                if not cm:
                    return False
                if cm & (cm - 1):
                    free = ~visited
                    cands = sorted(_bits(cm), key=lambda w: ((adj[w] & free).bit_count(), prio[w]))
                else:
                    cands = [cm.bit_length() - 1]
            for w in cands:
                wb = 1 << w
                rw = req[w]
                if rw & visited & ~hb:
                    continue
                if not (rw & hb) and rw & (rw - 1):
                    continue
                nv = visited | wb
                if w == t:
                    if rw & ~hb:
                        continue
                    if k == last and nv != ALL:
                        continue
                else:
                    if not (adj[w] & ~nv):
                        continue
                free = ~nv
                bad = False
                zm = adj[h] & free
                while zm:
                    low = zm & -zm
                    z = low.bit_length() - 1
                    zm ^= low
                    c = adj[z] & free
                    if low & endmask:
                        if not c:
                            bad = True
                            break
                    elif not c or not (c & (c - 1)):
                        bad = True
                        break
                if bad:
                    continue
                if k == last and w != t and not connected((ALL & free) | wb, w):
                    continue
                path.append(w)
                if dfs(w, k, nv):
                    return True
                path.pop()
            return False

        s0 = starts[0]
        if not dfs(s0, 0, 1 << s0):
            return None
        bounds.append(len(path))
        return [path[bounds[i]:bounds[i + 1]] for i in range(len(segments))]


# (node limit, seed) probes tried before the final complete search
RESTARTS = [(200, None)] + [(400 * 2 ** (i // 4), i) for i in range(1, 13)]


def _run(eng: _Search, segments) -> list[list[int]] | None:
    """Short seeded probes first (cuts heavy tails), then one complete search."""
    for limit, seed in RESTARTS:
        if eng.nodes + limit > eng.limit:
            break
        try:
            return eng.run(segments, limit, seed)
        except BudgetExceeded:
            continue
    return eng.run(segments, eng.limit - eng.nodes)


def find_paths(
    n: int,
    segments: Sequence[tuple[int, int]],
    required: Iterable = (),
    forbidden: Iterable = (),
    excluded: Iterable[int] = (),
    limit: int = 10**8,
) -> tuple[list[list[int]] | None, int]:
    """Vertex-disjoint spanning paths ``s_i -> t_i``; ``(None, nodes)`` when none exist."""
    eng = _Search(n, list(required), list(forbidden), list(excluded), limit)
    res = _run(eng, list(segments))
    return res, eng.nodes


def find_cycle(
    n: int,
    required: Iterable = (),
    forbidden: Iterable = (),
    limit: int = 10**8,
) -> tuple[list[int] | None, int]:
    """Hamiltonian cycle of Q_n - forbidden through every required edge."""
    required = sorted({(min(a, b), max(a, b)) for a, b in required})
    if n < 2:
        return None, 0
    cyc = _required_cycle(required, 1 << n)
    if cyc is not None:
        return (cyc or None), 0
    eng = _Search(n, required, list(forbidden), (), limit)
    if not eng.ok:
        return None, 0
    if required:
        a, b = required[0]
        eng.req[a] &= ~(1 << b)
        eng.req[b] &= ~(1 << a)
        res = _run(eng, [(b, a)])
        return (res[0] if res else None), eng.nodes
    for z in _bits(eng.adj[0]):
        res = _run(eng, [(z, 0)])
        if res:
            return res[0], eng.nodes
    return None, eng.nodes


def _required_cycle(required, num_vertices):
    """If the required edges contain a cycle: [] when hopeless, the cycle when it is Hamiltonian."""
    parent: dict[int, int] = {}

    def find(x):
        while parent.get(x, x) != x:
            x = parent[x]
        return x

    for a, b in required:
        ra, rb = find(a), find(b)
        if ra == rb:
            break
        parent[ra] = rb
    else:
        return None
    if len(required) != num_vertices:
        return []
    nbrs: dict[int, list[int]] = {}
    for a, b in required:
        nbrs.setdefault(a, []).append(b)
        nbrs.setdefault(b, []).append(a)
    if len(nbrs) != num_vertices or any(len(x) != 2 for x in nbrs.values()):
        return []
    seq = [0]
    prev, cur = 0, nbrs[0][0]
    while cur != 0:
        seq.append(cur)
        x, y = nbrs[cur]
        prev, cur = cur, (y if x == prev else x)
    return seq if len(seq) == num_vertices else []
