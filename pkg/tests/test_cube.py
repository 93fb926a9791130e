import random
from collections import deque

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cubeham.cube import (
    Automorphism,
    Edge,
    SubcubeSplit,
    all_edges,
    automorphisms,
    canonicalize,
    edge,
    edge_distance,
    group_order,
    hamming_distance,
    neighbor,
    random_automorphism,
    separate_disjoint_edges,
    split,
    unsplit,
)
from cubeham.errors import PreconditionError, UnsupportedError


def test_neighbor_examples():
    assert neighbor(0b000, 0) == 0b001
    assert neighbor(0b101, 2) == 0b001
    with pytest.raises(ValueError):
        neighbor(0, 3, 3)


@given(st.integers(0, 63), st.integers(0, 5))
def test_neighbor_is_involution(v, i):
    assert neighbor(neighbor(v, i), i) == v


def test_hamming_examples():
    assert hamming_distance(0b000, 0b101) == 2
    assert hamming_distance(5, 5) == 0
    assert hamming_distance(0b0110, 0b1001) == 4


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_hamming_matches_bfs(n):
    for s in range(1 << n):
        dist = {s: 0}
        todo = deque([s])
        while todo:
            v = todo.popleft()
            for i in range(n):
                w = neighbor(v, i)
                if w not in dist:
                    dist[w] = dist[v] + 1
                    todo.append(w)
        assert all(hamming_distance(s, v) == d for v, d in dist.items())


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_cube_is_regular_and_bipartite(n):
    edges = all_edges(n)
    assert len(edges) == n << (n - 1)
    for a, b in edges:
        assert bin(a).count("1") % 2 != bin(b).count("1") % 2


def test_edge_distance_examples():
    assert edge_distance(edge(0, 1), edge(0, 2)) == 0
    assert edge_distance(edge(0b000, 0b001), edge(0b110, 0b111)) == 2


def test_q3_far_edge_is_fixed_point_free_involution():
    edges = all_edges(3)
    far = {}
    for e in edges:
        (f,) = [g for g in edges if edge_distance(e, g) == 2]
        far[e] = f
    assert all(far[far[e]] == e and far[e] != e for e in edges)


def test_split_examples():
    parts = split(2, 1, [edge(0b00, 0b01)])
    assert parts.m0 == {Edge(0, 1)}
    assert not (parts.m1 or parts.m_cross or parts.f0 or parts.f1 or parts.f_cross)
    perfect = [edge(v, v | 4) for v in range(16) if not v & 4]
    parts = split(4, 2, perfect)
    assert parts.m_cross == set(perfect) and not parts.m0 and not parts.m1


@pytest.mark.parametrize("n", [2, 3, 4, 5, 6])
def test_project_lift_round_trip(n):
    for j in range(n):
        sp = SubcubeSplit(n, j)
        for v in range(1 << n):
            assert sp.lift(sp.project(v), sp.side(v)) == v
            assert sp.partner(sp.partner(v)) == v
        edges = all_edges(n)
        M, F = edges[: len(edges) // 3], edges[len(edges) // 2 :]
        assert unsplit(split(n, j, M, F)) == (set(M), set(F))


def test_separate_disjoint_edges_examples():
    assert separate_disjoint_edges(3, edge(0b000, 0b001), edge(0b010, 0b110)) == 1
    assert separate_disjoint_edges(2, edge(0b00, 0b01), edge(0b10, 0b11)) == 1
    with pytest.raises(PreconditionError):
        separate_disjoint_edges(3, edge(0, 1), edge(1, 3))


@pytest.mark.parametrize("n", [2, 3, 4])
def test_separate_disjoint_edges_exhaustive(n):
    edges = all_edges(n)
    for e in edges:
        for f in edges:
            if set(e) & set(f):
                continue
            j = separate_disjoint_edges(n, e, f)
            assert j not in (e.dim, f.dim)
            assert (e.lo >> j & 1) != (f.lo >> j & 1)


def test_group_order_and_automorphisms():
    assert group_order(3) == 48
    group = list(automorphisms(3))
    assert len(group) == 48
    edges = set(all_edges(3))
    for g in group:
        assert g.apply_edges(edges) == edges
        assert g.compose(g.inverse()) == Automorphism.identity(3)


def test_canonicalize_examples():
    a = canonicalize(3, [edge(0b000, 0b001)])
    b = canonicalize(3, [edge(0b010, 0b110)])
    assert a == b


@settings(max_examples=30, deadline=None)
@given(st.integers(4, 6), st.integers(0, 2**32 - 1))
def test_canonicalize_is_invariant(n, seed):
    rng = random.Random(seed)
    edges = all_edges(n)
    used = set()
    M = []
    for e in rng.sample(edges, 6):
        if not set(e) & used:
            M.append(e)
            used |= set(e)
    F = [e for e in rng.sample(edges, 3) if e not in M]
    base = canonicalize(n, M, F)
    g = random_automorphism(n, rng)
    moved = canonicalize(n, g.apply_edges(M), g.apply_edges(F))
    assert moved == base
    assert canonicalize(n, base.matching, base.faults) == base


def test_canonicalize_keeps_matching_and_faults_apart():
    e, f = edge(0, 1), edge(2, 3)
    assert canonicalize(3, [e], [f]) != canonicalize(3, [e, f], [])


def test_canonicalize_refuses_large_n():
    with pytest.raises(UnsupportedError):
        canonicalize(7, [edge(0, 1)])
    assert canonicalize(7, [edge(4, 5)], large=True) == canonicalize(7, [edge(0, 1)], large=True)
