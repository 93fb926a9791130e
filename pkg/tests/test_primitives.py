import itertools

import pytest

from cubeham import primitives as P
from cubeham.cube import all_edges, edge, edge_distance, hamming_distance
from cubeham.enumeration import instance_classes, matchings
from cubeham.errors import BudgetExceeded, ExceptionalCaseError, PreconditionError, UnsupportedError
from cubeham.structures import cycle_edges, is_linear_forest, validate_cycle, validate_path, validate_spanning_pair


def odd_pairs(n):
    return [(x, y) for x in range(1 << n) for y in range(1 << n) if hamming_distance(x, y) % 2]


def test_havel_small():
    assert P.havel_path(1, 0, 1) == [0, 1]
    assert validate_path(P.havel_path(2, 0b00, 0b01), 2, 0, 1)
    with pytest.raises(PreconditionError):
        P.havel_path(3, 0, 3)


@pytest.mark.parametrize("n", [3, 4, 5])
def test_havel_exhaustive(n):
    for x, y in odd_pairs(n):
        assert validate_path(P.havel_path(n, x, y), n, x, y)


def test_havel_search_route_agrees():
    assert validate_path(P.havel_path(4, 0, 7, method="search"), 4, 0, 7)


def test_path_through_edge():
    assert P.path_through_edge(2, 0b00, 0b01, edge(0b11, 0b10)) == [0, 2, 3, 1]
    with pytest.raises(PreconditionError):
        P.path_through_edge(2, 0, 1, edge(0, 1))
    for x, y in odd_pairs(3):
        for e in all_edges(3):
            if set(e) != {x, y}:
                assert validate_path(P.path_through_edge(3, x, y, e), 3, x, y, required=[e])


def test_path_avoiding_faults():
    assert validate_path(P.path_avoiding_faults(3, 0, 1), 3, 0, 1)
    for u, v in odd_pairs(3):
        for f in all_edges(3):
            assert validate_path(P.path_avoiding_faults(3, u, v, [f]), 3, u, v, forbidden=[f])
    with pytest.raises(PreconditionError):
        P.path_avoiding_faults(3, 0, 1, all_edges(3)[:2])


def test_spanning_two_paths_examples():
    assert P.spanning_two_paths(2, 0b00, 0b01, 0b10, 0b11, pin_xy=True) == ([0, 1], [2, 3])
    x, y, u, v = 0b000, 0b001, 0b110, 0b111
    assert edge_distance(edge(x, y), edge(u, v)) == 2
    with pytest.raises(ExceptionalCaseError):
        P.spanning_two_paths(3, x, y, u, v, pin_xy=True)
    p1, p2 = P.spanning_two_paths(3, x, y, u, v)
    assert validate_spanning_pair(p1, p2, 3)


def test_spanning_two_paths_rejects_even_distance():
    with pytest.raises(PreconditionError):
        P.spanning_two_paths(3, 0, 3, 1, 2)


def test_spanning_two_paths_exhaustive_q4_sample():
    verts = range(16)
    count = 0
    for x, y, u, v in itertools.permutations(verts, 4):
        if x > 3 or hamming_distance(x, y) % 2 == 0 or hamming_distance(u, v) % 2 == 0:
            continue
        p1, p2 = P.spanning_two_paths(4, x, y, u, v)
        assert validate_spanning_pair(p1, p2, 4) and (p1[0], p1[-1], p2[0], p2[-1]) == (x, y, u, v)
        count += 1
    assert count > 100


def test_cycle_through_forest():
    assert sorted(P.cycle_through_forest(2, [edge(0, 1)])) == [0, 1, 2, 3]
    for k in range(4):
        for E in itertools.combinations(all_edges(3), k):
            if not is_linear_forest(E):
                continue
            cyc = P.cycle_through_forest(3, E)
            assert validate_cycle(cyc, 3).passed and set(E) <= cycle_edges(cyc)
    with pytest.raises(PreconditionError):
        P.cycle_through_forest(3, cycle_edges([0, 1, 3, 2]))


def test_cycle_avoiding_faults_through_edge():
    edges = all_edges(3)
    for e in edges:
        for f in edges:
            if e != f:
                assert validate_cycle(P.cycle_avoiding_faults_through_edge(3, e, [f]), 3, [e], [f]).passed
    with pytest.raises(PreconditionError):
        P.cycle_avoiding_faults_through_edge(3, edges[0], edges[1:3])


def test_cycle_through_forest_avoiding_faults_q4_classes():
    for cls in instance_classes(4, 1, 2):
        cyc = P.cycle_through_forest_avoiding_faults(4, cls.matching, cls.faults)
        assert validate_cycle(cyc, 4, cls.matching, cls.faults).passed
    with pytest.raises(PreconditionError):
        P.cycle_through_forest_avoiding_faults(4, [edge(0, 1)], all_edges(4)[5:8])


def test_complementary_perfect_matching():
    assert sorted(P.complementary_perfect_matching(2, [edge(0, 1), edge(2, 3)])) == [0, 1, 2, 3]
    for M in matchings(3, 4):
        cyc = P.complementary_perfect_matching(3, M)
        assert validate_cycle(cyc, 3, M).passed
    with pytest.raises(UnsupportedError):
        P.complementary_perfect_matching(5, [])


def test_solve_infeasible_and_budget():
    assert P.solve(P.PathQuery(2)) is not None
    star = [edge(0, 1), edge(0, 2), edge(0, 4)]
    assert P.solve(P.PathQuery(3, (), required=star)) is None
    q3_exception = P.PathQuery(3, (), required=[edge(0, 1), edge(2, 6)], forbidden=[edge(5, 7)])
    assert P.solve(q3_exception) is None
    with pytest.raises(BudgetExceeded):
        P.solve(P.PathQuery(6, (), forbidden=all_edges(6)[:40:3]), P.SearchBudget(node_limit=5))


def test_budget_env(monkeypatch):
    monkeypatch.setenv("CUBEHAM_BUDGET", "123")
    assert P.SearchBudget().node_limit == 123
