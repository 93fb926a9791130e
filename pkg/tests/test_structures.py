import pytest

from cubeham.cube import edge
from cubeham.errors import MalformedInstanceError
from cubeham.structures import (
    check_instance,
    cycle_from_edges,
    cycle_edges,
    is_linear_forest,
    is_matching,
    normalize_cycle,
    validate_cycle,
    validate_spanning_pair,
)

SQUARE = [0b00, 0b01, 0b11, 0b10]


def test_is_matching():
    assert is_matching([])
    assert is_matching([edge(0b000, 0b001), edge(0b010, 0b110)])
    assert not is_matching([edge(0b000, 0b001), edge(0b001, 0b011)])


def test_is_linear_forest():
    assert is_linear_forest([edge(0, 1), edge(2, 3)])
    assert not is_linear_forest(cycle_edges(SQUARE))
    assert is_linear_forest([edge(0, 1), edge(1, 3), edge(3, 7)])
    assert not is_linear_forest([edge(0, 1), edge(0, 2), edge(0, 4)])


def test_validate_cycle_square():
    assert validate_cycle(SQUARE, 2, [edge(0, 1)]).passed
    v = validate_cycle(SQUARE, 2, [edge(0, 1)], [edge(3, 2)])
    assert not v.passed and not v.avoids_faults and v.adjacent
    v = validate_cycle(SQUARE, 2, [(0, 3)])
    assert not v.passed and v.malformed


def test_validate_cycle_reports_each_problem():
    v = validate_cycle([0, 1, 3], 2)
    assert not v.covers_all
    v = validate_cycle([0, 3, 1, 2], 2)
    assert not v.adjacent
    v = validate_cycle(SQUARE, 2, [edge(0, 2)])
    assert v.contains_matching
    v = validate_cycle([0, 1, 3, 2], 2, [edge(0, 1), edge(1, 3)])
    assert v.malformed == ["M is not a matching"]


def test_check_instance_rejects_overlap_and_non_matching():
    with pytest.raises(MalformedInstanceError):
        check_instance(3, [edge(0, 1)], [edge(0, 1)])
    with pytest.raises(MalformedInstanceError):
        check_instance(3, [edge(0, 1), edge(1, 3)])
    with pytest.raises(MalformedInstanceError):
        check_instance(3, [(0, 3)])


def test_normalize_and_rebuild_cycle():
    assert normalize_cycle([3, 2, 0, 1]) == normalize_cycle(SQUARE)
    rebuilt = cycle_from_edges(cycle_edges(SQUARE), 4)
    assert cycle_edges(rebuilt) == cycle_edges(SQUARE)


def test_spanning_pair():
    assert validate_spanning_pair([0, 1], [2, 3], 2)
    assert not validate_spanning_pair([0, 1], [1, 3], 2)
    assert not validate_spanning_pair([0, 3], [1, 2], 2)
