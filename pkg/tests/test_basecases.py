import pytest

from cubeham import basecases as B
from cubeham.cube import Edge, SubcubeSplit, all_edges, edge, hamming_distance
from cubeham.enumeration import instance_classes, matchings
from cubeham.errors import CaseAInstance, CatalogMismatchError, PreconditionError
from cubeham.structures import validate_cycle, validate_path, vertices_of
from cubeham.surgery import ConstructionTrace
from cubeham.verify import oracle

CASE_A_M = [edge(0, 1), edge(6, 7), edge(10, 11), edge(12, 13)]
CASE_A_F = [edge(2, 3)]


def test_catalog_counts():
    cat = B.exception_catalog()
    assert len(cat.q3_classes) == B.EXPECTED_Q3_EXCEPTIONS == 2
    M, F = cat.q4_class.matching, cat.q4_class.faults
    assert len(M) == 4 and len(F) == 1
    assert len({e.dim for e in M + F}) == 1


def test_catalog_members_are_infeasible():
    cat = B.exception_catalog()
    for cls in list(cat.q3_classes) + [cat.q4_class]:
        assert oracle(cls.n, cls.matching, cls.faults) is None


def test_catalog_export_round_trip_and_tamper():
    text = B.exception_catalog().export()
    assert len(B.parse_catalog_export(text)) == 3
    B.check_catalog_export(text)
    lines = text.splitlines()
    with pytest.raises(CatalogMismatchError):
        B.check_catalog_export("\n".join(lines[:-1]) + "\n")
    with pytest.raises(CatalogMismatchError):
        B.check_catalog_export(text.replace("2-3", "4-5"))


def test_is_case_a():
    assert B.is_case_a(CASE_A_M, CASE_A_F)
    rep = B.exception_catalog().q4_class
    assert B.is_case_a(rep.matching, rep.faults)
    assert not B.is_case_a(CASE_A_M[:3], CASE_A_F)
    assert not B.is_case_a([edge(0, 1), edge(2, 6), edge(8, 9), edge(12, 13)], [edge(4, 5)])


def test_case_a_is_invariant_under_relabeling():
    def flip(e):
        return Edge(*sorted((e[0] ^ 0b0110, e[1] ^ 0b0110)))

    assert B.is_case_a([flip(e) for e in CASE_A_M], [flip(e) for e in CASE_A_F])


def test_q3_path_through_matching_exhaustive():
    for k in range(4):
        for M in matchings(3, k):
            cover = vertices_of(M)
            for u in range(8):
                if u in cover:
                    continue
                for v in range(8):
                    if hamming_distance(u, v) % 2:
                        path = B.q3_path_through_matching(u, v, M)
                        assert validate_path(path, 3, u, v, required=M)
    with pytest.raises(PreconditionError):
        B.q3_path_through_matching(0, 1, [edge(0, 2)])


def test_q3_path_class_counts():
    assert B.q3_path_class_count() == (3, 10)


def test_q3_matching_plus_edge():
    for cls in instance_classes(3, 3, 0):
        M = cls.matching
        bad = [e for e in all_edges(3) if e not in M and B.q3_matching_plus_edge(M, e) is None]
        assert len(bad) <= 1
        for e in all_edges(3):
            if e not in M:
                cyc = B.q3_matching_plus_edge(M, e)
                if cyc is not None:
                    assert validate_cycle(cyc, 3, M).passed and e in {Edge(*sorted(p)) for p in zip(cyc, cyc[1:] + cyc[:1])}


def test_base_cycle_small_labels():
    trace = ConstructionTrace()
    assert sorted(B.base_cycle_small(2, [edge(0, 1)], trace)) == [0, 1, 2, 3]
    perfect = next(iter(matchings(4, 8)))
    trace = ConstructionTrace()
    cyc = B.base_cycle_small(4, perfect, trace)
    assert validate_cycle(cyc, 4, perfect).passed
    assert "Lemma11/perfect" in trace.labels


def test_q4_base():
    with pytest.raises(CaseAInstance):
        B.q4_base(CASE_A_M, CASE_A_F)
    with pytest.raises(PreconditionError):
        B.q4_base(CASE_A_M[:2], all_edges(4)[20:23])
    for cls in instance_classes(4, 2, 2):
        assert validate_cycle(B.q4_base(cls.matching, cls.faults), 4, cls.matching, cls.faults).passed
    M6 = next(iter(matchings(4, 6)))
    assert validate_cycle(B.q4_base(M6), 4, M6).passed


def test_q5_choose_dimension_avoids_case_a():
    sp = SubcubeSplit(5, 4)
    M = [sp.lift_edge(e, 0) for e in CASE_A_M]
    F = [sp.lift_edge(e, 0) for e in CASE_A_F]
    j = B.q5_choose_dimension(M, F)
    assert j != 4
    assert B.halves_avoid_case_a(M, F, j)
