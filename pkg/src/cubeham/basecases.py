"""Small-cube lemmas that anchor both inductions, and the exceptional configurations.

The exceptional (M, F) classes are not transcribed from anywhere: they are
found by enumerating canonical instances and asking the exhaustive search
which ones have no cycle.  The counts are then checked against the known
values (two classes in Q_3, one in Q_4).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable

from . import primitives as P
from .cube import Edge, InstanceClass, canonicalize, dimension_counts, separate_disjoint_edges
from .enumeration import instance_classes
from .errors import (
    CaseAInstance,
    CatalogMismatchError,
    InternalInvariantError,
    PreconditionError,
)
from .structures import check_instance, cycle_edges, validate_cycle, validate_path, vertices_of
from .surgery import Halves, cycle_neighbors, cycle_pairs, merge_cycle_path, merge_cycle_two_paths, merge_cycles

EXPECTED_Q3_EXCEPTIONS = 2
EXPECTED_Q4_EXCEPTIONS = 1


def _e(a: int, b: int) -> Edge:
    return Edge(a, b) if a < b else Edge(b, a)


def _ceil_half(k: int) -> int:
    return -(-k // 2)


# --- exception catalog ------------------------------------------------------


@dataclass(frozen=True)
class ExceptionCatalog:
    q3_classes: frozenset
    q4_class: InstanceClass

    def export(self) -> str:
        """One canonical instance per line: ``n | M edges | F edges``."""
        lines = ["# n | matching | faults"]
        for cls in sorted(self.q3_classes, key=lambda c: (c.matching, c.faults)) + [self.q4_class]:
            m = " ".join(f"{a}-{b}" for a, b in cls.matching)
            f = " ".join(f"{a}-{b}" for a, b in cls.faults)
            lines.append(f"{cls.n} | {m} | {f}")
        return "\n".join(lines) + "\n"


def parse_catalog_export(text: str) -> list[tuple[int, tuple[Edge, ...], tuple[Edge, ...]]]:
    out = []
    for line in text.splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        try:
            n_s, m_s, f_s = (part.strip() for part in line.split("|"))
            edges = [tuple(_e(*map(int, tok.split("-"))) for tok in s.split()) for s in (m_s, f_s)]
            out.append((int(n_s), edges[0], edges[1]))
        except ValueError as exc:
            raise CatalogMismatchError(f"unreadable catalog line {line!r}: {exc}") from None
    return out


def _infeasible_classes(n: int, m_size: int, f_size: int) -> list[InstanceClass]:
    bad = []
    for cls in instance_classes(n, m_size, f_size):
        q = P.PathQuery(n, (), required=cls.matching, forbidden=cls.faults)
        if P.solve(q) is None:
            bad.append(cls)
    return bad


def build_exception_catalog() -> ExceptionCatalog:
    """Enumerate the two exceptional cells and keep the classes with no cycle."""
    q3 = _infeasible_classes(3, 2, 1)
    q4 = _infeasible_classes(4, 4, 1)
    if len(q3) != EXPECTED_Q3_EXCEPTIONS or len(q4) != EXPECTED_Q4_EXCEPTIONS:
        raise CatalogMismatchError(
            f"found {len(q3)} exceptional Q_3 classes and {len(q4)} Q_4 classes, "
            f"expected {EXPECTED_Q3_EXCEPTIONS} and {EXPECTED_Q4_EXCEPTIONS}"
        )
    cls = q4[0]
    dims = {e.dim for e in cls.matching + cls.faults}
    if len(dims) != 1:
        raise CatalogMismatchError(f"Q_4 exceptional class spans dimensions {sorted(dims)}")
    return ExceptionCatalog(frozenset(q3), cls)


@lru_cache(maxsize=1)
def exception_catalog() -> ExceptionCatalog:
    """The catalog, computed on first use and then shared."""
    return build_exception_catalog()


def check_catalog_export(text: str) -> None:
    """Compare an exported catalog (e.g. a pinned file) with a fresh derivation."""
    if text != exception_catalog().export():
        raise CatalogMismatchError("catalog file differs from the derived catalog")


def is_case_a(M: Iterable[Edge], F: Iterable[Edge]) -> bool:
    M, F = list(M), list(F)
    if len(M) != 4 or len(F) != 1:
        return False
    # the derived class lies in a single dimension (checked when it was built),
    # so anything spanning two dimensions is cheaply excluded
    if len({_e(*e).dim for e in M + F}) != 1:
        return False
    return canonicalize(4, M, F) == exception_catalog().q4_class


def is_q3_exception(M: Iterable[Edge], F: Iterable[Edge]) -> bool:
    M, F = list(M), list(F)
    if len(M) != 2 or len(F) != 1:
        return False
    return canonicalize(3, M, F) in exception_catalog().q3_classes


# --- Q_3 lemmas ---------------------------------------------------------------


def q3_path_through_matching(u: int, v: int, M: Iterable[Edge]) -> list[int]:
    """Hamiltonian u-v path of Q_3 through a matching M that avoids u."""
    M = set(check_instance(3, M)[0])
    for w in (u, v):
        if not 0 <= w < 8:
            raise PreconditionError(f"vertex {w} outside Q_3")
    if u in vertices_of(M):
        raise PreconditionError(f"u = {u} is covered by M")
    if bin(u ^ v).count("1") % 2 == 0:
        raise PreconditionError(f"d({u},{v}) must be odd")
    if not M:
        return P.havel_path(3, u, v)
    path = P._must(P.PathQuery(3, ((u, v),), required=M), "q3_path_through_matching", None)
    if not validate_path(path, 3, u, v, required=M):
        raise InternalInvariantError("q3_path_through_matching produced an invalid path")
    return path


def q3_matching_plus_edge(M: Iterable[Edge], e: Edge) -> list[int] | None:
    """Cycle of Q_3 through M (|M| = 3) and e, or None for the exceptional pair."""
    M, _ = check_instance(3, M)
    e = _e(*e)
    if len(M) != 3:
        raise PreconditionError(f"|M| = {len(M)}, expected 3")
    if e in M:
        raise PreconditionError("e already belongs to M")
    return P.solve(P.PathQuery(3, (), required=set(M) | {e}))


def q3_cycle_two_edges_one_fault(M: Iterable[Edge], f: Edge) -> list[int] | None:
    """Cycle of Q_3 - f through M (|M| = 2), or None for the two exceptional classes."""
    return P.solve(P.PathQuery(3, (), required=M, forbidden={_e(*f)}))


def q3_path_class_count() -> tuple[int, int]:
    """Classes of (M, u) in Q_3 with u outside V(M): (|M| = 3 only, all |M| <= 3).

    A vertex is encoded as a pseudo-fault loop-free marker: we canonicalize
    (M, {u-edge}) pairs through the full group directly instead.
    """
    from .cube import automorphisms

    group = list(automorphisms(3))
    from .enumeration import matchings

    def classes(sizes):
        seen = set()
        for k in sizes:
            for M in matchings(3, k):
                cover = vertices_of(M)
                for u in range(8):
                    if u in cover:
                        continue
                    key = min(
                        (tuple(sorted(g.apply_edge(x) for x in M)), g(u)) for g in group
                    )
                    seen.add(key)
        return len(seen)

    return classes([3]), classes([0, 1, 2, 3])


# --- small cubes, no faults ----------------------------------------------------


def _record(trace, n, j, label, calls=()):
    if trace is not None:
        trace.record(n, j, label, calls=calls)


def base_cycle_small(n: int, M: Iterable[Edge], trace=None) -> list[int]:
    """Hamiltonian cycle through any matching of Q_n, n in {2, 3, 4}."""
    if n not in (2, 3, 4):
        raise PreconditionError("base_cycle_small covers n = 2, 3, 4")
    M, _ = check_instance(n, M)
    if len(M) == 1 << (n - 1):
        _record(trace, n, None, "Lemma11/perfect", ["complementary_perfect_matching"])
        return P.complementary_perfect_matching(n, M)
    if n <= 3:
        _record(trace, n, None, "Lemma11/forest", ["cycle_through_forest"])
        return P.cycle_through_forest(n, M)
    counts = dimension_counts(n, M)
    j = next(i for i, c in enumerate(counts) if c <= 1)
    h = Halves(n, j, M, (), 0)
    if len(h.M1) == 4:
        h = Halves(n, j, M, (), 1)
    C0 = h.up(base_cycle_small(3, h.down(h.M0), trace), 0)
    if h.Mc:
        (c,) = h.Mc
        u = c[0] if h.half_of(c[0]) == 0 else c[1]
        v = min(cycle_neighbors(C0, u))
    else:
        cover1 = vertices_of(h.M1)
        u = v = None
        for a, b in cycle_pairs(C0):
            if _e(a, b) in h.M0:
                continue
            if h.partner(a) not in cover1:
                u, v = a, b
                break
            if h.partner(b) not in cover1:
                u, v = b, a
                break
        if u is None:
            raise InternalInvariantError("Lemma11/split: no usable edge on C0")
    P1 = q3_path_through_matching(h.down_v(h.partner(u)), h.down_v(h.partner(v)), h.down(h.M1))
    return merge_cycle_path(C0, h.up(P1, 1), [(u, v)], h.sp, trace=trace, label="Lemma11/split")


# --- Q_4 with faults -----------------------------------------------------------


def _lemma7(h: Halves, half: int, e, F, trace=None):
    return h.up(P.cycle_avoiding_faults_through_edge(h.n - 1, h.sp.project_edge(_e(*e)), h.down(F)), half)


def _forest(h: Halves, half: int, E):
    return h.up(P.cycle_through_forest(h.n - 1, h.down(E)), half)


def _search_cycle(n, M, F, label, trace):
    _record(trace, n, None, label, ["solve"])
    return P._must(P.PathQuery(n, (), required=M, forbidden=F), label, None)


def _lemma14(M, F, trace):
    (f,) = F
    counts = dimension_counts(4, M)
    j = None
    for i in range(4):
        if counts[i] == 0:
            h = Halves.oriented(4, i, M, F)
            if len(h.M0) <= 3:
                j = i
                break
    if j is None:
        # every M-free dimension puts all four edges in one half
        return _search_cycle(4, M, F, "Lemma14/unsplittable-search", trace)
    if len(h.M0) == 3:
        (xy,) = h.M1
        if f in h.F0:
            C0 = _forest(h, 0, h.M0)
            E0 = cycle_edges(C0)
            if f not in E0 or h.partner_edge(f) != xy:
                if f in E0:
                    uv, label = f, "Lemma14/Case1/Subcase1.1/f-on-C0"
                else:
                    uv = next(_e(a, b) for a, b in cycle_pairs(C0) if _e(a, b) not in h.M0 and h.partner_edge((a, b)) != xy)
                    label = "Lemma14/Case1/Subcase1.1/f-off-C0"
                u, v = uv
                P1 = P.path_through_edge(3, h.down_v(h.partner(u)), h.down_v(h.partner(v)), h.sp.project_edge(xy))
                return merge_cycle_path(C0, h.up(P1, 1), [uv], h.sp, trace=trace, label=label)
            uv = next(
                _e(a, b) for a, b in cycle_pairs(C0)
                if _e(a, b) not in h.M0 and not ({a, b} & set(f))
            )
            u, v = uv
            x, y = xy
            _, P1 = P.spanning_two_paths(
                3, h.down_v(x), h.down_v(y), h.down_v(h.partner(u)), h.down_v(h.partner(v)), pin_xy=True
            )
            return merge_cycle_two_paths(
                C0, [x, y], h.up(P1, 1), [f, uv], h.sp, trace=trace, label="Lemma14/Case1/Subcase1.1/f-matches-xy"
            )
        C1 = _lemma7(h, 1, xy, h.F1)
        for a, b in cycle_pairs(C1):
            uv = _e(a, b)
            if uv == xy:
                continue
            u0v0 = h.partner_edge(uv)
            if u0v0 in h.M0 or f in (_e(a, h.partner(a)), _e(b, h.partner(b))):
                continue
            C0 = q3_matching_plus_edge(h.down(h.M0), h.sp.project_edge(u0v0))
            if C0 is None:
                continue
            return merge_cycles(h.up(C0, 0), C1, u0v0, h.sp, trace=trace, label="Lemma14/Case1/Subcase1.2")
        raise InternalInvariantError("Lemma14/Case1/Subcase1.2: no usable edge on C1")
    # |M0| = |M1| = 2; keep f out of half 1
    if f in h.F1:
        h = Halves(4, j, M, F, 1 - h.side[0])
    cover1 = h.M1
    if f in h.Fc:
        C0 = _forest(h, 0, h.M0)
        uv = next(
            _e(a, b) for a, b in cycle_pairs(C0)
            if _e(a, b) not in h.M0 and h.partner_edge((a, b)) not in cover1 and not ({a, b} & set(f))
        )
        label = "Lemma14/Case2/f-crosses"
    else:
        m0, f0 = h.down(h.M0), h.down(h.F0)
        if not is_q3_exception(m0, f0):
            C0 = h.up(q3_cycle_two_edges_one_fault(m0, next(iter(f0))), 0)
            uv = next(_e(a, b) for a, b in cycle_pairs(C0) if _e(a, b) not in h.M0 and h.partner_edge((a, b)) not in cover1)
            label = "Lemma14/Case2/f-in-half0"
        elif h.partner_edge(f) not in cover1:
            C0 = _forest(h, 0, set(h.M0) | {f})
            uv = f
            label = "Lemma14/Case2/exceptional-half0"
        else:
            return _search_cycle(4, M, F, "Lemma14/Case2/exceptional-half0-search", trace)
    C1 = _forest(h, 1, set(h.M1) | {h.partner_edge(uv)})
    return merge_cycles(C0, C1, uv, h.sp, trace=trace, label=label)


def _lemma15(M, F, trace):
    (f,) = F
    h = Halves.oriented(4, f.dim, M, F)
    (c,) = h.Mc
    u = c[0] if h.half_of(c[0]) == 0 else c[1]
    C0 = _forest(h, 0, h.M0)
    v = next(w for w in sorted(cycle_neighbors(C0, u)) if _e(w, h.partner(w)) != f)
    C1 = _forest(h, 1, set(h.M1) | {_e(h.partner(u), h.partner(v))})
    return merge_cycles(C0, C1, _e(u, v), h.sp, trace=trace, label="Lemma15")


def _lemma17(M, F, trace):
    e, hh = sorted(M)
    j = separate_disjoint_edges(4, e, hh)
    side_e = Halves(4, j, M, F).sp.side(e[0])
    h = Halves(4, j, M, F, side_e)
    if len(h.F1) > len(h.F0):
        h = Halves(4, j, M, F, 1 - side_e)
        e, hh = hh, e
    Fall = set(F)
    if not h.F1:
        if len(h.F0) <= 1:
            C0 = _lemma7(h, 0, e, h.F0)
            uv = next(
                _e(a, b) for a, b in cycle_pairs(C0)
                if _e(a, b) != e
                and not ({_e(a, h.partner(a)), _e(b, h.partner(b))} & Fall)
                and h.partner_edge((a, b)) != hh
            )
            label = "Lemma17/Case1/one-fault-in-half0"
        else:
            f = next(x for x in sorted(h.F0) if h.partner_edge(x) != hh)
            g = next(x for x in h.F0 if x != f)
            C0 = _lemma7(h, 0, e, [g])
            if f in cycle_edges(C0):
                uv = f
            else:
                uv = next(_e(a, b) for a, b in cycle_pairs(C0) if _e(a, b) != e and h.partner_edge((a, b)) != hh)
            label = "Lemma17/Case1/both-faults-in-half0"
        u, v = uv
        P1 = P.path_through_edge(3, h.down_v(h.partner(u)), h.down_v(h.partner(v)), h.sp.project_edge(hh))
        return merge_cycle_path(C0, h.up(P1, 1), [uv], h.sp, trace=trace, label=label)
    C0 = _lemma7(h, 0, e, h.F0)
    C1 = _lemma7(h, 1, hh, h.F1)
    E1 = cycle_edges(C1)
    uv = next(
        _e(a, b) for a, b in cycle_pairs(C0)
        if _e(a, b) != e and h.partner_edge((a, b)) in E1 and h.partner_edge((a, b)) != hh
    )
    return merge_cycles(C0, C1, uv, h.sp, trace=trace, label="Lemma17/Case2")


def q4_base(M: Iterable[Edge], F: Iterable[Edge] = (), trace=None, pure_solver: bool = False) -> list[int]:
    """Cycle of Q_4 - F through M for 1 <= |M| <= 6, |F| <= 3 - ceil(|M|/2).

    Raises :class:`CaseAInstance` for the one exceptional class.
    """
    M, F = check_instance(4, M, F)
    if not 1 <= len(M) <= 6 or len(F) > 3 - _ceil_half(len(M)):
        raise PreconditionError(f"(|M|, |F|) = ({len(M)}, {len(F)}) outside the Q_4 base range")
    if is_case_a(M, F):
        raise CaseAInstance("this (M, F) is the exceptional Q_4 configuration; no cycle exists")
    if pure_solver:
        cyc = _search_cycle(4, M, F, "Lemma18/pure-solver", trace)
    elif not F:
        _record(trace, 4, None, "Lemma18/no-faults")
        cyc = base_cycle_small(4, M, trace)
    elif len(M) == 2 and len(F) == 2:
        cyc = _lemma17(M, F, trace)
    elif len(M) <= 3:
        _record(trace, 4, None, "Lemma18/Lemma8", ["cycle_through_forest_avoiding_faults"])
        cyc = P.cycle_through_forest_avoiding_faults(4, M, F)
    elif 0 in dimension_counts(4, M):
        cyc = _lemma14(M, F, trace)
    else:
        cyc = _lemma15(M, F, trace)
    if not validate_cycle(cyc, 4, M, F).passed:
        raise InternalInvariantError("q4_base produced an invalid cycle")
    return cyc


# --- Q_5 dimension choice ------------------------------------------------------


def halves_avoid_case_a(M, F, j: int) -> bool:
    h = Halves(5, j, M, F)
    return not (is_case_a(h.down(h.M0), h.down(h.F0)) or is_case_a(h.down(h.M1), h.down(h.F1)))


def q5_choose_dimension(M: Iterable[Edge], F: Iterable[Edge] = ()) -> int:
    """A split dimension j of Q_5 with |E_j ∩ (M ∪ F)| <= 1 and no half in the exceptional class."""
    M, F = check_instance(5, M, F)
    if not 1 <= len(M) <= 8 or len(F) > 4 - _ceil_half(len(M)):
        raise PreconditionError(f"(|M|, |F|) = ({len(M)}, {len(F)}) outside the Q_5 range")
    counts = dimension_counts(5, set(M) | set(F))
    light = [i for i in range(5) if counts[i] <= 1]
    if not light:
        raise InternalInvariantError("no dimension carries at most one prescribed or faulty edge")
    j = light[0]
    if not F or len(M) <= 3:
        chosen = j
    elif halves_avoid_case_a(M, F, j):
        chosen = j
    elif len(M) == 4:
        mcounts = dimension_counts(5, M)
        fcounts = dimension_counts(5, F)
        chosen = None
        for j0 in range(5):
            if mcounts[j0] == 0 and fcounts[j0] <= 1:
                h = Halves(5, j0, M, F)
                if len(h.M0) == 2 and len(h.M1) == 2:
                    chosen = j0
                    break
    else:
        h = Halves(5, j, M, F)
        bad = h.M0 if is_case_a(h.down(h.M0), h.down(h.F0)) else h.M1
        k = next(iter(bad)).dim
        chosen = next((i for i in light if i not in (j, k) and halves_avoid_case_a(M, F, i)), None)
    if chosen is None or counts[chosen] > 1 or not halves_avoid_case_a(M, F, chosen):
        raise InternalInvariantError(f"no valid split dimension found for {sorted(M)}, {sorted(F)}")
    return chosen
