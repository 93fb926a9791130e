"""Recursive construction of Hamiltonian cycles through prescribed matchings.

``extend_matching`` handles fault-free cubes and up to 2n-1 prescribed edges;
``extend_matching_faulty`` adds faulty edges.  Both split Q_n by one
dimension, solve one half recursively, and stitch the other half in with a
cycle, a path, or a pair of spanning paths.  Every branch taken is logged in
an optional :class:`ConstructionTrace` under a case label.
"""

from __future__ import annotations

from itertools import combinations
from typing import Iterable

from . import primitives as P
from .basecases import base_cycle_small, q4_base, q5_choose_dimension
from .cube import Edge, all_edges, check_dimension, dimension_counts, hamming_distance
from .errors import CaseAInstance, InternalInvariantError, PreconditionError
from .structures import check_instance, cycle_edges, normalize_cycle, validate_cycle
from .surgery import (
    ConstructionTrace,
    Halves,
    closes_single_cycle,
    cycle_neighbors,
    cycle_pairs,
    merge_cycle_path,
    merge_cycle_two_paths,
    merge_cycles,
)

# Branch labels of the two inductive constructions.  A label is a proof case
# followed by the concrete branch taken inside it; the sweep coverage report
# checks that every one of them is reached.
THEOREM1_LABELS = (
    "Thm1/Claim1/cross",
    "Thm1/Claim1/no-cross",
    "Thm1/Case1/xy-on-C0",
    "Thm1/Case1/path",
    "Thm1/Case1/two-paths",
    "Thm1/Case2/both-on-C0",
    "Thm1/Case2/one-on-C0",
    "Thm1/Case2/shape1",
    "Thm1/Case2/shape2",
)
THEOREM2_LABELS = (
    "Thm2/Case1/Subcase1.1",
    "Thm2/Case1/Subcase1.2.1/xy-on-C0",
    "Thm2/Case1/Subcase1.2.1/xy-off-C0",
    "Thm2/Case1/Subcase1.2.1/single-edge-half",
    "Thm2/Case1/Subcase1.2.2",
    "Thm2/Case1/Subcase1.3/f-on-C0",
    "Thm2/Case1/Subcase1.3/f-off-C0",
    "Thm2/Case1/Subcase1.3/F0-empty",
    "Thm2/Case1/Subcase1.3/F0-empty-two-edges",
    "Thm2/Case2",
    "Thm2/Case3/reduce",
    "Thm2/Case3/Subcase3.1.1/f-off-C0",
    "Thm2/Case3/Subcase3.1.1/u-on-f",
    "Thm2/Case3/Subcase3.1.1/f-away-from-u",
    "Thm2/Case3/Subcase3.1.2",
    "Thm2/Case3/Subcase3.2/F0-nonempty",
    "Thm2/Case3/Subcase3.2/F0-empty",
)
CASE_LABELS = THEOREM1_LABELS + THEOREM2_LABELS


def _e(a: int, b: int) -> Edge:
    return Edge(a, b) if a < b else Edge(b, a)


def _ceil_half(k: int) -> int:
    return -(-k // 2)


def _guard(cond: bool, what: str, trace=None) -> None:
    if not cond:
        err = InternalInvariantError(f"counting guard failed: {what}")
        err.trace = trace
        raise err


def _odd(a: int, b: int) -> bool:
    return hamming_distance(a, b) % 2 == 1


def _cross_vertex(h: Halves) -> int:
    """Half-0 endpoint of the single crossing matching edge."""
    (c,) = h.Mc
    return c[0] if h.half_of(c[0]) == 0 else c[1]


def _first_edge(C, pred):
    for a, b in cycle_pairs(C):
        if pred(a, b):
            return _e(a, b)
    return None


def _down_path(h: Halves, a: int, b: int) -> tuple[int, int]:
    return h.down_v(h.partner(a)), h.down_v(h.partner(b))


# --- fault-free -----------------------------------------------------------------


def extend_matching(n: int, M: Iterable[Edge], trace: ConstructionTrace | None = None) -> list[int]:
    """Hamiltonian cycle of Q_n containing the matching M, |M| <= 2n-1.

    For n <= 4 every matching is accepted (the base case covers them all,
    perfect matchings included).
    """
    check_dimension(n)
    if n < 2:
        raise PreconditionError("needs n >= 2")
    M, _ = check_instance(n, M)
    if n > 4 and len(M) > 2 * n - 1:
        raise PreconditionError(f"|M| = {len(M)} exceeds 2n-1 = {2 * n - 1}")
    cyc = _thm1(n, M, trace)
    if not validate_cycle(cyc, n, M).passed:
        raise InternalInvariantError("extend_matching produced an invalid cycle", trace)
    return cyc


def _claim1(h: Halves, C0, trace, label=None):
    """Extend a cycle of half 0 through M0 to one of Q_n through M."""
    n = h.n
    if h.Mc:
        u = _cross_vertex(h)
        v = min(cycle_neighbors(C0, u))
    else:
        _guard((1 << (n - 1)) - (len(h.M0) + len(h.M1)) >= 1, "2^{n-1} - (2n-1) >= 1", trace)
        uv = _first_edge(C0, lambda a, b: _e(a, b) not in h.M0 and h.partner_edge((a, b)) not in h.M1)
        _guard(uv is not None, "Thm1/Claim1 finds uv with u1v1 outside M1", trace)
        u, v = uv
    if label is None:
        label = "Thm1/Claim1/" + ("cross" if h.Mc else "no-cross")
    forest = h.down(h.M1) | {h.sp.project_edge(h.partner_edge((u, v)))}
    _guard(len(forest) <= 2 * (n - 1) - 3, "|M1 + u1v1| <= 2(n-1)-3", trace)
    C1 = h.up(P.cycle_through_forest(n - 1, forest), 1)
    return merge_cycles(C0, C1, _e(u, v), h.sp, trace=trace, label=label)


def _reinsert_options(C0, x, y):
    """The two (s, t) choices: s, t neighbors of x, y on different x-y arcs of C0."""
    xs, xp = cycle_neighbors(C0, x)
    ys, yp = cycle_neighbors(C0, y)
    return [(xs, ys), (xp, yp)]


def _thm1(n: int, M, trace) -> list[int]:
    if n <= 4:
        return list(normalize_cycle(base_cycle_small(n, M, trace)))
    counts = dimension_counts(n, M)
    j = next(i for i, c in enumerate(counts) if c <= 1)
    h = Halves.oriented(n, j, M)
    if len(h.M0) <= 2 * (n - 1) - 1:
        C0 = h.up(_thm1(n - 1, h.down(h.M0), trace), 0)
        return list(normalize_cycle(_claim1(h, C0, trace)))
    if len(h.M0) == 2 * n - 2:
        cyc = _thm1_case1(h, trace)
    else:
        cyc = _thm1_case2(h, trace)
    return list(normalize_cycle(cyc))


def _retrying(h: Halves, k: int, attempt, what: str, trace):
    """Try the withheld k-subsets of M0 in lexicographic order until one closes.

    The first choice almost always works; a later one is needed only when the
    neighbors picked on C0 collide with the other withheld endpoints.
    """
    for i, withheld in enumerate(combinations(sorted(h.M0), k)):
        mark = len(trace.steps) if trace is not None else 0
        cyc = attempt(h, withheld, trace)
        if cyc is not None:
            if i and trace is not None:
                trace.record(h.n, h.j, f"Thm1/Case{k}/rechosen-withheld")
            return cyc
        if trace is not None:
            del trace.steps[mark:]
    _guard(False, what, trace)


def _thm1_case1(h: Halves, trace):
    return _retrying(h, 1, _thm1_case1_attempt, "Thm1/Case1 finds s, t, v avoiding u", trace)


def _thm1_case2(h: Halves, trace):
    return _retrying(h, 2, _thm1_case2_attempt, "Thm1/Case2 finds neighbors r, s, w, t", trace)


def _thm1_case1_attempt(h: Halves, withheld, trace):
    n = h.n
    (xy,) = withheld
    x, y = xy
    C0 = h.up(_thm1(n - 1, h.down(h.M0 - {xy}), trace), 0)
    if xy in cycle_edges(C0):
        return _claim1(h, C0, trace, label="Thm1/Case1/xy-on-C0")
    options = _reinsert_options(C0, x, y)
    if not h.Mc:
        _guard(len(h.M1) <= 1, "|M1| <= 1", trace)
        for s, t in options:
            s1t1 = h.partner_edge((s, t)) if hamming_distance(s, t) == 1 else None
            if s1t1 is None or s1t1 not in h.M1:
                break
        else:
            _guard(False, "some (s, t) has s1t1 outside M1", trace)
        _guard(_odd(s, t), "d(s, t) odd", trace)
        P1 = P.path_through_edges(n - 1, *_down_path(h, s, t), h.down(h.M1))
        return merge_cycle_path(C0, h.up(P1, 1), [(x, s), (y, t)], h.sp, bridge=[xy], trace=trace, label="Thm1/Case1/path")
    u = _cross_vertex(h)
    for s, t in options:
        if u in (s, t):
            continue
        for v in sorted(cycle_neighbors(C0, u)):
            if v in (s, t):
                continue
            cut = [(u, v), (x, s), (y, t)]
            if len({_e(*c) for c in cut}) < 3 or not closes_single_cycle(C0, cut, [xy], [(u, v), (s, t)]):
                continue
            _guard(_odd(u, v) and _odd(s, t), "spanning path pairs have odd distance", trace)
            Pa, Pb = P.spanning_two_paths(n - 1, *_down_path(h, u, v), *_down_path(h, s, t))
            return merge_cycle_two_paths(
                C0, h.up(Pa, 1), h.up(Pb, 1), cut, h.sp, bridge=[xy], trace=trace, label="Thm1/Case1/two-paths"
            )
    return None


def _thm1_case2_attempt(h: Halves, withheld, trace):
    n = h.n
    xy, uv = withheld
    C0 = h.up(_thm1(n - 1, h.down(h.M0 - {xy, uv}), trace), 0)
    E0 = cycle_edges(C0)
    on = [e for e in (xy, uv) if e in E0]
    if len(on) == 2:
        return _claim1(h, C0, trace, label="Thm1/Case2/both-on-C0")
    if len(on) == 1:
        if xy in E0:
            xy, uv = uv, xy
        x, y = xy
        s, t = _reinsert_options(C0, x, y)[0]
        _guard(_odd(s, t), "d(s, t) odd", trace)
        P1 = P.havel_path(n - 1, *_down_path(h, s, t))
        return merge_cycle_path(C0, h.up(P1, 1), [(x, s), (y, t)], h.sp, bridge=[xy], trace=trace, label="Thm1/Case2/one-on-C0")
    x, y = xy
    u, v = uv
    # shape (1): one u-v arc of C0 holds both x and y
    i_u, i_v = C0.index(u), C0.index(v)
    lo, hi = sorted((i_u, i_v))
    inside = [lo < C0.index(w) < hi for w in (x, y)]
    shape1 = inside[0] == inside[1]
    if not shape1 and not _odd(x, v):
        u, v = v, u
    for r in sorted(cycle_neighbors(C0, x)):
        for s in sorted(cycle_neighbors(C0, y)):
            for w in sorted(cycle_neighbors(C0, u)):
                for t in sorted(cycle_neighbors(C0, v)):
                    ends = {r, s, w, t}
                    if len(ends) < 4 or ends & {x, y, u, v}:
                        continue
                    pairs = [(r, s), (w, t)] if shape1 else [(r, t), (w, s)]
                    cut = [(x, r), (y, s), (u, w), (v, t)]
                    if not closes_single_cycle(C0, cut, [xy, uv], pairs):
                        continue
                    _guard(all(_odd(a, b) for a, b in pairs), "crossing pairs have odd distance", trace)
                    Pa, Pb = P.spanning_two_paths(n - 1, *_down_path(h, *pairs[0]), *_down_path(h, *pairs[1]))
                    return merge_cycle_two_paths(
                        C0, h.up(Pa, 1), h.up(Pb, 1), cut, h.sp, bridge=[xy, uv], trace=trace,
                        label="Thm1/Case2/shape1" if shape1 else "Thm1/Case2/shape2",
                    )
    return None


# --- with faults ------------------------------------------------------------------


def extend_matching_faulty(
    n: int, M: Iterable[Edge], F: Iterable[Edge] = (), trace: ConstructionTrace | None = None
) -> list[int]:
    """Hamiltonian cycle of Q_n - F through M.

    Needs n >= 4, 1 <= |M| <= 2n-2, |F| <= n-1-ceil(|M|/2).  Raises
    :class:`CaseAInstance` for the single exceptional Q_4 class.
    """
    check_dimension(n)
    if n < 4:
        raise PreconditionError("needs n >= 4")
    M, F = check_instance(n, M, F)
    if not 1 <= len(M) <= 2 * n - 2:
        raise PreconditionError(f"|M| = {len(M)} outside [1, {2 * n - 2}]")
    if len(F) > n - 1 - _ceil_half(len(M)):
        raise PreconditionError(f"|F| = {len(F)} exceeds n-1-ceil(|M|/2) = {n - 1 - _ceil_half(len(M))}")
    try:
        cyc = _thm2(n, M, F, trace)
    except InternalInvariantError as err:
        if err.trace is None:
            err.trace = trace
        raise
    if not validate_cycle(cyc, n, M, F).passed:
        raise InternalInvariantError("extend_matching_faulty produced an invalid cycle", trace)
    return cyc


def pad_faults(n: int, M, F) -> frozenset:
    """Add the lexicographically smallest free edges until |F| = n-1-ceil(|M|/2)."""
    target = n - 1 - _ceil_half(len(M))
    F = set(F)
    for e in all_edges(n):
        if len(F) >= target:
            break
        if e not in M and e not in F:
            F.add(e)
    return frozenset(F)


def _thm2(n: int, M, F, trace) -> list[int]:
    """Recursive entry; returns a normalized cycle."""
    if not F:
        return _thm1(n, M, trace)
    if len(M) == 1:
        if trace is not None:
            trace.record(n, None, "Thm2/single-edge", calls=["cycle_avoiding_faults_through_edge"])
        return list(normalize_cycle(P.cycle_avoiding_faults_through_edge(n, next(iter(M)), F)))
    F = pad_faults(n, M, F)
    if n == 4:
        return list(normalize_cycle(q4_base(M, F, trace)))
    if n == 5:
        j = q5_choose_dimension(M, F)
    else:
        counts = dimension_counts(n, set(M) | set(F))
        j = next(i for i, c in enumerate(counts) if c <= 1)
    return list(normalize_cycle(_thm2_split(n, j, M, F, trace)))


def _rec(h: Halves, half: int, M, F, trace):
    """Recursive call on one half; M and F are Q_n-coordinate edge sets inside that half."""
    try:
        C = _thm2(h.n - 1, frozenset(h.down(M)), frozenset(h.down(F)), trace)
    except CaseAInstance:
        raise InternalInvariantError("a half is the exceptional Q_4 configuration") from None
    return h.up(C, half)


# A prescribed edge here is always the partner of the edge cut from the other
# half's cycle, so the merge deletes it again; a fault on it can be ignored.
def _lemma7(h: Halves, half: int, e, F):
    e = _e(*e)
    F = {_e(*f) for f in F} - {e}
    return h.up(P.cycle_avoiding_faults_through_edge(h.n - 1, h.sp.project_edge(e), h.down(F)), half)


def _lemma8(h: Halves, half: int, E, F):
    E = {_e(*x) for x in E}
    F = {_e(*f) for f in F} - E
    return h.up(P.cycle_through_forest_avoiding_faults(h.n - 1, h.down(E), h.down(F)), half)


def _lemma6(h: Halves, half: int, E):
    return h.up(P.cycle_through_forest(h.n - 1, h.down(E)), half)


def _thm2_split(n, j, M, F, trace):
    h = Halves.oriented(n, j, M, F)
    _guard(1 <= len(h.M0) <= 2 * (n - 1) - 2, "1 <= |M0| <= 2(n-1)-2", trace)
    _guard(not (h.Mc and h.Fc) and len(h.Mc) + len(h.Fc) <= 1, "|E_j ∩ (M ∪ F)| <= 1", trace)
    if h.Fc:
        return _thm2_case2(h, trace)
    if h.Mc:
        if len(M) <= 3:
            counts_m = dimension_counts(n, M)
            counts_f = dimension_counts(n, F)
            j0 = next(
                (i for i in range(n) if counts_m[i] == 0 and counts_f[i] <= 1),
                None,
            )
            _guard(j0 is not None, "Thm2/Case3/reduce finds j0", trace)
            if trace is not None:
                trace.record(n, j0, "Thm2/Case3/reduce")
            return _thm2_split(n, j0, M, F, trace)
        return _thm2_case3(h, trace)
    return _thm2_case1(h, trace)


def _thm2_case1(h: Halves, trace):
    n = h.n
    m = len(h.M0) + len(h.M1)
    if len(h.M0) <= m - 2:
        _guard(len(h.F0) <= (n - 1) - 1 - _ceil_half(len(h.M0)), "|F0| within the induction bound", trace)
        C0 = _rec(h, 0, h.M0, h.F0, trace)
        _guard((1 << (n - 1)) - (2 * n - 4) >= 1, "2^{n-1} - (2n-4) >= 1", trace)
        uv = _first_edge(C0, lambda a, b: _e(a, b) not in h.M0 and h.partner_edge((a, b)) not in h.M1)
        _guard(uv is not None, "Thm2/Case1/Subcase1.1 finds uv", trace)
        C1 = _lemma8(h, 1, h.M1 | {h.partner_edge(uv)}, h.F1)
        return merge_cycles(C0, C1, uv, h.sp, trace=trace, label="Thm2/Case1/Subcase1.1")
    if len(h.M0) == m - 1:
        (wt,) = h.M1
        if not h.F1:
            if len(h.M0) == 1:
                return _subcase121_single(h, wt, trace)
            xy = min(h.M0)
            x, y = xy
            C0 = _rec(h, 0, h.M0 - {xy}, h.F0, trace)
            label = "Thm2/Case1/Subcase1.2.1/xy-on-C0"
            wt0 = h.partner_edge(wt)
            if xy in cycle_edges(C0):
                uv = _first_edge(C0, lambda a, b: _e(a, b) not in h.M0 and _e(a, b) != wt0)
                _guard(uv is not None, "Thm2/Case1/Subcase1.2.1 finds uv", trace)
                P1 = P.path_through_edge(n - 1, *_down_path(h, *uv), h.sp.project_edge(wt))
                return merge_cycle_path(C0, h.up(P1, 1), [uv], h.sp, trace=trace, label=label)
            label = "Thm2/Case1/Subcase1.2.1/xy-off-C0"
            for s, t in _reinsert_options(C0, x, y):
                if _e(s, t) != wt0:
                    break
            _guard(_odd(s, t), "d(u, v) odd", trace)
            P1 = P.path_through_edge(n - 1, *_down_path(h, s, t), h.sp.project_edge(wt))
            return merge_cycle_path(C0, h.up(P1, 1), [(x, s), (y, t)], h.sp, bridge=[xy], trace=trace, label=label)
        C0 = _rec(h, 0, h.M0, h.F0, trace)
        _guard((1 << (n - 1)) - (2 * n - 5 + 4) >= 1, "2^{n-1} - (2n-5+4) >= 1", trace)
        w0t0 = set(h.partner_edge(wt))
        uv = _first_edge(
            C0, lambda a, b: _e(a, b) not in h.M0 and not ({a, b} & w0t0)
        )
        _guard(uv is not None, "Thm2/Case1/Subcase1.2.2 finds uv", trace)
        u1v1 = h.partner_edge(uv)
        F1 = h.F1 - {u1v1}
        _guard(len(F1) <= (n - 1) - 1 - 1, "|F1| <= n-2-ceil(2/2)", trace)
        C1 = _rec(h, 1, {wt, u1v1}, F1, trace)
        return merge_cycles(C0, C1, uv, h.sp, trace=trace, label="Thm2/Case1/Subcase1.2.2")
    # M0 = M
    label = "Thm2/Case1/Subcase1.3"
    if h.F0:
        f = min(h.F0)
        C0 = _rec(h, 0, h.M0, h.F0 - {f}, trace)
        if f in cycle_edges(C0):
            uv, label = f, label + "/f-on-C0"
        else:
            uv, label = _first_edge(C0, lambda a, b: _e(a, b) not in h.M0), label + "/f-off-C0"
    elif m >= 3:
        label += "/F0-empty"
        C0 = _rec(h, 0, h.M0, frozenset(), trace)
        uv = _first_edge(C0, lambda a, b: _e(a, b) not in h.M0)
    else:
        _guard(len(h.F1) == n - 2 and n - 2 >= 3, "|F1| = n-2 >= 3", trace)
        uv1 = next((f for f in sorted(h.F1) if h.partner_edge(f) not in h.M0), None)
        _guard(uv1 is not None, "Thm2/Case1/Subcase1.3 finds uv in F1 with u0v0 outside M", trace)
        C1 = _lemma7(h, 1, uv1, h.F1)
        uv = h.partner_edge(uv1)
        C0 = _lemma6(h, 0, h.M0 | {uv})
        return merge_cycles(C0, C1, uv, h.sp, trace=trace, label=label + "/F0-empty-two-edges")
    _guard(len(h.F1) <= (n - 1) - 2, "|F1| <= (n-1)-2", trace)
    C1 = _lemma7(h, 1, h.partner_edge(uv), h.F1)
    return merge_cycles(C0, C1, uv, h.sp, trace=trace, label=label)


def _subcase121_single(h: Halves, wt, trace):
    """|M0| = |M1| = 1 with F1 empty: the generic step would recurse on an empty matching.

    All n-2 faults sit in half 0.  Keep one fault f (with f1 != wt) out of the
    recursion, build C0 through xy avoiding the rest, and cut C0 at f when f
    landed on it (so f is dropped again), otherwise at any other usable edge.
    """
    n = h.n
    (xy,) = h.M0
    f = next((g for g in sorted(h.F0) if h.partner_edge(g) != wt), None)
    _guard(f is not None, "some fault in F0 is not parallel to wt", trace)
    C0 = _lemma7(h, 0, xy, h.F0 - {f})
    wt0 = h.partner_edge(wt)
    if f in cycle_edges(C0):
        uv = f
    else:
        uv = _first_edge(C0, lambda a, b: _e(a, b) != xy and _e(a, b) != wt0)
    P1 = P.path_through_edge(n - 1, *_down_path(h, *uv), h.sp.project_edge(wt))
    return merge_cycle_path(
        C0, h.up(P1, 1), [uv], h.sp, trace=trace, label="Thm2/Case1/Subcase1.2.1/single-edge-half"
    )


def _thm2_case2(h: Halves, trace):
    n = h.n
    (xx1,) = h.Fc
    x = xx1[0] if h.half_of(xx1[0]) == 0 else xx1[1]
    C0 = _rec(h, 0, h.M0, h.F0, trace)
    _guard((1 << (n - 1)) - (2 * n - 4 + 2) >= 1, "2^{n-1} - (2n-4+2) >= 1", trace)
    uv = _first_edge(
        C0, lambda a, b: _e(a, b) not in h.M0 and x not in (a, b) and h.partner_edge((a, b)) not in h.M1
    )
    _guard(uv is not None, "Thm2/Case2 finds uv", trace)
    C1 = _lemma8(h, 1, h.M1 | {h.partner_edge(uv)}, h.F1)
    return merge_cycles(C0, C1, uv, h.sp, trace=trace, label="Thm2/Case2")


def _thm2_case3(h: Halves, trace):
    n = h.n
    m = len(h.M0) + len(h.M1) + 1
    u = _cross_vertex(h)
    if len(h.M0) == m - 1:
        if not h.F1:
            label = "Thm2/Case3/Subcase3.1.1"
            _guard(bool(h.F0), "F0 is non-empty", trace)
            f = min(h.F0)
            C0 = _rec(h, 0, h.M0, h.F0 - {f}, trace)
            if f not in cycle_edges(C0):
                v = min(cycle_neighbors(C0, u))
                label += "/f-off-C0"
            elif u in f:
                v = f.other(u)
                label += "/u-on-f"
            else:
                label += "/f-away-from-u"
                x, y = f
                v = next(w for w in sorted(cycle_neighbors(C0, u)) if w not in f)
                _guard(_odd(u, v) and _odd(x, y), "spanning path pairs have odd distance", trace)
                Pa, Pb = P.spanning_two_paths(n - 1, *_down_path(h, u, v), *_down_path(h, x, y))
                return merge_cycle_two_paths(
                    C0, h.up(Pa, 1), h.up(Pb, 1), [(u, v), f], h.sp, trace=trace, label=label
                )
            P1 = P.havel_path(n - 1, *_down_path(h, u, v))
            return merge_cycle_path(C0, h.up(P1, 1), [(u, v)], h.sp, trace=trace, label=label)
        C0 = _rec(h, 0, h.M0, h.F0, trace)
        v = min(cycle_neighbors(C0, u))
        _guard(len(h.F1) <= (n - 1) - 2, "|F1| <= (n-1)-2", trace)
        C1 = _lemma7(h, 1, h.partner_edge((u, v)), h.F1)
        return merge_cycles(C0, C1, _e(u, v), h.sp, trace=trace, label="Thm2/Case3/Subcase3.1.2")
    label = "Thm2/Case3/Subcase3.2"
    _guard(len(h.M0) >= 2, "|M0| >= 2", trace)
    if h.F0:
        C0 = _rec(h, 0, h.M0, h.F0, trace)
        v = min(cycle_neighbors(C0, u))
        C1 = _lemma8(h, 1, h.M1 | {h.partner_edge((u, v))}, h.F1)
        return merge_cycles(C0, C1, _e(u, v), h.sp, trace=trace, label=label + "/F0-nonempty")
    C1 = _rec(h, 1, h.M1, h.F1, trace)
    u1 = h.partner(u)
    w = min(cycle_neighbors(C1, u1))
    uw0 = _e(u, h.partner(w))
    _guard(len(h.M0) + 1 <= 2 * (n - 1) - 3, "|M0 + uw0| <= 2(n-1)-3", trace)
    C0 = _lemma6(h, 0, h.M0 | {uw0})
    return merge_cycles(C0, C1, uw0, h.sp, trace=trace, label=label + "/F0-empty")


__all__ = [
    "CASE_LABELS",
    "THEOREM1_LABELS",
    "THEOREM2_LABELS",
    "ConstructionTrace",
    "extend_matching",
    "extend_matching_faulty",
    "merge_cycle_path",
    "merge_cycle_two_paths",
    "merge_cycles",
    "pad_faults",
]
