"""The cited hypercube lemmas as contract-checked operations.

Each operation checks its hypotheses, asks the search backend (or, for
Hamiltonian paths between odd-distance vertices, a direct recursive
construction) for a witness, and validates the witness before returning it.
A lemma guarantees existence, so a failed search is reported as an
:class:`InternalInvariantError` instead of "no solution".
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from typing import Iterable

from . import search
from .cube import Edge, check_dimension, edge_distance, hamming_distance, is_adjacent
from .errors import (
    BudgetExceeded,
    ExceptionalCaseError,
    InternalInvariantError,
    PreconditionError,
    UnsupportedError,
)
from .structures import (
    cycle_edges,
    is_linear_forest,
    is_matching,
    path_edges,
    validate_cycle,
    validate_path,
    validate_spanning_pair,
    vertices_of,
)

BUDGET_ENV = "CUBEHAM_BUDGET"
DEFAULT_NODE_LIMIT = 10**8


def _default_limit() -> int:
    raw = os.environ.get(BUDGET_ENV)
    return int(raw) if raw else DEFAULT_NODE_LIMIT


@dataclass(frozen=True)
class SearchBudget:
    node_limit: int = field(default_factory=_default_limit)


@dataclass(frozen=True)
class PathQuery:
    """What to search for in Q_n - forbidden.

    ``endpoints`` empty: a Hamiltonian cycle.  One pair ``(x, y)``: a
    Hamiltonian path from x to y.  Two pairs: spanning paths, one per pair.
    ``excluded`` vertices are removed from the graph before searching.
    """

    n: int
    endpoints: tuple = ()
    required: frozenset = frozenset()
    forbidden: frozenset = frozenset()
    excluded: frozenset = frozenset()

    def __post_init__(self):
        object.__setattr__(self, "required", frozenset(_norm(self.required)))
        object.__setattr__(self, "forbidden", frozenset(_norm(self.forbidden)))
        object.__setattr__(self, "excluded", frozenset(self.excluded))
        object.__setattr__(self, "endpoints", tuple(tuple(p) for p in self.endpoints))


def _norm(edges: Iterable) -> set[Edge]:
    out = set()
    for a, b in edges:
        if not is_adjacent(a, b):
            raise PreconditionError(f"{a}-{b} is not a hypercube edge")
        out.add(Edge(min(a, b), max(a, b)))
    return out


def solve(q: PathQuery, budget: SearchBudget | None = None):
    """Cycle (list), path (list), pair of paths (tuple), or ``None`` when certified infeasible.

    Raises :class:`BudgetExceeded` if the node limit runs out first.
    """
    check_dimension(q.n)
    if q.required & q.forbidden:
        raise PreconditionError("required and forbidden edges overlap")
    if any(max(e) >= 1 << q.n for e in q.required | q.forbidden):
        raise PreconditionError(f"edge outside Q_{q.n}")
    limit = (budget or SearchBudget()).node_limit
    if not q.endpoints:
        if q.excluded:
            raise PreconditionError("cycle queries cannot exclude vertices")
        cyc, _ = search.find_cycle(q.n, q.required, q.forbidden, limit=limit)
        return cyc
    if len(q.endpoints) > 2:
        raise PreconditionError("at most two endpoint pairs are supported")
    paths, _ = search.find_paths(q.n, q.endpoints, q.required, q.forbidden, q.excluded, limit=limit)
    if paths is None:
        return None
    return paths[0] if len(paths) == 1 else tuple(paths)


def _must(q: PathQuery, what: str, budget: SearchBudget | None):
    try:
        res = solve(q, budget)
    except BudgetExceeded as exc:
        raise InternalInvariantError(f"{what}: search budget exhausted on a guaranteed instance ({exc})") from None
    if res is None:
        raise InternalInvariantError(f"{what}: no witness found although one is guaranteed ({q})")
    return res


def _odd(x: int, y: int) -> bool:
    return hamming_distance(x, y) % 2 == 1


def _check_vertex(n: int, *vs: int) -> None:
    for v in vs:
        if not 0 <= v < 1 << n:
            raise PreconditionError(f"vertex {v} outside Q_{n}")


# --- Hamiltonian paths ------------------------------------------------------


def _havel(x: int, y: int, dims: list[int]) -> list[int]:
    if len(dims) == 1:
        return [x, y]
    k = next(d for d in dims if (x ^ y) >> d & 1)
    rest = [d for d in dims if d != k]
    bit = 1 << k
    for i in rest:
        z = x ^ (1 << i)
        if z ^ bit != y:
            break
    return _havel(x, z, rest) + _havel(z ^ bit, y, rest)


def havel_path(n: int, x: int, y: int, method: str = "construct") -> list[int]:
    """Hamiltonian path of Q_n from ``x`` to ``y`` (requires odd distance).

    The default splits on a dimension where x and y differ, routes x to a
    neighbor z in its own half, crosses, and finishes in the other half.
    """
    check_dimension(n)
    _check_vertex(n, x, y)
    if not _odd(x, y):
        raise PreconditionError(f"d({x},{y}) is even; no Hamiltonian path exists")
    if method == "construct":
        path = _havel(x, y, list(range(n)))
    elif method == "search":
        path = _must(PathQuery(n, ((x, y),)), "havel_path", None)
    else:
        raise ValueError(f"unknown method {method!r}")
    if not validate_path(path, n, x, y):
        raise InternalInvariantError("havel_path produced an invalid path")
    return path


def path_through_edge(n: int, x: int, y: int, e: Edge, budget: SearchBudget | None = None) -> list[int]:
    """Hamiltonian x-y path of Q_n using edge ``e`` (``e != xy``)."""
    check_dimension(n)
    _check_vertex(n, x, y, *e)
    if n < 2:
        raise PreconditionError("needs n >= 2")
    if not _odd(x, y):
        raise PreconditionError(f"d({x},{y}) must be odd")
    e = Edge(min(e), max(e))
    if set(e) == {x, y}:
        raise PreconditionError("e must differ from xy")
    path = _must(PathQuery(n, ((x, y),), required={e}), "path_through_edge", budget)
    if not validate_path(path, n, x, y, required=[e]):
        raise InternalInvariantError("path_through_edge produced an invalid path")
    return path


def path_through_edges(n: int, x: int, y: int, edges: Iterable[Edge], budget: SearchBudget | None = None) -> list[int]:
    """x-y Hamiltonian path through a matching; dispatches to the one-edge or no-edge lemma."""
    edges = list(edges)
    if not edges:
        return havel_path(n, x, y)
    if len(edges) == 1:
        return path_through_edge(n, x, y, edges[0], budget)
    raise PreconditionError("only up to one prescribed edge is covered by the cited lemmas")


def path_avoiding_faults(n: int, u: int, v: int, F: Iterable[Edge] = (), budget: SearchBudget | None = None) -> list[int]:
    """Hamiltonian u-v path of Q_n - F with ``|F| <= 1``."""
    check_dimension(n)
    _check_vertex(n, u, v)
    F = _norm(F)
    if n < 3:
        raise PreconditionError("needs n >= 3")
    if len(F) > 1:
        raise PreconditionError(f"|F| = {len(F)} > 1")
    if not _odd(u, v):
        raise PreconditionError(f"d({u},{v}) must be odd")
    if not F:
        return havel_path(n, u, v)
    path = _must(PathQuery(n, ((u, v),), forbidden=F), "path_avoiding_faults", budget)
    if not validate_path(path, n, u, v, forbidden=F):
        raise InternalInvariantError("path_avoiding_faults produced an invalid path")
    return path


def is_pinned_exception(n: int, x: int, y: int, u: int, v: int) -> bool:
    """The configuration where the single-edge path xy cannot be completed."""
    return (
        n == 3
        and hamming_distance(u, v) == 1
        and hamming_distance(x, y) == 1
        and edge_distance(Edge(min(x, y), max(x, y)), Edge(min(u, v), max(u, v))) == 2
    )


def spanning_two_paths(
    n: int, x: int, y: int, u: int, v: int, pin_xy: bool = False, budget: SearchBudget | None = None
) -> tuple[list[int], list[int]]:
    """Vertex-disjoint paths x..y and u..v covering Q_n.

    With ``pin_xy`` the first path is the single edge xy.
    """
    check_dimension(n)
    _check_vertex(n, x, y, u, v)
    if n < 2:
        raise PreconditionError("needs n >= 2")
    if len({x, y, u, v}) != 4:
        raise PreconditionError("x, y, u, v must be pairwise distinct")
    if not (_odd(x, y) and _odd(u, v)):
        raise PreconditionError("d(x,y) and d(u,v) must both be odd")
    if pin_xy:
        if hamming_distance(x, y) != 1:
            raise PreconditionError("pinning xy requires d(x,y) = 1")
        if is_pinned_exception(n, x, y, u, v):
            raise ExceptionalCaseError("n=3, d(u,v)=1 and d(xy,uv)=2: xy cannot be a path on its own")
        p2 = _must(PathQuery(n, ((u, v),), excluded={x, y}), "spanning_two_paths", budget)
        p1 = [x, y]
    else:
        p1, p2 = _must(PathQuery(n, ((x, y), (u, v))), "spanning_two_paths", budget)
    if not (validate_spanning_pair(p1, p2, n) and p1[0] == x and p1[-1] == y and p2[0] == u and p2[-1] == v):
        raise InternalInvariantError("spanning_two_paths produced an invalid pair")
    return p1, p2


# --- Hamiltonian cycles -----------------------------------------------------


def _checked_cycle(n, required, forbidden, what, budget):
    cyc = _must(PathQuery(n, (), required=required, forbidden=forbidden), what, budget)
    # required edges may form a linear forest, so containment is checked here
    # rather than through the matching-oriented validator
    if not validate_cycle(cyc, n, (), forbidden).passed or not set(required) <= cycle_edges(cyc):
        raise InternalInvariantError(f"{what} produced an invalid cycle")
    return cyc


def cycle_through_forest(n: int, E: Iterable[Edge], budget: SearchBudget | None = None) -> list[int]:
    """Hamiltonian cycle of Q_n through a linear forest of at most 2n-3 edges."""
    check_dimension(n)
    E = _norm(E)
    if n < 2:
        raise PreconditionError("needs n >= 2")
    if any(max(e) >= 1 << n for e in E):
        raise PreconditionError(f"edge outside Q_{n}")
    if not is_linear_forest(E):
        raise PreconditionError("prescribed edges do not form a linear forest")
    if len(E) > 2 * n - 3:
        raise PreconditionError(f"|E| = {len(E)} exceeds 2n-3 = {2 * n - 3}")
    return _checked_cycle(n, E, (), "cycle_through_forest", budget)


def cycle_avoiding_faults_through_edge(n: int, e: Edge, F: Iterable[Edge] = (), budget: SearchBudget | None = None) -> list[int]:
    """Hamiltonian cycle of Q_n - F through ``e``, ``|F| <= n-2``."""
    check_dimension(n)
    F = _norm(F)
    e = Edge(min(e), max(e))
    if n < 3:
        raise PreconditionError("needs n >= 3")
    if len(F) > n - 2:
        raise PreconditionError(f"|F| = {len(F)} exceeds n-2 = {n - 2}")
    if e in F:
        raise PreconditionError("e is faulty")
    if not F:
        return cycle_through_forest(n, [e], budget)
    return _checked_cycle(n, {e}, F, "cycle_avoiding_faults_through_edge", budget)


def cycle_through_forest_avoiding_faults(n: int, E: Iterable[Edge], F: Iterable[Edge] = (), budget: SearchBudget | None = None) -> list[int]:
    """Hamiltonian cycle of Q_n - F through a linear forest E.

    Needs ``1 <= |E| <= 2n-3`` and ``|F| <= n-2-floor(|E|/2)``.
    """
    check_dimension(n)
    E, F = _norm(E), _norm(F)
    if n < 2:
        raise PreconditionError("needs n >= 2")
    if not 1 <= len(E) <= 2 * n - 3:
        raise PreconditionError(f"|E| = {len(E)} outside [1, {2 * n - 3}]")
    if len(F) > n - 2 - len(E) // 2:
        raise PreconditionError(f"|F| = {len(F)} exceeds n-2-floor(|E|/2) = {n - 2 - len(E) // 2}")
    if E & F:
        raise PreconditionError("E and F overlap")
    if not is_linear_forest(E):
        raise PreconditionError("prescribed edges do not form a linear forest")
    return _checked_cycle(n, E, F, "cycle_through_forest_avoiding_faults", budget)


def complementary_perfect_matching(n: int, M: Iterable[Edge], budget: SearchBudget | None = None) -> list[int]:
    """Hamiltonian cycle whose edges are M plus another perfect matching of Q_n."""
    check_dimension(n)
    M = _norm(M)
    if n > 4:
        raise UnsupportedError("only needed (and supported) for n <= 4")
    if n < 2:
        raise PreconditionError("needs n >= 2")
    if not is_matching(M) or len(vertices_of(M)) != 1 << n:
        raise PreconditionError("M must be a perfect matching of Q_n")
    cyc = _checked_cycle(n, M, (), "complementary_perfect_matching", budget)
    rest = cycle_edges(cyc) - M
    if not (is_matching(rest) and len(rest) == len(M)):
        raise InternalInvariantError("cycle minus M is not a perfect matching")
    return cyc


__all__ = [
    "PathQuery",
    "SearchBudget",
    "solve",
    "havel_path",
    "path_through_edge",
    "path_through_edges",
    "path_avoiding_faults",
    "spanning_two_paths",
    "is_pinned_exception",
    "cycle_through_forest",
    "cycle_avoiding_faults_through_edge",
    "cycle_through_forest_avoiding_faults",
    "complementary_perfect_matching",
    "path_edges",
]
