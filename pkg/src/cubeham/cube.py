"""Vertex and edge arithmetic of the hypercube Q_n.

Vertices are integers in ``[0, 2**n)``; bit ``i`` of the integer is coordinate
``i + 1`` of the usual 1-based binary-string notation.  Edges are stored
normalized as ``Edge(lo, hi)`` with ``lo < hi``.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Iterator, NamedTuple

import numpy as np

from .errors import InternalInvariantError, PreconditionError, UnsupportedError

MAX_DIMENSION = 16
# Canonicalization enumerates the full group (2^n * n!) and refuses above this.
CANON_MAX_DIMENSION = 6


class Edge(NamedTuple):
    lo: int
    hi: int

    @property
    def dim(self) -> int:
        return (self.lo ^ self.hi).bit_length() - 1

    def other(self, v: int) -> int:
        return self.hi if v == self.lo else self.lo

    def __str__(self) -> str:
        return f"{self.lo}-{self.hi}"


def check_dimension(n: int) -> None:
    if not isinstance(n, int) or n < 1 or n > MAX_DIMENSION:
        raise PreconditionError(f"dimension must be in [1, {MAX_DIMENSION}], got {n!r}")


def neighbor(v: int, i: int, n: int | None = None) -> int:
    """Return the neighbor of ``v`` across dimension ``i``."""
    if i < 0 or (n is not None and i >= n):
        raise PreconditionError(f"dimension index {i} out of range for n={n}")
    return v ^ (1 << i)


def hamming_distance(u: int, v: int) -> int:
    return (u ^ v).bit_count()


def is_adjacent(u: int, v: int) -> bool:
    x = u ^ v
    return x != 0 and x & (x - 1) == 0


def edge(u: int, v: int, n: int | None = None) -> Edge:
    """Build a normalized edge, checking that ``u`` and ``v`` are adjacent."""
    if not is_adjacent(u, v):
        raise PreconditionError(f"{u} and {v} are not adjacent in the hypercube")
    if n is not None and max(u, v) >= 1 << n:
        raise PreconditionError(f"edge {u}-{v} does not lie in Q_{n}")
    return Edge(u, v) if u < v else Edge(v, u)


def edge_distance(e: Edge, f: Edge) -> int:
    return min(
        hamming_distance(e[0], f[0]),
        hamming_distance(e[0], f[1]),
        hamming_distance(e[1], f[0]),
        hamming_distance(e[1], f[1]),
    )


def vertices(n: int) -> range:
    return range(1 << n)


def all_edges(n: int) -> list[Edge]:
    """All edges of Q_n sorted by ``(lo, hi)``."""
    return [Edge(v, v | (1 << i)) for v in range(1 << n) for i in range(n) if not v >> i & 1]


def edges_of_dim(n: int, i: int) -> list[Edge]:
    return [Edge(v, v | (1 << i)) for v in range(1 << n) if not v >> i & 1]


def parity(v: int) -> int:
    return v.bit_count() & 1


@dataclass(frozen=True)
class SubcubeSplit:
    """Decomposition of Q_n by E_j into the halves with bit ``j`` equal to 0 and 1."""

    n: int
    j: int

    def side(self, v: int) -> int:
        return v >> self.j & 1

    def project(self, v: int) -> int:
        """Drop bit ``j``: Q_n vertex -> Q_{n-1} vertex."""
        low = v & ((1 << self.j) - 1)
        return low | (v >> (self.j + 1)) << self.j

    def lift(self, w: int, side: int) -> int:
        """Insert bit ``j`` with value ``side``: Q_{n-1} vertex -> Q_n vertex."""
        low = w & ((1 << self.j) - 1)
        return low | side << self.j | (w >> self.j) << (self.j + 1)

    def partner(self, v: int) -> int:
        """The unique neighbor of ``v`` in the opposite half (``u -> u_1``)."""
        return v ^ (1 << self.j)

    def project_edge(self, e: Edge) -> Edge:
        return Edge(self.project(e[0]), self.project(e[1]))

    def lift_edge(self, e: Edge, side: int) -> Edge:
        return Edge(self.lift(e[0], side), self.lift(e[1], side))

    def lift_seq(self, seq: Iterable[int], side: int) -> list[int]:
        return [self.lift(w, side) for w in seq]

    def partner_edge(self, e: Edge) -> Edge:
        bit = 1 << self.j
        return Edge(e[0] ^ bit, e[1] ^ bit)


@dataclass(frozen=True)
class SplitParts:
    """Result of :func:`split`; half edge sets are in Q_{n-1} coordinates."""

    split: SubcubeSplit
    m0: frozenset
    m1: frozenset
    m_cross: frozenset
    f0: frozenset
    f1: frozenset
    f_cross: frozenset


def split(n: int, j: int, M: Iterable[Edge], F: Iterable[Edge] = ()) -> SplitParts:
    if not 0 <= j < n:
        raise PreconditionError(f"split dimension {j} out of range for n={n}")
    sp = SubcubeSplit(n, j)

    def parts(edges):
        halves = (set(), set())
        cross = set()
        for e in edges:
            if e.dim == j:
                cross.add(e)
            else:
                halves[sp.side(e[0])].add(sp.project_edge(e))
        return frozenset(halves[0]), frozenset(halves[1]), frozenset(cross)

    m0, m1, mc = parts(M)
    f0, f1, fc = parts(F)
    return SplitParts(sp, m0, m1, mc, f0, f1, fc)


def unsplit(parts: SplitParts) -> tuple[set[Edge], set[Edge]]:
    """Inverse of :func:`split`: reassemble (M, F) in Q_n coordinates."""
    sp = parts.split
    M = {sp.lift_edge(e, 0) for e in parts.m0} | {sp.lift_edge(e, 1) for e in parts.m1} | set(parts.m_cross)
    F = {sp.lift_edge(e, 0) for e in parts.f0} | {sp.lift_edge(e, 1) for e in parts.f1} | set(parts.f_cross)
    return M, F


def separate_disjoint_edges(n: int, e: Edge, f: Edge) -> int:
    """Smallest dimension ``j`` whose split puts ``e`` and ``f`` in different halves."""
    if n < 2:
        raise PreconditionError("need n >= 2")
    if set(e) & set(f):
        raise PreconditionError(f"edges {e} and {f} share a vertex")
    for j in range(n):
        if j in (e.dim, f.dim):
            continue
        if (e[0] >> j & 1) != (f[0] >> j & 1):
            return j
    raise InternalInvariantError(f"no separating dimension for disjoint edges {e}, {f}")


def dimension_counts(n: int, edges: Iterable[Edge]) -> list[int]:
    counts = [0] * n
    for e in edges:
        counts[e.dim] += 1
    return counts


# --- automorphisms ---------------------------------------------------------


@dataclass(frozen=True)
class Automorphism:
    """``v -> P(v) XOR mask`` where ``P`` sends bit ``i`` to bit ``perm[i]``."""

    perm: tuple[int, ...]
    mask: int = 0

    @property
    def n(self) -> int:
        return len(self.perm)

    @classmethod
    def identity(cls, n: int) -> "Automorphism":
        return cls(tuple(range(n)), 0)

    def _permute(self, v: int) -> int:
        out = 0
        for i, p in enumerate(self.perm):
            if v >> i & 1:
                out |= 1 << p
        return out

    def __call__(self, v: int) -> int:
        return self._permute(v) ^ self.mask

    def apply_edge(self, e: Edge) -> Edge:
        a, b = self(e[0]), self(e[1])
        return Edge(a, b) if a < b else Edge(b, a)

    def apply_edges(self, edges: Iterable[Edge]) -> frozenset:
        return frozenset(self.apply_edge(e) for e in edges)

    def compose(self, other: "Automorphism") -> "Automorphism":
        """``self ∘ other``."""
        perm = tuple(self.perm[other.perm[i]] for i in range(self.n))
        return Automorphism(perm, self._permute(other.mask) ^ self.mask)

    def inverse(self) -> "Automorphism":
        inv = [0] * self.n
        for i, p in enumerate(self.perm):
            inv[p] = i
        g = Automorphism(tuple(inv), 0)
        return Automorphism(g.perm, g._permute(self.mask))


def automorphisms(n: int) -> Iterator[Automorphism]:
    for perm in itertools.permutations(range(n)):
        for mask in range(1 << n):
            yield Automorphism(perm, mask)


def group_order(n: int) -> int:
    return (1 << n) * math.factorial(n)


def random_automorphism(n: int, rng) -> Automorphism:
    perm = list(range(n))
    rng.shuffle(perm)
    return Automorphism(tuple(perm), rng.randrange(1 << n))


@lru_cache(maxsize=None)
def _edge_index(n: int) -> tuple[np.ndarray, list[Edge]]:
    edges = all_edges(n)
    table = np.full((1 << n, 1 << n), -1, dtype=np.int32)
    for k, (a, b) in enumerate(edges):
        table[a, b] = table[b, a] = k
    table.setflags(write=False)
    return table, edges


def edge_ids(n: int, edges: Iterable[Edge]) -> np.ndarray:
    table, _ = _edge_index(n)
    return np.array(sorted(int(table[e[0], e[1]]) for e in edges), dtype=np.int32)


@lru_cache(maxsize=None)
def _edge_images(n: int) -> np.ndarray:
    """Row g: image of every edge id under the g-th group element (read-only)."""
    verts = np.arange(1 << n, dtype=np.int64)
    masks = np.arange(1 << n, dtype=np.int64)
    rows = []
    for perm in itertools.permutations(range(n)):
        pv = np.zeros(1 << n, dtype=np.int64)
        for i, p in enumerate(perm):
            pv |= ((verts >> i) & 1) << p
        rows.append(pv[None, :] ^ masks[:, None])
    vimg = np.concatenate(rows, axis=0)
    table, edges = _edge_index(n)
    lo = np.array([e[0] for e in edges])
    hi = np.array([e[1] for e in edges])
    out = table[vimg[:, lo], vimg[:, hi]].astype(np.int16)
    out.setflags(write=False)
    return out


def _large_edge_images(n: int, ids: np.ndarray) -> np.ndarray:
    table, edges = _edge_index(n)
    lo = np.array([edges[k][0] for k in ids], dtype=np.int64)
    hi = np.array([edges[k][1] for k in ids], dtype=np.int64)
    masks = np.arange(1 << n, dtype=np.int64)[:, None]
    blocks = []
    for perm in itertools.permutations(range(n)):
        plo = np.zeros_like(lo)
        phi = np.zeros_like(hi)
        for i, p in enumerate(perm):
            plo |= ((lo >> i) & 1) << p
            phi |= ((hi >> i) & 1) << p
        blocks.append(table[plo[None, :] ^ masks, phi[None, :] ^ masks])
    return np.concatenate(blocks, axis=0)


@dataclass(frozen=True)
class InstanceClass:
    """Canonical representative of an (n, M, F) orbit under Aut(Q_n)."""

    n: int
    matching: tuple[Edge, ...]
    faults: tuple[Edge, ...]
    stabilizer_order: int = 0

    def __eq__(self, other):
        if not isinstance(other, InstanceClass):
            return NotImplemented
        return (self.n, self.matching, self.faults) == (other.n, other.matching, other.faults)

    def __hash__(self):
        return hash((self.n, self.matching, self.faults))

    @property
    def orbit_size(self) -> int:
        return group_order(self.n) // self.stabilizer_order


def _lexmin_rows(keys: np.ndarray) -> tuple[np.ndarray, int]:
    rows = np.arange(keys.shape[0])
    for c in range(keys.shape[1]):
        col = keys[rows, c]
        rows = rows[col == col.min()]
        if len(rows) == 1:
            break
    return keys[rows[0]], len(rows)


def canonical_ids(n: int, m_ids: np.ndarray, f_ids: np.ndarray, large: bool = False) -> tuple[tuple, tuple, int]:
    """Lexicographically minimal (sorted M image, sorted F image) over the group."""
    if n > CANON_MAX_DIMENSION:
        if not large:
            raise UnsupportedError(
                f"canonicalization enumerates 2^n*n! images; n={n} exceeds {CANON_MAX_DIMENSION} "
                "(pass large=True to force)"
            )
        both = np.concatenate([m_ids, f_ids]).astype(np.int64)
        imgs = _large_edge_images(n, both)
        a, b = imgs[:, : len(m_ids)], imgs[:, len(m_ids):]
    else:
        imgs = _edge_images(n)
        a, b = imgs[:, m_ids], imgs[:, f_ids]
    keys = np.concatenate([np.sort(a, axis=1), np.sort(b, axis=1)], axis=1)
    if keys.shape[1] == 0:
        return (), (), group_order(n)
    row, stab = _lexmin_rows(keys)
    k = len(m_ids)
    return tuple(int(x) for x in row[:k]), tuple(int(x) for x in row[k:]), stab


def canonicalize(n: int, M: Iterable[Edge] = (), F: Iterable[Edge] = (), large: bool = False) -> InstanceClass:
    M, F = list(M), list(F)
    m, f, stab = canonical_ids(n, edge_ids(n, M), edge_ids(n, F), large=large)
    _, edges = _edge_index(n)
    return InstanceClass(n, tuple(edges[k] for k in m), tuple(edges[k] for k in f), stab)
