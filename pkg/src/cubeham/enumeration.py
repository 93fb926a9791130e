"""Raw and isomorphism-reduced enumeration of (M, F) instances in Q_n."""

from __future__ import annotations

import itertools
import math
from functools import lru_cache
from typing import Iterator

import numpy as np

from .cube import Edge, InstanceClass, _edge_index, all_edges, canonical_ids


def matchings(n: int, k: int) -> Iterator[tuple[Edge, ...]]:
    """Every matching of Q_n with exactly ``k`` edges, in lexicographic order."""
    edges = all_edges(n)

    def rec(start, used, chosen):
        if len(chosen) == k:
            yield tuple(chosen)
            return
        for i in range(start, len(edges)):
            a, b = edges[i]
            if used >> a & 1 or used >> b & 1:
                continue
            chosen.append(edges[i])
            yield from rec(i + 1, used | 1 << a | 1 << b, chosen)
            chosen.pop()

    yield from rec(0, 0, [])


@lru_cache(maxsize=None)
def matching_count(n: int, k: int) -> int:
    return sum(1 for _ in matchings(n, k))


def raw_count(n: int, m_size: int, f_size: int) -> int:
    return matching_count(n, m_size) * math.comb(n * (1 << (n - 1)) - m_size, f_size)


def raw_instances(n: int, m_size: int, f_size: int) -> Iterator[tuple[tuple[Edge, ...], tuple[Edge, ...]]]:
    edges = all_edges(n)
    for M in matchings(n, m_size):
        rest = [e for e in edges if e not in M]
        for F in itertools.combinations(rest, f_size):
            yield M, F


@lru_cache(maxsize=None)
def _matching_class_ids(n: int, k: int) -> tuple[tuple[int, ...], ...]:
    if k == 0:
        return ((),)
    table, edges = _edge_index(n)
    out = set()
    for rep in _matching_class_ids(n, k - 1):
        used = {v for i in rep for v in edges[i]}
        for i, (a, b) in enumerate(edges):
            if a in used or b in used:
                continue
            m, _, _ = canonical_ids(n, np.array(rep + (i,), dtype=np.int32), np.zeros(0, dtype=np.int32))
            out.add(m)
    return tuple(sorted(out))


@lru_cache(maxsize=None)
def _instance_class_ids(n: int, m_size: int, f_size: int) -> tuple[tuple[tuple, tuple, int], ...]:
    if f_size == 0:
        res = []
        for m in _matching_class_ids(n, m_size):
            _, _, stab = canonical_ids(n, np.array(m, dtype=np.int32), np.zeros(0, dtype=np.int32))
            res.append((m, (), stab))
        return tuple(res)
    _, edges = _edge_index(n)
    out = {}
    for m, f, _ in _instance_class_ids(n, m_size, f_size - 1):
        taken = set(m) | set(f)
        marr = np.array(m, dtype=np.int32)
        for i in range(len(edges)):
            if i in taken:
                continue
            cm, cf, stab = canonical_ids(n, marr, np.array(f + (i,), dtype=np.int32))
            out[(cm, cf)] = stab
    return tuple((m, f, s) for (m, f), s in sorted(out.items()))


def instance_classes(n: int, m_size: int, f_size: int) -> list[InstanceClass]:
    """One canonical representative per Aut(Q_n)-orbit of (M, F), |M|=m_size, |F|=f_size."""
    _, edges = _edge_index(n)
    return [
        InstanceClass(n, tuple(edges[i] for i in m), tuple(edges[i] for i in f), stab)
        for m, f, stab in _instance_class_ids(n, m_size, f_size)
    ]


def enumerate_instances(n: int, m_size: int, f_size: int, up_to_iso: bool = True) -> Iterator[tuple[tuple[Edge, ...], tuple[Edge, ...]]]:
    if up_to_iso:
        for cls in instance_classes(n, m_size, f_size):
            yield cls.matching, cls.faults
    else:
        yield from raw_instances(n, m_size, f_size)
