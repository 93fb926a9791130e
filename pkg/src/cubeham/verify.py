"""Brute-force oracle, instance samplers and theorem sweeps.

The oracle shares no code with the construction or its search backend: for
n <= 4 it lists every Hamiltonian cycle of Q_n once (as edge bitmasks) and
answers queries by masking; for n = 5, 6 it runs a plain budgeted
depth-first search and reports "unknown" instead of guessing.
"""

from __future__ import annotations

import json
import random
import time
from collections import Counter
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Sequence

from .basecases import exception_catalog
from .constructor import CASE_LABELS, THEOREM1_LABELS, THEOREM2_LABELS, extend_matching, extend_matching_faulty
from .cube import Edge, all_edges, check_dimension
from .enumeration import enumerate_instances, matching_count, raw_instances
from .errors import BudgetExceeded, CaseAInstance, CubehamError, PreconditionError
from .structures import validate_cycle
from .surgery import ConstructionTrace

ORACLE_MAX_DIMENSION = 6
ORACLE_DEFAULT_BUDGET = 2_000_000


def _ceil_half(k: int) -> int:
    return -(-k // 2)


# --- oracle --------------------------------------------------------------------


@lru_cache(maxsize=None)
def _edge_bits(n: int) -> dict:
    return {e: 1 << i for i, e in enumerate(all_edges(n))}


@lru_cache(maxsize=None)
def _all_cycles(n: int) -> tuple[tuple[int, tuple[int, ...]], ...]:
    """Every Hamiltonian cycle of Q_n (n <= 4) as (edge mask, vertex sequence)."""
    N = 1 << n
    bits = _edge_bits(n)
    found: dict[int, tuple[int, ...]] = {}
    path = [0]

    def bit(a, b):
        return bits[Edge(a, b) if a < b else Edge(b, a)]

    def dfs(v, seen, mask):
        if len(path) == N:
            if bin(v).count("1") == 1:
                found.setdefault(mask | bit(v, 0), tuple(path))
            return
        for i in range(n):
            w = v ^ (1 << i)
            if not seen >> w & 1:
                path.append(w)
                dfs(w, seen | 1 << w, mask | bit(v, w))
                path.pop()

    if n == 1:
        return ()
    dfs(0, 1, 0)
    return tuple(sorted(found.items()))


def hamiltonian_cycle_count(n: int) -> int:
    return len(_all_cycles(n))


def _mask(n, edges):
    bits = _edge_bits(n)
    m = 0
    for a, b in edges:
        m |= bits[Edge(min(a, b), max(a, b))]
    return m


def _plain_dfs(n: int, M, F, budget: int):
    N = 1 << n
    forb = {Edge(min(a, b), max(a, b)) for a, b in F}
    req = [set() for _ in range(N)]
    for a, b in M:
        req[a].add(b)
        req[b].add(a)
    nodes = 0
    path = [0]
    on = [False] * N
    on[0] = True

    def dfs(v):
        nonlocal nodes
        nodes += 1
        if nodes > budget:
            raise BudgetExceeded(f"oracle exceeded {budget} nodes")
        if len(path) == N:
            return (
                bin(v).count("1") == 1
                and Edge(0, v) not in forb
                and req[v] <= {path[-2], 0}
                and req[0] <= {path[1], v}
            )
        prev = path[-2] if len(path) > 1 else None
        for i in range(n):
            w = v ^ (1 << i)
            if on[w] or Edge(min(v, w), max(v, w)) in forb:
                continue
            # every required edge at v must be the edge in or the edge out
            if v == 0:
                if len(req[0] - {w}) > 1:
                    continue
            elif not req[v] <= {prev, w}:
                continue
            on[w] = True
            path.append(w)
            if dfs(w):
                return True
            path.pop()
            on[w] = False
        return False

    return list(path) if dfs(0) else None


def oracle(n: int, M: Iterable[Edge], F: Iterable[Edge] = (), budget: int = ORACLE_DEFAULT_BUDGET):
    """A Hamiltonian cycle of Q_n - F through M, or None when none exists.

    Exact for n <= 4.  For n = 5, 6 a budgeted search; running out raises
    :class:`BudgetExceeded` (the answer is unknown, never "infeasible").
    """
    check_dimension(n)
    M, F = list(M), list(F)
    if n > ORACLE_MAX_DIMENSION:
        raise PreconditionError(f"oracle certifies answers only up to n = {ORACLE_MAX_DIMENSION}")
    if n <= 4:
        mm, mf = _mask(n, M), _mask(n, F)
        for mask, seq in _all_cycles(n):
            if mask & mm == mm and not mask & mf:
                return list(seq)
        return None
    return _plain_dfs(n, M, F, budget)


# --- random instances -------------------------------------------------------------


def random_matching(n: int, k: int, rng: random.Random, pool: Sequence[Edge] | None = None) -> list[Edge] | None:
    """Greedy matching from a shuffled edge pool; None if the greedy pass falls short."""
    if k == 0:
        return []
    edges = list(all_edges(n) if pool is None else pool)
    for _ in range(50):
        rng.shuffle(edges)
        used = set()
        out = []
        for e in edges:
            if e[0] in used or e[1] in used:
                continue
            out.append(e)
            used.update(e)
            if len(out) == k:
                return out
    return None


def random_instance(n: int, m: int, f: int, rng: random.Random, structured: bool = False):
    """Random (M, F) with |M| = m, |F| = f.

    ``structured`` concentrates edges in a random subcube (and faults on a
    second one) so the rarer branches of the constructions get exercised.
    """
    edges = all_edges(n)
    while True:
        if structured and n >= 3:
            d = rng.randrange(n)
            c = rng.randrange(2)
            inside = [e for e in edges if e[0] >> d & 1 == c and e[1] >> d & 1 == c]
            k_in = min(m, rng.choice([m, m, m - 1, m - 2, rng.randrange(m + 1)]))
            k_in = max(k_in, 0)
            M = random_matching(n, k_in, rng, inside) if k_in else []
            if M is None:
                continue
            if len(M) < m:
                used = {v for e in M for v in e}
                pool = [e for e in edges if e[0] not in used and e[1] not in used]
                rest = random_matching(n, m - len(M), rng, pool)
                if rest is None:
                    continue
                M = M + rest
        else:
            M = random_matching(n, m, rng)
            if M is None:
                continue
        Mset = set(M)
        free = [e for e in edges if e not in Mset]
        if structured and f and rng.random() < 0.7:
            d = rng.randrange(n)
            c = rng.randrange(2)
            pref = [e for e in free if e[0] >> d & 1 == c and e[1] >> d & 1 == c]
            if rng.random() < 0.5:
                pref = [e for e in free if e.dim == d] + pref[: rng.randrange(len(pref) + 1)]
            F = rng.sample(pref, min(f, len(pref)))
            rest = [e for e in free if e not in F]
            F += rng.sample(rest, f - len(F))
        else:
            F = rng.sample(free, f)
        return sorted(M), sorted(F)


# --- sweeps ----------------------------------------------------------------------


def theorem_cells(theorem: int, n: int) -> list[tuple[int, int]]:
    """Every legal (|M|, |F|) cell of the theorem at dimension n."""
    if theorem == 1:
        top = 2 * n - 1 if n > 4 else 1 << (n - 1)
        return [(m, 0) for m in range(0, top + 1) if matching_count_ok(n, m)]
    if theorem == 2:
        return [(m, f) for m in range(1, 2 * n - 1) for f in range(0, n - _ceil_half(m))]
    raise PreconditionError("theorem must be 1 or 2")


def matching_count_ok(n: int, m: int) -> bool:
    return m <= 1 << (n - 1)


def check_cell(theorem: int, n: int, m: int, f: int) -> None:
    if theorem == 1:
        if f != 0:
            raise PreconditionError("theorem 1 cells have no faults")
        if m < 0 or m > (1 << (n - 1)) or (n > 4 and m > 2 * n - 1):
            raise PreconditionError(f"|M| = {m} outside the theorem 1 range at n = {n}")
        if n < 2:
            raise PreconditionError("theorem 1 needs n >= 2")
    elif theorem == 2:
        if n < 4:
            raise PreconditionError("theorem 2 needs n >= 4")
        if not 1 <= m <= 2 * n - 2:
            raise PreconditionError(f"|M| = {m} outside [1, {2 * n - 2}]")
        if not 0 <= f <= n - 1 - _ceil_half(m):
            raise PreconditionError(f"|F| = {f} exceeds n-1-ceil(|M|/2) = {n - 1 - _ceil_half(m)}")
    else:
        raise PreconditionError("theorem must be 1 or 2")


@dataclass
class CellReport:
    theorem: int
    n: int
    m: int
    f: int
    mode: str
    tested: int = 0
    successes: int = 0
    exceptional: int = 0
    disagreements: int = 0
    failures: int = 0
    unknown: int = 0
    seconds: float = 0.0
    seed: int | None = None
    labels: Counter = field(default_factory=Counter)
    problems: list = field(default_factory=list)
    exceptional_instances: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.disagreements == 0 and self.failures == 0

    def line(self) -> str:
        return (
            f"theorem={self.theorem} n={self.n} m={self.m} f={self.f} mode={self.mode} "
            f"tested={self.tested} success={self.successes} exceptional={self.exceptional} "
            f"disagreements={self.disagreements} failures={self.failures} unknown={self.unknown} "
            f"seconds={self.seconds:.2f} seed={self.seed} {'PASS' if self.passed else 'FAIL'}"
        )

    def as_dict(self) -> dict:
        return {
            "theorem": self.theorem,
            "n": self.n,
            "m": self.m,
            "f": self.f,
            "mode": self.mode,
            "tested": self.tested,
            "successes": self.successes,
            "exceptional": self.exceptional,
            "disagreements": self.disagreements,
            "failures": self.failures,
            "unknown": self.unknown,
            "seconds": round(self.seconds, 3),
            "seed": self.seed,
            "passed": self.passed,
            "labels": dict(sorted(self.labels.items())),
            "problems": self.problems[:20],
            "exceptional_instances": self.exceptional_instances,
        }


@dataclass
class SweepReport:
    cells: list[CellReport] = field(default_factory=list)

    def merge(self, other: "SweepReport") -> "SweepReport":
        return SweepReport(self.cells + other.cells)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.cells)

    @property
    def exceptional(self) -> int:
        return sum(c.exceptional for c in self.cells)

    @property
    def tested(self) -> int:
        return sum(c.tested for c in self.cells)

    def label_counts(self) -> Counter:
        total = Counter()
        for c in self.cells:
            total.update(c.labels)
        return total

    def unreached(self, labels: Iterable[str] = CASE_LABELS) -> list[str]:
        seen = self.label_counts()
        return [lab for lab in labels if not seen[lab]]

    def to_text(self) -> str:
        lines = [c.line() for c in self.cells]
        lines.append(
            f"total tested={self.tested} exceptional={self.exceptional} "
            f"result={'PASS' if self.passed else 'FAIL'}"
        )
        return "\n".join(lines) + "\n"

    def to_json(self) -> str:
        return json.dumps(
            {
                "passed": self.passed,
                "tested": self.tested,
                "exceptional": self.exceptional,
                "labels": dict(sorted(self.label_counts().items())),
                "cells": [c.as_dict() for c in self.cells],
            },
            indent=2,
        )


def _run_one(theorem, n, M, F, cell: CellReport, check_oracle: bool, oracle_budget: int):
    trace = ConstructionTrace()
    cell.tested += 1
    try:
        if theorem == 1:
            cyc = extend_matching(n, M, trace)
        else:
            cyc = extend_matching_faulty(n, M, F, trace)
    except CaseAInstance:
        cell.labels.update(trace.labels)
        if n <= 4 and oracle(n, M, F) is None:
            cell.exceptional += 1
            cell.exceptional_instances.append({"matching": [list(e) for e in M], "faults": [list(e) for e in F]})
        else:
            cell.disagreements += 1
            cell.problems.append({"matching": [list(e) for e in M], "faults": [list(e) for e in F], "error": "case-a verdict on a feasible instance"})
        return
    except CubehamError as exc:
        cell.labels.update(trace.labels)
        cell.failures += 1
        verdict = "unknown"
        try:
            verdict = "infeasible" if oracle(n, M, F, budget=oracle_budget) is None else "feasible"
        except (BudgetExceeded, PreconditionError):
            pass
        cell.problems.append(
            {"matching": [list(e) for e in M], "faults": [list(e) for e in F], "error": f"{type(exc).__name__}: {exc}", "oracle": verdict}
        )
        return
    cell.labels.update(trace.labels)
    if not validate_cycle(cyc, n, M, F).passed:
        cell.failures += 1
        cell.problems.append({"matching": [list(e) for e in M], "faults": [list(e) for e in F], "error": "invalid cycle"})
        return
    cell.successes += 1
    if check_oracle and n <= 4 and oracle(n, M, F) is None:
        cell.disagreements += 1
        cell.problems.append({"matching": [list(e) for e in M], "faults": [list(e) for e in F], "error": "oracle finds no cycle"})


def sweep(
    theorem: int,
    n: int,
    cells: Iterable[tuple[int, int]] | None = None,
    sample: int | None = None,
    seed: int = 0,
    raw: bool = False,
    structured: bool = False,
    check_oracle: bool = True,
    oracle_budget: int = ORACLE_DEFAULT_BUDGET,
) -> SweepReport:
    """Run a theorem's construction over its (|M|, |F|) cells.

    Without ``sample`` (only allowed for n <= 4) every canonical class, or with
    ``raw`` every raw instance, is tested and cross-checked by the oracle.
    With ``sample`` each cell gets that many seeded random instances.
    """
    cells = theorem_cells(theorem, n) if cells is None else [tuple(c) for c in cells]
    for m, f in cells:
        check_cell(theorem, n, m, f)
    if sample is None and n > 4:
        raise PreconditionError("exhaustive sweeps are limited to n <= 4; pass a sample size")
    if theorem == 2 and n == 4:
        exception_catalog()
    report = SweepReport()
    for m, f in cells:
        if sample is None:
            mode = "raw" if raw else "classes"
            cell = CellReport(theorem, n, m, f, mode)
            start = time.perf_counter()
            source = raw_instances(n, m, f) if raw else enumerate_instances(n, m, f)
            for M, F in source:
                _run_one(theorem, n, M, F, cell, check_oracle, oracle_budget)
        else:
            cell_seed = hash_seed(seed, theorem, n, m, f)
            cell = CellReport(theorem, n, m, f, "structured" if structured else "sampled", seed=cell_seed)
            rng = random.Random(cell_seed)
            start = time.perf_counter()
            if matching_count_ok(n, m):
                for _ in range(sample):
                    M, F = random_instance(n, m, f, rng, structured)
                    _run_one(theorem, n, M, F, cell, check_oracle, oracle_budget)
        cell.seconds = time.perf_counter() - start
        report.cells.append(cell)
    return report


def hash_seed(seed: int, *parts: int) -> int:
    """Per-cell seed derived from the sweep seed (stable across runs and platforms)."""
    x = seed & 0xFFFFFFFF
    for p in parts:
        x = (x * 1_000_003 + p + 0x9E3779B1) & 0xFFFFFFFF
    return x


__all__ = [
    "CellReport",
    "SweepReport",
    "THEOREM1_LABELS",
    "THEOREM2_LABELS",
    "enumerate_instances",
    "hamiltonian_cycle_count",
    "matching_count",
    "oracle",
    "random_instance",
    "random_matching",
    "sweep",
    "theorem_cells",
]
