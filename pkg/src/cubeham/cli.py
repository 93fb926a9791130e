"""Command-line front end: construct, verify, sweep, exceptions.

Exit codes:
    0  success / verification passed
    1  verification or sweep failed
    2  unreadable input or bad arguments
    3  instance outside the theorem's hypotheses
    4  the instance is the exceptional Q_4 configuration (no cycle exists)
    5  internal invariant violated (a bug)
    6  exception catalog mismatch
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import tempfile
from pathlib import Path

from .basecases import check_catalog_export, exception_catalog
from .constructor import CASE_LABELS, extend_matching, extend_matching_faulty
from .cube import Edge, check_dimension
from .errors import (
    CaseAInstance,
    CatalogMismatchError,
    InternalInvariantError,
    MalformedInstanceError,
    PreconditionError,
)
from .structures import check_instance, validate_cycle
from .surgery import ConstructionTrace

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_PARSE = 2
EXIT_PRECONDITION = 3
EXIT_CASE_A = 4
EXIT_INTERNAL = 5
EXIT_CATALOG = 6


class InputError(Exception):
    """A file could not be read or does not have the expected shape."""


# --- file formats ----------------------------------------------------------------


def parse_vertex(raw, n: int) -> int:
    if isinstance(raw, bool):
        raise InputError(f"vertex {raw!r} is not an integer or bit string")
    if isinstance(raw, int):
        v = raw
    elif isinstance(raw, str):
        if len(raw) != n or set(raw) - {"0", "1"}:
            raise InputError(f"vertex {raw!r} is not a {n}-character binary string")
        v = int(raw, 2)
    else:
        raise InputError(f"vertex {raw!r} is not an integer or bit string")
    if not 0 <= v < 1 << n:
        raise InputError(f"vertex {raw!r} outside Q_{n}")
    return v


def _pairs(raw, n: int, what: str) -> list[tuple[int, int]]:
    if not isinstance(raw, list):
        raise InputError(f"{what} must be a list of vertex pairs")
    out = []
    for pair in raw:
        if not isinstance(pair, list) or len(pair) != 2:
            raise InputError(f"{what} entry {pair!r} is not a pair")
        out.append((parse_vertex(pair[0], n), parse_vertex(pair[1], n)))
    return out


def _read_json(path: str):
    try:
        return json.loads(Path(path).read_text())
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise InputError(f"{path} is not valid JSON: {exc}") from None


def _n_of(data) -> int:
    if not isinstance(data, dict):
        raise InputError("expected a JSON object")
    n = data.get("n")
    if not isinstance(n, int) or isinstance(n, bool):
        raise InputError("field 'n' must be an integer")
    try:
        check_dimension(n)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    return n


def parse_instance(data) -> tuple[int, frozenset, frozenset]:
    """InstanceFile object -> (n, M, F); rejects non-edges, non-matchings and M/F overlap."""
    n = _n_of(data)
    M = _pairs(data.get("matching", []), n, "matching")
    F = _pairs(data.get("faults", []), n, "faults")
    try:
        Mset, Fset = check_instance(n, M, F)
    except MalformedInstanceError as exc:
        raise InputError(str(exc)) from None
    if len(Mset) != len(M) or len(Fset) != len(F):
        raise InputError("duplicate edges in the instance")
    return n, Mset, Fset


def serialize_instance(n: int, M, F) -> dict:
    return {"n": n, "matching": [list(e) for e in sorted(M)], "faults": [list(e) for e in sorted(F)]}


def parse_cycle(data) -> tuple[int, list]:
    n = _n_of(data)
    raw = data.get("cycle")
    if not isinstance(raw, list):
        raise InputError("field 'cycle' must be a list of vertices")
    return n, [parse_vertex(v, n) for v in raw]


def serialize_cycle(n: int, cycle, trace=None) -> dict:
    out = {"n": n, "cycle": list(cycle)}
    if trace is not None:
        out["trace"] = list(trace)
    return out


def to_dot(n: int, cycle, M, F) -> str:
    """Graphviz description: cycle edges solid, matching edges bold, faults dotted."""
    k = len(cycle)
    cyc = {Edge(min(a, b), max(a, b)) for a, b in ((cycle[i], cycle[(i + 1) % k]) for i in range(k))}
    M, F = set(M), set(F)
    lines = [f"graph Q{n} {{", "  node [shape=circle];"]
    for v in range(1 << n):
        lines.append(f'  {v} [label="{v:0{n}b}"];')
    for e in sorted(cyc | M | F):
        attrs = []
        tags = []
        if e in cyc:
            tags.append("cycle")
        if e in M:
            tags.append("matching")
            attrs += ["penwidth=3", "color=red"]
        if e in F:
            tags.append("fault")
            attrs += ["style=dotted", "color=gray"]
        attrs.append(f'class="{" ".join(tags)}"')
        lines.append(f"  {e.lo} -- {e.hi} [{', '.join(attrs)}];")
    lines.append("}")
    return "\n".join(lines) + "\n"


def write_atomic(path: str, text: str) -> None:
    """Write through a temporary file in the same directory, then rename."""
    target = Path(path)
    fd, tmp = tempfile.mkstemp(dir=target.parent if str(target.parent) else ".", prefix=f".{target.name}.")
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(text)
        os.replace(tmp, target)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _emit(text: str, out: str | None) -> None:
    if out is None or out == "-":
        sys.stdout.write(text)
    else:
        write_atomic(out, text)


# --- commands ------------------------------------------------------------------


def cmd_construct(args) -> int:
    n, M, F = parse_instance(_read_json(args.instance))
    trace = ConstructionTrace() if args.trace else None
    try:
        if args.faulty:
            cycle = extend_matching_faulty(n, M, F, trace)
        else:
            if F:
                raise PreconditionError("the instance has faults; pass --faulty")
            cycle = extend_matching(n, M, trace)
    except CaseAInstance as exc:
        print(f"case-a: {exc}", file=sys.stderr)
        return EXIT_CASE_A
    verdict = validate_cycle(cycle, n, M, F)
    if not verdict.passed:
        print("constructed cycle failed re-verification:", file=sys.stderr)
        print("\n".join(verdict.lines()), file=sys.stderr)
        return EXIT_INTERNAL
    _emit(json.dumps(serialize_cycle(n, cycle, trace.labels if trace else None)) + "\n", args.output)
    if args.dot:
        write_atomic(args.dot, to_dot(n, cycle, M, F))
    return EXIT_OK


def cmd_verify(args) -> int:
    n, M, F = parse_instance(_read_json(args.instance))
    n2, cycle = parse_cycle(_read_json(args.cycle))
    if n2 != n:
        raise InputError(f"instance is in Q_{n} but the cycle file says Q_{n2}")
    verdict = validate_cycle(cycle, n, M, F)
    print("\n".join(verdict.lines()))
    return EXIT_OK if verdict.passed else EXIT_FAIL


def _parse_cell(text: str) -> tuple[int, int]:
    try:
        parts = [int(x) for x in text.split(",")]
    except ValueError:
        raise argparse.ArgumentTypeError(f"cell {text!r} must look like M or M,F") from None
    if len(parts) == 1:
        parts.append(0)
    if len(parts) != 2:
        raise argparse.ArgumentTypeError(f"cell {text!r} must look like M or M,F")
    return parts[0], parts[1]


def render_figure(report, path: str) -> None:
    """Per-cell bar chart of successes and exceptional verdicts (needs matplotlib)."""
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    cells = report.cells
    names = [f"{c.m},{c.f}" for c in cells]
    fig, ax = plt.subplots(figsize=(max(4, 0.5 * len(cells) + 2), 3.5))
    ax.bar(names, [c.successes for c in cells], label="cycle found")
    ax.bar(names, [c.exceptional for c in cells], bottom=[c.successes for c in cells], label="exceptional")
    bad = [c.failures + c.disagreements for c in cells]
    if any(bad):
        ax.bar(names, bad, bottom=[c.successes + c.exceptional for c in cells], label="failed", color="red")
    first = cells[0] if cells else None
    ax.set_title(f"theorem {first.theorem}, n = {first.n}" if first else "empty sweep")
    ax.set_xlabel("|M|,|F|")
    ax.set_ylabel("instances")
    ax.legend()
    fig.tight_layout()
    fig.savefig(path)
    plt.close(fig)


def cmd_sweep(args) -> int:
    from .verify import check_cell, sweep

    cells = args.cell or None
    try:
        for m, f in cells or ():
            check_cell(args.theorem, args.n, m, f)
    except PreconditionError as exc:
        raise InputError(f"bad cell: {exc}") from None
    if args.sample is None and args.n > 4:
        raise InputError("exhaustive sweeps are limited to n <= 4; pass --sample")
    report = sweep(
        args.theorem,
        args.n,
        cells=cells,
        sample=args.sample,
        seed=args.seed,
        raw=args.raw,
        structured=args.structured,
    )
    text = report.to_text()
    if args.coverage:
        seen = report.label_counts()
        labels = [lab for lab in CASE_LABELS if lab.startswith(f"Thm{args.theorem}/")]
        text += "".join(f"coverage {lab} {seen[lab]}\n" for lab in labels)
    _emit(text, args.output)
    if args.json:
        write_atomic(args.json, report.to_json() + "\n")
    if args.figure:
        render_figure(report, args.figure)
    return EXIT_OK if report.passed else EXIT_FAIL


def cmd_exceptions(args) -> int:
    if args.check:
        try:
            text = Path(args.check).read_text()
        except OSError as exc:
            raise InputError(f"cannot read {args.check}: {exc.strerror}") from None
        check_catalog_export(text)
        print("catalog matches")
        return EXIT_OK
    _emit(exception_catalog().export(), args.output)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cubeham",
        description="Hamiltonian cycles of hypercubes through prescribed matchings, avoiding faulty edges.",
        epilog="Exit codes: 0 ok, 1 failed check, 2 bad input, 3 outside hypotheses, "
        "4 exceptional Q_4 instance, 5 internal error, 6 catalog mismatch. "
        "CUBEHAM_BUDGET sets the default search node limit.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("construct", help="build a cycle for an instance file")
    p.add_argument("instance")
    p.add_argument("-o", "--output", help="cycle file (default: stdout)")
    p.add_argument("--faulty", action="store_true", help="use the fault-tolerant construction")
    p.add_argument("--trace", action="store_true", help="include the case labels in the cycle file")
    p.add_argument("--dot", metavar="FILE", help="also write a Graphviz description")
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("verify", help="check a cycle file against an instance file")
    p.add_argument("instance")
    p.add_argument("cycle")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("sweep", help="run a construction over many instances")
    p.add_argument("--theorem", type=int, choices=(1, 2), required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--cell", type=_parse_cell, action="append", metavar="M[,F]", help="restrict to these cells")
    p.add_argument("--sample", type=int, help="random instances per cell (required for n > 4)")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--raw", action="store_true", help="enumerate raw instances instead of classes")
    p.add_argument("--structured", action="store_true", help="bias samples toward concentrated instances")
    p.add_argument("--coverage", action="store_true", help="append per-label counts")
    p.add_argument("-o", "--output", help="report file (default: stdout)")
    p.add_argument("--json", metavar="FILE", help="machine-readable summary")
    p.add_argument("--figure", metavar="PNG", help="bar chart of the sweep (needs matplotlib)")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("exceptions", help="derive and export the exceptional configurations")
    p.add_argument("-o", "--output", help="catalog file (default: stdout)")
    p.add_argument("--check", metavar="FILE", help="compare a saved catalog with a fresh derivation")
    p.set_defaults(func=cmd_exceptions)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_PARSE if exc.code else EXIT_OK
    try:
        return args.func(args)
    except InputError as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except CatalogMismatchError as exc:
        print(f"catalog mismatch: {exc}", file=sys.stderr)
        return EXIT_CATALOG
    except InternalInvariantError as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        if exc.trace is not None:
            print("case labels so far: " + " > ".join(exc.trace.labels), file=sys.stderr)
        return EXIT_INTERNAL
    except PreconditionError as exc:
        print(f"precondition violated: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION


if __name__ == "__main__":
    sys.exit(main())
