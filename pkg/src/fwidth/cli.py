"""Command-line front-end: parse a hypergraph, solve for the requested
measure, and emit the width with a verified tree decomposition.

Input formats (auto-detected by the first significant line):

* ``p hg <n> <m>`` header followed by m lines of 1-indexed vertex numbers,
  one hyperedge per line;
* PACE-style graphs: ``p tw <n> <m>`` (``p edge`` accepted) followed by m
  ``u v`` lines;
* named edges: lines of the form ``e <label>: <tok> <tok> ...`` where vertex
  tokens are arbitrary names registered in order of first appearance.

Lines starting with ``c`` are comments. Output is a ``.td``-style listing:
an ``s htd <bags> <width> <n> <measure>`` header, one ``b <id> <names...>``
line per bag, one ``<id> <id>`` line per tree edge, and for ghw one
``c <bagid> <edge numbers...>`` cover-certificate line per bag.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from typing import Optional

from .core import (
    Hypergraph,
    TreeDecomposition,
    bits,
    gaifman,
    validate_decomposition,
)
from .engine import Limits, SolveResult, solve_hypergraph
from .errors import (
    CapacityExceeded,
    DecompositionError,
    FwidthError,
    IsolatedVertexError,
    ParseError,
)
from .intcover import extract_cover
from .oracle import fhw_by_elimination, ghw_by_elimination, tw_by_elimination
from .widthfn import (
    format_width,
    fractional_cover_function,
    integral_cover_function,
    size_width_function,
)

MEASURES = ("tw", "ghw", "fhw")


@dataclass
class RunConfig:
    input_path: str
    measure: str
    output_path: Optional[str] = None
    check: bool = False
    oracle: bool = False
    patch_isolated: bool = False
    stats_json: Optional[str] = None
    threads: int = 1
    zeta_cap: Optional[int] = None
    max_separators: Optional[int] = None


def _significant_lines(text: str):
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("c ") or line == "c":
            continue
        yield number, line


def parse_hypergraph(text: str, patch_isolated: bool = False) -> Hypergraph:
    lines = list(_significant_lines(text))
    if not lines:
        raise ParseError(1, "empty input")
    number, first = lines[0]
    if first.startswith("p "):
        return _parse_with_header(lines, patch_isolated)
    if first.startswith("e ") and ":" in first:
        return _parse_named(lines, patch_isolated)
    raise ParseError(number, "expected a 'p hg', 'p tw', or 'e name:' line")


def _parse_with_header(lines, patch_isolated: bool) -> Hypergraph:
    number, header = lines[0]
    parts = header.split()
    if len(parts) != 4 or parts[0] != "p" or parts[1] not in ("hg", "tw", "edge"):
        raise ParseError(number, f"malformed problem line {header!r}")
    try:
        n, m = int(parts[2]), int(parts[3])
    except ValueError:
        raise ParseError(number, "vertex and edge counts must be integers") from None
    if n < 1:
        raise ParseError(number, "vertex count must be positive")
    kind = parts[1]
    body = lines[1:]
    if len(body) != m:
        raise ParseError(number, f"declared {m} edges but found {len(body)}")
    edges: list[int] = []
    for line_no, line in body:
        try:
            verts = [int(tok) for tok in line.split()]
        except ValueError:
            raise ParseError(line_no, f"non-integer vertex in {line!r}") from None
        if kind in ("tw", "edge") and len(verts) != 2:
            raise ParseError(line_no, "graph edges need exactly two endpoints")
        if not verts:
            raise ParseError(line_no, "empty hyperedge")
        mask = 0
        for v in verts:
            if not 1 <= v <= n:
                raise ParseError(line_no, f"vertex {v} outside 1..{n}")
            mask |= 1 << (v - 1)
        if kind in ("tw", "edge") and mask.bit_count() != 2:
            raise ParseError(line_no, "graph edge endpoints must differ")
        edges.append(mask)
    names = tuple(str(i + 1) for i in range(n))
    return _finish(n, edges, names, patch_isolated)


def _parse_named(lines, patch_isolated: bool) -> Hypergraph:
    name_to_id: dict[str, int] = {}
    names: list[str] = []
    edges: list[int] = []
    for line_no, line in lines:
        if not line.startswith("e "):
            raise ParseError(line_no, f"expected an 'e name: ...' line, got {line!r}")
        _, _, rest = line.partition(" ")
        label, colon, tokens = rest.partition(":")
        if not colon or not label.strip():
            raise ParseError(line_no, "edge line needs a label followed by ':'")
        toks = tokens.split()
        if not toks:
            raise ParseError(line_no, "empty hyperedge")
        mask = 0
        for tok in toks:
            if tok not in name_to_id:
                name_to_id[tok] = len(names)
                names.append(tok)
            mask |= 1 << name_to_id[tok]
        edges.append(mask)
    return _finish(len(names), edges, tuple(names), patch_isolated)


def _finish(n: int, edges: list[int], names: tuple[str, ...], patch_isolated: bool) -> Hypergraph:
    covered = 0
    for e in edges:
        covered |= e
    full = (1 << n) - 1
    if covered != full and patch_isolated:
        for v in bits(full & ~covered):
            edges.append(1 << v)
    return Hypergraph.build(n, edges, names)


def emit_decomposition(result: SolveResult, h: Hypergraph) -> str:
    td = result.decomposition
    out = [f"s htd {td.bag_count} {format_width(result.width)} {h.n} {result.measure}"]
    for i, bag in enumerate(td.bags):
        out.append(f"b {i + 1} " + " ".join(h.names[v] for v in bits(bag)))
    for a, b in td.tree_edges:
        out.append(f"{a + 1} {b + 1}")
    if result.measure == "ghw":
        for i, bag in enumerate(td.bags):
            cert = extract_cover(h, bag)
            out.append(f"c {i + 1} " + " ".join(str(j + 1) for j in cert.edges))
    return "\n".join(out) + "\n"


def parse_decomposition(text: str, h: Hypergraph):
    """Re-read an emitted decomposition. Returns the decomposition, the
    declared width string, the measure tag, and any certificate lines."""
    name_to_id = {name: i for i, name in enumerate(h.names)}
    header: Optional[tuple[int, str, int, str]] = None
    bags: dict[int, int] = {}
    edges: list[tuple[int, int]] = []
    certs: dict[int, tuple[int, ...]] = {}
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        parts = line.split()
        if parts[0] == "s":
            if header is not None:
                raise ParseError(line_no, "duplicate header")
            if len(parts) != 6 or parts[1] != "htd":
                raise ParseError(line_no, "malformed 's htd' header")
            header = (int(parts[2]), parts[3], int(parts[4]), parts[5])
        elif parts[0] == "b":
            if len(parts) < 2:
                raise ParseError(line_no, "bag line without id")
            bag_id = int(parts[1])
            mask = 0
            for tok in parts[2:]:
                if tok not in name_to_id:
                    raise ParseError(line_no, f"unknown vertex {tok!r}")
                mask |= 1 << name_to_id[tok]
            if bag_id in bags:
                raise ParseError(line_no, f"duplicate bag id {bag_id}")
            bags[bag_id] = mask
        elif parts[0] == "c":
            certs[int(parts[1])] = tuple(int(tok) - 1 for tok in parts[2:])
        else:
            if len(parts) != 2:
                raise ParseError(line_no, f"expected a tree edge, got {line!r}")
            edges.append((int(parts[0]), int(parts[1])))
    if header is None:
        raise ParseError(1, "missing 's htd' header")
    count, width_str, n, measure = header
    if n != h.n:
        raise ParseError(1, f"decomposition is for {n} vertices, hypergraph has {h.n}")
    if sorted(bags) != list(range(1, count + 1)):
        raise ParseError(1, "bag ids must be 1..#bags")
    td = TreeDecomposition(
        tuple(bags[i] for i in range(1, count + 1)),
        tuple((a - 1, b - 1) for a, b in edges),
    )
    return td, width_str, measure, certs


def measure_function(h: Hypergraph, measure: str):
    if measure == "tw":
        return size_width_function()
    if measure == "ghw":
        return integral_cover_function(h)
    if measure == "fhw":
        return fractional_cover_function(h)
    raise ValueError(f"unknown measure {measure!r}")


def _oracle_width(h: Hypergraph, measure: str):
    if measure == "tw":
        return tw_by_elimination(gaifman(h))
    if measure == "ghw":
        return ghw_by_elimination(h)
    return fhw_by_elimination(h)


def run(config: RunConfig) -> int:
    try:
        if config.input_path == "-":
            text = sys.stdin.read()
        else:
            with open(config.input_path, "r", encoding="utf-8") as fh:
                text = fh.read()
    except OSError as exc:
        print(f"fwidth: cannot read input: {exc}", file=sys.stderr)
        return 1

    limits = Limits()
    if config.zeta_cap is not None:
        limits.zeta_cap = config.zeta_cap
    if config.max_separators is not None:
        limits.max_separators = config.max_separators

    try:
        h = parse_hypergraph(text, config.patch_isolated)
        result = solve_hypergraph(h, config.measure, threads=config.threads, limits=limits)
        if config.check:
            achieved = validate_decomposition(
                h, result.decomposition, measure_function(h, config.measure)
            )
            if achieved != result.width:
                raise DecompositionError(
                    f"self-check failed: decomposition width {achieved} vs optimum {result.width}"
                )
        if config.oracle:
            expected = _oracle_width(h, config.measure)
            if expected != result.width:
                raise DecompositionError(
                    f"oracle cross-check failed: oracle {expected} vs solver {result.width}"
                )
        rendered = emit_decomposition(result, h)
        if config.output_path:
            with open(config.output_path, "w", encoding="utf-8") as fh:
                fh.write(rendered)
        else:
            sys.stdout.write(rendered)
        if config.stats_json:
            stats = result.stats
            payload = {
                "n": h.n,
                "m": h.m,
                "measure": config.measure,
                "width": format_width(result.width),
                "separators": stats.separators,
                "inclusion_minimal_separators": stats.inclusion_minimal,
                "pmcs": stats.pmcs,
                "full_blocks": stats.full_blocks,
                "f_evaluations": stats.f_evaluations,
                "decision_runs": stats.decision_runs,
                "wall_seconds": stats.wall_seconds,
                "phase_seconds": stats.phase_seconds,
            }
            with open(config.stats_json, "w", encoding="utf-8") as fh:
                json.dump(payload, fh, indent=2, sort_keys=True)
                fh.write("\n")
        return 0
    except CapacityExceeded as exc:
        print(f"fwidth: capacity exceeded: {exc}", file=sys.stderr)
        return 2
    except (ParseError, IsolatedVertexError, DecompositionError, FwidthError) as exc:
        print(f"fwidth: {exc}", file=sys.stderr)
        return 1


def build_arg_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fwidth",
        description="Exact width measures of hypergraphs with verified tree decompositions.",
    )
    parser.add_argument("input", help="input file, or '-' for stdin")
    parser.add_argument("--measure", required=True, choices=MEASURES,
                        help="width measure to optimize")
    parser.add_argument("-o", "--output", help="write the decomposition to this file")
    parser.add_argument("--check", action="store_true",
                        help="re-validate the decomposition before printing")
    parser.add_argument("--oracle", action="store_true",
                        help="cross-check against the brute-force oracle (small inputs only)")
    parser.add_argument("--patch-isolated", action="store_true",
                        help="add a singleton hyperedge for each isolated vertex instead of failing")
    parser.add_argument("--stats-json", metavar="PATH",
                        help="dump enumeration sizes and phase timings as JSON")
    parser.add_argument("--threads", type=int, default=1,
                        help="worker threads for width-table evaluation")
    parser.add_argument("--zeta-cap", type=int, default=None,
                        help="max n for the dense cover-decision tables")
    parser.add_argument("--max-separators", type=int, default=None,
                        help="budget for the minimal-separator list")
    return parser


def main(argv=None) -> int:
    args = build_arg_parser().parse_args(argv)
    config = RunConfig(
        input_path=args.input,
        measure=args.measure,
        output_path=args.output,
        check=args.check,
        oracle=args.oracle,
        patch_isolated=args.patch_isolated,
        stats_json=args.stats_json,
        threads=args.threads,
        zeta_cap=args.zeta_cap,
        max_separators=args.max_separators,
    )
    return run(config)


if __name__ == "__main__":
    sys.exit(main())
