"""Command-line interface.

Exit codes: 0 computed, 1 invalid input, 2 I/O error, 3 budget exceeded or
an answer that depends on an unknown status.  Human-readable text goes to
stdout; ``--out FILE`` also writes the machine-readable JSON report.
Wherever a grid path is expected, ``@name`` picks a catalog entry instead.
"""

from __future__ import annotations

import argparse
import datetime as _dt
import json
import os
import sys
from pathlib import Path

from . import __version__
from .catalog import get_entry, load_catalog
from .cobordism import check_concordance, euler_characteristic, parse_script
from .complex import (
    DEFAULT_BUDGET,
    dims_to_json,
    enumerate_states,
    hat_dims_from_tilde,
    max_alexander,
    tilde_differential,
)
from .errors import (
    BudgetExceeded,
    GridlockError,
    IncomparableUnknowns,
    InvalidGrid,
    MultiComponent,
    MultiEnd,
    ScriptError,
)
from .grid import GridDiagram, classical_invariants, load_grid, trace_components
from .invariants import UNKNOWN, invariant_class, obstruct_grids

EXIT_OK, EXIT_INVALID, EXIT_IO, EXIT_BUDGET = 0, 1, 2, 3


class _Exit(Exception):
    def __init__(self, code: int, message: str = ""):
        self.code = code
        self.message = message


def _load(path: str) -> GridDiagram:
    if path.startswith("@"):
        try:
            entry = get_entry(path[1:])
        except KeyError as exc:
            raise _Exit(EXIT_IO, str(exc.args[0])) from None
        if entry.grid is None:
            raise _Exit(EXIT_INVALID, f"catalog entry {entry.name} has no grid yet")
        return entry.grid
    try:
        g = load_grid(path)
    except OSError as exc:
        raise _Exit(EXIT_IO, f"{path}: {exc.strerror or exc}") from None
    except InvalidGrid as exc:
        raise _Exit(EXIT_INVALID, f"{path}: {exc}") from None
    if g.name is None:
        g = GridDiagram(g.n, g.x, g.o, Path(path).stem)
    return g


def _window(text: str | None) -> tuple[int, int] | None:
    if text is None:
        return None
    try:
        a, b = (int(v) for v in text.split(":"))
    except ValueError:
        raise _Exit(EXIT_INVALID, f"--window expects A:B, got {text!r}") from None
    if a > b:
        raise _Exit(EXIT_INVALID, f"empty window {text}")
    return a, b


def _emit(args, report: dict, text: str) -> None:
    print(text)
    if args.out:
        if not getattr(args, "reproducible", False):
            report["generated_at"] = _dt.datetime.now(_dt.timezone.utc).isoformat(timespec="seconds")
        report["version"] = __version__
        try:
            Path(args.out).write_text(json.dumps(report, indent=2, sort_keys=True) + "\n", encoding="utf-8")
        except OSError as exc:
            raise _Exit(EXIT_IO, f"{args.out}: {exc.strerror or exc}") from None


def format_table(dims: dict[tuple[int, int], int]) -> str:
    if not dims:
        return "(zero)"
    maslovs = sorted({d for d, _ in dims})
    alexs = sorted({s for _, s in dims}, reverse=True)
    head = ["A\\M"] + [str(m) for m in maslovs]
    rows = [head]
    for s in alexs:
        rows.append([str(s)] + [str(dims.get((m, s), "")) or "." for m in maslovs])
    widths = [max(len(r[i]) for r in rows) for i in range(len(head))]
    return "\n".join("  ".join(cell.rjust(w) for cell, w in zip(r, widths)) for r in rows)


def cmd_validate(args) -> int:
    g = _load(args.grid)
    k = trace_components(g)
    report = {"grid": g.to_dict(), "valid": True, "components": k}
    text = f"valid {g.n}x{g.n} grid, {k} component{'s' if k != 1 else ''}"
    if k == 1:
        ci = classical_invariants(g)
        report["tb"], report["r"] = ci.tb, ci.r
        text += f", tb={ci.tb}, r={ci.r}"
    _emit(args, report, text)
    return EXIT_OK


def cmd_homology(args) -> int:
    g = _load(args.grid)
    window = _window(args.window)
    try:
        states = enumerate_states(g, window, budget=args.budget)
    except MultiComponent as exc:
        raise _Exit(EXIT_INVALID, str(exc)) from None
    except BudgetExceeded as exc:
        _emit(args, {"grid": g.to_dict(), "status": "budget_exceeded", "message": str(exc)}, f"unknown: {exc}")
        return EXIT_BUDGET
    c = tilde_differential(g, states, threads=args.threads)
    tilde = c.tilde_dims()
    report = {"grid": g.to_dict(), "window": list(window) if window else None,
              "tilde_dims": dims_to_json(tilde), "tilde_total_rank": sum(tilde.values())}
    if window is not None and window[1] < max_alexander(g):
        report["status"] = "window_too_narrow"
        report["message"] = (f"hat dimensions need every Alexander grading up to {max_alexander(g)}; "
                             f"window ends at {window[1]}")
        _emit(args, report, "tilde homology in window:\n" + format_table(tilde) + "\n" + report["message"])
        return EXIT_BUDGET
    hat = hat_dims_from_tilde(tilde, g.n, window[0] if window else None)
    report.update(status="ok", hat_dims=dims_to_json(hat), hat_total_rank=sum(hat.values()))
    text = (f"hat knot Floer homology of {g.name or 'grid'} (rows: Alexander, columns: Maslov)\n"
            f"{format_table(hat)}\n"
            f"tilde total rank {report['tilde_total_rank']} = {report['hat_total_rank']} * 2^{g.n - 1}")
    _emit(args, report, text)
    return EXIT_OK


def _status(v) -> str:
    return {True: "vanishes", False: "nonzero", None: "undefined"}.get(v, str(v)) if not isinstance(v, str) else v


def cmd_invariants(args) -> int:
    g = _load(args.grid)
    try:
        ci = classical_invariants(g)
    except MultiComponent as exc:
        raise _Exit(EXIT_INVALID, str(exc)) from None
    lines = [f"{g.name or 'grid'}: tb={ci.tb}, r={ci.r}",
             "classes live in the homology of the grid's knot (the front's mirror)"]
    report = {"grid": g.to_dict(), "tb": ci.tb, "r": ci.r, "classes": {}}
    unknown = False
    for which in ("plus", "minus"):
        inv = invariant_class(g, which, args.kmax, args.budget, args.threads)
        report["classes"][which] = inv.to_dict()
        unknown |= inv.vanishing == UNKNOWN
        deltas = ", ".join(f"d{k}: {_status(v)}" for k, v in inv.delta_vanishing.items())
        lines.append(f"x{'+' if which == 'plus' else '-'} at (M, A) = {inv.bigrading}: {_status(inv.vanishing)}; {deltas}")
    _emit(args, report, "\n".join(lines))
    return EXIT_BUDGET if unknown else EXIT_OK


def cmd_obstruct(args) -> int:
    src, tgt = _load(args.source), _load(args.target)
    try:
        verdict = obstruct_grids(src, tgt, args.kmax, args.which, args.budget, args.threads)
    except MultiComponent as exc:
        raise _Exit(EXIT_INVALID, str(exc)) from None
    except IncomparableUnknowns as exc:
        _emit(args, {"status": "unknown", "message": str(exc)}, f"unknown: {exc}")
        return EXIT_BUDGET
    cite = {
        "ObstructedRegular": "vanishing criterion for regular Lagrangian concordances",
        "ObstructedDecomposable": "page-differential criterion for decomposable Lagrangian concordances",
        "ClassicallyObstructed": "tb and r must agree at both ends of a Lagrangian concordance",
        "NoObstructionFound": "no criterion applies (not an existence claim)",
    }[verdict.kind]
    text = "\n".join([f"{verdict.label}: {verdict.source} -> {verdict.target}", f"  by: {cite}",
                      *(f"  {e}" for e in verdict.evidence)])
    _emit(args, verdict.to_dict(), text)
    return EXIT_OK


def cmd_script_check(args) -> int:
    try:
        text = Path(args.script).read_text(encoding="utf-8")
    except OSError as exc:
        raise _Exit(EXIT_IO, f"{args.script}: {exc.strerror or exc}") from None
    try:
        script = parse_script(text)
    except ScriptError as exc:
        raise _Exit(EXIT_INVALID, f"{args.script}: {exc}") from None
    chi = euler_characteristic(script)
    report = {"moves": len(script.moves), "chi": chi,
              "start": [str(c) for c in script.start], "end": [str(c) for c in script.end]}
    try:
        rep = check_concordance(script)
    except MultiEnd as exc:
        report["concordance"] = None
        _emit(args, report, f"cobordism with chi = {chi}; {exc}")
        return EXIT_OK
    report.update(concordance="PASS" if rep.passed else "FAIL", violations=rep.violations)
    _emit(args, report, str(rep))
    return EXIT_OK if rep.passed else EXIT_INVALID


def cmd_catalog(args) -> int:
    try:
        entries = load_catalog()
    except OSError as exc:
        raise _Exit(EXIT_IO, f"catalog: {exc.strerror or exc}") from None
    if args.action == "list":
        lines = []
        for e in entries:
            size = f"{e.grid.n}x{e.grid.n}" if e.grid else "no grid"
            lines.append(f"{e.name:<22} {size:<8} {e.legendrian_type}")
        _emit(args, {"entries": [e.name for e in entries]}, "\n".join(lines))
        return EXIT_OK
    if not args.name:
        raise _Exit(EXIT_INVALID, "catalog show needs an entry name")
    match = [e for e in entries if e.name == args.name]
    if not match:
        raise _Exit(EXIT_INVALID, f"no catalog entry named {args.name!r}")
    e = match[0]
    lines = [f"{e.name}: {e.legendrian_type}"]
    if e.grid_knot:
        lines.append(f"grid knot: {e.grid_knot}")
    if e.description:
        lines.append(e.description)
    lines.append(str(e.grid) if e.grid else "(grid not yet transcribed)")
    for key, exp in e.expected.items():
        lines.append(f"  {key} = {json.dumps(exp.value)} [{exp.source}]")
    _emit(args, e.to_dict(), "\n".join(lines))
    return EXIT_OK


class _Parser(argparse.ArgumentParser):
    """Usage errors are invalid input (exit 1); argparse would use 2, our I/O code."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INVALID, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="gridlock", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    common = _Parser(add_help=False)
    common.add_argument("--out", metavar="FILE", help="write the JSON report here")
    common.add_argument("--reproducible", action="store_true", help="omit the timestamp from JSON")
    common.add_argument("--threads", type=int, default=os.cpu_count() or 1,
                        help="worker threads for rectangle counting (results do not depend on it)")
    common.add_argument("--budget", type=int, default=DEFAULT_BUDGET, help="maximum number of generated states")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", parents=[common], help="check a grid file")
    p.add_argument("grid")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("homology", parents=[common], help="bigraded hat knot Floer homology")
    p.add_argument("grid")
    p.add_argument("--window", metavar="A:B",
                   help="only Alexander gradings A..B (write --window=-2:1 when A is negative)")
    p.set_defaults(func=cmd_homology)

    p = sub.add_parser("invariants", parents=[common], help="tb, r and the canonical classes x+ / x-")
    p.add_argument("grid")
    p.add_argument("--kmax", type=int, default=3)
    p.set_defaults(func=cmd_invariants)

    p = sub.add_parser("obstruct", parents=[common], help="concordance obstruction from SOURCE to TARGET")
    p.add_argument("source")
    p.add_argument("target")
    p.add_argument("--kmax", type=int, default=3)
    p.add_argument("--which", choices=("plus", "minus"), default="plus")
    p.set_defaults(func=cmd_obstruct)

    p = sub.add_parser("script-check", parents=[common], help="check a cobordism move script")
    p.add_argument("script")
    p.set_defaults(func=cmd_script_check)

    p = sub.add_parser("catalog", parents=[common], help="list or show catalog entries")
    p.add_argument("action", choices=("list", "show"))
    p.add_argument("name", nargs="?")
    p.set_defaults(func=cmd_catalog)
    return parser


def main(argv: list[str] | None = None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except _Exit as exc:
        if exc.message:
            print(f"gridlock: {exc.message}", file=sys.stderr)
        return exc.code
    except GridlockError as exc:
        print(f"gridlock: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
