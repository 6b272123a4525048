"""Move scripts for decomposable Lagrangian cobordisms.

A script lists elementary pieces from the bottom end to the top end::

    # comments run to the end of the line
    start K1 tb=-1 r=0
    R2 K1
    Birth -> U tb=-1 r=0
    Saddle K1 U -> K2 tb=-1 r=0
    end K2 tb=-1 r=0

Legendrian Reidemeister moves (R1, R1', R2, R2', R3) keep the component set
and by default leave tb and r alone; ``dtb=``/``dr=`` attributes declare a
different effect.  A saddle merges two components into one or splits one
into two; a birth adds an unknot.  Both must declare tb and r of every
component they create.  The checker replays these declarations; it does not
decide whether a move is geometrically realizable.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

from .errors import (
    EndpointMismatch,
    LedgerMismatch,
    MultiEnd,
    ScriptSyntaxError,
    UndeclaredComponent,
    UnknownMove,
)

REIDEMEISTER = ("R1", "R1'", "R2", "R2'", "R3")
MOVE_KINDS = REIDEMEISTER + ("Saddle", "Birth")

_NAME = re.compile(r"[A-Za-z_][A-Za-z0-9_.]*\Z")
_ATTR = re.compile(r"(tb|r|dtb|dr)=(-?\d+)\Z")


@dataclass(frozen=True)
class Component:
    name: str
    tb: int
    r: int

    def __str__(self) -> str:
        return f"{self.name} tb={self.tb} r={self.r}"


@dataclass(frozen=True)
class Move:
    kind: str
    operands: tuple[str, ...]
    created: tuple[Component, ...] = ()
    dtb: int = 0
    dr: int = 0
    line: int | None = field(default=None, compare=False)

    @property
    def delta_components(self) -> int:
        if self.kind == "Birth":
            return len(self.created)
        if self.kind == "Saddle":
            return len(self.created) - len(self.operands)
        return 0

    @property
    def delta_chi(self) -> int:
        return {"Birth": 1, "Saddle": -1}.get(self.kind, 0)

    def __str__(self) -> str:
        parts = [self.kind, *self.operands]
        if self.kind in REIDEMEISTER:
            if self.dtb:
                parts.append(f"dtb={self.dtb}")
            if self.dr:
                parts.append(f"dr={self.dr}")
        else:
            parts.append("->")
            parts.extend(str(c) for c in self.created)
        return " ".join(parts)


@dataclass(frozen=True)
class MoveScript:
    start: tuple[Component, ...]
    moves: tuple[Move, ...]
    end: tuple[Component, ...]

    def __str__(self) -> str:
        return format_script(self)


def _tokens(line: str) -> list[tuple[str, int]]:
    """Whitespace-separated tokens with their 1-based columns, comments removed."""
    body = line.split("#", 1)[0]
    return [(m.group(), m.start() + 1) for m in re.finditer(r"\S+", body)]


def _components(tokens: list[tuple[str, int]], lineno: int, what: str) -> list[Component]:
    """Parse ``NAME tb=INT r=INT`` groups."""
    out: list[Component] = []
    i = 0
    while i < len(tokens):
        name, col = tokens[i]
        if not _NAME.match(name):
            raise ScriptSyntaxError(f"expected a component name in {what}, got {name!r}", lineno, col)
        attrs: dict[str, int] = {}
        i += 1
        while i < len(tokens) and "=" in tokens[i][0]:
            tok, tcol = tokens[i]
            m = _ATTR.match(tok)
            if not m or m.group(1) not in ("tb", "r"):
                raise ScriptSyntaxError(f"bad attribute {tok!r}; expected tb=<int> or r=<int>", lineno, tcol)
            if m.group(1) in attrs:
                raise ScriptSyntaxError(f"attribute {m.group(1)} given twice", lineno, tcol)
            attrs[m.group(1)] = int(m.group(2))
            i += 1
        for key in ("tb", "r"):
            if key not in attrs:
                raise ScriptSyntaxError(f"component {name} in {what} needs {key}=", lineno, col)
        if any(c.name == name for c in out):
            raise ScriptSyntaxError(f"component {name} declared twice", lineno, col)
        out.append(Component(name, attrs["tb"], attrs["r"]))
    return out


def _parse_move(tokens: list[tuple[str, int]], lineno: int) -> Move:
    kind, col = tokens[0]
    if kind not in MOVE_KINDS:
        raise UnknownMove(f"unknown move {kind!r}; expected one of {', '.join(MOVE_KINDS)}", lineno, col)
    rest = tokens[1:]
    arrow = next((i for i, (t, _c) in enumerate(rest) if t == "->"), None)
    lhs = rest if arrow is None else rest[:arrow]
    rhs = [] if arrow is None else rest[arrow + 1:]
    operands: list[str] = []
    dtb = dr = 0
    for tok, tcol in lhs:
        if "=" in tok:
            m = _ATTR.match(tok)
            if kind not in REIDEMEISTER or not m or m.group(1) not in ("dtb", "dr"):
                raise ScriptSyntaxError(f"unexpected attribute {tok!r}", lineno, tcol)
            if m.group(1) == "dtb":
                dtb = int(m.group(2))
            else:
                dr = int(m.group(2))
            continue
        if not _NAME.match(tok):
            raise ScriptSyntaxError(f"bad component name {tok!r}", lineno, tcol)
        operands.append(tok)
    if kind in REIDEMEISTER:
        if arrow is not None:
            raise ScriptSyntaxError(f"{kind} does not create components", lineno, rest[arrow][1])
        if not operands:
            raise ScriptSyntaxError(f"{kind} needs at least one component", lineno, col)
        return Move(kind, tuple(operands), (), dtb, dr, lineno)
    if arrow is None:
        raise ScriptSyntaxError(f"{kind} must declare what it creates after '->'", lineno, col)
    created = _components(rhs, lineno, kind)
    if kind == "Birth":
        if operands:
            raise ScriptSyntaxError("Birth takes no operands", lineno, lhs[0][1])
        if len(created) != 1:
            raise ScriptSyntaxError("Birth creates exactly one component", lineno, col)
    else:
        if (len(operands), len(created)) not in ((2, 1), (1, 2)):
            raise ScriptSyntaxError("Saddle merges two components into one or splits one into two", lineno, col)
    return Move(kind, tuple(operands), tuple(created), 0, 0, lineno)


def replay(start, moves) -> dict[str, tuple[int, int]]:
    """Run the tb/r ledger from ``start`` through ``moves``."""
    ledger = {c.name: (c.tb, c.r) for c in start}
    for mv in moves:
        for op in mv.operands:
            if op not in ledger:
                raise UndeclaredComponent(f"component {op!r} does not exist here", mv.line, 1)
        if len(set(mv.operands)) != len(mv.operands):
            raise ScriptSyntaxError("a component appears twice in one move", mv.line, 1)
        if mv.kind in REIDEMEISTER:
            for op in mv.operands:
                tb, r = ledger[op]
                ledger[op] = (tb + mv.dtb, r + mv.dr)
            continue
        for op in mv.operands:
            del ledger[op]
        for c in mv.created:
            if c.name in ledger:
                raise LedgerMismatch(f"component {c.name!r} already exists", mv.line, 1)
            ledger[c.name] = (c.tb, c.r)
    return ledger


def parse_script(text: str) -> MoveScript:
    start: list[Component] | None = None
    end: list[Component] | None = None
    moves: list[Move] = []
    end_line = 0
    for lineno, line in enumerate(text.splitlines(), start=1):
        tokens = _tokens(line)
        if not tokens:
            continue
        head, col = tokens[0]
        if end is not None:
            raise ScriptSyntaxError("nothing may follow the end line", lineno, col)
        if head == "start":
            if start is not None or moves:
                raise ScriptSyntaxError("start must come first, once", lineno, col)
            start = _components(tokens[1:], lineno, "start")
            if not start:
                raise ScriptSyntaxError("start needs at least one component", lineno, col)
            continue
        if start is None:
            raise ScriptSyntaxError("script must begin with a start line", lineno, col)
        if head == "end":
            end = _components(tokens[1:], lineno, "end")
            end_line = lineno
            continue
        moves.append(_parse_move(tokens, lineno))
    if start is None:
        raise ScriptSyntaxError("empty script", 1, 1)
    if end is None:
        raise ScriptSyntaxError("missing end line", len(text.splitlines()) + 1, 1)
    ledger = replay(start, moves)
    declared = {c.name: (c.tb, c.r) for c in end}
    if ledger != declared:
        raise LedgerMismatch(f"replayed components {_fmt_ledger(ledger)} differ from end {_fmt_ledger(declared)}",
                             end_line, 1)
    return MoveScript(tuple(start), tuple(moves), tuple(end))


def _fmt_ledger(ledger: dict[str, tuple[int, int]]) -> str:
    return "{" + ", ".join(f"{k}: tb={v[0]} r={v[1]}" for k, v in sorted(ledger.items())) + "}"


def format_script(s: MoveScript) -> str:
    lines = ["start " + " ".join(str(c) for c in s.start)]
    lines.extend(str(mv) for mv in s.moves)
    lines.append("end " + " ".join(str(c) for c in s.end))
    return "\n".join(lines) + "\n"


def euler_characteristic(s: MoveScript) -> int:
    return sum(mv.delta_chi for mv in s.moves)


@dataclass
class ConcordanceReport:
    passed: bool
    chi: int
    start: Component
    end: Component
    violations: list[str]

    def __str__(self) -> str:
        head = "PASS" if self.passed else "FAIL"
        body = [f"{head}: chi = {self.chi}, {self.start} -> {self.end}"]
        body.extend(f"  violated: {v}" for v in self.violations)
        return "\n".join(body)


def check_concordance(s: MoveScript) -> ConcordanceReport:
    """PASS iff the script is a cylinder between knots with equal tb and equal r."""
    if len(s.start) != 1 or len(s.end) != 1:
        raise MultiEnd(f"concordance needs one component at each end, got {len(s.start)} and {len(s.end)}")
    chi = euler_characteristic(s)
    lo, hi = s.start[0], s.end[0]
    violations = []
    if chi != 0:
        violations.append(f"Euler characteristic {chi} != 0 (not a cylinder)")
    if hi.tb - lo.tb != -chi:
        violations.append(f"tb(top) - tb(bottom) = {hi.tb - lo.tb} but -chi = {-chi}")
    if hi.r != lo.r:
        violations.append(f"r(bottom) = {lo.r} but r(top) = {hi.r}")
    return ConcordanceReport(not violations, chi, lo, hi, violations)


def compose(s1: MoveScript, s2: MoveScript) -> MoveScript:
    """``s1`` followed by ``s2``; the top of ``s1`` must be the bottom of ``s2``."""
    top = {c.name: (c.tb, c.r) for c in s1.end}
    bottom = {c.name: (c.tb, c.r) for c in s2.start}
    if top != bottom:
        raise EndpointMismatch(f"top of first script {_fmt_ledger(top)} != bottom of second {_fmt_ledger(bottom)}")
    return MoveScript(s1.start, s1.moves + s2.moves, s2.end)
