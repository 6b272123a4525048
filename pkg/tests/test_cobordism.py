import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gridlock.cobordism import (
    REIDEMEISTER,
    Component,
    MoveScript,
    check_concordance,
    compose,
    euler_characteristic,
    format_script,
    parse_script,
    replay,
)
from gridlock.errors import (
    EndpointMismatch,
    LedgerMismatch,
    MultiEnd,
    ScriptError,
    ScriptSyntaxError,
    UndeclaredComponent,
    UnknownMove,
)


def test_two_move_script():
    s = parse_script("start K1 tb=-1 r=0\nR2 K1\nR3 K1\nend K1 tb=-1 r=0")
    assert [m.kind for m in s.moves] == ["R2", "R3"]
    assert euler_characteristic(s) == 0
    assert check_concordance(s).passed


def test_saddle_merge_changes_components():
    s = parse_script("start K1 tb=-1 r=0 K2 tb=-1 r=0\nSaddle K1 K2 -> K3 tb=-1 r=0\nend K3 tb=-1 r=0")
    assert s.moves[0].delta_components == -1
    split = parse_script("start K tb=-1 r=0\nSaddle K -> A tb=-1 r=0 B tb=-1 r=0\nend A tb=-1 r=0 B tb=-1 r=0")
    assert split.moves[0].delta_components == 1


def test_unknown_move_position():
    with pytest.raises(UnknownMove) as info:
        parse_script("start K1 tb=-1 r=0\n  Birht K1\nend K1 tb=-1 r=0")
    assert (info.value.line, info.value.col) == (2, 3)


@pytest.mark.parametrize("text, exc, line", [
    ("start K tb=-1 r=0\nR2 L\nend K tb=-1 r=0", UndeclaredComponent, 2),
    ("R2 K\nend K tb=-1 r=0", ScriptSyntaxError, 1),
    ("start K tb=-1\nend K tb=-1 r=0", ScriptSyntaxError, 1),
    ("start K tb=-1 r=0\nR2 K\n", ScriptSyntaxError, 3),
    ("start K tb=-1 r=0\nBirth -> U tb=-1\nend K tb=-1 r=0", ScriptSyntaxError, 2),
    ("start K tb=-1 r=0\nSaddle K -> L tb=-1 r=0\nend L tb=-1 r=0", ScriptSyntaxError, 2),
    ("start K tb=-1 r=0\nR2 K -> L tb=0 r=0\nend K tb=-1 r=0", ScriptSyntaxError, 2),
    ("start K tb=-1 r=0\nR2 K\nend K tb=-2 r=0", LedgerMismatch, 3),
    ("start K tb=-1 r=0\nend K tb=-1 r=0\nR2 K", ScriptSyntaxError, 3),
    ("start K tb=-1 r=0\nR2 K foo=1\nend K tb=-1 r=0", ScriptSyntaxError, 2),
    ("start K tb=-1 r=0\nBirth -> K tb=-1 r=0\nend K tb=-1 r=0", LedgerMismatch, 2),
    ("", ScriptSyntaxError, 1),
])
def test_errors_are_positioned(text, exc, line):
    with pytest.raises(exc) as info:
        parse_script(text)
    assert info.value.line == line
    assert isinstance(info.value, ScriptError)


def test_euler_characteristic_examples():
    disk = parse_script("start K tb=-1 r=0\nBirth -> U tb=-1 r=0\nend K tb=-1 r=0 U tb=-1 r=0")
    assert euler_characteristic(disk) == 1
    assert euler_characteristic(parse_script("start K tb=-1 r=0\nR2 K\nR3 K\nend K tb=-1 r=0")) == 0
    piece = parse_script("start K tb=-1 r=0\nBirth -> U tb=-1 r=0\nSaddle K U -> L tb=-1 r=0\nend L tb=-1 r=0")
    assert euler_characteristic(piece) == 0


def test_check_concordance_examples():
    ident = parse_script("start K tb=-1 r=0\nR1 K\nR2' K\nend K tb=-1 r=0")
    assert check_concordance(ident).passed
    birth = parse_script("start K tb=-1 r=0\nBirth -> U tb=-1 r=0\nSaddle K U -> L tb=-1 r=0\n"
                         "Birth -> V tb=-1 r=0\nend L tb=-1 r=0 V tb=-1 r=0")
    with pytest.raises(MultiEnd):
        check_concordance(birth)
    # a lone birth whose disk is dropped from the declared ends: chi = 1
    odd = MoveScript((Component("K", -1, 0),), birth.moves[:1], (Component("K", -1, 0),))
    rep = check_concordance(odd)
    assert not rep.passed and rep.chi == 1 and any("Euler" in v for v in rep.violations)
    jump = parse_script("start K tb=-1 r=0\nR1 K dtb=1\nend K tb=0 r=0")
    rep = check_concordance(jump)
    assert not rep.passed and rep.chi == 0
    assert any("tb" in v for v in rep.violations)
    spin = parse_script("start K tb=-1 r=0\nR1 K dr=2\nend K tb=-1 r=2")
    assert not check_concordance(spin).passed


def test_shipped_demo_passes():
    from importlib import resources

    text = resources.files("gridlock").joinpath("data/demo_concordance.txt").read_text()
    assert check_concordance(parse_script(text)).passed


def test_compose_examples():
    ident = parse_script("start K tb=-1 r=0\nR3 K\nend K tb=-1 r=0")
    both = compose(ident, ident)
    assert len(both.moves) == 2 and check_concordance(both).passed
    other = parse_script("start K tb=-2 r=0\nR3 K\nend K tb=-2 r=0")
    with pytest.raises(EndpointMismatch):
        compose(ident, other)


# -- generated scripts ---------------------------------------------------------

def generate(rng: random.Random, start=None, length=None):
    """A random ledger-consistent script, as text."""
    names = iter(f"C{k}" for k in range(10**6))
    if start is None:
        start = [Component(next(names), rng.randint(-5, 1), rng.randint(-2, 2)) for _ in range(rng.randint(1, 2))]
    live = {c.name: (c.tb, c.r) for c in start}
    lines = ["start " + " ".join(str(c) for c in start)]
    for _ in range(length if length is not None else rng.randint(0, 12)):
        kind = rng.choice(["R", "R", "Birth", "Saddle"])
        if kind == "R":
            op = rng.choice(sorted(live))
            mv = rng.choice(REIDEMEISTER)
            dtb, dr = (0, 0) if rng.random() < 0.7 else (rng.randint(-1, 1), rng.randint(-1, 1))
            tb, r = live[op]
            live[op] = (tb + dtb, r + dr)
            extra = (f" dtb={dtb}" if dtb else "") + (f" dr={dr}" if dr else "")
            lines.append(f"{mv} {op}{extra}")
        elif kind == "Birth":
            c = Component(f"B{rng.randrange(10**9)}", -1, 0)
            while c.name in live:
                c = Component(f"B{rng.randrange(10**9)}", -1, 0)
            live[c.name] = (c.tb, c.r)
            lines.append(f"Birth -> {c}")
        elif len(live) >= 2 and rng.random() < 0.6:
            a, b = rng.sample(sorted(live), 2)
            c = Component(f"M{rng.randrange(10**9)}", live[a][0] + live[b][0] + 1, live[a][1] + live[b][1])
            del live[a], live[b]
            live[c.name] = (c.tb, c.r)
            lines.append(f"Saddle {a} {b} -> {c}")
        else:
            a = rng.choice(sorted(live))
            tb, r = live.pop(a)
            c1 = Component(f"S{rng.randrange(10**9)}", tb - 1, r)
            c2 = Component(f"S{rng.randrange(10**9)}", -1, 0)
            live[c1.name] = (c1.tb, c1.r)
            live[c2.name] = (c2.tb, c2.r)
            lines.append(f"Saddle {a} -> {c1} {c2}")
    lines.append("end " + " ".join(f"{k} tb={v[0]} r={v[1]}" for k, v in live.items()))
    return "\n".join(lines) + "\n"


def test_thousand_generated_scripts():
    rng = random.Random(2024)
    passed = 0
    for _ in range(1000):
        text = generate(rng)
        s = parse_script(text)
        # parse -> print -> parse is a fixed point
        printed = format_script(s)
        assert parse_script(printed) == s
        assert format_script(parse_script(printed)) == printed
        # chi counts births minus saddles; components telescope
        kinds = [m.kind for m in s.moves]
        assert euler_characteristic(s) == kinds.count("Birth") - kinds.count("Saddle")
        assert len(s.start) + sum(m.delta_components for m in s.moves) == len(s.end)
        assert replay(s.start, s.moves) == replay(s.start, s.moves)
        if len(s.start) == 1 and len(s.end) == 1:
            rep = check_concordance(s)
            if rep.passed:
                passed += 1
                assert euler_characteristic(s) == 0
    assert passed > 0


@settings(max_examples=200, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_chi_additive_under_compose(seed):
    rng = random.Random(seed)
    s1 = parse_script(generate(rng))
    s2 = parse_script(generate(rng, start=list(s1.end)))
    both = compose(s1, s2)
    assert euler_characteristic(both) == euler_characteristic(s1) + euler_characteristic(s2)
    assert replay(both.start, both.moves) == {c.name: (c.tb, c.r) for c in both.end}
