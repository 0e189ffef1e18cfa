"""Line-oriented machine description format.

::

    tfsm S1
    states s0 s1 s2
    inputs i1 i2
    outputs o1 o2 o3
    trans s0 i1 [1,3) o1 4 s1
    trans s0 i2 [1,1] o1 2 s0     # point guard

``fsm`` documents drop the guard and delay columns (``trans s0 a x s1``),
``pfa`` documents also drop the output (``trans q0 a q1``) and have no
``outputs`` line. Everything after ``#`` is a comment.
"""

from __future__ import annotations

import re
from fractions import Fraction

from .core import ContractError, Fsm, Tfsm, TimedGuard, Transition, as_time
from .point import Pfa

KINDS = ("tfsm", "fsm", "pfa")
_TOKEN = re.compile(r"\[[^\]\)]*[\]\)]|[^\s\[]+")
_GUARD = re.compile(r"\[\s*(\d+)\s*,\s*(\d+)\s*([\]\)])$")
_IDENT = re.compile(r"[A-Za-z0-9_.'\-]+$")


class ParseError(ValueError):
    """Syntax or semantic error at a 1-based ``line`` and ``column``."""

    def __init__(self, line, column, message, expected=None):
        self.line = line
        self.column = column
        self.expected = expected
        text = f"line {line}, column {column}: {message}"
        if expected:
            text += f" (expected {expected})"
        super().__init__(text)


def _tokens(line):
    body = line.split("#", 1)[0]
    return [(m.group(), m.start() + 1) for m in _TOKEN.finditer(body)]


def _ident(tok, lineno, what):
    text, col = tok
    if not _IDENT.match(text):
        raise ParseError(lineno, col, f"bad {what} {text!r}", expected=what)
    return text


def _guard(tok, lineno):
    text, col = tok
    m = _GUARD.match(text)
    if not m:
        raise ParseError(lineno, col, f"bad guard {text!r}", expected="guard '[u,v)' or '[u,u]'")
    lo, hi, close = int(m.group(1)), int(m.group(2)), m.group(3)
    if close == "]":
        if lo != hi:
            raise ParseError(lineno, col, f"closed guard {text} must be a single point [u,u]")
        if lo < 1:
            raise ParseError(lineno, col, f"point guard {text} needs u >= 1")
        return TimedGuard.at(lo)
    if lo >= hi:
        raise ParseError(lineno, col, f"guard {text} needs lo < hi")
    return TimedGuard.half_open(lo, hi)


def _delay(tok, lineno):
    text, col = tok
    if not text.isdigit() or int(text) < 1:
        raise ParseError(lineno, col, f"bad delay {text!r}", expected="positive integer delay")
    return int(text)


_ARITY = {"tfsm": 6, "fsm": 4, "pfa": 3}
_TRANS_SHAPE = {
    "tfsm": "trans SRC INPUT GUARD OUTPUT DELAY DST",
    "fsm": "trans SRC INPUT OUTPUT DST",
    "pfa": "trans SRC LETTER DST",
}


def parse(text):
    """Parse a machine description into a :class:`Tfsm`, :class:`Fsm` or :class:`Pfa`."""
    kind = name = None
    decl = {}
    trans = []
    last_line = 1
    for lineno, line in enumerate(text.splitlines(), start=1):
        last_line = lineno
        toks = _tokens(line)
        if not toks:
            continue
        head, col = toks[0]
        if kind is None:
            if head not in KINDS:
                raise ParseError(lineno, col, f"unexpected {head!r}", expected="'tfsm', 'fsm' or 'pfa' header")
            if len(toks) != 2:
                raise ParseError(lineno, col, "header needs exactly one machine name", expected=f"{head} NAME")
            kind, name = head, _ident(toks[1], lineno, "machine name")
            continue
        if head in KINDS:
            raise ParseError(lineno, col, "only one machine per document")
        if head in ("states", "inputs", "outputs"):
            if head == "outputs" and kind == "pfa":
                raise ParseError(lineno, col, "pfa documents have no outputs", expected="'states', 'inputs' or 'trans'")
            if head in decl:
                raise ParseError(lineno, col, f"duplicate '{head}' line")
            ids = [_ident(t, lineno, head[:-1]) for t in toks[1:]]
            seen = {}
            for ident, (_, c) in zip(ids, toks[1:]):
                if ident in seen:
                    raise ParseError(lineno, c, f"duplicate {head[:-1]} {ident!r}")
                seen[ident] = c
            decl[head] = ids
            continue
        if head != "trans":
            raise ParseError(lineno, col, f"unexpected {head!r}", expected="'states', 'inputs', 'outputs' or 'trans'")
        args = toks[1:]
        if len(args) != _ARITY[kind]:
            where = args[_ARITY[kind]][1] if len(args) > _ARITY[kind] else col
            raise ParseError(lineno, where, "wrong number of fields", expected=_TRANS_SHAPE[kind])
        trans.append((lineno, args))

    if kind is None:
        raise ParseError(last_line, 1, "empty document", expected="'tfsm', 'fsm' or 'pfa' header")
    need = ("states", "inputs") if kind == "pfa" else ("states", "inputs", "outputs")
    for key in need:
        if key not in decl:
            raise ParseError(last_line, 1, f"missing '{key}' line", expected=f"'{key}' declaration")

    states, inputs = decl["states"], decl["inputs"]
    outputs = decl.get("outputs", [])
    known = {"state": set(states), "input": set(inputs), "output": set(outputs)}

    def declared(tok, lineno, what):
        ident = _ident(tok, lineno, what)
        if ident not in known[what]:
            raise ParseError(lineno, tok[1], f"undeclared {what} {ident!r}")
        return ident

    if kind == "tfsm":
        built = []
        for lineno, a in trans:
            src = declared(a[0], lineno, "state")
            inp = declared(a[1], lineno, "input")
            g = _guard(a[2], lineno)
            out = declared(a[3], lineno, "output")
            d = _delay(a[4], lineno)
            dst = declared(a[5], lineno, "state")
            built.append(Transition(src, inp, g, out, d, dst))
        return Tfsm(name, states, inputs, outputs, built)
    if kind == "fsm":
        built = []
        for lineno, a in trans:
            built.append((declared(a[0], lineno, "state"), declared(a[1], lineno, "input"),
                          declared(a[2], lineno, "output"), declared(a[3], lineno, "state")))
        return Fsm(name, states, inputs, outputs, built)
    table = {}
    for lineno, a in trans:
        q, x, r = declared(a[0], lineno, "state"), declared(a[1], lineno, "input"), declared(a[2], lineno, "state")
        if (q, x) in table and table[(q, x)] != r:
            raise ParseError(lineno, a[0][1], f"pfa is not deterministic at ({q}, {x})")
        table[(q, x)] = r
    return Pfa(name, states, inputs, table)


def serialize(m) -> str:
    """Canonical text of a machine; ``parse(serialize(m)) == m``."""
    if isinstance(m, Tfsm):
        lines = [f"tfsm {m.name}", "states " + " ".join(map(str, m.states)),
                 "inputs " + " ".join(map(str, m.inputs)), "outputs " + " ".join(map(str, m.outputs))]
        lines += [f"trans {t.src} {t.input} {t.guard} {t.output} {t.delay} {t.dst}" for t in m.transitions]
    elif isinstance(m, Fsm):
        lines = [f"fsm {m.name}", "states " + " ".join(map(str, m.states)),
                 "inputs " + " ".join(map(str, m.inputs)), "outputs " + " ".join(map(str, m.outputs))]
        lines += [f"trans {s} {i} {o} {d}" for s, i, o, d in m.transitions]
    elif isinstance(m, Pfa):
        lines = [f"pfa {m.name}", "states " + " ".join(map(str, m.states)),
                 "inputs " + " ".join(map(str, m.letters))]
        lines += [f"trans {q} {x} {r}" for (q, x), r in m.transitions.items()]
    else:
        raise TypeError(f"cannot serialize {type(m).__name__}")
    return "\n".join(lines) + "\n"


def parse_seq(text) -> tuple:
    """Parse ``"i1@21/10,i2@4.2"`` into a timed input sequence.

    Decimal times are converted exactly. An empty string is the empty sequence.
    """
    items = []
    text = text.strip()
    if not text:
        return ()
    pos = 1
    for part in text.split(","):
        if "@" not in part:
            raise ParseError(1, pos, f"bad sequence item {part.strip()!r}", expected="INPUT@TIME")
        inp, t = part.split("@", 1)
        try:
            items.append((inp.strip(), as_time(t)))
        except ContractError as exc:
            raise ParseError(1, pos + len(inp) + 1, str(exc), expected="time such as 21/10 or 2.1") from None
        pos += len(part) + 1
    return tuple(items)


def parse_word(text) -> tuple:
    """Parse a comma separated untimed word ``"a,b,a"``."""
    text = text.strip()
    return tuple(x.strip() for x in text.split(",")) if text else ()


def time_text(t) -> str:
    t = Fraction(t)
    return f"{t.numerator}/{t.denominator}"


def _dot_id(x) -> str:
    return '"' + str(x).replace('"', '\\"') + '"'


def to_dot(m) -> str:
    """Graphviz rendering of a TFSM, FSM or region FSM.

    Timed edges read ``i,[u,v)/o,+d``; region FSM edges use the same notation
    for their ``(input, interval)`` and ``(output, delay)`` symbols.
    """
    from .region import RegionFsm

    if isinstance(m, RegionFsm):
        m = m.fsm
    lines = [f"digraph {_dot_id(m.name)} {{", "  rankdir=LR;"]
    for s in m.states:
        lines.append(f"  {_dot_id(s)};")
    if isinstance(m, Tfsm):
        for t in m.transitions:
            lines.append(f"  {_dot_id(t.src)} -> {_dot_id(t.dst)} [label={_dot_id(f'{t.input},{t.guard}/{t.output},+{t.delay}')}];")
    else:
        for s, i, o, d in m.transitions:
            lines.append(f"  {_dot_id(s)} -> {_dot_id(d)} [label={_dot_id(symbol_text(i) + '/' + symbol_text(o, delay=True))}];")
    lines.append("}")
    return "\n".join(lines) + "\n"


def symbol_text(x, delay=False) -> str:
    """Text of an FSM symbol; region pairs print as ``i,[u,v)`` or ``o,+d``."""
    if isinstance(x, tuple) and len(x) == 2:
        a, b = x
        return f"{a},+{b}" if delay else f"{a},{b}"
    return str(x)


def load(path):
    with open(path, encoding="utf-8") as fh:
        return parse(fh.read())


__all__ = ["ParseError", "parse", "serialize", "parse_seq", "parse_word", "to_dot", "time_text", "load"]
