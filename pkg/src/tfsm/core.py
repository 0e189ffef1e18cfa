"""Machine data model: exact time values, timed guards, TFSMs and plain FSMs.

All time values are :class:`fractions.Fraction`; floats are rejected so that
output-timestamp collisions are decided exactly.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from itertools import combinations
from numbers import Rational
from typing import Hashable, Optional


class TfsmError(Exception):
    """Base class for errors raised by this package."""


class StructuralError(TfsmError, ValueError):
    """A machine references an undeclared id or carries an invalid field."""


class UnsupportedClassError(TfsmError):
    """The machine is outside the class an algorithm is defined for."""


class ContractError(TfsmError, ValueError):
    """A caller broke an operation precondition (bad sequence, unknown symbol...)."""


class InternalInvariantError(TfsmError, AssertionError):
    """An algorithm produced a result that failed its own re-verification."""


class BudgetExhausted(TfsmError):
    """A budgeted search ran out of nodes before reaching a verdict."""

    def __init__(self, nodes):
        super().__init__(f"node budget exhausted after {nodes} nodes")
        self.nodes = nodes


def as_time(value) -> Fraction:
    """Convert ``value`` to an exact non-negative time value.

    Accepts ints, Fractions and strings such as ``"21/10"`` or ``"2.1"``
    (decimal strings are converted exactly). Floats are refused.
    """
    if isinstance(value, float):
        raise ContractError(f"floating point time value {value!r}; use Fraction or a string")
    if isinstance(value, (int, Rational)):
        t = Fraction(value)
    elif isinstance(value, str):
        try:
            t = Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise ContractError(f"bad time value {value!r}") from exc
    else:
        raise ContractError(f"bad time value {value!r}")
    if t < 0:
        raise ContractError(f"negative time value {value!r}")
    return t


@dataclass(frozen=True, order=True)
class TimedGuard:
    """Enabling interval for an input, relative to the previous input.

    ``[lo, hi)`` when ``point`` is false, the single instant ``[lo, lo]``
    otherwise (then ``hi == lo``).
    """

    lo: int
    hi: int
    point: bool = False

    def __post_init__(self):
        if not isinstance(self.lo, int) or not isinstance(self.hi, int):
            raise StructuralError(f"guard bounds must be integers, got {self.lo!r}, {self.hi!r}")
        if self.point:
            if self.lo != self.hi or self.lo < 1:
                raise StructuralError(f"point guard needs lo == hi >= 1, got [{self.lo},{self.hi}]")
        elif not 0 <= self.lo < self.hi:
            raise StructuralError(f"guard [{self.lo},{self.hi}) needs 0 <= lo < hi")

    @classmethod
    def half_open(cls, lo, hi):
        return cls(lo, hi, False)

    @classmethod
    def at(cls, u):
        return cls(u, u, True)

    def __contains__(self, t):
        return guard_contains(self, t)

    def atoms(self) -> frozenset:
        """The guard as a set of unit atoms, see :func:`atoms_of`."""
        if self.point:
            return frozenset({(self.lo, 0)})
        return frozenset((k, part) for k in range(self.lo, self.hi) for part in (0, 1))

    def __str__(self):
        if self.point:
            return f"[{self.lo},{self.lo}]"
        return f"[{self.lo},{self.hi})"


def guard_contains(g: TimedGuard, t) -> bool:
    t = Fraction(t)
    if g.point:
        return t == g.lo
    return g.lo <= t < g.hi


def atoms_of(guards) -> frozenset:
    """Canonical point set of a union of integer-bounded guards.

    Atom ``(k, 0)`` is the instant ``k``; atom ``(k, 1)`` is the open unit
    interval ``(k, k+1)``. Two unions are equal as point sets iff their atom
    sets are equal, so adjacent pieces such as ``[1,3)`` and ``[3,4)`` need no
    explicit merging.
    """
    out = set()
    for g in guards:
        out |= g.atoms()
    return frozenset(out)


def atoms_to_text(atoms) -> str:
    """Render an atom set as a union of intervals, e.g. ``[1,4) u {6}``."""
    pieces = []
    run_start = None
    prev = None
    for atom in sorted(atoms):
        pos = atom[0] * 2 + atom[1]
        if run_start is None:
            run_start = pos
        elif pos != prev + 1:
            pieces.append((run_start, prev))
            run_start = pos
        prev = pos
    if run_start is not None:
        pieces.append((run_start, prev))
    parts = []
    for a, b in pieces:
        left = f"[{a // 2}" if a % 2 == 0 else f"({a // 2}"
        right = f"{b // 2}]" if b % 2 == 0 else f"{b // 2 + 1})"
        parts.append("{%d}" % (a // 2) if a == b and a % 2 == 0 else f"{left},{right}")
    return " u ".join(parts) if parts else "{}"


@dataclass(frozen=True)
class Transition:
    src: Hashable
    input: Hashable
    guard: TimedGuard
    output: Hashable
    delay: int
    dst: Hashable

    def __post_init__(self):
        if not isinstance(self.delay, int) or self.delay < 1:
            raise StructuralError(f"delay must be a positive integer, got {self.delay!r}")

    def __str__(self):
        return f"{self.src} -{self.input},{self.guard}/{self.output},{self.delay}-> {self.dst}"


def _check_declared(kind, ident, declared, where):
    if ident not in declared:
        raise StructuralError(f"undeclared {kind} {ident!r} in {where}")


def _check_unique(kind, ids):
    seen = set()
    for x in ids:
        if x in seen:
            raise StructuralError(f"duplicate {kind} {x!r}")
        seen.add(x)


@dataclass(frozen=True)
class Tfsm:
    """A TFSM with output delays ``(S, I, O, G, D, h_S)``.

    States, inputs and outputs are kept in declaration order; every search in
    this package iterates in that order, which makes results reproducible.
    """

    name: str
    states: tuple
    inputs: tuple
    outputs: tuple
    transitions: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "states", tuple(self.states))
        object.__setattr__(self, "inputs", tuple(self.inputs))
        object.__setattr__(self, "outputs", tuple(self.outputs))
        object.__setattr__(self, "transitions", tuple(self.transitions))
        if not self.states:
            raise StructuralError("a machine needs at least one state")
        _check_unique("state", self.states)
        _check_unique("input", self.inputs)
        _check_unique("output", self.outputs)
        states, inputs, outputs = set(self.states), set(self.inputs), set(self.outputs)
        for tr in self.transitions:
            if not isinstance(tr, Transition):
                raise StructuralError(f"not a Transition: {tr!r}")
            _check_declared("state", tr.src, states, tr)
            _check_declared("input", tr.input, inputs, tr)
            _check_declared("output", tr.output, outputs, tr)
            _check_declared("state", tr.dst, states, tr)

    @cached_property
    def _table(self):
        table = {}
        for tr in self.transitions:
            table.setdefault((tr.src, tr.input), []).append(tr)
        return {k: tuple(v) for k, v in table.items()}

    def transitions_from(self, state, inp) -> tuple:
        return self._table.get((state, inp), ())

    def step(self, state, inp, delay) -> Optional[Transition]:
        """The transition taken at ``state`` on ``inp`` arriving ``delay`` after
        the previous input, or None when no guard admits it."""
        for tr in self._table.get((state, inp), ()):
            if guard_contains(tr.guard, delay):
                return tr
        return None

    def guards_of(self, inp) -> list:
        """Distinct guards used by ``inp``, in first-occurrence order."""
        seen = {}
        for tr in self.transitions:
            if tr.input == inp:
                seen.setdefault(tr.guard, None)
        return list(seen)

    @property
    def delays(self) -> frozenset:
        return frozenset(tr.delay for tr in self.transitions)

    def __str__(self):
        return f"Tfsm({self.name}: {len(self.states)} states, {len(self.transitions)} transitions)"


@dataclass(frozen=True)
class ClassReport:
    deterministic: bool
    weakly_complete: bool
    strongly_complete: bool
    point_interval: bool
    half_open_only: bool
    per_input_bounds: dict = field(default_factory=dict)
    domains: dict = field(default_factory=dict)

    def as_dict(self):
        return {
            "deterministic": self.deterministic,
            "weakly_complete": self.weakly_complete,
            "strongly_complete": self.strongly_complete,
            "point_interval": self.point_interval,
            "half_open_only": self.half_open_only,
            "per_input_bounds": {str(i): list(b) for i, b in self.per_input_bounds.items()},
            "domains": {str(i): d for i, d in self.domains.items()},
        }


def classify(m: Tfsm) -> ClassReport:
    """Structural classification of a TFSM.

    ``per_input_bounds`` maps each input with transitions to ``(U_i, V_i)``,
    the least left and greatest right guard boundary. For point guards the
    right boundary is the point itself.
    """
    deterministic = True
    for trs in m._table.values():
        for a, b in combinations(trs, 2):
            if a.guard.atoms() & b.guard.atoms():
                deterministic = False

    weakly_complete = True
    domains = {}
    for inp in m.inputs:
        per_state = {s: atoms_of(tr.guard for tr in m.transitions_from(s, inp)) for s in m.states}
        distinct = set(per_state.values())
        if len(distinct) > 1:
            weakly_complete = False
        domains[inp] = atoms_to_text(per_state[m.states[0]]) if len(distinct) == 1 else None

    bounds = {}
    for inp in m.inputs:
        guards = m.guards_of(inp)
        if guards:
            bounds[inp] = (min(g.lo for g in guards), max(g.hi for g in guards))

    kinds = {tr.guard.point for tr in m.transitions}
    return ClassReport(
        deterministic=deterministic,
        weakly_complete=weakly_complete,
        # integer-bounded guards never cover [0, inf)
        strongly_complete=False,
        point_interval=kinds <= {True},
        half_open_only=kinds <= {False},
        per_input_bounds=bounds,
        domains=domains,
    )


@dataclass(frozen=True)
class Fsm:
    """An untimed FSM ``(S, I, O, h_S)`` with transitions ``(src, input, output, dst)``.

    Inputs and outputs may be any hashable value; region FSMs use
    ``(input, guard)`` and ``(output, delay)`` pairs.
    """

    name: str
    states: tuple
    inputs: tuple
    outputs: tuple
    transitions: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "states", tuple(self.states))
        object.__setattr__(self, "inputs", tuple(self.inputs))
        object.__setattr__(self, "outputs", tuple(self.outputs))
        object.__setattr__(self, "transitions", tuple(tuple(t) for t in self.transitions))
        if not self.states:
            raise StructuralError("a machine needs at least one state")
        _check_unique("state", self.states)
        _check_unique("input", self.inputs)
        _check_unique("output", self.outputs)
        states, inputs, outputs = set(self.states), set(self.inputs), set(self.outputs)
        for tr in self.transitions:
            if len(tr) != 4:
                raise StructuralError(f"FSM transition needs 4 fields: {tr!r}")
            src, inp, out, dst = tr
            _check_declared("state", src, states, tr)
            _check_declared("input", inp, inputs, tr)
            _check_declared("output", out, outputs, tr)
            _check_declared("state", dst, states, tr)

    @cached_property
    def _table(self):
        table = {}
        for src, inp, out, dst in self.transitions:
            table.setdefault((src, inp), []).append((out, dst))
        return {k: tuple(v) for k, v in table.items()}

    def successors(self, state, inp) -> tuple:
        return self._table.get((state, inp), ())

    def step(self, state, inp):
        """``(output, next_state)`` for a deterministic machine, None if undefined."""
        succ = self._table.get((state, inp), ())
        return succ[0] if succ else None


@dataclass(frozen=True)
class FsmReport:
    deterministic: bool
    observable: bool
    complete: bool


def fsm_classify(m: Fsm) -> FsmReport:
    deterministic = observable = complete = True
    for s in m.states:
        for i in m.inputs:
            succ = set(m.successors(s, i))
            if not succ:
                complete = False
            if len(succ) > 1:
                deterministic = False
            by_out = {}
            for out, dst in succ:
                by_out.setdefault(out, set()).add(dst)
            if any(len(d) > 1 for d in by_out.values()):
                observable = False
    return FsmReport(deterministic, observable, complete)


@dataclass
class SearchResult:
    """Outcome of a derivation: the sequence (None when none exists) plus
    search statistics."""

    sequence: Optional[tuple]
    nodes: int = 0
    depth: int = 0

    @property
    def exists(self):
        return self.sequence is not None
