"""Region FSM abstraction of a TFSM.

Each input's guards are cut at every guard boundary, giving a finite set of
refined intervals. The region FSM reads ``(input, interval)`` pairs and
writes ``(output, delay)`` pairs, forgetting time altogether. Timed sequences
map to abstract words with :func:`project`; abstract words map back to
non-integer timed sequences with :func:`lift`.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .core import (
    ContractError,
    Fsm,
    InternalInvariantError,
    SearchResult,
    Tfsm,
    TimedGuard,
    UnsupportedClassError,
    classify,
    guard_contains,
)
from .fsm_analysis import HS, SS, check_goal, fsm_search
from .semantics import cumulative, is_homing, is_synchronizing, relative_delays, timed_seq


def _contained(inner: TimedGuard, outer: TimedGuard) -> bool:
    if outer.point:
        return inner.point and inner.lo == outer.lo
    if inner.point:
        return outer.lo <= inner.lo < outer.hi
    return outer.lo <= inner.lo and inner.hi <= outer.hi


def refine_guards(m: Tfsm, inp) -> list:
    """Refined intervals of ``inp``: consecutive guard boundary points.

    Pieces lying in a gap between guards are dropped, so every refined
    interval sits inside some guard of ``inp``. Point guards are returned
    as-is (sorted, distinct).
    """
    guards = m.guards_of(inp)
    if not guards:
        return []
    kinds = {g.point for g in guards}
    if kinds == {True}:
        return sorted(set(guards))
    if len(kinds) > 1:
        raise UnsupportedClassError(f"{m.name}: input {inp} mixes point and half-open guards")
    points = sorted({g.lo for g in guards} | {g.hi for g in guards})
    pieces = [TimedGuard(a, b) for a, b in zip(points, points[1:])]
    return [p for p in pieces if any(_contained(p, g) for g in guards)]


@dataclass(frozen=True)
class RegionFsm:
    """A region FSM together with the refinement it was built from."""

    fsm: Fsm
    refined_guards: dict
    source: Tfsm

    def classify_delay(self, inp, delay) -> Optional[TimedGuard]:
        for g in self.refined_guards.get(inp, ()):
            if guard_contains(g, delay):
                return g
        return None


def build_region_fsm(m: Tfsm) -> RegionFsm:
    if not classify(m).deterministic:
        raise UnsupportedClassError(f"{m.name}: region FSM needs a deterministic TFSM")
    refined = {i: refine_guards(m, i) for i in m.inputs}
    abstract_inputs = [(i, g) for i in m.inputs for g in refined[i]]
    out_rank = {o: k for k, o in enumerate(m.outputs)}
    abstract_outputs = sorted({(tr.output, tr.delay) for tr in m.transitions},
                              key=lambda od: (out_rank[od[0]], od[1]))
    transitions = []
    for tr in m.transitions:
        for g in refined[tr.input]:
            if _contained(g, tr.guard):
                transitions.append((tr.src, (tr.input, g), (tr.output, tr.delay), tr.dst))
    fsm = Fsm(f"R({m.name})", m.states, abstract_inputs, abstract_outputs, transitions)
    return RegionFsm(fsm, refined, m)


def project(m, seq) -> Optional[tuple]:
    """Untimed projection: classify each relative delay into its refined interval.

    ``m`` may be a TFSM or an already built :class:`RegionFsm`. Returns None
    when some delay falls outside every refined interval.
    """
    region = m if isinstance(m, RegionFsm) else build_region_fsm(m)
    seq = timed_seq(seq)
    word = []
    for (inp, _), delay in zip(seq, relative_delays(seq)):
        g = region.classify_delay(inp, delay)
        if g is None:
            return None
        word.append((inp, g))
    return tuple(word)


def _check_word(m: Tfsm, word):
    refined = {}
    for inp, g in word:
        if inp not in refined:
            if inp not in m.inputs:
                raise ContractError(f"unknown input {inp!r} for machine {m.name}")
            refined[inp] = refine_guards(m, inp)
        if g not in refined[inp]:
            raise ContractError(f"{g} is not a refined interval of input {inp}")


def _realize(word, theta) -> tuple:
    # point intervals are met exactly, half-open ones just right of their left end
    return cumulative((inp, Fraction(g.lo) if g.point else g.lo + theta) for inp, g in word)


def lift(m: Tfsm, word) -> tuple:
    """A non-integer timed sequence whose projection is ``word``.

    Relative delays are ``left endpoint + 1/(n+1)`` for a word of length n.
    """
    if not classify(m).half_open_only:
        raise UnsupportedClassError(f"{m.name}: lifting needs half-open guards only")
    word = tuple(word)
    _check_word(m, word)
    return _realize(word, Fraction(1, len(word) + 1))


def region_search(m: Tfsm, goal) -> SearchResult:
    goal = check_goal(goal)
    report = classify(m)
    if not report.deterministic:
        raise UnsupportedClassError(f"{m.name}: machine is not deterministic")
    if not report.weakly_complete:
        raise UnsupportedClassError(f"{m.name}: machine is not weakly-complete")
    if goal == HS and not report.half_open_only:
        raise UnsupportedClassError(f"{m.name}: homing via the region FSM needs half-open guards only")
    region = build_region_fsm(m)
    result = fsm_search(region.fsm, goal)
    if result.sequence is None:
        return result
    seq = _realize(result.sequence, Fraction(1, len(result.sequence) + 1))
    ok = is_homing(m, seq) if goal == HS else is_synchronizing(m, seq)
    if not ok:
        raise InternalInvariantError(f"{m.name}: lifted region {goal} {seq} failed verification")
    return SearchResult(seq, result.nodes, result.depth)


def derive_via_region(m: Tfsm, goal):
    """HS or SS of ``m`` obtained through its region FSM, or None if none exists."""
    return region_search(m, goal).sequence


def word_text(word) -> str:
    return " ".join(f"({i},{g})" for i, g in word)


__all__ = [
    "RegionFsm", "refine_guards", "build_region_fsm", "project", "lift",
    "derive_via_region", "region_search", "HS", "SS",
]
