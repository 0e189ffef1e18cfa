"""Truncated successor tree for shortest HS/SS of half-open-guard TFSMs.

Edges apply input ``i`` after a relative delay ``k + theta`` for every
integer ``k`` in ``[U_i, V_i)``. With ``theta <= 1/|S|^2`` every path of
length at most ``|S|^2`` spells a non-integer timed sequence, so one
representative per integer slot covers all behaviours.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Optional

from .core import InternalInvariantError, SearchResult, Tfsm, UnsupportedClassError, classify
from .fsm_analysis import HS, SS, check_goal, nontrivial
from .semantics import cumulative, is_homing, is_synchronizing


def block_successor(m: Tfsm, blocks, timed_input) -> Optional[frozenset]:
    """Successor of a homing-tree label under ``(input, relative delay)``.

    States of a block are regrouped by the timed output they emit; blocks
    collapse when their states merge. None if some state has no enabled
    transition.
    """
    inp, t = timed_input
    t = Fraction(t)
    out = set()
    for block in blocks:
        by_output = {}
        for s in block:
            tr = m.step(s, inp, t)
            if tr is None:
                return None
            by_output.setdefault((tr.output, t + tr.delay), set()).add(tr.dst)
        out.update(frozenset(v) for v in by_output.values())
    return frozenset(out)


def state_successor(m: Tfsm, states, timed_input) -> Optional[frozenset]:
    """Image of a set of states, ignoring outputs; None if some state is undefined."""
    inp, t = timed_input
    out = set()
    for s in states:
        tr = m.step(s, inp, t)
        if tr is None:
            return None
        out.add(tr.dst)
    return frozenset(out)


def default_theta(m: Tfsm) -> Fraction:
    n = len(m.states)
    return Fraction(1, n * n + 1)


def edges(m: Tfsm, theta) -> list:
    bounds = classify(m).per_input_bounds
    return [(i, k + theta) for i in m.inputs if i in bounds for k in range(*bounds[i])]


def _require_class(m: Tfsm):
    report = classify(m)
    problems = [name for name, ok in (("deterministic", report.deterministic),
                                      ("weakly-complete", report.weakly_complete),
                                      ("half-open guards only", report.half_open_only)) if not ok]
    if problems:
        raise UnsupportedClassError(f"{m.name}: successor tree needs a machine that is " + ", ".join(problems))


def shortest_search(m: Tfsm, goal, theta=None) -> SearchResult:
    goal = check_goal(goal)
    _require_class(m)
    n = len(m.states)
    theta = default_theta(m) if theta is None else Fraction(theta)
    if not 0 < theta <= Fraction(1, n * n):
        raise ValueError(f"theta must lie in (0, 1/{n * n}], got {theta}")
    cap = n * n if goal == HS else n ** 3

    if goal == HS:
        root = frozenset({frozenset(m.states)})

        def done(label):
            return not nontrivial(label)

        key = nontrivial

        def succ(label, e):
            return block_successor(m, label, e)
    else:
        root = frozenset(m.states)

        def done(label):
            return len(label) == 1

        def key(label):
            return label

        def succ(label, e):
            return state_successor(m, label, e)

    nodes = 1
    if done(root):
        return SearchResult((), nodes, 0)
    letters = edges(m, theta)
    seen = [key(root)]
    frontier = [(root, ())]
    depth = 0
    found = None
    while frontier and found is None:
        if depth >= cap:
            raise InternalInvariantError(f"{m.name}: successor tree exceeded depth cap {cap}")
        depth += 1
        nxt = []
        for label, path in frontier:
            for e in letters:
                child = succ(label, e)
                if child is None:
                    continue
                nodes += 1
                if done(child):
                    found = path + (e,)
                    break
                k = key(child)
                if any(r <= k for r in seen):
                    continue
                seen.append(k)
                nxt.append((child, path + (e,)))
            if found is not None:
                break
        frontier = nxt
    if found is None:
        return SearchResult(None, nodes, depth)
    seq = cumulative(found)
    ok = is_homing(m, seq) if goal == HS else is_synchronizing(m, seq)
    if not ok:
        raise InternalInvariantError(f"{m.name}: derived {goal} {seq} failed verification")
    return SearchResult(seq, nodes, depth)


def derive_shortest(m: Tfsm, goal, theta=None):
    """A shortest homing or synchronizing timed sequence, or None if none exists.

    ``m`` must be deterministic, weakly-complete and use half-open guards only.
    """
    return shortest_search(m, goal, theta).sequence


__all__ = ["block_successor", "state_successor", "derive_shortest", "shortest_search",
           "default_theta", "HS", "SS"]
