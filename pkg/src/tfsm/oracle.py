"""Brute-force reference search for homing and synchronizing sequences.

Deliberately naive: it enumerates timed sequences over a fixed grid of
relative delays and asks the semantics predicates about each one. It shares
nothing with the derivation algorithms, which is the point.
"""

from __future__ import annotations

from fractions import Fraction

from .core import ContractError, Tfsm
from .semantics import is_homing, is_synchronizing, next_state_seq, sequences_equivalent


def delay_grid(m: Tfsm, max_len) -> list:
    """Candidate ``(input, relative delay)`` letters, one per behaviour.

    Half-open guards contribute ``k + 1/(max_len+1)`` for every integer k
    between the least left and greatest right boundary of the input's guards;
    point guards contribute the point itself. Letters that behave identically
    at every state are kept once.
    """
    theta = Fraction(1, max_len + 1)
    letters = []
    for inp in m.inputs:
        guards = [tr.guard for tr in m.transitions if tr.input == inp]
        if not guards:
            continue
        candidates = set()
        for g in guards:
            if g.point:
                candidates.add(Fraction(g.lo))
        half_open = [g for g in guards if not g.point]
        if half_open:
            lo = min(g.lo for g in half_open)
            hi = max(g.hi for g in half_open)
            candidates.update(k + theta for k in range(lo, hi))
        for d in sorted(candidates):
            cand = ((inp, d),)
            if all(next_state_seq(m, s, cand) is None for s in m.states):
                continue
            if not any(sequences_equivalent(m, cand, ((i, e),)) for i, e in letters if i == inp):
                letters.append((inp, d))
    return letters


def brute_force_derive(m: Tfsm, goal, max_len):
    """Shortest sequence of at most ``max_len`` inputs achieving ``goal``, or None."""
    goal = str(goal).lower()
    if goal not in ("hs", "ss"):
        raise ContractError(f"goal must be 'hs' or 'ss', got {goal!r}")
    check = is_homing if goal == "hs" else is_synchronizing
    if check(m, ()):
        return ()
    letters = delay_grid(m, max_len)
    level = [((), Fraction(0))]
    for _ in range(max_len):
        nxt = []
        for seq, now in level:
            for inp, d in letters:
                cand = seq + ((inp, now + d),)
                # both goals need the sequence defined at every state
                if any(next_state_seq(m, s, cand) is None for s in m.states):
                    continue
                if check(m, cand):
                    return cand
                nxt.append((cand, now + d))
        level = nxt
        if not level:
            break
    return None
