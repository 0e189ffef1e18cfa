"""Execution semantics: runs, timed output responses and the HS/SS predicates.

A timed input sequence is a tuple of ``(input, timestamp)`` pairs with
non-decreasing absolute timestamps. The guard of the k-th transition is
checked against the relative delay ``t_k - t_{k-1}`` (with ``t_0 = 0``), and
the output of that transition appears at ``t_k + delay``.

An undefined result (the sequence leaves the domain of a state) is
represented by ``None``.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Optional

from .core import ContractError, Tfsm, as_time


def timed_seq(items) -> tuple:
    """Normalize an iterable of ``(input, time)`` pairs into a timed input sequence.

    Times may be ints, Fractions or strings like ``"21/10"``. Raises
    :class:`ContractError` if the timestamps decrease.
    """
    out = []
    prev = Fraction(0)
    for item in items:
        try:
            inp, t = item
        except (TypeError, ValueError) as exc:
            raise ContractError(f"expected (input, time) pair, got {item!r}") from exc
        t = as_time(t)
        if t < prev:
            raise ContractError(f"timestamps must be non-decreasing: {t} after {prev}")
        out.append((inp, t))
        prev = t
    return tuple(out)


def relative_delays(seq) -> tuple:
    """Delays between consecutive inputs, the first measured from time 0."""
    prev = Fraction(0)
    out = []
    for _, t in seq:
        out.append(t - prev)
        prev = t
    return tuple(out)


def cumulative(steps) -> tuple:
    """Inverse of :func:`relative_delays`: ``(input, delay)`` pairs to a timed sequence."""
    total = Fraction(0)
    out = []
    for inp, d in steps:
        total += d
        out.append((inp, total))
    return tuple(out)


@dataclass(frozen=True)
class Step:
    input: object
    t: Fraction
    src: object
    dst: object
    output: object
    tau: Fraction


@dataclass(frozen=True)
class Run:
    start: object
    steps: tuple

    @property
    def final(self):
        return self.steps[-1].dst if self.steps else self.start


def _check_inputs(m: Tfsm, seq):
    declared = set(m.inputs)
    for inp, _ in seq:
        if inp not in declared:
            raise ContractError(f"unknown input {inp!r} for machine {m.name}")


def induce_run(m: Tfsm, s, seq) -> Optional[Run]:
    """The run induced by ``seq`` from state ``s``, or None if it leaves the domain."""
    seq = timed_seq(seq)
    _check_inputs(m, seq)
    if s not in m.states:
        raise ContractError(f"unknown state {s!r} for machine {m.name}")
    steps = []
    state = s
    prev = Fraction(0)
    for inp, t in seq:
        tr = m.step(state, inp, t - prev)
        if tr is None:
            return None
        steps.append(Step(inp, t, state, tr.dst, tr.output, t + tr.delay))
        state = tr.dst
        prev = t
    return Run(s, tuple(steps))


def next_state_seq(m: Tfsm, s, seq):
    run = induce_run(m, s, seq)
    return None if run is None else run.final


def group_outputs(m: Tfsm, timed_outputs) -> tuple:
    """Canonical form of a multiset of ``(output, tau)`` pairs.

    The result is a tuple of ``(tau, outputs)`` groups with strictly
    increasing ``tau``; ``outputs`` is sorted by declaration order. Two runs
    admit the same set of output interleavings iff their groupings are equal.
    """
    rank = {o: k for k, o in enumerate(m.outputs)}
    by_time = {}
    for out, tau in timed_outputs:
        by_time.setdefault(tau, []).append(out)
    return tuple(
        (tau, tuple(sorted(outs, key=rank.__getitem__))) for tau, outs in sorted(by_time.items())
    )


def timed_out(m: Tfsm, s, seq) -> Optional[tuple]:
    """Timed output response of ``m`` at ``s`` to ``seq`` in canonical grouped form."""
    run = induce_run(m, s, seq)
    if run is None:
        return None
    return group_outputs(m, ((st.output, st.tau) for st in run.steps))


def output_word_text(word) -> str:
    if word is None:
        return "undefined"
    return " ".join("{" + ",".join(map(str, outs)) + f"}}@{tau}" for tau, outs in word)


def is_non_integer(seq) -> bool:
    """True iff no two timestamps differ by a natural number (0 included)."""
    times = [as_time(t) for _, t in seq]
    return all((a - b).denominator != 1 for a, b in combinations(times, 2))


def is_merging(m: Tfsm, s1, s2, seq) -> bool:
    a = next_state_seq(m, s1, seq)
    return a is not None and a == next_state_seq(m, s2, seq)


def is_synchronizing(m: Tfsm, seq) -> bool:
    finals = {next_state_seq(m, s, seq) for s in m.states}
    return len(finals) == 1 and None not in finals


def is_homing(m: Tfsm, seq) -> bool:
    """True iff ``seq`` is defined at every state and equal timed output
    responses always come with equal final states."""
    seq = timed_seq(seq)
    final_by_word = {}
    for s in m.states:
        run = induce_run(m, s, seq)
        if run is None:
            return False
        word = group_outputs(m, ((st.output, st.tau) for st in run.steps))
        if final_by_word.setdefault(word, run.final) != run.final:
            return False
    return True


def sequences_equivalent(m: Tfsm, seq1, seq2) -> bool:
    """True iff both sequences take the same transitions from every state.

    The sequences must have the same length and the same inputs.
    """
    seq1, seq2 = timed_seq(seq1), timed_seq(seq2)
    if [i for i, _ in seq1] != [i for i, _ in seq2]:
        raise ContractError("sequences differ in length or input projection")
    _check_inputs(m, seq1)
    d1, d2 = relative_delays(seq1), relative_delays(seq2)
    for s in m.states:
        state = s
        for (inp, _), a, b in zip(seq1, d1, d2):
            ta, tb = m.step(state, inp, a), m.step(state, inp, b)
            if ta is not tb:
                return False
            if ta is None:
                break
            state = ta.dst
    return True


def homing_classes(m: Tfsm, seq) -> dict:
    """Group start states by their timed output response.

    Maps each response to ``{start: final}``; None if some state is undefined.
    """
    classes = {}
    for s in m.states:
        run = induce_run(m, s, seq)
        if run is None:
            return None
        word = group_outputs(m, ((st.output, st.tau) for st in run.steps))
        classes.setdefault(word, {})[s] = run.final
    return classes


def output_counter(word) -> Counter:
    """Flatten a grouped output word back into a multiset of ``(output, tau)``."""
    return Counter((o, tau) for tau, outs in word for o in outs)
