"""Homing for TFSMs whose guards are all single instants ``[u,u]``.

On such machines every enabled sequence has integer timestamps, so outputs
of different inputs can collide and the region abstraction over-approximates
homing. The analysis here tracks, besides the current state, the *tail*: the
multiset of outputs still pending, with offsets relative to the last input.

A tail is a sorted tuple of ``(output, offset)`` pairs. A pair state is a
frozenset of two ``(state, tail)`` elements, or :data:`RESOLVED` once the two
runs merged or produced different outputs.
"""

from __future__ import annotations

import os
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Optional

from .core import (
    BudgetExhausted,
    ContractError,
    InternalInvariantError,
    SearchResult,
    Tfsm,
    TimedGuard,
    Transition,
    UnsupportedClassError,
    classify,
)
from .semantics import cumulative, induce_run, is_homing, timed_seq

RESOLVED = frozenset()
DEFAULT_NODE_BUDGET = 10 ** 6


def node_budget(budget=None) -> int:
    if budget is not None:
        return int(budget)
    return int(os.environ.get("TFSM_NODE_BUDGET", DEFAULT_NODE_BUDGET))


def make_tail(items=()) -> tuple:
    return tuple(sorted(((o, Fraction(d)) for o, d in items), key=lambda od: (od[1], str(od[0]))))


EMPTY_TAIL = make_tail()


def tail_text(tail) -> str:
    if not tail:
        return "{}"
    return "{" + ",".join(f"({o},{d})" for o, d in tail) + "}"


def tail_step(m: Tfsm, element, letter):
    """Apply ``(input, g)`` to ``(state, tail)``.

    Returns ``((state', tail'), emitted)`` where ``emitted`` holds the pending
    outputs that fell due before the new input (with their negative shifted
    offsets), or None when no transition admits delay ``g``.
    """
    state, tail = element
    inp, g = letter
    tr = m.step(state, inp, g)
    if tr is None:
        return None
    shifted = [(o, d - g) for o, d in tail]
    emitted = make_tail(x for x in shifted if x[1] < 0)
    kept = [x for x in shifted if x[1] >= 0]
    kept.append((tr.output, tr.delay))
    return (tr.dst, make_tail(kept)), emitted


def tail_of(m: Tfsm, s, seq) -> Optional[tuple]:
    """Outputs of the run from ``s`` due at or after the last input, rebased to it."""
    seq = timed_seq(seq)
    run = induce_run(m, s, seq)
    if run is None:
        return None
    now = seq[-1][1] if seq else Fraction(0)
    return make_tail((st.output, st.tau - now) for st in run.steps if st.tau >= now)


def make_pair(a, b) -> frozenset:
    if a[0] == b[0]:
        raise ContractError(f"pair elements must have distinct states: {a!r}, {b!r}")
    return frozenset((a, b))


def pair_text(pair) -> str:
    if pair is None:
        return "undefined"
    if not pair:
        return "{}"
    a, b = sorted(pair, key=str)
    return "{" + f"({a[0]},{tail_text(a[1])}),({b[0]},{tail_text(b[1])})" + "}"


def delta(m: Tfsm, pair, letter):
    """Advance a pair state by ``(input, g)``.

    None if either side is undefined; :data:`RESOLVED` if the two runs merge,
    emit different outputs on this step, or were already resolved.
    """
    if not pair:
        return RESOLVED
    a, b = tuple(pair)
    sa, sb = tail_step(m, a, letter), tail_step(m, b, letter)
    if sa is None or sb is None:
        return None
    (na, ea), (nb, eb) = sa, sb
    if na[0] == nb[0] or ea != eb:
        return RESOLVED
    return frozenset((na, nb))


def letters(m: Tfsm) -> list:
    """All ``(input, g)`` letters of a point-interval machine, inputs in declaration order."""
    out = []
    for i in m.inputs:
        for g in sorted({g.lo for g in m.guards_of(i)}):
            out.append((i, g))
    return out


def _require_point(m: Tfsm):
    report = classify(m)
    if not report.deterministic:
        raise UnsupportedClassError(f"{m.name}: machine is not deterministic")
    if not report.point_interval:
        raise UnsupportedClassError(f"{m.name}: machine has guards that are not points")
    return report


def initial_pairs(m: Tfsm) -> frozenset:
    return frozenset(make_pair((a, EMPTY_TAIL), (b, EMPTY_TAIL)) for a, b in combinations(m.states, 2))


def pairwise_step(m: Tfsm, node, letter):
    """Transition of the pairwise automaton, tracking current states too.

    ``node`` is ``(pairs, states)``: the surviving pair states and the set of
    current states of all runs, so definedness is checked at every state even
    after its pairs were resolved.
    """
    pairs, states = node
    inp, g = letter
    nxt_states = set()
    for s in states:
        tr = m.step(s, inp, g)
        if tr is None:
            return None
        nxt_states.add(tr.dst)
    out = set()
    for p in pairs:
        q = delta(m, p, letter)
        if q is None:
            raise InternalInvariantError("pair undefined while all current states are defined")
        if q:
            out.add(q)
    return frozenset(out), frozenset(nxt_states)


def _accepting(pairs) -> bool:
    for p in pairs:
        a, b = tuple(p)
        if a[1] == b[1]:
            return False
    return True


def pairwise_search(m: Tfsm, budget=None) -> SearchResult:
    """Breadth-first search of the pairwise automaton for a homing word."""
    _require_point(m)
    budget = node_budget(budget)
    root = (initial_pairs(m), frozenset(m.states))
    if _accepting(root[0]):
        return SearchResult((), 1, 0)
    alphabet = letters(m)
    parent = {root: None}
    queue = deque([(root, 0)])
    nodes = 1
    depth = 0
    while queue:
        node, level = queue.popleft()
        for letter in alphabet:
            child = pairwise_step(m, node, letter)
            if child is None or child in parent:
                continue
            parent[child] = (node, letter)
            nodes += 1
            depth = max(depth, level + 1)
            if _accepting(child[0]):
                word = []
                cur = child
                while parent[cur] is not None:
                    cur, lt = parent[cur]
                    word.append(lt)
                seq = cumulative((i, Fraction(g)) for i, g in reversed(word))
                return SearchResult(seq, nodes, level + 1)
            if nodes >= budget:
                raise BudgetExhausted(nodes)
            queue.append((child, level + 1))
    return SearchResult(None, nodes, depth)


def hs_exists_point(m: Tfsm, budget=None):
    """Decide whether a point-interval TFSM has a homing sequence.

    Returns ``(exists, witness)``; the witness is a shortest HS. Raises
    :class:`BudgetExhausted` if the node budget runs out first.
    """
    result = pairwise_search(m, budget)
    if result.sequence is not None and not is_homing(m, result.sequence):
        raise InternalInvariantError(f"{m.name}: pairwise witness {result.sequence} is not homing")
    return result.exists, result.sequence


def tail_block_successor(m: Tfsm, label, letter):
    """Successor of a tree label whose blocks hold ``(state, tail)`` elements.

    Within a block, elements are regrouped by the outputs that fall due on
    this step. None if some element is undefined.
    """
    out = set()
    for block in label:
        by_emitted = {}
        for element in block:
            r = tail_step(m, element, letter)
            if r is None:
                return None
            nxt, emitted = r
            by_emitted.setdefault(emitted, set()).add(nxt)
        out.update(frozenset(v) for v in by_emitted.values())
    return frozenset(out)


def _block_resolved(block) -> bool:
    # equal tails mean equal future outputs, so they must agree on the state
    state_of = {}
    for s, tail in block:
        if state_of.setdefault(tail, s) != s:
            return False
    return True


def _label_states(label) -> frozenset:
    return frozenset(s for block in label for s, _ in block)


def _open_blocks(label) -> frozenset:
    return frozenset(b for b in label if len({s for s, _ in b}) > 1)


def tail_tree_search(m: Tfsm, budget=None) -> SearchResult:
    """Truncated successor tree over ``(state, tail)`` labels.

    A node is terminal when every block is resolved. A node is pruned when an
    earlier node's unresolved blocks all appear in it and its states cover the
    earlier node's states.
    """
    _require_point(m)
    budget = node_budget(budget)
    root = frozenset({frozenset((s, EMPTY_TAIL) for s in m.states)})
    if all(_block_resolved(b) for b in root):
        return SearchResult((), 1, 0)
    alphabet = letters(m)
    seen = [(_open_blocks(root), _label_states(root))]
    frontier = [(root, ())]
    nodes = 1
    depth = 0
    while frontier:
        depth += 1
        nxt = []
        for label, path in frontier:
            for letter in alphabet:
                child = tail_block_successor(m, label, letter)
                if child is None:
                    continue
                nodes += 1
                if all(_block_resolved(b) for b in child):
                    seq = cumulative((i, Fraction(g)) for i, g in path + (letter,))
                    return SearchResult(seq, nodes, depth)
                if nodes >= budget:
                    raise BudgetExhausted(nodes)
                blocks, states = set(child), _label_states(child)
                if any(rb <= blocks and rs <= states for rb, rs in seen):
                    continue
                seen.append((_open_blocks(child), states))
                nxt.append((child, path + (letter,)))
        frontier = nxt
    return SearchResult(None, nodes, depth)


def point_search(m: Tfsm, budget=None) -> SearchResult:
    report = _require_point(m)
    if report.weakly_complete:
        result = tail_tree_search(m, budget)
    else:
        result = pairwise_search(m, budget)
    if result.sequence is not None and not is_homing(m, result.sequence):
        raise InternalInvariantError(f"{m.name}: derived HS {result.sequence} is not homing")
    return result


def derive_hs_point(m: Tfsm, budget=None):
    """A shortest homing sequence of a point-interval TFSM, or None."""
    return point_search(m, budget).sequence


def gen_bn(n: int) -> Tfsm:
    """The cyclic machine B_n: homable through its region FSM, never in time."""
    if not isinstance(n, int) or n < 4:
        raise ValueError(f"B_n needs n >= 4, got {n!r}")
    states = [f"s{k}" for k in range(n)]
    g = TimedGuard.at(1)
    delays = [2] * (n - 2) + [3, 1]
    trans = [Transition(states[k], "i1", g, "o1", delays[k], states[(k + 1) % n]) for k in range(n)]
    return Tfsm(f"B{n}", states, ["i1"], ["o1"], trans)


@dataclass(frozen=True)
class Pfa:
    """Deterministic, possibly partial automaton: ``transitions[(q, a)] = q'``."""

    name: str
    states: tuple
    letters: tuple
    transitions: dict = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "states", tuple(self.states))
        object.__setattr__(self, "letters", tuple(self.letters))
        object.__setattr__(self, "transitions", dict(self.transitions))
        if not self.states:
            raise ContractError("a PFA needs at least one state")
        states, letters_ = set(self.states), set(self.letters)
        for (q, a), r in self.transitions.items():
            if q not in states or r not in states:
                raise ContractError(f"undeclared state in PFA transition {q}-{a}->{r}")
            if a not in letters_:
                raise ContractError(f"undeclared letter {a!r} in PFA transition")

    def __hash__(self):
        return hash((self.name, self.states, self.letters, tuple(sorted(self.transitions.items(), key=str))))

    def image(self, subset, a):
        out = set()
        for q in subset:
            r = self.transitions.get((q, a))
            if r is None:
                return None
            out.add(r)
        return frozenset(out)


def pfa_to_tfsm(a: Pfa) -> Tfsm:
    """Point-interval TFSM homable exactly when ``a`` is carefully synchronizing."""
    g = TimedGuard.at(1)
    trans = [Transition(q, x, g, "o", 1, a.transitions[(q, x)])
             for q in a.states for x in a.letters if (q, x) in a.transitions]
    return Tfsm(f"T({a.name})", a.states, a.letters, ["o"], trans)


def word_to_timed(word) -> tuple:
    """The sequence ``(a_1,1)(a_2,2)...`` associated with a PFA word."""
    return tuple((x, Fraction(k)) for k, x in enumerate(word, start=1))


def careful_sync_search(a: Pfa, max_len):
    """Shortest carefully synchronizing word by subset BFS.

    Returns ``(word, conclusive)``: ``word`` is None when none was found, and
    ``conclusive`` tells whether that answer is final (the whole reachable
    subset graph was explored) or merely cut off at ``max_len``.
    """
    start = frozenset(a.states)
    if len(start) == 1:
        return (), True
    seen = {start}
    frontier = [(start, ())]
    for _ in range(max_len):
        nxt = []
        for subset, word in frontier:
            for x in a.letters:
                img = a.image(subset, x)
                if img is None or img in seen:
                    continue
                if len(img) == 1:
                    return word + (x,), True
                seen.add(img)
                nxt.append((img, word + (x,)))
        frontier = nxt
        if not frontier:
            return None, True
    return None, not frontier


def careful_sync_brute(a: Pfa, max_len):
    return careful_sync_search(a, max_len)[0]
