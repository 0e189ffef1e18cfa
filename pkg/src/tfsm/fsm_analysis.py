"""Shortest homing and synchronizing words for deterministic complete FSMs.

Both searches are breadth-first successor trees. The homing tree labels each
node with the blocks of states still indistinguishable by the outputs seen so
far; the synchronizing tree labels each node with the set of current states.
A node is dropped when an earlier node's uncertainty is contained in its own,
since any continuation that works for the later node also works for the
earlier, shallower one.
"""

from __future__ import annotations

from .core import ContractError, Fsm, InternalInvariantError, SearchResult, UnsupportedClassError, fsm_classify

HS = "hs"
SS = "ss"


def check_goal(goal):
    goal = str(goal).lower()
    if goal not in (HS, SS):
        raise ContractError(f"goal must be 'hs' or 'ss', got {goal!r}")
    return goal


def _require_det_complete(m: Fsm):
    report = fsm_classify(m)
    if not report.deterministic:
        raise UnsupportedClassError(f"{m.name}: FSM is not deterministic")
    if not report.complete:
        raise UnsupportedClassError(f"{m.name}: FSM is not complete")


def nontrivial(blocks) -> frozenset:
    return frozenset(b for b in blocks if len(b) > 1)


def split_blocks(m: Fsm, blocks, inp) -> frozenset:
    """Successor of a homing-tree label under one input."""
    out = set()
    for block in blocks:
        by_output = {}
        for s in block:
            o, nxt = m.step(s, inp)
            by_output.setdefault(o, set()).add(nxt)
        out.update(frozenset(v) for v in by_output.values())
    return frozenset(out)


def image(m: Fsm, states, inp) -> frozenset:
    return frozenset(m.step(s, inp)[1] for s in states)


def fsm_search(m: Fsm, goal) -> SearchResult:
    """Breadth-first truncated successor tree; see :func:`fsm_derive`."""
    goal = check_goal(goal)
    _require_det_complete(m)
    n = len(m.states)
    cap = n * n if goal == HS else n ** 3
    if goal == HS:
        root = frozenset({frozenset(m.states)})

        def done(label):
            return not nontrivial(label)

        key = nontrivial

        def succ(label, inp):
            return split_blocks(m, label, inp)
    else:
        root = frozenset(m.states)

        def done(label):
            return len(label) == 1

        def key(label):
            return label

        def succ(label, inp):
            return image(m, label, inp)

    nodes = 1
    if done(root):
        return SearchResult((), nodes, 0)
    seen = [key(root)]
    frontier = [(root, ())]
    depth = 0
    while frontier:
        if depth >= cap:
            raise InternalInvariantError(f"{m.name}: successor tree exceeded depth cap {cap}")
        depth += 1
        nxt = []
        for label, word in frontier:
            for inp in m.inputs:
                child = succ(label, inp)
                nodes += 1
                if done(child):
                    return SearchResult(word + (inp,), nodes, depth)
                k = key(child)
                if any(r <= k for r in seen):
                    continue
                seen.append(k)
                nxt.append((child, word + (inp,)))
        frontier = nxt
    return SearchResult(None, nodes, depth)


def fsm_derive(m: Fsm, goal):
    """A shortest homing (``"hs"``) or synchronizing (``"ss"``) word, or None.

    Ties are broken by input declaration order at each level.
    """
    return fsm_search(m, goal).sequence


def fsm_check(m: Fsm, goal, word) -> bool:
    goal = check_goal(goal)
    _require_det_complete(m)
    word = tuple(word)
    for inp in word:
        if inp not in m.inputs:
            raise ContractError(f"unknown input {inp!r} for FSM {m.name}")
    finals = {}
    for s in m.states:
        state, outs = s, []
        for inp in word:
            o, state = m.step(state, inp)
            outs.append(o)
        finals[s] = (tuple(outs), state)
    if goal == SS:
        return len({f for _, f in finals.values()}) == 1
    seen = {}
    for outs, state in finals.values():
        if seen.setdefault(outs, state) != state:
            return False
    return True
