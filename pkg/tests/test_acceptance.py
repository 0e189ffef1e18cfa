"""Acceptance suite: every check is exact (rational arithmetic, no tolerance).

Run with ``pytest tests/test_acceptance.py``; the terminal summary lists one
PASS/FAIL line per criterion.
"""

import math
import random
from fractions import Fraction as F

import pytest

from tfsm import (
    BudgetExhausted,
    TimedGuard as G,
    brute_force_derive,
    build_region_fsm,
    careful_sync_brute,
    corpus,
    delta,
    derive_hs_point,
    derive_shortest,
    derive_via_region,
    fsm_check,
    fsm_classify,
    fsm_derive,
    gen_bn,
    hs_exists_point,
    induce_run,
    is_homing,
    is_non_integer,
    is_synchronizing,
    make_tail,
    pfa_to_tfsm,
    project,
    tail_of,
    timed_out,
)
from tfsm.cli import run_command
from tfsm.point import EMPTY_TAIL, RESOLVED, letters, make_pair, pairwise_search, word_to_timed
from tfsm.semantics import cumulative
from tfsm.textformat import parse, serialize

from randmachines import enabled_sequence, half_open_machine, point_machine, point_walk, prolong, random_pfa

criterion = pytest.mark.criterion
MACHINES = 200


def _tail(*offsets):
    return make_tail(("o1", d) for d in offsets)


# 1. corpus goldens

@criterion("1 S1 goldens: timed outputs, synchronizing and homing verdicts")
def test_S1_goldens(S1):
    alpha = [("i1", 2), ("i2", 4), ("i2", 5)]
    assert timed_out(S1, "s0", alpha) == ((5, ("o2",)), (6, ("o1", "o3")))
    assert is_synchronizing(S1, [("i1", 2), ("i1", 4), ("i1", 6)])
    assert is_homing(S1, [("i1", 2)])
    assert not is_homing(S1, [("i1", 2), ("i2", 4)])
    assert is_homing(S1, [("i2", 2)])
    assert not is_homing(S1, [("i2", 4), ("i2", 6)])


@criterion("1 S2 shortest HS and SS are (i1,21/10)(i2,42/10)(i1,63/10)")
def test_S2_goldens(S2):
    expected = (("i1", F(21, 10)), ("i2", F(42, 10)), ("i1", F(63, 10)))
    assert derive_shortest(S2, "hs") == expected
    assert derive_shortest(S2, "ss") == expected


@criterion("1 S3/M3 goldens: S3 homed by (i1,3/2)(i2,3); M3 has no HS")
def test_S3_M3_goldens(S3, M3):
    assert is_homing(S3, [("i1", F(3, 2)), ("i2", 3)])
    assert fsm_derive(M3, "hs") is None


@criterion("1 S4/R(S4) goldens: region transition set and projection homing")
def test_S4_goldens(S4):
    region = build_region_fsm(S4)
    assert set(region.fsm.transitions) == {
        ("s0", ("i1", G(0, 1)), ("o1", 3), "s2"),
        ("s0", ("i1", G(1, 2)), ("o1", 3), "s2"),
        ("s0", ("i2", G(1, 3)), ("o1", 1), "s0"),
        ("s1", ("i1", G(0, 1)), ("o1", 3), "s3"),
        ("s1", ("i1", G(1, 2)), ("o1", 3), "s3"),
        ("s1", ("i2", G(1, 3)), ("o1", 1), "s0"),
        ("s2", ("i1", G(0, 1)), ("o1", 3), "s0"),
        ("s2", ("i1", G(1, 2)), ("o2", 4), "s0"),
        ("s2", ("i2", G(1, 3)), ("o2", 2), "s3"),
        ("s3", ("i1", G(0, 1)), ("o2", 4), "s1"),
        ("s3", ("i1", G(1, 2)), ("o2", 4), "s1"),
        ("s3", ("i2", G(1, 3)), ("o2", 2), "s3"),
    }
    seq = [("i1", 1), ("i2", 3)]
    w = project(region, seq)
    assert w == (("i1", G(1, 2)), ("i2", G(1, 3)))
    assert not is_homing(S4, seq)
    assert fsm_check(region.fsm, "hs", w)


@criterion("1 B4 goldens: region HS, no timed HS, step-exact pair trace")
def test_B4_goldens(B4):
    a = ("i1", G.at(1))
    assert fsm_check(build_region_fsm(B4).fsm, "hs", [a, a])
    assert not is_homing(B4, [("i1", 1), ("i1", 2)])
    assert hs_exists_point(B4) == (False, None)
    letter = ("i1", 1)
    p = make_pair(("s0", EMPTY_TAIL), ("s3", EMPTY_TAIL))
    trace = [p]
    for _ in range(3):
        p = delta(B4, p, letter)
        trace.append(p)
    assert trace == [
        make_pair(("s0", EMPTY_TAIL), ("s3", EMPTY_TAIL)),
        make_pair(("s1", _tail(2)), ("s0", _tail(1))),
        make_pair(("s2", _tail(1, 2)), ("s1", _tail(0, 2))),
        RESOLVED,
    ]


# 2. B_n sweep

@criterion("2 B_n sweep n=4..8: a^(n-2) homes R(B_n), B_n has no HS, oracle finds none up to 2n")
def test_bn_sweep():
    for n in range(4, 9):
        b = gen_bn(n)
        a = ("i1", G.at(1))
        assert fsm_check(build_region_fsm(b).fsm, "hs", [a] * (n - 2))
        assert hs_exists_point(b) == (False, None)
        assert brute_force_derive(b, "hs", 2 * n) is None


# 3. property suites, each over seeded random machines

def _enabled(rng, m, length):
    if m.transitions and m.transitions[0].guard.point:
        return point_walk(rng, m, m.states[0], length)
    return enabled_sequence(rng, m, length)


@criterion("3 synchronizing transfers to the region FSM (half-open and point machines)")
def test_synchronizing_transfer_property():
    rng = random.Random(5)
    for make in (half_open_machine, point_machine):
        for _ in range(MACHINES):
            m = make(rng)
            region = build_region_fsm(m)
            for _ in range(3):
                seq = _enabled(rng, m, rng.randint(0, 5))
                assert is_synchronizing(m, seq) == fsm_check(region.fsm, "ss", project(region, seq)), serialize(m)


@criterion("3 tree, region and oracle agree on HS existence and length")
def test_hs_agreement_property():
    rng = random.Random(7)
    for _ in range(MACHINES):
        m = half_open_machine(rng)
        n = len(m.states)
        tree, via_region = derive_shortest(m, "hs"), derive_via_region(m, "hs")
        limit = len(tree) if tree is not None else n * (n - 1) // 2
        ref = brute_force_derive(m, "hs", limit)
        assert (tree is None) == (via_region is None) == (ref is None), serialize(m)
        if tree is not None:
            assert len(tree) == len(via_region) == len(ref), serialize(m)
            assert is_homing(m, tree) and is_homing(m, via_region) and is_homing(m, ref)


@criterion("3 non-integer prolongations of homing sequences stay homing (500 trials)")
def test_prolongation_property():
    rng = random.Random(11)
    trials = 0
    while trials < 500:
        m = half_open_machine(rng, allow_gaps=False)
        hs = derive_shortest(m, "hs")
        if not hs:
            continue
        for _ in range(5):
            longer = prolong(rng, m, hs, rng.randint(0, 2), rng.randint(0, 3))
            assert is_non_integer(longer)
            assert is_homing(m, longer), (serialize(m), longer)
            trials += 1


@criterion("3 tail size never exceeds ceil(maxD/minG) over 10^4 point walks")
def test_tail_bound_property():
    rng = random.Random(13)
    violations, first = 0, None
    for _ in range(10 ** 4):
        m = point_machine(rng)
        s = rng.choice(m.states)
        seq = point_walk(rng, m, s, rng.randint(0, 9))
        max_d = max(tr.delay for tr in m.transitions)
        min_g = min(tr.guard.lo for tr in m.transitions)
        if len(tail_of(m, s, seq)) > math.ceil(F(max_d, min_g)):
            violations += 1
            first = first or (serialize(m), s, seq)
    assert violations == 0, f"{violations} walks exceed the bound; first: {first}"


def _direct_pair_verdict(m, s1, s2, seq):
    r1, r2 = induce_run(m, s1, seq), induce_run(m, s2, seq)
    now = seq[-1][1] if seq else 0
    before1 = sorted((st.output, st.tau) for st in r1.steps if st.tau < now)
    before2 = sorted((st.output, st.tau) for st in r2.steps if st.tau < now)
    if r1.final != r2.final and before1 == before2:
        return make_pair((r1.final, tail_of(m, s1, seq)), (r2.final, tail_of(m, s2, seq)))
    return RESOLVED


@criterion("3 pair-automaton fold matches direct semantics on 10^4 pair/word trials")
def test_pair_fold_property():
    rng = random.Random(17)
    trials = 0
    while trials < 10 ** 4:
        m = point_machine(rng, partial=True)
        if len(m.states) < 2 or not letters(m):
            continue
        s1, s2 = rng.sample(m.states, 2)
        word = [rng.choice(letters(m)) for _ in range(rng.randint(0, 6))]
        seq = cumulative((i, F(g)) for i, g in word)
        if induce_run(m, s1, seq) is None or induce_run(m, s2, seq) is None:
            continue
        p = make_pair((s1, EMPTY_TAIL), (s2, EMPTY_TAIL))
        for x in word:
            p = delta(m, p, x)
        assert p == _direct_pair_verdict(m, s1, s2, seq), (serialize(m), s1, s2, word)
        trials += 1


@criterion("3 careful synchronization of 100 PFAs agrees with timed HS existence")
def test_reduction_property():
    rng = random.Random(19)
    for _ in range(100):
        a = random_pfa(rng)
        word = careful_sync_brute(a, 12)
        m = pfa_to_tfsm(a)
        found, witness = hs_exists_point(m)
        if word is not None:
            assert found and len(witness) == len(word), serialize(a)
            assert is_homing(m, word_to_timed(word))
            assert is_homing(m, witness)
        elif not found:
            continue
        else:
            # a timed HS exists, so the brute force must not have been conclusive
            assert len(witness) > 12, serialize(a)


# 4. constructive content of the complexity results

@criterion("4 region size counts on corpus machines, budgeted search, reduction round-trip")
def test_constructive_content():
    for name in ("S1", "S2", "S3", "S4", "B4"):
        m = corpus.load(name)
        region = build_region_fsm(m)
        width = sum(len(g) for g in region.refined_guards.values())
        assert region.fsm.states == m.states
        assert len(region.fsm.inputs) == width
        assert len(region.fsm.transitions) == len(m.states) * width
        rep = fsm_classify(region.fsm)
        assert rep.deterministic and rep.complete
    assert len(build_region_fsm(corpus.load("S4")).fsm.transitions) == 12

    with pytest.raises(BudgetExhausted):
        pairwise_search(gen_bn(6), budget=5)
    assert pairwise_search(gen_bn(6)).sequence is None

    rng = random.Random(23)
    for _ in range(50):
        a = random_pfa(rng, max_states=4)
        word = careful_sync_brute(a, 12)
        if word is not None:
            assert is_homing(pfa_to_tfsm(a), word_to_timed(word))
            assert derive_hs_point(pfa_to_tfsm(a)) is not None


# 5. CLI

@criterion("5 CLI: parse/serialize/parse identity on the corpus")
def test_cli_round_trip():
    for name in corpus.NAMES:
        m = corpus.load(name)
        assert parse(serialize(m)) == m
        assert serialize(parse(serialize(m))) == serialize(m)


def _json(capsys, argv):
    import json

    code = run_command(argv)
    return code, json.loads(capsys.readouterr().out)


@criterion("5 CLI: derive hs tree on S2 returns the three-input sequence, exit 0")
def test_cli_derive_S2(capsys):
    code, out = _json(capsys, ["derive", "--goal", "hs", "--method", "tree", str(corpus.path("S2"))])
    assert code == 0 and out["exists"] is True and out["verified"] is True
    assert out["sequence"] == [{"input": "i1", "t": "21/10"}, {"input": "i2", "t": "21/5"},
                               {"input": "i1", "t": "63/10"}]


@criterion("5 CLI: derive hs point on B4 reports exists=false, exit 1")
def test_cli_derive_B4(capsys):
    code, out = _json(capsys, ["derive", "--goal", "hs", "--method", "point", str(corpus.path("B4"))])
    assert code == 1 and out["exists"] is False


@criterion("5 CLI: check hs i1@2,i2@4 on S1 reports verified=false, exit 1")
def test_cli_check_S1(capsys):
    code, out = _json(capsys, ["check", "--goal", "hs", "--seq", "i1@2,i2@4", str(corpus.path("S1"))])
    assert code == 1 and out["verified"] is False
