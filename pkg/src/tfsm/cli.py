"""Command-line interface.

Exit codes: 0 success, 1 the sequence does not exist or a check failed,
2 usage or parse error, 3 machine outside the supported class,
4 node budget exhausted before a verdict.
"""

from __future__ import annotations

import argparse
import json
import sys

from .core import BudgetExhausted, ContractError, Fsm, Tfsm, UnsupportedClassError, classify, fsm_classify
from .fsm_analysis import fsm_check, fsm_search
from .oracle import brute_force_derive
from .point import Pfa, careful_sync_search, gen_bn, pfa_to_tfsm, point_search, word_to_timed
from .region import build_region_fsm, region_search
from .semantics import induce_run, is_homing, is_synchronizing, timed_out
from .successor_tree import shortest_search
from .textformat import ParseError, load, parse_seq, parse_word, serialize, symbol_text, time_text, to_dot

EXIT_OK, EXIT_NONE, EXIT_USAGE, EXIT_CLASS, EXIT_BUDGET = 0, 1, 2, 3, 4


class UsageError(Exception):
    pass


def _seq_json(seq):
    if seq is None:
        return None
    return [{"input": str(i), "t": time_text(t)} for i, t in seq]


def _word_json(word):
    if word is None:
        return None
    return [{"input": symbol_text(i)} for i in word]


def _result(query, machine, exists, sequence, verified, nodes=0, depth=0, **extra):
    out = {
        "query": query,
        "machine": machine,
        "exists": exists,
        "sequence": sequence,
        "verified": verified,
        "stats": {"nodes": nodes, "depth": depth},
    }
    out.update(extra)
    return out


def _emit(obj):
    sys.stdout.write(json.dumps(obj, indent=2) + "\n")


def _need(m, kinds, command):
    if not isinstance(m, kinds):
        names = "/".join(k.__name__.lower() for k in kinds)
        raise UsageError(f"'{command}' needs a {names} document, got {type(m).__name__.lower()}")


def _verify(m, goal, seq):
    return is_homing(m, seq) if goal == "hs" else is_synchronizing(m, seq)


def cmd_analyze(args):
    m = load(args.file)
    if isinstance(m, Tfsm):
        report = classify(m).as_dict()
        counts = {"states": len(m.states), "inputs": len(m.inputs), "outputs": len(m.outputs),
                  "transitions": len(m.transitions)}
        _emit({"query": "analyze", "machine": m.name, "kind": "tfsm", "classification": report, "counts": counts})
    elif isinstance(m, Fsm):
        r = fsm_classify(m)
        _emit({"query": "analyze", "machine": m.name, "kind": "fsm",
               "classification": {"deterministic": r.deterministic, "observable": r.observable,
                                  "complete": r.complete},
               "counts": {"states": len(m.states), "inputs": len(m.inputs), "outputs": len(m.outputs),
                          "transitions": len(m.transitions)}})
    else:
        complete = all((q, x) in m.transitions for q in m.states for x in m.letters)
        _emit({"query": "analyze", "machine": m.name, "kind": "pfa",
               "classification": {"deterministic": True, "complete": complete},
               "counts": {"states": len(m.states), "letters": len(m.letters),
                          "transitions": len(m.transitions)}})
    return EXIT_OK


def cmd_derive(args):
    m = load(args.file)
    query = f"derive {args.goal} {args.method}"
    if isinstance(m, Fsm):
        r = fsm_search(m, args.goal)
        ok = r.sequence is not None and fsm_check(m, args.goal, r.sequence)
        _emit(_result(query, m.name, r.exists, _word_json(r.sequence), ok, r.nodes, r.depth))
        return EXIT_OK if r.exists else EXIT_NONE
    if isinstance(m, Pfa):
        if args.goal != "hs" or args.method != "point":
            raise UnsupportedClassError("pfa documents support only '--goal hs --method point'")
        m = pfa_to_tfsm(m)
    if args.method == "tree":
        r = shortest_search(m, args.goal)
    elif args.method == "region":
        r = region_search(m, args.goal)
    else:
        if args.goal != "hs":
            raise UnsupportedClassError("the point method derives homing sequences only")
        r = point_search(m)
    ok = r.sequence is not None and _verify(m, args.goal, r.sequence)
    _emit(_result(query, m.name, r.exists, _seq_json(r.sequence), ok, r.nodes, r.depth))
    return EXIT_OK if r.exists else EXIT_NONE


def cmd_check(args):
    m = load(args.file)
    query = f"check {args.goal}"
    if isinstance(m, Fsm):
        word = parse_word(args.seq)
        ok = fsm_check(m, args.goal, word)
        _emit(_result(query, m.name, ok, _word_json(word), ok))
        return EXIT_OK if ok else EXIT_NONE
    if isinstance(m, Pfa):
        m = pfa_to_tfsm(m)
    seq = parse_seq(args.seq)
    ok = _verify(m, args.goal, seq)
    _emit(_result(query, m.name, ok, _seq_json(seq), ok))
    return EXIT_OK if ok else EXIT_NONE


def cmd_simulate(args):
    m = load(args.file)
    _need(m, (Tfsm,), "simulate")
    if args.start not in m.states:
        raise UsageError(f"unknown state {args.start!r}")
    seq = parse_seq(args.seq)
    run = induce_run(m, args.start, seq)
    defined = run is not None
    extra = {"from": args.start, "final": None, "run": None, "timed_out": None}
    if defined:
        extra["final"] = str(run.final)
        extra["run"] = [{"input": str(st.input), "t": time_text(st.t), "src": str(st.src), "dst": str(st.dst),
                         "output": str(st.output), "tau": time_text(st.tau)} for st in run.steps]
        extra["timed_out"] = [{"tau": time_text(tau), "outputs": [str(o) for o in outs]}
                              for tau, outs in timed_out(m, args.start, seq)]
    _emit(_result("simulate", m.name, defined, _seq_json(seq), defined, **extra))
    return EXIT_OK if defined else EXIT_NONE


def cmd_region(args):
    m = load(args.file)
    _need(m, (Tfsm,), "region")
    region = build_region_fsm(m)
    if args.dot:
        sys.stdout.write(to_dot(region))
        return EXIT_OK
    fsm = region.fsm
    _emit({
        "query": "region",
        "machine": m.name,
        "refined_guards": {str(i): [str(g) for g in gs] for i, gs in region.refined_guards.items()},
        "inputs": [symbol_text(x) for x in fsm.inputs],
        "outputs": [symbol_text(x, delay=True) for x in fsm.outputs],
        "transitions": [{"src": str(s), "input": symbol_text(i), "output": symbol_text(o, delay=True),
                         "dst": str(d)} for s, i, o, d in fsm.transitions],
    })
    return EXIT_OK


def cmd_gen_bn(args):
    try:
        m = gen_bn(args.n)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    sys.stdout.write(serialize(m))
    return EXIT_OK


def cmd_oracle(args):
    m = load(args.file)
    if isinstance(m, Pfa):
        word = careful_sync_search(m, args.max_len)[0]
        m = pfa_to_tfsm(m)
        seq = None if word is None else word_to_timed(word)
    else:
        _need(m, (Tfsm,), "oracle")
        seq = brute_force_derive(m, args.goal, args.max_len)
    exists = seq is not None
    ok = exists and _verify(m, args.goal, seq)
    _emit(_result(f"oracle {args.goal} {args.max_len}", m.name, exists, _seq_json(seq), ok,
                  depth=len(seq) if exists else args.max_len))
    return EXIT_OK if exists else EXIT_NONE


def build_parser():
    p = argparse.ArgumentParser(prog="tfsm", description="Homing and synchronizing sequences for TFSMs with output delays.")
    sub = p.add_subparsers(dest="command", required=True)

    a = sub.add_parser("analyze", help="classify a machine")
    a.add_argument("file")
    a.set_defaults(func=cmd_analyze)

    d = sub.add_parser("derive", help="derive a shortest homing or synchronizing sequence")
    d.add_argument("--goal", choices=("hs", "ss"), required=True)
    d.add_argument("--method", choices=("tree", "region", "point"), default="tree")
    d.add_argument("file")
    d.set_defaults(func=cmd_derive)

    c = sub.add_parser("check", help="check a given sequence")
    c.add_argument("--goal", choices=("hs", "ss"), required=True)
    c.add_argument("--seq", required=True, help='e.g. "i1@21/10,i2@4.2" (FSMs: "a,b")')
    c.add_argument("file")
    c.set_defaults(func=cmd_check)

    s = sub.add_parser("simulate", help="run a timed sequence from one state")
    s.add_argument("--from", dest="start", required=True)
    s.add_argument("--seq", required=True)
    s.add_argument("file")
    s.set_defaults(func=cmd_simulate)

    r = sub.add_parser("region", help="build the region FSM")
    r.add_argument("file")
    r.add_argument("--dot", action="store_true", help="emit Graphviz instead of JSON")
    r.set_defaults(func=cmd_region)

    g = sub.add_parser("gen-bn", help="print the B_n machine")
    g.add_argument("n", type=int)
    g.set_defaults(func=cmd_gen_bn)

    o = sub.add_parser("oracle", help="brute-force search (reference)")
    o.add_argument("--goal", choices=("hs", "ss"), required=True)
    o.add_argument("--max-len", type=int, required=True)
    o.add_argument("file")
    o.set_defaults(func=cmd_oracle)
    return p


def run_command(argv) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_USAGE
    try:
        return args.func(args)
    except (ParseError, UsageError, ContractError, OSError) as exc:
        print(f"tfsm: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except UnsupportedClassError as exc:
        print(f"tfsm: unsupported machine: {exc}", file=sys.stderr)
        return EXIT_CLASS
    except BudgetExhausted as exc:
        print(f"tfsm: {exc}", file=sys.stderr)
        return EXIT_BUDGET


def main(argv=None):
    sys.exit(run_command(sys.argv[1:] if argv is None else argv))


if __name__ == "__main__":
    main()
