"""Command-line front end.

Machine output goes to stdout, diagnostics to stderr. Exit status is 2 for
usage errors, 1 for a failed verification, 0 otherwise.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from typing import Sequence

from . import census, dot, graphs, posets, trees, verify, winloss
from .engine import (
    GameTrace,
    StateError,
    classify,
    enumerate_random_branches,
    parse_state,
    play_random,
    play_wl,
)
from .numerics import format_rational

RNG_NAME = "mt19937-msb-v1"


class UsageError(Exception):
    pass


def _sequence(args: argparse.Namespace) -> winloss.WinLossSequence:
    try:
        return winloss.parse_sequence(args.sequence, args.m)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


def _state(text: str):
    try:
        return parse_state(text)
    except StateError as exc:
        raise UsageError(str(exc)) from exc


def _trace_lines(trace: GameTrace) -> list[str]:
    lines = [f"state: {trace.initial}"]
    for r in trace.rounds:
        first, second = r.putback_order
        lines.append(
            f"round {r.index}: {r.alice_card} vs {r.bob_card} -> {r.winner.value} "
            f"puts back {first} {second}"
        )
    lines.append(f"final: {trace.final}")
    lines.append(f"outcome: {trace.outcome.value}")
    lines.append(f"weight: {format_rational(trace.weight)}")
    try:
        seq = winloss.sequence_of(trace)
    except ValueError:
        lines.append(f"letters: {trace.letters}")
        return lines
    rounds, passes, single = classify(trace)
    lines.append(f"sequence: {seq.stylize()}")
    lines.append(f"rounds: {rounds}")
    lines.append(f"passthroughs: {passes}")
    lines.append(f"single_use: {str(single).lower()}")
    return lines


def _trace_json(trace: GameTrace) -> dict:
    out = trace.to_json()
    try:
        out["sequence"] = winloss.sequence_of(trace).stylize()
        out["passthroughs"] = len(trace.alice_passthrough_boundaries)
    except ValueError:
        out["sequence"] = None
    return out


def _play(args: argparse.Namespace) -> GameTrace:
    state = _state(args.state)
    if args.putback == "wl":
        return play_wl(state, args.max_rounds)
    return play_random(state, random.Random(args.seed), args.max_rounds, args.bob_random)


def cmd_simulate(args: argparse.Namespace) -> int:
    trace = _play(args)
    if args.json:
        print(json.dumps(_trace_json(trace), indent=2))
    else:
        print("\n".join(_trace_lines(trace)))
    return 0


def cmd_branches(args: argparse.Namespace) -> int:
    traces = enumerate_random_branches(_state(args.state), args.max_rounds)
    if args.json:
        print(json.dumps([_trace_json(t) for t in traces], indent=2))
        return 0
    for t in traces:
        seq = t.letters
        if t.outcome.value == "AliceLost":
            seq = winloss.sequence_of(t).stylize()
        print(f"{format_rational(t.weight)}\t{t.outcome.value}\t{seq}\t{t.final}")
    return 0


def cmd_sequences(args: argparse.Namespace) -> int:
    if args.rounds is not None:
        if args.count_only:
            print(winloss.count_sequences_rounds(args.m, args.rounds))
            return 0
        seqs = winloss.enumerate_sequences_rounds(args.m, args.rounds)
    else:
        if args.count_only:
            print(winloss.count_sequences_passthrough(args.m, args.passthroughs))
            return 0
        seqs = winloss.enumerate_sequences_passthrough(args.m, args.passthroughs)
    for s in seqs:
        print(s.stylize())
    return 0


def cmd_tree(args: argparse.Namespace) -> int:
    seq = _sequence(args)
    roots = [trees.seq_to_tree(b) for b in winloss.split_blocks(seq)]
    if args.dot:
        sys.stdout.write(dot.tree_to_dot(roots))
        return 0
    for i, root in enumerate(roots, start=1):
        levels: list[list[str]] = []
        frontier = [root]
        while frontier:
            levels.append([n.letter for n in frontier])
            frontier = [c for n in frontier for c in n.children()]
        print(f"block {i}: height {root.height()}")
        for depth, letters in enumerate(levels, start=1):
            print(f"  level {depth}: {' '.join(letters)}")
        print(f"  sequence: {trees.tree_to_seq(root).stylize()}")
    return 0


def cmd_graph(args: argparse.Namespace) -> int:
    trace = _play(args)
    if args.orient is None:
        graph = graphs.build_game_graph(trace)
        if args.dot:
            sys.stdout.write(dot.graph_to_dot(graph))
            return 0
        for u, v in graph.edges:
            print(f"{u} -- {v}")
        try:
            forest, isolated = graphs.forest_decomposition(graph)
        except graphs.CycleError:
            print("forest: no")
            return 0
        print(f"forest: {len(forest)} trees, isolated {sorted(isolated)}")
        return 0
    digraph = graphs.orient(trace, args.orient, args.start_round)
    if args.dot:
        sys.stdout.write(dot.digraph_to_dot(digraph))
        return 0
    for u, v in digraph.edges:
        print(f"{u} -> {v}")
    return 0


def cmd_poset(args: argparse.Namespace) -> int:
    seq = _sequence(args)
    if args.mode == "wl":
        poset = posets.wl_poset(seq)
    else:
        if seq.m != 1:
            raise UsageError("random-putback posets need a unicard sequence")
        poset = posets.build_random_poset(seq)
    if args.dot:
        sys.stdout.write(dot.poset_to_dot(poset))
        return 0
    for hi, lo in poset.covers:
        style = " (dashed)" if (hi, lo) in poset.dashed else ""
        print(f"{posets.slot_name(hi)} > {posets.slot_name(lo)}{style}")
    if seq.m == 1:
        tree = posets.wl_tree_component(seq) if args.mode == "wl" else posets.random_bottom_tree(seq)
        h = tree.hooks()
        hooks = " ".join(f"{posets.slot_name(v)}={h[v]}" for v in tree.vertices())
        print(f"hooks: {hooks}")
    return 0


def cmd_count(args: argparse.Namespace) -> int:
    seq = _sequence(args)
    if args.mode == "wl":
        value = posets.count_states_wl(seq) if seq.m == 1 else posets.count_states_wl_mcard(seq)
    else:
        if seq.m != 1:
            raise UsageError("random-necessary counts need a unicard sequence")
        value = posets.count_states_random_necessary(seq)
    print(value)
    if not args.verify:
        return 0
    n = seq.m + seq.rounds
    if args.mode == "wl":
        observed = len(census.states_matching_wl(seq, n))
    else:
        observed = len(census.states_necessarily_random(seq, n))
    print(f"census: {observed} on n={n}", file=sys.stderr)
    return 0 if observed == value else 1


def cmd_verify(args: argparse.Namespace) -> int:
    try:
        records = verify.run_suite(args.suite, args.max_n, args.jobs)
    except KeyError as exc:
        raise UsageError(str(exc)) from exc
    print(json.dumps(records, indent=2))
    failed = [r for r in records if not r["pass"]]
    print(f"{len(records) - len(failed)}/{len(records)} checks passed", file=sys.stderr)
    return 1 if failed else 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="singlewar", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    def game_options(p: argparse.ArgumentParser, putbacks: Sequence[str]) -> None:
        p.add_argument("--state", required=True, help='e.g. "2|13" or "10 3 | 1 2 4 5 6 7 8 9"')
        p.add_argument("--putback", choices=putbacks, default="wl")
        p.add_argument("--seed", type=int, default=0, help=f"seed for the {RNG_NAME} generator")
        p.add_argument("--max-rounds", type=int, default=None)
        p.add_argument("--bob-random", action="store_true", help="randomize Bob's putback too")

    p = sub.add_parser("simulate", help="play one game")
    game_options(p, ["wl", "random"])
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("branches", help="all random-putback branches with weights")
    p.add_argument("--state", required=True)
    p.add_argument("--max-rounds", type=int, default=None)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_branches)

    p = sub.add_parser("sequences", help="enumerate or count win-loss sequences")
    p.add_argument("--m", type=int, required=True)
    which = p.add_mutually_exclusive_group(required=True)
    which.add_argument("--rounds", type=int)
    which.add_argument("--passthroughs", type=int)
    p.add_argument("--count-only", action="store_true")
    p.set_defaults(func=cmd_sequences)

    def sequence_options(p: argparse.ArgumentParser) -> None:
        p.add_argument("--sequence", required=True, help='e.g. "W/LL"')
        p.add_argument("--m", type=int, default=None, help="initial hand size if no slash shows it")

    p = sub.add_parser("tree", help="win-loss binary tree of a sequence")
    sequence_options(p)
    p.add_argument("--dot", action="store_true")
    p.set_defaults(func=cmd_tree)

    p = sub.add_parser("graph", help="game graph of one game")
    game_options(p, ["wl", "random"])
    p.add_argument("--dot", action="store_true")
    p.add_argument("--orient", choices=["winner", "alice"], default=None)
    p.add_argument("--start-round", type=int, default=1)
    p.set_defaults(func=cmd_graph)

    p = sub.add_parser("poset", help="poset forced by a sequence")
    sequence_options(p)
    p.add_argument("--mode", choices=["wl", "random"], required=True)
    p.add_argument("--dot", action="store_true")
    p.set_defaults(func=cmd_poset)

    p = sub.add_parser("count", help="closed-form count of states following a sequence")
    sequence_options(p)
    p.add_argument("--mode", choices=["wl", "random-necessary"], required=True)
    p.add_argument("--verify", action="store_true", help="cross-check against a census")
    p.set_defaults(func=cmd_count)

    p = sub.add_parser("verify", help="run exhaustive checks and print a JSON report")
    p.add_argument("--suite", default="all", help="all, s3, s4, s5, s6 or s7")
    p.add_argument("--max-n", type=int, default=8)
    p.add_argument("--jobs", type=int, default=1)
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except (UsageError, ValueError) as exc:
        print(f"singlewar: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
