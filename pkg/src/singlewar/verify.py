"""Exhaustive checks of every counting and probability claim, as JSON-ready
records ``{claim, parameters, expected, observed, pass}``.

Suites group claims by topic: ``s3`` game-graph structure, ``s4`` sequences
and trees, ``s5`` probabilities, ``s6`` WL-putback state counts, ``s7``
random-putback necessary counts. ``max_n`` caps every census deck size.
"""

from __future__ import annotations

import random
from fractions import Fraction
from typing import Callable, Iterator

from . import census, numerics, posets, trees, winloss
from .engine import Outcome, enumerate_random_branches, play_wl
from .graphs import build_game_graph, forest_decomposition

__all__ = ["SUITES", "run_suite", "record"]

Record = dict


def _fmt(value) -> str | bool:
    if isinstance(value, Fraction):
        return numerics.format_rational(value)
    if isinstance(value, bool):
        return value
    return str(value)


def record(claim: str, parameters: dict, expected, observed) -> Record:
    return {
        "claim": claim,
        "parameters": parameters,
        "expected": _fmt(expected),
        "observed": _fmt(observed),
        "pass": expected == observed,
    }


def _round_counts(max_n: int, jobs: int) -> Iterator[Record]:
    for m in range(1, 4):
        for r in range(1, 10):
            yield record(
                "round-sequence-count",
                {"m": m, "R": r},
                winloss.count_sequences_rounds(m, r),
                len(winloss.enumerate_sequences_rounds(m, r)),
            )


def _passthrough_counts(max_n: int, jobs: int) -> Iterator[Record]:
    for m in (1, 2):
        for k in range(1, 5):
            yield record(
                "passthrough-sequence-count",
                {"m": m, "k": k},
                numerics.a_k(k) ** m,
                len(winloss.enumerate_sequences_passthrough(m, k)),
            )


def _bijection(max_n: int, jobs: int) -> Iterator[Record]:
    seqs = winloss.enumerate_sequences_passthrough(1, 4)
    ok = all(trees.tree_to_seq(trees.seq_to_tree(s)) == s for s in seqs)
    yield record("tree-bijection-from-sequences", {"k": 4}, True, ok and len(seqs) == 26)
    shapes = trees.full_binary_trees(4)
    ok = all(
        trees.seq_to_tree(trees.tree_to_seq(t)).shape() == t.shape() for t in shapes
    )
    yield record("tree-bijection-from-trees", {"height": 4}, len(shapes), len(shapes) if ok else -1)


def _right_parent_graph(max_n: int, jobs: int) -> Iterator[Record]:
    for n in range(2, min(7, max_n) + 1):
        checked = mismatched = 0
        for state in census.all_states(n, 1):
            t = play_wl(state, n)
            if not t.single_use:
                continue
            labeled = trees.label_tree(t)
            rebuilt = trees.tree_to_game_graph(labeled, list(state.alice), n)
            checked += 1
            mismatched += rebuilt != build_game_graph(t)
        yield record("tree-to-game-graph", {"n": n, "games": checked}, 0, mismatched)


def _forest(max_n: int, jobs: int) -> Iterator[Record]:
    for n in range(2, min(6, max_n) + 1):
        for m in (1, 2):
            if m >= n:
                continue
            bad = games = 0
            for state in census.all_states(n, m):
                for t in [play_wl(state, n)] + enumerate_random_branches(state, n):
                    if not t.single_use:
                        continue
                    games += 1
                    forest, isolated = forest_decomposition(build_game_graph(t))
                    roots_ok = sorted(len(set(state.alice) & tr) for tr in forest) == [1] * m
                    untouched = set(state.bob) - {r.bob_card for r in t.rounds}
                    bad += not (len(forest) == m and roots_ok and isolated == untouched)
            yield record("game-graph-forest", {"n": n, "m": m, "games": games}, 0, bad)


def _uniform(max_n: int, jobs: int) -> Iterator[Record]:
    for n, m in [(3, 1), (4, 1), (4, 2), (5, 2)]:
        if n > max_n:
            continue
        report = census.uniform_lemma_check(n, m)
        yield record("uniform-after-one-round", {"n": n, "m": m}, True, report.passed)


def _r_round(max_n: int, jobs: int) -> Iterator[Record]:
    for n in range(2, min(7, max_n) + 1):
        for m in (1, 2):
            for r in range(m, n - m + 1, 2):
                expected = Fraction(numerics.catalan_triangle((r + m) // 2 - 1, (r - m) // 2), 2**r)
                for policy in ("wl", "random"):
                    yield record(
                        "r-round-probability",
                        {"n": n, "m": m, "R": r, "putback": policy},
                        expected,
                        census.probability_r_round(n, m, r, policy, jobs=jobs),
                    )


def _k_passthrough(max_n: int, jobs: int) -> Iterator[Record]:
    for n, m, k in [(4, 1, 2), (8, 1, 2), (8, 1, 3), (8, 2, 2)]:
        if n > max_n:
            continue
        for policy in ("wl", "random"):
            yield record(
                "k-passthrough-probability",
                {"n": n, "m": m, "k": k, "putback": policy},
                numerics.p_k(k) ** m,
                census.probability_k_passthrough(n, m, k, policy, jobs=jobs),
            )


def _sum_product(max_n: int, jobs: int) -> Iterator[Record]:
    for m in range(1, 6):
        for k in range(0, 9):
            lhs, rhs = numerics.sum_product_identity_check(m, k)
            yield record("catalan-sum-product", {"m": m, "k": k}, lhs, rhs)


def _p_k_growth(max_n: int, jobs: int) -> Iterator[Record]:
    # Each step squares the numerator; k_max = 30 costs about half a minute.
    rows = numerics.p_k_growth_check(30)
    ok = all(all(row[1:]) for row in rows)
    yield record("p-k-increasing-to-one", {"k_max": 30}, True, ok and len(rows) == 29)


def _tree_posets(max_n: int, jobs: int) -> Iterator[Record]:
    rng = random.Random(20240601)
    bad = 0
    for _ in range(200):
        size = rng.randint(1, 9)
        children: dict[int, list[int]] = {}
        for v in range(1, size):
            children.setdefault(rng.randrange(v), []).append(v)
        tree = posets.HookedTreePoset(0, {k: tuple(v) for k, v in children.items()})
        bad += posets.ruskey_count(tree) != posets.linear_extensions_bruteforce(tree.to_poset())
    yield record("tree-poset-extensions", {"trees": 200, "max_vertices": 9, "seed": 20240601}, 0, bad)


def _wl_counts(max_n: int, jobs: int) -> Iterator[Record]:
    for k in range(1, 5):
        if 2 * k > max_n:
            continue
        tally = census.wl_sequence_census(2 * k, 1, jobs)
        for seq in winloss.enumerate_sequences_rounds(1, 2 * k - 1):
            yield record(
                "wl-state-count",
                {"sequence": seq.stylize(), "n": 2 * k},
                posets.count_states_wl(seq),
                tally.get(seq.letters, 0),
            )


def _random_counts(max_n: int, jobs: int) -> Iterator[Record]:
    for k in range(1, 4):
        if 2 * k > max_n:
            continue
        tally = census.random_necessary_census(2 * k, jobs)
        for seq in winloss.enumerate_sequences_rounds(1, 2 * k - 1):
            closed = posets.count_states_random_necessary(seq)
            params = {"sequence": seq.stylize(), "n": 2 * k}
            yield record("random-necessary-count", params, closed, tally.get(seq.letters, 0))
            yield record(
                "random-necessary-poset",
                params,
                closed,
                posets.linear_extensions_bruteforce(posets.build_random_poset(seq)),
            )


SUITES: dict[str, list[Callable[[int, int], Iterator[Record]]]] = {
    "s3": [_forest],
    "s4": [_round_counts, _passthrough_counts, _bijection, _right_parent_graph],
    "s5": [_uniform, _r_round, _k_passthrough, _sum_product, _p_k_growth],
    "s6": [_tree_posets, _wl_counts],
    "s7": [_random_counts],
}


def run_suite(suite: str = "all", max_n: int = 8, jobs: int = 1) -> list[Record]:
    names = list(SUITES) if suite == "all" else [suite]
    out: list[Record] = []
    for name in names:
        if name not in SUITES:
            raise KeyError(f"unknown suite {name!r}; choose from all, {', '.join(SUITES)}")
        for check in SUITES[name]:
            out.extend(check(max_n, jobs))
    return out
