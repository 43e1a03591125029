"""The thirteen acceptance criteria, each checked exactly.

Every criterion records one line, printed as a block at the end of the
pytest run (``criterion N: PASS|FAIL detail``). Run this module directly to
print the same lines without pytest.
"""

import os
import random
from fractions import Fraction

import pytest

from singlewar import census, numerics, posets, trees, winloss
from singlewar.engine import enumerate_random_branches, play_wl
from singlewar.graphs import build_game_graph, forest_decomposition
from singlewar.winloss import parse_sequence

from conftest import ACCEPTANCE_LINES

JOBS = max(1, min(4, os.cpu_count() or 1))


def criterion_1():
    checked = bad = 0
    for m in range(1, 4):
        for r in range(1, 10):
            got = len(winloss.enumerate_sequences_rounds(m, r))
            if r >= m and (r - m) % 2 == 0:
                expected = numerics.catalan_triangle((r + m) // 2 - 1, (r - m) // 2)
            else:
                expected = 0
            checked += 1
            bad += got != expected
    return bad == 0, f"round-sequence counts, {checked} (m, R) pairs, {bad} mismatches"


def criterion_2():
    bad = 0
    for m in (1, 2):
        for k in range(1, 5):
            bad += len(winloss.enumerate_sequences_passthrough(m, k)) != numerics.a_k(k) ** m
    return bad == 0 and numerics.a_k(4) == 26, f"passthrough counts for m<=2, k<=4, A_4={numerics.a_k(4)}"


def criterion_3():
    seqs = winloss.enumerate_sequences_passthrough(1, 4)
    seq_ok = all(trees.tree_to_seq(trees.seq_to_tree(s)) == s for s in seqs)
    shapes = trees.full_binary_trees(4)
    tree_ok = all(trees.seq_to_tree(trees.tree_to_seq(t)).shape() == t.shape() for t in shapes)
    ok = seq_ok and tree_ok and len(seqs) == 26 and len(shapes) == 26
    return ok, f"{len(seqs)} sequences and {len(shapes)} trees round-trip"


def criterion_4():
    games = bad = 0
    for n in range(2, 8):
        for state in census.all_states(n, 1):
            t = play_wl(state, n)
            if not t.single_use:
                continue
            games += 1
            rebuilt = trees.tree_to_game_graph(trees.label_tree(t), list(state.alice), n)
            bad += rebuilt != build_game_graph(t)
    return bad == 0, f"{games} single-use unicard games on n<=7, {bad} graph mismatches"


def criterion_5():
    games = bad = 0
    for n in range(2, 7):
        for m in (1, 2):
            if m >= n:
                continue
            for state in census.all_states(n, m):
                for t in [play_wl(state, n)] + enumerate_random_branches(state, n):
                    if not t.single_use:
                        continue
                    games += 1
                    forest, isolated = forest_decomposition(build_game_graph(t))
                    one_root_each = all(len(tree & set(state.alice)) == 1 for tree in forest)
                    untouched = set(state.bob) - {r.bob_card for r in t.rounds}
                    bad += not (len(forest) == m and one_root_each and isolated == untouched)
    return bad == 0, f"{games} single-use games on n<=6, m in {{1,2}}, {bad} non-forests"


def criterion_6():
    pairs = [(3, 1), (4, 1), (4, 2), (5, 2)]
    failed = [p for p in pairs if not census.uniform_lemma_check(*p).passed]
    return not failed, f"uniform after one round for {pairs}, failures {failed}"


def criterion_7():
    checked = bad = 0
    for n in range(2, 8):
        for m in (1, 2):
            if m >= n:
                continue
            for r in range(m, n - m + 1, 2):
                expected = Fraction(numerics.catalan_triangle((r + m) // 2 - 1, (r - m) // 2), 2**r)
                for policy in ("wl", "random"):
                    checked += 1
                    bad += census.probability_r_round(n, m, r, policy, jobs=JOBS) != expected
    points = [
        census.probability_k_passthrough(4, 1, 2, policy) == Fraction(15, 24) == Fraction(5, 8)
        for policy in ("wl", "random")
    ]
    points += [census.probability_r_round(4, 1, 3, policy) == Fraction(1, 8) for policy in ("wl", "random")]
    ok = bad == 0 and all(points)
    return ok, f"{checked} R-round probabilities, {bad} mismatches; 5/8 and 1/8 anchors {all(points)}"


def criterion_8():
    cases = [
        ((4, 1, 2), Fraction(5, 8)),
        ((8, 1, 2), Fraction(5, 8)),
        ((8, 1, 3), Fraction(89, 128)),
        ((8, 2, 2), Fraction(25, 64)),
    ]
    wrong = []
    for (n, m, k), expected in cases:
        assert numerics.p_k(k) ** m == expected
        for policy in ("wl", "random"):
            got = census.probability_k_passthrough(n, m, k, policy, jobs=JOBS)
            if got != expected:
                wrong.append((n, m, k, policy, str(got)))
    return not wrong, f"8 k-passthrough probabilities, wrong: {wrong}"


def criterion_9():
    bad = [(m, k) for m in range(1, 6) for k in range(9)
           if len(set(numerics.sum_product_identity_check(m, k))) != 1]
    return not bad, f"sum-product identity for m<=5, k<=8, failures {bad}"


def criterion_10():
    checked = bad = 0
    for k in range(1, 5):
        tally = census.wl_sequence_census(2 * k, 1, JOBS)
        for seq in winloss.enumerate_sequences_rounds(1, 2 * k - 1):
            checked += 1
            bad += posets.count_states_wl(seq) != tally.get(seq.letters, 0)
    seq = parse_sequence("W/LL")
    states = {str(s) for s in census.states_matching_wl(seq, 4)}
    anchor = posets.count_states_wl(seq) == 3 and states == {"2|134", "2|143", "3|142"}
    return bad == 0 and anchor, f"{checked} WL state counts, {bad} mismatches; W/LL -> {sorted(states)}"


def criterion_11():
    rng = random.Random(20240601)
    bad = 0
    for _ in range(200):
        size = rng.randint(1, 9)
        children = {}
        for v in range(1, size):
            children.setdefault(rng.randrange(v), []).append(v)
        tree = posets.HookedTreePoset(0, {p: tuple(c) for p, c in children.items()})
        bad += posets.ruskey_count(tree) != posets.linear_extensions_bruteforce(tree.to_poset())
    return bad == 0, f"200 seeded random tree posets (<=9 vertices), {bad} mismatches"


def criterion_12():
    checked = bad = 0
    for k in range(1, 4):
        tally = census.random_necessary_census(2 * k, JOBS)
        for seq in winloss.enumerate_sequences_rounds(1, 2 * k - 1):
            closed = posets.count_states_random_necessary(seq)
            oracle = posets.linear_extensions_bruteforce(posets.build_random_poset(seq))
            checked += 1
            bad += not (closed == oracle == tally.get(seq.letters, 0))
    seq = parse_sequence("W/LL")
    states = {str(s) for s in census.states_necessarily_random(seq, 4)}
    anchor = posets.count_states_random_necessary(seq) == 2 and states == {"2|143", "2|134"}
    return bad == 0 and anchor, f"{checked} random-necessary counts, {bad} mismatches; W/LL -> {sorted(states)}"


def criterion_13():
    rows = numerics.p_k_growth_check(30)
    ok = len(rows) == 29 and all(all(row[1:]) for row in rows)
    return ok, f"P_k increasing, below 1, step identity exact for k=1..30 ({len(rows)} steps)"


CRITERIA = [
    criterion_1, criterion_2, criterion_3, criterion_4, criterion_5, criterion_6, criterion_7,
    criterion_8, criterion_9, criterion_10, criterion_11, criterion_12, criterion_13,
]


@pytest.mark.parametrize("number", range(1, 14))
def test_criterion(number):
    passed, detail = CRITERIA[number - 1]()
    ACCEPTANCE_LINES.append((number, passed, detail))
    print(f"criterion {number:2d}: {'PASS' if passed else 'FAIL'}  {detail}")
    assert passed, detail


if __name__ == "__main__":
    for i, check in enumerate(CRITERIA, start=1):
        passed, detail = check()
        print(f"criterion {i:2d}: {'PASS' if passed else 'FAIL'}  {detail}")
