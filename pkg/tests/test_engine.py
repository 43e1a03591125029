import json
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from singlewar.engine import (
    GameState,
    Outcome,
    StateError,
    classify,
    enumerate_random_branches,
    format_state,
    parse_state,
    play_random,
    play_wl,
    step,
)

from conftest import game_states


def naive_wl(alice, bob, limit):
    """Reference game with plain lists; returns letters, final hands and the
    round indices that close one of Alice's passthroughs."""
    alice, bob = list(alice), list(bob)
    letters, boundaries = [], []
    left_in_pass = len(alice)
    while alice and bob and len(letters) < limit:
        x, y = alice.pop(0), bob.pop(0)
        if x > y:
            alice += [x, y]
            letters.append("W")
        else:
            bob += [y, x]
            letters.append("L")
        left_in_pass -= 1
        if left_in_pass == 0:
            boundaries.append(len(letters))
            left_in_pass = len(alice)
    return "".join(letters), (tuple(alice), tuple(bob)), tuple(boundaries)


@settings(max_examples=300)
@given(game_states(max_n=9))
def test_wl_matches_reference_game(state):
    limit = 60
    t = play_wl(state, limit)
    letters, final, boundaries = naive_wl(state.alice, state.bob, limit)
    assert t.letters == letters
    assert (t.final.alice, t.final.bob) == final
    assert t.alice_passthrough_boundaries == boundaries


@given(game_states(max_n=9))
def test_cards_are_conserved(state):
    t = play_wl(state, 40)
    for s in t.states():
        assert sorted(s.alice + s.bob) == list(range(1, state.n + 1))


@given(game_states(max_n=8))
def test_single_use_means_bob_plays_only_his_initial_cards(state):
    t = play_wl(state)
    if t.outcome is not Outcome.ALICE_LOST:
        return
    fresh = all(r.bob_card == state.bob[r.index - 1] for r in t.rounds if r.index <= len(state.bob))
    assert t.single_use == (len(t.rounds) <= len(state.bob))
    if t.single_use:
        assert fresh


@settings(max_examples=100)
@given(game_states(max_n=7))
def test_branch_weights_sum_to_one(state):
    traces = enumerate_random_branches(state, 12)
    assert sum(t.weight for t in traces) == 1
    both = enumerate_random_branches(state, 8, branch_bob=True)
    assert sum(t.weight for t in both) == 1


@given(game_states(max_n=7), st.integers(0, 2**32))
def test_random_game_is_one_of_the_branches(state, seed):
    t = play_random(state, random.Random(seed), 12)
    branches = {(b.rounds, b.weight) for b in enumerate_random_branches(state, 12)}
    assert (t.rounds, t.weight) in branches


def test_same_seed_same_game():
    state = parse_state("3 7 | 1 2 4 5 6 8 9 10")
    a = play_random(state, random.Random(42), 50, branch_bob=True)
    b = play_random(state, random.Random(42), 50, branch_bob=True)
    assert a == b


def test_random_draws_one_bit_per_randomized_round():
    state = parse_state("4|1235")
    rng = random.Random(7)
    t = play_random(state, rng, 20)
    ref = random.Random(7)
    bits = [ref.getrandbits(1) for r in t.rounds if r.alice_won]
    for r, bit in zip([r for r in t.rounds if r.alice_won], bits):
        wl = (r.winning_card, r.losing_card)
        assert r.putback_order == (wl if bit == 0 else wl[::-1])
    assert rng.getstate() == ref.getstate()


def test_small_game_by_hand():
    t = play_wl(parse_state("2|13"))
    assert t.letters == "WLL"
    assert [r.putback_order for r in t.rounds] == [(2, 1), (3, 2), (3, 1)]
    assert t.final == GameState((), (2, 3, 1))
    assert t.outcome is Outcome.ALICE_LOST and not t.single_use


def test_step_orders():
    state = parse_state("2|13")
    nxt, rec = step(state)
    assert nxt == GameState((2, 1), (3,)) and rec.alice_won
    nxt, rec = step(state, winner_first=False)
    assert nxt == GameState((1, 2), (3,))


@pytest.mark.parametrize("text", ["2|13", "|123", "213|", "10 3 | 1 2 4 5 6 7 8 9"])
def test_parse_format_roundtrip(text):
    state = parse_state(text)
    assert format_state(state) == text


@given(game_states(max_n=12, min_m=0))
def test_parse_format_property(state):
    assert parse_state(format_state(state)) == state


@pytest.mark.parametrize("text", ["2|213", "2|14", "213", "2||13", "1x|2", "0|1"])
def test_bad_states(text):
    with pytest.raises(StateError):
        parse_state(text)


def test_compact_form_refuses_ten_cards():
    with pytest.raises(StateError):
        parse_state("1|2345678910")
    assert format_state(GameState((1,), tuple(range(2, 11)))) == "1 | 2 3 4 5 6 7 8 9 10"


def test_truncation_and_classify():
    t = play_wl(parse_state("3|12"), 1)
    assert t.outcome is Outcome.TRUNCATED
    with pytest.raises(ValueError):
        classify(t)
    t = play_wl(parse_state("1|23"))
    assert classify(t) == (1, 1, True)


def test_trace_json_schema():
    t = play_random(parse_state("2|134"), random.Random(0), 20)
    data = json.loads(json.dumps(t.to_json()))
    assert set(data) == {
        "initial", "final", "rounds", "alice_passthrough_boundaries",
        "outcome", "single_use", "weight",
    }
    for row in data["rounds"]:
        idx, a, b, winner, first, second = row
        assert winner in ("Alice", "Bob") and {first, second} == {a, b}
    assert Fraction(data["weight"]) > 0
