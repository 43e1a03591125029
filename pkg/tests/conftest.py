import itertools

import pytest
from hypothesis import strategies as st

from singlewar.engine import GameState


@st.composite
def game_states(draw, max_n=8, min_m=1):
    n = draw(st.integers(min_value=min_m + 1, max_value=max_n))
    m = draw(st.integers(min_value=min_m, max_value=n - 1))
    perm = draw(st.permutations(range(1, n + 1)))
    return GameState(tuple(perm[:m]), tuple(perm[m:]))


def brute_sequences(m, length):
    """Every W/L word of the given length where Alice keeps at least one card
    until the last letter and holds none after it."""
    out = []
    for word in itertools.product("WL", repeat=length):
        cards, ok = m, True
        for i, ch in enumerate(word):
            cards += 1 if ch == "W" else -1
            if cards == 0 and i != length - 1:
                ok = False
                break
        if ok and cards == 0:
            out.append("".join(word))
    return out


@pytest.fixture
def figure_state():
    return GameState((2,), (1, 3))


def lettered_game(text):
    """A concrete WL game following ``text`` plus a map from card value to
    its slot letter (Alice's first card is ``a``, Bob's are ``b, c, ...``)."""
    from singlewar.engine import play_wl
    from singlewar.posets import realize_wl, slot_name
    from singlewar.winloss import parse_sequence

    seq = parse_sequence(text)
    state = realize_wl(seq)
    trace = play_wl(state, seq.rounds)
    assert trace.letters == seq.letters
    names = {card: slot_name(i) for i, card in enumerate(state.alice + state.bob)}
    return trace, names


# Filled by test_acceptance.py: one (number, passed, detail) per criterion.
ACCEPTANCE_LINES: list = []


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for number, passed, detail in sorted(ACCEPTANCE_LINES):
        status = "PASS" if passed else "FAIL"
        terminalreporter.write_line(f"criterion {number:2d}: {status}  {detail}")
