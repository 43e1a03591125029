"""Game states and play of single-suit War.

A state is written ``a_1 ... a_i | a_{i+1} ... a_n``: Alice's hand top to
bottom, a bar, then Bob's hand top to bottom. Each round both top cards are
revealed and the higher card's owner appends both cards to the bottom of
their hand, in an order fixed by the putback policy.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Callable, Iterator, Sequence

from .numerics import format_rational

__all__ = [
    "Player",
    "Outcome",
    "Putback",
    "StateError",
    "GameState",
    "RoundRecord",
    "GameTrace",
    "parse_state",
    "format_state",
    "step",
    "play_wl",
    "play_random",
    "enumerate_random_branches",
    "classify",
    "default_max_rounds",
]


class StateError(ValueError):
    """Raised for malformed or inconsistent state text or hands."""


class Player(str, Enum):
    ALICE = "Alice"
    BOB = "Bob"


class Outcome(str, Enum):
    ALICE_LOST = "AliceLost"
    BOB_LOST = "BobLost"
    TRUNCATED = "Truncated"


class Putback(str, Enum):
    WL = "wl"
    RANDOM = "random"


@dataclass(frozen=True)
class GameState:
    alice: tuple[int, ...]
    bob: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "alice", tuple(self.alice))
        object.__setattr__(self, "bob", tuple(self.bob))
        cards = self.alice + self.bob
        if len(set(cards)) != len(cards):
            raise StateError(f"duplicate card in {cards}")
        if set(cards) != set(range(1, len(cards) + 1)):
            raise StateError(f"cards must be exactly 1..{len(cards)}, got {sorted(cards)}")

    @property
    def n(self) -> int:
        return len(self.alice) + len(self.bob)

    @property
    def m(self) -> int:
        return len(self.alice)

    def __str__(self) -> str:
        return format_state(self)


@dataclass(frozen=True)
class RoundRecord:
    index: int
    alice_card: int
    bob_card: int
    winner: Player
    putback_order: tuple[int, int]

    @property
    def alice_won(self) -> bool:
        return self.winner is Player.ALICE

    @property
    def winning_card(self) -> int:
        return max(self.alice_card, self.bob_card)

    @property
    def losing_card(self) -> int:
        return min(self.alice_card, self.bob_card)

    def to_json(self) -> list:
        return [
            self.index,
            self.alice_card,
            self.bob_card,
            self.winner.value,
            self.putback_order[0],
            self.putback_order[1],
        ]


@dataclass(frozen=True)
class GameTrace:
    initial: GameState
    rounds: tuple[RoundRecord, ...]
    alice_passthrough_boundaries: tuple[int, ...]
    outcome: Outcome
    single_use: bool
    weight: Fraction = field(default=Fraction(1))

    @property
    def letters(self) -> str:
        """Round outcomes from Alice's point of view, e.g. ``"WLWLL"``."""
        return "".join("W" if r.alice_won else "L" for r in self.rounds)

    def states(self) -> Iterator[GameState]:
        """Yield the state before every round, then the final state."""
        alice, bob = list(self.initial.alice), list(self.initial.bob)
        yield self.initial
        for r in self.rounds:
            alice.pop(0)
            bob.pop(0)
            (alice if r.alice_won else bob).extend(r.putback_order)
            yield GameState(tuple(alice), tuple(bob))

    def state_before(self, round_index: int) -> GameState:
        if not 1 <= round_index <= len(self.rounds) + 1:
            raise IndexError(f"round {round_index} outside 1..{len(self.rounds) + 1}")
        for i, state in enumerate(self.states(), start=1):
            if i == round_index:
                return state
        raise AssertionError("unreachable")

    @property
    def final(self) -> GameState:
        return self.state_before(len(self.rounds) + 1)

    def to_json(self) -> dict:
        return {
            "initial": format_state(self.initial),
            "final": format_state(self.final),
            "rounds": [r.to_json() for r in self.rounds],
            "alice_passthrough_boundaries": list(self.alice_passthrough_boundaries),
            "outcome": self.outcome.value,
            "single_use": self.single_use,
            "weight": format_rational(self.weight),
        }


def _parse_tokens(side: str, compact: bool) -> tuple[int, ...]:
    if compact:
        tokens = list(side)
    else:
        tokens = side.split()
    cards = []
    for tok in tokens:
        if not tok.isdigit() or int(tok) < 1:
            raise StateError(f"malformed card token {tok!r}")
        cards.append(int(tok))
    return tuple(cards)


def parse_state(text: str) -> GameState:
    """Parse ``"2|13"`` (one digit per card) or ``"10 3 | 1 2 4 ..."``.

    Whitespace anywhere in the text selects the space-separated form.
    """
    if text.count("|") != 1:
        raise StateError(f"state needs exactly one '|': {text!r}")
    left, right = text.strip().split("|")
    compact = not any(ch.isspace() for ch in text.strip())
    state = GameState(_parse_tokens(left, compact), _parse_tokens(right, compact))
    if compact and state.n > 9:
        raise StateError("decks with more than 9 cards need space-separated cards")
    return state


def format_state(state: GameState) -> str:
    if state.n <= 9:
        return "".join(map(str, state.alice)) + "|" + "".join(map(str, state.bob))
    left = " ".join(map(str, state.alice))
    right = " ".join(map(str, state.bob))
    return f"{left} | {right}".strip()


def step(
    state: GameState, winner_first: bool = True, index: int = 1
) -> tuple[GameState, RoundRecord]:
    """Play one round. ``winner_first`` selects WL order for the round winner;
    ``False`` puts the losing card back first."""
    if not state.alice or not state.bob:
        raise StateError(f"cannot play a round from {format_state(state)}: a hand is empty")
    x, y = state.alice[0], state.bob[0]
    hi, lo = (x, y) if x > y else (y, x)
    order = (hi, lo) if winner_first else (lo, hi)
    if x > y:
        record = RoundRecord(index, x, y, Player.ALICE, order)
        nxt = GameState(state.alice[1:] + order, state.bob[1:])
    else:
        record = RoundRecord(index, x, y, Player.BOB, order)
        nxt = GameState(state.alice[1:], state.bob[1:] + order)
    return nxt, record


def default_max_rounds(n: int) -> int:
    return n * 2**n


# A chooser receives (winner, round index) and returns the putback orders to
# explore: True means winner card first.
Chooser = Callable[[Player, int], Sequence[bool]]


def _explore(
    initial: GameState, max_rounds: int, chooser: Chooser
) -> list[GameTrace]:
    traces: list[GameTrace] = []
    n_bob = len(initial.bob)

    # Frames: alice, bob, rounds, boundaries, countdown, wins, choices.
    stack = [(initial.alice, initial.bob, (), (), len(initial.alice), 0, 0)]
    while stack:
        alice, bob, rounds, boundaries, countdown, wins, choices = stack.pop()
        while True:
            if not alice or not bob or len(rounds) >= max_rounds:
                if not alice:
                    outcome = Outcome.ALICE_LOST
                elif not bob:
                    outcome = Outcome.BOB_LOST
                else:
                    outcome = Outcome.TRUNCATED
                traces.append(
                    GameTrace(
                        initial,
                        rounds,
                        boundaries,
                        outcome,
                        outcome is Outcome.ALICE_LOST and len(rounds) <= n_bob,
                        Fraction(1, 2**choices),
                    )
                )
                break
            x, y = alice[0], bob[0]
            index = len(rounds) + 1
            alice_won = x > y
            winner = Player.ALICE if alice_won else Player.BOB
            hi, lo = (x, y) if alice_won else (y, x)
            countdown -= 1
            wins += alice_won
            if countdown == 0:
                boundaries = boundaries + (index,)
                countdown, wins = 2 * wins, 0
            orders = chooser(winner, index)
            branching = len(orders) > 1
            successors = []
            for winner_first in orders:
                order = (hi, lo) if winner_first else (lo, hi)
                record = RoundRecord(index, x, y, winner, order)
                if alice_won:
                    nxt = (alice[1:] + order, bob[1:])
                else:
                    nxt = (alice[1:], bob[1:] + order)
                successors.append(
                    (*nxt, rounds + (record,), boundaries, countdown, wins, choices + branching)
                )
            # Depth-first with WL order explored first.
            stack.extend(reversed(successors[1:]))
            alice, bob, rounds, boundaries, countdown, wins, choices = successors[0]
    return traces


def _wl_only(winner: Player, index: int) -> Sequence[bool]:
    return (True,)


def play_wl(state: GameState, max_rounds: int | None = None) -> GameTrace:
    """Play with WL-putback for both players until a hand empties or
    ``max_rounds`` rounds have been played (outcome ``Truncated``)."""
    if max_rounds is None:
        max_rounds = default_max_rounds(state.n)
    if max_rounds < 1:
        raise ValueError("max_rounds must be >= 1")
    (trace,) = _explore(state, max_rounds, _wl_only)
    return trace


def play_random(
    state: GameState,
    rng: random.Random,
    max_rounds: int | None = None,
    branch_bob: bool = False,
) -> GameTrace:
    """Play one random-putback game. Each randomized round draws one bit,
    ``rng.getrandbits(1)``; 0 keeps WL order, 1 reverses it.

    The weight of the returned trace is the probability of the branch taken.
    """
    if max_rounds is None:
        max_rounds = default_max_rounds(state.n)

    def choose(winner: Player, index: int) -> Sequence[bool]:
        if winner is Player.ALICE or branch_bob:
            return (rng.getrandbits(1) == 0,)
        return (True,)

    (trace,) = _explore(state, max_rounds, choose)
    randomized = sum(1 for r in trace.rounds if r.alice_won or branch_bob)
    return GameTrace(
        trace.initial,
        trace.rounds,
        trace.alice_passthrough_boundaries,
        trace.outcome,
        trace.single_use,
        Fraction(1, 2**randomized),
    )


def enumerate_random_branches(
    state: GameState, max_rounds: int | None = None, branch_bob: bool = False
) -> list[GameTrace]:
    """Every game reachable under random putback, one trace per branch.

    Only rounds Alice wins branch unless ``branch_bob`` is set: cards Bob wins
    sit behind his initial hand, so their order cannot affect any single-use
    classification. Weights are exact and sum to 1.
    """
    if max_rounds is None:
        max_rounds = default_max_rounds(state.n)
    both = (True, False)

    def choose(winner: Player, index: int) -> Sequence[bool]:
        if winner is Player.ALICE or branch_bob:
            return both
        return (True,)

    return _explore(state, max_rounds, choose)


def classify(trace: GameTrace) -> tuple[int, int, bool]:
    """``(rounds, passthroughs, single_use)`` of a game Alice lost."""
    if trace.outcome is not Outcome.ALICE_LOST:
        raise ValueError(f"classify needs a game Alice lost, got {trace.outcome.value}")
    return len(trace.rounds), len(trace.alice_passthrough_boundaries), trace.single_use
