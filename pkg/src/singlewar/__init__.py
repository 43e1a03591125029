"""Exact combinatorics of single-suit War: game play under WL and random
putback, win-loss sequences and trees, game graphs and posets, and
exhaustive censuses that check every closed-form count."""

from .engine import GameState, GameTrace, parse_state, format_state, play_wl, enumerate_random_branches
from .winloss import WinLossSequence, parse_sequence

__all__ = [
    "GameState",
    "GameTrace",
    "WinLossSequence",
    "enumerate_random_branches",
    "format_state",
    "parse_sequence",
    "parse_state",
    "play_wl",
]
__version__ = "0.1.0"
