"""Exhaustive enumeration over every initial state of a small deck.

All results are exact: counts are integers and probabilities are
``Fraction`` ratios over the ``n!`` states with a given number of cards for
Alice. The state space is sharded by permutation prefix; shards are
independent and their tallies merge by addition, so ``jobs`` never changes a
result.
"""

from __future__ import annotations

import itertools
import math
from collections import Counter, defaultdict
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache, partial
from typing import Callable, Iterator

from .engine import (
    GameState,
    Outcome,
    Putback,
    enumerate_random_branches,
    play_wl,
)
from .winloss import WinLossSequence

__all__ = [
    "CensusError",
    "all_states",
    "shard_prefixes",
    "round_distribution",
    "probability_r_round",
    "probability_k_passthrough",
    "UniformReport",
    "uniform_lemma_check",
    "wl_sequence_census",
    "states_matching_wl",
    "necessary_sequence",
    "random_necessary_census",
    "states_necessarily_random",
]


class CensusError(AssertionError):
    """An exhaustive run contradicted a guarantee the engine relies on."""


def shard_prefixes(n: int) -> list[tuple[int, ...]]:
    """Shard keys: every ordered choice of the first ``ceil(n/2)`` cards."""
    return list(itertools.permutations(range(1, n + 1), (n + 1) // 2))


def all_states(n: int, m: int, prefix: tuple[int, ...] = ()) -> Iterator[GameState]:
    """Every ``m``-card state on ``n`` cards in lexicographic order of the
    underlying permutation, optionally restricted to one prefix."""
    if not 0 < m < n:
        raise ValueError(f"need 0 < m < n, got m={m}, n={n}")
    rest = sorted(set(range(1, n + 1)) - set(prefix))
    for tail in itertools.permutations(rest):
        perm = prefix + tail
        yield GameState(perm[:m], perm[m:])


def _traces(state: GameState, policy: Putback, horizon: int):
    if policy is Putback.WL:
        return [play_wl(state, horizon)]
    return enumerate_random_branches(state, horizon)


def _merge(parts) -> dict:
    total: dict = defaultdict(int)
    for part in parts:
        for key, value in part.items():
            total[key] += value
    return dict(total)


def _run(n: int, m: int, shard_fn: Callable[[tuple[int, ...]], dict], jobs: int) -> dict:
    prefixes = shard_prefixes(n)
    if jobs <= 1:
        return _merge(shard_fn(p) for p in prefixes)
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return _merge(pool.map(shard_fn, prefixes, chunksize=max(1, len(prefixes) // (4 * jobs))))


def _rounds_shard(
    n: int, m: int, policy: Putback, horizon: int, prefix: tuple[int, ...]
) -> dict[int, Fraction]:
    mass: dict[int, Fraction] = defaultdict(Fraction)
    for state in all_states(n, m, prefix):
        for t in _traces(state, policy, horizon):
            if t.outcome is Outcome.ALICE_LOST:
                rounds = len(t.rounds)
                if n >= m + rounds and not t.single_use:
                    raise CensusError(f"{state}: {rounds}-round game is not single-use")
                mass[rounds] += t.weight
    return mass


@lru_cache(maxsize=None)
def round_distribution(
    n: int, m: int, policy: Putback | str, horizon: int | None = None, jobs: int = 1
) -> dict[int, Fraction]:
    """Probability that a uniformly random ``m``-card state is ``R``-round,
    for every ``R <= horizon`` (default ``n - m``)."""
    policy = Putback(policy)
    if horizon is None:
        horizon = n - m
    mass = _run(n, m, partial(_rounds_shard, n, m, policy, horizon), jobs)
    total = math.factorial(n)
    return {r: Fraction(v) / total for r, v in sorted(mass.items())}


def probability_r_round(
    n: int, m: int, rounds: int, policy: Putback | str, jobs: int = 1, strict: bool = True
) -> Fraction:
    """Exact probability that a random ``m``-card game ends in exactly
    ``rounds`` rounds. With ``strict`` the deck must satisfy ``n >= m + rounds``
    so that such games are single-use."""
    if strict and n < m + rounds:
        raise ValueError(f"n={n} < m+R={m + rounds}: single-use not guaranteed")
    if rounds < m or (rounds - m) % 2:
        return Fraction(0)
    dist = round_distribution(n, m, Putback(policy), n - m if strict else rounds, jobs)
    return dist.get(rounds, Fraction(0))


def _passthrough_shard(
    n: int, m: int, k: int, policy: Putback, guaranteed: bool, prefix: tuple[int, ...]
) -> dict[str, Fraction]:
    horizon = m * (2**k - 1)
    mass: dict[str, Fraction] = defaultdict(Fraction)
    for state in all_states(n, m, prefix):
        for t in _traces(state, policy, horizon):
            if t.outcome is Outcome.ALICE_LOST and len(t.alice_passthrough_boundaries) <= k:
                if guaranteed and not t.single_use:
                    raise CensusError(f"{state}: {k}-passthrough game is not single-use")
                mass["hit"] += t.weight
    return mass


def probability_k_passthrough(
    n: int, m: int, k: int, policy: Putback | str, jobs: int = 1, strict: bool = True
) -> Fraction:
    """Exact probability that a random ``m``-card game ends within ``k``
    passthroughs of Alice's hand. With ``strict`` the deck must satisfy
    ``n >= 2^k m``."""
    guaranteed = n >= 2**k * m
    if strict and not guaranteed:
        raise ValueError(f"n={n} < 2^k m={2**k * m}: single-use not guaranteed")
    mass = _run(n, m, partial(_passthrough_shard, n, m, k, Putback(policy), guaranteed), jobs)
    return Fraction(mass.get("hit", 0)) / math.factorial(n)


@dataclass
class UniformReport:
    n: int
    m: int
    win_mass: Fraction
    loss_mass: Fraction
    win_distribution: dict = field(repr=False)
    loss_distribution: dict = field(repr=False)
    win_uniform: bool
    loss_uniform: bool

    @property
    def passed(self) -> bool:
        half = Fraction(1, 2)
        return (
            self.win_mass == half
            and self.loss_mass == half
            and self.win_uniform
            and self.loss_uniform
        )


def uniform_lemma_check(n: int, m: int) -> UniformReport:
    """Push the uniform distribution on ``m``-card states through one
    random-putback round (both players randomize) and test that each side
    lands uniformly on all ``(m+1)``- or ``(m-1)``-card states."""
    start = Fraction(1, math.factorial(n))
    win: dict[GameState, Fraction] = defaultdict(Fraction)
    loss: dict[GameState, Fraction] = defaultdict(Fraction)
    for state in all_states(n, m):
        x, y = state.alice[0], state.bob[0]
        hi, lo = max(x, y), min(x, y)
        for order in ((hi, lo), (lo, hi)):
            if x > y:
                win[GameState(state.alice[1:] + order, state.bob[1:])] += start / 2
            else:
                loss[GameState(state.alice[1:], state.bob[1:] + order)] += start / 2
    win_mass, loss_mass = sum(win.values(), Fraction(0)), sum(loss.values(), Fraction(0))

    def uniform(dist: dict, mass: Fraction, cards: int) -> bool:
        target = mass / math.factorial(n)
        everything = {
            GameState(p[:cards], p[cards:])
            for p in itertools.permutations(range(1, n + 1))
        }
        return set(dist) == everything and all(v == target for v in dist.values())

    return UniformReport(
        n,
        m,
        win_mass,
        loss_mass,
        dict(win),
        dict(loss),
        uniform(win, win_mass, m + 1),
        uniform(loss, loss_mass, m - 1),
    )


def _wl_sequence_shard(n: int, m: int, horizon: int, prefix: tuple[int, ...]) -> dict[str, int]:
    tally: Counter = Counter()
    for state in all_states(n, m, prefix):
        t = play_wl(state, horizon)
        if t.outcome is Outcome.ALICE_LOST:
            tally[t.letters] += 1
    return tally


@lru_cache(maxsize=None)
def wl_sequence_census(n: int, m: int, jobs: int = 1) -> dict[str, int]:
    """For every win-loss sequence (unstylized letters), the number of
    ``m``-card states on ``n`` cards whose WL-putback game follows it, among
    games of at most ``n - m`` rounds."""
    return _run(n, m, partial(_wl_sequence_shard, n, m, n - m), jobs)


def states_matching_wl(seq: WinLossSequence, n: int) -> list[GameState]:
    """Initial states whose WL-putback game follows ``seq`` exactly."""
    out = []
    for state in all_states(n, seq.m):
        t = play_wl(state, seq.rounds)
        if t.outcome is Outcome.ALICE_LOST and t.letters == seq.letters:
            out.append(state)
    return out


def necessary_sequence(state: GameState, horizon: int | None = None) -> str | None:
    """The letters every random-putback branch follows, or ``None`` when
    branches disagree or some branch has Alice not losing within ``horizon``
    rounds (default ``|bob|``, the single-use limit)."""
    if horizon is None:
        horizon = len(state.bob)
    letters = None
    for t in enumerate_random_branches(state, horizon):
        if t.outcome is not Outcome.ALICE_LOST:
            return None
        if letters is None:
            letters = t.letters
        elif t.letters != letters:
            return None
    return letters


def _necessary_shard(n: int, prefix: tuple[int, ...]) -> dict[str, int]:
    tally: Counter = Counter()
    for state in all_states(n, 1, prefix):
        letters = necessary_sequence(state)
        if letters is not None:
            tally[letters] += 1
    return tally


@lru_cache(maxsize=None)
def random_necessary_census(n: int, jobs: int = 1) -> dict[str, int]:
    """For each sequence, the number of unicard states on ``n`` cards that
    follow it under every random-putback branch."""
    return _run(n, 1, partial(_necessary_shard, n), jobs)


def states_necessarily_random(seq: WinLossSequence, n: int) -> list[GameState]:
    if seq.m != 1:
        raise ValueError("necessary classes are defined for unicard sequences")
    return [s for s in all_states(n, 1) if necessary_sequence(s) == seq.letters]
