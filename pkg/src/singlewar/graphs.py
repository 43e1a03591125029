"""Game graphs: one vertex per card, one edge per round between the two
cards played.

For a single-use game the graph is a forest whose nontrivial trees are the
blocks, one per initial card of Alice. Orienting edges gives either the
winner-to-loser digraph (a poset on the cards) or the Alice-to-Bob digraph,
whose components from a given round on are the subblocks.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from enum import Enum

from .engine import GameTrace

__all__ = [
    "CycleError",
    "Orientation",
    "GameGraph",
    "GameDigraph",
    "build_game_graph",
    "forest_decomposition",
    "orient",
    "subblocks",
]


class CycleError(ValueError):
    """The game graph is not a forest (the game was not single-use)."""


class Orientation(str, Enum):
    WINNER_TO_LOSER = "winner"
    ALICE_TO_BOB = "alice"


@dataclass(frozen=True)
class GameGraph:
    """Undirected multigraph on cards ``1..n``.

    Edges are kept as a sorted tuple of ``(low, high)`` pairs, so two graphs
    compare equal exactly when their edge multisets agree.
    """

    n: int
    edges: tuple[tuple[int, int], ...]

    def __post_init__(self) -> None:
        canon = []
        for u, v in self.edges:
            if u == v:
                raise ValueError(f"self-loop on card {u}")
            if not (1 <= u <= self.n and 1 <= v <= self.n):
                raise ValueError(f"edge {(u, v)} outside cards 1..{self.n}")
            canon.append((min(u, v), max(u, v)))
        object.__setattr__(self, "edges", tuple(sorted(canon)))

    @property
    def vertices(self) -> range:
        return range(1, self.n + 1)

    def isolated(self) -> set[int]:
        touched = {c for e in self.edges for c in e}
        return set(self.vertices) - touched


@dataclass(frozen=True)
class GameDigraph:
    n: int
    edges: tuple[tuple[int, int], ...]
    mode: Orientation
    start_round: int = 1
    # Per edge: True when Alice's card won that round.
    alice_won: tuple[bool, ...] = ()
    # Alice's hand at start_round; the roots of the Alice-to-Bob trees.
    roots: tuple[int, ...] = ()

    def out_edges(self) -> dict[int, list[int]]:
        out: dict[int, list[int]] = defaultdict(list)
        for u, v in self.edges:
            out[u].append(v)
        return dict(out)

    def in_degree(self, card: int) -> int:
        return sum(1 for _, v in self.edges if v == card)


def build_game_graph(trace: GameTrace) -> GameGraph:
    return GameGraph(trace.initial.n, tuple((r.alice_card, r.bob_card) for r in trace.rounds))


def forest_decomposition(graph: GameGraph) -> tuple[list[frozenset[int]], set[int]]:
    """Split a forest into its nontrivial trees and its isolated cards.

    Trees are ordered by their smallest card. A repeated pairing counts as a
    cycle.
    """
    parent = {v: v for v in graph.vertices}

    def find(v: int) -> int:
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    for u, v in graph.edges:
        ru, rv = find(u), find(v)
        if ru == rv:
            raise CycleError(f"edge {(u, v)} closes a cycle")
        parent[ru] = rv

    groups: dict[int, set[int]] = defaultdict(set)
    for v in graph.vertices:
        groups[find(v)].add(v)
    isolated = graph.isolated()
    trees = [frozenset(g) for g in groups.values() if len(g) > 1]
    trees.sort(key=min)
    return trees, isolated


def orient(
    trace: GameTrace,
    mode: Orientation | str = Orientation.WINNER_TO_LOSER,
    start_round: int = 1,
) -> GameDigraph:
    """Directed game graph over rounds ``>= start_round``."""
    mode = Orientation(mode)
    if not 1 <= start_round <= len(trace.rounds) + 1:
        raise ValueError(f"start_round {start_round} outside 1..{len(trace.rounds) + 1}")
    rounds = trace.rounds[start_round - 1 :]
    if mode is Orientation.WINNER_TO_LOSER:
        edges = tuple((r.winning_card, r.losing_card) for r in rounds)
    else:
        edges = tuple((r.alice_card, r.bob_card) for r in rounds)
    return GameDigraph(
        trace.initial.n,
        edges,
        mode,
        start_round,
        tuple(r.alice_won for r in rounds),
        trace.state_before(start_round).alice,
    )


def subblocks(trace: GameTrace, start_round: int = 1) -> list[tuple[int, list[int]]]:
    """Partition rounds ``>= start_round`` by the card of Alice's hand at
    that round that induced them. Returned in hand order."""
    roots = trace.state_before(start_round).alice
    owner = {card: card for card in roots}
    members: dict[int, list[int]] = {card: [] for card in roots}
    for r in trace.rounds[start_round - 1 :]:
        root = owner[r.alice_card]
        members[root].append(r.index)
        owner[r.bob_card] = root
    return [(card, members[card]) for card in roots]
