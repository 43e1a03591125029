"""Posets on card slots and the state counts they give.

Cards are handled symbolically: slot 0 is Alice's initial card ``a`` and
slot ``i`` is the ``i``-th card of Bob's hand. In a single-use game Bob
never replays a won card, so the slot Bob plays in round ``i`` is always
``m - 1 + i`` and every comparison a sequence forces is known up front.
A state realizes the sequence exactly when its card values are a linear
extension of the forced order.
"""

from __future__ import annotations

import math
import string
from collections import defaultdict, deque
from dataclasses import dataclass
from functools import cache
from typing import Hashable, Mapping

from .engine import GameState
from .trees import seq_to_tree
from .winloss import WinLossSequence, split_blocks

__all__ = [
    "PosetError",
    "Poset",
    "HookedTreePoset",
    "slot_name",
    "linear_extensions_bruteforce",
    "ruskey_count",
    "wl_poset",
    "wl_tree_component",
    "count_states_wl",
    "count_states_wl_mcard",
    "build_random_poset",
    "random_bottom_tree",
    "count_states_random_necessary",
    "realize_wl",
]

BRUTEFORCE_LIMIT = 10


class PosetError(ValueError):
    pass


def slot_name(slot: int) -> str:
    """``0 -> 'a'``, ``1 -> 'b'``, ...; past ``z`` the slot number is used."""
    if 0 <= slot < 26:
        return string.ascii_lowercase[slot]
    return f"s{slot}"


@dataclass(frozen=True)
class Poset:
    """Finite poset given by its cover relation, as ``(greater, lesser)``
    pairs. ``dashed`` marks covers drawn dashed in diagrams."""

    elements: tuple[Hashable, ...]
    covers: tuple[tuple[Hashable, Hashable], ...]
    dashed: frozenset = frozenset()

    def __post_init__(self) -> None:
        elems = set(self.elements)
        if len(elems) != len(self.elements):
            raise PosetError("duplicate element")
        for hi, lo in self.covers:
            if hi not in elems or lo not in elems:
                raise PosetError(f"cover {(hi, lo)} uses an unknown element")
        below = self._below()
        for x in self.elements:
            if x in below[x]:
                raise PosetError(f"cycle through {x!r}")
        # Transitively reduced: no cover is implied by a longer chain.
        for hi, lo in self.covers:
            others = [c for h, c in self.covers if h == hi and c != lo]
            if any(lo in below[c] for c in others):
                raise PosetError(f"cover {(hi, lo)} is implied by transitivity")
        if len(set(self.covers)) != len(self.covers):
            raise PosetError("repeated cover")

    def _below(self) -> dict:
        children = defaultdict(list)
        for hi, lo in self.covers:
            children[hi].append(lo)
        below: dict = {}
        for x in self.elements:
            seen, stack = set(), list(children[x])
            while stack:
                y = stack.pop()
                if y not in seen:
                    seen.add(y)
                    stack.extend(children[y])
            below[x] = seen
        return below

    def strictly_below(self) -> dict:
        return self._below()

    def __len__(self) -> int:
        return len(self.elements)

    def is_extension(self, values: Mapping[Hashable, int]) -> bool:
        return all(values[hi] > values[lo] for hi, lo in self.covers)


@dataclass(frozen=True)
class HookedTreePoset:
    """Rooted tree read as a poset with the root greatest."""

    root: Hashable
    children: Mapping[Hashable, tuple[Hashable, ...]]

    def vertices(self) -> list:
        out, queue = [], deque([self.root])
        while queue:
            v = queue.popleft()
            out.append(v)
            queue.extend(self.children.get(v, ()))
        return out

    def hooks(self) -> dict:
        """``h(v)``: size of the subtree at ``v``."""
        h: dict = {}
        for v in reversed(self.vertices()):
            h[v] = 1 + sum(h[c] for c in self.children.get(v, ()))
        return h

    def to_poset(self) -> Poset:
        covers = tuple((v, c) for v in self.vertices() for c in self.children.get(v, ()))
        return Poset(tuple(self.vertices()), covers)

    def __len__(self) -> int:
        return len(self.vertices())


def linear_extensions_bruteforce(poset: Poset) -> int:
    """Count order-preserving bijections onto ``1..n`` directly.

    Values are handed out from the top: the largest remaining value may go to
    any remaining element with no remaining element above it. Counts are
    memoized on the set of remaining elements.
    """
    n = len(poset)
    if n > BRUTEFORCE_LIMIT:
        raise PosetError(f"brute force is limited to {BRUTEFORCE_LIMIT} elements, got {n}")
    index = {e: i for i, e in enumerate(poset.elements)}
    above_mask = [0] * n
    for hi, lo in poset.covers:
        above_mask[index[lo]] |= 1 << index[hi]

    @cache
    def count(remaining: int) -> int:
        if remaining == 0:
            return 1
        total = 0
        for i in range(n):
            bit = 1 << i
            if remaining & bit and not above_mask[i] & remaining:
                total += count(remaining & ~bit)
        return total

    return count((1 << n) - 1)


def ruskey_count(tree: HookedTreePoset) -> int:
    """Linear extensions of a tree poset: ``n! / prod h(v)``."""
    hooks = tree.hooks()
    return math.factorial(len(hooks)) // math.prod(hooks.values())


def _play_symbolic(seq: WinLossSequence) -> list[tuple[int, int, bool]]:
    """Rounds of ``seq`` under WL-putback as ``(alice_slot, bob_slot, alice_won)``."""
    hand = deque(range(seq.m))
    rounds = []
    for i, ch in enumerate(seq.letters, start=1):
        x, y = hand.popleft(), seq.m - 1 + i
        won = ch == "W"
        rounds.append((x, y, won))
        if won:
            hand.extend((x, y))
    return rounds


def wl_poset(seq: WinLossSequence) -> Poset:
    """Winner-to-loser poset of a WL-putback game over slots
    ``0..m+R-1``; covers where Bob's card won are dashed."""
    covers, dashed = [], set()
    for x, y, won in _play_symbolic(seq):
        if won:
            covers.append((x, y))
        else:
            covers.append((y, x))
            dashed.add((y, x))
    return Poset(tuple(range(seq.m + seq.rounds)), tuple(covers), frozenset(dashed))


def wl_tree_component(seq: WinLossSequence) -> HookedTreePoset:
    """Tree formed by the cards Alice ever holds, ordered by who beat whom."""
    if seq.m != 1:
        raise PosetError(f"wl_tree_component needs a unicard sequence, got m={seq.m}")
    children: dict[int, list[int]] = defaultdict(list)
    for x, y, won in _play_symbolic(seq):
        if won:
            children[x].append(y)
    return HookedTreePoset(0, {k: tuple(v) for k, v in children.items()})


def count_states_wl(seq: WinLossSequence) -> int:
    """Unicard states on ``2k`` cards (``k`` losses) whose WL-putback game
    follows ``seq``: ``(2k)! / (2^k prod h)``."""
    tree = wl_tree_component(seq)
    k = seq.losses
    hooks = tree.hooks()
    assert len(hooks) == k
    return math.factorial(2 * k) // (2**k * math.prod(hooks.values()))


def count_states_wl_mcard(seq: WinLossSequence) -> int:
    """States on ``m + R`` cards whose WL-putback game follows ``seq``.

    Each block has its own relative count; the deck's values are split among
    blocks of ``2 k_i`` cards in ``n! / prod (2 k_i)!`` ways.
    """
    blocks = split_blocks(seq)
    n = seq.m + seq.rounds
    total = math.factorial(n)
    for block in blocks:
        size = 2 * block.losses
        total = total * count_states_wl(block) // math.factorial(size)
    return total


def random_bottom_tree(seq: WinLossSequence) -> HookedTreePoset:
    """Card ``a`` above the won cards, which keep the shape of the tree's
    W-nodes."""
    if seq.m != 1:
        raise PosetError(f"random-putback poset needs a unicard sequence, got m={seq.m}")
    root = seq_to_tree(seq)
    # Round i (level order) is played by Bob's slot i.
    slot = {node: i for i, node in enumerate(root.level_order(), start=1)}
    children: dict[int, tuple[int, ...]] = {}
    if root.letter == "W":
        children[0] = (slot[root],)
    for node in root.level_order():
        if node.letter == "W":
            kids = tuple(slot[c] for c in node.children() if c.letter == "W")
            if kids:
                children[slot[node]] = kids
    return HookedTreePoset(0, children)


def build_random_poset(seq: WinLossSequence) -> Poset:
    """Order forced on a unicard state that must follow ``seq`` under every
    random-putback branch: Bob's cards from losing rounds sit above ``a``;
    the W-structure sits below. The top-layer covers are dashed."""
    bottom = random_bottom_tree(seq)
    root = seq_to_tree(seq)
    top = [i for i, node in enumerate(root.level_order(), start=1) if node.is_leaf]
    covers = [(t, 0) for t in top]
    covers += list(bottom.to_poset().covers)
    elements = tuple(range(seq.rounds + 1))
    return Poset(elements, tuple(covers), frozenset((t, 0) for t in top))


def count_states_random_necessary(seq: WinLossSequence) -> int:
    """``(k!)^2 / prod h`` over the bottom tree of the random poset."""
    bottom = random_bottom_tree(seq)
    k = seq.losses
    hooks = bottom.hooks()
    assert len(hooks) == k
    return math.factorial(k) ** 2 // math.prod(hooks.values())


def realize_wl(seq: WinLossSequence) -> GameState:
    """Some state on ``m + R`` cards whose WL-putback game follows ``seq``.

    Values come from a topological order of the winner-to-loser poset,
    smallest first.
    """
    poset = wl_poset(seq)
    above = defaultdict(int)
    below = defaultdict(list)
    for hi, lo in poset.covers:
        above[lo] += 1
        below[hi].append(lo)
    # Kahn's algorithm from the top; the first element out gets the largest value.
    ready = sorted(e for e in poset.elements if above[e] == 0)
    order = []
    while ready:
        e = ready.pop(0)
        order.append(e)
        for lo in below[e]:
            above[lo] -= 1
            if above[lo] == 0:
                ready.append(lo)
    n = len(poset)
    value = {e: n - i for i, e in enumerate(order)}
    alice = tuple(value[s] for s in range(seq.m))
    bob = tuple(value[s] for s in range(seq.m, n))
    return GameState(alice, bob)
