"""Win-loss binary trees.

Each round of a unicard game is a node. A loss is a leaf; a win has two
children, the next rounds played by the card put back first (left) and the
card put back second (right). Read level by level, the tree spells the
win-loss sequence with one level per passthrough.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Iterator, Optional, Sequence

from .engine import GameTrace, Outcome
from .graphs import GameGraph
from .winloss import WinLossSequence

__all__ = [
    "TreeNode",
    "LabeledWinLossTree",
    "LabelError",
    "seq_to_tree",
    "tree_to_seq",
    "full_binary_trees",
    "label_tree",
    "right_parent",
    "tree_to_game_graph",
]


class LabelError(ValueError):
    pass


@dataclass(eq=False)
class TreeNode:
    letter: str
    left: Optional["TreeNode"] = None
    right: Optional["TreeNode"] = None
    alice_card: Optional[int] = None
    bob_card: Optional[int] = None
    round_index: Optional[int] = None
    synthetic: bool = False

    @property
    def is_leaf(self) -> bool:
        return self.left is None

    def children(self) -> tuple["TreeNode", ...]:
        return () if self.left is None else (self.left, self.right)

    def level_order(self) -> Iterator["TreeNode"]:
        queue = deque([self])
        while queue:
            node = queue.popleft()
            yield node
            queue.extend(node.children())

    def height(self) -> int:
        return 1 + max((c.height() for c in self.children()), default=0)

    def size(self) -> int:
        return sum(1 for _ in self.level_order())

    def shape(self) -> tuple:
        """Nested tuples: ``()`` for a leaf, ``(left, right)`` otherwise."""
        return () if self.is_leaf else (self.left.shape(), self.right.shape())

    def label(self) -> str:
        return f"{self.letter}({self.alice_card}/{self.bob_card})"


@dataclass(eq=False)
class LabeledWinLossTree:
    root: TreeNode
    root_card: int
    parents: dict = field(init=False, repr=False)

    def __post_init__(self) -> None:
        self.parents = {}
        for node in self.root.level_order():
            for child in node.children():
                self.parents[child] = node

    def nodes(self) -> list[TreeNode]:
        return list(self.root.level_order())


def seq_to_tree(seq: WinLossSequence) -> TreeNode:
    """Build the tree level by level, each passthrough filling one level."""
    if seq.m != 1:
        raise ValueError(f"seq_to_tree needs a unicard sequence, got m={seq.m}")
    letters = iter(seq.letters)
    root = TreeNode(next(letters))
    pending = deque([root])
    while pending:
        node = pending.popleft()
        if node.letter == "W":
            node.left, node.right = TreeNode(next(letters)), TreeNode(next(letters))
            pending.extend((node.left, node.right))
    return root


def tree_to_seq(root: TreeNode) -> WinLossSequence:
    return WinLossSequence("".join("L" if n.is_leaf else "W" for n in root.level_order()), 1)


def full_binary_trees(max_height: int) -> list[TreeNode]:
    """Every full binary tree of height at most ``max_height``."""
    if max_height < 1:
        return []
    smaller = full_binary_trees(max_height - 1)
    out = [TreeNode("L")]
    for left in smaller:
        for right in smaller:
            out.append(TreeNode("W", _copy(left), _copy(right)))
    return out


def _copy(node: TreeNode) -> TreeNode:
    if node.is_leaf:
        return TreeNode(node.letter)
    return TreeNode(node.letter, _copy(node.left), _copy(node.right))


def label_tree(trace: GameTrace) -> list[LabeledWinLossTree]:
    """One card-labeled tree per block of a single-use game.

    A card in Alice's hand remembers the tree slot its next round fills; the
    round's putback order decides which won card goes to the left slot.
    """
    if trace.outcome is not Outcome.ALICE_LOST or not trace.single_use:
        raise LabelError("label_tree needs a single-use game that Alice lost")
    roots = [TreeNode("?") for _ in trace.initial.alice]
    slot = dict(zip(trace.initial.alice, roots))
    for r in trace.rounds:
        node = slot.pop(r.alice_card)
        node.alice_card, node.bob_card, node.round_index = r.alice_card, r.bob_card, r.index
        if r.alice_won:
            node.letter = "W"
            node.left, node.right = TreeNode("?"), TreeNode("?")
            first, second = r.putback_order
            slot[first], slot[second] = node.left, node.right
        else:
            node.letter = "L"
    if slot:
        raise LabelError("trace left cards in Alice's hand")
    return [LabeledWinLossTree(root, card) for root, card in zip(roots, trace.initial.alice)]


def right_parent(tree: LabeledWinLossTree, node: TreeNode) -> Optional[TreeNode]:
    """Parent of the nearest ancestor of ``node`` (itself included) that is a
    right child, or ``None`` when every ancestor is a left child or the root."""
    current = node
    while current in tree.parents:
        parent = tree.parents[current]
        if parent.right is current:
            return parent
        current = parent
    return None


def tree_to_game_graph(
    trees: Sequence[LabeledWinLossTree], roots: Sequence[int], n: int
) -> GameGraph:
    """Rebuild the game graph of a WL-putback game from its labeled trees.

    Each block gets a synthetic node carrying its root card with the true
    root as right child; then every node is joined, by Bob's card, to its
    right parent. Raises :class:`LabelError` when a node's Alice card is not
    the card that construction predicts.
    """
    if len(trees) != len(roots):
        raise LabelError("need one root card per tree")
    edges = []
    for tree, root_card in zip(trees, roots):
        anchor = TreeNode("W", TreeNode("L", synthetic=True), tree.root, None, root_card, synthetic=True)
        extended = LabeledWinLossTree(anchor, root_card)
        for node in tree.root.level_order():
            parent = right_parent(extended, node)
            expected = parent.bob_card
            if node.alice_card != expected:
                raise LabelError(
                    f"round {node.round_index}: Alice played {node.alice_card}, "
                    f"right parent predicts {expected}"
                )
            edges.append((node.bob_card, expected))
    return GameGraph(n, tuple(edges))
