"""Graphviz DOT text for trees, game graphs and posets."""

from __future__ import annotations

from collections import defaultdict
from typing import Callable, Hashable, Sequence

from .graphs import GameDigraph, GameGraph, Orientation
from .posets import Poset, slot_name
from .trees import LabeledWinLossTree, TreeNode

__all__ = ["tree_to_dot", "graph_to_dot", "digraph_to_dot", "poset_to_dot"]


def _quote(text: str) -> str:
    return '"' + text.replace('"', r"\"") + '"'


def tree_to_dot(trees: Sequence[LabeledWinLossTree | TreeNode], name: str = "winloss") -> str:
    """Labeled nodes read ``W(a/b)``: Alice's card, then Bob's."""
    lines = [f"digraph {name} {{", "  node [shape=plaintext];"]
    counter = 0
    for i, tree in enumerate(trees):
        root = tree.root if isinstance(tree, LabeledWinLossTree) else tree
        ids = {}
        for node in root.level_order():
            ids[node] = f"t{i}n{counter}"
            counter += 1
            label = node.label() if node.bob_card is not None else node.letter
            lines.append(f"  {ids[node]} [label={_quote(label)}];")
        for node in root.level_order():
            for child in node.children():
                lines.append(f"  {ids[node]} -> {ids[child]} [arrowhead=none];")
    lines.append("}")
    return "\n".join(lines) + "\n"


def graph_to_dot(graph: GameGraph, name: str = "game") -> str:
    lines = [f"graph {name} {{"]
    lines += [f"  {v};" for v in graph.vertices]
    lines += [f"  {u} -- {v};" for u, v in graph.edges]
    lines.append("}")
    return "\n".join(lines) + "\n"


def digraph_to_dot(digraph: GameDigraph, name: str = "game") -> str:
    """Winner-to-loser edges where Bob's card won are dashed."""
    lines = [f"digraph {name} {{"]
    lines += [f"  {v};" for v in range(1, digraph.n + 1)]
    for (u, v), alice_won in zip(digraph.edges, digraph.alice_won):
        style = ""
        if digraph.mode is Orientation.WINNER_TO_LOSER and not alice_won:
            style = " [style=dashed]"
        lines.append(f"  {u} -> {v}{style};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def poset_to_dot(
    poset: Poset,
    names: Callable[[Hashable], str] = slot_name,
    name: str = "poset",
) -> str:
    """Hasse diagram, greater elements on top, one rank per layer."""
    children = defaultdict(list)
    for hi, lo in poset.covers:
        children[hi].append(lo)
    has_parent = {lo for _, lo in poset.covers}
    depth = {e: 0 for e in poset.elements if e not in has_parent}
    frontier = list(depth)
    while frontier:
        nxt = []
        for e in frontier:
            for c in children[e]:
                if depth.get(c, -1) < depth[e] + 1:
                    depth[c] = depth[e] + 1
                    nxt.append(c)
        frontier = nxt
    layers = defaultdict(list)
    for e in poset.elements:
        layers[depth[e]].append(e)

    lines = [f"digraph {name} {{", "  rankdir=TB;", "  edge [arrowhead=none];"]
    for e in poset.elements:
        lines.append(f"  {_quote(names(e))};")
    for level in sorted(layers):
        members = " ".join(_quote(names(e)) + ";" for e in layers[level])
        lines.append(f"  {{ rank=same; {members} }}")
    for hi, lo in poset.covers:
        style = " [style=dashed]" if (hi, lo) in poset.dashed else ""
        lines.append(f"  {_quote(names(hi))} -> {_quote(names(lo))}{style};")
    lines.append("}")
    return "\n".join(lines) + "\n"
