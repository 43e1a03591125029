"""Win-loss sequences of games Alice loses.

A sequence lists round outcomes from Alice's side. With ``m`` initial cards
her hand size after ``i`` rounds is ``m + w_i - l_i``; it stays positive
until the last round, where it reaches zero. Her first passthrough lasts
``m`` rounds and each later one lasts twice the number of wins in the one
before, which is where the stylizing slashes go.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Sequence

from .engine import GameTrace, Outcome
from .numerics import a_k, catalan_triangle

__all__ = [
    "SequenceError",
    "WinLossSequence",
    "parse_sequence",
    "stylize",
    "sequence_of",
    "enumerate_sequences_rounds",
    "count_sequences_rounds",
    "enumerate_sequences_passthrough",
    "count_sequences_passthrough",
    "split_blocks",
    "combine_blocks",
]


class SequenceError(ValueError):
    pass


def _segments(letters: str, m: int) -> list[str]:
    segments = []
    pos, length = 0, m
    while pos < len(letters) and length > 0:
        seg = letters[pos : pos + length]
        segments.append(seg)
        pos += length
        length = 2 * seg.count("W")
    return segments


@dataclass(frozen=True)
class WinLossSequence:
    letters: str
    m: int = 1

    def __post_init__(self) -> None:
        if self.m < 1:
            raise SequenceError(f"initial hand size must be >= 1, got {self.m}")
        if not self.letters or set(self.letters) - {"W", "L"}:
            raise SequenceError(f"sequence must be a nonempty string over W/L: {self.letters!r}")
        cards = self.m
        for i, ch in enumerate(self.letters, start=1):
            cards += 1 if ch == "W" else -1
            if cards == 0 and i < len(self.letters):
                raise SequenceError(
                    f"{self.letters!r} (m={self.m}): Alice is out of cards after round {i}"
                )
        if cards != 0:
            raise SequenceError(
                f"{self.letters!r} (m={self.m}): Alice ends with {cards} cards, not 0"
            )

    @property
    def rounds(self) -> int:
        return len(self.letters)

    @property
    def wins(self) -> int:
        return self.letters.count("W")

    @property
    def losses(self) -> int:
        return self.letters.count("L")

    @property
    def passthroughs(self) -> list[str]:
        return _segments(self.letters, self.m)

    @property
    def passthrough_count(self) -> int:
        return len(self.passthroughs)

    def stylize(self) -> str:
        return "/".join(self.passthroughs)

    def __str__(self) -> str:
        return self.stylize()


def stylize(seq: WinLossSequence) -> str:
    return seq.stylize()


def parse_sequence(text: str, m: int | None = None) -> WinLossSequence:
    """Parse ``"W/LL"`` or ``"WLL"``.

    When ``m`` is omitted it is read off the first slash, or taken as 1 when
    there is none. Slashes, if present, must sit exactly at the passthrough
    boundaries.
    """
    text = text.strip()
    if m is None:
        m = len(text.split("/")[0]) if "/" in text else 1
    seq = WinLossSequence(text.replace("/", ""), m)
    if "/" in text and text != seq.stylize():
        raise SequenceError(f"misplaced slash in {text!r}; expected {seq.stylize()!r}")
    return seq


def sequence_of(trace: GameTrace) -> WinLossSequence:
    if trace.outcome is not Outcome.ALICE_LOST:
        raise SequenceError(f"trace outcome is {trace.outcome.value}, not AliceLost")
    return WinLossSequence(trace.letters, len(trace.initial.alice))


def _valid_prefixes(m: int, length: int) -> Iterator[str]:
    # Depth-first with W before L gives lexicographic order under W < L.
    def extend(prefix: str, cards: int) -> Iterator[str]:
        remaining = length - len(prefix)
        if remaining == 0:
            if cards == 0:
                yield prefix
            return
        if cards == 0 or cards > remaining:
            return
        yield from extend(prefix + "W", cards + 1)
        yield from extend(prefix + "L", cards - 1)

    yield from extend("", m)


def enumerate_sequences_rounds(m: int, rounds: int) -> list[WinLossSequence]:
    """All sequences of exactly ``rounds`` letters for ``m`` initial cards."""
    if m < 1 or rounds < m or (rounds - m) % 2:
        return []
    return [WinLossSequence(s, m) for s in _valid_prefixes(m, rounds)]


def count_sequences_rounds(m: int, rounds: int) -> int:
    if m < 1 or rounds < m or (rounds - m) % 2:
        return 0
    return catalan_triangle((m + rounds) // 2 - 1, (rounds - m) // 2)


def enumerate_sequences_passthrough(m: int, k: int) -> list[WinLossSequence]:
    """All sequences for ``m`` cards that end within ``k`` passthroughs."""
    if m < 1 or k < 1:
        raise ValueError(f"need m >= 1 and k >= 1, got ({m}, {k})")
    out: list[WinLossSequence] = []

    def extend(prefix: str, left_in_pass: int, wins_in_pass: int, passes: int) -> None:
        if left_in_pass == 0:
            if wins_in_pass == 0:
                out.append(WinLossSequence(prefix, m))
                return
            if passes == k:
                return
            extend(prefix, 2 * wins_in_pass, 0, passes + 1)
            return
        extend(prefix + "W", left_in_pass - 1, wins_in_pass + 1, passes)
        extend(prefix + "L", left_in_pass - 1, wins_in_pass, passes)

    extend("", m, 0, 1)
    return out


def count_sequences_passthrough(m: int, k: int) -> int:
    return a_k(k) ** m


def split_blocks(seq: WinLossSequence) -> list[WinLossSequence]:
    """Undo passthrough-wise concatenation: one unicard sequence per
    initial card, in hand order."""
    held = [1] * seq.m
    parts = [""] * seq.m
    for segment in seq.passthroughs:
        pos = 0
        for i, count in enumerate(held):
            chunk = segment[pos : pos + count]
            parts[i] += chunk
            held[i] = 2 * chunk.count("W")
            pos += count
        if pos != len(segment):
            raise SequenceError(f"passthrough {segment!r} does not match block card counts")
    return [WinLossSequence(p, 1) for p in parts]


def combine_blocks(blocks: Sequence[WinLossSequence]) -> WinLossSequence:
    """Concatenate the blocks' first passthroughs, then their second ones,
    and so on."""
    if not blocks:
        raise SequenceError("need at least one block")
    for b in blocks:
        if b.m != 1:
            raise SequenceError(f"blocks must be unicard, got m={b.m}")
    per_block = [b.passthroughs for b in blocks]
    depth = max(len(p) for p in per_block)
    letters = "".join(
        p[level] for level in range(depth) for p in per_block if level < len(p)
    )
    return WinLossSequence(letters, len(blocks))
