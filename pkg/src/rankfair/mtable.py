"""Minimum-protected-count tables (mTables) and their block structure.

An mTable for ranking size k lists, for every prefix length i, the minimum
number of protected candidates that must appear in the top i positions for
the ranking to pass the group-fairness test.  Entry i is the alpha-quantile
of Bin(i, p), so requirements grow with both prefix length and significance
level.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .binomial import quantile
from .errors import InvalidParameterError


def is_valid_entries(entries: Sequence[int]) -> bool:
    """True iff ``entries`` is non-negative, non-decreasing, starts at 0 or 1,
    and never steps up by more than 1."""
    previous = 0
    for value in entries:
        if value < previous or value > previous + 1:
            return False
        previous = value
    return True


@dataclass(frozen=True)
class MTable:
    """Per-position minimum protected counts plus construction parameters.

    ``entries[i - 1]`` is the requirement for prefix length i (positions are
    1-indexed; position 1 is the top of the ranking).
    """

    entries: tuple[int, ...]
    k: int
    p: float
    alpha: float

    def __post_init__(self) -> None:
        if self.k < 1:
            raise InvalidParameterError(f"k must be >= 1, got {self.k}")
        if len(self.entries) != self.k:
            raise InvalidParameterError(
                f"expected {self.k} entries, got {len(self.entries)}"
            )
        if not is_valid_entries(self.entries):
            raise InvalidParameterError(f"entries {self.entries} are not a valid table")
        if not 0.0 <= self.p <= 1.0:
            raise InvalidParameterError(f"p must be in [0, 1], got {self.p}")
        if not 0.0 <= self.alpha <= 1.0:
            raise InvalidParameterError(f"alpha must be in [0, 1], got {self.alpha}")

    @property
    def mass(self) -> int:
        """Sum of all entries; the discrete measure the significance search
        uses to detect progress."""
        return sum(self.entries)

    def required_at(self, position: int) -> int:
        """Minimum protected count for the prefix ending at ``position``
        (1-indexed)."""
        if not 1 <= position <= self.k:
            raise InvalidParameterError(
                f"position must be in [1, {self.k}], got {position}"
            )
        return self.entries[position - 1]


@dataclass(frozen=True)
class BlockDecomposition:
    """Block structure of a table: runs of positions between requirement
    increases.

    ``boundaries[i - 1]`` is the first position whose requirement reaches i,
    ``block_lengths[i - 1]`` the gap to the previous boundary.  Positions
    after the last increase impose no new requirement and are excluded, so
    ``covered_prefix`` may fall short of k.
    """

    block_lengths: tuple[int, ...]
    boundaries: tuple[int, ...]
    covered_prefix: int


def construct_mtable(k: int, p: float, alpha: float) -> MTable:
    """Build the table of per-prefix minimum protected counts.

    Each entry is the smallest count whose Bin(i, p) CDF reaches ``alpha``.
    Degenerate proportions bypass the quantile: p = 0 can require nothing,
    and p = 1 requires every position (for a positive alpha).
    """
    if k < 1:
        raise InvalidParameterError(f"k must be >= 1, got {k}")
    if not 0.0 <= p <= 1.0:
        raise InvalidParameterError(f"p must be in [0, 1], got {p}")
    if not 0.0 <= alpha <= 1.0:
        raise InvalidParameterError(f"alpha must be in [0, 1], got {alpha}")

    if p == 0.0 or alpha == 0.0:
        entries = (0,) * k
    elif p == 1.0:
        entries = tuple(range(1, k + 1))
    else:
        entries = tuple(quantile(i, p, alpha) for i in range(1, k + 1))
    return MTable(entries=entries, k=k, p=p, alpha=alpha)


def decompose(table: MTable) -> BlockDecomposition:
    """Split a table into blocks at each requirement increase.

    An all-zero table yields an empty decomposition: no prefix requirement
    ever triggers, so there is nothing to test.
    """
    boundaries: list[int] = []
    level = 0
    for position, required in enumerate(table.entries, start=1):
        while level < required:  # valid tables step by at most 1
            level += 1
            boundaries.append(position)
    lengths = tuple(
        right - left for left, right in zip((0, *boundaries), boundaries)
    )
    return BlockDecomposition(
        block_lengths=lengths,
        boundaries=tuple(boundaries),
        covered_prefix=boundaries[-1] if boundaries else 0,
    )
