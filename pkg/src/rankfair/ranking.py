"""Apply a table to concrete rankings: verification and greedy re-ranking."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .errors import InfeasibleRankingError, InvalidParameterError
from .mtable import MTable


@dataclass(frozen=True)
class Candidate:
    """One ranked item: opaque id, score (higher is better), group flag."""

    id: str
    score: float
    protected: bool

    def __post_init__(self) -> None:
        if not self.id:
            raise InvalidParameterError("candidate id must be non-empty")


@dataclass(frozen=True)
class Ranking:
    """Ordered candidates; position 1 is the first element of ``items``."""

    items: tuple[Candidate, ...]

    def __post_init__(self) -> None:
        ids = [candidate.id for candidate in self.items]
        if len(set(ids)) != len(ids):
            raise InvalidParameterError("candidate ids must be unique within a ranking")

    def __len__(self) -> int:
        return len(self.items)


@dataclass(frozen=True)
class Violation:
    """A prefix that holds fewer protected candidates than the table demands."""

    position: int
    required: int
    actual: int


@dataclass(frozen=True)
class VerificationReport:
    passed: bool
    first_violation_position: int | None
    violations: tuple[Violation, ...]


def verify(ranking: Ranking, table: MTable) -> VerificationReport:
    """Check the prefix protected counts of ``ranking`` against ``table``.

    The check covers positions 1..min(k, ranking length): longer rankings
    are only tested on the table's domain.  Empty rankings are rejected
    outright; they are outside the test's probability model.
    """
    if len(ranking) == 0:
        raise InvalidParameterError("cannot verify an empty ranking")
    prefix = min(table.k, len(ranking))
    count = 0
    violations: list[Violation] = []
    for position in range(1, prefix + 1):
        if ranking.items[position - 1].protected:
            count += 1
        required = table.entries[position - 1]
        if count < required:
            violations.append(Violation(position, required, count))
    return VerificationReport(
        passed=not violations,
        first_violation_position=violations[0].position if violations else None,
        violations=tuple(violations),
    )


def _require_sorted(candidates: Sequence[Candidate], label: str) -> None:
    for earlier, later in zip(candidates, candidates[1:]):
        if later.score > earlier.score:
            raise InvalidParameterError(
                f"{label} candidates must be sorted by score descending"
            )


def rerank(
    protected: Sequence[Candidate],
    non_protected: Sequence[Candidate],
    table: MTable,
) -> Ranking:
    """Merge two score-sorted pools into a top-k ranking satisfying ``table``.

    At each position the higher-scored pool head is placed (score ties go to
    the protected candidate), unless that would drop the prefix protected
    count below the table's requirement, in which case the protected head is
    forced.  Relative order within each pool is preserved.

    Raises :class:`InfeasibleRankingError` when the protected pool runs dry
    while the table still demands more.
    """
    _require_sorted(protected, "protected")
    _require_sorted(non_protected, "non-protected")
    available = len(protected) + len(non_protected)
    if available < table.k:
        raise InvalidParameterError(
            f"need at least {table.k} candidates, got {available}"
        )

    merged: list[Candidate] = []
    next_protected = 0
    next_other = 0
    count = 0
    for position in range(1, table.k + 1):
        required = table.entries[position - 1]
        protected_left = next_protected < len(protected)
        if count < required and not protected_left:
            raise InfeasibleRankingError(
                f"position {position} requires {required} protected candidates "
                f"but only {next_protected} are available"
            )
        if count < required:
            take_protected = True
        elif not protected_left:
            take_protected = False
        elif next_other >= len(non_protected):
            take_protected = True
        else:
            take_protected = protected[next_protected].score >= non_protected[next_other].score
        if take_protected:
            merged.append(protected[next_protected])
            next_protected += 1
            count += 1
        else:
            merged.append(non_protected[next_other])
            next_other += 1
    return Ranking(items=tuple(merged))
