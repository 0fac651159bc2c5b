"""Exact failure probability of a table and the adjusted-significance search.

A ranking drawn position-by-position from Bernoulli(p) fails the test as
soon as some prefix holds fewer protected candidates than the table demands.
Checking each prefix is a separate hypothesis test, so the overall failure
probability of a table built directly at significance alpha creeps well
above alpha as k grows.  This module computes that failure probability
exactly and searches for the corrected per-position significance whose
table fails fair rankings at a rate as close to alpha as the discrete space
of tables allows.

The exact computation runs a forward dynamic program over the table's
blocks: after block j, at least j protected candidates must have appeared,
and counts beyond the final requirement are interchangeable, so the state
space is (block index, capped cumulative count).  A literal enumeration of
every admissible per-block count vector is kept as a small-instance oracle.

The search is a bisection on alpha.  Table mass (the entry sum) maps the
continuum of significance levels onto a discrete ladder - each mass value
belongs to exactly one constructible table - so the search can detect that
no table exists between its brackets and stop.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

import numpy as np

from .binomial import BinomialParams, pmf
from .errors import EnumerationLimitError, InvalidParameterError, SearchOverrunError
from .mtable import BlockDecomposition, MTable, construct_mtable, decompose

# Early exit when a bisection candidate lands on the target within this
# tolerance; exact float equality (the pseudocode's reading) never fires.
FAIL_PROBABILITY_MATCH_TOL = 1e-10

# Mass-based stopping makes the bisection finish in well under a hundred
# steps; the cap only guards against pathological non-termination.
MAX_SEARCH_STEPS = 200

BRUTE_FORCE_COMBINATION_LIMIT = 10**7


@dataclass(frozen=True)
class AdjustmentResult:
    """Outcome of the significance search: the corrected level, the table it
    produces, and that table's exact failure probability."""

    alpha_adjusted: float
    table: MTable
    fail_probability: float


def _block_pmf(length: int, p: float) -> np.ndarray:
    params = BinomialParams(length, p)
    return np.array([pmf(x, params) for x in range(length + 1)])


def success_probability(blocks: BlockDecomposition, p: float) -> float:
    """Probability that a fair Bernoulli(p) ranking satisfies every block
    boundary of the decomposed table.

    Runs the forward DP: the state vector carries the probability of each
    cumulative protected count (capped at the total block count), one
    binomial convolution per block, zeroing states that fall short of the
    boundary requirement.  An empty decomposition passes with certainty.
    """
    lengths = blocks.block_lengths
    total = len(lengths)
    if total == 0:
        return 1.0
    state = np.zeros(total + 1)
    state[0] = 1.0
    for index, length in enumerate(lengths, start=1):
        spread = np.convolve(state, _block_pmf(length, p))
        state = spread[: total + 1].copy()
        state[total] += spread[total + 1 :].sum()
        state[:index] = 0.0  # fewer than index protected by boundary index
    return float(min(state[total], 1.0))


def brute_force_success_probability(blocks: BlockDecomposition, p: float) -> float:
    """Literal enumeration of every admissible per-block count vector.

    Deliberately naive: sums the product of per-block binomial masses over
    all count vectors whose running totals meet every boundary.  Serves as
    the independent oracle for :func:`success_probability` on instances
    small enough to enumerate.
    """
    lengths = blocks.block_lengths
    if not lengths:
        return 1.0
    combinations = 1
    for length in lengths:
        combinations *= length + 1
    if combinations > BRUTE_FORCE_COMBINATION_LIMIT:
        raise EnumerationLimitError(
            f"{combinations} combinations exceed the enumeration guard "
            f"({BRUTE_FORCE_COMBINATION_LIMIT})"
        )
    masses = [_block_pmf(length, p) for length in lengths]
    result = 0.0
    for counts in product(*(range(length + 1) for length in lengths)):
        seen = 0
        admissible = True
        for needed, count in enumerate(counts, start=1):
            seen += count
            if seen < needed:
                admissible = False
                break
        if not admissible:
            continue
        weight = 1.0
        for mass, count in zip(masses, counts):
            weight *= mass[count]
        result += weight
    return result


def fail_probability(table: MTable) -> float:
    """Exact probability that a fair Bernoulli(p) ranking violates ``table``
    at some prefix.  An all-zero table never rejects anything."""
    blocks = decompose(table)
    if not blocks.block_lengths:
        return 0.0
    return max(0.0, 1.0 - success_probability(blocks, table.p))


def _candidate(k: int, p: float, alpha: float) -> AdjustmentResult:
    table = construct_mtable(k, p, alpha)
    return AdjustmentResult(
        alpha_adjusted=alpha, table=table, fail_probability=fail_probability(table)
    )


def _closest(candidates: tuple[AdjustmentResult, ...], alpha: float) -> AdjustmentResult:
    # Ties in distance go to the smaller (more permissive) table.
    return min(
        candidates,
        key=lambda c: (abs(c.fail_probability - alpha), c.table.mass),
    )


def adjust_alpha(k: int, p: float, alpha: float) -> AdjustmentResult:
    """Find the corrected significance whose table fails fair rankings at a
    rate as close to ``alpha`` as any constructible table allows.

    Bisects on the corrected level inside [0, alpha].  Because table mass is
    non-decreasing in alpha and no two constructible tables share a mass,
    the search stops once the bracket masses meet or differ by one: no
    further table can lie between them.  Among the terminal candidates the
    one whose failure probability is nearest ``alpha`` wins.  The result
    never fails more often than the unadjusted table built directly at
    ``alpha``.
    """
    if k < 1:
        raise InvalidParameterError(f"k must be >= 1, got {k}")
    if not 0.0 < p < 1.0:
        raise InvalidParameterError(f"p must be strictly inside (0, 1), got {p}")
    if not 0.0 < alpha < 1.0:
        raise InvalidParameterError(f"alpha must be strictly inside (0, 1), got {alpha}")

    low = _candidate(k, p, 0.0)  # all-zero table, never fails
    high = _candidate(k, p, alpha)
    mid = _candidate(k, p, (low.alpha_adjusted + high.alpha_adjusted) / 2.0)

    steps = 0
    while low.table.mass < high.table.mass:
        if abs(mid.fail_probability - alpha) <= FAIL_PROBABILITY_MATCH_TOL:
            return mid
        if mid.fail_probability < alpha:
            low = mid
        else:
            high = mid
        if high.table.mass - low.table.mass <= 1:
            break
        midpoint = (low.alpha_adjusted + high.alpha_adjusted) / 2.0
        if midpoint <= low.alpha_adjusted or midpoint >= high.alpha_adjusted:
            break  # float resolution exhausted; brackets cannot separate further
        steps += 1
        if steps > MAX_SEARCH_STEPS:
            raise SearchOverrunError(
                f"significance search for k={k}, p={p}, alpha={alpha} exceeded "
                f"{MAX_SEARCH_STEPS} bisection steps"
            )
        mid = _candidate(k, p, midpoint)
    return _closest((low, mid, high), alpha)
