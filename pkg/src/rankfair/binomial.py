"""Binomial distribution kernels: PMF, CDF, and the integer quantile.

Probability masses are evaluated through log-gamma and exponentiated, so
results stay finite and accurate for rankings with thousands of positions
where direct factorials or power products would overflow or underflow.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import exp, lgamma, log, log1p

from .errors import InvalidParameterError


@dataclass(frozen=True)
class BinomialParams:
    """Parameters of a Bin(trials, success_prob) distribution."""

    trials: int
    success_prob: float

    def __post_init__(self) -> None:
        if self.trials < 0:
            raise InvalidParameterError(f"trials must be >= 0, got {self.trials}")
        if not 0.0 <= self.success_prob <= 1.0:
            raise InvalidParameterError(
                f"success_prob must be in [0, 1], got {self.success_prob}"
            )


def pmf(x: int, params: BinomialParams) -> float:
    """Probability of exactly ``x`` successes; 0.0 outside the support."""
    n = params.trials
    p = params.success_prob
    if x < 0 or x > n:
        return 0.0
    if p == 0.0:
        return 1.0 if x == 0 else 0.0
    if p == 1.0:
        return 1.0 if x == n else 0.0
    log_mass = (
        lgamma(n + 1)
        - lgamma(x + 1)
        - lgamma(n - x + 1)
        + x * log(p)
        + (n - x) * log1p(-p)
    )
    return exp(log_mass)


def cdf(x: int, params: BinomialParams) -> float:
    """Probability of at most ``x`` successes.

    The full-support value is pinned to exactly 1.0; partial sums accumulate
    the same per-term masses as :func:`pmf`, so ``cdf`` and :func:`quantile`
    agree bit-for-bit on where thresholds are crossed.
    """
    if x < 0:
        return 0.0
    if x >= params.trials:
        return 1.0
    total = 0.0
    for j in range(x + 1):
        total += pmf(j, params)
    return min(total, 1.0)


def quantile(position: int, p: float, alpha: float) -> int:
    """Smallest integer m with ``cdf(m) >= alpha`` for Bin(position, p).

    Ties resolve with the non-strict inequality: if ``cdf(m)`` equals
    ``alpha`` exactly, m is returned.  ``alpha = 0`` therefore always yields
    0, and ``alpha = 1`` yields ``position``.
    """
    if position < 1:
        raise InvalidParameterError(f"position must be >= 1, got {position}")
    if not 0.0 < p < 1.0:
        raise InvalidParameterError(f"p must be strictly inside (0, 1), got {p}")
    if not 0.0 <= alpha <= 1.0:
        raise InvalidParameterError(f"alpha must be in [0, 1], got {alpha}")
    params = BinomialParams(position, p)
    total = 0.0
    for m in range(position):
        total += pmf(m, params)
        if total >= alpha:
            return m
    # cdf(position) is exactly 1 >= alpha; also absorbs float shortfall when
    # the partial sum lands a few ulp under an alpha of 1.
    return position
