"""Exception types shared across the package."""


class RankFairError(Exception):
    """Base class for all rankfair errors."""


class InvalidParameterError(RankFairError, ValueError):
    """An argument violates a documented precondition."""


class InfeasibleRankingError(RankFairError):
    """The protected pool is too small to satisfy the table's requirements."""


class EnumerationLimitError(RankFairError):
    """A brute-force enumeration would exceed its instance-size guard."""


class SearchOverrunError(RankFairError):
    """The significance search failed to converge within its iteration cap."""


class CacheIOError(RankFairError):
    """Reading or writing a persisted cache entry failed."""
