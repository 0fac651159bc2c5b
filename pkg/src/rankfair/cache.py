"""Filesystem cache for adjusted-significance results.

One JSON document per (k, p, alpha) key, with probabilities quantized to
nine decimal places in the key and serialized to twelve significant digits
in the document.  Keys collide for parameters closer than the quantization
step; that is accepted and documented.  Float fields round-trip at the
serialized precision, table entries exactly.
"""

from __future__ import annotations

import json
import os
import tempfile
from dataclasses import dataclass
from pathlib import Path

from .adjust import AdjustmentResult
from .errors import CacheIOError
from .mtable import MTable

KEY_DECIMALS = 9
SERIALIZED_SIGNIFICANT_DIGITS = 12


def format_probability(value: float) -> str:
    """Decimal string with twelve significant digits, as used in every JSON
    document and CLI echo."""
    return f"{value:.{SERIALIZED_SIGNIFICANT_DIGITS}g}"


def _quantize(value: float) -> str:
    return f"{value:.{KEY_DECIMALS}f}"


@dataclass(frozen=True)
class TableCacheKey:
    """Cache key: ranking size plus probabilities quantized to 9 decimals."""

    k: int
    p_quantized: str
    alpha_quantized: str

    @classmethod
    def for_parameters(cls, k: int, p: float, alpha: float) -> "TableCacheKey":
        return cls(k=k, p_quantized=_quantize(p), alpha_quantized=_quantize(alpha))

    @property
    def filename(self) -> str:
        p_part = self.p_quantized.replace(".", "_")
        a_part = self.alpha_quantized.replace(".", "_")
        return f"mtable_k{self.k}_p{p_part}_a{a_part}.json"


class MTableCache:
    """Persistent store of adjustment results under a configurable directory.

    Writes are atomic (temp file + rename), so concurrent puts of the same
    key land identical content and a reader never observes a torn file.
    Misses return ``None``; genuine I/O or decoding failures raise
    :class:`CacheIOError`.
    """

    def __init__(self, directory: str | Path) -> None:
        self.directory = Path(directory)

    def path_for(self, key: TableCacheKey) -> Path:
        return self.directory / key.filename

    def get(self, key: TableCacheKey) -> AdjustmentResult | None:
        path = self.path_for(key)
        if not path.exists():
            return None
        try:
            document = json.loads(path.read_text(encoding="utf-8"))
            table = MTable(
                entries=tuple(int(entry) for entry in document["mtable"]),
                k=int(document["k"]),
                p=float(document["p"]),
                alpha=float(document["alphaAdjusted"]),
            )
            return AdjustmentResult(
                alpha_adjusted=float(document["alphaAdjusted"]),
                table=table,
                fail_probability=float(document["failProbability"]),
            )
        except (OSError, ValueError, KeyError, TypeError) as exc:
            raise CacheIOError(f"cannot read cache entry {path}: {exc}") from exc

    def put(self, key: TableCacheKey, result: AdjustmentResult) -> None:
        document = {
            "k": result.table.k,
            "p": format_probability(result.table.p),
            "alpha": format_probability(float(key.alpha_quantized)),
            "alphaAdjusted": format_probability(result.alpha_adjusted),
            "failProbability": format_probability(result.fail_probability),
            "mtable": list(result.table.entries),
        }
        path = self.path_for(key)
        try:
            self.directory.mkdir(parents=True, exist_ok=True)
            fd, tmp_name = tempfile.mkstemp(
                dir=self.directory, prefix=key.filename, suffix=".tmp"
            )
            try:
                with os.fdopen(fd, "w", encoding="utf-8") as handle:
                    json.dump(document, handle)
                    handle.write("\n")
                os.replace(tmp_name, path)
            finally:
                if os.path.exists(tmp_name):
                    os.unlink(tmp_name)
        except OSError as exc:
            raise CacheIOError(f"cannot write cache entry {path}: {exc}") from exc
