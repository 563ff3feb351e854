"""Problem parameters: alphabet size m and target run length n."""

from __future__ import annotations

from dataclasses import dataclass

from .errors import DomainError


@dataclass(frozen=True)
class Params:
    """Alphabet size ``m`` and run length ``n`` of the stopping rule.

    The string process draws symbols uniformly from an m-letter alphabet
    and stops at the first run of n consecutive copies of a fixed symbol.
    """

    m: int
    n: int

    def __post_init__(self) -> None:
        if not isinstance(self.m, int) or self.m < 1:
            raise DomainError(f"m must be an integer >= 1, got {self.m!r}")
        if not isinstance(self.n, int) or self.n < 1:
            raise DomainError(f"n must be an integer >= 1, got {self.n!r}")

    def require_multi_symbol(self) -> None:
        """Reject m = 1; the walk-matrix machinery needs at least two symbols."""
        if self.m < 2:
            raise DomainError(
                f"m must be >= 2 for matrix-based operations, got m={self.m}; "
                "the single-symbol process is deterministic and is handled by "
                "the closed-form module"
            )
