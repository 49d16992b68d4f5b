"""Dense operator matrices over a truncation window, with provenance."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .lattice import Window

__all__ = ["OperatorMatrix"]


@dataclass(frozen=True)
class OperatorMatrix:
    """Complex matrix A(mu, nu) over a window, tagged with how it was built.

    metadata records at least the builder tag and, for quadrature-assembled
    operators, the node count used.
    """

    window: Window
    entries: np.ndarray
    metadata: dict = field(default_factory=dict)

    def __post_init__(self):
        A = np.asarray(self.entries, dtype=complex)
        n = self.window.size
        if A.shape != (n, n):
            raise ValueError(f"entries must be {n}x{n}")
        if not np.all(np.isfinite(A)):
            raise ValueError("operator entries must be finite")
        object.__setattr__(self, "entries", A)
        if "builder" not in self.metadata:
            raise ValueError("metadata must carry a builder tag")

    def entry(self, mu: int, nu: int) -> complex:
        return complex(self.entries[self.window.index_of(mu), self.window.index_of(nu)])

    def core(self, buffer: int) -> np.ndarray:
        """Submatrix over |n| <= N - buffer, where truncation is harmless."""
        N = self.window.half_width
        sl = slice(buffer, 2 * N + 1 - buffer)
        return self.entries[sl, sl]

    def core_max_diff(self, other: "OperatorMatrix", buffer: int) -> float:
        return float(np.max(np.abs(self.core(buffer) - other.core(buffer))))
