"""Lattice primitives: finitely supported potentials, truncation windows,
and the weighted sequence norms used by every other module.

A potential q is stored as (offset, values) with implicit zeros elsewhere.
Weights use <n> = sqrt(1 + n^2).  Tail sums:

    eta(mu)   = sum_{nu >= mu} |q(nu)|
    gamma(mu) = sum_{nu >= mu} (nu - mu) |q(nu)|
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

__all__ = [
    "Potential",
    "Window",
    "LatticeSeq",
    "weighted_norm",
    "eta_tail",
    "gamma_tail",
    "mirror",
]


def bracket_weight(n) -> np.ndarray:
    """<n> = sqrt(1 + n^2), vectorized."""
    return np.sqrt(1.0 + np.asarray(n, dtype=float) ** 2)


@dataclass(frozen=True)
class Potential:
    """Finitely supported real potential.

    ``values[k]`` is q(offset + k); q vanishes off the stored range.
    Leading/trailing zeros are trimmed on construction so that the first and
    last stored values are nonzero (an all-zero input becomes q == 0).
    """

    offset: int
    values: tuple = field(default_factory=tuple)

    def __post_init__(self):
        vals = np.asarray(self.values, dtype=float)
        if vals.size and not np.all(np.isfinite(vals)):
            raise ValueError("potential values must be finite")
        # trim implicit zeros at both ends
        nz = np.nonzero(vals)[0]
        if nz.size == 0:
            object.__setattr__(self, "offset", 0)
            object.__setattr__(self, "values", ())
        else:
            lo, hi = int(nz[0]), int(nz[-1])
            object.__setattr__(self, "offset", int(self.offset) + lo)
            object.__setattr__(self, "values", tuple(float(v) for v in vals[lo : hi + 1]))

    # -- basic accessors ---------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return len(self.values) == 0

    @property
    def support_min(self) -> int:
        return self.offset if self.values else 0

    @property
    def support_max(self) -> int:
        return self.offset + len(self.values) - 1 if self.values else 0

    @property
    def support_radius(self) -> int:
        if self.is_zero:
            return 0
        return max(abs(self.support_min), abs(self.support_max))

    def q(self, n: int) -> float:
        """Pointwise value; implicit zero outside the stored range."""
        k = int(n) - self.offset
        if 0 <= k < len(self.values):
            return self.values[k]
        return 0.0

    def sample(self, ns) -> np.ndarray:
        ns = np.asarray(ns, dtype=int)
        out = np.zeros(ns.shape, dtype=float)
        k = ns - self.offset
        mask = (k >= 0) & (k < len(self.values))
        if len(self.values):
            out[mask] = np.asarray(self.values)[k[mask]]
        return out

    def support_indices(self) -> np.ndarray:
        if self.is_zero:
            return np.zeros(0, dtype=int)
        return np.arange(self.support_min, self.support_max + 1)

    @property
    def l1(self) -> float:
        return float(np.sum(np.abs(self.values))) if self.values else 0.0

    def minus_part(self) -> "Potential":
        """q_-(n) = min(0, q(n))."""
        return Potential(self.offset, tuple(min(0.0, v) for v in self.values))

    def negated(self) -> "Potential":
        return Potential(self.offset, tuple(-v for v in self.values))

    def nu_weighted_l1(self) -> float:
        """|| nu * q(nu) ||_{l^1} over the support."""
        if self.is_zero:
            return 0.0
        ns = self.support_indices()
        return float(np.sum(np.abs(ns) * np.abs(np.asarray(self.values))))


@dataclass(frozen=True)
class Window:
    """Symmetric truncation window [-N, N] of the lattice."""

    half_width: int

    def __post_init__(self):
        if self.half_width < 1:
            raise ValueError("window half-width must be >= 1")

    @property
    def size(self) -> int:
        return 2 * self.half_width + 1

    def indices(self) -> np.ndarray:
        return np.arange(-self.half_width, self.half_width + 1)

    def contains(self, n: int) -> bool:
        return -self.half_width <= n <= self.half_width

    def index_of(self, n: int) -> int:
        """Array position of lattice site n; raises on out-of-window reads."""
        if not self.contains(n):
            raise IndexError(f"site {n} outside window [-{self.half_width}, {self.half_width}]")
        return int(n) + self.half_width

    def core_indices(self, buffer: int) -> np.ndarray:
        """Sites |n| <= N - buffer, where truncation artifacts are negligible."""
        m = self.half_width - buffer
        if m < 0:
            raise ValueError("buffer exceeds window half-width")
        return np.arange(-m, m + 1)


def band_buffer(q: Potential, extra: int = 8) -> int:
    """Minimum padding beyond the support for real-angle work."""
    return q.support_radius + extra

def bound_state_buffer(q: Potential, a_min: float, tol: float = 1e-12) -> int:
    """Padding needed so an eigenvector of decay rate a_min fits to ``tol``."""
    return q.support_radius + int(math.ceil(-math.log(tol) / a_min))


def window_for(q: Potential, half_width: int | None = None, extra: int = 8) -> Window:
    """A window containing the support with the band buffer, or a checked
    user-supplied one."""
    need = band_buffer(q, extra)
    if half_width is None:
        return Window(max(need, 8))
    if half_width < need:
        raise ValueError(f"window N={half_width} too small; need at least {need}")
    return Window(half_width)


@dataclass(frozen=True)
class LatticeSeq:
    """Complex sequence supported on a window; length is exactly 2N+1."""

    window: Window
    values: np.ndarray

    def __post_init__(self):
        vals = np.asarray(self.values, dtype=complex)
        if vals.shape != (self.window.size,):
            raise ValueError("values length must equal window size")
        object.__setattr__(self, "values", vals)

    def value(self, n: int) -> complex:
        return complex(self.values[self.window.index_of(n)])

    @classmethod
    def from_func(cls, window: Window, fn) -> "LatticeSeq":
        return cls(window, np.asarray([fn(int(n)) for n in window.indices()], dtype=complex))

    @classmethod
    def delta(cls, window: Window, site: int = 0, amplitude: complex = 1.0) -> "LatticeSeq":
        vals = np.zeros(window.size, dtype=complex)
        vals[window.index_of(site)] = amplitude
        return cls(window, vals)


# -- weighted norms and tails ---------------------------------------------


def _sites_and_values(u):
    if isinstance(u, Potential):
        return u.support_indices(), np.asarray(u.values, dtype=complex)
    if isinstance(u, LatticeSeq):
        return u.window.indices(), u.values
    raise TypeError(f"unsupported operand type {type(u)!r}")


def weighted_norm(u, p: float, sigma: float = 0.0) -> float:
    """l^{p,sigma} norm: (sum <n>^{p sigma} |u(n)|^p)^{1/p}, sup-form for p=inf."""
    if not (p >= 1.0):
        raise ValueError("p must be >= 1")
    ns, vals = _sites_and_values(u)
    if ns.size == 0:
        return 0.0
    w = bracket_weight(ns)
    if math.isinf(p):
        return float(np.max(w**sigma * np.abs(vals)))
    return float(np.sum(w ** (p * sigma) * np.abs(vals) ** p) ** (1.0 / p))


def eta_tail(q: Potential, mu: int) -> float:
    """eta(mu) = sum_{nu >= mu} |q(nu)|."""
    ns = q.support_indices()
    if ns.size == 0:
        return 0.0
    vals = np.abs(np.asarray(q.values))
    return float(np.sum(vals[ns >= mu]))


def gamma_tail(q: Potential, mu: int) -> float:
    """gamma(mu) = sum_{nu >= mu} (nu - mu) |q(nu)|."""
    ns = q.support_indices()
    if ns.size == 0:
        return 0.0
    vals = np.abs(np.asarray(q.values))
    sel = ns >= mu
    return float(np.sum((ns[sel] - mu) * vals[sel]))


def mirror(q: Potential) -> Potential:
    """Reflected potential q~(nu) = q(-nu); an involution."""
    return Potential(-q.support_max, tuple(reversed(q.values)))
