"""Free-operator machinery for H0 = -Delta on the integer lattice.

The symbol of -Delta is 2(1 - cos theta) on T = R/2piZ, so the free
resolvent kernel is

    R(m, n, z) = (-i / 2 sin theta) e^{-i theta |n - m|},
    2(1 - cos theta) = z,  theta in the lower half strip D (Im theta < 0).

Angle integrals are composite Gauss-Legendre on the panels [-pi, 0] and
[0, pi]: integrands here are smooth per panel but may switch branch at 0.
"""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass

import numpy as np

from .lattice import LatticeSeq, Window

SQRT2PI = math.sqrt(2.0 * math.pi)

__all__ = [
    "AngleGrid",
    "ComplexAngle",
    "cheb_kernel",
    "f0_forward",
    "f0_adjoint",
    "free_resolvent_kernel",
    "free_evolution_kernel",
]


@functools.lru_cache(maxsize=64)
def _leggauss(n: int):
    return np.polynomial.legendre.leggauss(n)


@dataclass(frozen=True)
class AngleGrid:
    """Quadrature nodes/weights on [-pi, pi], split into panels at theta = 0."""

    nodes: np.ndarray
    weights: np.ndarray

    def __post_init__(self):
        nodes = np.asarray(self.nodes, dtype=float)
        weights = np.asarray(self.weights, dtype=float)
        if nodes.shape != weights.shape or nodes.ndim != 1:
            raise ValueError("nodes and weights must be matching 1-D arrays")
        if np.any(weights <= 0):
            raise ValueError("quadrature weights must be positive")
        object.__setattr__(self, "nodes", nodes)
        object.__setattr__(self, "weights", weights)

    @classmethod
    def gauss_panels(cls, nodes_per_panel: int = 256) -> "AngleGrid":
        """Composite Gauss-Legendre with one panel per half band."""
        x, w = _leggauss(int(nodes_per_panel))
        half = math.pi / 2.0
        neg = half * (x - 1.0)   # [-pi, 0]
        pos = half * (x + 1.0)   # [0, pi]
        nodes = np.concatenate([neg, pos])
        weights = np.concatenate([w, w]) * half
        return cls(nodes, weights)

    @property
    def size(self) -> int:
        return self.nodes.size

    def refined(self, factor: int = 2) -> "AngleGrid":
        return AngleGrid.gauss_panels(self.size // 2 * factor)


def default_nodes_per_panel(half_width: int) -> int:
    """Node count resolving every oscillation e^{ij theta}, |j| <= 2N, on a panel."""
    return max(256, 2 * half_width)


@dataclass(frozen=True)
class ComplexAngle:
    """Angle theta in the lower strip D parameterizing z = 2(1 - cos theta)
    off the band: theta = -ia below 0, theta = pi - ia above 4."""

    branch: str  # "lower" (z < 0) or "upper" (z > 4)
    a: float

    def __post_init__(self):
        if self.branch not in ("lower", "upper"):
            raise ValueError("branch must be 'lower' or 'upper'")
        if not self.a > 0:
            raise ValueError("decay parameter a must be positive")

    @property
    def theta(self) -> complex:
        if self.branch == "lower":
            return -1j * self.a
        return math.pi - 1j * self.a

    @property
    def energy(self) -> float:
        if self.branch == "lower":
            return 2.0 * (1.0 - math.cosh(self.a))
        return 2.0 * (1.0 + math.cosh(self.a))


def _as_theta(theta):
    if isinstance(theta, ComplexAngle):
        return theta.theta
    return theta


def cheb_kernel(k: int, theta):
    """sin(k theta)/sin(theta) by the three-term recurrence in cos(theta).

    Exact at the removable singularities theta = 0 and +-pi; accepts real or
    complex theta, scalars or arrays.
    """
    th = np.asarray(_as_theta(theta))
    c2 = 2.0 * np.cos(th)
    k = int(k)
    sign = 1.0
    if k < 0:
        k, sign = -k, -1.0
    s_prev = np.zeros_like(c2)  # S_0
    if k == 0:
        return sign * s_prev if s_prev.ndim else sign * complex(s_prev)
    s = np.ones_like(c2)  # S_1
    for _ in range(k - 1):
        s, s_prev = c2 * s - s_prev, s
    out = sign * s
    return out if out.ndim else complex(out)


def f0_forward(u: LatticeSeq, grid: AngleGrid) -> np.ndarray:
    """Free Fourier series F0[u](theta) = (1/sqrt(2pi)) sum_n e^{-in theta} u(n)."""
    ns = u.window.indices()
    phases = np.exp(-1j * np.outer(grid.nodes, ns))
    return phases @ u.values / SQRT2PI


def f0_adjoint(g: np.ndarray, grid: AngleGrid, window: Window) -> LatticeSeq:
    """Quadrature of (1/sqrt(2pi)) int e^{in theta} g(theta) dtheta."""
    g = np.asarray(g, dtype=complex)
    ns = window.indices()
    phases = np.exp(1j * np.outer(ns, grid.nodes))
    vals = phases @ (grid.weights * g) / SQRT2PI
    return LatticeSeq(window, vals)


def angle_for_energy(z: complex) -> complex:
    """The solution of 2(1 - cos theta) = z with Im theta < 0, Re theta in [-pi, pi]."""
    w = 1.0 - np.asarray(z, dtype=complex) / 2.0
    th = np.arccos(w)
    th = np.where(np.imag(th) < 0, th, -th)
    # arccos lands in Re in [0, pi]; the reflection keeps |Re| <= pi
    return complex(th) if np.ndim(z) == 0 else th


def free_resolvent_kernel(m: int, n: int, z, side: str | None = None) -> complex:
    """Kernel of (H0 - z)^{-1}; for z = lambda +- i0 on the band pass side."""
    k = abs(int(n) - int(m))
    z = complex(z)
    if z.imag == 0.0 and 0.0 <= z.real <= 4.0:
        if side not in ("+", "-"):
            raise ValueError("z inside the band [0,4] requires side '+' or '-'")
        if z.real in (0.0, 4.0):
            raise ValueError("resolvent kernel is singular at the band edges")
        theta = math.acos(1.0 - z.real / 2.0)  # real, in (0, pi)
        val = (-1j / (2.0 * math.sin(theta))) * np.exp(-1j * theta * k)
        return complex(val) if side == "+" else complex(np.conj(val))
    theta = angle_for_energy(z)
    return complex((-1j / (2.0 * np.sin(theta))) * np.exp(-1j * theta * k))


def free_evolution_kernel(t: float, k, nodes_per_panel: int | None = None):
    """e^{it Delta}(n, m) with k = n - m, by angle quadrature.

    (1/2pi) int e^{-2it(1-cos theta)} e^{ik theta} dtheta; the node count
    grows linearly with t to track the oscillation.
    """
    karr = np.atleast_1d(np.asarray(k, dtype=int))
    if nodes_per_panel is None:
        nodes_per_panel = max(256, int(8 * math.ceil(abs(t))), 2 * int(np.max(np.abs(karr)) + 8) // 2)
    grid = AngleGrid.gauss_panels(nodes_per_panel)
    phase = np.exp(-2j * t * (1.0 - np.cos(grid.nodes)))
    mat = np.exp(1j * np.outer(karr, grid.nodes))
    out = mat @ (grid.weights * phase) / (2.0 * math.pi)
    return out if np.ndim(k) else complex(out[0])
