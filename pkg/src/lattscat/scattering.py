"""Wronskians, transmission/reflection coefficients, and band-edge
classification.

With W(theta) = [f_+, f_-] and W1(theta) = [f_+, conj(f_-)],

    T(theta)  = -2i sin(theta) / W(theta),
    R_+(theta) = -conj(W1)(theta) / W(theta),
    R_-(theta) = -W1(theta) / W(theta),

and |T|^2 + |R_pm|^2 = 1 off the edges.  A band edge (theta0 = 0 or pi) is
resonant exactly when W(theta0) = 0; there T extends continuously by
l'Hopital, T(theta0) = -2i cos(theta0) / W'(theta0), and equals 0 at a
generic (non-resonant) edge.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .freeops import AngleGrid
from .jost import jost_by_recursion
from .lattice import LatticeSeq, Potential, Window, window_for

__all__ = ["ScatteringData", "EdgeReport", "wronskian", "scattering_coefficients", "classify_edges"]


def wronskian(u: LatticeSeq, v: LatticeSeq, n: int) -> complex:
    """[u, v](n) = u(n+1) v(n) - u(n) v(n+1); constant in n for two solutions
    of H w = z w at the same energy."""
    return u.value(n + 1) * v.value(n) - u.value(n) * v.value(n + 1)


def _wronskian_arrays(fp: np.ndarray, fm: np.ndarray, row: int) -> np.ndarray:
    return fp[row + 1] * fm[row] - fp[row] * fm[row + 1]


def _jost_pair(q: Potential, thetas: np.ndarray, window: Window):
    fp = jost_by_recursion(q, thetas, window, +1)
    fm = jost_by_recursion(q, thetas, window, -1)
    return fp, fm


def wronskian_of_q(q: Potential, theta, window: Window | None = None) -> complex:
    """W(theta) = [f_+(theta), f_-(theta)] evaluated at an interior site."""
    window = window or window_for(q)
    th = np.atleast_1d(np.asarray(theta, dtype=complex))
    fp, fm = _jost_pair(q, th, window)
    w = _wronskian_arrays(fp, fm, window.index_of(0))
    return complex(w[0]) if np.ndim(theta) == 0 else w


@dataclass(frozen=True)
class EdgeReport:
    """Band-edge (resonance) classification with extended edge values."""

    resonant_at_0: bool
    resonant_at_4: bool
    T0: complex
    Tpi: complex
    R_plus_0: complex
    R_minus_0: complex
    R_plus_pi: complex
    R_minus_pi: complex
    W0: complex
    Wpi: complex
    Wdot0: complex
    Wdotpi: complex
    eps_res: float

    def to_dict(self) -> dict:
        def c(x):
            return {"re": float(np.real(x)), "im": float(np.imag(x))}

        return {
            "resonant_at_0": self.resonant_at_0,
            "resonant_at_4": self.resonant_at_4,
            "T0": c(self.T0),
            "Tpi": c(self.Tpi),
            "R_plus_0": c(self.R_plus_0),
            "R_minus_0": c(self.R_minus_0),
            "R_plus_pi": c(self.R_plus_pi),
            "R_minus_pi": c(self.R_minus_pi),
            "W0": c(self.W0),
            "Wpi": c(self.Wpi),
            "Wdot0": c(self.Wdot0),
            "Wdotpi": c(self.Wdotpi),
            "eps_res": self.eps_res,
        }


@dataclass(frozen=True)
class ScatteringData:
    """Scattering coefficients tabulated on an angle grid."""

    q: Potential
    grid: AngleGrid
    window: Window
    W: np.ndarray
    W1: np.ndarray
    T: np.ndarray
    R_plus: np.ndarray
    R_minus: np.ndarray
    wronskian_constancy: float
    edges: EdgeReport = field(repr=False)

    def unitarity_defect(self) -> float:
        d1 = np.abs(np.abs(self.T) ** 2 + np.abs(self.R_plus) ** 2 - 1.0)
        d2 = np.abs(np.abs(self.T) ** 2 + np.abs(self.R_minus) ** 2 - 1.0)
        return float(max(d1.max(), d2.max()))


def default_eps_res(q: Potential) -> float:
    # W(0) comes from exact finite recursions, so true zeros sit at roundoff
    return 1e-8 * (1.0 + q.l1)


def scattering_coefficients(q: Potential, grid: AngleGrid, window: Window | None = None) -> ScatteringData:
    """T, R_pm on the grid from Jost solutions.

    Raises if W vanishes at a grid node (impossible off the edges; signals a
    numerical fault) or if a node sits exactly at 0 or +-pi.
    """
    window = window or window_for(q)
    th = grid.nodes
    if np.any(np.isin(th, (0.0, math.pi, -math.pi))):
        raise ValueError("grid nodes must avoid theta = 0 and +-pi")
    fp, fm = _jost_pair(q, th, window)
    row0 = window.index_of(0)
    W = _wronskian_arrays(fp, fm, row0)
    if np.any(np.abs(W) == 0.0):
        raise ArithmeticError("Wronskian vanished at an interior grid node")
    # constancy of [f_+, f_-] across the window interior
    rows = np.arange(window.size - 1)
    all_w = fp[rows + 1] * fm[rows] - fp[rows] * fm[rows + 1]
    constancy = float(np.max(np.abs(all_w - W[None, :])))
    W1 = fp[row0 + 1] * np.conj(fm[row0]) - fp[row0] * np.conj(fm[row0 + 1])
    T = -2j * np.sin(th) / W
    R_plus = -np.conj(W1) / W
    R_minus = -W1 / W
    edges = classify_edges(q, window)
    return ScatteringData(
        q=q, grid=grid, window=window, W=W, W1=W1, T=T,
        R_plus=R_plus, R_minus=R_minus,
        wronskian_constancy=constancy, edges=edges,
    )


def _edge_values(q: Potential, window: Window, theta0: float, eps_res: float, h: float = 1e-3):
    """Resonance flag and extended T, R_pm at one band edge."""
    stencil = np.array([theta0 - 2 * h, theta0 - h, theta0, theta0 + h, theta0 + 2 * h])
    fp, fm = _jost_pair(q, stencil, window)
    row0 = window.index_of(0)
    Wst = _wronskian_arrays(fp, fm, row0)
    W1st = fp[row0 + 1] * np.conj(fm[row0]) - fp[row0] * np.conj(fm[row0 + 1])
    W_edge = Wst[2]
    # 4th-order centered differences; W is smooth for finitely supported q
    Wdot = (Wst[0] - 8.0 * Wst[1] + 8.0 * Wst[3] - Wst[4]) / (12.0 * h)
    W1dot = (W1st[0] - 8.0 * W1st[1] + 8.0 * W1st[3] - W1st[4]) / (12.0 * h)
    resonant = bool(abs(W_edge) <= eps_res)
    cos0 = math.cos(theta0)
    if resonant:
        if abs(Wdot) <= eps_res:
            raise ArithmeticError(
                f"resonant edge theta={theta0} with vanishing W-dot: data-quality failure"
            )
        T_edge = -2j * cos0 / Wdot
        R_plus_edge = -np.conj(W1dot) / Wdot
        R_minus_edge = -W1dot / Wdot
    else:
        T_edge = 0.0 + 0.0j
        R_plus_edge = -np.conj(W1st[2]) / W_edge
        R_minus_edge = -W1st[2] / W_edge
    return resonant, complex(T_edge), complex(R_plus_edge), complex(R_minus_edge), complex(W_edge), complex(Wdot)


def classify_edges(q: Potential, window: Window | None = None, eps_res: float | None = None) -> EdgeReport:
    """Resonance classification at both band edges with extended T values."""
    window = window or window_for(q)
    if eps_res is None:
        eps_res = default_eps_res(q)
    r0, T0, Rp0, Rm0, W0, Wd0 = _edge_values(q, window, 0.0, eps_res)
    r4, Tpi, Rppi, Rmpi, Wpi, Wdpi = _edge_values(q, window, math.pi, eps_res)
    return EdgeReport(
        resonant_at_0=r0, resonant_at_4=r4,
        T0=T0, Tpi=Tpi,
        R_plus_0=Rp0, R_minus_0=Rm0, R_plus_pi=Rppi, R_minus_pi=Rmpi,
        W0=W0, Wpi=Wpi, Wdot0=Wd0, Wdotpi=Wdpi,
        eps_res=eps_res,
    )
