"""Plane waves, the distorted Fourier transform, and spectral projections.

The plane waves switch Jost family at theta = 0:

    psi(nu, theta) = (1/sqrt(2pi)) T(theta)  e^{-i nu theta} m_+(nu, theta),  theta >= 0
    psi(nu, theta) = (1/sqrt(2pi)) T(-theta) e^{-i nu theta} m_-(nu, -theta), theta < 0

(equivalently T f_+ resp. conj(T f_-), up to the 1/sqrt(2pi)).  Adopted
normalization, fixed numerically by F F* = Id and F* F = Pc:

    F[u](theta) = sum_n psi(n, theta) u(n),
    F*[g](n)    = int conj(psi(n, theta)) g(theta) dtheta,
    Pc(mu, nu)  = int conj(psi(mu, theta)) psi(nu, theta) dtheta.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .freeops import SQRT2PI, AngleGrid, default_nodes_per_panel
from .jost import jost_by_recursion
from .lattice import LatticeSeq, Potential, Window, band_buffer, window_for
from .opmatrix import OperatorMatrix
from .scattering import scattering_coefficients
from .spectrum import EigenPair, find_eigenvalues

__all__ = [
    "PlaneWaveTable",
    "plane_wave_table",
    "distorted_forward",
    "distorted_adjoint",
    "projection_discrete",
    "projection_continuous_two_routes",
]


@dataclass(frozen=True)
class PlaneWaveTable:
    """psi(nu, theta_k) on grid x window; psi has shape (K, 2N+1)."""

    q: Potential
    grid: AngleGrid
    window: Window
    psi: np.ndarray

    @property
    def free_part(self) -> np.ndarray:
        """e^{-i nu theta}/sqrt(2pi) on the same grid x window."""
        return np.exp(-1j * np.outer(self.grid.nodes, self.window.indices())) / SQRT2PI


def plane_wave_table(q: Potential, grid: AngleGrid, window: Window | None = None) -> PlaneWaveTable:
    """Tabulate psi per the two-branch definition (Jost recursion route)."""
    window = window or window_for(q)
    data = scattering_coefficients(q, grid, window)
    fp = jost_by_recursion(q, grid.nodes, window, +1)  # (2N+1, K)
    fm = jost_by_recursion(q, grid.nodes, window, -1)
    pos = grid.nodes >= 0.0
    psi = np.where(pos[None, :], data.T[None, :] * fp, np.conj(data.T[None, :] * fm))
    return PlaneWaveTable(q=q, grid=grid, window=window, psi=psi.T / SQRT2PI)


def distorted_forward(u: LatticeSeq, table: PlaneWaveTable) -> np.ndarray:
    """F[u](theta_k) = sum_n psi(n, theta_k) u(n), exact finite sum."""
    if u.window.half_width != table.window.half_width:
        raise ValueError("sequence window must match the table window")
    return table.psi @ u.values


def distorted_adjoint(g: np.ndarray, table: PlaneWaveTable) -> LatticeSeq:
    """F*[g](n) = int conj(psi(n, theta)) g(theta) dtheta, by quadrature."""
    g = np.asarray(g, dtype=complex)
    vals = np.conj(table.psi).T @ (table.grid.weights * g)
    return LatticeSeq(table.window, vals)


def projection_discrete(
    q: Potential, window: Window, eigenpairs: list[EigenPair] | None = None
) -> OperatorMatrix:
    """Pd = sum_j phi_j <., phi_j> over the discrete spectrum."""
    if eigenpairs is None:
        eigenpairs = find_eigenvalues(q, window)
    A = np.zeros((window.size, window.size), dtype=complex)
    for p in eigenpairs:
        phi = p.vector.values
        A += np.outer(phi, np.conj(phi))
    return OperatorMatrix(window, A, {"builder": "projection_discrete", "eigencount": len(eigenpairs)})


def projection_continuous_two_routes(
    q: Potential, window: Window, grid: AngleGrid | None = None
) -> tuple[OperatorMatrix, OperatorMatrix]:
    """(Pc_eig, Pc_quad): the eigen route I - Pd and the plane-wave quadrature
    of the projection kernel, returned side by side for comparison."""
    if grid is None:
        grid = AngleGrid.gauss_panels(default_nodes_per_panel(window.half_width))
    pd = projection_discrete(q, window)
    pc_eig = OperatorMatrix(
        window,
        np.eye(window.size, dtype=complex) - pd.entries,
        {"builder": "projection_eigen", "eigencount": pd.metadata["eigencount"]},
    )
    table = plane_wave_table(q, grid, window)
    pc_quad = OperatorMatrix(
        window,
        np.conj(table.psi).T @ (table.grid.weights[:, None] * table.psi),
        {"builder": "projection_quadrature", "nodes": grid.size},
    )
    return pc_eig, pc_quad


def resolvent_difference_density(
    q: Potential, window: Window, lam: float, eps: float, grid: AngleGrid | None = None
) -> tuple[np.ndarray, np.ndarray]:
    """Optional cross-check of the resolvent-difference route to Pc.

    Both sides compute the Lorentzian-smoothed spectral density at lam:
    the dense route evaluates (1/2pi i)[R(lam+i eps) - R(lam-i eps)] on the
    truncated H, the plane-wave route integrates the projection kernel
    against the same Lorentzian in energy.  Returns (dense, quad) matrices.
    """
    if not 0.0 < lam < 4.0:
        raise ValueError("sample the density inside the band (0, 4)")
    if grid is None:
        grid = AngleGrid.gauss_panels(default_nodes_per_panel(window.half_width))
    ns = window.indices()
    H = np.diag(2.0 + q.sample(ns)) - np.eye(window.size, k=1) - np.eye(window.size, k=-1)
    Rp = np.linalg.inv(H - (lam + 1j * eps) * np.eye(window.size))
    Rm = np.linalg.inv(H - (lam - 1j * eps) * np.eye(window.size))
    dense = (Rp - Rm) / (2j * math.pi)
    table = plane_wave_table(q, grid, window)
    energies = 2.0 * (1.0 - np.cos(grid.nodes))
    lorentz = (eps / math.pi) / ((energies - lam) ** 2 + eps**2)
    quad = np.conj(table.psi).T @ ((table.grid.weights * lorentz)[:, None] * table.psi)
    # the dense route also smears the discrete spectrum; remove it
    for p in find_eigenvalues(q, window):
        phi = p.vector.values
        weight = (eps / math.pi) / ((p.eigenvalue - lam) ** 2 + eps**2)
        dense = dense - weight * np.outer(phi, np.conj(phi))
    return dense, quad


def diagonalization_defect(q: Potential, u: LatticeSeq, table: PlaneWaveTable) -> float:
    """Sup over the grid of F[Hu] - 2(1-cos theta) F[u] for interior u."""
    buf = band_buffer(q)
    N = u.window.half_width
    mask = np.abs(u.window.indices()) > N - buf
    if np.any(np.abs(u.values[mask]) > 0):
        raise ValueError("test sequence must be supported in the window core")
    ns = u.window.indices()
    hu_vals = (2.0 + q.sample(ns)) * u.values
    hu_vals[1:] -= u.values[:-1]
    hu_vals[:-1] -= u.values[1:]
    hu = LatticeSeq(u.window, hu_vals)
    lhs = distorted_forward(hu, table)
    rhs = 2.0 * (1.0 - np.cos(table.grid.nodes)) * distorted_forward(u, table)
    return float(np.max(np.abs(lhs - rhs)))
