"""The wave operator W = F* F0 as a matrix, its stationary and
time-dependent cross-checks, the discrete Hilbert transform, the band-edge
boundary operators, and l^p norm probes.

The discrete Hilbert transform is defined by its lattice kernel

    (Hv)(nu) = (2i/pi) sum_{nu' in nu + 2Z+1} v(nu') / (nu - nu'),

whose symbol is sign(theta).  The four boundary operators combine the
extended edge data (T and R_pm at 0 and pi, the Jost factors m_pm(., 0))
with sign(theta)-multiplier kernels localized by a smooth even partition
chi + chi1 = 1 (raised cosine, chi = 1 for |theta| < pi/3, chi = 0 for
|theta| > 2pi/3); they all vanish exactly when T(0) = T(pi) = 1.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .freeops import SQRT2PI, AngleGrid, default_nodes_per_panel
from .jost import jost_by_recursion
from .lattice import LatticeSeq, Potential, Window, band_buffer, window_for
from .opmatrix import OperatorMatrix
from .scattering import EdgeReport, classify_edges
from .spectral import PlaneWaveTable, plane_wave_table
from .spectrum import find_eigenvalues

__all__ = [
    "wave_operator_matrix",
    "ls_residual",
    "pearson_probe",
    "discrete_hilbert",
    "hilbert_apply",
    "boundary_operators",
    "p_boundedness_criterion",
    "lp_norm_probe",
]


def wave_operator_matrix(
    q: Potential,
    window: Window,
    grid: AngleGrid | None = None,
    table: PlaneWaveTable | None = None,
) -> OperatorMatrix:
    """W(mu, nu) = int psi(mu, theta) e^{+i nu theta}/sqrt(2pi) dtheta.

    The orientation (no conjugation on psi) is fixed by matching the
    time-dependent limit of e^{itH} e^{it Delta} as t -> +infinity against
    the dense-matrix evolution oracle; the conjugate kernel produces the
    t -> -infinity wave operator instead.
    """
    if table is None:
        if grid is None:
            grid = AngleGrid.gauss_panels(default_nodes_per_panel(window.half_width))
        table = plane_wave_table(q, grid, window)
    free = table.free_part
    A = table.psi.T @ (table.grid.weights[:, None] * np.conj(free))
    return OperatorMatrix(window, A, {"builder": "wave_operator", "nodes": table.grid.size})


def ls_residual(q: Potential, table: PlaneWaveTable, edge_gap: float = 1e-6) -> float:
    """Sup over grid x window core of the Lippmann-Schwinger defect

        psi(mu, th) - e^{-i mu th}/sqrt(2pi)
            -+ (i / 2 sin th) sum_nu e^{-+ i th |nu - mu|} q(nu) psi(nu, th)

    (upper signs for th > 0, lower for th < 0).  Nodes within edge_gap of
    0 or +-pi are skipped; the sum runs over the support of q only.
    """
    th = table.grid.nodes
    keep = (np.abs(th) > edge_gap) & (np.abs(np.abs(th) - math.pi) > edge_gap)
    window = table.window
    buf = band_buffer(q)
    mus = window.core_indices(buf)
    supp = q.support_indices()
    psi = table.psi[keep]  # (K', 2N+1)
    thk = th[keep]
    free = np.exp(-1j * np.outer(thk, mus)) / SQRT2PI
    sgn = np.where(thk > 0, 1.0, -1.0)
    if supp.size:
        qvals = q.sample(supp)
        psi_supp = psi[:, [window.index_of(int(n)) for n in supp]]  # (K', S)
        dist = np.abs(mus[:, None] - supp[None, :])  # (M, S)
        # e^{-+ i th |nu - mu|}: exponent sign follows the branch
        phase = np.exp(-1j * sgn[:, None, None] * thk[:, None, None] * dist[None, :, :])
        series = np.einsum("ks,kms->km", psi_supp * qvals[None, :], phase)
        correction = (1j * sgn / (2.0 * np.sin(thk)))[:, None] * series
    else:
        correction = 0.0
    mu_cols = [window.index_of(int(m)) for m in mus]
    defect = psi[:, mu_cols] - free - correction
    return float(np.max(np.abs(defect)))


def dense_hamiltonian(q: Potential, window: Window) -> np.ndarray:
    """Dirichlet truncation of H = -Delta + q as a dense symmetric matrix."""
    n = window.size
    H = np.diag(2.0 + q.sample(window.indices())).astype(float)
    H -= np.eye(n, k=1) + np.eye(n, k=-1)
    return H


def _matrix_exponential_group(A: np.ndarray):
    """Returns t -> e^{itA} via one symmetric eigendecomposition."""
    vals, vecs = np.linalg.eigh(A)

    def group(t: float) -> np.ndarray:
        return (vecs * np.exp(1j * t * vals)[None, :]) @ vecs.conj().T

    return group


def pearson_probe(
    q: Potential,
    u: LatticeSeq,
    t_list,
    window: Window | None = None,
    grid: AngleGrid | None = None,
    edge_mass_tol: float = 1e-8,
) -> list[float]:
    """Residuals || e^{itH} e^{it Delta} u - W u ||_2 along t_list.

    Evolutions use dense eigendecompositions of the Dirichlet truncations;
    raises when the freely evolved state reaches the window edge.
    """
    window = window or u.window
    if u.window.half_width != window.half_width:
        raise ValueError("probe state must live on the probe window")
    H = dense_hamiltonian(q, window)
    H0 = dense_hamiltonian(Potential(0, ()), window)
    exp_h = _matrix_exponential_group(H)
    exp_delta = _matrix_exponential_group(-H0)  # e^{it Delta} = e^{it(-H0)}
    wu = wave_operator_matrix(q, window, grid=grid).entries @ u.values
    edge = max(2, window.half_width // 64)
    out = []
    for t in t_list:
        free = exp_delta(float(t)) @ u.values
        if float(np.max(np.abs(free[:edge])) + np.max(np.abs(free[-edge:]))) > edge_mass_tol:
            raise ArithmeticError(f"mass reached the window edge at t={t}; enlarge the window")
        both = exp_h(float(t)) @ free
        out.append(float(np.linalg.norm(both - wu)))
    return out


# -- discrete Hilbert transform -------------------------------------------


def hilbert_apply(v_sites: np.ndarray, v_values: np.ndarray, out_sites: np.ndarray) -> np.ndarray:
    """(Hv)(nu) over out_sites for v given on v_sites (exact kernel sum)."""
    diff = out_sites[:, None] - v_sites[None, :]
    odd = (diff % 2) != 0
    with np.errstate(divide="ignore"):
        kern = np.where(odd, 1.0 / np.where(odd, diff, 1), 0.0)
    return (2j / math.pi) * (kern @ v_values)


def discrete_hilbert(v: LatticeSeq) -> LatticeSeq:
    """Parity-restricted convolution with (2i/pi)/(nu - nu') on the window."""
    ns = v.window.indices()
    return LatticeSeq(v.window, hilbert_apply(ns, v.values, ns))


def hilbert_matrix(window: Window) -> OperatorMatrix:
    ns = window.indices()
    diff = ns[:, None] - ns[None, :]
    odd = (diff % 2) != 0
    kern = (2j / math.pi) * np.where(odd, 1.0 / np.where(odd, diff, 1), 0.0)
    return OperatorMatrix(window, kern, {"builder": "discrete_hilbert"})


# -- boundary operators ----------------------------------------------------


def edge_cutoff(theta: np.ndarray) -> np.ndarray:
    """Smooth even raised-cosine cutoff: 1 on |theta|<pi/3, 0 on |theta|>2pi/3."""
    t = np.abs(np.asarray(theta, dtype=float))
    s = np.clip((t - math.pi / 3.0) / (math.pi / 3.0), 0.0, 1.0)
    return np.cos(0.5 * math.pi * s) ** 2


def _sign_multiplier_kernels(window: Window, grid: AngleGrid, cutoff: np.ndarray):
    """A(mu,nu) = (1/2pi) int sign chi e^{i(mu-nu)theta} dtheta and the
    e^{-i(mu+nu)theta} companion, by quadrature."""
    ns = window.indices()
    sgn = np.sign(grid.nodes)
    w = grid.weights * sgn * cutoff / (2.0 * math.pi)
    ep = np.exp(1j * np.outer(ns, grid.nodes))  # (M, K) rows e^{i mu theta}
    em = np.exp(-1j * np.outer(ns, grid.nodes))
    A = (ep * w[None, :]) @ em.T  # int e^{i mu th} e^{-i nu th}
    B = (em * w[None, :]) @ em.T  # int e^{-i mu th} e^{-i nu th}
    return A, B


def boundary_operators(
    q: Potential,
    window: Window,
    grid: AngleGrid | None = None,
    edges: EdgeReport | None = None,
) -> list[OperatorMatrix]:
    """The four band-edge operators as dense matrices for norm probing.

    V1, V2 act on [0, inf) through m_+(., 0) with the (T(0)-1, R_+(0)) and
    (T(pi)-1, R_+(pi)) coefficients; V3, V4 act on (-inf, 0) through
    m_-(., 0) with the (1-T(0), R_-(0)) coefficients, localized near 0 and
    pi respectively.
    """
    if grid is None:
        grid = AngleGrid.gauss_panels(default_nodes_per_panel(window.half_width))
    if edges is None:
        edges = classify_edges(q, window)
    ns = window.indices()
    chi = edge_cutoff(grid.nodes)
    chi1 = 1.0 - chi
    A0, B0 = _sign_multiplier_kernels(window, grid, chi)
    A1, B1 = _sign_multiplier_kernels(window, grid, chi1)
    m_plus_0 = np.real(jost_by_recursion(q, 0.0, window, +1))
    m_minus_0 = np.real(jost_by_recursion(q, 0.0, window, -1))
    right = (ns >= 0).astype(float)
    left = (ns < 0).astype(float)
    v1 = (right * m_plus_0)[:, None] * ((edges.T0 - 1.0) * A0 - edges.R_plus_0 * B0)
    v2 = (right * m_plus_0)[:, None] * ((edges.Tpi - 1.0) * A1 - edges.R_plus_pi * B1)
    v3 = (left * m_minus_0)[:, None] * ((1.0 - edges.T0) * A0 + edges.R_minus_0 * B0)
    v4 = (left * m_minus_0)[:, None] * ((1.0 - edges.T0) * A1 + edges.R_minus_0 * B1)
    meta = {"nodes": grid.size}
    return [
        OperatorMatrix(window, v1, {"builder": "boundary_v1", **meta}),
        OperatorMatrix(window, v2, {"builder": "boundary_v2", **meta}),
        OperatorMatrix(window, v3, {"builder": "boundary_v3", **meta}),
        OperatorMatrix(window, v4, {"builder": "boundary_v4", **meta}),
    ]


def p_boundedness_criterion(edges: EdgeReport, eps: float | None = None) -> bool:
    """True iff both edges are resonant with extended T(0) = T(pi) = 1."""
    if eps is None:
        eps = edges.eps_res
    return bool(
        edges.resonant_at_0
        and edges.resonant_at_4
        and abs(edges.T0 - 1.0) < eps
        and abs(edges.Tpi - 1.0) < eps
    )


def lp_norm_probe(A: OperatorMatrix, p) -> float:
    """Exact matrix norms: p=1 max column sum, p=inf max row sum, p=2 the
    largest singular value."""
    M = A.entries
    if p == 1:
        return float(np.max(np.sum(np.abs(M), axis=0)))
    if p == 2:
        return float(np.linalg.norm(M, 2))
    if p == math.inf or p == "inf":
        return float(np.max(np.sum(np.abs(M), axis=1)))
    raise ValueError("supported p values are 1, 2, and inf")
