"""Scattering and spectral toolkit for the 1-D discrete Schrodinger
operator H = -Delta + q on the integer lattice."""

from .evolution import DecayReport, decay_probe, evolve_pc_kernel
from .freeops import (
    AngleGrid,
    ComplexAngle,
    cheb_kernel,
    f0_adjoint,
    f0_forward,
    free_evolution_kernel,
    free_resolvent_kernel,
)
from .jost import JostData, b_coefficients, jost_by_recursion, volterra_residual
from .lattice import (
    LatticeSeq,
    Potential,
    Window,
    eta_tail,
    gamma_tail,
    mirror,
    weighted_norm,
)
from .opmatrix import OperatorMatrix
from .scattering import (
    EdgeReport,
    ScatteringData,
    classify_edges,
    scattering_coefficients,
    wronskian,
)
from .spectral import (
    PlaneWaveTable,
    distorted_adjoint,
    distorted_forward,
    plane_wave_table,
    projection_continuous_two_routes,
    projection_discrete,
)
from .spectrum import (
    EigenPair,
    dense_reference_spectrum,
    find_eigenvalues,
    negative_count_bound_check,
    oscillation_count,
)
from .waveop import (
    boundary_operators,
    discrete_hilbert,
    lp_norm_probe,
    ls_residual,
    p_boundedness_criterion,
    pearson_probe,
    wave_operator_matrix,
)

__version__ = "0.1.0"
