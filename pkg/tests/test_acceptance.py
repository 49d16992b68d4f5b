"""Acceptance gate: twelve property checks with pinned tolerances.

Each test prints exactly one pass/fail line for its criterion before
asserting, so a full run yields a twelve-line scoreboard.
"""

import math

import numpy as np
import pytest

from lattscat import (AngleGrid, LatticeSeq, Potential, Window,
                      b_coefficients, classify_edges, decay_probe,
                      dense_reference_spectrum, evolve_pc_kernel,
                      find_eigenvalues, jost_by_recursion, lp_norm_probe,
                      ls_residual, negative_count_bound_check,
                      oscillation_count, p_boundedness_criterion,
                      pearson_probe, plane_wave_table,
                      projection_continuous_two_routes, scattering_coefficients,
                      volterra_residual, wave_operator_matrix, wronskian)
from lattscat.freeops import default_nodes_per_panel
from lattscat.lattice import band_buffer, window_for
from lattscat.spectral import diagonalization_defect
from lattscat.waveop import dense_hamiltonian, hilbert_apply

BUILTINS = [
    Potential(0, ()),
    Potential(0, (1.0,)),
    Potential(0, (-2.0,)),
    Potential(0, (4.0,)),
    Potential(-2, tuple(np.random.default_rng(7).uniform(-2, 2, 5))),
    Potential(-2, tuple(np.random.default_rng(21).uniform(-2, 2, 5))),
]

# Calibrated once from the explicit Hilbert-kernel column sums: the
# truncated convolution with (2i/pi)/(nu - nu') gains (2/pi) ln 8 = 1.3238
# in l1 norm between half-widths 64 and 512; the wave-operator growth for
# the single-site potential tracks that tail, measured at 1.3416.
L1_GROWTH_DELTA = 1.31


def _report(num: int, ok: bool, detail: str) -> bool:
    print(f"criterion {num:02d} {'PASS' if ok else 'FAIL'}: {detail}")
    return ok


def _random_five_site(rng) -> Potential:
    return Potential(-2, tuple(rng.uniform(-2.0, 2.0, 5)))


def test_criterion_01_unitarity():
    rng = np.random.default_rng(101)
    grid = AngleGrid.gauss_panels(256)
    worst = 0.0
    for _ in range(50):
        sc = scattering_coefficients(_random_five_site(rng), grid)
        worst = max(worst, sc.unitarity_defect())
    ok = worst < 1e-10
    assert _report(1, ok, f"max |T|^2+|R|^2 defect {worst:.3e} (tol 1e-10)")


def test_criterion_02_wronskian_structure():
    rng = np.random.default_rng(102)
    grid = AngleGrid.gauss_panels(256)
    constancy = 0.0
    conj_defect = 0.0
    lower_slack = math.inf
    for _ in range(10):
        q = _random_five_site(rng)
        sc = scattering_coefficients(q, grid)
        constancy = max(constancy, sc.wronskian_constancy)
        lower_slack = min(lower_slack, float(np.min(
            np.abs(sc.W) - 2.0 * np.abs(np.sin(grid.nodes)))))
        win = window_for(q)
        for th in (0.6, 1.7, 2.9):
            for sign, expect in ((+1, 2j * math.sin(th)), (-1, -2j * math.sin(th))):
                f = jost_by_recursion(q, th, win, sign)
                w = wronskian(LatticeSeq(win, np.conj(f)), LatticeSeq(win, f), 0)
                conj_defect = max(conj_defect, abs(w - expect))
    ok = constancy < 1e-10 and conj_defect < 1e-10 and lower_slack > -1e-10
    assert _report(2, ok, f"constancy {constancy:.3e}, conjugate-pair defect "
                          f"{conj_defect:.3e}, |W|-2|sin| slack {lower_slack:.3e}")


def test_criterion_03_two_route_jost():
    grid = AngleGrid.gauss_panels(128)
    route_diff = 0.0
    volterra = 0.0
    for q in BUILTINS:
        win = window_for(q)
        for sign in (+1, -1):
            data = b_coefficients(q, sign, win)
            series = np.array([data.f(n, grid.nodes) for n in win.indices()])
            recur = jost_by_recursion(q, grid.nodes, win, sign)
            route_diff = max(route_diff, float(np.max(np.abs(series - recur))))
            for th in np.linspace(0.3, math.pi - 0.3, 9):
                f = LatticeSeq(win, jost_by_recursion(q, th, win, sign))
                volterra = max(volterra, volterra_residual(q, th, f, sign))
    ok = route_diff < 1e-9 and volterra < 1e-10
    assert _report(3, ok, f"series-vs-recursion sup {route_diff:.3e} (tol 1e-9), "
                          f"Volterra residual {volterra:.3e} (tol 1e-10)")


def test_criterion_04_b_coefficient_bound():
    rng = np.random.default_rng(104)
    violations = 0
    worst = 0.0
    for _ in range(50):
        q = _random_five_site(rng)
        win = window_for(q)
        data = b_coefficients(q, +1, win)
        for n in range(0, win.half_width + 1):
            row = np.abs(data.b_row(n)[1:])
            caps = np.array([data.decay_bound(nu, n) for nu in range(1, data.nu_max + 1)])
            over = row - caps
            if np.any(over > 1e-12):
                violations += 1
                worst = max(worst, float(np.max(over)))
    ok = violations == 0
    assert _report(4, ok, f"{violations} envelope violations over 50 random potentials"
                          + (f", worst {worst:.3e}" if violations else ""))


def test_criterion_05_completeness():
    q = Potential(0, (1.0,))
    win = Window(128)
    buf = band_buffer(q)
    grid = AngleGrid.gauss_panels(default_nodes_per_panel(win.half_width))
    pc_eig, pc_quad = projection_continuous_two_routes(q, win, grid)
    at_default = pc_eig.core_max_diff(pc_quad, buf)
    # refinement run starts from a deliberately coarse grid so that
    # quadrature error (not roundoff) dominates the first two levels
    seq = []
    for nodes in (64, 128, 256):
        g = AngleGrid.gauss_panels(nodes)
        e, qd = projection_continuous_two_routes(q, win, g)
        seq.append(e.core_max_diff(qd, buf))
    decreasing = seq[0] > seq[1] > seq[2]
    P = pc_quad.entries
    idem = float(np.max(np.abs(P @ P - P)))
    eig_kill = max((float(np.linalg.norm(P @ p.vector.values))
                    for p in find_eigenvalues(q, win)), default=0.0)
    ok = at_default < 1e-6 and decreasing and idem < 1e-8 and eig_kill < 1e-8
    assert _report(5, ok, f"core defect {at_default:.3e} (tol 1e-6), refinement "
                          f"{seq[0]:.2e}->{seq[1]:.2e}->{seq[2]:.2e} decreasing={decreasing}, "
                          f"idempotence {idem:.3e}, eigenvector leak {eig_kill:.3e}")


def test_criterion_06_diagonalization_and_intertwining():
    q = Potential(0, (1.0,))
    win = Window(48)
    grid = AngleGrid.gauss_panels(default_nodes_per_panel(win.half_width))
    table = plane_wave_table(q, grid, win)
    diag = max(diagonalization_defect(q, LatticeSeq.delta(win, s), table)
               for s in (-5, 0, 3))
    W = wave_operator_matrix(q, win, grid)
    H = dense_hamiltonian(q, win)
    H0 = dense_hamiltonian(Potential(0, ()), win)
    buf = band_buffer(q)
    sl = slice(buf, win.size - buf)
    inter = float(np.max(np.abs((H @ W.entries - W.entries @ H0)[sl, sl])))
    ok = diag < 1e-8 and inter < 1e-6
    assert _report(6, ok, f"diagonalization defect {diag:.3e} (tol 1e-8), "
                          f"intertwining defect {inter:.3e} (tol 1e-6)")


def test_criterion_07_lippmann_schwinger():
    worst = 0.0
    for q in BUILTINS:
        win = window_for(q, half_width=48)
        grid = AngleGrid.gauss_panels(default_nodes_per_panel(win.half_width))
        worst = max(worst, ls_residual(q, plane_wave_table(q, grid, win)))
    ok = worst < 1e-8
    assert _report(7, ok, f"max plane-wave equation residual {worst:.3e} (tol 1e-8)")


def test_criterion_08_pearson_probe():
    q = Potential(0, (1.0,))
    u = LatticeSeq.delta(Window(256), 3)
    res = pearson_probe(q, u, [5.0, 10.0, 20.0, 40.0])
    decreasing = all(a > b for a, b in zip(res, res[1:]))
    ok = decreasing and res[-1] < 0.05
    assert _report(8, ok, "residuals " + "->".join(f"{r:.3f}" for r in res)
                          + f", decreasing={decreasing}, final<0.05={res[-1] < 0.05}")


def test_criterion_09_spectrum():
    q = Potential(0, (-2.0,))
    pairs = find_eigenvalues(q)
    dense, _ = dense_reference_spectrum(q, Window(400))
    lam = pairs[0].eigenvalue
    dense_gap = abs(lam - float(dense[0]))
    residual = pairs[0].residual(q)
    rng = np.random.default_rng(109)
    bound_fail = 0
    for _ in range(100):
        k = int(rng.integers(1, 6))
        qq = Potential(int(rng.integers(-3, 1)), tuple(rng.uniform(-2, 2, k)))
        check = negative_count_bound_check(qq)
        if not (check.total_ok and check.negative_ok and check.reflection_count_match):
            bound_fail += 1
    grid = np.linspace(-4.0 - q.l1, 0.0, 20)
    counts = [oscillation_count(q, x) for x in grid]
    monotone = all(a <= b for a, b in zip(counts, counts[1:]))
    sturm_ok = True
    for _ in range(3):
        qq = _random_five_site(rng)
        dvals, _ = dense_reference_spectrum(qq, Window(400))
        for x in (-2.0, -1.0, -0.3):
            if oscillation_count(qq, x) != int(np.sum(dvals < x)):
                sturm_ok = False
    ok = (dense_gap < 1e-8 and residual < 1e-9 and bound_fail == 0
          and monotone and sturm_ok)
    assert _report(9, ok, f"eigenvalue gap to dense {dense_gap:.3e} (tol 1e-8), "
                          f"residual {residual:.3e} (tol 1e-9), count-bound failures "
                          f"{bound_fail}/100, N(lambda) monotone={monotone}, "
                          f"dense count match={sturm_ok}")


def test_criterion_10_boundedness_criterion():
    sizes = (64, 128, 256, 512)
    free_norms, delta_norms = [], []
    for n in sizes:
        win = Window(n)
        grid = AngleGrid.gauss_panels(default_nodes_per_panel(n))
        free_norms.append(lp_norm_probe(wave_operator_matrix(Potential(0, ()), win, grid), 1))
        delta_norms.append(lp_norm_probe(wave_operator_matrix(Potential(0, (1.0,)), win, grid), 1))
    free_ok = all(abs(v - 1.0) < 1e-8 for v in free_norms)
    crit_free = p_boundedness_criterion(classify_edges(Potential(0, ()), Window(12)))
    crit_delta = p_boundedness_criterion(classify_edges(Potential(0, (1.0,)), Window(24)))
    increasing = all(a < b for a, b in zip(delta_norms, delta_norms[1:]))
    growth = delta_norms[-1] - delta_norms[0]
    ok = (crit_free and not crit_delta and free_ok and increasing
          and growth >= L1_GROWTH_DELTA)
    assert _report(10, ok, f"free criterion={crit_free} norms 1+/-{max(abs(v - 1.0) for v in free_norms):.1e}, "
                           f"single-site criterion={crit_delta} l1 growth {growth:.4f} "
                           f"(needs >= {L1_GROWTH_DELTA})")


def test_criterion_11_discrete_hilbert():
    win = Window(48)
    grid = AngleGrid.gauss_panels(default_nodes_per_panel(win.half_width))
    rng = np.random.default_rng(111)
    symbol = 0.0
    ns = win.indices()
    for _ in range(3):
        v = np.zeros(win.size, dtype=complex)
        v[win.index_of(-6):win.index_of(6) + 1] = rng.standard_normal(13)
        vhat = (np.exp(-1j * np.outer(grid.nodes, ns)) @ v) / math.sqrt(2.0 * math.pi)
        back = (np.exp(1j * np.outer(ns, grid.nodes))
                @ (grid.weights * np.sign(grid.nodes) * vhat)) / math.sqrt(2.0 * math.pi)
        symbol = max(symbol, float(np.max(np.abs(back - hilbert_apply(ns, v, ns)))))
    big = Window(2048)
    bn = big.indices()
    ratios = []
    for s in range(1, 11):
        prof = bn * np.exp(-((bn / (2.0 * s)) ** 2))
        mask = np.abs(bn) <= 20 * s
        v = np.where(mask, prof, 0.0).astype(complex)
        hv = hilbert_apply(bn[mask], v[mask], bn)
        ratios.append(float(np.sum(np.abs(hv)) / np.sum(np.abs(v))))
    stable = max(ratios) < 1.5 and max(ratios) / min(ratios) < 1.1
    ok = symbol < 1e-6 and stable
    assert _report(11, ok, f"kernel/symbol defect {symbol:.3e} (tol 1e-6), odd-input "
                           f"l1 ratios in [{min(ratios):.3f}, {max(ratios):.3f}], stable={stable}")


def test_criterion_12_dispersive_decay():
    t_grid = np.geomspace(1.0, 100.0, 12)
    trend_ok = True
    constants = []
    for q in (Potential(0, ()), Potential(0, (1.0,))):
        rep = decay_probe(q, t_grid, Window(256))
        constants.append(rep.constant)
        first = float(np.median(rep.c[:3]))
        last = float(np.median(rep.c[-3:]))
        if not (np.isfinite(rep.constant) and last <= 1.2 * first):
            trend_ok = False
    q = Potential(0, (1.0,))
    win = Window(128)
    grid = AngleGrid.gauss_panels(default_nodes_per_panel(win.half_width))
    H = dense_hamiltonian(q, win)
    vals, vecs = np.linalg.eigh(H)
    pc_eig, _ = projection_continuous_two_routes(q, win, grid)
    oracle_gap = 0.0
    for t in (1.0, 5.0, 20.0):
        U = (vecs * np.exp(1j * t * vals)) @ vecs.conj().T @ pc_eig.entries
        K = evolve_pc_kernel(q, t, win, grid)
        margin = int(math.ceil(2.0 * t)) + 16
        c = win.half_width
        sl = slice(margin, win.size - margin)
        oracle_gap = max(oracle_gap, float(np.max(np.abs(K.entries[sl, sl] - U[sl, sl]))))
    ok = trend_ok and oracle_gap < 1e-6
    assert _report(12, ok, f"constants {constants[0]:.3f}/{constants[1]:.3f}, "
                           f"trend ok={trend_ok}, dense-oracle gap {oracle_gap:.3e} (tol 1e-6)")
