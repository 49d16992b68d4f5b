import math

import numpy as np
import pytest

from lattscat import (ComplexAngle, LatticeSeq, Potential, Window,
                      b_coefficients, jost_by_recursion, volterra_residual)
from lattscat.jost import exact_nu_max, table_is_exact

THETAS = np.linspace(0.25, math.pi - 0.25, 9)


def test_free_jost_is_exponential():
    win = Window(12)
    q = Potential(0, ())
    for th in (0.4, 1.3):
        fp = jost_by_recursion(q, th, win, +1)
        expect = np.exp(-1j * th * win.indices())
        assert np.max(np.abs(fp - expect)) < 1e-12


def test_single_site_closed_form():
    # q = c delta_0: f_+(n) = e^{-in theta} for n >= 0, f_+(-1) = e^{i theta} + c
    c = -2.0
    q = Potential(0, (c,))
    win = Window(10)
    for th in THETAS:
        fp = jost_by_recursion(q, th, win, +1)
        assert fp[win.index_of(1)] == pytest.approx(np.exp(-1j * th), abs=1e-12)
        assert fp[win.index_of(0)] == pytest.approx(1.0, abs=1e-12)
        assert fp[win.index_of(-1)] == pytest.approx(np.exp(1j * th) + c, abs=1e-12)


def test_minus_family_mirrors_plus():
    rng = np.random.default_rng(9)
    q = Potential(-2, tuple(rng.uniform(-1, 1, 5)))
    qm = Potential(-2, tuple(reversed(q.values)))  # mirror through 0
    win = Window(16)
    for th in (0.7, 2.2):
        fm = jost_by_recursion(q, th, win, -1)
        fp = jost_by_recursion(qm, th, win, +1)
        assert np.max(np.abs(fm - fp[::-1])) < 1e-11


def test_jost_solves_difference_equation():
    q = Potential(-1, (0.3, -1.1, 0.6))
    win = Window(14)
    for th in (0.5, 1.9):
        z = 2.0 * (1.0 - math.cos(th))
        f = jost_by_recursion(q, th, win, +1)
        ns = win.indices()
        for i in range(1, win.size - 1):
            res = -f[i + 1] - f[i - 1] + (2.0 + q.q(int(ns[i]))) * f[i] - z * f[i]
            assert abs(res) < 1e-11


def test_two_route_equivalence():
    q = Potential(-2, (0.4, -0.8, 1.2, 0.1, -0.5))
    win = Window(12)
    for sign in (+1, -1):
        data = b_coefficients(q, sign, win)
        for th in THETAS:
            series = np.array([data.f(n, th) for n in win.indices()])
            recur = jost_by_recursion(q, th, win, sign)
            assert np.max(np.abs(series - recur)) < 1e-9


def test_b_table_depth_saturates():
    q = Potential(0, (1.0, -0.7))
    win = Window(10)
    data = b_coefficients(q, +1, win)
    assert data.nu_max == exact_nu_max(q, win)
    assert table_is_exact(data)


def test_b_bound_random_potentials():
    rng = np.random.default_rng(12)
    win = Window(16)
    for _ in range(25):
        q = Potential(int(rng.integers(-2, 1)), tuple(rng.uniform(-2, 2, rng.integers(1, 6))))
        data = b_coefficients(q, +1, win)
        for n in range(0, win.half_width + 1):
            for nu in range(1, data.nu_max + 1):
                assert abs(data.b(n, nu)) <= data.decay_bound(nu, n) + 1e-12


def test_volterra_residual_both_families():
    q = Potential(-1, (0.9, -1.4, 0.2))
    win = Window(14)
    for sign in (+1, -1):
        for th in (0.6, 1.4, 2.8):
            f = LatticeSeq(win, jost_by_recursion(q, th, win, sign))
            assert volterra_residual(q, th, f, sign) < 1e-10


def test_complex_angle_jost_decays():
    # on the lower branch f_+ decays to the right like e^{-a n}
    q = Potential(0, (-2.0,))
    ang = ComplexAngle("lower", 0.9)
    win = Window(20)
    fp = jost_by_recursion(q, ang, win, +1)
    ratio = abs(fp[win.index_of(6)] / fp[win.index_of(5)])
    assert ratio == pytest.approx(math.exp(-0.9), rel=1e-10)
