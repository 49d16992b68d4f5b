import math

import numpy as np
import pytest

from lattscat import LatticeSeq, Potential, Window, eta_tail, gamma_tail, mirror, weighted_norm
from lattscat.lattice import band_buffer, window_for


def test_potential_trims_zero_padding():
    q = Potential(-1, (0.0, 1.0, 0.0))
    assert q.offset == 0
    assert q.values == (1.0,)


def test_potential_empty_is_free():
    q = Potential(3, ())
    assert q.l1 == 0.0
    assert q.support_radius == 0
    assert q.q(0) == 0.0


def test_potential_sampling_and_norms():
    q = Potential(-2, (0.5, 0.0, -2.0, 0.0, 1.5))
    assert q.q(-2) == 0.5
    assert q.q(0) == -2.0
    assert q.q(2) == 1.5
    assert q.q(7) == 0.0
    assert q.l1 == pytest.approx(4.0)
    assert q.nu_weighted_l1() == pytest.approx(0.5 * 2 + 1.5 * 2)


def test_potential_rejects_non_finite():
    with pytest.raises(ValueError):
        Potential(0, (math.inf,))


def test_minus_part_and_negated():
    q = Potential(0, (-1.0, 2.0))
    qm = q.minus_part()
    assert qm.q(0) == -1.0 and qm.q(1) == 0.0
    qn = q.negated()
    assert qn.q(0) == 1.0 and qn.q(1) == -2.0


def test_mirror_reflects_sites():
    q = Potential(1, (3.0, 4.0))  # sites 1, 2
    m = mirror(q)
    assert m.q(-1) == 3.0 and m.q(-2) == 4.0 and m.q(1) == 0.0


def test_eta_gamma_tails():
    q = Potential(0, (1.0, -2.0, 3.0))
    assert eta_tail(q, 1) == pytest.approx(5.0)
    assert eta_tail(q, 3) == 0.0
    # gamma(0) = sum nu |q(nu)| for nu >= 0
    assert gamma_tail(q, 0) == pytest.approx(2.0 + 2 * 3.0)


def test_window_indexing():
    w = Window(4)
    assert w.size == 9
    assert list(w.indices()[:3]) == [-4, -3, -2]
    assert w.index_of(0) == 4
    with pytest.raises(IndexError):
        w.index_of(5)


def test_window_for_rejects_small():
    q = Potential(-6, tuple(np.ones(13)))
    with pytest.raises(ValueError):
        window_for(q, half_width=5)
    assert window_for(q).half_width >= band_buffer(q)


def test_weighted_norm_validation_and_values():
    w = Window(3)
    u = LatticeSeq.delta(w, 2)
    assert weighted_norm(u, 1, 1.0) == pytest.approx(math.sqrt(5.0))  # <2> = sqrt(1+4)
    assert weighted_norm(u, math.inf, 0.0) == pytest.approx(1.0)
    with pytest.raises(ValueError):
        weighted_norm(u, 0.5, 0.0)


def test_lattice_seq_delta_and_value():
    w = Window(5)
    u = LatticeSeq.delta(w, -3)
    assert u.value(-3) == 1.0
    assert u.value(0) == 0.0
    assert np.sum(np.abs(u.values)) == 1.0
