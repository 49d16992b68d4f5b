"""Jost solutions of H f = 2(1 - cos theta) f by two independent routes.

Route 1 (series): coefficient tables B(n, nu) with

    m_+(n, theta) = 1 + sum_{nu >= 1} B_+(n, nu) e^{-i nu theta},
    f_+(n, theta) = e^{-i n theta} m_+(n, theta),

built from the exact double recursion

    B_+(n, 2nu)   = sum_{l=0}^{nu-1} sum_{j >= n+nu-l} q(j) B_+(j, 2l+1)
    B_+(n, 2nu-1) = sum_{l >= n+nu} q(l)
                    + sum_{l=0}^{nu-1} sum_{j >= n+nu-l} q(j) B_+(j, 2l).

All sums are finite for finitely supported q, so the table is exact.

Route 2 (recursion): the three-term recursion
f(n -+ 1) = (2 - z + q(n)) f(n) - f(n +- 1) seeded by exact exponentials
outside the support; this is the only route used off the band, where it runs
in the growing (stable) direction.

The minus-sign objects are the plus-sign objects of the mirrored potential
with indices reflected.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .freeops import ComplexAngle, _as_theta, cheb_kernel
from .lattice import LatticeSeq, Potential, Window, eta_tail, gamma_tail, mirror

__all__ = ["JostData", "b_coefficients", "jost_by_recursion", "volterra_residual"]


def exact_nu_max(q: Potential, window: Window) -> int:
    """Smallest table depth that is exactly supported for a finite q.

    B_+(n, nu) vanishes once n + ceil(nu/2) exceeds the support maximum, so
    depth 2(support_max - n_min) + 2 suffices for every n >= -N.
    """
    if q.is_zero:
        return 2
    return 2 * (q.support_max + window.half_width) + 2


def _b_table_plus(q: Potential, window: Window, nu_max: int) -> np.ndarray:
    """B_+(n, nu) for n in the window, nu in [0, nu_max]."""
    N = window.half_width
    ns = window.indices()
    B = np.zeros((2 * N + 1, nu_max + 1))
    if q.is_zero:
        return B
    smin, smax = q.support_min, q.support_max
    qsupp = np.asarray(q.values)

    def tail(m: int) -> float:
        # sum_{l >= m} q(l)
        lo = max(m, smin)
        if lo > smax:
            return 0.0
        return float(np.sum(qsupp[lo - smin :]))

    tails = np.array([tail(m) for m in range(smin, smax + 2)])

    def tail_at(ms: np.ndarray) -> np.ndarray:
        idx = np.clip(ms - smin, 0, smax + 1 - smin)
        out = tails[idx]
        out = np.where(ms > smax, 0.0, out)
        out = np.where(ms < smin, tails[0], out)
        return out

    # suffix sums G_l(m) = sum_{j >= m} q(j) B(j, l), needed at j inside the
    # support only; rebuilt after each completed nu-slice
    supp = np.arange(smin, smax + 1)
    supp_rows = supp + N
    G = np.zeros((nu_max + 1, smax + 2 - smin))

    def refresh_g(l: int):
        prod = qsupp * B[supp_rows, l]
        G[l] = np.concatenate([np.cumsum(prod[::-1])[::-1], [0.0]])

    def g_at(l: int, ms: np.ndarray) -> np.ndarray:
        idx = np.clip(ms - smin, 0, smax + 1 - smin)
        out = G[l, idx]
        out = np.where(ms > smax, 0.0, out)
        out = np.where(ms < smin, G[l, 0], out)
        return out

    refresh_g(0)
    for nu in range(1, nu_max + 1):
        if nu % 2 == 1:
            k = (nu + 1) // 2  # nu = 2k - 1
            acc = tail_at(ns + k)
            for l in range(k):
                acc = acc + g_at(2 * l, ns + k - l)
        else:
            k = nu // 2
            acc = np.zeros_like(B[:, 0])
            for l in range(k):
                acc = acc + g_at(2 * l + 1, ns + k - l)
        B[:, nu] = acc
        refresh_g(nu)
    return B


@dataclass(frozen=True)
class JostData:
    """Coefficient table and evaluators for one Jost family f_sign."""

    sign: int  # +1 or -1
    q: Potential
    window: Window
    nu_max: int
    B: np.ndarray  # shape (2N+1, nu_max+1); B[:, 0] == 0

    def b(self, n: int, nu: int) -> float:
        return float(self.B[self.window.index_of(n), nu])

    def m(self, n: int, theta) -> complex | np.ndarray:
        """m_sign(n, theta) = 1 + sum_nu B(n, nu) e^{-i nu theta}."""
        th = np.asarray(_as_theta(theta))
        nus = np.arange(self.nu_max + 1)
        phases = np.exp(-1j * np.multiply.outer(th, nus))
        out = 1.0 + phases @ self.B[self.window.index_of(n)]
        return out if out.ndim else complex(out)

    def f(self, n: int, theta) -> complex | np.ndarray:
        th = np.asarray(_as_theta(theta))
        out = np.exp(-1j * self.sign * n * th) * self.m(n, theta)
        return out if out.ndim else complex(out)

    def b_row(self, n: int) -> np.ndarray:
        return self.B[self.window.index_of(n)]

    def decay_bound(self, nu: int, n: int = 0) -> float:
        """Decay envelope e^{gamma(0)} eta(n + ceil(nu/2)), valid for
        sign*n >= 0.

        The eta argument carries the half-order shift familiar from
        inverse-scattering estimates: B(n, nu) is built from products of
        potential samples whose rightmost factor sits at site >= n +
        ceil(nu/2), so the envelope inherits the potential tail from that
        site on.  (The unshifted form eta(nu) fails already for a
        two-sided potential: B(0, 3) picks up the sample at the right end
        of the support while eta(3) can vanish.)
        """
        qq = self.q if self.sign > 0 else mirror(self.q)
        m = abs(n) + (nu + 1) // 2
        return math.exp(gamma_tail(qq, 0)) * eta_tail(qq, m)


def b_coefficients(q: Potential, sign: int, window: Window, nu_max: int | None = None) -> JostData:
    """Build the B table; the minus table reuses the plus recursion on the
    mirrored potential with reflected site index."""
    if sign not in (+1, -1):
        raise ValueError("sign must be +1 or -1")
    if nu_max is None:
        nu_max = exact_nu_max(q, window)
    if nu_max < 1:
        raise ValueError("nu_max must be >= 1")
    qq = q if sign > 0 else mirror(q)
    B = _b_table_plus(qq, window, nu_max)
    if sign < 0:
        B = B[::-1].copy()
    data = JostData(sign=sign, q=q, window=window, nu_max=nu_max, B=B)
    return data


def table_is_exact(data: JostData, slices: int = 2, tol: float = 0.0) -> bool:
    """True when the trailing nu-slices vanish, i.e. the depth saturated."""
    return bool(np.all(np.abs(data.B[:, -slices:]) <= tol))


def jost_by_recursion(q: Potential, theta, window: Window, sign: int = +1) -> np.ndarray:
    """f_sign(., theta) on the window by the three-term recursion.

    theta may be a real scalar, a ComplexAngle, or a 1-D array of angles; the
    result has shape (2N+1,) or (2N+1, K).  Seeds are the exact exponentials
    on the free side of the support, so for complex angles the recursion runs
    in the growing (numerically stable) direction.
    """
    if sign not in (+1, -1):
        raise ValueError("sign must be +1 or -1")
    th = np.atleast_1d(np.asarray(_as_theta(theta)))
    scalar = np.ndim(_as_theta(theta)) == 0
    N = window.half_width
    ns = window.indices()
    z = 2.0 * (1.0 - np.cos(th))
    f = np.zeros((2 * N + 1, th.size), dtype=complex)

    if sign > 0:
        seed_from = q.support_max if not q.is_zero else -N
        seed_from = max(min(seed_from, N - 1), -N)
        free = ns >= seed_from
        f[free] = np.exp(-1j * np.outer(ns[free], th))
        for n in range(seed_from, -N, -1):
            row = n + N
            f[row - 1] = (2.0 - z + q.q(n)) * f[row] - f[row + 1]
    else:
        seed_to = q.support_min if not q.is_zero else N
        seed_to = min(max(seed_to, -N + 1), N)
        free = ns <= seed_to
        f[free] = np.exp(1j * np.outer(ns[free], th))
        for n in range(seed_to, N):
            row = n + N
            f[row + 1] = (2.0 - z + q.q(n)) * f[row] - f[row - 1]

    return f[:, 0] if scalar else f


def volterra_residual(q: Potential, theta, f: LatticeSeq, sign: int = +1) -> float:
    """Sup defect of the summation equation

        f(mu) = e^{-sign i mu theta} - sum_{nu = mu}^{sign inf}
                [sin(theta (mu - nu)) / sin theta] q(nu) f(nu, theta)

    over the window; the kernel is evaluated by the Chebyshev recurrence so
    theta = 0 and pi are regular.  For the minus family the kernel argument
    is reflected (mirror symmetry), matching the seed e^{+i mu theta}.
    """
    th = _as_theta(theta)
    win = f.window
    ns = win.indices()
    supp = q.support_indices()
    worst = 0.0
    for mu in ns:
        acc = 0.0 + 0.0j
        for nu in supp:
            if (sign > 0 and nu >= mu) or (sign < 0 and nu <= mu):
                if win.contains(nu):
                    acc += cheb_kernel(sign * (mu - nu), th) * q.q(nu) * f.value(nu)
        defect = f.value(mu) - np.exp(-1j * sign * mu * th) + acc
        worst = max(worst, abs(defect))
    return worst
