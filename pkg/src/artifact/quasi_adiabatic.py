"""Filter functions and quasi-adiabatic continuation for quadratic fermions.

The filter pair is ``g(u) = N^-1 prod_n sinc(rho_n u)`` and
``F(t) = (i/2) int (delta(u) - g(u)) sgn(t - u) du``.  In frequency space
``g~`` is a convolution of normalized boxes of half-width ``rho_n`` and
``F~(w) = -(1 - g~(w)) / w``, which is exactly ``-1/w`` outside the support of
``g~``.  Fourier convention: ``f~(w) = int f(t) exp(i w t) dt``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Dict, List, Optional, Sequence, Tuple

import numpy as np
import scipy.linalg as sla
from scipy.optimize import curve_fit

from .bdg import CovarianceMatrix, InterpolationPath, ground_covariance
from .lattice import EdgeLattice


def eps_log(y):
    return 1.0 / np.log((2.0 + np.asarray(y, dtype=float)) ** 2)


EPSILONS: Dict[str, Callable] = {"log": eps_log}


def rho_sequence(eps: str = "log", n_max: int = 2000, total: float = 1.0 - 1e-9) -> Tuple[np.ndarray, float]:
    """``rho_n = c e eps(n) / n`` for ``n <= n_max`` with ``c`` fixing the sum to ``total``."""
    if eps not in EPSILONS:
        raise ValueError(f"unknown epsilon choice {eps!r}")
    if n_max < 2:
        raise ValueError("n_max must be at least 2")
    n = np.arange(1, n_max + 1, dtype=float)
    base = np.e * EPSILONS[eps](n) / n
    c = total / base.sum()
    return c * base, float(c)


def check_rho(rho: np.ndarray) -> None:
    if np.any(rho <= 0):
        raise ValueError("rho_n must be positive")
    if np.any(np.diff(rho) > 0):
        raise ValueError("rho_n must be nonincreasing")
    if rho.sum() > 1.0:
        raise ValueError("sum of rho_n exceeds 1")


def _box_step(f: np.ndarray, grid: np.ndarray, h: float, rho: float) -> np.ndarray:
    """Exact convolution of the piecewise-linear interpolant of ``f`` with a normalized box."""
    cum = np.concatenate([[0.0], np.cumsum(0.5 * h * (f[1:] + f[:-1]))])

    def prim(w):
        s = (w - grid[0]) / h
        j = np.clip(np.floor(s).astype(int), 0, grid.size - 2)
        u = np.clip(s - j, 0.0, 1.0)
        val = cum[j] + h * (f[j] * u + 0.5 * (f[j + 1] - f[j]) * u * u)
        val = np.where(w <= grid[0], 0.0, val)
        return np.where(w >= grid[-1], cum[-1], val)

    return (prim(grid + rho) - prim(grid - rho)) / (2.0 * rho)


def box_convolution(rho: np.ndarray, n_grid: int, narrow: float = 4.0) -> Tuple[np.ndarray, np.ndarray]:
    """Convolution of normalized boxes on a symmetric grid over ``[-1, 1]``.

    Boxes wider than ``narrow`` grid spacings are convolved exactly against the
    piecewise-linear interpolant.  Narrower ones would only add kink errors of
    order ``rho h``, so their combined kernel is applied as its transfer
    function ``prod sinc(rho_n u)`` on a zero-padded FFT grid.
    """
    grid = np.linspace(-1.0, 1.0, n_grid)
    h = grid[1] - grid[0]
    r = np.sort(rho)[::-1]
    wide, thin = r[r >= narrow * h], r[r < narrow * h]
    if wide.size < 2:
        raise ValueError("grid too coarse for the rho sequence")
    a, b = wide[0], wide[1]
    f = np.clip((a + b - np.abs(grid)) / (2 * b), 0.0, 1.0) / (2 * a)
    for rr in wide[2:]:
        f = _box_step(f, grid, h, rr)
    if thin.size:
        m = 2 * n_grid
        u = 2 * np.pi * np.fft.rfftfreq(m, d=h)
        mult = np.ones_like(u)
        for rr in thin:
            mult *= np.sinc(rr * u / np.pi)
        spec = np.fft.rfft(np.concatenate([f, np.zeros(m - n_grid)]))
        f = np.fft.irfft(spec * mult, n=m)
        # the even kernel is centred at index 0, so no shift is needed
        f = f[:n_grid]
    f[np.abs(grid) >= r.sum()] = 0.0
    return grid, f


@dataclass
class FilterFunction:
    eps: str
    rho: np.ndarray
    c: float
    grid: np.ndarray
    gt: np.ndarray  # g~ on the grid
    norm: float  # N

    @property
    def support(self) -> float:
        return float(self.rho.sum())

    @property
    def n_max(self) -> int:
        return int(self.rho.size)

    def g_tilde(self, w) -> np.ndarray:
        w = np.asarray(w, dtype=float)
        out = np.interp(w, self.grid, self.gt, left=0.0, right=0.0)
        return np.where(np.abs(w) >= self.support, 0.0, out)

    def F_tilde(self, w) -> np.ndarray:
        w = np.asarray(w, dtype=float)
        safe = np.where(w == 0.0, 1.0, w)
        out = -(1.0 - self.g_tilde(w)) / safe
        out = np.where(w == 0.0, 0.0, out)
        # outside the support the identity is exact
        return np.where(np.abs(w) >= self.support, -1.0 / safe, out)

    def g(self, y) -> np.ndarray:
        return g_time_domain(self, y)

    def lower_bound_ratio(self) -> float:
        """``min_n rho_n / (e eps(n) / n)``; equals the normalization constant ``c``."""
        n = np.arange(1, self.n_max + 1, dtype=float)
        return float(np.min(self.rho / (np.e * EPSILONS[self.eps](n) / n)))


def build_filter(eps: str = "log", n_max: int = 2000, n_grid: int = 8001) -> FilterFunction:
    rho, c = rho_sequence(eps, n_max)
    check_rho(rho)
    grid, conv = box_convolution(rho, n_grid)
    mid = n_grid // 2
    if n_grid % 2 == 0:
        raise ValueError("grid must be odd so that it contains zero")
    gt = conv / conv[mid]
    return FilterFunction(eps, rho, c, grid, gt, 2 * np.pi * float(conv[mid]))


def g_time_domain(filt: FilterFunction, y) -> np.ndarray:
    y = np.atleast_1d(np.asarray(y, dtype=float))
    out = np.ones_like(y)
    for r in filt.rho:
        out *= np.sinc(r * y / np.pi)
    return out / filt.norm


def g_tilde_poisson(filt: FilterFunction, w, m_max: int = 4000) -> np.ndarray:
    """``g~`` from samples of ``g`` at ``pi m``; exact for ``|w| < 1`` since ``g~`` is band-limited."""
    m = np.arange(1, m_max + 1)
    gm = g_time_domain(filt, np.pi * m)
    w = np.atleast_1d(np.asarray(w, dtype=float))
    return np.pi * (g_time_domain(filt, 0.0)[0] + 2 * np.cos(np.outer(w, np.pi * m)) @ gm)


@dataclass
class DecayFit:
    alpha: float
    b: float
    log_c: float
    y: np.ndarray
    envelope: np.ndarray


def decay_fit(filt: FilterFunction, y_min: float = 10.0, y_max: float = 200.0, n: int = 20000) -> DecayFit:
    """Fit ``log|g| envelope = log C - b y^alpha`` over ``[y_min, y_max]``."""
    y = np.linspace(y_min, y_max, n)
    a = np.abs(g_time_domain(filt, y))
    # local maxima of |g| form the envelope
    idx = np.flatnonzero((a[1:-1] >= a[:-2]) & (a[1:-1] >= a[2:])) + 1
    ye, env = y[idx], a[idx]
    keep = env > 0
    ye, env = ye[keep], env[keep]

    def model(yy, lc, b, al):
        return lc - b * yy**al

    p, _ = curve_fit(model, ye, np.log(env), p0=(0.0, 1.0, 1.0), maxfev=20000)
    return DecayFit(float(p[2]), float(p[1]), float(p[0]), ye, env)


# ---------------------------------------------------------------- generator


def _eig(A: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    return np.linalg.eigh(1j * A)


def generator_kernel(A: np.ndarray, dA: np.ndarray, filt: FilterFunction, e_gap: float, tol: float = 1e-8) -> np.ndarray:
    """Single-particle kernel of ``D`` in Majorana space (Hermitian, purely imaginary).

    Eigenbasis matrix elements are ``-i B_mn F~((e_m - e_n)/E) / E`` with
    ``B = V^dag (i dA) V`` and ``i A = V diag(e) V^dag``.
    """
    e, V = _eig(A)
    if np.abs(e).min() < tol:
        raise ValueError("gapless Hamiltonian")
    B = V.conj().T @ (1j * dA) @ V
    W = filt.F_tilde((e[:, None] - e[None, :]) / e_gap) / e_gap
    D = V @ (-1j * B * W) @ V.conj().T
    D = 0.5 * (D + D.conj().T)
    return 1j * D.imag


def continuation_generator(path: InterpolationPath, lat: EdgeLattice, lam: float, filt: FilterFunction, e_gap: float) -> np.ndarray:
    A, _ = path.at(lat, lam).majorana()
    dA, _ = path.derivative(lat).majorana()
    return generator_kernel(A, dA, filt, e_gap)


def torus_path_gap(path: InterpolationPath, lat: EdgeLattice, n_lambda: int = 65) -> float:
    return float(min(path.at(lat, l).gap() for l in np.linspace(0, 1, n_lambda)))


@dataclass
class Evolution:
    gamma: CovarianceMatrix
    n_steps: int
    e_gap: float
    max_purity_drift: float


def evolve_covariance(
    gamma0: CovarianceMatrix,
    path: InterpolationPath,
    lat: EdgeLattice,
    filt: FilterFunction,
    n_steps: int,
    e_gap: Optional[float] = None,
    purity_tol: float = 1e-8,
) -> Evolution:
    """Midpoint exponential integrator for ``d|psi>/d lambda = i D |psi>``.

    On covariances this is ``Gamma -> R Gamma R^T`` with the real orthogonal
    ``R = exp(i h D(lambda + h/2))``.
    """
    if n_steps < 2:
        raise ValueError("need at least two steps")
    if e_gap is None:
        e_gap = torus_path_gap(path, lat)
    dA, _ = path.derivative(lat).majorana()
    A0, _ = path.initial(lat).majorana()
    A1, _ = path.final(lat).majorana()
    G = gamma0.gamma.copy()
    h = 1.0 / n_steps
    drift = 0.0
    for s in range(n_steps):
        lam = (s + 0.5) * h
        D = generator_kernel((1 - lam) * A0 + lam * A1, dA, filt, e_gap)
        R = sla.expm(1j * h * D).real
        G = R @ G @ R.T
        G = 0.5 * (G - G.T)
        drift = max(drift, float(np.linalg.norm(G @ G.T - np.eye(G.shape[0]))))
        if drift > purity_tol:
            raise RuntimeError(f"purity drift {drift:.2e} exceeds tolerance")
    return Evolution(CovarianceMatrix(G), n_steps, float(e_gap), drift)


def transport_error(path: InterpolationPath, lat: EdgeLattice, filt: FilterFunction, n_steps: int, e_gap: Optional[float] = None) -> Tuple[float, Evolution]:
    g0 = ground_covariance(path.initial(lat))
    target = ground_covariance(path.final(lat))
    ev = evolve_covariance(g0, path, lat, filt, n_steps, e_gap)
    return float(np.linalg.norm(ev.gamma.gamma - target.gamma)), ev


def convergence_order(errors: Sequence[float]) -> List[float]:
    """Observed orders ``log2(e_k / e_{k+1})`` for successively halved steps."""
    return [float(np.log2(a / b)) for a, b in zip(errors[:-1], errors[1:])]


# ---------------------------------------------------------------- locality


def _torus_dist(lat: EdgeLattice, f: int, g: int) -> float:
    x1, y1 = lat.face_xy(f)
    x2, y2 = lat.face_xy(g)
    dx = min(abs(x1 - x2), lat.Lx - abs(x1 - x2))
    dy = min(abs(y1 - y2), lat.Ly - abs(y1 - y2))
    return float(np.hypot(dx, dy))


def locality_profile(D: np.ndarray, lat: EdgeLattice, radii: Sequence[float]) -> List[Tuple[float, float]]:
    """Max over centers of the operator norm of the kernel block reaching beyond radius ``R``."""
    n = lat.n_faces
    dist = np.array([[_torus_dist(lat, f, g) for g in range(n)] for f in range(n)])
    out = []
    for R in radii:
        best = 0.0
        for f in range(n):
            far = np.flatnonzero(dist[f] > R)
            if far.size == 0:
                continue
            cols = np.stack([2 * far, 2 * far + 1], axis=-1).reshape(-1)
            blk = D[[2 * f, 2 * f + 1]][:, cols]
            best = max(best, float(np.linalg.norm(blk, 2)))
        out.append((float(R), best))
    return out


def loglog_slope(profile: Sequence[Tuple[float, float]]) -> float:
    r = np.array([p[0] for p in profile if p[1] > 0])
    v = np.array([p[1] for p in profile if p[1] > 0])
    return float(np.polyfit(np.log(r), np.log(v), 1)[0])


def interaction_range(dA: np.ndarray, lat: EdgeLattice, tol: float = 1e-12) -> float:
    """Largest torus distance between faces coupled by ``dA``."""
    n = lat.n_faces
    blk = np.abs(dA).reshape(n, 2, n, 2).max(axis=(1, 3))
    return max((_torus_dist(lat, f, g) for f, g in zip(*np.nonzero(blk > tol))), default=0.0)


@dataclass
class LocalityReport:
    profile: List[Tuple[float, float]]
    core_radius: float
    tail_slope: float
    full_slope: float


def locality_report(path: InterpolationPath, lat: EdgeLattice, lam: float, filt: FilterFunction, e_gap: float, step: float = 0.5) -> LocalityReport:
    """Profile of ``D(lam)`` and its log-log slope beyond the range of ``dH``.

    Radii inside the support of ``dH`` only probe the operator's core, so the
    tail slope is fitted from the first radius past ``interaction_range`` to
    the last radius whose exterior is nonempty.
    """
    dA, _ = path.derivative(lat).majorana()
    D = continuation_generator(path, lat, lam, filt, e_gap)
    r_max = float(np.hypot(lat.Lx // 2, lat.Ly // 2))
    radii = np.arange(1.0, r_max, step)
    prof = locality_profile(D, lat, radii)
    core = interaction_range(dA, lat)
    nz = [p for p in prof if p[1] > 1e-13]
    tail = [p for p in nz if p[0] > core]
    return LocalityReport(prof, core, loglog_slope(tail), loglog_slope(nz))
