"""Quadratic (BdG) fermions: p+ip model, AB interpolation paths, covariances, Chern numbers.

Conventions
-----------
``H = sum_ij h_ij c_i^dag c_j + 1/2 sum_ij (dp_ij c_i^dag c_j^dag + h.c.)`` with
``dp = -dp^T``.  Majoranas ``c_j = (gamma_j + i gamma'_j)/2`` ordered
``gamma_0, gamma'_0, gamma_1, ...``; then ``H = (i/4) chi^T A chi + const`` with
``A`` real antisymmetric.  Covariance ``Gamma_ab = (i/2) <[chi_a, chi_b]>``.
Momentum blocks act on ``(c_k, c_{-k}^dag)`` and equal
``[[h(k), D(k)], [D(k)^dag, -h(-k)^T]]``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Dict, List, Optional, Sequence, Tuple

import numpy as np

from .lattice import Direction, EdgeLattice, build_torus

GAP_TOL = 1e-8


# ---------------------------------------------------------------- Hamiltonians


@dataclass
class BdgHamiltonian:
    h: np.ndarray
    dp: np.ndarray

    def __post_init__(self) -> None:
        self.h = np.asarray(self.h, dtype=complex)
        self.dp = np.asarray(self.dp, dtype=complex)
        n = self.h.shape[0]
        if self.h.shape != (n, n) or self.dp.shape != (n, n):
            raise ValueError("h and dp must be square and of equal size")
        if not np.allclose(self.h, self.h.conj().T, atol=1e-12):
            raise ValueError("hopping block is not Hermitian")
        if not np.allclose(self.dp, -self.dp.T, atol=1e-12):
            raise ValueError("pairing block is not antisymmetric")

    @property
    def n_modes(self) -> int:
        return self.h.shape[0]

    def bdg_matrix(self) -> np.ndarray:
        return np.block([[self.h, self.dp], [self.dp.conj().T, -self.h.T]])

    def majorana(self) -> Tuple[np.ndarray, float]:
        return majorana_form(self.h, self.dp)

    def quasiparticle_energies(self) -> np.ndarray:
        """Non-negative single-particle excitation energies (sorted)."""
        A, _ = self.majorana()
        w = np.linalg.eigvalsh(1j * A)
        return np.sort(w[w.size // 2 :])

    def gap(self) -> float:
        return float(self.quasiparticle_energies()[0])

    def __add__(self, other: "BdgHamiltonian") -> "BdgHamiltonian":
        return BdgHamiltonian(self.h + other.h, self.dp + other.dp)

    def scaled(self, s: float) -> "BdgHamiltonian":
        return BdgHamiltonian(s * self.h, s * self.dp)

    def restrict(self, modes: Sequence[int]) -> "BdgHamiltonian":
        m = np.asarray(modes)
        return BdgHamiltonian(self.h[np.ix_(m, m)], self.dp[np.ix_(m, m)])


def _omega(n: int) -> np.ndarray:
    """``(c, c^dag) = Omega chi``."""
    om = np.zeros((2 * n, 2 * n), dtype=complex)
    for j in range(n):
        om[j, 2 * j] = 0.5
        om[j, 2 * j + 1] = 0.5j
        om[n + j, 2 * j] = 0.5
        om[n + j, 2 * j + 1] = -0.5j
    return om


def majorana_form(h: np.ndarray, dp: np.ndarray) -> Tuple[np.ndarray, float]:
    h = np.asarray(h, dtype=complex)
    dp = np.asarray(dp, dtype=complex)
    n = h.shape[0]
    hb = np.block([[h, dp], [dp.conj().T, -h.T]])
    om = _omega(n)
    M = om.conj().T @ hb @ om
    # H = 1/2 chi^T M chi + tr(h)/2 ; antisymmetric part of M is i Im M
    A = 2.0 * M.imag
    A = 0.5 * (A - A.T)
    const = 0.5 * float(np.trace(h).real)
    return A, const


def from_majorana_form(A: np.ndarray, const: float = 0.0) -> Tuple[np.ndarray, np.ndarray, float]:
    """Inverse of :func:`majorana_form`; returns ``(h, dp, const)``."""
    A = np.asarray(A, dtype=float)
    n = A.shape[0] // 2
    om = _omega(n)
    # Omega^{-1} = 2 Omega^dag, and M = i A / 2
    hb = 4.0 * om @ (0.5j * A) @ om.conj().T
    h = 0.5 * (hb[:n, :n] + hb[:n, :n].conj().T)
    dp = 0.5 * (hb[:n, n:] - hb[:n, n:].T)
    return h, dp, const - 0.5 * float(np.trace(h).real)


def pip_terms(
    lat: EdgeLattice,
    t: float,
    mu: float,
    delta: float,
    sites: Optional[Dict[Tuple[int, int], int]] = None,
    step: Tuple[int, int] = (1, 1),
    n_modes: Optional[int] = None,
) -> BdgHamiltonian:
    """p+ip model on the faces of ``lat`` (or on a sub-lattice of them).

    ``sites`` maps coarse coordinates ``(X, Y)`` to mode indices; neighbours are
    ``(X+1, Y)`` and ``(X, Y+1)`` modulo the coarse shape ``(Lx/step_x, Ly/step_y)``.
    """
    if sites is None:
        sites = {(x, y): lat.face(x, y) for y in range(lat.Ly) for x in range(lat.Lx)}
        shape = (lat.Lx, lat.Ly)
    else:
        shape = (lat.Lx // step[0], lat.Ly // step[1])
    n = n_modes if n_modes is not None else lat.n_faces
    h = np.zeros((n, n), dtype=complex)
    dp = np.zeros((n, n), dtype=complex)
    for (X, Y), r in sites.items():
        h[r, r] += -mu
        for (dx, dy), pair in (((1, 0), delta), ((0, 1), 1j * delta)):
            s = sites[((X + dx) % shape[0], (Y + dy) % shape[1])]
            h[s, r] += -t
            h[r, s] += -t
            # pair * c_s^dag c_r^dag + h.c.
            dp[s, r] += pair
            dp[r, s] -= pair
    return BdgHamiltonian(h, dp)


def build_pip(t: float, mu: float, delta: float, lat: EdgeLattice) -> BdgHamiltonian:
    if t <= 0 or delta <= 0:
        raise ValueError("t and delta must be positive")
    return pip_terms(lat, t, mu, delta)


def pip_block(k: np.ndarray, t: float, mu: float, delta: float) -> np.ndarray:
    """Single-layer 2x2 block(s); ``k`` has shape (..., 2)."""
    k = np.asarray(k, dtype=float)
    kx, ky = k[..., 0], k[..., 1]
    xi = -2 * t * (np.cos(kx) + np.cos(ky)) - mu
    d = -2j * delta * (np.sin(kx) + 1j * np.sin(ky))
    out = np.zeros(k.shape[:-1] + (2, 2), dtype=complex)
    out[..., 0, 0] = xi
    out[..., 0, 1] = d
    out[..., 1, 0] = np.conj(d)
    out[..., 1, 1] = -xi
    return out


# ---------------------------------------------------------------- AB interpolation


@dataclass(frozen=True)
class PathParams:
    t: float = 1.0
    mu: float = -2.0
    mu_prime: float = -8.0
    delta: float = 1.0


def ab_sites(lat: EdgeLattice, direction: Direction) -> Tuple[Dict[Tuple[int, int], int], List[int]]:
    """A-site map on the coarse lattice and the list of B faces."""
    a_sites: Dict[Tuple[int, int], int] = {}
    b_faces: List[int] = []
    for f in range(lat.n_faces):
        x, y = lat.face_xy(f)
        c = x if direction is Direction.X else y
        if c % 2 == 0:
            a_sites[(x // 2, y) if direction is Direction.X else (x, y // 2)] = f
        else:
            b_faces.append(f)
    return a_sites, b_faces


@dataclass(frozen=True)
class InterpolationPath:
    """``H(lambda) = (1 - lambda) H_initial + lambda H_final``."""

    direction: Direction
    params: PathParams = PathParams()

    def initial(self, lat: EdgeLattice) -> BdgHamiltonian:
        p = self.params
        return pip_terms(lat, p.t, p.mu, p.delta)

    def final(self, lat: EdgeLattice) -> BdgHamiltonian:
        p = self.params
        d = self.direction
        if (lat.Lx if d is Direction.X else lat.Ly) % 2:
            raise ValueError("renormalized dimension must be even")
        a_sites, b_faces = ab_sites(lat, d)
        step = (2, 1) if d is Direction.X else (1, 2)
        H = pip_terms(lat, p.t, p.mu, p.delta, sites=a_sites, step=step, n_modes=lat.n_faces)
        for f in b_faces:
            H.h[f, f] += -p.mu_prime
        return H

    def at(self, lat: EdgeLattice, lam: float) -> BdgHamiltonian:
        _check_lambda(lam)
        return self.initial(lat).scaled(1 - lam) + self.final(lat).scaled(lam)

    def derivative(self, lat: EdgeLattice) -> BdgHamiltonian:
        return self.final(lat) + self.initial(lat).scaled(-1.0)

    # momentum space -----------------------------------------------------
    def _tables(self) -> Tuple[Dict, Dict]:
        ref = build_torus(8, 8)
        return _cell_tables(self.initial(ref), ref, self.direction), _cell_tables(self.final(ref), ref, self.direction)

    def block(self, lam: float, k: np.ndarray) -> np.ndarray:
        """4x4 block(s) at supercell momentum ``k`` (shape (..., 2))."""
        _check_lambda(lam)
        b0, b1 = self.endpoint_blocks(k)
        return (1 - lam) * b0 + lam * b1

    def endpoint_blocks(self, k: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
        t0, t1 = _cached_tables(self)
        return _bloch(t0, k), _bloch(t1, k)


_TABLE_CACHE: Dict[InterpolationPath, Tuple[Dict, Dict]] = {}


def _cached_tables(path: InterpolationPath) -> Tuple[Dict, Dict]:
    if path not in _TABLE_CACHE:
        _TABLE_CACHE[path] = path._tables()
    return _TABLE_CACHE[path]


def _check_lambda(lam: float) -> None:
    if not 0.0 <= lam <= 1.0:
        raise ValueError("lambda must lie in [0, 1]")


def _cell_tables(H: BdgHamiltonian, lat: EdgeLattice, d: Direction) -> Dict:
    """Hopping/pairing blocks per cell displacement for a two-site cell."""
    cx, cy = (2, 1) if d is Direction.X else (1, 2)
    ncx, ncy = lat.Lx // cx, lat.Ly // cy

    def site(X, Y, s):
        if d is Direction.X:
            return lat.face(cx * X + s, Y)
        return lat.face(X, cy * Y + s)

    T: Dict[Tuple[int, int], np.ndarray] = {}
    P: Dict[Tuple[int, int], np.ndarray] = {}
    for DX in range(ncx):
        for DY in range(ncy):
            dd = (_wrap(DX, ncx), _wrap(DY, ncy))
            tb = np.zeros((2, 2), dtype=complex)
            pb = np.zeros((2, 2), dtype=complex)
            for a in range(2):
                for b in range(2):
                    i, j = site(DX, DY, a), site(0, 0, b)
                    tb[a, b] = H.h[i, j]
                    pb[a, b] = H.dp[i, j]
            if np.any(tb) or np.any(pb):
                T[dd] = tb
                P[dd] = pb
    return {"T": T, "P": P}


def _wrap(d: int, n: int) -> int:
    return d - n if d >= n // 2 else d


def _bloch(tables: Dict, k: np.ndarray) -> np.ndarray:
    k = np.asarray(k, dtype=float)
    shape = k.shape[:-1]
    hk = np.zeros(shape + (2, 2), dtype=complex)
    hmk = np.zeros(shape + (2, 2), dtype=complex)
    dk = np.zeros(shape + (2, 2), dtype=complex)
    for (dx, dy), tb in tables["T"].items():
        ph = np.exp(-1j * (k[..., 0] * dx + k[..., 1] * dy))[..., None, None]
        hk += tb * ph
        hmk += tb * np.conj(ph)
        dk += tables["P"][(dx, dy)] * ph
    out = np.zeros(shape + (4, 4), dtype=complex)
    out[..., :2, :2] = hk
    out[..., :2, 2:] = dk
    out[..., 2:, :2] = np.conj(np.swapaxes(dk, -1, -2))
    out[..., 2:, 2:] = -np.swapaxes(hmk, -1, -2)
    return out


def momentum_block_interp(path: InterpolationPath, lam: float, k) -> np.ndarray:
    return path.block(lam, np.asarray(k, dtype=float))


def written_initial_block(k, t: float, mu: float, delta: float) -> np.ndarray:
    """The written-out 4x4 initial block for the x path (used as an oracle)."""
    kx, ky = float(k[0]), float(k[1])
    e = np.exp(-1j * kx)
    ec = np.exp(1j * kx)
    c = -2 * t * np.cos(ky) - mu
    s = 2 * delta * np.sin(ky)
    return np.array(
        [
            [c, -t - t * e, s, -delta + delta * e],
            [-t - t * ec, c, delta - delta * ec, s],
            [s, delta - delta * e, -c, t + t * e],
            [-delta + delta * ec, s, t + t * ec, -c],
        ],
        dtype=complex,
    )


def vertical_path(path_x: InterpolationPath) -> InterpolationPath:
    """The y path: rotate momenta (ky -> kx, kx -> -ky) and rephase ``c -> e^{i pi/4} c``.

    The rotated, rephased p+ip model is again the p+ip model, so the y path is
    the same real-space construction with the AB structure along y.
    """
    if path_x.direction is not Direction.X:
        raise ValueError("expected an x path")
    return InterpolationPath(Direction.Y, path_x.params)


def rotate_block(block_x_fn: Callable[[np.ndarray], np.ndarray], k: np.ndarray) -> np.ndarray:
    """Apply the momentum map and gauge phase to an x-path block function."""
    k = np.asarray(k, dtype=float)
    kk = np.stack([-k[..., 1], k[..., 0]], axis=-1)
    b = block_x_fn(kk)
    g = np.diag([np.exp(1j * np.pi / 4)] * 2 + [np.exp(-1j * np.pi / 4)] * 2)
    return g.conj().T @ b @ g


# ---------------------------------------------------------------- gap scan


@dataclass
class GapScan:
    lambdas: np.ndarray
    gaps: np.ndarray

    @property
    def min_gap(self) -> float:
        return float(self.gaps.min())

    @property
    def argmin_lambda(self) -> float:
        return float(self.lambdas[int(np.argmin(self.gaps))])


def k_grid(nk: int) -> np.ndarray:
    ks = -np.pi + 2 * np.pi * np.arange(nk) / nk
    KX, KY = np.meshgrid(ks, ks, indexing="ij")
    return np.stack([KX, KY], axis=-1).reshape(-1, 2)


def gap_scan(path: InterpolationPath, n_lambda: int = 256, nk: int = 256, chunk: int = 16384) -> GapScan:
    if n_lambda < 2 or nk < 2:
        raise ValueError("grids too small")
    lams = np.linspace(0.0, 1.0, n_lambda)
    ks = k_grid(nk)
    gaps = np.full(n_lambda, np.inf)
    for s in range(0, ks.shape[0], chunk):
        b0, b1 = path.endpoint_blocks(ks[s : s + chunk])
        for i, lam in enumerate(lams):
            w = np.linalg.eigvalsh((1 - lam) * b0 + lam * b1)
            gaps[i] = min(gaps[i], float(np.abs(w).min()))
    return GapScan(lams, gaps)


def grid_gap(path: InterpolationPath, lam: float, nk: int = 256, chunk: int = 16384) -> float:
    """Minimum single-particle gap at one ``lam`` over an ``nk x nk`` grid."""
    ks = k_grid(nk)
    out = np.inf
    for s in range(0, ks.shape[0], chunk):
        w = np.linalg.eigvalsh(path.block(lam, ks[s : s + chunk]))
        out = min(out, float(np.abs(w).min()))
    return out


def band_table(path: InterpolationPath, lambdas: Sequence[float], nk: int) -> List[Tuple[float, float, float, List[float]]]:
    """Rows ``(lambda, kx, ky, sorted energies)`` on an ``nk x nk`` grid."""
    ks = k_grid(nk)
    rows = []
    for lam in lambdas:
        w = np.linalg.eigvalsh(path.block(lam, ks))
        for kk, ww in zip(ks, w):
            rows.append((float(lam), float(kk[0]), float(kk[1]), [float(v) for v in ww]))
    return rows


def single_layer_min_gap(t: float, mu: float, delta: float, nk: int = 256) -> float:
    ks = k_grid(nk)
    w = np.linalg.eigvalsh(pip_block(ks, t, mu, delta))
    return float(np.abs(w).min())


def b_band_variance(path: InterpolationPath, nk: int = 64) -> float:
    """Variance over the BZ of the two bands carried by the B site at lambda = 1."""
    ks = k_grid(nk)
    b = path.block(1.0, ks)
    bb = b[..., [1, 3]][..., [1, 3], :]
    w = np.linalg.eigvalsh(bb)
    return float(np.var(w[:, 0]) + np.var(w[:, 1]))


# ---------------------------------------------------------------- covariance


@dataclass
class CovarianceMatrix:
    gamma: np.ndarray

    @property
    def n_modes(self) -> int:
        return self.gamma.shape[0] // 2

    def purity_error(self) -> float:
        g = self.gamma
        return float(np.linalg.norm(g @ g.T - np.eye(g.shape[0])))

    def occupations(self) -> np.ndarray:
        g = self.gamma
        idx = np.arange(self.n_modes)
        return 0.5 * (1.0 + g[2 * idx, 2 * idx + 1])

    def restrict(self, modes: Sequence[int]) -> "CovarianceMatrix":
        m = np.asarray(modes)
        idx = np.stack([2 * m, 2 * m + 1], axis=-1).reshape(-1)
        return CovarianceMatrix(self.gamma[np.ix_(idx, idx)])

    def parity(self) -> int:
        """Ground-state fermion parity ``<(-1)^N> = Pf(-Gamma)`` (pure states)."""
        return int(np.sign(pfaffian(-self.gamma).real))


def ground_covariance(H: BdgHamiltonian, tol: float = GAP_TOL) -> CovarianceMatrix:
    A, _ = H.majorana()
    w, V = np.linalg.eigh(1j * A)
    if np.abs(w).min() < tol:
        raise ValueError("Hamiltonian is gapless within tolerance")
    sgn = (V * np.sign(w)) @ V.conj().T
    G = (1j * sgn).real
    return CovarianceMatrix(0.5 * (G - G.T))


def ground_energy(H: BdgHamiltonian) -> float:
    A, c = H.majorana()
    w = np.linalg.eigvalsh(1j * A)
    return float(c - 0.25 * np.sum(np.abs(w)))


def covariance_energy(H: BdgHamiltonian, cov: CovarianceMatrix) -> float:
    A, c = H.majorana()
    return float(c - 0.25 * np.trace(A @ cov.gamma))


def pfaffian(M: np.ndarray) -> complex:
    """Pfaffian of an antisymmetric matrix (Parlett-Reid with pivoting)."""
    A = np.array(M, dtype=complex)
    n = A.shape[0]
    if n % 2:
        return 0.0
    pf = 1.0 + 0j
    for k in range(0, n - 1, 2):
        kp = k + 1 + int(np.abs(A[k + 1 :, k]).argmax())
        if kp != k + 1:
            A[[k + 1, kp], :] = A[[kp, k + 1], :]
            A[:, [k + 1, kp]] = A[:, [kp, k + 1]]
            pf *= -1
        if A[k + 1, k] == 0:
            return 0.0
        pf *= A[k, k + 1]
        if k + 2 < n:
            tau = A[k, k + 2 :] / A[k, k + 1]
            A[k + 2 :, k + 2 :] += np.outer(tau, A[k + 2 :, k + 1]) - np.outer(A[k + 2 :, k + 1], tau)
    return pf


# ---------------------------------------------------------------- Chern number


def _lower_states(blocks: np.ndarray) -> np.ndarray:
    w, v = np.linalg.eigh(blocks)
    nb = blocks.shape[-1] // 2
    return v[..., :, :nb]


def chern_number(block_fn: Callable[[np.ndarray], np.ndarray], nk: int = 24, tol: float = GAP_TOL) -> int:
    """Lattice field-strength (plaquette link) Chern number of the negative bands.

    Orientation is chosen so that the p+ip model at (t, mu, delta) = (1, -2, 1)
    gives +1.
    """
    ks = -np.pi + 2 * np.pi * np.arange(nk) / nk
    KX, KY = np.meshgrid(ks, ks, indexing="ij")
    kk = np.stack([KX, KY], axis=-1)
    blocks = block_fn(kk)
    w = np.linalg.eigvalsh(blocks)
    if np.abs(w).min() < tol:
        raise ValueError("gap closes on the grid")
    u = _lower_states(blocks)

    def link(a, b):
        d = np.linalg.det(np.einsum("...ia,...ib->...ab", a.conj(), b))
        return d / np.abs(d)

    ux = link(u, np.roll(u, -1, axis=0))
    uy = link(u, np.roll(u, -1, axis=1))
    F = np.angle(ux * np.roll(uy, -1, axis=0) / (np.roll(ux, -1, axis=1) * uy))
    c = -F.sum() / (2 * np.pi)
    return int(np.rint(c))


def pip_chern(t: float, mu: float, delta: float, nk: int = 24) -> int:
    return chern_number(lambda k: pip_block(k, t, mu, delta), nk)


def stacked_chern(layers: Sequence[Tuple[float, float, float]], nk: int = 24) -> int:
    """Chern number of a block-diagonal stack of single-layer p+ip blocks."""

    def fn(k):
        blocks = [pip_block(k, *p) for p in layers]
        n = len(blocks)
        shape = k.shape[:-1]
        # reorder to (particles..., holes...) so the negative bands are well defined
        out = np.zeros(shape + (2 * n, 2 * n), dtype=complex)
        for i, b in enumerate(blocks):
            for a in range(2):
                for c in range(2):
                    out[..., a * n + i, c * n + i] = b[..., a, c]
        return out

    return chern_number(fn, nk)
