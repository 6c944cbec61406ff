import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from artifact import bdg
from artifact.bdg import BdgHamiltonian, InterpolationPath, PathParams, build_pip, ground_covariance
from artifact.lattice import Direction, build_torus
from artifact.meraqle import bdg_sector_spectra, dense_fermion_hamiltonian, fermion_sector_spectra, twisted_pip


def _random_bdg(n, rng):
    h = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    dp = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    return BdgHamiltonian(h + h.conj().T, dp - dp.T)


@given(st.integers(0, 10_000), st.integers(1, 5))
@settings(max_examples=25, deadline=None)
def test_majorana_round_trip(seed, n):
    H = _random_bdg(n, np.random.default_rng(seed))
    A, c = H.majorana()
    assert np.allclose(A, -A.T) and np.isrealobj(A)
    h, dp, c0 = bdg.from_majorana_form(A, c)
    assert np.allclose(h, H.h) and np.allclose(dp, H.dp) and abs(c0) < 1e-12


@pytest.mark.parametrize("seed", range(4))
def test_ground_energy_and_parity_against_dense(seed):
    H = _random_bdg(4, np.random.default_rng(seed))
    Hd, P = dense_fermion_hamiltonian(H)
    w, V = np.linalg.eigh(Hd)
    assert np.isclose(bdg.ground_energy(H), w[0])
    cov = ground_covariance(H)
    assert cov.purity_error() < 1e-10
    assert np.isclose(bdg.covariance_energy(H, cov), w[0])
    assert cov.parity() == int(np.rint((V[:, 0].conj() @ P @ V[:, 0]).real))


@given(st.integers(0, 10_000), st.integers(1, 6))
@settings(max_examples=25, deadline=None)
def test_pfaffian_squares_to_determinant(seed, m):
    rng = np.random.default_rng(seed)
    M = rng.normal(size=(2 * m, 2 * m)) + 1j * rng.normal(size=(2 * m, 2 * m))
    M = M - M.T
    assert np.isclose(bdg.pfaffian(M) ** 2, np.linalg.det(M))


def test_pfaffian_of_standard_form():
    J = np.kron(np.eye(3), np.array([[0.0, 1.0], [-1.0, 0.0]]))
    assert np.isclose(bdg.pfaffian(J), 1.0)
    assert bdg.pfaffian(np.zeros((3, 3))) == 0.0


def test_sector_spectra_agree_with_subset_sums():
    ed = fermion_sector_spectra(2, 2, 1.0, -2.0, 1.0)
    for bc, (bx, by) in (("AA", (-1, -1)), ("PA", (1, -1))):
        sub = bdg_sector_spectra(twisted_pip(2, 2, 1.0, -2.0, 1.0, bx, by))
        for par in ("even", "odd"):
            assert np.allclose(ed[f"{bc}-{par}"], sub[par], atol=1e-9)


def test_periodic_twist_is_plain_model():
    lat = build_torus(3, 3)
    a, b = twisted_pip(3, 3, 1.0, -1.0, 0.7, 1, 1), build_pip(1.0, -1.0, 0.7, lat)
    assert np.allclose(a.h, b.h) and np.allclose(a.dp, b.dp)


@pytest.mark.parametrize("mu, expected", [(-2.0, 1), (2.0, -1), (-5.0, 0), (5.0, 0)])
def test_pip_chern(mu, expected):
    assert bdg.pip_chern(1.0, mu, 1.0, nk=24) == expected


def test_chern_rejects_gapless_grid():
    with pytest.raises(ValueError):
        bdg.pip_chern(1.0, 0.0, 1.0, nk=24)


def test_stacked_chern_adds():
    assert bdg.stacked_chern([(1.0, -2.0, 1.0)] * 3) == 3
    assert bdg.stacked_chern([(1.0, -2.0, 1.0), (1.0, 2.0, 1.0)]) == 0


def test_initial_block_matches_written_form():
    path = InterpolationPath(Direction.X)
    rng = np.random.default_rng(0)
    for k in rng.uniform(-np.pi, np.pi, size=(10, 2)):
        assert np.allclose(path.block(0.0, k), bdg.written_initial_block(k, 1.0, -2.0, 1.0))


def test_final_block_decouples_b_site():
    path = InterpolationPath(Direction.X)
    b = path.block(1.0, np.array([0.3, -1.1]))
    assert np.allclose(b[[0, 2]][:, [1, 3]], 0)
    assert np.allclose(np.diag(b)[[1, 3]], [8.0, -8.0])
    assert bdg.b_band_variance(path, nk=32) < 1e-12


def test_path_endpoints_and_lambda_range():
    lat = build_torus(4, 4)
    path = InterpolationPath(Direction.Y, PathParams(mu=-1.5))
    assert np.allclose(path.at(lat, 0.0).h, path.initial(lat).h)
    assert np.allclose(path.at(lat, 1.0).dp, path.final(lat).dp)
    with pytest.raises(ValueError):
        path.at(lat, 1.5)
    with pytest.raises(ValueError):
        InterpolationPath(Direction.X).final(build_torus(3, 4))


def test_y_path_is_rotated_x_path():
    px = InterpolationPath(Direction.X)
    py = bdg.vertical_path(px)
    k = np.random.default_rng(3).uniform(-np.pi, np.pi, size=(8, 2))
    wy = np.linalg.eigvalsh(py.block(0.4, k))
    wr = np.linalg.eigvalsh(bdg.rotate_block(lambda kk: px.block(0.4, kk), k))
    assert np.allclose(wy, wr)


def test_small_gap_scan_is_open():
    scan = bdg.gap_scan(InterpolationPath(Direction.X), n_lambda=17, nk=32)
    assert scan.min_gap > 0.5
    assert np.isclose(scan.gaps[0], bdg.single_layer_min_gap(1.0, -2.0, 1.0, nk=32))
    closed = bdg.gap_scan(InterpolationPath(Direction.X, PathParams(mu_prime=0.0)), n_lambda=5, nk=32)
    assert closed.min_gap < 1e-9


def test_grid_gap_matches_scan_column():
    path = InterpolationPath(Direction.X)
    scan = bdg.gap_scan(path, n_lambda=5, nk=16)
    assert np.isclose(bdg.grid_gap(path, 0.25, nk=16), scan.gaps[1])
