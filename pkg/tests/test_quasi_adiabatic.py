import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from artifact import quasi_adiabatic as qa
from artifact.bdg import InterpolationPath
from artifact.lattice import Direction, build_torus


def test_rho_sequence_shape(filt):
    r = filt.rho
    assert r.size == 2000
    assert np.all(r > 0) and np.all(np.diff(r) <= 0)
    assert r.sum() < 1.0 and np.isclose(r.sum(), 1.0, atol=1e-8)


def test_check_rho_rejects_bad_sequences():
    for bad in ([0.5, 0.6], [0.6, 0.5], [0.1, -0.1]):
        with pytest.raises(ValueError):
            qa.check_rho(np.array(bad))


def test_lower_bound_ratio_is_normalization(filt):
    assert np.isclose(filt.lower_bound_ratio(), filt.c)
    assert filt.c < 1.0


def test_filter_support_and_normalization(filt):
    assert filt.support <= 1.0
    w = np.linspace(-1.2, 1.2, 481)
    gt = filt.g_tilde(w)
    assert np.all(gt[np.abs(w) >= filt.support] == 0.0)
    assert np.isclose(filt.g_tilde(0.0), 1.0)
    assert np.all(gt >= -1e-12)
    assert np.allclose(gt, gt[::-1])


def test_F_tilde_tail_is_exact(filt):
    w = np.concatenate([np.linspace(-3, -1, 50), np.linspace(1, 3, 50)])
    assert np.max(np.abs(filt.F_tilde(w) + 1.0 / w)) == 0.0


def test_g_tilde_agrees_with_poisson_oracle(filt):
    w = np.linspace(-0.9, 0.9, 37)
    assert np.max(np.abs(filt.g_tilde(w) - qa.g_tilde_poisson(filt, w))) < 2e-3


def test_time_domain_peak(filt):
    assert np.isclose(filt.g(0.0)[0] * filt.norm, 1.0)


def test_decay_exponent(filt):
    assert qa.decay_fit(filt).alpha >= 0.5


@given(st.integers(0, 1000))
@settings(max_examples=10, deadline=None)
def test_generator_kernel_is_hermitian_imaginary(filt, seed):
    rng = np.random.default_rng(seed)
    A = rng.normal(size=(6, 6))
    A = A - A.T
    dA = rng.normal(size=(6, 6))
    dA = dA - dA.T
    gap = np.abs(np.linalg.eigvalsh(1j * A)).min()
    D = qa.generator_kernel(A, dA, filt, max(gap, 1e-3))
    assert np.allclose(D, D.conj().T)
    assert np.allclose(D.real, 0.0)


def test_generator_rejects_gapless(filt):
    with pytest.raises(ValueError):
        qa.generator_kernel(np.zeros((4, 4)), np.zeros((4, 4)), filt, 1.0)


def test_small_transport(filt):
    lat = build_torus(4, 4)
    path = InterpolationPath(Direction.X)
    err, ev = qa.transport_error(path, lat, filt, 64)
    assert err < 1e-2
    assert ev.max_purity_drift < 1e-8
    occ = ev.gamma.restrict([f for f in range(lat.n_faces) if lat.face_xy(f)[0] % 2]).occupations()
    assert np.max(np.abs(occ)) < 1e-3


def test_convergence_order_formula():
    assert np.allclose(qa.convergence_order([1.0, 0.25, 0.0625]), [2.0, 2.0])


def test_locality_profile_is_monotone(filt):
    lat = build_torus(6, 6)
    path = InterpolationPath(Direction.X)
    rep = qa.locality_report(path, lat, 0.5, filt, qa.torus_path_gap(path, lat, 17))
    vals = [v for _, v in rep.profile]
    assert all(a >= b - 1e-12 for a, b in zip(vals, vals[1:]))
    assert rep.tail_slope < 0
