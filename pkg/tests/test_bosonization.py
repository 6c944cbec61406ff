import itertools

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from artifact import bosonization as bz
from artifact.bdg import BdgHamiltonian, build_pip
from artifact.lattice import build_torus
from artifact.meraqle import (
    dense_fermion_hamiltonian,
    encode_sum,
    flux_group,
    joint_spectra,
    reduce_mod_flux,
    symmetry_sectors,
)
from artifact.pauli import StabilizerCode, StabilizerGroup


@pytest.mark.parametrize("size", [(4, 4), (3, 5), (6, 4)])
def test_dictionary_certificate(size):
    cert = bz.dictionary_certificate(build_torus(*size), 0.8, -1.5, 0.6)
    assert all(cert.values()), cert


def test_parity_and_hop_are_hermitian_involutions():
    lat = build_torus(4, 4)
    for f in range(lat.n_faces):
        W = bz.bosonize_parity(lat, f)
        assert W.is_hermitian and (W * W).is_identity and (W * W).phase == 0
    for e in range(lat.n_edges):
        U = bz.bosonize_hop(lat, e)
        assert U.is_hermitian and (U * U).phase == 0


def test_onsite_images():
    lat = build_torus(3, 3)
    f = 4
    W = bz.bosonize_parity(lat, f)
    assert bz.bosonize_pair(lat, bz.gamma(f), bz.gamma_p(f)) == W.scale(1)
    assert bz.bosonize_pair(lat, bz.gamma_p(f), bz.gamma(f)) == W.scale(3)


def test_path_independence_up_to_flux():
    lat = build_torus(5, 5)
    a, b = lat.face(0, 0), lat.face(2, 2)
    p1 = bz.path_from_steps(lat, a, "EENN")
    p2 = bz.path_from_steps(lat, a, "NNEE")
    d, verts = bz.path_independence(lat, bz.gamma(a), bz.gamma(b), p1, p2)
    assert len(verts) == 4
    assert not d.is_identity


def _random_nn_bdg(lat, rng):
    n = lat.n_faces
    h = np.zeros((n, n), dtype=complex)
    dp = np.zeros((n, n), dtype=complex)
    for f in range(n):
        x, y = lat.face_xy(f)
        h[f, f] = rng.normal()
        for g in (lat.face(x + 1, y), lat.face(x, y + 1)):
            t = rng.normal() + 1j * rng.normal()
            h[g, f] += t
            h[f, g] += np.conj(t)
            d = rng.normal() + 1j * rng.normal()
            dp[g, f] += d
            dp[f, g] -= d
    return h, dp


@given(st.integers(0, 10_000))
@settings(max_examples=10, deadline=None)
def test_gauge_fixed_round_trip(seed):
    lat = build_torus(4, 4)
    h, dp = _random_nn_bdg(lat, np.random.default_rng(seed))
    ps = bz.bosonize_quadratic(lat, h, dp)
    assert ps.is_hermitian()
    h2, dp2, _ = bz.gauge_fixed_sector(ps, lat)
    assert np.allclose(h, h2) and np.allclose(dp, dp2)


@pytest.mark.parametrize("params", [(1.0, -2.0, 1.0), (0.5, 1.0, 0.3)])
def test_spin_hamiltonian_forms(params):
    lat = build_torus(4, 4)
    t, mu, d = params
    faithful = bz.bosonize_hamiltonian(lat, build_pip(t, mu, d, lat))
    assert not (bz.ising_tqft_hamiltonian(lat, t, mu, d) + faithful.scaled(-1)).terms
    doubled = bz.bosonize_hamiltonian(lat, build_pip(t, 2 * mu, d, lat))
    literal = bz.ising_tqft_hamiltonian(lat, t, mu, d, literal_onsite=True)
    assert not (literal + doubled.scaled(-1)).terms
    assert (literal + faithful.scaled(-1)).terms


def test_fswap_monomials_against_dense_oracle():
    chi = bz.dense_majoranas(2)
    S = np.zeros((4, 4), dtype=complex)
    for m in bz.fswap_monomials(0, 1):
        term = np.eye(4, dtype=complex)
        for k in m.modes:
            term = term @ chi[k]
        S += m.coeff * term
    c = [(chi[2 * f] + 1j * chi[2 * f + 1]) / 2 for f in range(2)]
    assert np.allclose(S @ S.conj().T, np.eye(4))
    assert np.allclose(S @ c[0] @ S.conj().T, c[1])
    assert np.allclose(S @ c[1] @ S.conj().T, c[0])


def test_bosonized_fswap_is_unitary_and_exchanges_parities():
    lat = build_torus(4, 4)
    fl = flux_group(lat)
    i, j = lat.face(1, 1), lat.face(2, 1)
    S = bz.bosonized_fswap(lat, i, j)
    one = reduce_mod_flux(S * S, fl)
    assert list(one.terms) == [(0, 0)] and np.isclose(one.terms[(0, 0)], 1.0)
    Wi = bz.PauliSum(lat.n_edges).add(bz.bosonize_parity(lat, i))
    Wj = bz.PauliSum(lat.n_edges).add(bz.bosonize_parity(lat, j))
    assert not (reduce_mod_flux(S * Wi * S, fl) + reduce_mod_flux(Wj, fl).scaled(-1)).terms


def _twist(lat, h, dp, bx, by):
    h, dp = h.copy(), dp.copy()
    for f in range(lat.n_faces):
        x, y = lat.face_xy(f)
        if x == lat.Lx - 1:
            g = lat.face(0, y)
            for M in (h, dp):
                M[g, f] *= bx
                M[f, g] *= bx
        if y == lat.Ly - 1:
            g = lat.face(x, 0)
            for M in (h, dp):
                M[g, f] *= by
                M[f, g] *= by
    return BdgHamiltonian(h, dp)


def test_random_bdg_duality_on_3x3():
    """The bosonized spectrum splits into boundary-condition sectors of the free fermions."""
    lat = build_torus(3, 3)
    h, dp = _random_nn_bdg(lat, np.random.default_rng(11))
    H = bz.bosonize_quadratic(lat, h, dp)
    fg, extra = symmetry_sectors(H, lat)
    code = StabilizerCode.from_group(StabilizerGroup.from_generators(fg, lat.n_edges))
    blocks = joint_spectra(
        encode_sum(code, H).to_sparse().toarray(),
        [encode_sum(code, bz.PauliSum(lat.n_edges).add(e)).to_sparse().toarray() for e in extra],
    )
    sectors = []
    for bx, by in itertools.product((1, -1), repeat=2):
        Hd, P = dense_fermion_hamiltonian(_twist(lat, h, dp, bx, by))
        sectors += list(joint_spectra(Hd, [P]).values())
    assert len(blocks) == 4
    for spec in blocks.values():
        assert any(s.size == spec.size and np.allclose(s, spec, atol=1e-8) for s in sectors)
