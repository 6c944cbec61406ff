import numpy as np
import pytest

from artifact import meraqle as mq
from artifact.clifford_renorm import build_c_z2
from artifact.lattice import build_torus


def test_block_permutation_interleaves():
    assert mq.apply_shuffle(["0", "1", "2", "3", "0'", "1'", "2'", "3'"], mq.BLOCK_SWAPS) == [
        "0", "0'", "1", "1'", "2", "2'", "3", "3'"
    ]
    assert all(q == p + 1 for p, q in mq.BLOCK_SWAPS)
    assert len(mq.BLOCK_SWAPS) == 6


def test_shuffle_size_requirements():
    with pytest.raises(ValueError):
        mq.shuffle_swaps(build_torus(4, 4), "x")
    sw = mq.shuffle_swaps(build_torus(8, 4), "x")
    assert len(sw) == 6 * 4


@pytest.mark.parametrize("nu", [0, 1])
def test_small_nu_layers_are_bare_clifford(nu):
    lat = build_torus(4, 4)
    layer = mq.assemble_layer(nu, "x", lat)
    assert not layer.superlattice and layer.shuffle == []
    assert layer.clifford.circuit.gates == build_c_z2(lat, "x").circuit.gates
    assert (layer.ql_path is None) == (nu == 0)
    assert layer.summary()["order"] == ["ql", "shuffle", "clifford"]


def test_assemble_rejects_bad_nu():
    lat = build_torus(8, 8)
    with pytest.raises(ValueError):
        mq.assemble_layer(17, "x", lat)
    with pytest.raises(ValueError):
        mq.assemble_layer(3, "x", lat, superlattice=False)


@pytest.mark.parametrize("nu, d, size", [(0, "x", (8, 8)), (1, "y", (4, 8)), (3, "x", (8, 8)), (2, "y", (8, 8))])
def test_spin_certificate(nu, d, size):
    rep = mq.verify_spin_disentanglement(mq.assemble_layer(nu, d, build_torus(*size)))
    assert rep.passed, rep.to_dict()
    assert (rep.shuffle is not None) == (nu >= 2)


def test_fermion_flow_two_scales(filt):
    reps = mq.fermion_layer_flow(build_torus(8, 8), [mq.Direction.X, mq.Direction.Y], filt, 128)
    assert [r.lattice for r in reps] == [(8, 8), (4, 8)]
    for r in reps:
        assert r.max_b_occupation < mq.OCC_TOL
        assert r.covariance_error < mq.COV_TOL


def test_trivial_layer_count(filt):
    assert mq.verify_fermionic_fixed_point(0, ["x"], L=4, filt=filt).trivial_layers == 1
    rep = mq.verify_fermionic_fixed_point(5, ["x"], L=4, n_steps=64, filt=filt)
    assert rep.trivial_layers == 11 and sorted(rep.layers) == [1, 2, 3, 4, 5]


def test_duality_2x2_one_to_one():
    rep = mq.spectral_duality_check(Lx=2, Ly=2)
    assert rep.passed and rep.one_to_one
    assert len(rep.sectors) == 4
    assert {s["matched"] for s in rep.sectors} == {"PP-even", "AP-even", "PA-even", "AA-even"}
    assert rep.flux_sectors


@pytest.mark.slow
def test_duality_3x3():
    rep = mq.spectral_duality_check(0.7, -1.3, 0.9, Lx=3, Ly=3, flux_table=False)
    assert rep.passed and rep.one_to_one


def test_literal_onsite_fails_duality():
    assert not mq.spectral_duality_check(Lx=2, Ly=2, literal_onsite=True, flux_table=False).passed


def test_toric_ground_space():
    rep = mq.toric_ground_space_check(2)
    assert rep.passed
    assert np.isclose(rep.in_sector_ground_energy, -4.0)


@pytest.mark.parametrize("nu", range(17))
def test_sixteenfold_table(nu):
    rec = mq.sixteenfold_metadata(nu)
    assert rec.central_charge == nu / 2
    assert np.isclose(rec.vortex_spin, np.exp(1j * np.pi * nu / 8))
    assert len(rec.anyons) == (3 if nu % 2 else 4)


def test_sixteenfold_specific_rules():
    assert "a x a = psi" in mq.sixteenfold_metadata(2).fusion_rules
    assert "sigma x sigma = 1 + psi" in mq.sixteenfold_metadata(1).fusion_rules
    r0, r16 = mq.sixteenfold_metadata(0), mq.sixteenfold_metadata(16)
    assert r0.anyons == r16.anyons and r0.fusion_rules == r16.fusion_rules
    assert r16.central_charge == 8.0 and np.isclose(r16.vortex_spin, 1.0)
    with pytest.raises(ValueError):
        mq.sixteenfold_metadata(-1)


def test_commutant_basis_dimension():
    from artifact.pauli import PauliOperator

    n = 3
    ops = [PauliOperator.single(n, 0, "Z")]
    basis = mq.commutant_basis(n, ops)
    assert len(basis) == 2 * n - 1
    assert all(b.commutes(ops[0]) for b in basis)
