import numpy as np
import pytest

from artifact.bosonization import bosonize_parity
from artifact.clifford_renorm import (
    build_c_z2,
    toric_code_group,
    verify_all_figures,
    verify_appendix_b,
    verify_fixed_point,
    z2f_group,
)
from artifact.lattice import build_torus
from artifact.pauli import conjugate


def _symplectic(spec):
    """GF(2) image of (x | z) under the circuit, built gate by gate."""
    n = spec.lattice.n_edges
    M = np.eye(2 * n, dtype=np.uint8)
    for g in spec.circuit.gates:
        c, t = g.a, g.b
        G = np.eye(2 * n, dtype=np.uint8)
        G[t, c] = 1  # x_t ^= x_c
        G[n + c, n + t] = 1  # z_c ^= z_t
        M = (G @ M) % 2
    return M


def _vec(p):
    return np.array([(p.x >> q) & 1 for q in range(p.n)] + [(p.z >> q) & 1 for q in range(p.n)], dtype=np.uint8)


@pytest.mark.parametrize("d", ["x", "y"])
@pytest.mark.parametrize("size", [(4, 4), (8, 4), (4, 6)])
def test_circuit_shape(d, size):
    lat = build_torus(*size)
    spec = build_c_z2(lat, d)
    assert spec.n_gates == 2 * lat.n_faces
    assert spec.all_commute()
    assert spec.depth() <= 4


def test_sixteen_faces_give_32_gates():
    spec = build_c_z2(build_torus(4, 4), "x")
    assert spec.n_gates == 32 and spec.depth() == 3


@pytest.mark.parametrize("d", ["x", "y"])
def test_conjugation_matches_symplectic_oracle(d):
    lat = build_torus(4, 4)
    spec = build_c_z2(lat, d)
    M = _symplectic(spec)
    gens = list(toric_code_group(lat).generators) + [bosonize_parity(lat, f) for f in range(4)]
    for p in gens:
        out = conjugate(spec.circuit, p)
        assert np.array_equal(_vec(out), (M @ _vec(p)) % 2)
        assert out.is_hermitian


def test_rejects_small_tori():
    with pytest.raises(ValueError):
        build_c_z2(build_torus(2, 4), "x")
    with pytest.raises(ValueError):
        build_c_z2(build_torus(3, 4), "x")


@pytest.mark.parametrize("L", [4, 8])
def test_all_figure_panels(L):
    res = verify_all_figures(build_torus(L, L))
    assert len(res) == 16
    assert all(r.passed for r in res), [r.to_dict() for r in res if not r.passed]


@pytest.mark.parametrize("d", ["x", "y"])
def test_generator_conjugation_identities(d):
    res = verify_appendix_b(d, build_torus(8, 8))
    assert {r.name for r in res} == {"hop along", "hop across", "A-face parity", "B-face parity"}
    assert all(r.passed for r in res)


@pytest.mark.parametrize("kind", ["toric", "z2f"])
@pytest.mark.parametrize("d", ["x", "y"])
def test_fixed_points(kind, d):
    rep = verify_fixed_point(build_torus(4, 4), d, kind)
    assert rep.passed


def test_groups_have_expected_rank():
    lat = build_torus(4, 4)
    # two global relations among plaquettes and vertices leave 2 logical qubits
    assert len(toric_code_group(lat).generators) == lat.n_edges - 2
    assert len(z2f_group(lat).generators) <= lat.n_edges
