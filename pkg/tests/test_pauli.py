import itertools
from functools import reduce

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from artifact.pauli import (
    CliffordCircuit,
    PauliOperator,
    StabilizerCode,
    StabilizerError,
    StabilizerGroup,
    cnot,
    conjugate,
    gates_commute,
    single_qubit_stabilizers,
)

I2 = np.eye(2)
SX = np.array([[0, 1], [1, 0]], dtype=complex)
SY = np.array([[0, -1j], [1j, 0]])
SZ = np.diag([1.0, -1.0]).astype(complex)
LETTER = {"I": I2, "X": SX, "Y": SY, "Z": SZ}


def dense(word: str, phase: complex = 1.0) -> np.ndarray:
    return phase * reduce(np.kron, [LETTER[c] for c in word])


def pauli(n):
    return st.builds(
        lambda x, z, ph: PauliOperator(n, x, z, ph),
        st.integers(0, 2**n - 1),
        st.integers(0, 2**n - 1),
        st.integers(0, 3),
    )


def test_convention_xz_is_minus_iy():
    p = PauliOperator.from_sites(1, xs=[0], zs=[0])
    assert np.allclose(p.to_matrix(), -1j * SY)
    assert str(p) == "-i Y0"


def test_matrix_against_kron_oracle():
    p = PauliOperator.parse("+i X0 Y2 Z3", 4)
    assert np.allclose(p.to_matrix(), dense("XIYZ", 1j))


@given(pauli(3), pauli(3))
@settings(max_examples=80, deadline=None)
def test_product_and_commutation_match_matrices(a, b):
    A, B = a.to_matrix(), b.to_matrix()
    assert np.allclose((a * b).to_matrix(), A @ B)
    assert a.commutes(b) == np.allclose(A @ B, B @ A)
    assert np.allclose(a.dagger().to_matrix(), A.conj().T)


@given(st.lists(st.tuples(st.integers(0, 3), st.integers(0, 3)).filter(lambda t: t[0] != t[1]), max_size=6), pauli(4))
@settings(max_examples=60, deadline=None)
def test_cnot_conjugation_matches_matrix(pairs, p):
    circ = CliffordCircuit(4, tuple(cnot(a, b) for a, b in pairs))
    U = circ.to_matrix()
    assert np.allclose(U @ p.to_matrix() @ U.conj().T, conjugate(circ, p).to_matrix())


def test_cnot_textbook_rules():
    c = CliffordCircuit(2, (cnot(0, 1),))
    assert conjugate(c, PauliOperator.single(2, 0, "X")) == PauliOperator.parse("X0 X1", 2)
    assert conjugate(c, PauliOperator.single(2, 1, "Z")) == PauliOperator.parse("Z0 Z1", 2)
    assert conjugate(c, PauliOperator.single(2, 0, "Z")) == PauliOperator.single(2, 0, "Z")


def test_gates_commute():
    assert gates_commute(cnot(0, 1), cnot(0, 2))
    assert gates_commute(cnot(0, 2), cnot(1, 2))
    assert not gates_commute(cnot(0, 1), cnot(1, 2))


def test_stabilizer_group_canonical_form_is_generator_independent():
    g1 = StabilizerGroup.from_generators([PauliOperator.parse(s, 3) for s in ("Z0 Z1", "Z1 Z2")], 3)
    g2 = StabilizerGroup.from_generators([PauliOperator.parse(s, 3) for s in ("Z0 Z2", "Z0 Z1", "Z1 Z2")], 3)
    assert g1 == g2 and g1.rank == 2
    assert g1.contains(PauliOperator.parse("Z0 Z2", 3))
    assert not g1.contains(PauliOperator.parse("- Z0 Z2", 3))
    assert g1.contains_up_to_sign(PauliOperator.parse("- Z0 Z2", 3))


def test_stabilizer_group_rejects_bad_input():
    with pytest.raises(StabilizerError):
        StabilizerGroup.from_generators([PauliOperator.parse("X0", 2), PauliOperator.parse("Z0", 2)], 2)
    with pytest.raises(StabilizerError):
        StabilizerGroup.from_generators([PauliOperator.parse("Z0", 1), PauliOperator.parse("- Z0", 1)], 1)


def test_single_qubit_stabilizers():
    g = StabilizerGroup.from_generators([PauliOperator.parse("- Z0", 3), PauliOperator.parse("X1 X2", 3), PauliOperator.parse("X2", 3)], 3)
    assert set(single_qubit_stabilizers(g)) == {(0, "Z", -1), (1, "X", 1), (2, "X", 1)}


def _projector(group):
    dim = 1 << group.n
    P = np.eye(dim, dtype=complex)
    for g in group.generators:
        P = P @ (np.eye(dim) + g.to_matrix()) / 2
    return P


@pytest.mark.parametrize(
    "gens",
    [
        ["Z0 Z1", "Z1 Z2", "X0 X1 X2 X3"],
        ["X0 Z1 Z2 X3", "X1 Z2 Z3 X4", "X0 X2 Z3 Z4"],
        ["- Y0 Y1", "Z2"],
    ],
)
def test_code_encoding_against_projected_oracle(gens):
    n = 5
    group = StabilizerGroup.from_generators([PauliOperator.parse(s, n) for s in gens], n)
    code = StabilizerCode.from_group(group)
    assert code.k == n - group.rank
    P = _projector(group)
    w, V = np.linalg.eigh(P)
    B = V[:, w > 0.5]
    # every symmetric Pauli: the encoded matrix is unitarily equivalent to the projection
    syms = []
    for x, z in itertools.product(range(2**n), repeat=2):
        p = PauliOperator(n, x, z, bin(x & z).count("1"))
        if all(p.commutes(s) for s in group.generators):
            syms.append(p)
    rng = np.random.default_rng(1)
    picks = [syms[i] for i in rng.choice(len(syms), size=12, replace=False)]
    coeffs = rng.standard_normal(len(picks))
    Hp = sum(c * B.conj().T @ p.to_matrix() @ B for c, p in zip(coeffs, picks))
    He = sum(c * code.encode(p).to_matrix() for c, p in zip(coeffs, picks))
    Hp = 0.5 * (Hp + Hp.conj().T)
    He = 0.5 * (He + He.conj().T)
    assert np.allclose(np.linalg.eigvalsh(Hp), np.linalg.eigvalsh(He), atol=1e-10)


def test_encode_rejects_non_symmetric():
    group = StabilizerGroup.from_generators([PauliOperator.parse("Z0 Z1", 2)], 2)
    code = StabilizerCode.from_group(group)
    with pytest.raises(ValueError):
        code.encode(PauliOperator.parse("X0", 2))
