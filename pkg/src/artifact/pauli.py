"""Exact Pauli algebra and stabilizer groups on bit-packed masks.

A :class:`PauliOperator` stores ``i**phase * prod_q X_q**x_q Z_q**z_q`` where on
each qubit the Z factor acts first (it stands to the right).  So a qubit with
both bits set carries ``XZ = -iY``.  Masks are Python integers, bit ``q`` for
qubit ``q``; they are packed machine words under the hood and give fast XOR
and popcount on any size.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Dict, Iterable, Iterator, List, Optional, Sequence, Tuple

import numpy as np


def _popcount(v: int) -> int:
    return bin(v).count("1")


_PHASE_TEXT = {0: "+", 1: "+i", 2: "-", 3: "-i"}


@dataclass(frozen=True)
class PauliOperator:
    n: int
    x: int = 0
    z: int = 0
    phase: int = 0  # power of i

    def __post_init__(self) -> None:
        object.__setattr__(self, "phase", self.phase % 4)
        if self.x >> self.n or self.z >> self.n:
            raise ValueError("mask exceeds qubit count")

    # constructors
    @classmethod
    def identity(cls, n: int) -> "PauliOperator":
        return cls(n)

    @classmethod
    def from_sites(
        cls,
        n: int,
        xs: Iterable[int] = (),
        zs: Iterable[int] = (),
        phase: int = 0,
    ) -> "PauliOperator":
        """Product ``X_{xs} Z_{zs}``; repeated sites cancel."""
        xm = zm = 0
        for q in xs:
            _check(q, n)
            xm ^= 1 << q
        for q in zs:
            _check(q, n)
            zm ^= 1 << q
        return cls(n, xm, zm, phase)

    @classmethod
    def single(cls, n: int, q: int, axis: str, sign: int = 1) -> "PauliOperator":
        axis = axis.upper()
        ph = 0 if sign > 0 else 2
        if axis == "X":
            return cls.from_sites(n, xs=[q], phase=ph)
        if axis == "Z":
            return cls.from_sites(n, zs=[q], phase=ph)
        if axis == "Y":  # Y = i XZ
            return cls.from_sites(n, xs=[q], zs=[q], phase=ph + 1)
        raise ValueError(f"unknown axis {axis}")

    @classmethod
    def parse(cls, text: str, n: int) -> "PauliOperator":
        """Parse ``"+i X3 Z7 Y2"``-style strings (factors multiplied left to right)."""
        text = text.strip()
        m = re.match(r"^([+-]?)(i?)\s*(.*)$", text)
        assert m is not None
        phase = (2 if m.group(1) == "-" else 0) + (1 if m.group(2) else 0)
        out = cls(n, phase=phase)
        for tok in m.group(3).split():
            tm = re.fullmatch(r"([XYZI])(\d+)", tok)
            if tm is None:
                raise ValueError(f"bad Pauli token {tok!r}")
            if tm.group(1) == "I":
                continue
            out = out * cls.single(n, int(tm.group(2)), tm.group(1))
        return out

    # algebra
    def __mul__(self, other: "PauliOperator") -> "PauliOperator":
        if self.n != other.n:
            raise ValueError("qubit count mismatch")
        # X^a Z^b X^c Z^d = (-1)^{b.c} X^{a+c} Z^{b+d}
        sign = 2 * (_popcount(self.z & other.x) & 1)
        return PauliOperator(self.n, self.x ^ other.x, self.z ^ other.z, self.phase + other.phase + sign)

    def __neg__(self) -> "PauliOperator":
        return PauliOperator(self.n, self.x, self.z, self.phase + 2)

    def scale(self, power_of_i: int) -> "PauliOperator":
        return PauliOperator(self.n, self.x, self.z, self.phase + power_of_i)

    def dagger(self) -> "PauliOperator":
        # (X^x Z^z)^dag = Z^z X^x = (-1)^{x.z} X^x Z^z
        return PauliOperator(self.n, self.x, self.z, -self.phase + 2 * (_popcount(self.x & self.z) & 1))

    def commutes(self, other: "PauliOperator") -> bool:
        if self.n != other.n:
            raise ValueError("qubit count mismatch")
        return (_popcount(self.x & other.z) + _popcount(self.z & other.x)) % 2 == 0

    @property
    def weight(self) -> int:
        return _popcount(self.x | self.z)

    @property
    def support(self) -> List[int]:
        m = self.x | self.z
        return [q for q in range(self.n) if m >> q & 1]

    @property
    def is_identity(self) -> bool:
        return self.x == 0 and self.z == 0

    @property
    def is_hermitian(self) -> bool:
        return (2 * self.phase - 2 * _popcount(self.x & self.z)) % 4 == 0

    @property
    def vec(self) -> int:
        """Symplectic vector packed as ``x | z << n``."""
        return self.x | (self.z << self.n)

    def same_up_to_phase(self, other: "PauliOperator") -> bool:
        return self.x == other.x and self.z == other.z

    def letter(self, q: int) -> str:
        b = (self.x >> q & 1, self.z >> q & 1)
        return {(0, 0): "I", (1, 0): "X", (0, 1): "Z", (1, 1): "Y"}[b]

    def __str__(self) -> str:
        # rewrite X Z pairs as Y: X Z = -i Y on each such qubit
        ph = (self.phase - _popcount(self.x & self.z)) % 4
        body = " ".join(f"{self.letter(q)}{q}" for q in self.support)
        return (_PHASE_TEXT[ph] + " " + body).strip() if body else _PHASE_TEXT[ph] + "I"

    def to_matrix(self) -> np.ndarray:
        """Dense ``2**n`` matrix; qubit 0 is the most significant tensor factor."""
        X = np.array([[0, 1], [1, 0]], dtype=complex)
        Z = np.array([[1, 0], [0, -1]], dtype=complex)
        out = np.array([[1.0 + 0j]])
        for q in range(self.n):
            m = np.eye(2, dtype=complex)
            if self.x >> q & 1:
                m = m @ X
            if self.z >> q & 1:
                m = m @ Z
            out = np.kron(out, m)
        return (1j**self.phase) * out


def _check(q: int, n: int) -> None:
    if not 0 <= q < n:
        raise IndexError(f"qubit {q} out of range for {n} qubits")


def pauli_mul(a: PauliOperator, b: PauliOperator) -> PauliOperator:
    return a * b


def commutes(a: PauliOperator, b: PauliOperator) -> bool:
    return a.commutes(b)


def product(ops: Iterable[PauliOperator], n: Optional[int] = None) -> PauliOperator:
    it = iter(ops)
    try:
        out = next(it)
    except StopIteration:
        if n is None:
            raise ValueError("empty product needs n") from None
        return PauliOperator.identity(n)
    for p in it:
        out = out * p
    return out


# ---------------------------------------------------------------- Clifford circuits


@dataclass(frozen=True)
class Gate:
    kind: str  # "CNOT" or "H"
    a: int
    b: int = -1

    def __post_init__(self) -> None:
        if self.kind not in ("CNOT", "H"):
            raise ValueError(f"unknown gate {self.kind}")
        if self.kind == "CNOT" and (self.b < 0 or self.a == self.b):
            raise ValueError("CNOT needs distinct control and target")


def cnot(control: int, target: int) -> Gate:
    return Gate("CNOT", control, target)


def hadamard(q: int) -> Gate:
    return Gate("H", q)


@dataclass(frozen=True)
class CliffordCircuit:
    n: int
    gates: Tuple[Gate, ...] = ()

    def __post_init__(self) -> None:
        for g in self.gates:
            for q in (g.a, g.b) if g.kind == "CNOT" else (g.a,):
                _check(q, self.n)

    def inverse(self) -> "CliffordCircuit":
        return CliffordCircuit(self.n, tuple(reversed(self.gates)))

    def then(self, other: "CliffordCircuit") -> "CliffordCircuit":
        """Circuit applying ``self`` first and ``other`` second."""
        return CliffordCircuit(self.n, self.gates + other.gates)

    def to_matrix(self) -> np.ndarray:
        dim = 1 << self.n
        U = np.eye(dim, dtype=complex)
        idx = np.arange(dim)
        for g in self.gates:
            if g.kind == "CNOT":
                cbit = self.n - 1 - g.a
                tbit = self.n - 1 - g.b
                perm = np.where((idx >> cbit) & 1, idx ^ (1 << tbit), idx)
                G = np.eye(dim, dtype=complex)[perm]
            else:
                H = np.array([[1, 1], [1, -1]], dtype=complex) / np.sqrt(2)
                G = np.kron(np.kron(np.eye(1 << g.a), H), np.eye(1 << (self.n - 1 - g.a)))
            U = G @ U
        return U


def conjugate(circ: CliffordCircuit, p: PauliOperator) -> PauliOperator:
    """``U p U^dag`` where ``U`` applies the gates of ``circ`` in order."""
    if circ.n != p.n:
        raise ValueError("qubit count mismatch")
    x, z, ph = p.x, p.z, p.phase
    for g in circ.gates:
        if g.kind == "CNOT":
            # X_c -> X_c X_t, Z_t -> Z_c Z_t; in X-left-of-Z order no phase appears
            c, t = g.a, g.b
            if x >> c & 1:
                x ^= 1 << t
            if z >> t & 1:
                z ^= 1 << c
        else:
            q = g.a
            xb, zb = x >> q & 1, z >> q & 1
            if xb and zb:
                ph += 2  # X Z -> Z X = -X Z
            if xb != zb:
                x ^= 1 << q
                z ^= 1 << q
    return PauliOperator(p.n, x, z, ph)


def gates_commute(g1: Gate, g2: Gate) -> bool:
    if g1.kind == "CNOT" and g2.kind == "CNOT":
        return g1.a != g2.b and g1.b != g2.a
    qs1 = {g1.a, g1.b} - {-1}
    qs2 = {g2.a, g2.b} - {-1}
    return not (qs1 & qs2) or g1 == g2


# ---------------------------------------------------------------- stabilizer groups


class StabilizerError(ValueError):
    pass


def _reduce(rows: Dict[int, PauliOperator], p: PauliOperator) -> PauliOperator:
    """Eliminate leading bits of ``p`` against pivot rows (pivot -> row)."""
    while True:
        v = p.vec
        if v == 0:
            return p
        top = v.bit_length() - 1
        row = rows.get(top)
        if row is None:
            return p
        p = row * p


@dataclass(frozen=True)
class StabilizerGroup:
    """Abelian Pauli group without ``-I``, stored in reduced echelon form."""

    n: int
    generators: Tuple[PauliOperator, ...]

    @classmethod
    def from_generators(
        cls,
        gens: Sequence[PauliOperator],
        n: Optional[int] = None,
        allow_dependent: bool = True,
    ) -> "StabilizerGroup":
        gens = list(gens)
        if n is None:
            if not gens:
                raise StabilizerError("need n for an empty group")
            n = gens[0].n
        for g in gens:
            if g.n != n:
                raise StabilizerError("qubit count mismatch")
            if not g.is_hermitian:
                raise StabilizerError(f"non-Hermitian generator {g}")
        for i, a in enumerate(gens):
            for b in gens[i + 1 :]:
                if not a.commutes(b):
                    raise StabilizerError(f"generators anticommute: {a} vs {b}")
        rows: Dict[int, PauliOperator] = {}
        for g in gens:
            r = _reduce(rows, g)
            if r.vec == 0:
                if r.phase % 4 != 0:
                    raise StabilizerError("-I lies in the group")
                if not allow_dependent:
                    raise StabilizerError(f"dependent generator {g}")
                continue
            rows[r.vec.bit_length() - 1] = r
        # back substitution gives the unique reduced form
        pivots = sorted(rows)
        for pv in pivots:
            for other in pivots:
                if other != pv and rows[other].vec >> pv & 1:
                    rows[other] = rows[pv] * rows[other]
        ordered = tuple(rows[pv] for pv in sorted(rows, reverse=True))
        return cls(n, ordered)

    @property
    def rank(self) -> int:
        return len(self.generators)

    def _rows(self) -> Dict[int, PauliOperator]:
        return {g.vec.bit_length() - 1: g for g in self.generators}

    def contains(self, p: PauliOperator) -> bool:
        r = _reduce(self._rows(), p)
        return r.vec == 0 and r.phase == 0

    def contains_up_to_sign(self, p: PauliOperator) -> bool:
        return _reduce(self._rows(), p).vec == 0

    def reduce(self, p: PauliOperator) -> PauliOperator:
        return _reduce(self._rows(), p)

    def key(self) -> Tuple[Tuple[int, int], ...]:
        return tuple((g.vec, g.phase) for g in self.generators)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, StabilizerGroup):
            return NotImplemented
        return self.n == other.n and self.key() == other.key()

    def __hash__(self) -> int:
        return hash((self.n, self.key()))

    def conjugate(self, circ: CliffordCircuit) -> "StabilizerGroup":
        return StabilizerGroup.from_generators([conjugate(circ, g) for g in self.generators], self.n)

    def extend(self, extra: Iterable[PauliOperator]) -> "StabilizerGroup":
        return StabilizerGroup.from_generators(list(self.generators) + list(extra), self.n)


def canonicalize(g: "StabilizerGroup | Sequence[PauliOperator]", allow_dependent: bool = False) -> StabilizerGroup:
    if isinstance(g, StabilizerGroup):
        return g
    return StabilizerGroup.from_generators(list(g), allow_dependent=allow_dependent)


def groups_equal(g1: StabilizerGroup, g2: StabilizerGroup) -> bool:
    if g1.n != g2.n:
        raise ValueError("qubit count mismatch")
    return g1 == g2


def single_qubit_stabilizers(g: StabilizerGroup) -> List[Tuple[int, str, int]]:
    """All weight-one elements ``(qubit, axis, sign)`` of the group."""
    out = []
    rows = g._rows()
    for q in range(g.n):
        for axis in ("Z", "X", "Y"):
            p = PauliOperator.single(g.n, q, axis)
            r = _reduce(rows, p)
            if r.vec == 0:
                # p * (group element) = i^phase I  ->  group holds i^{-phase} p
                out.append((q, axis, 1 if r.phase == 0 else -1))
    return out


def iter_bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


# ---------------------------------------------------------------- logical encoding


def _hermitian_phase(p: PauliOperator) -> PauliOperator:
    return PauliOperator(p.n, p.x, p.z, _popcount(p.x & p.z))


@dataclass
class StabilizerCode:
    """Symplectic basis of the logical operators of a stabilizer group.

    ``encode`` maps a Pauli commuting with the group to the operator it
    induces on the ``k = n - rank`` logical qubits of the ``+1`` code space.
    """

    group: StabilizerGroup
    logical_x: Tuple[PauliOperator, ...]
    logical_z: Tuple[PauliOperator, ...]

    @property
    def k(self) -> int:
        return len(self.logical_x)

    @classmethod
    def from_group(cls, group: StabilizerGroup) -> "StabilizerCode":
        n = group.n
        # centralizer basis: v with <g, v> = 0 for all generators
        span = group
        pool = [PauliOperator.single(n, q, a) for q in range(n) for a in ("X", "Z")]
        # push each single-qubit Pauli into the centralizer with destabilizers
        destab = _destabilizers(group)
        cent = []
        for p in pool:
            for g, d in zip(group.generators, destab):
                if not p.commutes(g):
                    p = p * d
            cent.append(_hermitian_phase(p))
        lx: List[PauliOperator] = []
        lz: List[PauliOperator] = []
        rest = [c for c in cent if not span.contains_up_to_sign(c)]
        while rest:
            v = rest.pop(0)
            if span.contains_up_to_sign(v):
                continue
            w_idx = next((i for i, w in enumerate(rest) if not v.commutes(w)), None)
            if w_idx is None:
                raise StabilizerError("centralizer element commutes with everything but is not a stabilizer")
            w = rest.pop(w_idx)
            lx.append(v)
            lz.append(w)
            new_rest = []
            for u in rest:
                if not u.commutes(v):
                    u = u * w
                if not u.commutes(w):
                    u = u * v
                u = _hermitian_phase(u)
                if not span.contains_up_to_sign(u):
                    new_rest.append(u)
            rest = new_rest
        if len(lx) != n - group.rank:
            raise StabilizerError("logical basis has the wrong size")
        return cls(group, tuple(lx), tuple(lz))

    def encode(self, p: PauliOperator) -> PauliOperator:
        g = self.group
        if not all(p.commutes(s) for s in g.generators):
            raise ValueError("operator does not preserve the code space")
        k = self.k
        b = [not p.commutes(z) for z in self.logical_z]
        c = [not p.commutes(x) for x in self.logical_x]
        L = PauliOperator.identity(g.n)
        enc = PauliOperator.identity(k)
        for j in range(k):
            if b[j]:
                L = L * self.logical_x[j]
                enc = enc * PauliOperator.single(k, j, "X")
            if c[j]:
                L = L * self.logical_z[j]
                enc = enc * PauliOperator.single(k, j, "Z")
        # p = R L with R in the group up to a phase
        r = g.reduce(p * L.dagger())
        if r.vec:
            raise StabilizerError("residual is not in the stabilizer group")
        return enc.scale(r.phase)


def _destabilizers(group: StabilizerGroup) -> List[PauliOperator]:
    """Paulis ``d_i`` with ``d_i`` anticommuting with generator ``i`` only."""
    n, gens = group.n, list(group.generators)
    r = len(gens)
    # solve <g_j, d> = delta_ij over GF(2) on the 2n-dim symplectic space
    M = np.zeros((r, 2 * n), dtype=np.uint8)
    for i, g in enumerate(gens):
        for q in range(n):
            # <g, d> = g.x . d.z + g.z . d.x ; columns: d.x then d.z
            M[i, q] = g.z >> q & 1
            M[i, n + q] = g.x >> q & 1
    aug = np.concatenate([M, np.eye(r, dtype=np.uint8)], axis=1)
    piv = []
    row = 0
    for col in range(2 * n):
        pr = next((i for i in range(row, r) if aug[i, col]), None)
        if pr is None:
            continue
        aug[[row, pr]] = aug[[pr, row]]
        for i in range(r):
            if i != row and aug[i, col]:
                aug[i] ^= aug[row]
        piv.append(col)
        row += 1
        if row == r:
            break
    # reduced rows are T M with T invertible, so M d = e_i  <=>  (T M) d = T e_i
    T = aug[:, 2 * n :]
    dests = []
    for i in range(r):
        rhs = T[:, i]
        d = np.zeros(2 * n, dtype=np.uint8)
        for rr, col in enumerate(piv):
            d[col] = rhs[rr]
        x = sum(int(d[q]) << q for q in range(n))
        z = sum(int(d[n + q]) << q for q in range(n))
        dests.append(_hermitian_phase(PauliOperator(n, x, z)))
    return dests
