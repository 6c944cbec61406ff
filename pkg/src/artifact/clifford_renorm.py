"""CNOT renormalization circuits for the toric code and the pure Z2^f gauge theory.

One step in the x direction pairs every B face (odd ``x``) with the A face to
its west.  Per B face the circuit applies four commuting CNOTs::

    N(B) -> W(B),  S(B) -> W(B),  E(B) -> W(B),  S(B) -> S(A)

after which ``W(B)`` carries a ``+Z`` stabilizer and ``S(B)`` a ``+X``
stabilizer.  The y circuit is the mirror image under ``x <-> y``.  The same
circuit renormalizes both the toric code and the Z2^f theory because their
stabilizer groups coincide.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple

from .bosonization import bosonize_pair, bosonize_parity, flux_operator, gamma, gamma_p, plaquette_operator, vertex_operator
from .lattice import CoarseGrainMap, Direction, EdgeLattice, coarse_grain
from .pauli import (
    CliffordCircuit,
    PauliOperator,
    StabilizerGroup,
    cnot,
    conjugate,
    gates_commute,
    iter_bits,
    single_qubit_stabilizers,
)


@dataclass(frozen=True)
class RenormCircuitSpec:
    direction: Direction
    lattice: EdgeLattice
    circuit: CliffordCircuit
    cmap: CoarseGrainMap

    @property
    def n_gates(self) -> int:
        return len(self.circuit.gates)

    def all_commute(self) -> bool:
        gs = self.circuit.gates
        return all(gates_commute(a, b) for i, a in enumerate(gs) for b in gs[i + 1 :])

    def depth(self) -> int:
        """Greedy layering: gates sharing a qubit go to different layers."""
        layers: List[set] = []
        for g in self.circuit.gates:
            qs = {g.a, g.b}
            for lay in layers:
                if not lay & qs:
                    lay |= qs
                    break
            else:
                layers.append(set(qs))
        return len(layers)


def _check_size(lat: EdgeLattice, d: Direction) -> None:
    # below 4 the CNOT pattern wraps onto itself
    if (lat.Lx if d is Direction.X else lat.Ly) < 4:
        raise ValueError("renormalized dimension must be at least 4")


def build_c_z2_x(lat: EdgeLattice) -> RenormCircuitSpec:
    cmap = coarse_grain(lat, Direction.X)
    _check_size(lat, Direction.X)
    gates = []
    for b in cmap.b_faces():
        x, y = lat.face_xy(b)
        a = lat.face(x - 1, y)
        wb = lat.W(b)
        gates += [cnot(lat.N(b), wb), cnot(lat.S(b), wb), cnot(lat.E(b), wb), cnot(lat.S(b), lat.S(a))]
    return RenormCircuitSpec(Direction.X, lat, CliffordCircuit(lat.n_edges, tuple(gates)), cmap)


def build_c_z2_y(lat: EdgeLattice) -> RenormCircuitSpec:
    cmap = coarse_grain(lat, Direction.Y)
    _check_size(lat, Direction.Y)
    gates = []
    for b in cmap.b_faces():
        x, y = lat.face_xy(b)
        a = lat.face(x, y - 1)
        sb = lat.S(b)
        gates += [cnot(lat.E(b), sb), cnot(lat.W(b), sb), cnot(lat.N(b), sb), cnot(lat.W(b), lat.W(a))]
    return RenormCircuitSpec(Direction.Y, lat, CliffordCircuit(lat.n_edges, tuple(gates)), cmap)


def build_c_z2(lat: EdgeLattice, direction: "Direction | str") -> RenormCircuitSpec:
    d = Direction.parse(direction)
    return build_c_z2_x(lat) if d is Direction.X else build_c_z2_y(lat)


# ---------------------------------------------------------------- groups


def toric_code_group(lat: EdgeLattice) -> StabilizerGroup:
    gens = [plaquette_operator(lat, f) for f in range(lat.n_faces)]
    gens += [vertex_operator(lat, v) for v in range(lat.n_vertices)]
    return StabilizerGroup.from_generators(gens, lat.n_edges)


def z2f_group(lat: EdgeLattice) -> StabilizerGroup:
    gens = [bosonize_parity(lat, f) for f in range(lat.n_faces)]
    gens += [flux_operator(lat, v) for v in range(lat.n_vertices)]
    return StabilizerGroup.from_generators(gens, lat.n_edges)


def embed(cmap: CoarseGrainMap, p: PauliOperator) -> PauliOperator:
    """Lift a Pauli on the coarse lattice to the retained qubits of the fine one."""
    if p.n != cmap.new.n_edges:
        raise ValueError("operator does not live on the coarse lattice")
    old_of = {ne: e for e, ne in enumerate(cmap.new_edge) if ne >= 0}
    x = sum(1 << old_of[q] for q in iter_bits(p.x))
    z = sum(1 << old_of[q] for q in iter_bits(p.z))
    return PauliOperator(cmap.old.n_edges, x, z, p.phase)


def ancilla_stabilizers(cmap: CoarseGrainMap) -> List[PauliOperator]:
    n = cmap.old.n_edges
    out = [PauliOperator.single(n, q, "Z") for q in cmap.disentangled_z]
    out += [PauliOperator.single(n, q, "X") for q in cmap.disentangled_x]
    return out


def expected_fixed_point(cmap: CoarseGrainMap, kind: str = "toric") -> StabilizerGroup:
    coarse = toric_code_group(cmap.new) if kind == "toric" else z2f_group(cmap.new)
    gens = [embed(cmap, g) for g in coarse.generators] + ancilla_stabilizers(cmap)
    return StabilizerGroup.from_generators(gens, cmap.old.n_edges)


@dataclass
class FixedPointReport:
    direction: str
    size: Tuple[int, int]
    kind: str
    groups_equal: bool
    disentangled_match: bool
    n_gates: int

    @property
    def passed(self) -> bool:
        return self.groups_equal and self.disentangled_match


def verify_fixed_point(lat: EdgeLattice, direction: "Direction | str", kind: str = "toric") -> FixedPointReport:
    spec = build_c_z2(lat, direction)
    g = toric_code_group(lat) if kind == "toric" else z2f_group(lat)
    out = g.conjugate(spec.circuit)
    exp = expected_fixed_point(spec.cmap, kind)
    singles = {(q, a, s) for q, a, s in single_qubit_stabilizers(out)}
    want = {(q, "Z", 1) for q in spec.cmap.disentangled_z} | {(q, "X", 1) for q in spec.cmap.disentangled_x}
    return FixedPointReport(spec.direction.value, (lat.Lx, lat.Ly), kind, out == exp, singles == want, spec.n_gates)


# ---------------------------------------------------------------- figure panels


@dataclass
class PanelResult:
    panel: str
    description: str
    passed: bool
    checked: int
    failures: List[Dict[str, str]]

    def to_dict(self) -> Dict[str, object]:
        return {
            "panel": self.panel,
            "description": self.description,
            "passed": self.passed,
            "checked": self.checked,
            "failures": self.failures,
        }


def _residual_ok(cmap: CoarseGrainMap, r: PauliOperator) -> bool:
    """``r`` is a +1 product of the ancilla stabilizers (Z on dZ qubits, X on dX qubits)."""
    zmask = sum(1 << q for q in cmap.disentangled_z)
    xmask = sum(1 << q for q in cmap.disentangled_x)
    if r.x & ~xmask or r.z & ~zmask:
        return False
    # ancillas are disjoint single-qubit operators, so their product has phase 0
    return r.phase % 4 == 0


def _new_vertex(cmap: CoarseGrainMap, v: int) -> int:
    return cmap.new.vertex(*cmap.new.face_xy(cmap.face_image[cmap.old.NE(v)]))


_PANELS = {
    # figure -> (kind, direction)
    "5": ("toric", Direction.X),
    "7": ("toric", Direction.Y),
    "13": ("z2f", Direction.X),
    "15": ("z2f", Direction.Y),
}


def _panel_items(kind: str, spec: RenormCircuitSpec):
    lat, cmap = spec.lattice, spec.cmap
    new = cmap.new
    face_op = plaquette_operator if kind == "toric" else bosonize_parity
    vtx_op = vertex_operator if kind == "toric" else flux_operator
    fname = "plaquette" if kind == "toric" else "W_f"
    vname = "vertex" if kind == "toric" else "F_v"
    a_faces, b_faces = cmap.a_faces(), cmap.b_faces()
    a_verts = [v for v in range(lat.n_vertices) if cmap.is_a_face(lat.NE(v))]
    b_verts = [v for v in range(lat.n_vertices) if not cmap.is_a_face(lat.NE(v))]
    ident = PauliOperator.identity(lat.n_edges)
    return [
        ("a", f"{fname} on B face -> single-qubit stabilizer", [(face_op(lat, f), ident) for f in b_faces]),
        ("b", f"{fname} on A face -> coarse {fname}", [(face_op(lat, f), embed(cmap, face_op(new, cmap.face_image[f]))) for f in a_faces]),
        ("c", f"{vname} with NE(v) on B -> single-qubit stabilizer", [(vtx_op(lat, v), ident) for v in b_verts]),
        ("d", f"{vname} with NE(v) on A -> coarse {vname}", [(vtx_op(lat, v), embed(cmap, vtx_op(new, _new_vertex(cmap, v)))) for v in a_verts]),
    ]


def verify_fig_transformations(which: str, lat: EdgeLattice) -> List[PanelResult]:
    """Check the four panels of one transformation figure on ``lat``.

    Each left-hand generator is conjugated by the renormalization circuit and
    must equal its right-hand coarse generator times a product of the +1
    single-qubit stabilizers of the disentangled qubits.
    """
    if which not in _PANELS:
        raise ValueError(f"unknown figure {which!r}; choose from {sorted(_PANELS)}")
    kind, d = _PANELS[which]
    spec = build_c_z2(lat, d)
    results = []
    for tag, desc, items in _panel_items(kind, spec):
        fails = []
        for lhs, rhs in items:
            out = conjugate(spec.circuit, lhs)
            if not _residual_ok(spec.cmap, out * rhs):
                fails.append({"lhs": str(lhs), "conjugated": str(out), "expected": str(rhs)})
        results.append(PanelResult(f"{which}{tag}", desc, not fails, len(items), fails))
    return results


def verify_all_figures(lat: EdgeLattice) -> List[PanelResult]:
    return [r for w in ("5", "7", "13", "15") for r in verify_fig_transformations(w, lat)]


# ---------------------------------------------------------------- bosonized generators


@dataclass
class IdentityResult:
    name: str
    direction: str
    passed: bool
    lhs: str
    conjugated: str
    expected: str

    def to_dict(self) -> Dict[str, object]:
        return dict(self.__dict__)


def _faces(lat: EdgeLattice, d: Direction):
    """Reference faces: A face ``1``, its partner ``1'``, the next A face ``2`` and the neighbour ``3``.

    In x-mode ``2`` lies east of ``1'`` and ``3`` south of ``1``; in y-mode
    ``2`` lies north of ``1'`` and ``3`` west of ``1``.
    """
    x0, y0 = 2, 2
    one = lat.face(x0, y0)
    if d is Direction.X:
        return one, lat.face(x0 + 1, y0), lat.face(x0 + 2, y0), lat.face(x0, y0 - 1)
    return one, lat.face(x0, y0 + 1), lat.face(x0, y0 + 2), lat.face(x0 - 1, y0)


def verify_appendix_b(direction: "Direction | str", lat: Optional[EdgeLattice] = None) -> List[IdentityResult]:
    """Exact conjugation identities for the bosonized generators.

    * hop along the renormalized direction (through ``1'``): gains ``Z`` on the
      dZ qubit of ``1'``;
    * hop across it (``1`` to ``3``): unchanged;
    * parity of an A face: gains the same single ``Z``;
    * parity of a B face: becomes that single ``Z``.
    """
    from .lattice import build_torus

    d = Direction.parse(direction)
    lat = lat or build_torus(8, 8)
    spec = build_c_z2(lat, d)
    cmap, new = spec.cmap, spec.cmap.new
    one, onep, two, three = _faces(lat, d)
    img = cmap.face_image
    zq = lat.W(onep) if d is Direction.X else lat.S(onep)
    zextra = PauliOperator.single(lat.n_edges, zq, "Z")
    n1, n2, n3 = img[one], img[two], img[three]

    # bond bilinears are oriented i gamma_L gamma'_R: L is the west face of a
    # horizontal bond and the north face of a vertical one
    if d is Direction.X:
        along, n_along = (one, two), (n1, n2)
        across, n_across = (one, three), (n1, n3)
    else:
        along, n_along = (two, one), (n2, n1)
        across, n_across = (three, one), (n3, n1)

    def pair(L, ab):
        return bosonize_pair(L, gamma(ab[0]), gamma_p(ab[1]))

    cases = [
        ("hop along", pair(lat, along), zextra * embed(cmap, pair(new, n_along))),
        ("hop across", pair(lat, across), embed(cmap, pair(new, n_across))),
        ("A-face parity", bosonize_parity(lat, one), zextra * embed(cmap, bosonize_parity(new, n1))),
        ("B-face parity", bosonize_parity(lat, onep), zextra),
    ]
    out = []
    for name, lhs, rhs in cases:
        got = conjugate(spec.circuit, lhs)
        out.append(IdentityResult(name, d.value, got == rhs, str(lhs), str(got), str(rhs)))
    return out
