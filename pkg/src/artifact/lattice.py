"""Square-lattice torus geometry.

Conventions (fixed once here and enforced by the adjacency tests):

* Faces ``(x, y)`` with ``0 <= x < Lx``, ``0 <= y < Ly``; face index ``y*Lx + x``.
* Vertex ``(x, y)`` is the lower-left (south-west) corner of face ``(x, y)``.
* Horizontal edge ``h(x, y)`` runs east from vertex ``(x, y)`` to ``(x+1, y)``;
  index ``y*Lx + x``.  Vertical edge ``v(x, y)`` runs north from ``(x, y)`` to
  ``(x, y+1)``; index ``Lx*Ly + y*Lx + x``.  Horizontal edges come first.
* ``S(f) = h(x, y)``, ``N(f) = h(x, y+1)``, ``W(f) = v(x, y)``, ``E(f) = v(x+1, y)``.
* ``L(e)`` is the face to the left of the arrow and ``R(e)`` the face to its right:
  north/south faces for an east edge, west/east faces for a north edge.
* ``r(h(x, y)) = v(x, y-1)`` and ``r(v(x, y)) = h(x-1, y)``: the edge of the other
  orientation whose arrowhead touches the tail of ``e``.
* ``NE(v)`` is face ``(x, y)`` for vertex ``(x, y)``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, List, Tuple

import numpy as np


class Direction(str, Enum):
    X = "x"
    Y = "y"

    @classmethod
    def parse(cls, value: "Direction | str") -> "Direction":
        if isinstance(value, Direction):
            return value
        try:
            return cls(str(value).lower())
        except ValueError as exc:
            raise ValueError(f"direction must be 'x' or 'y', got {value!r}") from exc


class EdgeRole(str, Enum):
    RETAINED = "retained"
    DISENTANGLED_Z = "disentangled_z"
    DISENTANGLED_X = "disentangled_x"


@dataclass(frozen=True)
class EdgeLattice:
    """Periodic ``Lx x Ly`` square lattice with qubits on edges."""

    Lx: int
    Ly: int

    def __post_init__(self) -> None:
        if int(self.Lx) != self.Lx or int(self.Ly) != self.Ly:
            raise ValueError("lattice dimensions must be integers")
        if self.Lx < 2 or self.Ly < 2:
            raise ValueError(f"need Lx, Ly >= 2, got ({self.Lx}, {self.Ly})")

    # counts
    @property
    def n_faces(self) -> int:
        return self.Lx * self.Ly

    @property
    def n_vertices(self) -> int:
        return self.Lx * self.Ly

    @property
    def n_edges(self) -> int:
        return 2 * self.Lx * self.Ly

    # coordinates <-> indices
    def face(self, x: int, y: int) -> int:
        return (y % self.Ly) * self.Lx + (x % self.Lx)

    def vertex(self, x: int, y: int) -> int:
        return self.face(x, y)

    def h(self, x: int, y: int) -> int:
        return (y % self.Ly) * self.Lx + (x % self.Lx)

    def v(self, x: int, y: int) -> int:
        return self.n_faces + (y % self.Ly) * self.Lx + (x % self.Lx)

    def face_xy(self, f: int) -> Tuple[int, int]:
        return f % self.Lx, f // self.Lx

    vertex_xy = face_xy

    def edge_info(self, e: int) -> Tuple[str, int, int]:
        """``('h'|'v', x, y)`` for edge index ``e``."""
        if not 0 <= e < self.n_edges:
            raise IndexError(f"edge {e} out of range")
        kind = "h" if e < self.n_faces else "v"
        x, y = self.face_xy(e % self.n_faces)
        return kind, x, y

    def is_horizontal(self, e: int) -> bool:
        return e < self.n_faces

    # face boundary
    def N(self, f: int) -> int:
        x, y = self.face_xy(f)
        return self.h(x, y + 1)

    def S(self, f: int) -> int:
        x, y = self.face_xy(f)
        return self.h(x, y)

    def W(self, f: int) -> int:
        x, y = self.face_xy(f)
        return self.v(x, y)

    def E(self, f: int) -> int:
        x, y = self.face_xy(f)
        return self.v(x + 1, y)

    def face_edges(self, f: int) -> Tuple[int, int, int, int]:
        """Edges of ``f`` in N, E, S, W order."""
        return self.N(f), self.E(f), self.S(f), self.W(f)

    # edge -> faces / partner edge
    def L(self, e: int) -> int:
        kind, x, y = self.edge_info(e)
        return self.face(x, y) if kind == "h" else self.face(x - 1, y)

    def R(self, e: int) -> int:
        kind, x, y = self.edge_info(e)
        return self.face(x, y - 1) if kind == "h" else self.face(x, y)

    def r(self, e: int) -> int:
        kind, x, y = self.edge_info(e)
        return self.v(x, y - 1) if kind == "h" else self.h(x - 1, y)

    # vertices
    def NE(self, vtx: int) -> int:
        return vtx

    def vertex_edges(self, vtx: int) -> Tuple[int, int, int, int]:
        """Edges touching ``vtx`` in east, north, west, south order."""
        x, y = self.vertex_xy(vtx)
        return self.h(x, y), self.v(x, y), self.h(x - 1, y), self.v(x, y - 1)

    def tail(self, e: int) -> int:
        _, x, y = self.edge_info(e)
        return self.vertex(x, y)

    def head(self, e: int) -> int:
        kind, x, y = self.edge_info(e)
        return self.vertex(x + 1, y) if kind == "h" else self.vertex(x, y + 1)

    def to_dict(self) -> Dict[str, object]:
        return {
            "Lx": self.Lx,
            "Ly": self.Ly,
            "edges": [
                {
                    "index": e,
                    "kind": self.edge_info(e)[0],
                    "x": self.edge_info(e)[1],
                    "y": self.edge_info(e)[2],
                    "L": self.L(e),
                    "R": self.R(e),
                    "r": self.r(e),
                }
                for e in range(self.n_edges)
            ],
        }


def build_torus(Lx: int, Ly: int) -> EdgeLattice:
    return EdgeLattice(int(Lx), int(Ly))


def adjacency_audit(lat: EdgeLattice) -> List[str]:
    """Return a list of violated geometric invariants (empty when consistent)."""
    problems: List[str] = []
    count = np.zeros(lat.n_edges, dtype=int)
    for f in range(lat.n_faces):
        edges = lat.face_edges(f)
        if len(set(edges)) != 4:
            problems.append(f"face {f} edges not distinct: {edges}")
        count[list(edges)] += 1
    if not np.all(count == 2):
        problems.append("some edge does not border exactly two faces")
    for e in range(lat.n_edges):
        if lat.L(e) == lat.R(e):
            problems.append(f"edge {e}: L == R")
        if e not in lat.face_edges(lat.L(e)) or e not in lat.face_edges(lat.R(e)):
            problems.append(f"edge {e}: L/R faces do not contain it")
        re = lat.r(e)
        if lat.is_horizontal(re) == lat.is_horizontal(e):
            problems.append(f"edge {e}: r(e) has the same orientation")
        if lat.head(re) != lat.tail(e):
            problems.append(f"edge {e}: arrowhead of r(e) is not at tail of e")
    for horizontal in (True, False):
        dom = [e for e in range(lat.n_edges) if lat.is_horizontal(e) == horizontal]
        if len({lat.r(e) for e in dom}) != len(dom):
            problems.append("r not injective on an orientation class")
    return problems


# ---------------------------------------------------------------- coarse graining


@dataclass(frozen=True)
class CoarseGrainMap:
    """How one renormalization step relabels the torus.

    In x-mode faces with even ``x`` are A (kept) and odd ``x`` are B; the new
    face of an A face also contains the B face to its east.  In y-mode the
    roles are played by ``y`` and the B face to the north.
    """

    old: EdgeLattice
    new: EdgeLattice
    direction: Direction
    roles: Tuple[EdgeRole, ...]
    new_edge: Tuple[int, ...]  # -1 for disentangled
    face_image: Tuple[int, ...]  # -1 for consumed (B) faces

    @property
    def retained(self) -> List[int]:
        return [e for e, r in enumerate(self.roles) if r is EdgeRole.RETAINED]

    @property
    def disentangled_z(self) -> List[int]:
        return [e for e, r in enumerate(self.roles) if r is EdgeRole.DISENTANGLED_Z]

    @property
    def disentangled_x(self) -> List[int]:
        return [e for e, r in enumerate(self.roles) if r is EdgeRole.DISENTANGLED_X]

    def is_a_face(self, f: int) -> bool:
        return self.face_image[f] >= 0

    def b_faces(self) -> List[int]:
        return [f for f, img in enumerate(self.face_image) if img < 0]

    def a_faces(self) -> List[int]:
        return [f for f, img in enumerate(self.face_image) if img >= 0]

    def partner(self, a_face: int) -> int:
        """The B face merged into A face ``a_face``."""
        x, y = self.old.face_xy(a_face)
        if self.direction is Direction.X:
            return self.old.face(x + 1, y)
        return self.old.face(x, y + 1)

    def old_edge(self, new_e: int) -> int:
        return self.new_edge.index(new_e)

    def to_dict(self) -> Dict[str, object]:
        return {
            "direction": self.direction.value,
            "old": [self.old.Lx, self.old.Ly],
            "new": [self.new.Lx, self.new.Ly],
            "roles": [r.value for r in self.roles],
            "new_edge": list(self.new_edge),
            "face_image": list(self.face_image),
        }


def coarse_grain(lat: EdgeLattice, direction: "Direction | str") -> CoarseGrainMap:
    d = Direction.parse(direction)
    if d is Direction.X:
        if lat.Lx % 2:
            raise ValueError("x coarse graining needs even Lx")
        new = build_torus(lat.Lx // 2, lat.Ly)
    else:
        if lat.Ly % 2:
            raise ValueError("y coarse graining needs even Ly")
        new = build_torus(lat.Lx, lat.Ly // 2)

    roles = [EdgeRole.RETAINED] * lat.n_edges
    new_edge = [-1] * lat.n_edges
    face_image = [-1] * lat.n_faces
    for f in range(lat.n_faces):
        x, y = lat.face_xy(f)
        a_coord = x if d is Direction.X else y
        if a_coord % 2 == 0:
            nx, ny = (x // 2, y) if d is Direction.X else (x, y // 2)
            face_image[f] = new.face(nx, ny)
            # the A face keeps its south and west edges
            new_edge[lat.S(f)] = new.h(nx, ny)
            new_edge[lat.W(f)] = new.v(nx, ny)
        else:
            if d is Direction.X:
                roles[lat.W(f)] = EdgeRole.DISENTANGLED_Z
                roles[lat.S(f)] = EdgeRole.DISENTANGLED_X
            else:
                roles[lat.S(f)] = EdgeRole.DISENTANGLED_Z
                roles[lat.W(f)] = EdgeRole.DISENTANGLED_X
    return CoarseGrainMap(lat, new, d, tuple(roles), tuple(new_edge), tuple(face_image))


# ---------------------------------------------------------------- 16-layer superlattice

# Layer index (1..16) of the face at (x mod 4, y mod 4).  Rows run south to
# north; within each 2x2 block the four layers sit in a Z pattern.
_SUPERCELL = np.array(
    [
        [1, 2, 5, 6],
        [3, 4, 7, 8],
        [9, 10, 13, 14],
        [11, 12, 15, 16],
    ],
    dtype=int,
)


@dataclass(frozen=True)
class SublatticeTag:
    lattice: EdgeLattice
    nu: int
    layer: Tuple[int, ...] = field(repr=False)

    def superconducting(self, f: int) -> bool:
        return self.layer[f] <= self.nu

    def faces_in_layer(self, i: int) -> List[int]:
        return [f for f, li in enumerate(self.layer) if li == i]


def superlattice_16(lat: EdgeLattice, nu: int) -> SublatticeTag:
    if not 0 <= nu <= 16:
        raise ValueError("nu must lie in 0..16")
    if lat.Lx % 4 or lat.Ly % 4:
        raise ValueError("16-layer superlattice needs Lx, Ly multiples of 4")
    layer = tuple(int(_SUPERCELL[y % 4, x % 4]) for y in range(lat.Ly) for x in range(lat.Lx))
    return SublatticeTag(lat, int(nu), layer)
