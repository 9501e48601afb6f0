"""Cell structures of the real skeleton of the Fermat surface and its quotient.

Cells are labelled by roots of unity, stored as residues ``k`` mod ``d``
standing for ``exp(2*pi*i*k/d)``.  Every affine 2-cell ``X(a, b, c)`` is the
translate of the positive octant piece ``X(0, 0, 0)`` by ``(a, b, c)``.  Its
faces lie on the coordinate planes and only remember the roots of the
coordinates that do not vanish there:

    d0 X(a,b,c) = Lx(b,c)   on {x = 0}
    d1 X(a,b,c) = Ly(a,c)   on {y = 0}
    d2 X(a,b,c) = Lz(a,b)   on {z = 0}

with ``Lx(b,c): Vy(b) -> Vz(c)``, ``Ly(a,c): Vx(a) -> Vz(c)`` and
``Lz(a,b): Vx(a) -> Vy(b)``.

The projective complex is the quotient by the diagonal subgroup.  Its cells
are canonical representatives whose first stored residue is zero.

Cells are ordered by kind (``Vx, Vy, Vz``; ``Lx, Ly, Lz``; ``X``) and then
lexicographically by residues.
"""

from __future__ import annotations

import cmath
import itertools
import math
from dataclasses import dataclass
from typing import Sequence

from .delta import DeltaComplex

__all__ = [
    "CellLabel",
    "UnityTuple",
    "NotOnSkeletonError",
    "KINDS",
    "act",
    "build_affine",
    "build_projective",
    "canonical_projective",
    "cell_of",
    "locate",
    "realize",
    "root_of_unity",
]

# coordinate positions stored by each kind
KIND_COORDS = {
    "Vx": (0,), "Vy": (1,), "Vz": (2,),
    "Lx": (1, 2), "Ly": (0, 2), "Lz": (0, 1),
    "X": (0, 1, 2),
}
KINDS = {0: ("Vx", "Vy", "Vz"), 1: ("Lx", "Ly", "Lz"), 2: ("X",)}
_KIND_ORDER = {k: i for i, k in enumerate(("Vx", "Vy", "Vz", "Lx", "Ly", "Lz", "X"))}


class NotOnSkeletonError(ValueError):
    """Raised when a point does not lie on the real skeleton."""


def root_of_unity(k: int, d: int) -> complex:
    k %= d
    # exact values on the axes keep realized vertices free of 1e-17 noise
    if (4 * k) % d == 0:
        return (1, 1j, -1, -1j)[(4 * k) // d]
    return cmath.exp(2j * math.pi * k / d)


@dataclass(frozen=True)
class CellLabel:
    """A cell of the affine or projective complex.

    ``roots`` holds the residues of the coordinates listed in
    ``KIND_COORDS[kind]``; the other coordinates vanish on the cell.
    """

    kind: str
    roots: tuple[int, ...]
    d: int
    projective: bool = False

    def __post_init__(self):
        if self.kind not in KIND_COORDS:
            raise ValueError(f"unknown cell kind {self.kind!r}")
        if self.d < 1:
            raise ValueError(f"degree must be >= 1, got {self.d}")
        if len(self.roots) != len(KIND_COORDS[self.kind]):
            raise ValueError(
                f"{self.kind} stores {len(KIND_COORDS[self.kind])} residues, got {self.roots}"
            )
        if any(not 0 <= r < self.d for r in self.roots):
            raise ValueError(f"residues {self.roots} out of range for d={self.d}")

    @property
    def dim(self) -> int:
        return len(self.roots) - 1

    @property
    def coords(self) -> tuple[int, ...]:
        return KIND_COORDS[self.kind]

    def sort_key(self):
        return (_KIND_ORDER[self.kind], self.roots)

    def __str__(self) -> str:
        name = self.kind if self.kind == "X" else f"{self.kind[0]}^{self.kind[1]}"
        if self.projective:
            return f"{name}[{':'.join(map(str, self.roots))}]"
        return f"{name}({','.join(map(str, self.roots))})"

    def full_roots(self, fill: int = 0) -> tuple[int, int, int]:
        """Residues on all three coordinates, ``fill`` on vanishing ones."""
        out = [fill, fill, fill]
        for pos, r in zip(self.coords, self.roots):
            out[pos] = r
        return tuple(out)


@dataclass(frozen=True)
class UnityTuple:
    """Element of the group of triples of d-th roots of unity."""

    a: int
    b: int
    c: int
    d: int

    def __post_init__(self):
        if self.d < 1:
            raise ValueError(f"degree must be >= 1, got {self.d}")
        object.__setattr__(self, "a", self.a % self.d)
        object.__setattr__(self, "b", self.b % self.d)
        object.__setattr__(self, "c", self.c % self.d)

    def __mul__(self, other: "UnityTuple") -> "UnityTuple":
        if other.d != self.d:
            raise ValueError("degree mismatch")
        return UnityTuple(self.a + other.a, self.b + other.b, self.c + other.c, self.d)

    @property
    def residues(self) -> tuple[int, int, int]:
        return (self.a, self.b, self.c)

    @classmethod
    def identity(cls, d: int) -> "UnityTuple":
        return cls(0, 0, 0, d)

    @classmethod
    def diagonal(cls, k: int, d: int) -> "UnityTuple":
        return cls(k, k, k, d)


def act(g: UnityTuple, cell: CellLabel) -> CellLabel:
    """Translate ``cell`` by ``g``; components on vanishing coordinates are ignored."""
    if g.d != cell.d:
        raise ValueError(f"degree mismatch: group element d={g.d}, cell d={cell.d}")
    if cell.projective:
        raise ValueError("act is defined on affine cells")
    g3 = g.residues
    roots = tuple((r + g3[pos]) % cell.d for pos, r in zip(cell.coords, cell.roots))
    return CellLabel(cell.kind, roots, cell.d)


def canonical_projective(label: CellLabel) -> CellLabel:
    if label.projective:
        return label
    shift = label.roots[0]
    roots = tuple((r - shift) % label.d for r in label.roots)
    return CellLabel(label.kind, roots, label.d, projective=True)


def faces(label: CellLabel) -> tuple[CellLabel, ...]:
    """Ordered faces ``(d0, d1[, d2])`` of an affine 1- or 2-cell."""
    d = label.d
    if label.kind == "X":
        a, b, c = label.roots
        return (CellLabel("Lx", (b, c), d), CellLabel("Ly", (a, c), d), CellLabel("Lz", (a, b), d))
    if label.kind == "Lx":
        b, c = label.roots
        return (CellLabel("Vy", (b,), d), CellLabel("Vz", (c,), d))
    if label.kind == "Ly":
        a, c = label.roots
        return (CellLabel("Vx", (a,), d), CellLabel("Vz", (c,), d))
    if label.kind == "Lz":
        a, b = label.roots
        return (CellLabel("Vx", (a,), d), CellLabel("Vy", (b,), d))
    raise ValueError(f"{label} has no faces")


def _affine_cells(d: int) -> tuple[list[CellLabel], list[CellLabel], list[CellLabel]]:
    verts = [CellLabel(k, (r,), d) for k in KINDS[0] for r in range(d)]
    edges = [CellLabel(k, rs, d) for k in KINDS[1] for rs in itertools.product(range(d), repeat=2)]
    tris = [CellLabel("X", rs, d) for rs in itertools.product(range(d), repeat=3)]
    return verts, edges, tris


def _assemble(cells, to_cell) -> DeltaComplex:
    verts, edges, tris = cells
    vidx = {c: i for i, c in enumerate(verts)}
    eidx = {c: i for i, c in enumerate(edges)}
    face1 = [tuple(vidx[to_cell(f)] for f in faces(e)) for e in edges]
    face2 = [tuple(eidx[to_cell(f)] for f in faces(x)) for x in tris]
    return DeltaComplex.from_faces(len(verts), face1, face2, labels=(verts, edges, tris))


def _check_degree(d) -> int:
    if isinstance(d, bool) or int(d) != d or d < 1:
        raise ValueError(f"degree must be an integer >= 1, got {d!r}")
    return int(d)


def build_affine(d: int) -> DeltaComplex:
    """The complex with ``3d`` vertices, ``3d^2`` edges and ``d^3`` triangles."""
    d = _check_degree(d)
    return _assemble(_affine_cells(d), lambda c: c)


def build_projective(d: int) -> DeltaComplex:
    """Quotient of :func:`build_affine` by the diagonal roots of unity.

    Counts are ``(3, 3d, d^2)``; face maps are pushed through
    :func:`canonical_projective`.
    """
    d = _check_degree(d)
    verts, edges, tris = _affine_cells(d)
    cells = tuple(
        sorted({canonical_projective(c) for c in level}, key=CellLabel.sort_key)
        for level in (verts, edges, tris)
    )

    def lift(label: CellLabel) -> CellLabel:
        return CellLabel(label.kind, label.roots, label.d)

    verts_p, edges_p, tris_p = cells
    vidx = {c: i for i, c in enumerate(verts_p)}
    eidx = {c: i for i, c in enumerate(edges_p)}
    face1 = [tuple(vidx[canonical_projective(f)] for f in faces(lift(e))) for e in edges_p]
    face2 = [tuple(eidx[canonical_projective(f)] for f in faces(lift(x))) for x in tris_p]
    return DeltaComplex.from_faces(len(verts_p), face1, face2, labels=cells)


def cell_of(complex: DeltaComplex, label: CellLabel) -> int:
    return complex.labels[label.dim].index(label)


def realize(cell: CellLabel, barycentric: Sequence[float]) -> tuple[complex, complex, complex]:
    """Point of the skeleton with the given barycentric coordinates in ``cell``.

    Coordinate ``j`` is ``xi_j * s_j**(1/d)`` with ``xi_j`` the cell's root on
    that axis and the real non-negative root taken.
    """
    s = [float(v) for v in barycentric]
    if len(s) != 3:
        raise ValueError("barycentric coordinates must be a triple")
    if any(v < 0 for v in s) or abs(sum(s) - 1.0) > 1e-9:
        raise ValueError(f"invalid barycentric coordinates {tuple(s)}")
    roots = cell.full_roots()
    present = set(cell.coords)
    out = []
    for j in range(3):
        if j not in present:
            if s[j] != 0:
                raise ValueError(f"{cell} vanishes on coordinate {j}, got weight {s[j]}")
            out.append(0j)
        else:
            out.append(root_of_unity(roots[j], cell.d) * s[j] ** (1.0 / cell.d))
    return tuple(out)


def locate(p: Sequence[complex], d: int, tol: float = 1e-9) -> CellLabel:
    """Smallest affine cell containing ``p``.

    Coordinates of modulus at most ``tol`` count as zero.  Raises
    :class:`NotOnSkeletonError` if some d-th power is not a non-negative
    real, or the powers do not sum to one, within ``tol``.
    """
    d = _check_degree(d)
    p = [complex(v) for v in p]
    powers = [v**d for v in p]
    scale = max(1.0, *(abs(w) for w in powers))
    for j, w in enumerate(powers):
        if abs(w.imag) > tol * scale or w.real < -tol * scale:
            raise NotOnSkeletonError(f"coordinate {j}: {p[j]!r}**{d} = {w!r} is not real >= 0")
    total = sum(powers)
    if abs(total - 1) > tol * scale:
        raise NotOnSkeletonError(f"powers sum to {total!r}, not 1")
    present = [j for j in range(3) if abs(p[j]) > tol]
    roots = tuple(round(cmath.phase(p[j]) * d / (2 * math.pi)) % d for j in present)
    if len(present) == 3:
        name = "X"
    elif len(present) == 2:
        missing = ({0, 1, 2} - set(present)).pop()
        name = ("Lx", "Ly", "Lz")[missing]
    elif len(present) == 1:
        name = ("Vx", "Vy", "Vz")[present[0]]
    else:
        raise NotOnSkeletonError("all coordinates vanish")
    return CellLabel(name, roots, d)
