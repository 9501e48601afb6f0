"""Finite 2-dimensional Delta-complexes with exact integer boundary operators.

A complex stores, per 2-cell, the ordered triple of its faces
``(d0, d1, d2)`` and, per 1-cell, the ordered pair ``(d0, d1)`` of its
endpoints.  Orientation follows the usual convention: an edge runs from its
``d0`` vertex to its ``d1`` vertex, so ``boundary(edge) = d1 - d0`` and
``boundary(face) = d0 - d1 + d2``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Optional, Sequence

import numpy as np

__all__ = [
    "CellId",
    "DeltaComplex",
    "ValidationReport",
    "base_triangle",
    "boundary_matrix",
    "euler_characteristic",
    "exact_matmul",
    "validate",
]


@dataclass(frozen=True, order=True)
class CellId:
    dim: int
    index: int


@dataclass(frozen=True)
class DeltaComplex:
    """Cell counts plus face maps of a 2-dimensional Delta-complex.

    ``labels``, when given, is a triple of per-dimension label tuples.
    Labels are carried along for printing and serialization only; they play
    no role in the boundary operators.
    """

    n0: int
    n1: int
    n2: int
    face2: tuple[tuple[int, int, int], ...]
    face1: tuple[tuple[int, int], ...]
    labels: Optional[tuple[tuple[Any, ...], tuple[Any, ...], tuple[Any, ...]]] = field(
        default=None, compare=False
    )

    @classmethod
    def from_faces(cls, n0: int, face1: Sequence[Sequence[int]],
                   face2: Sequence[Sequence[int]], labels=None) -> "DeltaComplex":
        f1 = tuple(tuple(int(v) for v in e) for e in face1)
        f2 = tuple(tuple(int(v) for v in f) for f in face2)
        if labels is not None:
            labels = tuple(tuple(level) for level in labels)
        return cls(int(n0), len(f1), len(f2), f2, f1, labels)

    @property
    def counts(self) -> tuple[int, int, int]:
        return (self.n0, self.n1, self.n2)

    def label(self, cell: CellId):
        if self.labels is None:
            return cell
        return self.labels[cell.dim][cell.index]


def base_triangle() -> DeltaComplex:
    """The standard simplex ``[v0, v1, v2]``.

    Edges are ``l0 = [v1, v2]``, ``l1 = [v0, v2]``, ``l2 = [v0, v1]``.
    """
    return DeltaComplex.from_faces(
        3,
        face1=[(1, 2), (0, 2), (0, 1)],
        face2=[(0, 1, 2)],
        labels=[("v0", "v1", "v2"), ("l0", "l1", "l2"), ("X",)],
    )


@dataclass
class ValidationReport:
    valid: bool
    problems: list[str] = field(default_factory=list)
    first_bad_cell: Optional[CellId] = None

    def __bool__(self) -> bool:
        return self.valid


def validate(complex: DeltaComplex) -> ValidationReport:
    """Check index ranges and the simplicial identities of every face map.

    Never raises; the returned report names the first violating cell.
    """
    report = ValidationReport(valid=True)

    def fail(cell: CellId, msg: str) -> None:
        if report.first_bad_cell is None:
            report.first_bad_cell = cell
        report.valid = False
        report.problems.append(msg)

    if len(complex.face1) != complex.n1 or len(complex.face2) != complex.n2:
        report.valid = False
        report.problems.append(
            f"face map lengths ({len(complex.face1)}, {len(complex.face2)}) "
            f"do not match counts ({complex.n1}, {complex.n2})"
        )

    for j, edge in enumerate(complex.face1):
        if len(edge) != 2:
            fail(CellId(1, j), f"1-cell {j}: expected 2 faces, got {len(edge)}")
            continue
        for i, v in enumerate(edge):
            if not 0 <= v < complex.n0:
                fail(CellId(1, j), f"1-cell {j}: d{i} = {v} out of range [0, {complex.n0})")

    for j, tri in enumerate(complex.face2):
        if len(tri) != 3:
            fail(CellId(2, j), f"2-cell {j}: expected 3 faces, got {len(tri)}")
            continue
        if not all(0 <= e < len(complex.face1) for e in tri):
            fail(CellId(2, j), f"2-cell {j}: face index out of range in {tri}")
            continue
        e0, e1, e2 = (complex.face1[e] for e in tri)
        if len(e0) != 2 or len(e1) != 2 or len(e2) != 2:
            continue
        # d_i d_j = d_{j-1} d_i for i < j
        if e1[0] != e2[0]:
            fail(CellId(2, j), f"2-cell {j}: d0(d1 X) = {e1[0]} != d0(d2 X) = {e2[0]}")
        if e2[1] != e0[0]:
            fail(CellId(2, j), f"2-cell {j}: d1(d2 X) = {e2[1]} != d0(d0 X) = {e0[0]}")
        if e1[1] != e0[1]:
            fail(CellId(2, j), f"2-cell {j}: d1(d1 X) = {e1[1]} != d1(d0 X) = {e0[1]}")
    return report


def boundary_matrix(complex: DeltaComplex, dim: int) -> np.ndarray:
    """Matrix of the boundary operator on ``dim``-chains, as Python ints.

    Rows index ``(dim-1)``-cells and columns index ``dim``-cells.  Repeated
    faces accumulate, so entries may exceed one in absolute value.
    """
    if dim == 1:
        mat = np.zeros((complex.n0, complex.n1), dtype=object)
        mat[...] = 0
        for j, (a, b) in enumerate(complex.face1):
            mat[b, j] += 1
            mat[a, j] -= 1
        return mat
    if dim == 2:
        mat = np.zeros((complex.n1, complex.n2), dtype=object)
        mat[...] = 0
        for j, (e0, e1, e2) in enumerate(complex.face2):
            mat[e0, j] += 1
            mat[e1, j] -= 1
            mat[e2, j] += 1
        return mat
    raise ValueError(f"boundary_matrix: dim must be 1 or 2, got {dim!r}")


def euler_characteristic(complex: DeltaComplex) -> int:
    return complex.n0 - complex.n1 + complex.n2


def exact_matmul(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Exact integer product, using int64 only when overflow is impossible."""
    a = np.asarray(a, dtype=object)
    b = np.asarray(b, dtype=object)
    if a.shape[1] != b.shape[0]:
        raise ValueError(f"shape mismatch {a.shape} @ {b.shape}")
    if a.size == 0 or b.size == 0:
        out = np.zeros((a.shape[0], b.shape[1]), dtype=object)
        out[...] = 0
        return out
    amax = max(abs(int(v)) for v in a.flat)
    bmax = max(abs(int(v)) for v in b.flat)
    if amax * bmax * a.shape[1] < 2**62:
        prod = a.astype(np.int64) @ b.astype(np.int64)
        return prod.astype(object)
    return a.dot(b)
