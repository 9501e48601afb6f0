"""JSON documents for complexes and OBJ export of the degree two sphere."""

from __future__ import annotations

import json
import os
from dataclasses import dataclass
from itertools import product

import numpy as np

from .builder import CellLabel, build_affine, realize
from .delta import DeltaComplex, validate

__all__ = [
    "FORMAT_VERSION",
    "DocumentError",
    "MeshDocument",
    "complex_document",
    "complex_from_document",
    "dumps_complex",
    "export_complex",
    "export_mesh_d2",
    "import_complex",
    "mesh_d2",
    "write_obj",
]

FORMAT_VERSION = "1"


class DocumentError(ValueError):
    """Malformed complex document; the message names the offending field."""


def _encode_label(label):
    if isinstance(label, CellLabel):
        return {"kind": label.kind, "roots": list(label.roots)}
    return {"name": str(label)}


def complex_document(complex: DeltaComplex, degree: int | None = None,
                     space: str | None = None) -> dict:
    labels = complex.labels
    first = labels[0][0] if labels and labels[0] else None
    if degree is None:
        degree = first.d if isinstance(first, CellLabel) else 1
    if space is None:
        space = "projective" if isinstance(first, CellLabel) and first.projective else "affine"
    return {
        "format_version": FORMAT_VERSION,
        "degree": int(degree),
        "space": space,
        "cells": [[_encode_label(lab) for lab in level] for level in labels] if labels else None,
        "face1": [list(e) for e in complex.face1],
        "face2": [list(f) for f in complex.face2],
    }


def dumps_complex(complex: DeltaComplex, **kwargs) -> str:
    return json.dumps(complex_document(complex, **kwargs), sort_keys=True, indent=1) + "\n"


def export_complex(complex: DeltaComplex, path, **kwargs) -> dict:
    doc = complex_document(complex, **kwargs)
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(json.dumps(doc, sort_keys=True, indent=1) + "\n")
    return doc


def _require(cond, where, msg):
    if not cond:
        raise DocumentError(f"{where}: {msg}")


def _int_list(value, length, where):
    _require(isinstance(value, list) and len(value) == length, where,
             f"expected a list of {length} integers, got {value!r}")
    for i, v in enumerate(value):
        _require(isinstance(v, int) and not isinstance(v, bool), f"{where}[{i}]",
                 f"expected an integer, got {v!r}")
    return tuple(value)


def complex_from_document(doc) -> DeltaComplex:
    _require(isinstance(doc, dict), "document", "expected a JSON object")
    version = doc.get("format_version")
    _require(version == FORMAT_VERSION, "format_version",
             f"unsupported version {version!r} (expected {FORMAT_VERSION!r})")
    degree = doc.get("degree")
    _require(isinstance(degree, int) and degree >= 1, "degree", f"expected an integer >= 1, got {degree!r}")
    space = doc.get("space")
    _require(space in ("affine", "projective"), "space", f"expected 'affine' or 'projective', got {space!r}")
    for key in ("face1", "face2"):
        _require(isinstance(doc.get(key), list), key, "expected a list")
    face1 = [_int_list(e, 2, f"face1[{j}]") for j, e in enumerate(doc["face1"])]
    face2 = [_int_list(f, 3, f"face2[{j}]") for j, f in enumerate(doc["face2"])]

    cells = doc.get("cells")
    labels = None
    if cells is not None:
        _require(isinstance(cells, list) and len(cells) == 3, "cells", "expected three lists")
        labels = []
        for dim, level in enumerate(cells):
            _require(isinstance(level, list), f"cells[{dim}]", "expected a list")
            out = []
            for i, entry in enumerate(level):
                where = f"cells[{dim}][{i}]"
                _require(isinstance(entry, dict), where, "expected an object")
                if "name" in entry:
                    out.append(str(entry["name"]))
                    continue
                try:
                    out.append(CellLabel(entry["kind"], _int_list(entry.get("roots"), len(entry.get("roots") or []), where),
                                         degree, projective=space == "projective"))
                except (KeyError, ValueError) as exc:
                    raise DocumentError(f"{where}: {exc}") from None
            labels.append(tuple(out))
        n0 = len(labels[0])
        _require(len(labels[1]) == len(face1), "cells[1]", "length differs from face1")
        _require(len(labels[2]) == len(face2), "cells[2]", "length differs from face2")
    else:
        n0 = doc.get("n0")
        _require(isinstance(n0, int) and n0 >= 0, "n0", "required when cells are absent")

    for j, e in enumerate(face1):
        for i, v in enumerate(e):
            _require(0 <= v < n0, f"face1[{j}][{i}]", f"vertex index {v} out of range [0, {n0})")
    for j, f in enumerate(face2):
        for i, v in enumerate(f):
            _require(0 <= v < len(face1), f"face2[{j}][{i}]", f"edge index {v} out of range [0, {len(face1)})")

    cx = DeltaComplex.from_faces(n0, face1, face2, labels=labels)
    report = validate(cx)
    _require(report.valid, "face maps", "; ".join(report.problems[:3]))
    return cx


def import_complex(path) -> DeltaComplex:
    with open(path, encoding="utf-8") as fh:
        text = fh.read()
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DocumentError(f"{os.fspath(path)}:{exc.lineno}:{exc.colno}: {exc.msg}") from None
    return complex_from_document(doc)


@dataclass
class MeshDocument:
    vertices: np.ndarray        # (V, 3) float
    faces: np.ndarray           # (F, 3) int, 0-based
    face_labels: list[str]

    def to_obj(self) -> str:
        lines = ["# degree two real skeleton: octant triangles subdivided barycentrically"]
        lines += [f"v {x:.17g} {y:.17g} {z:.17g}" for x, y, z in self.vertices]
        current = None
        for (i, j, k), label in zip(self.faces, self.face_labels):
            if label != current:
                lines.append(f"g {label}")
                current = label
            lines.append(f"f {i + 1} {j + 1} {k + 1}")
        return "\n".join(lines) + "\n"


def mesh_d2(resolution: int) -> MeshDocument:
    """Triangulate the 8 octant cells of the degree two skeleton, ``resolution**2`` triangles each.

    Grid points are shared between cells by their exact combinatorial
    position (root and barycentric numerator on each nonzero axis).
    """
    if isinstance(resolution, bool) or int(resolution) != resolution or resolution < 1:
        raise ValueError(f"resolution must be an integer >= 1, got {resolution!r}")
    R = int(resolution)
    cx = build_affine(2)
    index: dict = {}
    verts: list = []
    faces: list = []
    labels: list = []

    def vertex(cell: CellLabel, ijk):
        key = tuple((r if n else None, n) for r, n in zip(cell.roots, ijk))
        if key not in index:
            p = realize(cell, [n / R for n in ijk])
            index[key] = len(verts)
            verts.append([v.real for v in p])
        return index[key]

    for cell in cx.labels[2]:
        name = "X_" + "_".join("p" if r == 0 else "m" for r in cell.roots)
        for i, j in product(range(R), range(R)):
            if i + j >= R:
                continue
            k = R - i - j
            tris = [((i, j, k), (i + 1, j, k - 1), (i, j + 1, k - 1))]
            if i + j + 1 < R:
                tris.append(((i + 1, j, k - 1), (i + 1, j + 1, k - 2), (i, j + 1, k - 1)))
            for tri in tris:
                ids = [vertex(cell, ijk) for ijk in tri]
                a, b, c = (np.array(verts[v]) for v in ids)
                if np.dot(np.cross(b - a, c - a), a + b + c) < 0:
                    ids[1], ids[2] = ids[2], ids[1]
                faces.append(ids)
                labels.append(name)
    return MeshDocument(np.array(verts, dtype=float), np.array(faces, dtype=int), labels)


def write_obj(mesh: MeshDocument, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(mesh.to_obj())


def export_mesh_d2(resolution: int, path) -> MeshDocument:
    mesh = mesh_d2(resolution)
    write_obj(mesh, path)
    return mesh
