import json
from collections import Counter

import numpy as np
import pytest

from fermatcx.builder import build_affine, build_projective
from fermatcx.delta import base_triangle
from fermatcx.io import (
    DocumentError,
    complex_document,
    dumps_complex,
    export_complex,
    export_mesh_d2,
    import_complex,
    mesh_d2,
)


@pytest.mark.parametrize("build,d", [(build_affine, 3), (build_projective, 4), (build_affine, 1)])
def test_round_trip(tmp_path, build, d):
    cx = build(d)
    path = tmp_path / "cx.json"
    doc = export_complex(cx, path)
    assert doc["format_version"] == "1" and doc["degree"] == d
    back = import_complex(path)
    assert back == cx
    assert back.labels == cx.labels


def test_byte_stable():
    assert dumps_complex(build_projective(5)) == dumps_complex(build_projective(5))
    assert dumps_complex(build_affine(3)) != dumps_complex(build_projective(3))


def _write(tmp_path, doc):
    path = tmp_path / "doc.json"
    path.write_text(json.dumps(doc))
    return path


def test_hand_written_triangle(tmp_path):
    doc = {
        "format_version": "1",
        "degree": 1,
        "space": "affine",
        "cells": [
            [{"kind": "Vx", "roots": [0]}, {"kind": "Vy", "roots": [0]}, {"kind": "Vz", "roots": [0]}],
            [{"kind": "Lx", "roots": [0, 0]}, {"kind": "Ly", "roots": [0, 0]}, {"kind": "Lz", "roots": [0, 0]}],
            [{"kind": "X", "roots": [0, 0, 0]}],
        ],
        "face1": [[1, 2], [0, 2], [0, 1]],
        "face2": [[0, 1, 2]],
    }
    assert import_complex(_write(tmp_path, doc)) == base_triangle()


def test_named_labels_round_trip(tmp_path):
    path = tmp_path / "t.json"
    export_complex(base_triangle(), path)
    assert import_complex(path).labels == base_triangle().labels


def test_face_index_out_of_range(tmp_path):
    doc = complex_document(build_affine(2))
    doc["face2"][3][1] = 99
    with pytest.raises(DocumentError, match=r"face2\[3\]\[1\]"):
        import_complex(_write(tmp_path, doc))


def test_unknown_version(tmp_path):
    doc = complex_document(build_affine(2))
    doc["format_version"] = "2"
    with pytest.raises(DocumentError, match="format_version"):
        import_complex(_write(tmp_path, doc))


def test_broken_identity_rejected(tmp_path):
    doc = complex_document(build_affine(2))
    doc["face2"][0] = [doc["face2"][0][1], doc["face2"][0][0], doc["face2"][0][2]]
    with pytest.raises(DocumentError, match="face maps"):
        import_complex(_write(tmp_path, doc))


def test_bad_label(tmp_path):
    doc = complex_document(build_affine(2))
    doc["cells"][2][0] = {"kind": "X", "roots": [0, "a", 0]}
    with pytest.raises(DocumentError, match=r"cells\[2\]\[0\]"):
        import_complex(_write(tmp_path, doc))


def test_invalid_json_reports_line(tmp_path):
    path = tmp_path / "bad.json"
    path.write_text('{\n "degree": 2,\n oops\n}')
    with pytest.raises(DocumentError, match=r":3:"):
        import_complex(path)


def test_octahedron(tmp_path):
    path = tmp_path / "m.obj"
    mesh = export_mesh_d2(1, path)
    assert len(mesh.faces) == 8
    verts = {tuple(int(round(v)) for v in p) for p in mesh.vertices}
    assert verts == {(1, 0, 0), (-1, 0, 0), (0, 1, 0), (0, -1, 0), (0, 0, 1), (0, 0, -1)}
    text = path.read_text()
    assert sum(line.startswith("v ") for line in text.splitlines()) == 6
    assert sum(line.startswith("f ") for line in text.splitlines()) == 8
    assert sum(line.startswith("g ") for line in text.splitlines()) == 8


@pytest.mark.parametrize("R", [1, 2, 3, 8])
def test_mesh_subdivision(R):
    mesh = mesh_d2(R)
    assert len(mesh.faces) == 8 * R * R
    assert len(mesh.vertices) == 4 * R * R + 2
    assert np.abs(np.linalg.norm(mesh.vertices, axis=1) - 1).max() <= 1e-9
    # no duplicated positions
    assert len({tuple(np.round(v, 12)) for v in mesh.vertices}) == len(mesh.vertices)
    # closed and consistently oriented: each directed edge once, with its reverse
    edges = Counter()
    for a, b, c in mesh.faces:
        edges.update([(a, b), (b, c), (c, a)])
    assert all(n == 1 for n in edges.values())
    assert all((b, a) in edges for a, b in edges)
    # outward normals
    for tri in mesh.vertices[mesh.faces]:
        n = np.cross(tri[1] - tri[0], tri[2] - tri[0])
        assert np.dot(n, tri.sum(axis=0)) > 0
    # R + 1 vertices along each octant boundary arc
    x, y, z = mesh.vertices.T
    on_arc = np.sum((z == 0) & (x >= 0) & (y >= 0))
    assert on_arc == R + 1


def test_mesh_resolution_zero():
    with pytest.raises(ValueError):
        mesh_d2(0)
