import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from fermatcx.builder import build_affine, build_projective
from fermatcx.delta import (
    CellId,
    DeltaComplex,
    base_triangle,
    boundary_matrix,
    euler_characteristic,
    exact_matmul,
    validate,
)


def test_triangle_boundary_of_face():
    d2 = boundary_matrix(base_triangle(), 2)
    assert d2.shape == (3, 1)
    assert [int(v) for v in d2[:, 0]] == [1, -1, 1]


def test_triangle_boundary_of_edges():
    d1 = boundary_matrix(base_triangle(), 1).astype(int)
    # columns l0, l1, l2; rows v0, v1, v2
    expected = np.array([[0, -1, -1],
                         [-1, 0, 1],
                         [1, 1, 0]])
    assert np.array_equal(d1, expected)


def test_isolated_vertex_has_empty_boundary():
    cx = DeltaComplex.from_faces(1, [], [])
    assert boundary_matrix(cx, 1).shape == (1, 0)
    assert boundary_matrix(cx, 2).shape == (0, 0)


def test_bad_dimension():
    with pytest.raises(ValueError):
        boundary_matrix(base_triangle(), 3)


def test_repeated_faces_accumulate():
    # a single loop edge on one vertex has zero boundary
    cx = DeltaComplex.from_faces(1, [(0, 0)], [(0, 0, 0)])
    assert boundary_matrix(cx, 1)[0, 0] == 0
    assert boundary_matrix(cx, 2)[0, 0] == 1


@pytest.mark.parametrize("d", range(1, 11))
@pytest.mark.parametrize("build", [build_affine, build_projective])
def test_boundary_squares_to_zero(d, build):
    cx = build(d)
    prod = exact_matmul(boundary_matrix(cx, 1), boundary_matrix(cx, 2))
    assert not np.any(prod != 0)


def test_base_triangle_valid():
    assert validate(base_triangle()).valid


@pytest.mark.parametrize("d", [1, 2, 3, 5])
def test_built_complexes_valid(d):
    assert validate(build_affine(d))
    assert validate(build_projective(d))


def test_face_index_out_of_range_names_cell():
    cx = build_affine(3)
    face2 = list(cx.face2)
    face2[4] = (face2[4][0], cx.n1 + 7, face2[4][2])
    bad = DeltaComplex.from_faces(cx.n0, cx.face1, face2)
    report = validate(bad)
    assert not report.valid
    assert report.first_bad_cell == CellId(2, 4)
    assert "2-cell 4" in report.problems[0]


@settings(max_examples=200, deadline=None)
@given(st.data())
def test_corrupted_face_maps_are_caught(data):
    cx = build_affine(3)
    face2 = [list(f) for f in cx.face2]
    j = data.draw(st.integers(0, cx.n2 - 1))
    i = data.draw(st.integers(0, 2))
    new = data.draw(st.integers(0, cx.n1 - 1).filter(lambda e: e != face2[j][i]))
    face2[j][i] = new
    report = validate(DeltaComplex.from_faces(cx.n0, cx.face1, face2))
    # replacing one face either breaks an identity or lands on an edge with
    # the same endpoints, which the identities cannot see
    old_edge, new_edge = cx.face1[cx.face2[j][i]], cx.face1[new]
    if old_edge == new_edge:
        assert report.valid
    else:
        assert not report.valid
        assert report.first_bad_cell == CellId(2, j)


def test_edge_out_of_range():
    cx = DeltaComplex.from_faces(2, [(0, 2)], [])
    report = validate(cx)
    assert not report.valid and report.first_bad_cell == CellId(1, 0)


def test_euler_examples():
    assert euler_characteristic(base_triangle()) == 1
    assert euler_characteristic(build_affine(3)) == 9
    assert euler_characteristic(build_projective(4)) == 7


@pytest.mark.parametrize("d", range(1, 11))
def test_euler_formulas(d):
    assert euler_characteristic(build_affine(d)) == d**3 - 3 * d**2 + 3 * d
    assert euler_characteristic(build_projective(d)) == d * d - 3 * d + 3


def test_exact_matmul_large_entries():
    a = np.array([[2**40, 1]], dtype=object)
    b = np.array([[2**40], [3]], dtype=object)
    assert exact_matmul(a, b)[0, 0] == 2**80 + 3
