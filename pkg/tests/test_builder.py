import cmath
import itertools
import math

import pytest
from hypothesis import given, settings, strategies as st

from fermatcx.builder import (
    CellLabel,
    NotOnSkeletonError,
    UnityTuple,
    act,
    build_affine,
    build_projective,
    canonical_projective,
    cell_of,
    faces,
    locate,
    realize,
)
from fermatcx.delta import base_triangle


@pytest.mark.parametrize("d", range(1, 11))
def test_counts(d):
    assert build_affine(d).counts == (3 * d, 3 * d * d, d**3)
    assert build_projective(d).counts == (3, 3 * d, d * d)


def test_degree_one_is_the_triangle():
    assert build_affine(1) == base_triangle()
    assert build_projective(1) == base_triangle()


def test_degree_two_vertices():
    cx = build_affine(2)
    pts = set()
    for v in cx.labels[0]:
        bary = [1.0 if j == v.coords[0] else 0.0 for j in range(3)]
        pts.add(tuple(int(p.real) for p in realize(v, bary)))
    assert pts == {(1, 0, 0), (-1, 0, 0), (0, 1, 0), (0, -1, 0), (0, 0, 1), (0, 0, -1)}


def test_invalid_degree():
    for d in (0, -2, 1.5):
        with pytest.raises(ValueError):
            build_affine(d)
        with pytest.raises(ValueError):
            build_projective(d)


def test_labels_sorted():
    cx = build_affine(3)
    for level in cx.labels:
        assert list(level) == sorted(level, key=CellLabel.sort_key)


def test_label_strings():
    assert str(CellLabel("X", (0, 1, 2), 3)) == "X(0,1,2)"
    assert str(CellLabel("Lx", (1, 0), 2)) == "L^x(1,0)"
    assert str(CellLabel("X", (0, 1, 1), 2, projective=True)) == "X[0:1:1]"


def test_act_examples():
    d = 3
    g = UnityTuple(1, 0, 0, d)
    assert act(g, CellLabel("X", (0, 0, 0), d)) == CellLabel("X", (1, 0, 0), d)
    lx = CellLabel("Lx", (2, 1), d)
    assert act(g, lx) == lx
    assert act(UnityTuple.identity(d), lx) == lx


def test_act_errors():
    with pytest.raises(ValueError):
        act(UnityTuple(1, 0, 0, 2), CellLabel("X", (0, 0, 0), 3))
    with pytest.raises(ValueError):
        act(UnityTuple(1, 0, 0, 3), CellLabel("X", (0, 0, 0), 3, projective=True))


@pytest.mark.parametrize("d", [2, 3, 4])
def test_action_commutes_with_faces(d):
    for g3 in itertools.product(range(d), repeat=3):
        g = UnityTuple(*g3, d)
        for x in build_affine(d).labels[2]:
            assert faces(act(g, x)) == tuple(act(g, f) for f in faces(x))
        for e in build_affine(d).labels[1]:
            assert faces(act(g, e)) == tuple(act(g, f) for f in faces(e))


def test_canonical_examples():
    assert canonical_projective(CellLabel("X", (2, 1, 0), 3)) == CellLabel("X", (0, 2, 1), 3, True)
    assert canonical_projective(CellLabel("X", (0, 0, 0), 3)) == CellLabel("X", (0, 0, 0), 3, True)
    a = canonical_projective(CellLabel("Lx", (1, 1), 2))
    assert a == CellLabel("Lx", (0, 0), 2, True) == canonical_projective(CellLabel("Lx", (0, 0), 2))


@settings(max_examples=300, deadline=None)
@given(st.integers(1, 7), st.data())
def test_canonical_invariant_under_diagonal(d, data):
    kind = data.draw(st.sampled_from(["Vx", "Ly", "X"]))
    n = {"V": 1, "L": 2, "X": 3}[kind[0]]
    roots = tuple(data.draw(st.lists(st.integers(0, d - 1), min_size=n, max_size=n)))
    k = data.draw(st.integers(0, d - 1))
    cell = CellLabel(kind, roots, d)
    moved = act(UnityTuple.diagonal(k, d), cell)
    assert canonical_projective(moved) == canonical_projective(cell)


def test_projective_faces_descend():
    d = 4
    aff, proj = build_affine(d), build_projective(d)
    for x in aff.labels[2]:
        img = cell_of(proj, canonical_projective(x))
        expected = tuple(cell_of(proj, canonical_projective(f)) for f in faces(x))
        assert proj.face2[img] == expected


def test_realize_examples():
    assert realize(CellLabel("X", (0, 0, 0), 2), (1, 0, 0)) == (1, 0, 0)
    p = realize(CellLabel("X", (1, 0, 0), 2), (0.5, 0.5, 0))
    assert p[0] == pytest.approx(-math.sqrt(0.5)) and p[1] == pytest.approx(math.sqrt(0.5))
    assert p[2] == 0
    q = realize(CellLabel("X", (0, 0, 0), 1), (1 / 3, 1 / 3, 1 / 3))
    assert all(v == pytest.approx(1 / 3) for v in q)


def test_realize_errors():
    with pytest.raises(ValueError):
        realize(CellLabel("X", (0, 0, 0), 2), (0.5, 0.6, 0))
    with pytest.raises(ValueError):
        realize(CellLabel("Lx", (0, 0), 2), (0.5, 0.5, 0))


def test_locate_examples():
    assert locate((1, 0, 0), 3) == CellLabel("Vx", (0,), 3)
    assert locate((-0.6, 0.8, 0), 2) == CellLabel("Lz", (1, 0), 2)
    with pytest.raises(NotOnSkeletonError):
        locate((0.5 + 0.1j, 0.5, 0.5), 2)
    with pytest.raises(NotOnSkeletonError):
        locate((0.5, 0.5, 0.5), 2)


@settings(max_examples=300, deadline=None)
@given(st.integers(1, 8), st.data())
def test_realize_locate_round_trip(d, data):
    roots = tuple(data.draw(st.lists(st.integers(0, d - 1), min_size=3, max_size=3)))
    w = data.draw(st.lists(st.floats(0.01, 1.0), min_size=3, max_size=3))
    bary = [v / sum(w) for v in w]
    cell = CellLabel("X", roots, d)
    p = realize(cell, bary)
    assert locate(p, d) == cell
    assert abs(sum(v**d for v in p) - 1) < 1e-12
    for v in p:
        assert abs(cmath.phase(v**d)) < 1e-9
