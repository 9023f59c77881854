import itertools
import json
import math
import random

import pytest
from hypothesis import given, settings, strategies as st

from impossibility_lab.errors import InputError, PreconditionFailed
from impossibility_lab.sperner import (
    Triangulation,
    boundary_face,
    carrier,
    find_panchromatic_all,
    find_panchromatic_path,
    kuhn_triangulation,
    random_sperner_labeling,
    structural_problems,
    triangulation_from_dict,
    triangulation_to_dict,
    validate_labeling,
)


def det(rows):
    """Leibniz determinant; fine for d <= 4."""
    n = len(rows)
    total = 0
    for perm in itertools.permutations(range(n)):
        inversions = sum(perm[i] > perm[j] for i in range(n) for j in range(i + 1, n))
        total += (-1) ** inversions * math.prod(rows[i][perm[i]] for i in range(n))
    return total


def lattice_points(d, k):
    return {c for c in itertools.product(range(k + 1), repeat=d + 1) if sum(c) == k}


@pytest.mark.parametrize("d,k,nv,nc", [(2, 1, 3, 1), (2, 2, 6, 4), (3, 2, 10, 8)])
def test_kuhn_examples(d, k, nv, nc):
    t = kuhn_triangulation(d, k)
    assert (len(t.vertices), len(t.cells)) == (nv, nc)


@pytest.mark.parametrize("d,k", [(1, 5), (2, 1), (2, 3), (2, 6), (3, 2), (3, 4), (4, 2), (4, 3)])
def test_kuhn_against_volume_oracle(d, k):
    t = kuhn_triangulation(d, k)
    assert len(t.vertices) == math.comb(k + d, d)
    assert set(t.vertices) == lattice_points(d, k)
    assert len(t.cells) == k ** d
    # every cell is a unimodular simplex: volume 1/d! each, k^d/d! in total
    for cell in t.cells:
        base = t.vertices[cell[0]]
        rows = [[t.vertices[v][i] - base[i] for i in range(1, d + 1)] for v in cell[1:]]
        assert abs(det(rows)) == 1
    assert structural_problems(t) == []


def test_kuhn_bounds():
    for d, k in [(0, 1), (5, 1), (2, 0), (3, 7), (4, 5)]:
        with pytest.raises(InputError):
            kuhn_triangulation(d, k)


def test_facet_condition_by_hashing():
    t = kuhn_triangulation(3, 3)
    interior = boundary = 0
    for facet, owners in t.facet_cells.items():
        if t.is_boundary_facet(facet):
            assert len(owners) == 1
            boundary += 1
        else:
            assert len(owners) == 2
            interior += 1
    # each of the 4 faces carries 3^2 triangles
    assert boundary == 4 * 9


def test_structural_problems_detects_damage():
    t = kuhn_triangulation(2, 2)
    broken = Triangulation(2, 2, t.vertices, t.cells[:-1])
    assert structural_problems(broken)
    degenerate = Triangulation(2, 2, t.vertices, t.cells[:-1] + ((0, 0, 1),))
    assert structural_problems(degenerate)


def test_carrier_examples():
    assert carrier((5, 0, 0)) == {0}
    assert carrier((1, 1, 0)) == {0, 1}
    assert carrier((1, 1, 1)) == {0, 1, 2}


def test_validate_examples(paper_fig):
    t, labels = paper_fig
    assert validate_labeling(t, labels).valid
    k2 = kuhn_triangulation(2, 2)
    ok = tuple(min(c) for c in k2.carriers)
    corner0 = k2.vertices.index((2, 0, 0))
    bad = list(ok)
    bad[corner0] = 1
    report = validate_labeling(k2, bad)
    assert not report.valid and report.violations == ((corner0, 1),)
    k3 = kuhn_triangulation(2, 3)
    centre = k3.vertices.index((1, 1, 1))
    for lab in range(3):
        labels = [min(c) for c in k3.carriers]
        labels[centre] = lab
        assert validate_labeling(k3, labels).valid
    with pytest.raises(InputError):
        validate_labeling(k3, [0])


def test_paper_figure(paper_fig):
    t, labels = paper_fig
    assert (len(t.vertices), len(t.cells)) == (9, 8)
    cells = find_panchromatic_all(t, labels)
    assert len(cells) == 3
    # 1-based labels of the shaded triangles
    assert sorted(sorted(labels[v] + 1 for v in t.cells[c]) for c in cells) == [[1, 2, 3]] * 3
    assert find_panchromatic_path(t, labels).cell in cells


def test_single_cell():
    t = kuhn_triangulation(2, 1)
    labels = tuple(min(c) for c in t.carriers)
    assert find_panchromatic_all(t, labels) == [0]
    res = find_panchromatic_path(t, labels)
    assert res.cell == 0 and res.trace == (0,)


def test_invalid_labeling_rejected():
    t = kuhn_triangulation(2, 2)
    labels = [2] * len(t.vertices)
    with pytest.raises(PreconditionFailed):
        find_panchromatic_all(t, labels)
    with pytest.raises(PreconditionFailed):
        find_panchromatic_path(t, labels)


def test_path_oracle_on_kuhn_2_6():
    t = kuhn_triangulation(2, 6)
    rng = random.Random(7)
    for _ in range(100):
        labels = random_sperner_labeling(t, rng)
        assert find_panchromatic_path(t, labels).cell in find_panchromatic_all(t, labels)


@settings(max_examples=60, deadline=None)
@given(st.sampled_from([(1, 7), (2, 2), (2, 4), (2, 8), (3, 2), (3, 3), (3, 4), (4, 2)]),
       st.integers(0, 2 ** 32 - 1))
def test_parity_oracle_and_simple_paths(dk, seed):
    t = kuhn_triangulation(*dk)
    labels = random_sperner_labeling(t, random.Random(seed))
    cells = find_panchromatic_all(t, labels)
    assert len(cells) % 2 == 1
    res = find_panchromatic_path(t, labels)
    assert res.cell in cells
    assert len(set(res.trace)) == len(res.trace)
    assert res.trace[-1] == res.cell


@settings(max_examples=30, deadline=None)
@given(st.sampled_from([(2, 3), (2, 5), (3, 3)]), st.integers(0, 2 ** 32 - 1))
def test_boundary_face_inherits_sperner_labeling(dk, seed):
    t = kuhn_triangulation(*dk)
    labels = random_sperner_labeling(t, random.Random(seed))
    face, back = boundary_face(t)
    assert face.dim == t.dim - 1
    assert structural_problems(face) == []
    assert validate_labeling(face, [labels[v] for v in back]).valid


def test_json_round_trip(paper_fig):
    t, labels = paper_fig
    for base in (0, 1):
        d = json.loads(json.dumps(triangulation_to_dict(t, labels, base)))
        assert triangulation_from_dict(d) == (t, labels)
    assert triangulation_from_dict(triangulation_to_dict(t)) == (t, None)


@pytest.mark.parametrize("mutate", [
    lambda d: d.pop("cells"),
    lambda d: d["cells"].pop(),
    lambda d: d["vertices"][0].__setitem__(0, 51),
    lambda d: d.__setitem__("labels", d["labels"][:-1]),
    lambda d: d.__setitem__("labels_base", 3),
])
def test_json_rejects_malformed(paper_fig, mutate):
    t, labels = paper_fig
    d = triangulation_to_dict(t, labels, 1)
    mutate(d)
    with pytest.raises(InputError):
        triangulation_from_dict(d)
