import pytest

from impossibility_lab.errors import InputError, MapRangeError
from impossibility_lab.fixed_point import (
    SimplexMap,
    approx_fixed_point,
    constant_map,
    identity_map,
    label_from_map,
    named_map,
    residual,
    rotate_map,
    squash_map,
)
from impossibility_lab.sperner import kuhn_triangulation, validate_labeling

MAPS = [identity_map(2), rotate_map(2), constant_map((0.2, 0.3, 0.5)), squash_map(2, 0.3),
        SimplexMap(2, lambda x: (x[0] ** 2 / sum(v * v for v in x), x[1] ** 2 / sum(v * v for v in x),
                                 x[2] ** 2 / sum(v * v for v in x)), "square")]


def test_identity_labels_are_min_carrier():
    t = kuhn_triangulation(2, 5)
    assert label_from_map(identity_map(2), t) == tuple(min(c) for c in t.carriers)


def test_corner_labels():
    t = kuhn_triangulation(2, 1)
    e0 = t.vertices.index((1, 0, 0))
    assert rotate_map(2)((1.0, 0.0, 0.0)) == (0.0, 0.0, 1.0)
    assert label_from_map(rotate_map(2), t)[e0] == 0
    assert label_from_map(constant_map((1 / 3, 1 / 3, 1 / 3)), t)[e0] == 0


@pytest.mark.parametrize("f", MAPS, ids=lambda f: f.description)
@pytest.mark.parametrize("k", [1, 3, 8])
def test_labels_always_sperner(f, k):
    t = kuhn_triangulation(2, k)
    assert validate_labeling(t, label_from_map(f, t)).valid


def test_range_errors():
    bad = SimplexMap(2, lambda x: (0.5, 0.5, 0.5), "bad")
    with pytest.raises(MapRangeError):
        label_from_map(bad, kuhn_triangulation(2, 2))
    with pytest.raises(MapRangeError):
        approx_fixed_point(bad, 1e-3)
    with pytest.raises(InputError):
        approx_fixed_point(rotate_map(2), 0.0)
    with pytest.raises(InputError):
        approx_fixed_point(rotate_map(2), 1e-3, k0=4, max_k=2)


def test_identity_converges_at_first_level():
    r = approx_fixed_point(identity_map(2), 1e-9, k0=2)
    assert r.converged and r.residual == 0 and r.subdivision == 2


def test_rotation_fixed_point():
    r = approx_fixed_point(rotate_map(2), 1e-3)
    assert r.converged and r.residual <= 1e-3
    assert max(abs(x - 1 / 3) for x in r.point) <= 2e-3


def test_constant_map_fixed_point():
    c = (0.2, 0.3, 0.5)
    r = approx_fixed_point(constant_map(c), 1e-2)
    assert r.converged and r.residual <= 1e-2
    assert max(abs(x - y) for x, y in zip(r.point, c)) <= 1 / r.subdivision


def test_best_residual_never_increases():
    r = approx_fixed_point(rotate_map(2), 1e-6, k0=2, max_k=64)
    assert not r.converged
    best = [h[1] for h in r.history]
    assert all(a >= b for a, b in zip(best, best[1:]))
    assert r.residual == best[-1]


@pytest.mark.parametrize("f", MAPS, ids=lambda f: f.description)
def test_result_residual_recomputes(f):
    r = approx_fixed_point(f, 1e-2, max_k=32)
    assert abs(residual(f, r.point) - r.residual) <= 1e-12
    assert abs(sum(r.point) - 1) < 1e-12


def test_three_dimensional_rotation():
    r = approx_fixed_point(rotate_map(3), 1e-9, k0=1, max_k=4)
    assert r.converged and max(abs(x - 0.25) for x in r.point) < 1e-12


def test_named_maps():
    assert named_map("identity").description == "identity"
    assert named_map("rotate", 3).dim == 3
    assert named_map("const:0.5,0.5").dim == 1
    assert named_map("squash:0.5")((1.0, 0.0, 0.0)) == pytest.approx((2 / 3, 1 / 6, 1 / 6))
    for bad in ["nope", "const:0.5,0.6", "squash:x", "squash:2", "identity:3"]:
        with pytest.raises(InputError):
            named_map(bad)
