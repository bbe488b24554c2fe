import itertools
import json
from fractions import Fraction

import pytest

from toricqample.exceptions import NotCartier, NotComplete, NotProjective, NotSimplicial
from toricqample.fan import (
    Fan,
    blowup_projective_space,
    cartier_data,
    cartier_index,
    class_lattice,
    class_of,
    find_ample,
    is_ample,
    is_cartier,
    load_fan,
    locate,
    product_of_lines,
    projective_space,
    validate,
    weighted_projective_plane,
)
from toricqample.qample import is_q_ample

from conftest import FIXTURES, he_basis

ALL_FANS = [
    projective_space(2),
    projective_space(3),
    blowup_projective_space(2),
    blowup_projective_space(3),
    product_of_lines(),
    weighted_projective_plane(2),
]


@pytest.mark.parametrize("fan", ALL_FANS, ids=lambda f: f"{f.dim}d-{f.n_rays}rays")
def test_validate_standard_fans(fan):
    report = validate(fan)
    assert report.sphere_cohomology == ((fan.dim - 1, 1),)
    assert is_ample(fan, report.ample_witness)


def test_p2_and_blowup_fans_match_spec():
    p2 = Fan.from_json({"dim": 2, "rays": [[1, 0], [0, 1], [-1, -1]], "max_cones": [[1, 2], [2, 3], [1, 3]]})
    assert p2 == projective_space(2)
    bl = Fan.from_json(
        {"dim": 2, "rays": [[1, 0], [0, 1], [-1, -1], [1, 1]], "max_cones": [[1, 4], [2, 4], [1, 3], [2, 3]]}
    )
    assert bl == blowup_projective_space(2)
    validate(bl)


def test_incomplete_p2():
    with pytest.raises(NotComplete):
        validate(load_fan(FIXTURES / "p2_incomplete.json"))


def test_incomplete_p1xp1():
    with pytest.raises((NotComplete, NotProjective)):
        validate(load_fan(FIXTURES / "p1xp1_incomplete.json"))


def test_disjoint_spheres_fail_cohomology_check():
    # two P^1 fans glued into one "fan": each ridge (ray) lies in 2 cones, but
    # the boundary complex is two circles... in dimension 2 it is two copies of
    # the P^2 boundary on separate rays; they overlap in the plane
    fan = Fan(
        2,
        ((1, 0), (0, 1), (-1, -1), (2, 1), (-1, 2), (-1, -3)),
        ((0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)),
    )
    with pytest.raises(NotComplete):
        validate(fan)


def test_overlapping_cones_detected():
    # six rays wound twice around the origin: every ridge lies in two cones
    # and the boundary is a circle, but the cones cover the plane twice
    rays = ((1, 0), (-1, 1), (0, -1), (1, 1), (-1, 0), (1, -1))
    cones = ((0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 0))
    with pytest.raises(NotComplete):
        validate(Fan(2, rays, cones))


def test_not_simplicial():
    # a cone with 3 rays in the plane
    fan = Fan(2, ((1, 0), (0, 1), (-1, -1), (1, 1)), ((0, 3, 1), (1, 2), (0, 2)))
    with pytest.raises(NotSimplicial):
        validate(fan)


def test_structural_errors():
    with pytest.raises(ValueError):
        Fan(2, ((2, 0), (0, 1), (-1, -1)), ((0, 1), (1, 2), (0, 2)))  # non-primitive
    with pytest.raises(ValueError):
        Fan(2, ((1, 0), (1, 0), (-1, -1)), ((0, 1), (1, 2), (0, 2)))  # duplicate
    with pytest.raises(ValueError):
        Fan(2, ((1, 0), (0, 1), (-1, -1), (1, 1)), ((0, 1), (1, 2), (0, 2)))  # unused ray


def test_json_roundtrip_is_one_based(tmp_path):
    fan = blowup_projective_space(3)
    data = fan.to_json()
    assert min(min(c) for c in data["max_cones"]) == 1
    path = tmp_path / "f.json"
    path.write_text(json.dumps(data))
    assert load_fan(path) == fan
    assert load_fan(path).fingerprint == fan.fingerprint


def test_locate():
    fan = projective_space(2)
    assert locate(fan, (1, 1)) == [(0, 1)]
    assert sorted(locate(fan, (1, 0))) == [(0, 1), (0, 2)]


# -- class lattice ------------------------------------------------------------

def test_class_lattice_p2():
    lat = class_lattice(projective_space(2))
    assert lat.rank == 1 and lat.torsion == ()
    assert [lat.class_of(e) for e in ([1, 0, 0], [0, 1, 0], [0, 0, 1])] == [(1,), (1,), (1,)]


@pytest.mark.parametrize("n", [2, 3, 4])
def test_class_lattice_blowup_he(n):
    fan = blowup_projective_space(n)
    lat = class_lattice(fan, he_basis(n))
    assert lat.rank == 2
    for i in range(n + 2):
        e = [int(i == j) for j in range(n + 2)]
        expected = (1, -1) if i < n else ((1, 0) if i == n else (0, 1))
        assert lat.class_of(e) == expected


def test_class_of_h_and_e():
    fan = blowup_projective_space(2)
    assert class_of(fan, (0, 0, 1, 0), he_basis(2)) == (1, 0)
    assert class_of(fan, (0, 0, 0, 1), he_basis(2)) == (0, 1)


def test_class_lattice_p1xp1():
    lat = class_lattice(product_of_lines())
    cls = [lat.class_of([int(i == j) for j in range(4)]) for i in range(4)]
    assert cls == [(1, 0), (1, 0), (0, 1), (0, 1)]


def test_weighted_projective_plane_lattice():
    lat = class_lattice(weighted_projective_plane(2))
    assert lat.rank == 1
    assert lat.projection == ((1, 2, 1),)


@pytest.mark.parametrize("fan", ALL_FANS, ids=lambda f: f"{f.dim}d-{f.n_rays}rays")
def test_exactness(fan):
    lat = class_lattice(fan)
    for k in range(fan.dim):
        col = [r[k] for r in fan.rays]
        assert lat.class_of(col) == (0,) * lat.rank
    from toricqample.exactcore import rational_rank

    assert rational_rank(lat.projection) == fan.n_rays - fan.dim
    # section is a right inverse
    for c in itertools.product(range(-2, 3), repeat=lat.rank):
        assert lat.class_of(lat.lift(c)) == tuple(Fraction(x) for x in c)


@pytest.mark.parametrize("fan", ALL_FANS, ids=lambda f: f"{f.dim}d-{f.n_rays}rays")
def test_class_invariant_under_pairing(fan):
    lat = class_lattice(fan)
    d = [(-1) ** i * (i + 1) for i in range(fan.n_rays)]
    for m in itertools.product(range(-2, 3), repeat=fan.dim):
        shifted = [a + b for a, b in zip(d, fan.pairing(m))]
        assert lat.class_of(shifted) == lat.class_of(d)


# -- Cartier and ampleness -----------------------------------------------------

def test_smooth_fans_everything_cartier():
    for fan in ALL_FANS[:5]:
        for d in itertools.product(range(-2, 3), repeat=fan.n_rays):
            assert is_cartier(fan, d)


def test_p112_cartier():
    fan = weighted_projective_plane(2)
    assert not is_cartier(fan, (0, 0, 1))
    assert is_cartier(fan, (0, 0, 2))
    assert cartier_data(fan, (0, 0, 2))[(0, 2)] == (0, 1)
    assert cartier_index(fan, (0, 0, 1)) == 2


def test_is_ample_examples():
    assert is_ample(projective_space(2), (1, 0, 0))
    bl = blowup_projective_space(2)
    assert is_ample(bl, (0, 0, 2, -1))
    assert not is_ample(bl, (0, 0, 1, 0))
    with pytest.raises(NotCartier):
        is_ample(weighted_projective_plane(2), (0, 0, 1))


def test_find_ample_examples():
    a = find_ample(projective_space(2))
    assert is_ample(projective_space(2), a)
    bl = blowup_projective_space(2)
    a = find_ample(bl)
    assert is_ample(bl, a)
    x, y = class_of(bl, a, he_basis(2))
    assert y < 0 and x + y > 0  # strictly inside cone{(1,0),(1,-1)}


def _prism_fan(pattern):
    """Cones over a triangulated triangular prism; ``pattern[i]`` picks the
    diagonal of the i-th square side."""
    bottom = [(1, 0, -1), (0, 1, -1), (-1, -1, -1)]
    top = [(1, 0, 1), (0, 1, 1), (-1, -1, 1)]
    cones = [(0, 1, 2), (3, 4, 5)]
    for i in range(3):
        j = (i + 1) % 3
        if pattern[i] == 0:
            cones += [(i, j, 3 + j), (i, 3 + j, 3 + i)]
        else:
            cones += [(i, j, 3 + i), (j, 3 + j, 3 + i)]
    return Fan(3, tuple(bottom + top), tuple(cones))


@pytest.mark.parametrize("pattern", [(0, 0, 0), (1, 1, 1)])
def test_twisted_prism_is_not_projective(pattern):
    # cyclically twisted diagonals admit no strictly convex support function
    with pytest.raises(NotProjective):
        validate(_prism_fan(pattern))


@pytest.mark.parametrize("pattern", [(0, 1, 0), (0, 0, 1), (1, 1, 0)])
def test_untwisted_prism_is_projective(pattern):
    fan = _prism_fan(pattern)
    assert is_ample(fan, validate(fan).ample_witness)


@pytest.mark.parametrize("fan", ALL_FANS[:5], ids=lambda f: f"{f.dim}d-{f.n_rays}rays")
def test_ample_implies_zero_ample(fan):
    lat = class_lattice(fan)
    for d in itertools.product(range(-1, 3), repeat=fan.n_rays):
        if is_ample(fan, d):
            assert is_q_ample(fan, lat.class_of(d), 0, lattice=lat)
