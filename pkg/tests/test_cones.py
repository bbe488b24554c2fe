import itertools
import random
from fractions import Fraction

import pytest

from toricqample.cones import (
    ConeUnion,
    POCone,
    arrangement_cells,
    canonical_hyperplane,
    closure,
    complement,
    complement_cells,
    interior,
    irredundant,
    member,
    orthant,
    project,
    vertices,
    volume,
)
from toricqample.exactcore import Constraint
from toricqample.exceptions import Unbounded
from toricqample.fan import blowup_projective_space, class_lattice, product_of_lines
from toricqample.qample import in_closed_image

from conftest import he_basis


def cone(*rows, strict=False):
    return POCone(len(rows[0]), tuple((r, strict) for r in rows))


def same_set(a, b, dim, extra=()):
    """Mutual membership on the witnesses of the joint arrangement."""
    a = a if isinstance(a, ConeUnion) else ConeUnion(dim, (a,))
    b = b if isinstance(b, ConeUnion) else ConeUnion(dim, (b,))
    hyps = sorted({canonical_hyperplane(n) for u in (a, b) for c in u for n in c.normals} | set(extra))
    return all(member(cell.witness, a) == member(cell.witness, b) for cell in arrangement_cells(hyps, dim))


def test_orthant():
    o = orthant(4, ())
    assert all(not s for _, s in o.constraints)
    o = orthant(4, (3,))
    assert ((0, 0, 0, -1), True) in o.constraints
    assert member((1, 0, 0, -1), o) and not member((1, 0, 0, 0), o)
    assert all(s for _, s in orthant(3, (0, 1, 2)).constraints)


def test_canonicalisation():
    c = POCone(2, (((2, 0), False), ((1, 0), True), ((0, 3), False)))
    assert c.constraints == (((0, 1), False), ((1, 0), True))
    assert POCone(2, (((0, 0), True),)).is_empty()
    assert not POCone(2, (((0, 0), False),)).is_empty()


@pytest.mark.parametrize(
    "alpha, expected",
    [((0, 1), [(0, 1), (1, 1)]), ((2, 3), [(0, -1), (-1, -1)]), ((0, 1, 2, 3), [(-1, 0), (-1, -1)])],
)
def test_figure1_projections(alpha, expected):
    fan = blowup_projective_space(2)
    lat = class_lattice(fan, he_basis(2))
    img = project(closure(orthant(4, alpha)), lat.projection)
    assert sorted(img.normals) == sorted(expected)
    assert not any(s for _, s in img.constraints)


def test_projection_keeps_strictness():
    # a.x > 0, b.x >= 0 => (a+b).x > 0 : project {x > 0, y >= 0, z = ...}
    c = POCone(2, (((1, 0), True), ((0, 1), False)))
    img = project(c, [[1, 1]])
    assert img.constraints == (((1,), True),)
    assert not member((0,), img) and member((1,), img)


def test_projection_of_open_orthant():
    img = project(orthant(4, (0, 1, 2, 3)), class_lattice(blowup_projective_space(2), he_basis(2)).projection)
    assert all(s for _, s in img.constraints)


def test_closure_interior():
    assert closure(orthant(3, (0, 1, 2))) == orthant(3, ()).negate()
    c = cone((0, 1), (1, 1))
    assert interior(c) == cone((0, 1), (1, 1), strict=True)
    assert interior(cone((1, 0), (-1, 0))).is_empty()
    assert not c.is_empty() and c.is_full_dimensional()


def test_member_examples():
    k = cone((0, -1), (-1, -1))
    assert not member((2, -1), k)
    assert member((1, -2), k)
    assert member((0, 0), k)
    assert member((0, 0), ConeUnion(2, (k,)))


def test_complement_examples():
    comp = complement(ConeUnion(1, (cone((1,)),)))
    assert len(comp) == 1 and comp.cones[0].constraints == (((-1,), True),)
    k = cone((0, -1), (-1, -1))
    comp = complement(ConeUnion(2, (k,)))
    target = ConeUnion(2, (cone((0, 1), strict=True), cone((1, 1), strict=True)))
    assert same_set(comp, target, 2)
    assert len(complement(ConeUnion(2, (POCone.whole(2),)))) == 0


@pytest.mark.parametrize("seed", range(5))
def test_complement_is_partition(seed):
    rng = random.Random(seed)
    cones = []
    for _ in range(2):
        rows = [tuple(rng.randint(-2, 2) for _ in range(3)) for _ in range(rng.randint(1, 3))]
        rows = [r for r in rows if any(r)] or [(1, 0, 0)]
        cones.append(POCone(3, tuple((r, rng.random() < 0.5) for r in rows)))
    u = ConeUnion(3, tuple(cones))
    cells = complement_cells(u)
    comp = ConeUnion(3, tuple(c.to_cone() for c in cells))
    all_cells = arrangement_cells(sorted({canonical_hyperplane(n) for c in u for n in c.normals}), 3)
    for cell in all_cells:
        assert member(cell.witness, u) != member(cell.witness, comp)
    signs = [c.signs for c in all_cells]
    assert len(signs) == len(set(signs))


def test_closure_of_interior():
    for rows in [((1, 0), (0, 1)), ((1, 2), (-1, 1), (0, 1)), ((1, 1, 0), (0, 1, 1), (1, 0, 1))]:
        c = cone(*rows)
        assert same_set(closure(interior(c)), closure(c), len(rows[0]))


def test_irredundant():
    c = cone((1, 0), (0, 1), (1, 1))
    assert sorted(irredundant(c).normals) == [(0, 1), (1, 0)]


def test_project_agrees_with_lift_lp():
    for fan, basis in [(blowup_projective_space(2), he_basis(2)), (product_of_lines(), None),
                       (blowup_projective_space(3), he_basis(3))]:
        lat = class_lattice(fan, basis)
        rng = random.Random(0)
        alphas = [a for k in range(fan.n_rays + 1) for a in itertools.combinations(range(fan.n_rays), k)]
        rng.shuffle(alphas)
        images = {a: project(closure(orthant(fan.n_rays, a)), lat.projection) for a in alphas[:6]}
        for _ in range(200):
            c = tuple(Fraction(rng.randint(-20, 20), rng.randint(1, 6)) for _ in range(lat.rank))
            for a, img in images.items():
                assert member(c, img) == in_closed_image(fan, lat, c, a)


# -- bounded polyhedra -------------------------------------------------------

def box(lo, hi):
    n = len(lo)
    cons = []
    for k in range(n):
        e = tuple(int(i == k) for i in range(n))
        cons.append(Constraint(e, -lo[k]))
        cons.append(Constraint(tuple(-x for x in e), hi[k]))
    return cons


def test_unit_square():
    sq = box((0, 0), (1, 1))
    assert len(vertices(sq)) == 4
    assert volume(sq) == 1


def test_simplex():
    simplex = [Constraint((1, 0), 0), Constraint((0, 1), 0), Constraint((-1, -1), 1)]
    assert volume(simplex) == Fraction(1, 2)


def test_chamber_example():
    ch = [Constraint((-1, 0), 1, True), Constraint((0, -1), 0, True), Constraint((1, 1), 0)]
    assert vertices(ch) == [(0, 0), (1, -1), (1, 0)]
    assert volume(ch) == Fraction(1, 2)


def test_unbounded():
    with pytest.raises(Unbounded):
        vertices([Constraint((1, 0), 0), Constraint((0, 1), 0)])


def test_volume_is_additive():
    cube = box((0, 0, 0), (2, 3, 5))
    assert volume(cube) == 30
    # split by the hyperplane x + y - z = 0
    h = (1, 1, -1)
    pieces = [cube + [Constraint(h, 0)], cube + [Constraint(tuple(-x for x in h), 0)]]
    assert sum(volume(p) for p in pieces) == 30


def test_volume_of_cross_polytope():
    # |x| + |y| + |z| <= 1 has volume 4/3
    cons = [Constraint(tuple(-s for s in signs), 1) for signs in itertools.product((-1, 1), repeat=3)]
    assert volume(cons) == Fraction(4, 3)
    assert len(vertices(cons)) == 6


def test_json_roundtrip():
    c = cone((1, -1), (0, 1), strict=True)
    assert POCone.from_json(c.to_json()) == c
