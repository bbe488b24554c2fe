import itertools
import random

import pytest

from toricqample.cohomology import (
    cech_oracle,
    chamber_points,
    cohomology,
    support_pattern,
    vertex_box,
    weight_cohomology,
)
from toricqample.exceptions import NotCartier
from toricqample.fan import (
    blowup_projective_space,
    is_cartier,
    product_of_lines,
    projective_space,
    weighted_projective_plane,
)


def lattice_points_of_polytope(fan, d):
    """Count m with <m, v_i> + d_i >= 0 for all i, by brute force."""
    box = vertex_box(fan, d)
    return sum(
        1
        for m in itertools.product(*(range(lo, hi + 1) for lo, hi in box))
        if all(p + di >= 0 for p, di in zip(fan.pairing(m), d))
    )


def test_support_pattern_examples():
    bl = blowup_projective_space(2)
    assert support_pattern(bl, (0, 0, 0, -1), (0, 0)) == {3}
    assert support_pattern(bl, (0, 0, 0, 0), (0, 0)) == set()
    assert support_pattern(projective_space(2), (-1, -1, -1), (0, 0)) == {0, 1, 2}


def test_weight_cohomology_examples():
    p2 = projective_space(2)
    assert weight_cohomology(p2, (0, 0, 0), (0, 0)) == [(0, 1)]
    assert weight_cohomology(p2, (-1, -1, -1), (0, 0)) == [(2, 1)]
    assert weight_cohomology(blowup_projective_space(2), (0, 0, 0, -1), (0, 0)) == []
    with pytest.raises(NotCartier):
        weight_cohomology(weighted_projective_plane(2), (0, 0, 1), (0, 0))


def test_cohomology_examples():
    p2 = projective_space(2)
    assert cohomology(p2, (2, 0, 0)).dims == (6, 0, 0)
    assert cohomology(p2, (-3, 0, 0)).dims == (0, 0, 1)
    assert cohomology(blowup_projective_space(2), (0, 0, 1, -1)).dims == (2, 0, 0)
    with pytest.raises(NotCartier):
        cohomology(weighted_projective_plane(2), (0, 0, 1))


def test_cech_examples():
    p2 = projective_space(2)
    assert cech_oracle(p2, (1, 0, 0)).dims == (3, 0, 0)
    assert cech_oracle(p2, (-3, 0, 0)).dims == (0, 0, 1)
    assert cech_oracle(blowup_projective_space(2), (0, 0, 1, -1)).dims == (2, 0, 0)


@pytest.mark.parametrize("k", range(-6, 5))
def test_riemann_roch_on_p2(k):
    dims = cohomology(projective_space(2), (k, 0, 0)).dims
    assert dims[0] - dims[1] + dims[2] == (k + 1) * (k + 2) // 2
    assert dims[1] == 0


def test_h1_of_blowup():
    # divisors with nonzero h^1; O(2E) has h^0 = h^1 = 1 (chi = 0)
    bl = blowup_projective_space(2)
    for d in [(0, 0, 1, -2), (0, 0, 0, 2), (0, 0, 2, -3)]:
        assert cohomology(bl, d).dims == cech_oracle(bl, d).dims
    assert cohomology(bl, (0, 0, 0, 2)).dims == (1, 1, 0)


def test_keep_weights_consistent():
    bl = blowup_projective_space(2)
    d = (0, 0, 2, -3)
    table = cohomology(bl, d, keep_weights=True)
    oracle = cech_oracle(bl, d, keep_weights=True)
    for p, ws in table.weights.items():
        assert sum(k for _, k in ws) == table.dims[p]
        assert all(k >= 1 for _, k in ws)
    assert table.weights == oracle.weights
    assert "weights" in table.to_json() and "weights" not in cohomology(bl, d).to_json()


def sweep(fan, lo=-2, hi=2, cartier_only=False):
    for d in itertools.product(range(lo, hi + 1), repeat=fan.n_rays):
        if cartier_only and not is_cartier(fan, d):
            continue
        yield d


@pytest.mark.parametrize("fan", [projective_space(2), blowup_projective_space(2), product_of_lines()],
                         ids=["P2", "BlP2", "P1xP1"])
def test_serre_duality(fan):
    for d in sweep(fan):
        dual = tuple(-1 - x for x in d)
        a, b = cohomology(fan, d).dims, cohomology(fan, dual).dims
        assert a == tuple(reversed(b))


def test_serre_duality_threefold():
    fan = blowup_projective_space(3)
    rng = random.Random(0)
    for _ in range(30):
        d = tuple(rng.randint(-3, 3) for _ in range(fan.n_rays))
        dual = tuple(-1 - x for x in d)
        assert cohomology(fan, d).dims == tuple(reversed(cohomology(fan, dual).dims))


@pytest.mark.parametrize("fan", [projective_space(2), blowup_projective_space(2), product_of_lines(),
                                 weighted_projective_plane(2)], ids=["P2", "BlP2", "P1xP1", "P112"])
def test_h0_counts_polytope_points(fan):
    for d in sweep(fan, cartier_only=True):
        assert cohomology(fan, d).dims[0] == lattice_points_of_polytope(fan, d)


def test_oracle_on_weighted_projective_plane():
    fan = weighted_projective_plane(2)
    count = 0
    for d in sweep(fan, -4, 4, cartier_only=True):
        assert cohomology(fan, d).dims == cech_oracle(fan, d).dims
        count += 1
    assert count > 0


def test_oracle_on_threefold_sample():
    fan = blowup_projective_space(3)
    rng = random.Random(1)
    for _ in range(15):
        d = tuple(rng.randint(-2, 2) for _ in range(fan.n_rays))
        assert cohomology(fan, d).dims == cech_oracle(fan, d).dims


def test_chamber_points_are_exact_pattern():
    fan = blowup_projective_space(2)
    d = (0, 0, 2, -3)
    for alpha in [(3,), (0, 1), (2, 3), (0, 1, 2, 3)]:
        for m in chamber_points(fan, d, alpha):
            assert support_pattern(fan, d, m) == set(alpha)
