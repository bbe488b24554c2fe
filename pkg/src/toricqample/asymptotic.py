"""Asymptotic cohomological functions evaluated through chamber volumes.

``h^i(X, O(k d))`` counts lattice points in the chambers of the ``alpha``
with ``H~^{i-1}(Z_alpha) != 0``, weighted by that dimension.  The chambers
of ``k d`` are the chambers of ``d`` dilated by ``k``, so

    hhat^i(d) = lim h^i(k d) * n! / k^n = n! * sum_alpha dim * vol(chamber_alpha(d)).

Volumes are exact, so no limits are taken.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .cohomology import chamber_system, recession_system
from .cones import canonical_hyperplane, is_bounded, volume
from .exactcore import lp_feasible, to_fraction
from .exceptions import InvalidDegree, UnboundedChamber
from .fan import ClassLattice, Fan, class_lattice
from .nerve import ObstructionTable, obstruction_table
from .qample import _check_q, in_closed_image, is_q_ample, obstruction_region


@dataclass(frozen=True)
class AsymptoticValue:
    degree: int
    value: Fraction

    def to_json(self) -> dict:
        return {"i": self.degree, "value": str(self.value)}


def hhat(fan: Fan, d, i: int, table: Optional[ObstructionTable] = None) -> AsymptoticValue:
    """``hhat^i`` at a rational divisor ``d``."""
    n = fan.dim
    if isinstance(i, bool) or int(i) != i or not 0 <= i <= n:
        raise InvalidDegree(f"degree must be an integer in [0, {n}], got {i!r}")
    d = tuple(to_fraction(x) for x in d)
    if len(d) != fan.n_rays:
        raise ValueError(f"divisor must have {fan.n_rays} coefficients")
    table = table if table is not None else obstruction_table(fan)
    total = Fraction(0)
    for alpha, coh in table.items():
        mult = dict(coh).get(i - 1, 0)
        if not mult:
            continue
        strict = chamber_system(fan, d, alpha)
        ok, _ = lp_feasible(strict)
        if not ok:
            continue
        if not is_bounded(recession_system(fan, alpha)):
            raise UnboundedChamber(f"chamber for alpha={[k + 1 for k in alpha]} is unbounded")
        total += mult * volume(strict)
    return AsymptoticValue(int(i), total * math.factorial(n))


def hhat_homogeneity_check(fan: Fan, d, i: int, scale, table=None) -> bool:
    """``hhat^i(s d) == s^n hhat^i(d)``, exactly."""
    s = to_fraction(scale)
    if s <= 0:
        raise ValueError("scale must be positive")
    base = hhat(fan, d, i, table).value
    scaled = hhat(fan, [s * to_fraction(x) for x in d], i, table).value
    return scaled == s ** fan.dim * base


def default_perturbations(rank: int, size=Fraction(1, 64)) -> list:
    """``size`` times every nonzero vector in ``{-1, 0, 1}^rank``."""
    out = []
    for signs in itertools.product((-1, 0, 1), repeat=rank):
        if any(signs):
            out.append(tuple(size * s for s in signs))
    return out


@dataclass(frozen=True)
class VanishingReport:
    """Outcome of comparing q-ampleness with vanishing of ``hhat^i``, ``i > q``.

    ``sampled_zero`` evaluates ``hhat`` at the point and its perturbations;
    ``structural_zero`` decides "identically zero near the point" by closed
    membership LPs.  ``conclusive`` is False when some sample lies on, or
    across, a wall of the arrangement bounding the obstruction cones; there
    the sampled answer need not describe a neighbourhood.
    """

    q: int
    q_ample: bool
    sampled_zero: bool
    structural_zero: bool
    conclusive: bool

    @property
    def agree(self) -> Optional[bool]:
        if not self.conclusive:
            return None
        return self.q_ample == self.sampled_zero == self.structural_zero

    def to_json(self) -> dict:
        return {
            "q": self.q,
            "q_ample": self.q_ample,
            "hhat_vanishes": self.sampled_zero,
            "structural_vanishing": self.structural_zero,
            "conclusive": self.conclusive,
            "agree": self.agree,
        }


def vanishing_equivalence_check(
    fan: Fan,
    c,
    q: int,
    perturbations: Optional[Sequence] = None,
    table: Optional[ObstructionTable] = None,
    lattice: Optional[ClassLattice] = None,
) -> VanishingReport:
    q = _check_q(fan, q)
    table = table if table is not None else obstruction_table(fan)
    lattice = lattice if lattice is not None else class_lattice(fan)
    c = tuple(to_fraction(x) for x in c)
    if perturbations is None:
        perturbations = default_perturbations(lattice.rank)
    points = [c] + [tuple(a + to_fraction(b) for a, b in zip(c, p)) for p in perturbations]

    degrees = range(q + 1, fan.dim + 1)
    sampled_zero = all(
        hhat(fan, lattice.lift(p), i, table).value == 0 for p in points for i in degrees
    )
    structural_zero = not any(
        in_closed_image(fan, lattice, c, alpha)
        for i in degrees
        for alpha in table.alphas(i - 1)
    )
    q_ample = is_q_ample(fan, c, q, table, lattice)

    region = obstruction_region(fan, q, table, lattice)
    hyps = sorted({canonical_hyperplane(nrm) for img in region.closed_images for nrm in img.normals})

    def signs(p):
        return tuple((v > 0) - (v < 0) for v in (sum(a * x for a, x in zip(h, p)) for h in hyps))

    ref = signs(c)
    conclusive = all(ref) and all(signs(p) == ref for p in points[1:])
    return VanishingReport(q, q_ample, sampled_zero, structural_zero, conclusive)
