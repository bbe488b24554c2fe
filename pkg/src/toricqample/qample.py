"""The q-ample cone of a simplicial projective toric variety.

For ``q`` fix the obstruction region ``K = U_{i >= q} [O_alpha]`` over all
``alpha`` with ``H~^i(Z_alpha) != 0``.  A class is q-ample iff it avoids
the closure of ``K``, which is the union of the images of the *closed*
orthants: a linear image of a closed polyhedral cone is closed, so
``closure([O_alpha]) = [closure(O_alpha)]``.  Membership therefore reduces
to closed LP feasibility on a lift of the class to ``R^I``: the class ``c``
lies in ``[O]`` iff ``lift(c) + P u`` lies in ``O`` for some ``u`` in
``M_R``, because the kernel of the class map is the image of the pairing.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .cones import (
    ArrangementCell,
    ConeUnion,
    POCone,
    closure,
    complement_cells,
    irredundant,
    member,
    orthant,
    project,
)
from .exactcore import Constraint, StrictSystem, lp_feasible, to_fraction
from .exceptions import InvalidQ
from .fan import ClassLattice, Fan, class_lattice
from .nerve import ObstructionTable, obstruction_table


def _check_q(fan: Fan, q) -> int:
    if isinstance(q, bool) or int(q) != q or not 0 <= q <= fan.dim:
        raise InvalidQ(f"q must be an integer in [0, {fan.dim}], got {q!r}")
    return int(q)


@dataclass(frozen=True)
class ObstructionRegion:
    """``alphas`` lists ``(degree, alpha)``; ``closed_images`` their closed images."""

    q: int
    alphas: tuple
    closed_images: tuple

    def union(self, dim: int) -> ConeUnion:
        return ConeUnion(dim, self.closed_images)


@dataclass(frozen=True)
class QAmpleCone:
    """``Amp_q`` as cells of an arrangement, plus the closed pieces.

    ``cells`` partition ``Amp_q`` exactly (each is a relatively open
    polyhedral cone); ``closed_pieces`` are the closures of the
    full-dimensional cells, whose union has interior ``Amp_q``.
    """

    q: int
    cells: ConeUnion
    closed_pieces: tuple
    arrangement: tuple = ()

    def __contains__(self, point) -> bool:
        return member(point, self.cells)

    def to_json(self) -> dict:
        return {
            "q": self.q,
            "cells": self.cells.to_json(),
            "closed_pieces": [c.to_json() for c in self.closed_pieces],
        }


def _lattice(fan, lattice):
    return lattice if lattice is not None else class_lattice(fan)


def _table(fan, table):
    return table if table is not None else obstruction_table(fan)


def obstruction_region(
    fan: Fan,
    q: int,
    table: Optional[ObstructionTable] = None,
    lattice: Optional[ClassLattice] = None,
) -> ObstructionRegion:
    q = _check_q(fan, q)
    table = _table(fan, table)
    lattice = _lattice(fan, lattice)
    alphas = []
    for deg in table.degrees():
        if deg >= q:
            alphas.extend((deg, a) for a in table.alphas(deg))
    alphas.sort()
    images = []
    for _, alpha in alphas:
        img = project(closure(orthant(fan.n_rays, alpha)), lattice.projection)
        if img not in images:
            images.append(img)
    return ObstructionRegion(q, tuple(alphas), tuple(images))


def lift_system(fan: Fan, d, alpha) -> StrictSystem:
    """``{u : d + P u in closure(O_alpha)}`` for a divisor ``d``."""
    alpha = set(alpha)
    cons = []
    for j, v in enumerate(fan.rays):
        dj = to_fraction(d[j])
        if j in alpha:
            cons.append(Constraint(tuple(-x for x in v), -dj, False))
        else:
            cons.append(Constraint(tuple(v), dj, False))
    return StrictSystem(fan.dim, tuple(cons))


def in_closed_image(fan: Fan, lattice: ClassLattice, c, alpha) -> bool:
    """Is the class ``c`` in ``[closure(O_alpha)]``?  Decided on a lift."""
    ok, _ = lp_feasible(lift_system(fan, lattice.lift(c), alpha))
    return ok


def is_q_ample(
    fan: Fan,
    c,
    q: int,
    table: Optional[ObstructionTable] = None,
    lattice: Optional[ClassLattice] = None,
) -> bool:
    """Exact test of ``c in Amp_q`` for a rational class point ``c``."""
    q = _check_q(fan, q)
    table = _table(fan, table)
    lattice = _lattice(fan, lattice)
    c = tuple(to_fraction(x) for x in c)
    for deg in table.degrees():
        if deg < q:
            continue
        for alpha in table.alphas(deg):
            if in_closed_image(fan, lattice, c, alpha):
                return False
    return True


def ampleness_level(
    fan: Fan,
    c,
    table: Optional[ObstructionTable] = None,
    lattice: Optional[ClassLattice] = None,
) -> int:
    """Least ``q`` such that ``c`` is q-ample (``n`` when no smaller q works)."""
    table = _table(fan, table)
    lattice = _lattice(fan, lattice)
    for q in range(fan.dim):
        if is_q_ample(fan, c, q, table, lattice):
            return q
    return fan.dim


def q_ample_cone(
    fan: Fan,
    q: int,
    table: Optional[ObstructionTable] = None,
    lattice: Optional[ClassLattice] = None,
    check: bool = True,
) -> QAmpleCone:
    """``Amp_q`` as the complement of the closed obstruction region.

    With ``check`` every cell witness is re-tested with :func:`is_q_ample`.
    """
    q = _check_q(fan, q)
    table = _table(fan, table)
    lattice = _lattice(fan, lattice)
    region = obstruction_region(fan, q, table, lattice)
    cells: list[ArrangementCell] = complement_cells(region.union(lattice.rank))
    if check:
        for cell in cells:
            if not is_q_ample(fan, cell.witness, q, table, lattice):
                raise AssertionError(f"cell witness {cell.witness} is not {q}-ample")
    cones = ConeUnion(lattice.rank, tuple(cell.to_cone() for cell in cells))
    pieces = tuple(irredundant(closure(cell.to_cone())) for cell in cells if cell.full_dimensional)
    return QAmpleCone(q, cones, pieces, tuple(cells))


def effective_cone(fan: Fan, lattice: Optional[ClassLattice] = None) -> POCone:
    """Closed cone spanned by the classes ``[E_i]``."""
    lattice = _lattice(fan, lattice)
    return project(orthant(fan.n_rays, ()), lattice.projection)
