"""Complete simplicial fans, their class lattice, and ampleness of divisors.

Rays are indexed from 0 inside the library; every file format and the CLI
use 1-based indices.
"""
from __future__ import annotations

import hashlib
import itertools
import json
import math
import random
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Optional, Sequence

from .exactcore import (
    hermite_normal_form,
    inverse,
    linprog,
    matmul,
    smith_normal_form,
    solve,
    to_fraction,
)
from .exceptions import NotCartier, NotComplete, NotProjective, NotSimplicial


@dataclass(frozen=True)
class Fan:
    """A fan given by primitive rays and simplicial maximal cones.

    Parameters
    ----------
    dim : int
        Rank of the lattice ``N``.
    rays : sequence of integer vectors
        Primitive ray generators ``v_i``.
    max_cones : sequence of index sets
        Maximal cones as sets of 0-based ray indices, each of size ``dim``.

    Construction only checks that the data is well formed; call
    :func:`validate` for completeness and projectivity.
    """

    dim: int
    rays: tuple
    max_cones: tuple

    def __post_init__(self):
        rays = tuple(tuple(int(x) for x in r) for r in self.rays)
        cones = tuple(sorted(tuple(sorted(int(i) for i in c)) for c in self.max_cones))
        object.__setattr__(self, "rays", rays)
        object.__setattr__(self, "max_cones", cones)
        n = self.dim
        if n < 1:
            raise ValueError("fan dimension must be positive")
        for r in rays:
            if len(r) != n:
                raise ValueError(f"ray {r} does not live in Z^{n}")
            if math.gcd(*r) != 1:
                raise ValueError(f"ray {r} is not primitive")
        if len(set(rays)) != len(rays):
            raise ValueError("duplicate rays")
        if len(set(cones)) != len(cones):
            raise ValueError("duplicate maximal cones")
        used = set()
        for c in cones:
            if any(i < 0 or i >= len(rays) for i in c):
                raise ValueError(f"cone {c} refers to a missing ray")
            if len(set(c)) != len(c):
                raise ValueError(f"cone {c} repeats a ray")
            used.update(c)
        if used != set(range(len(rays))):
            raise ValueError("every ray must lie in some maximal cone")

    @property
    def n_rays(self) -> int:
        return len(self.rays)

    @cached_property
    def cone_sets(self) -> tuple:
        return tuple(frozenset(c) for c in self.max_cones)

    def pairing(self, m) -> tuple:
        """``(<m, v_i>)_i``, the image of ``m`` in ``Z^I``."""
        return tuple(sum(to_fraction(a) * b for a, b in zip(m, r)) for r in self.rays)

    def cone_matrix(self, cone) -> list:
        return [list(self.rays[i]) for i in cone]

    def ridges(self) -> dict:
        """Map each ridge (sorted tuple) to the maximal cones containing it."""
        out: dict = {}
        for c in self.max_cones:
            for r in itertools.combinations(c, self.dim - 1):
                out.setdefault(r, []).append(c)
        return out

    def walls(self):
        """Yield ``(cone, opposite_ray)`` for every ordered pair of adjacent cones.

        ``opposite_ray`` is the ray of the neighbouring cone not in the
        shared ridge.
        """
        for ridge, cones in sorted(self.ridges().items()):
            if len(cones) != 2:
                continue
            a, b = cones
            (ja,) = set(a) - set(ridge)
            (jb,) = set(b) - set(ridge)
            yield a, jb
            yield b, ja

    # -- serialisation ------------------------------------------------------

    def to_json(self) -> dict:
        return {
            "dim": self.dim,
            "rays": [list(r) for r in self.rays],
            "max_cones": [[i + 1 for i in c] for c in self.max_cones],
        }

    @classmethod
    def from_json(cls, data: dict) -> "Fan":
        try:
            return cls(
                dim=int(data["dim"]),
                rays=data["rays"],
                max_cones=[[int(i) - 1 for i in c] for c in data["max_cones"]],
            )
        except KeyError as exc:
            raise ValueError(f"fan JSON is missing field {exc}") from None

    @cached_property
    def fingerprint(self) -> str:
        blob = json.dumps(self.to_json(), sort_keys=True, separators=(",", ":"))
        return hashlib.sha256(blob.encode()).hexdigest()


def load_fan(path) -> Fan:
    with open(path) as fh:
        return Fan.from_json(json.load(fh))


# ---------------------------------------------------------------------------
# standard examples
# ---------------------------------------------------------------------------

def projective_space(n: int) -> Fan:
    rays = [tuple(int(i == j) for j in range(n)) for i in range(n)] + [tuple([-1] * n)]
    cones = list(itertools.combinations(range(n + 1), n))
    return Fan(n, tuple(rays), tuple(cones))


def blowup_projective_space(n: int) -> Fan:
    """Blowup of ``P^n`` at the torus-fixed point of the cone ``{1..n}``.

    Rays ``e_1..e_n, -(e_1+..+e_n), e_1+..+e_n``; the last two are the
    disjoint facets of the polytope.
    """
    rays = [tuple(int(i == j) for j in range(n)) for i in range(n)]
    rays += [tuple([-1] * n), tuple([1] * n)]
    cones = []
    for j in range(n):
        rest = tuple(i for i in range(n) if i != j)
        cones.append(rest + (n,))
        cones.append(rest + (n + 1,))
    return Fan(n, tuple(rays), tuple(cones))


def product_of_lines() -> Fan:
    """``P^1 x P^1``."""
    rays = ((1, 0), (-1, 0), (0, 1), (0, -1))
    cones = ((0, 2), (0, 3), (1, 2), (1, 3))
    return Fan(2, rays, cones)


def weighted_projective_plane(k: int) -> Fan:
    """``P(1, 1, k)`` with rays ``(1, 0), (0, 1), (-1, -k)``."""
    return Fan(2, ((1, 0), (0, 1), (-1, -k)), ((0, 1), (0, 2), (1, 2)))


# ---------------------------------------------------------------------------
# validation
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ValidationReport:
    simplicial: bool
    ridges_ok: bool
    sphere_cohomology: tuple
    points_located: int
    ample_witness: tuple

    def to_json(self) -> dict:
        return {
            "valid": True,
            "simplicial": self.simplicial,
            "ridges_ok": self.ridges_ok,
            "boundary_reduced_cohomology": [list(x) for x in self.sphere_cohomology],
            "points_located": self.points_located,
            "ample_witness": list(self.ample_witness),
        }


def _cone_inverses(fan: Fan) -> dict:
    """Inverse of the matrix whose columns are the rays of each max cone."""
    out = {}
    for c in fan.max_cones:
        cols = [[fan.rays[i][k] for i in c] for k in range(fan.dim)]
        inv = inverse(cols)
        if inv is None:
            raise NotSimplicial(f"rays of cone {[i + 1 for i in c]} are linearly dependent")
        out[c] = inv
    return out


def locate(fan: Fan, point, inverses: Optional[dict] = None) -> list:
    """Maximal cones containing ``point`` (exact)."""
    inverses = inverses or _cone_inverses(fan)
    point = [to_fraction(x) for x in point]
    found = []
    for c, inv in inverses.items():
        coeffs = [sum(a * x for a, x in zip(row, point)) for row in inv]
        if all(v >= 0 for v in coeffs):
            found.append(c)
    return found


def validate(fan: Fan, n_points: int = 100, seed: int = 0) -> ValidationReport:
    """Check that ``fan`` is a complete, simplicial, projective fan.

    Raises :class:`NotSimplicial`, :class:`NotComplete` or
    :class:`NotProjective` naming the failed check.
    """
    from .nerve import boundary_complex, reduced_cohomology

    n = fan.dim
    for c in fan.max_cones:
        if len(c) != n:
            raise NotSimplicial(f"cone {[i + 1 for i in c]} does not have {n} rays")
    inverses = _cone_inverses(fan)

    for ridge, cones in fan.ridges().items():
        if len(cones) != 2:
            raise NotComplete(
                f"ridge {[i + 1 for i in ridge]} lies in {len(cones)} maximal cones (expected 2)"
            )

    coh = tuple(reduced_cohomology(boundary_complex(fan)))
    if coh != ((n - 1, 1),):
        raise NotComplete(f"boundary complex is not a homology sphere: reduced cohomology {list(coh)}")

    rng = random.Random(seed)
    for _ in range(n_points):
        den = rng.randint(1, 997)
        p = [Fraction(rng.randint(-10**6, 10**6), den) for _ in range(n)]
        hits = locate(fan, p, inverses)
        if not hits:
            raise NotComplete(f"point {[str(x) for x in p]} lies in no maximal cone")
        if len(hits) > 1:
            # a generic point on two cones means they overlap, unless it sits on a wall
            interior = [
                c for c in hits
                if all(sum(a * x for a, x in zip(row, p)) > 0 for row in inverses[c])
            ]
            if len(interior) > 1:
                raise NotComplete(f"maximal cones overlap near {[str(x) for x in p]}")

    ample = find_ample(fan)
    return ValidationReport(True, True, coh, n_points, ample)


# ---------------------------------------------------------------------------
# class lattice
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ClassLattice:
    """The map ``R^I -> N^1(X)`` together with the torsion of ``Cl(X)``.

    Attributes
    ----------
    rank : int
        Picard number ``|I| - n``.
    projection : tuple of tuples
        ``rank x |I|`` matrix of the class map in the chosen basis.
    section : tuple of tuples
        ``|I| x rank`` right inverse of ``projection`` used to lift class
        points back to divisors.
    torsion : tuple of int
        Invariant factors > 1 of ``Cl(X)``.
    """

    rank: int
    projection: tuple
    section: tuple
    torsion: tuple

    def class_of(self, d) -> tuple:
        d = [to_fraction(x) for x in d]
        return tuple(sum(a * x for a, x in zip(row, d)) for row in self.projection)

    def lift(self, c) -> tuple:
        c = [to_fraction(x) for x in c]
        if len(c) != self.rank:
            raise ValueError(f"class point must have {self.rank} coordinates")
        return tuple(sum(a * x for a, x in zip(row, c)) for row in self.section)

    def to_json(self) -> dict:
        return {
            "rank": self.rank,
            "torsion": list(self.torsion),
            "projection": [[str(x) for x in row] for row in self.projection],
        }


def class_lattice(fan: Fan, basis: Optional[Sequence[Sequence]] = None) -> ClassLattice:
    """Cokernel of ``M -> Z^I`` computed through the Smith normal form.

    The free part of the cokernel is given coordinates by the Hermite normal
    form of the Smith projection, so the result does not depend on pivot
    choices.  ``basis``, if given, is a list of ``rank`` divisors whose
    classes become the coordinate basis of ``N^1(X)``.
    """
    n, nr = fan.dim, fan.n_rays
    pairing = [list(r) for r in fan.rays]  # |I| x n
    u, s, _ = smith_normal_form(pairing)
    diag = [s[i][i] for i in range(n)]
    if any(x == 0 for x in diag):
        raise NotSimplicial("rays do not span N_R (torus factor)")
    torsion = tuple(x for x in diag if x > 1)
    rank = nr - n
    free = [row[:] for row in u[n:]]
    h, w = hermite_normal_form(free)
    # integral section: columns n.. of U^{-1}, then undo W
    u_inv = inverse(u)
    sec0 = [[u_inv[i][j] for j in range(n, nr)] for i in range(nr)]
    w_inv = inverse(w) if rank else []
    section = matmul(sec0, w_inv) if rank else [[] for _ in range(nr)]
    projection = [[Fraction(x) for x in row] for row in h]
    if basis is not None:
        if len(basis) != rank:
            raise ValueError(f"basis must consist of {rank} divisors")
        cols = [[sum(Fraction(a) * to_fraction(b) for a, b in zip(row, div)) for div in basis] for row in h]
        change = inverse(cols)
        if change is None:
            raise ValueError("basis divisors have linearly dependent classes")
        projection = matmul(change, projection)
        inv_change = [[to_fraction(x) for x in row] for row in cols]
        section = matmul(section, inv_change)
    return ClassLattice(
        rank=rank,
        projection=tuple(tuple(to_fraction(x) for x in row) for row in projection),
        section=tuple(tuple(to_fraction(x) for x in row) for row in section),
        torsion=torsion,
    )


def class_of(fan: Fan, d, basis=None) -> tuple:
    return class_lattice(fan, basis).class_of(d)


# ---------------------------------------------------------------------------
# Cartier data and ampleness
# ---------------------------------------------------------------------------

def cartier_data(fan: Fan, d) -> dict:
    """Rational ``m_sigma`` with ``<m_sigma, v_i> = -d_i`` for ``i`` in sigma."""
    d = [to_fraction(x) for x in d]
    if len(d) != fan.n_rays:
        raise ValueError(f"divisor must have {fan.n_rays} coefficients")
    out = {}
    for c in fan.max_cones:
        m = solve(fan.cone_matrix(c), [-d[i] for i in c])
        if m is None:
            raise NotSimplicial(f"cone {[i + 1 for i in c]} is not full-dimensional")
        out[c] = tuple(m)
    return out


def is_cartier(fan: Fan, d) -> bool:
    """True iff every local equation ``m_sigma`` is integral."""
    d = [to_fraction(x) for x in d]
    if any(x.denominator != 1 for x in d):
        return False
    return all(all(x.denominator == 1 for x in m) for m in cartier_data(fan, d).values())


def is_ample(fan: Fan, d) -> bool:
    """Strict convexity of the support function, checked wall by wall."""
    if not is_cartier(fan, d):
        raise NotCartier(f"divisor {list(d)} is not Cartier")
    d = [to_fraction(x) for x in d]
    ms = cartier_data(fan, d)
    for cone, j in fan.walls():
        m = ms[cone]
        if sum(a * b for a, b in zip(m, fan.rays[j])) + d[j] <= 0:
            return False
    return True


def find_ample(fan: Fan) -> tuple:
    """An integral ample Cartier divisor, found by an exact LP.

    Each wall inequality ``<m_sigma, v_j> + a_j >= 1`` is written in terms
    of ``a`` alone by eliminating ``m_sigma``.  Among solutions with
    ``a >= 0`` the LP minimises ``sum(a)``; the result is scaled to clear
    all denominators of ``a`` and of the local equations.
    """
    nr = fan.n_rays
    inv_rows = {}
    for c in fan.max_cones:
        inv = inverse(fan.cone_matrix(c))
        if inv is None:
            raise NotSimplicial(f"cone {[i + 1 for i in c]} is not full-dimensional")
        inv_rows[c] = inv
    a_ub, b_ub = [], []
    for cone, j in fan.walls():
        # m_sigma = -V^{-1} a_sigma  =>  <m, v_j> = -sum_k (v_j . V^{-1})_k a_{cone[k]}
        inv = inv_rows[cone]
        w = [sum(Fraction(fan.rays[j][r]) * inv[r][k] for r in range(fan.dim)) for k in range(fan.dim)]
        row = [Fraction(0)] * nr
        row[j] += 1
        for k, i in enumerate(cone):
            row[i] -= w[k]
        a_ub.append([-x for x in row])
        b_ub.append(-1)
    for i in range(nr):
        row = [0] * nr
        row[i] = -1
        a_ub.append(row)
        b_ub.append(0)
    res = linprog([1] * nr, A_ub=a_ub, b_ub=b_ub, maximize=False)
    if res.status != "optimal":
        raise NotProjective("no strictly convex support function exists")
    a = list(res.x)
    ms = cartier_data(fan, a)
    dens = [x.denominator for x in a] + [x.denominator for m in ms.values() for x in m]
    scale = math.lcm(*dens)
    out = tuple(int(x * scale) for x in a)
    assert is_ample(fan, out)
    return out


def cartier_index(fan: Fan, d) -> int:
    """Least ``k >= 1`` with ``k * d`` Cartier."""
    d = [to_fraction(x) for x in d]
    dens = [x.denominator for x in d]
    for m in cartier_data(fan, d).values():
        dens += [x.denominator for x in m]
    return math.lcm(*dens)
