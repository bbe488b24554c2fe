"""Line bundle cohomology on toric varieties, weight space by weight space.

For a Cartier divisor ``d`` and a weight ``m`` in ``M`` let
``alpha(m) = {i : <m, v_i> + d_i < 0}``.  The weight-``m`` piece of
``H^p(X, O(d))`` has the dimension of ``H~^{p-1}(Z_alpha)``, so the total
cohomology is a sum over the nonzero rows of the obstruction table, each
row weighted by the number of lattice points in its chamber.

:func:`cech_oracle` recomputes the same numbers from the Cech complex of
the affine cover by maximal cones.  It shares no code path with
:func:`cohomology` beyond exact rank computation and is used to cross-check
it.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Optional

from .cones import is_bounded
from .exactcore import Constraint, StrictSystem, lp_feasible, lp_optimize, rational_rank, solve, to_fraction
from .exceptions import NotCartier, UnboundedContribution
from .fan import Fan, is_cartier
from .nerve import ObstructionTable, boundary_complex, induced, obstruction_table, reduced_cohomology


@dataclass(frozen=True)
class CohomologyTable:
    """``dims[p] = h^p(X, O(d))``; ``weights[p]`` lists ``(m, multiplicity)``."""

    divisor: tuple
    dims: tuple
    weights: Optional[dict] = None

    def to_json(self) -> dict:
        out = {"dims": list(self.dims)}
        if self.weights is not None:
            out["weights"] = {
                str(p): [{"m": list(m), "multiplicity": k} for m, k in ws]
                for p, ws in sorted(self.weights.items())
            }
        return out


def _check_divisor(fan: Fan, d) -> tuple:
    d = tuple(to_fraction(x) for x in d)
    if len(d) != fan.n_rays:
        raise ValueError(f"divisor must have {fan.n_rays} coefficients, got {len(d)}")
    return d


def _require_cartier(fan: Fan, d) -> tuple:
    d = _check_divisor(fan, d)
    if not is_cartier(fan, d):
        raise NotCartier(f"divisor {[str(x) for x in d]} is not Cartier")
    return tuple(int(x) for x in d)


def support_pattern(fan: Fan, d, m) -> frozenset:
    """``{i : <m, v_i> + d_i < 0}`` as 0-based ray indices."""
    d = _check_divisor(fan, d)
    pairing = fan.pairing(m)
    return frozenset(i for i, (p, di) in enumerate(zip(pairing, d)) if p + di < 0)


def weight_cohomology(fan: Fan, d, m) -> list:
    """Nonzero ``(p, dim H^p(X, O(d))_m)`` for a single weight ``m``."""
    d = _require_cartier(fan, d)
    alpha = support_pattern(fan, d, m)
    coh = reduced_cohomology(induced(boundary_complex(fan), alpha))
    return [(deg + 1, dim) for deg, dim in coh]


def chamber_system(fan: Fan, d, alpha, integral: bool = False) -> StrictSystem:
    """Weights ``u`` with support pattern exactly ``alpha``.

    With ``integral=True`` the strict rows ``<u, v_i> + d_i < 0`` are
    replaced by ``<u, v_i> + d_i <= -1``, which has the same lattice points
    when ``d`` is integral.
    """
    alpha = set(alpha)
    cons = []
    for i, (v, di) in enumerate(zip(fan.rays, d)):
        di = to_fraction(di)
        if i in alpha:
            neg = tuple(-x for x in v)
            if integral:
                cons.append(Constraint(neg, -di - 1, False))
            else:
                cons.append(Constraint(neg, -di, True))
        else:
            cons.append(Constraint(tuple(v), di, False))
    return StrictSystem(fan.dim, tuple(cons))


def recession_system(fan: Fan, alpha) -> StrictSystem:
    alpha = set(alpha)
    cons = [
        Constraint(tuple(-x for x in v) if i in alpha else tuple(v), 0, False)
        for i, v in enumerate(fan.rays)
    ]
    return StrictSystem(fan.dim, tuple(cons))


def _bounding_box(system: StrictSystem):
    box = []
    for k in range(system.dim):
        e = [0] * system.dim
        e[k] = 1
        lo = lp_optimize(system, e, maximize=False)
        hi = lp_optimize(system, e, maximize=True)
        if lo.status != "optimal" or hi.status != "optimal":
            return None
        box.append((math.ceil(lo.value), math.floor(hi.value)))
    return box


def chamber_points(fan: Fan, d, alpha) -> list:
    """Lattice points of the chamber of ``alpha`` for an integral divisor."""
    strict = chamber_system(fan, d, alpha)
    ok, _ = lp_feasible(strict)
    if not ok:
        return []
    if not is_bounded(recession_system(fan, alpha)):
        raise UnboundedContribution(
            f"chamber for alpha={[i + 1 for i in sorted(alpha)]} is unbounded"
        )
    integral = chamber_system(fan, d, alpha, integral=True)
    ok, _ = lp_feasible(integral)
    if not ok:
        return []
    box = _bounding_box(integral)
    if box is None:
        raise UnboundedContribution("chamber bounding box is unbounded")
    alpha = frozenset(alpha)
    pts = []
    for m in itertools.product(*(range(lo, hi + 1) for lo, hi in box)):
        if support_pattern(fan, d, m) == alpha:
            pts.append(m)
    return pts


def cohomology(
    fan: Fan,
    d,
    keep_weights: bool = False,
    table: Optional[ObstructionTable] = None,
) -> CohomologyTable:
    """All ``h^p(X, O(d))`` for a Cartier divisor ``d``.

    Parameters
    ----------
    fan : Fan
        A validated complete simplicial fan.
    d : sequence of int
        Coefficients of the torus-invariant divisor.
    keep_weights : bool
        Also record the contributing weights and their multiplicities.
    table : ObstructionTable, optional
        Precomputed obstruction table for ``fan``.
    """
    d = _require_cartier(fan, d)
    table = table if table is not None else obstruction_table(fan)
    n = fan.dim
    dims = [0] * (n + 1)
    weights = {} if keep_weights else None
    for alpha, coh in table.items():
        pts = chamber_points(fan, d, alpha)
        if not pts:
            continue
        for deg, dim in coh:
            p = deg + 1
            dims[p] += dim * len(pts)
            if keep_weights:
                weights.setdefault(p, []).extend((tuple(m), dim) for m in pts)
    if weights is not None:
        weights = {p: sorted(ws) for p, ws in weights.items()}
    return CohomologyTable(d, tuple(dims), weights)


# ---------------------------------------------------------------------------
# Cech oracle
# ---------------------------------------------------------------------------

def vertex_box(fan: Fan, d) -> list:
    """Integer box around every point cut out by ``n`` of the hyperplanes
    ``<u, v_i> = -d_i``, enlarged by one.  Contains every bounded chamber."""
    n = fan.dim
    pts = []
    for combo in itertools.combinations(range(fan.n_rays), n):
        x = solve([list(fan.rays[i]) for i in combo], [-to_fraction(d[i]) for i in combo])
        if x is not None:
            pts.append(x)
    return [
        (math.floor(min(p[k] for p in pts)) - 1, math.ceil(max(p[k] for p in pts)) + 1)
        for k in range(n)
    ]


@lru_cache(maxsize=4096)
def _cech_dims(fan: Fan, good: frozenset) -> tuple:
    """Cech cohomology dims of one weight, given the rays where ``<m,v>+d >= 0``."""
    cones = fan.cone_sets
    r = len(cones)
    chains = []
    for size in range(1, r + 1):
        basis = []
        for combo in itertools.combinations(range(r), size):
            inter = frozenset.intersection(*(cones[i] for i in combo))
            if inter <= good:
                basis.append(combo)
        chains.append(basis)
    ranks = []
    for p in range(r - 1):
        lower, upper = chains[p], chains[p + 1]
        if not lower or not upper:
            ranks.append(0)
            continue
        index = {c: i for i, c in enumerate(lower)}
        rows = []
        for g in upper:
            row = [0] * len(lower)
            for k in range(len(g)):
                face = g[:k] + g[k + 1:]
                if face in index:
                    row[index[face]] = (-1) ** k
            rows.append(row)
        ranks.append(rational_rank(rows))
    ranks.append(0)
    return tuple(
        len(chains[p]) - ranks[p] - (ranks[p - 1] if p else 0) for p in range(r)
    )


def cech_oracle(fan: Fan, d, box=None, keep_weights: bool = False) -> CohomologyTable:
    """Cohomology from the Cech complex of the cover by maximal affine charts.

    ``box`` is a list of inclusive integer ranges, one per coordinate of
    ``M``; by default :func:`vertex_box` is used.
    """
    d = _require_cartier(fan, d)
    if box is None:
        box = vertex_box(fan, d)
    n = fan.dim
    dims = [0] * (n + 1)
    weights = {} if keep_weights else None
    for m in itertools.product(*(range(lo, hi + 1) for lo, hi in box)):
        good = frozenset(
            i for i, v in enumerate(fan.rays) if sum(a * b for a, b in zip(m, v)) + d[i] >= 0
        )
        h = _cech_dims(fan, good)
        if any(h[n + 1:]):
            raise RuntimeError(f"Cech cohomology above degree {n} at weight {m}")
        for p in range(n + 1):
            if h[p]:
                dims[p] += h[p]
                if keep_weights:
                    weights.setdefault(p, []).append((tuple(m), h[p]))
    if weights is not None:
        weights = {p: sorted(ws) for p, ws in weights.items()}
    return CohomologyTable(d, tuple(dims), weights)
