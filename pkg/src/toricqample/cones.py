"""Partially open rational polyhedral cones and finite unions of them.

A :class:`POCone` is an intersection of homogeneous half-spaces
``normal . x >= 0`` or ``normal . x > 0``.  Normals are stored as primitive
integer vectors in lexicographic order, with duplicates merged (the
stricter flag wins), so equal representations compare equal.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence

from .exactcore import (
    Constraint,
    StrictSystem,
    determinant,
    inverse,
    lp_feasible,
    lp_optimize,
    matmul,
    nullspace,
    rational_rank,
    solve,
    to_fraction,
    transpose,
)
from .exceptions import Unbounded


def primitive(vec) -> tuple:
    """Positive rescaling of a rational vector to a primitive integer vector."""
    vec = [to_fraction(x) for x in vec]
    scale = math.lcm(*(x.denominator for x in vec)) if vec else 1
    ints = [int(x * scale) for x in vec]
    g = math.gcd(*ints) if ints else 0
    if g == 0:
        return tuple(ints)
    return tuple(x // g for x in ints)


def _dot(a, b):
    return sum(to_fraction(x) * to_fraction(y) for x, y in zip(a, b))


@dataclass(frozen=True)
class POCone:
    """Partially open cone ``{x : n.x >= 0 (or > 0) for (n, strict) in constraints}``."""

    dim: int
    constraints: tuple = ()

    def __post_init__(self):
        merged: dict = {}
        empty = False
        for normal, strict in self.constraints:
            p = primitive(normal)
            if len(p) != self.dim:
                raise ValueError(f"normal {normal} does not have dimension {self.dim}")
            if not any(p):
                empty = empty or bool(strict)
                continue
            merged[p] = merged.get(p, False) or bool(strict)
        if empty:
            merged = _empty_constraints(self.dim)
        object.__setattr__(self, "constraints", tuple(sorted(merged.items())))

    @classmethod
    def empty(cls, dim: int) -> "POCone":
        return cls(dim, tuple(_empty_constraints(dim).items()))

    @classmethod
    def whole(cls, dim: int) -> "POCone":
        return cls(dim, ())

    @property
    def normals(self) -> list:
        return [n for n, _ in self.constraints]

    def system(self) -> StrictSystem:
        return StrictSystem(self.dim, tuple(Constraint(n, 0, s) for n, s in self.constraints))

    def witness(self) -> Optional[tuple]:
        """A rational point of the cone, or None if it is empty."""
        ok, x = lp_feasible(self.system())
        return x if ok else None

    def is_empty(self) -> bool:
        return self.witness() is None

    def is_full_dimensional(self) -> bool:
        return not interior(self).is_empty()

    def __contains__(self, point) -> bool:
        return member(point, self)

    def intersect(self, other: "POCone") -> "POCone":
        if other.dim != self.dim:
            raise ValueError("dimension mismatch")
        return POCone(self.dim, self.constraints + other.constraints)

    def negate(self) -> "POCone":
        """``{-x : x in self}``."""
        return POCone(self.dim, tuple((tuple(-a for a in n), s) for n, s in self.constraints))

    def to_json(self) -> dict:
        return {"constraints": [{"normal": list(n), "strict": s} for n, s in self.constraints]}

    @classmethod
    def from_json(cls, data: dict, dim: Optional[int] = None) -> "POCone":
        cons = [(c["normal"], bool(c.get("strict", False))) for c in data["constraints"]]
        if dim is None:
            if not cons:
                raise ValueError("cannot infer the dimension of an unconstrained cone")
            dim = len(cons[0][0])
        return cls(dim, tuple(cons))


def _empty_constraints(dim: int) -> dict:
    e = tuple(int(i == 0) for i in range(dim))
    return {e: True, tuple(-x for x in e): True}


@dataclass(frozen=True)
class ConeUnion:
    dim: int
    cones: tuple = ()

    def __post_init__(self):
        cones = tuple(self.cones)
        if any(c.dim != self.dim for c in cones):
            raise ValueError("all cones of a union must share the ambient dimension")
        object.__setattr__(self, "cones", cones)

    def __contains__(self, point) -> bool:
        return member(point, self)

    def __iter__(self):
        return iter(self.cones)

    def __len__(self):
        return len(self.cones)

    def to_json(self) -> list:
        return [c.to_json() for c in self.cones]


# ---------------------------------------------------------------------------
# basic constructions
# ---------------------------------------------------------------------------

def orthant(n_coords: int, alpha: Iterable[int]) -> POCone:
    """``{d : d_i < 0 for i in alpha, d_i >= 0 otherwise}``."""
    alpha = set(alpha)
    cons = []
    for i in range(n_coords):
        e = [0] * n_coords
        if i in alpha:
            e[i] = -1
            cons.append((tuple(e), True))
        else:
            e[i] = 1
            cons.append((tuple(e), False))
    return POCone(n_coords, tuple(cons))


def member(point, c) -> bool:
    """Exact membership of ``point`` in a :class:`POCone` or :class:`ConeUnion`."""
    if isinstance(c, ConeUnion):
        return any(member(point, k) for k in c.cones)
    point = [to_fraction(x) for x in point]
    if len(point) != c.dim:
        raise ValueError(f"point has {len(point)} coordinates, cone lives in dimension {c.dim}")
    for n, strict in c.constraints:
        v = sum(a * x for a, x in zip(n, point))
        if v < 0 or (strict and v == 0):
            return False
    return True


def irredundant(c: POCone) -> POCone:
    """Drop constraints implied by the others (one LP per constraint)."""
    if c.is_empty():
        return POCone.empty(c.dim)
    kept = list(c.constraints)
    i = 0
    while i < len(kept):
        n, strict = kept[i]
        others = kept[:i] + kept[i + 1:]
        # implied iff others together with the negation is infeasible
        neg = (tuple(-a for a in n), not strict)
        test = POCone(c.dim, tuple(others) + (neg,))
        if test.is_empty():
            kept.pop(i)
        else:
            i += 1
    return POCone(c.dim, tuple(kept))


def closure(c: POCone) -> POCone:
    if c.is_empty():
        return POCone.empty(c.dim)
    return POCone(c.dim, tuple((n, False) for n, _ in c.constraints))


def interior(c: POCone) -> POCone:
    """Topological interior; empty when ``c`` lies in a hyperplane."""
    c = irredundant(c)
    opened = POCone(c.dim, tuple((n, True) for n, _ in c.constraints))
    if opened.is_empty():
        return POCone.empty(c.dim)
    return opened


def _fourier_motzkin(rows, var):
    """Eliminate coordinate ``var``; rows are ``(coeffs, strict)``."""
    pos, neg, out = [], [], []
    for coeffs, strict in rows:
        a = coeffs[var]
        if a > 0:
            pos.append((coeffs, strict))
        elif a < 0:
            neg.append((coeffs, strict))
        else:
            out.append((coeffs[:var] + coeffs[var + 1:], strict))
    for (p, sp), (q, sq) in itertools.product(pos, neg):
        a, b = p[var], -q[var]
        comb = [b * x + a * y for x, y in zip(p, q)]
        # a.x > 0 and b.x >= 0 give (a + b).x > 0
        out.append((comb[:var] + comb[var + 1:], sp or sq))
    return out


def project(c: POCone, linear_map: Sequence[Sequence]) -> POCone:
    """Image of ``c`` under a surjective linear map (given as a matrix).

    Points of the source are written ``x = R y + K z`` with ``R`` a right
    inverse of the map and ``K`` a kernel basis; the kernel coordinates
    ``z`` are then removed by Fourier-Motzkin elimination, pruning redundant
    rows by LP after every round.
    """
    q = [[to_fraction(x) for x in row] for row in linear_map]
    target, source = len(q), len(q[0])
    if source != c.dim:
        raise ValueError("map and cone dimensions disagree")
    if rational_rank(q) != target:
        raise ValueError("projection must be surjective")
    gram_inv = inverse(matmul(q, transpose(q)))
    right = matmul(transpose(q), gram_inv)  # source x target
    kernel = nullspace(q, source)  # list of source vectors
    rows = []
    for n, strict in c.constraints:
        yc = [sum(n[i] * right[i][j] for i in range(source)) for j in range(target)]
        zc = [_dot(n, k) for k in kernel]
        rows.append((list(primitive(yc + zc)), strict))
    if c.is_empty():
        return POCone.empty(target)
    ncols = target + len(kernel)
    for _ in kernel:
        rows = _fourier_motzkin(rows, ncols - 1)
        ncols -= 1
        cone = irredundant(POCone(ncols, tuple((tuple(r), st) for r, st in rows)))
        rows = [(list(n), st) for n, st in cone.constraints]
    return POCone(target, tuple((tuple(r), st) for r, st in rows))


# ---------------------------------------------------------------------------
# complements through hyperplane arrangements
# ---------------------------------------------------------------------------

def canonical_hyperplane(normal) -> tuple:
    """Canonical representative of the line spanned by ``normal``."""
    p = primitive(normal)
    first = next(x for x in p if x)
    return p if first > 0 else tuple(-x for x in p)


@dataclass(frozen=True)
class ArrangementCell:
    """A relatively open cell of a central arrangement, by its sign vector."""

    hyperplanes: tuple
    signs: tuple
    witness: tuple

    def to_cone(self) -> POCone:
        cons = []
        for h, s in zip(self.hyperplanes, self.signs):
            neg = tuple(-x for x in h)
            if s > 0:
                cons.append((h, True))
            elif s < 0:
                cons.append((neg, True))
            else:
                cons.append((h, False))
                cons.append((neg, False))
        return POCone(len(self.witness), tuple(cons))

    @property
    def full_dimensional(self) -> bool:
        return all(self.signs)


def _sign(x) -> int:
    return (x > 0) - (x < 0)


def arrangement_cells(hyperplanes: Sequence[tuple], dim: int) -> list:
    """All nonempty sign cells of a central arrangement, depth first.

    Branches are pruned by an LP feasibility test; a branch whose sign
    agrees with the parent's witness needs no LP.
    """
    hyperplanes = tuple(hyperplanes)
    cells = []

    def extend(k, cons, signs, wit):
        if k == len(hyperplanes):
            cells.append(ArrangementCell(hyperplanes, tuple(signs), tuple(wit)))
            return
        h = hyperplanes[k]
        neg = tuple(-x for x in h)
        wsign = _sign(_dot(h, wit))
        for s in (-1, 0, 1):
            if s > 0:
                new = [Constraint(h, 0, True)]
            elif s < 0:
                new = [Constraint(neg, 0, True)]
            else:
                new = [Constraint(h, 0, False), Constraint(neg, 0, False)]
            sys_ = cons + new
            if s == wsign:
                w = wit
            else:
                ok, w = lp_feasible(StrictSystem(dim, tuple(sys_)))
                if not ok:
                    continue
            extend(k + 1, sys_, signs + [s], w)

    extend(0, [], [], tuple(Fraction(0) for _ in range(dim)))
    return cells


def complement(u: ConeUnion) -> ConeUnion:
    """The complement of a union, as a union of arrangement cells.

    Every cell of the arrangement spanned by the union's normals lies
    entirely inside or entirely outside each cone, so its witness decides.
    """
    hyps = sorted({canonical_hyperplane(n) for c in u.cones for n in c.normals})
    out = []
    for cell in arrangement_cells(hyps, u.dim):
        if not member(cell.witness, u):
            out.append(cell.to_cone())
    return ConeUnion(u.dim, tuple(out))


def complement_cells(u: ConeUnion) -> list:
    """Like :func:`complement` but keeps the :class:`ArrangementCell` objects."""
    hyps = sorted({canonical_hyperplane(n) for c in u.cones for n in c.normals})
    return [cell for cell in arrangement_cells(hyps, u.dim) if not member(cell.witness, u)]


# ---------------------------------------------------------------------------
# bounded polyhedra
# ---------------------------------------------------------------------------

def _as_system(p, dim=None) -> StrictSystem:
    if isinstance(p, StrictSystem):
        return p
    p = [c if isinstance(c, Constraint) else Constraint(*c) for c in p]
    if dim is None:
        dim = len(p[0].normal)
    return StrictSystem(dim, tuple(p))


def is_bounded(p, dim=None) -> bool:
    """True iff the recession cone of the closure of ``p`` is ``{0}``."""
    sys_ = _as_system(p, dim)
    n = sys_.dim
    homog = [Constraint(c.normal, 0, False) for c in sys_.constraints]
    for k in range(n):
        for sign in (1, -1):
            e = [0] * n
            e[k] = sign
            bound = Constraint(tuple(-x for x in e), 1, False)  # sign * x_k <= 1
            res = lp_optimize(StrictSystem(n, tuple(homog + [bound])), e)
            if res.value > 0:
                return False
    return True


def vertices(p, dim=None) -> list:
    """Vertices of the closure of a bounded polyhedron ``{normal.x + offset >= 0}``.

    Raises :class:`Unbounded` if the polyhedron is nonempty and unbounded.
    """
    sys_ = _as_system(p, dim)
    n = sys_.dim
    closed = StrictSystem(n, tuple(Constraint(c.normal, c.offset, False) for c in sys_.constraints))
    ok, _ = lp_feasible(closed)
    if not ok:
        return []
    if not is_bounded(closed):
        raise Unbounded("polyhedron has a nonzero recession cone")
    found = set()
    cons = closed.constraints
    for combo in itertools.combinations(cons, n):
        x = solve([list(c.normal) for c in combo], [-c.offset for c in combo])
        if x is None:
            continue
        if closed.holds(x):
            found.add(tuple(x))
    return sorted(found)


def _affine_dim(points) -> int:
    if not points:
        return -1
    base = points[0]
    return rational_rank([[a - b for a, b in zip(p, base)] for p in points[1:]]) if len(points) > 1 else 0


def volume(p, dim=None) -> Fraction:
    """Exact ``dim``-dimensional volume of a bounded polyhedron.

    The polytope is triangulated by pulling: from its smallest vertex, cone
    over a triangulation of every facet not containing that vertex,
    recursively.  Lower-dimensional polytopes have volume zero.
    """
    sys_ = _as_system(p, dim)
    n = sys_.dim
    verts = vertices(sys_)
    if _affine_dim(verts) < n:
        return Fraction(0)
    tight = []
    for c in sys_.constraints:
        t = frozenset(i for i, v in enumerate(verts) if _dot(c.normal, v) + c.offset == 0)
        if t:
            tight.append(t)

    def simplices(face, k):
        if len(face) == k + 1:
            yield [min(face)] + sorted(face - {min(face)})
            return
        apex = min(face)
        seen = set()
        for t in tight:
            g = face & t
            if apex in g or g == face or g in seen or len(g) < k:
                continue
            if _affine_dim([verts[i] for i in sorted(g)]) == k - 1:
                seen.add(g)
                for s in simplices(g, k - 1):
                    yield [apex] + s

    total = Fraction(0)
    for simplex in simplices(frozenset(range(len(verts))), n):
        v0 = verts[simplex[0]]
        mat = [[a - b for a, b in zip(verts[i], v0)] for i in simplex[1:]]
        total += abs(determinant(mat))
    return total / math.factorial(n)
