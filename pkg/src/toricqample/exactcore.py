"""Exact integer/rational linear algebra and a rational simplex solver.

Everything in here works on plain nested lists of ``int`` or
``fractions.Fraction``; nothing is ever rounded.  The LP solver runs the
simplex method on an integer tableau (fraction-free "integer pivoting"),
which keeps the arithmetic exact while staying much cheaper than pushing
``Fraction`` objects through every pivot.
"""
from __future__ import annotations

import math
import numbers
from dataclasses import dataclass, field
from fractions import Fraction
from typing import NamedTuple, Optional, Sequence

__all__ = [
    "to_fraction",
    "identity",
    "matmul",
    "transpose",
    "determinant",
    "smith_normal_form",
    "hermite_normal_form",
    "rational_rank",
    "nullspace",
    "solve",
    "inverse",
    "Constraint",
    "StrictSystem",
    "LPResult",
    "linprog",
    "lp_feasible",
]


def to_fraction(x) -> Fraction:
    """Convert ``x`` to a Fraction without ever rounding.

    Integers, Fractions and strings such as ``"3/4"`` are accepted.  Floats
    are accepted only when they hold an integer value.
    """
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise TypeError("booleans are not rational numbers")
    if isinstance(x, numbers.Integral):
        return Fraction(int(x))
    if isinstance(x, numbers.Rational):
        return Fraction(int(x.numerator), int(x.denominator))
    if isinstance(x, str):
        return Fraction(x.strip())
    if isinstance(x, numbers.Real):
        xf = float(x)
        if xf.is_integer():
            return Fraction(int(xf))
        raise TypeError(f"refusing to convert non-integral float {x!r}; pass an exact rational")
    raise TypeError(f"cannot interpret {x!r} as a rational number")


def _lcm_denominators(values) -> int:
    out = 1
    for v in values:
        d = v.denominator if isinstance(v, Fraction) else 1
        out = out * d // math.gcd(out, d)
    return out


def _integer_row(row) -> list[int]:
    """Positive multiple of ``row`` with integer entries."""
    row = [to_fraction(v) for v in row]
    scale = _lcm_denominators(row)
    return [int(v * scale) for v in row]


def identity(n: int) -> list[list[int]]:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def transpose(m):
    return [list(col) for col in zip(*m)]


def matmul(a, b):
    bt = list(zip(*b))
    return [[sum(x * y for x, y in zip(row, col)) for col in bt] for row in a]


def determinant(m) -> Fraction:
    """Exact determinant of a square matrix (Bareiss elimination)."""
    n = len(m)
    if n == 0:
        return Fraction(1)
    scale = Fraction(1)
    rows = []
    for row in m:
        r = [to_fraction(v) for v in row]
        s = _lcm_denominators(r)
        scale *= s
        rows.append([int(v * s) for v in r])
    sign, prev = 1, 1
    for k in range(n):
        if rows[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if rows[i][k] != 0), None)
            if swap is None:
                return Fraction(0)
            rows[k], rows[swap] = rows[swap], rows[k]
            sign = -sign
        pk = rows[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                rows[i][j] = (rows[i][j] * pk - rows[i][k] * rows[k][j]) // prev
            rows[i][k] = 0
        prev = pk
    return Fraction(sign * rows[n - 1][n - 1]) / scale


# --------------------------------------------------------------------------
# Smith and Hermite normal forms
# --------------------------------------------------------------------------

def smith_normal_form(m):
    """Smith normal form of an integer matrix.

    Returns ``(U, S, V)`` with ``U @ m @ V == S``; ``U`` and ``V`` are
    unimodular and the diagonal of ``S`` is nonnegative with each entry
    dividing the next.  Pivots are chosen of minimal absolute value.
    """
    rows = len(m)
    cols = len(m[0]) if rows else 0
    a = [[int(v) for v in row] for row in m]
    u = identity(rows)
    v = identity(cols)

    def row_op(i, j, q):  # row_i -= q * row_j
        a[i] = [x - q * y for x, y in zip(a[i], a[j])]
        u[i] = [x - q * y for x, y in zip(u[i], u[j])]

    def col_op(i, j, q):  # col_i -= q * col_j
        for row in a:
            row[i] -= q * row[j]
        for row in v:
            row[i] -= q * row[j]

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for row in a:
            row[i], row[j] = row[j], row[i]
        for row in v:
            row[i], row[j] = row[j], row[i]

    for t in range(min(rows, cols)):
        entries = [(abs(a[i][j]), i, j) for i in range(t, rows) for j in range(t, cols) if a[i][j]]
        if not entries:
            break
        _, pi, pj = min(entries)
        swap_rows(t, pi)
        swap_cols(t, pj)
        while True:
            clean = True
            for i in range(t + 1, rows):
                if a[i][t]:
                    row_op(i, t, a[i][t] // a[t][t])
                    clean = clean and a[i][t] == 0
            for j in range(t + 1, cols):
                if a[t][j]:
                    col_op(j, t, a[t][j] // a[t][t])
                    clean = clean and a[t][j] == 0
            if not clean:
                cands = [(abs(a[i][t]), i, "r") for i in range(t + 1, rows) if a[i][t]]
                cands += [(abs(a[t][j]), j, "c") for j in range(t + 1, cols) if a[t][j]]
                smallest, k, kind = min(cands)
                if abs(a[t][t]) > smallest:
                    if kind == "r":
                        swap_rows(t, k)
                    else:
                        swap_cols(t, k)
                continue
            bad = next(
                ((i, j) for i in range(t + 1, rows) for j in range(t + 1, cols) if a[i][j] % a[t][t]),
                None,
            )
            if bad is None:
                break
            # pull the offending row in; the next sweep lowers the pivot
            row_op(t, bad[0], -1)
        if a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            u[t] = [-x for x in u[t]]
    return u, a, v


def hermite_normal_form(m):
    """Row-style Hermite normal form ``(H, W)`` with ``W @ m == H``.

    ``H`` is in row echelon form with positive pivots and the entries above
    each pivot reduced into ``[0, pivot)``; ``W`` is unimodular.  Zero rows
    are kept at the bottom.
    """
    rows = len(m)
    cols = len(m[0]) if rows else 0
    h = [[int(x) for x in row] for row in m]
    w = identity(rows)
    r = 0
    for c in range(cols):
        if r == rows:
            break
        while True:
            nz = [(abs(h[i][c]), i) for i in range(r, rows) if h[i][c]]
            if not nz:
                break
            _, i = min(nz)
            h[r], h[i] = h[i], h[r]
            w[r], w[i] = w[i], w[r]
            done = True
            for k in range(r + 1, rows):
                if h[k][c]:
                    q = h[k][c] // h[r][c]
                    h[k] = [x - q * y for x, y in zip(h[k], h[r])]
                    w[k] = [x - q * y for x, y in zip(w[k], w[r])]
                    done = done and h[k][c] == 0
            if done:
                break
        if r < rows and h[r][c]:
            if h[r][c] < 0:
                h[r] = [-x for x in h[r]]
                w[r] = [-x for x in w[r]]
            for k in range(r):
                q = h[k][c] // h[r][c]
                if q:
                    h[k] = [x - q * y for x, y in zip(h[k], h[r])]
                    w[k] = [x - q * y for x, y in zip(w[k], w[r])]
            r += 1
    return h, w


# --------------------------------------------------------------------------
# Rational linear algebra
# --------------------------------------------------------------------------

def rational_rank(m) -> int:
    """Rank over the rationals, by fraction-free (Bareiss) elimination."""
    rows = [_integer_row(row) for row in m if any(row)]
    if not rows:
        return 0
    ncols = len(rows[0])
    rank, prev = 0, 1
    for c in range(ncols):
        piv = next((i for i in range(rank, len(rows)) if rows[i][c]), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        p = rows[rank][c]
        for i in range(rank + 1, len(rows)):
            f = rows[i][c]
            rows[i] = [(x * p - f * y) // prev for x, y in zip(rows[i], rows[rank])]
        prev = p
        rank += 1
        if rank == len(rows):
            break
    return rank


def _rref(m):
    a = [[to_fraction(v) for v in row] for row in m]
    ncols = len(a[0]) if a else 0
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(a)) if a[i][c] != 0), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        p = a[r][c]
        a[r] = [x / p for x in a[r]]
        for i in range(len(a)):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
        if r == len(a):
            break
    return a[:r], pivots


def nullspace(m, ncols: Optional[int] = None) -> list[list[Fraction]]:
    """Basis of ``{x : m @ x = 0}`` as a list of rational vectors."""
    if ncols is None:
        ncols = len(m[0])
    if not m:
        return [[Fraction(int(i == j)) for i in range(ncols)] for j in range(ncols)]
    r, pivots = _rref(m)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        x = [Fraction(0)] * ncols
        x[f] = Fraction(1)
        for row, pc in zip(r, pivots):
            x[pc] = -row[f]
        basis.append(x)
    return basis


def solve(a, b) -> Optional[list[Fraction]]:
    """Unique solution of the square system ``a x = b``, or None if singular."""
    n = len(a)
    aug = [[to_fraction(v) for v in row] + [to_fraction(bi)] for row, bi in zip(a, b)]
    r, pivots = _rref(aug)
    if pivots != list(range(n)):
        return None
    return [row[-1] for row in r]


def inverse(a) -> Optional[list[list[Fraction]]]:
    n = len(a)
    aug = [[to_fraction(v) for v in row] + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(a)]
    r, pivots = _rref(aug)
    if pivots[:n] != list(range(n)) or len(r) < n:
        return None
    return [row[n:] for row in r]


# --------------------------------------------------------------------------
# Linear programming
# --------------------------------------------------------------------------

class Constraint(NamedTuple):
    """``normal . x + offset >= 0`` (or ``> 0`` when ``strict``)."""

    normal: tuple
    offset: Fraction = Fraction(0)
    strict: bool = False

    def holds(self, x) -> bool:
        val = sum(to_fraction(a) * to_fraction(xi) for a, xi in zip(self.normal, x)) + to_fraction(self.offset)
        return val > 0 if self.strict else val >= 0


@dataclass(frozen=True)
class StrictSystem:
    """A finite system of affine inequalities, some of them strict."""

    dim: int
    constraints: tuple = field(default_factory=tuple)

    def __post_init__(self):
        cons = []
        for c in self.constraints:
            if not isinstance(c, Constraint):
                c = Constraint(*c)
            normal = tuple(to_fraction(v) for v in c.normal)
            if len(normal) != self.dim:
                raise ValueError(f"constraint normal {normal} has wrong dimension (expected {self.dim})")
            cons.append(Constraint(normal, to_fraction(c.offset), bool(c.strict)))
        object.__setattr__(self, "constraints", tuple(cons))

    def holds(self, x) -> bool:
        return all(c.holds(x) for c in self.constraints)


class LPResult(NamedTuple):
    status: str  # "optimal" | "infeasible" | "unbounded"
    x: Optional[tuple]
    value: Optional[Fraction]


def _pivot(t, d, r, c):
    """Integer pivot on ``t[r][c]``; returns the new common denominator."""
    p = t[r][c]
    pr = t[r]
    for i, row in enumerate(t):
        if i == r:
            continue
        f = row[c]
        if f:
            t[i] = [(x * p - f * y) // d for x, y in zip(row, pr)]
        elif p != d:
            t[i] = [x * p // d for x in row]
    if p < 0:
        for i, row in enumerate(t):
            t[i] = [-x for x in row]
        p = -p
    return p


def _run_simplex(t, d, basis, obj, allowed):
    """Bland's-rule simplex maximising the objective stored in row ``obj``."""
    m = len(basis)
    while True:
        row = t[obj]
        enter = next((j for j in allowed if row[j] < 0), None)
        if enter is None:
            return "optimal", d
        best = None
        for i in range(m):
            a = t[i][enter]
            if a <= 0:
                continue
            if best is None:
                best = i
                continue
            lhs = t[i][-1] * t[best][enter]
            rhs = t[best][-1] * a
            if lhs < rhs or (lhs == rhs and basis[i] < basis[best]):
                best = i
        if best is None:
            return "unbounded", d
        d = _pivot(t, d, best, enter)
        basis[best] = enter


def linprog(c, A_ub=(), b_ub=(), A_eq=(), b_eq=(), maximize: bool = True) -> LPResult:
    """Exact LP over free rational variables.

    Optimises ``c . x`` subject to ``A_ub x <= b_ub`` and ``A_eq x = b_eq``.
    """
    n = len(c)
    rows = []  # (coeffs over x, rhs, kind)
    for a, b in zip(A_ub, b_ub):
        rows.append(([to_fraction(v) for v in a], to_fraction(b), "ub"))
    for a, b in zip(A_eq, b_eq):
        rows.append(([to_fraction(v) for v in a], to_fraction(b), "eq"))
    m = len(rows)
    n_ub = sum(1 for r in rows if r[2] == "ub")

    # columns: x+ (n), x- (n), slacks (n_ub), artificials (m), rhs
    nslack0 = 2 * n
    nart0 = nslack0 + n_ub
    ncol = nart0 + m + 1
    t = []
    basis = []
    art_rows = []
    slack_idx = 0
    for i, (a, b, kind) in enumerate(rows):
        coeffs = _integer_row(a + [b])
        ai, bi = coeffs[:-1], coeffs[-1]
        row = [0] * ncol
        for j, v in enumerate(ai):
            row[j] = v
            row[n + j] = -v
        if kind == "ub":
            row[nslack0 + slack_idx] = 1
            slack_col = nslack0 + slack_idx
            slack_idx += 1
        row[-1] = bi
        if bi < 0:
            row = [-v for v in row]
        if kind == "ub" and bi >= 0:
            basis.append(slack_col)
        else:
            row[nart0 + i] = 1
            basis.append(nart0 + i)
            art_rows.append(i)
        t.append(row)

    sense = 1 if maximize else -1
    cfrac = [sense * to_fraction(v) for v in c]
    cscale = _lcm_denominators(cfrac)
    cint = [int(v * cscale) for v in cfrac]
    obj2 = [0] * ncol
    for j, v in enumerate(cint):
        obj2[j] = -v
        obj2[n + j] = v
    obj1 = [0] * ncol
    for i in art_rows:
        obj1[nart0 + i] = 1
    for i in art_rows:
        obj1 = [x - y for x, y in zip(obj1, t[i])]
    t.append(obj2)
    t.append(obj1)
    k2, k1 = m, m + 1
    d = 1

    if art_rows:
        _, d = _run_simplex(t, d, basis, k1, list(range(ncol - 1)))
        if t[k1][-1] != 0:
            return LPResult("infeasible", None, None)
        dead = []
        for i in range(m):
            if basis[i] >= nart0:
                j = next((j for j in range(nart0) if t[i][j] != 0), None)
                if j is None:
                    dead.append(i)
                else:
                    d = _pivot(t, d, i, j)
                    basis[i] = j
        for i in reversed(dead):
            del t[i]
            del basis[i]
        m = len(basis)
        k2 = m
    del t[-1]  # phase-one objective

    status, d = _run_simplex(t, d, basis, k2, list(range(nart0)))
    if status == "unbounded":
        return LPResult("unbounded", None, None)
    vals = [Fraction(0)] * nart0
    for i, b in enumerate(basis):
        vals[b] = Fraction(t[i][-1], d)
    x = tuple(vals[j] - vals[n + j] for j in range(n))
    value = Fraction(t[k2][-1], d) / cscale * sense
    return LPResult("optimal", x, value)


def lp_feasible(system: StrictSystem):
    """Decide whether a system with strict rows has a rational solution.

    Strict rows are handled exactly through a slack ``t``: maximise ``t``
    subject to ``normal . x + offset >= t`` on strict rows, ``>= 0`` on the
    others and ``t <= 1``; the system is feasible iff the optimum is
    positive.  Returns ``(feasible, witness)``; the witness is None when
    infeasible.
    """
    dim = system.dim
    cons = system.constraints
    if not cons:
        return True, tuple(Fraction(0) for _ in range(dim))
    if not any(c.strict for c in cons):
        res = linprog(
            [0] * dim,
            A_ub=[[-a for a in c.normal] for c in cons],
            b_ub=[c.offset for c in cons],
        )
        if res.status == "infeasible":
            return False, None
        return True, res.x
    a_ub, b_ub = [], []
    for c in cons:
        a_ub.append([-a for a in c.normal] + [1 if c.strict else 0])
        b_ub.append(c.offset)
    a_ub.append([0] * dim + [1])
    b_ub.append(1)
    res = linprog([0] * dim + [1], A_ub=a_ub, b_ub=b_ub)
    if res.status != "optimal" or res.value <= 0:
        return False, None
    return True, res.x[:dim]


def lp_optimize(system: StrictSystem, objective: Sequence, maximize: bool = True) -> LPResult:
    """Optimise over the closure of ``system`` (strict flags ignored)."""
    return linprog(
        list(objective),
        A_ub=[[-a for a in c.normal] for c in system.constraints],
        b_ub=[c.offset for c in system.constraints],
        maximize=maximize,
    )
