"""Boundary complex of a fan and reduced cohomology of its induced subcomplexes.

A union ``Z_alpha`` of closed facets of the polytope is covered by the
facets ``F_i`` (``i`` in alpha).  Every nonempty intersection of facets is a
face of the polytope, hence contractible, and ``{F_i : i in S}`` meet iff
``S`` spans a cone of the fan.  By the nerve theorem ``Z_alpha`` therefore
has the cohomology of the subcomplex of the fan's boundary complex induced
on ``alpha``, which is what this module computes.  No polytope coordinates
are needed.
"""
from __future__ import annotations

import itertools
import json
import logging
import os
from dataclasses import dataclass, field
from typing import Iterable, Optional

from .exactcore import rational_rank
from .exceptions import TooManyRays
from .fan import Fan

logger = logging.getLogger(__name__)

CACHE_VERSION = 1
DEFAULT_MAX_RAYS = 20


def _mask(indices: Iterable[int]) -> int:
    out = 0
    for i in indices:
        out |= 1 << i
    return out


def _members(mask: int) -> tuple:
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return tuple(out)


@dataclass(frozen=True)
class SimplicialComplex:
    """A simplicial complex on ``vertices``; faces are sorted tuples.

    The empty face is always present, so the complex is augmented and
    reduced cohomology can be read off directly.
    """

    vertices: frozenset
    faces: frozenset

    def __post_init__(self):
        faces = {tuple(sorted(f)) for f in self.faces}
        faces.add(())
        closed = set()
        for f in faces:
            for k in range(len(f) + 1):
                closed.update(itertools.combinations(f, k))
        verts = frozenset(self.vertices) | {v for f in closed for v in f}
        closed.update((v,) for v in verts)
        object.__setattr__(self, "faces", frozenset(closed))
        object.__setattr__(self, "vertices", verts)

    @property
    def dimension(self) -> int:
        return max(len(f) for f in self.faces) - 1

    def faces_of_size(self, k: int) -> list:
        return sorted(f for f in self.faces if len(f) == k)


def boundary_complex(fan: Fan) -> SimplicialComplex:
    """All ray sets spanning a cone of ``fan`` (subsets of maximal cones)."""
    return SimplicialComplex(frozenset(range(fan.n_rays)), frozenset(fan.max_cones))


def induced(sc: SimplicialComplex, alpha) -> SimplicialComplex:
    """Faces of ``sc`` whose vertices all lie in ``alpha``."""
    alpha = frozenset(alpha)
    faces = frozenset(f for f in sc.faces if alpha.issuperset(f))
    return SimplicialComplex(alpha & sc.vertices, faces)


def _coboundary(lower: list, upper: list) -> list:
    """Matrix of ``delta: C^{k} -> C^{k+1}``, rows indexed by ``upper``."""
    index = {f: i for i, f in enumerate(lower)}
    rows = []
    for g in upper:
        row = [0] * len(lower)
        for pos in range(len(g)):
            row[index[g[:pos] + g[pos + 1:]]] = (-1) ** pos
        rows.append(row)
    return rows


def reduced_cohomology(sc: SimplicialComplex) -> list:
    """Nonzero ``(degree, dimension)`` pairs of reduced cohomology over Q.

    Degree ``-1`` is nonzero exactly for the complex whose only face is the
    empty one.
    """
    by_size = {}
    for f in sc.faces:
        by_size.setdefault(len(f), []).append(f)
    top = max(by_size)
    chains = [sorted(by_size.get(k, [])) for k in range(top + 1)]  # size k <-> degree k-1
    ranks = [0] * (top + 2)  # ranks[k] = rank of delta from size k to size k+1
    for k in range(top):
        if chains[k] and chains[k + 1]:
            ranks[k] = rational_rank(_coboundary(chains[k], chains[k + 1]))
    out = []
    for k in range(top + 1):
        dim = len(chains[k]) - ranks[k] - (ranks[k - 1] if k else 0)
        if dim:
            out.append((k - 1, dim))
    return out


@dataclass(frozen=True)
class ObstructionTable:
    """Nonzero reduced cohomology of every ``Z_alpha``.

    ``entries`` maps a bitmask of alpha (bit ``i`` = ray ``i``) to a tuple of
    ``(degree, dimension)`` pairs.
    """

    n_rays: int
    entries: dict = field(hash=False)

    def alphas(self, degree: int) -> list:
        """The sets ``J_degree`` as sorted tuples of 0-based ray indices."""
        return [
            _members(mask)
            for mask, coh in sorted(self.entries.items())
            if any(d == degree for d, _ in coh)
        ]

    def dimension(self, alpha, degree: int) -> int:
        coh = self.entries.get(_mask(alpha), ())
        return next((dim for d, dim in coh if d == degree), 0)

    def items(self):
        """``(alpha, cohomology)`` pairs in increasing bitmask order."""
        for mask in sorted(self.entries):
            yield _members(mask), self.entries[mask]

    def degrees(self) -> list:
        return sorted({d for coh in self.entries.values() for d, _ in coh})

    def to_json(self, fan_hash: str = "") -> dict:
        return {
            "version": CACHE_VERSION,
            "fan_hash": fan_hash,
            "entries": [
                {"alpha": [i + 1 for i in alpha], "cohomology": [list(x) for x in coh]}
                for alpha, coh in self.items()
            ],
        }

    @classmethod
    def from_json(cls, n_rays: int, data: dict) -> "ObstructionTable":
        entries = {
            _mask(i - 1 for i in e["alpha"]): tuple(tuple(x) for x in e["cohomology"])
            for e in data["entries"]
        }
        return cls(n_rays, entries)


def _alpha_cohomology(masks, cones_masks, n_rays):
    out = []
    for mask in masks:
        faces = set()
        for cm in cones_masks:
            sub = _members(cm & mask)
            for k in range(len(sub) + 1):
                faces.update(itertools.combinations(sub, k))
        sc = SimplicialComplex(frozenset(_members(mask)), frozenset(faces))
        coh = tuple(reduced_cohomology(sc))
        if coh:
            out.append((mask, coh))
    return out


def _cache_path(cache_dir, fan: Fan) -> str:
    return os.path.join(cache_dir, f"obstruction-{fan.fingerprint[:32]}.json")


def obstruction_table(
    fan: Fan,
    max_rays: int = DEFAULT_MAX_RAYS,
    cache_dir: Optional[str] = None,
    n_jobs: Optional[int] = None,
) -> ObstructionTable:
    """Reduced cohomology of ``Z_alpha`` for all ``2^|I|`` subsets alpha.

    Parameters
    ----------
    fan : Fan
        A validated fan.
    max_rays : int
        Refuse fans with more rays than this (``TooManyRays``).
    cache_dir : str, optional
        Directory holding JSON caches keyed by the fan fingerprint.
    n_jobs : int, optional
        Worker processes for the subset sweep (joblib semantics).
    """
    nr = fan.n_rays
    if nr > max_rays:
        raise TooManyRays(f"{nr} rays exceeds the cap of {max_rays} (2^{nr} subsets)")
    if cache_dir is not None:
        cached = _read_cache(cache_dir, fan)
        if cached is not None:
            return cached
    cone_masks = [_mask(c) for c in fan.max_cones]
    masks = range(1 << nr)
    if n_jobs in (None, 1) or nr < 10:
        results = _alpha_cohomology(masks, cone_masks, nr)
    else:
        from joblib import Parallel, delayed

        chunks = [range(s, min(s + 256, 1 << nr)) for s in range(0, 1 << nr, 256)]
        parts = Parallel(n_jobs=n_jobs)(delayed(_alpha_cohomology)(ch, cone_masks, nr) for ch in chunks)
        results = [x for part in parts for x in part]
    table = ObstructionTable(nr, dict(sorted(results)))
    if cache_dir is not None:
        _write_cache(cache_dir, fan, table)
    return table


def _read_cache(cache_dir, fan):
    path = _cache_path(cache_dir, fan)
    if not os.path.exists(path):
        return None
    from filelock import FileLock

    with FileLock(path + ".lock"):
        try:
            with open(path) as fh:
                data = json.load(fh)
        except (OSError, ValueError):
            logger.warning("ignoring unreadable cache file %s", path)
            return None
    if data.get("version") != CACHE_VERSION or data.get("fan_hash") != fan.fingerprint:
        return None
    return ObstructionTable.from_json(fan.n_rays, data)


def _write_cache(cache_dir, fan, table):
    from filelock import FileLock

    os.makedirs(cache_dir, exist_ok=True)
    path = _cache_path(cache_dir, fan)
    with FileLock(path + ".lock"):
        tmp = path + ".tmp"
        with open(tmp, "w") as fh:
            json.dump(table.to_json(fan.fingerprint), fh, indent=1)
        os.replace(tmp, path)
