"""Command line interface: ``toricqample COMMAND FAN [options]``.

Every command prints one deterministic JSON document (or an SVG document
for figures).  Failures print ``{"error": CODE, "message": ...}`` and exit
with status 1.  Ray indices are 1-based in all input and output.
"""
from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from typing import Optional

from .asymptotic import hhat, vanishing_equivalence_check
from .cohomology import cech_oracle, cohomology
from .exceptions import ToricError
from .fan import Fan, class_lattice, load_fan, validate
from .figure import emit_figure
from .nerve import DEFAULT_MAX_RAYS, boundary_complex, obstruction_table, reduced_cohomology
from .qample import ampleness_level, is_q_ample, q_ample_cone
from .validation import format_rational, parse_vector

COMMANDS = ("check", "classgroup", "cohomology", "cech", "qample", "level", "hhat", "betti", "figure", "vanishing")


@dataclass
class JobConfig:
    """Everything one CLI invocation needs."""

    command: str
    fan_path: str
    divisor: Optional[str] = None
    class_point: Optional[str] = None
    q: Optional[int] = None
    i: Optional[int] = None
    basis: Optional[str] = None
    box: Optional[str] = None
    cache_dir: Optional[str] = None
    output_format: str = "json"
    what: str = "qample"
    keep_weights: bool = False
    seed: int = 0
    max_rays: int = DEFAULT_MAX_RAYS

    def __post_init__(self):
        if self.command not in COMMANDS:
            raise ValueError(f"unknown command {self.command!r}")
        need = {
            "cohomology": ["divisor"],
            "cech": ["divisor"],
            "qample": ["q"],
            "level": ["class_point"],
            "figure": ["q"],
            "vanishing": ["class_point", "q"],
        }.get(self.command, [])
        if self.command == "hhat" and self.divisor is None and self.class_point is None:
            raise ValueError("hhat needs --divisor or --class")
        for name in need:
            if getattr(self, name) is None:
                flag = "--class" if name == "class_point" else f"--{name}"
                raise ValueError(f"{self.command} needs {flag}")


class _Job:
    """Lazily computed shared state for one invocation."""

    def __init__(self, cfg: JobConfig):
        self.cfg = cfg
        self.fan: Fan = load_fan(cfg.fan_path)
        self.report = validate(self.fan, seed=cfg.seed)
        self._table = None
        self._lattice = None

    @property
    def table(self):
        if self._table is None:
            self._table = obstruction_table(self.fan, self.cfg.max_rays, self.cfg.cache_dir)
        return self._table

    @property
    def lattice(self):
        if self._lattice is None:
            basis = _load_json(self.cfg.basis) if self.cfg.basis is not None else None
            self._lattice = class_lattice(self.fan, basis)
        return self._lattice

    def divisor(self):
        d = parse_vector(self.cfg.divisor)
        if len(d) != self.fan.n_rays:
            raise ValueError(f"divisor needs {self.fan.n_rays} coefficients, got {len(d)}")
        return d

    def class_point(self):
        c = parse_vector(self.cfg.class_point)
        if len(c) != self.lattice.rank:
            raise ValueError(f"class needs {self.lattice.rank} coordinates, got {len(c)}")
        return c


def _load_json(text: str):
    """Inline JSON, or the contents of the JSON file named by ``text``."""
    text = text.strip()
    if text[:1] in "[{":
        return json.loads(text)
    with open(text) as fh:
        return json.load(fh)


def _box(text: str) -> list:
    out = []
    for part in text.split(","):
        lo, hi = part.split(":")
        out.append((int(lo), int(hi)))
    return out


def _cmd_check(job):
    report = job.report.to_json()
    report["fan_hash"] = job.fan.fingerprint
    return report


def _cmd_classgroup(job):
    lat = job.lattice
    out = lat.to_json()
    out["classes"] = [
        [format_rational(x) for x in lat.class_of([int(i == j) for j in range(job.fan.n_rays)])]
        for i in range(job.fan.n_rays)
    ]
    return out


def _cmd_cohomology(job):
    return cohomology(job.fan, job.divisor(), job.cfg.keep_weights, job.table).to_json()


def _cmd_cech(job):
    box = _box(job.cfg.box) if job.cfg.box else None
    return cech_oracle(job.fan, job.divisor(), box, job.cfg.keep_weights).to_json()


def _cmd_qample(job):
    if job.cfg.class_point is not None:
        c = job.class_point()
        return {
            "q": job.cfg.q,
            "class": [format_rational(x) for x in c],
            "q_ample": is_q_ample(job.fan, c, job.cfg.q, job.table, job.lattice),
        }
    if job.cfg.output_format == "svg":
        return emit_figure(job.fan, job.cfg.q, "qample", job.lattice, job.table)
    return q_ample_cone(job.fan, job.cfg.q, job.table, job.lattice).to_json()


def _cmd_level(job):
    c = job.class_point()
    return {"class": [format_rational(x) for x in c], "level": ampleness_level(job.fan, c, job.table, job.lattice)}


def _cmd_hhat(job):
    d = job.divisor() if job.cfg.divisor is not None else job.lattice.lift(job.class_point())
    degrees = [job.cfg.i] if job.cfg.i is not None else range(job.fan.dim + 1)
    values = [hhat(job.fan, d, i, job.table).to_json() for i in degrees]
    return values[0] if job.cfg.i is not None else {"values": values}


def _cmd_betti(job):
    table = job.table
    return {
        "boundary_reduced_cohomology": [list(x) for x in reduced_cohomology(boundary_complex(job.fan))],
        "J": {str(deg): [[i + 1 for i in a] for a in table.alphas(deg)] for deg in table.degrees()},
    }


def _cmd_figure(job):
    return emit_figure(job.fan, job.cfg.q, job.cfg.what, job.lattice, job.table)


def _cmd_vanishing(job):
    report = vanishing_equivalence_check(job.fan, job.class_point(), job.cfg.q, table=job.table, lattice=job.lattice)
    return report.to_json()


_DISPATCH = {
    "check": _cmd_check,
    "classgroup": _cmd_classgroup,
    "cohomology": _cmd_cohomology,
    "cech": _cmd_cech,
    "qample": _cmd_qample,
    "level": _cmd_level,
    "hhat": _cmd_hhat,
    "betti": _cmd_betti,
    "figure": _cmd_figure,
    "vanishing": _cmd_vanishing,
}


def dumps(doc) -> str:
    if isinstance(doc, str):
        return doc
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


def run(cfg: JobConfig) -> tuple:
    """Execute a job; returns ``(exit_status, output_text)``."""
    try:
        job = _Job(cfg)
        return 0, dumps(_DISPATCH[cfg.command](job))
    except ToricError as exc:
        code, message = exc.code, str(exc)
    except (ValueError, TypeError, KeyError, ZeroDivisionError) as exc:
        code, message = "InvalidInput", str(exc)
    except OSError as exc:
        code, message = "IOError", str(exc)
    return 1, dumps({"error": code, "message": message})


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="toricqample", description="Cohomology and q-ample cones of toric varieties.")
    p.add_argument("command", choices=COMMANDS)
    p.add_argument("fan", help="fan JSON file: {dim, rays, max_cones (1-based)}")
    p.add_argument("--divisor", help='divisor: JSON file, inline JSON ({"coeffs": [...]}) or comma list')
    p.add_argument("--class", dest="class_point", help="class point in N^1 coordinates (same formats)")
    p.add_argument("--q", type=int)
    p.add_argument("--i", type=int, help="cohomological degree for hhat")
    p.add_argument("--basis", help="JSON list of divisors whose classes form the N^1 basis")
    p.add_argument("--box", help="cech weight box, e.g. -3:3,-3:3")
    p.add_argument("--cache-dir")
    p.add_argument("--format", dest="output_format", choices=("json", "svg"), default="json")
    p.add_argument("--what", choices=("qample", "obstruction"), default="qample")
    p.add_argument("--keep-weights", action="store_true")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--max-rays", type=int, default=DEFAULT_MAX_RAYS)
    p.add_argument("--output", "-o", help="write to this file instead of stdout")
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    fields = vars(args)
    output = fields.pop("output")
    fields["fan_path"] = fields.pop("fan")
    try:
        cfg = JobConfig(**fields)
    except ValueError as exc:
        status, text = 1, dumps({"error": "InvalidInput", "message": str(exc)})
    else:
        status, text = run(cfg)
    if output and status == 0:
        with open(output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return status


if __name__ == "__main__":
    sys.exit(main())
