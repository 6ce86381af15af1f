"""Self-contained result records and SVG rendering.

A record carries everything needed to reproduce the run bit-for-bit: the
input digest, the budget, the seed, the tuning parameters, the exact answer
as numerator/denominator strings (strings so downstream consumers never
overflow), and the deterministic run counters.  Wall-clock timings are kept
out of the canonical serialization so identical runs serialize identically.
"""

from __future__ import annotations

import hashlib
import json
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .geometry import PointSet, convex_hull
from .hausdorff import hausdorff_sq
from .instances import format_points
from .search import RunStats, Solution, TuningParams

SCHEMA = "hullbudget-result-v1"


def instance_digest(ps: PointSet) -> str:
    text = format_points([p.xy for p in ps])
    return hashlib.sha256(text.encode("utf-8")).hexdigest()


@dataclass(frozen=True)
class ResultRecord:
    digest: str
    n: int
    k: int
    seed: int
    sample_constant: int
    t_override: Optional[float]
    instrument: bool
    ropt_num: str
    ropt_den: str
    ropt_float: float
    subset: tuple[int, ...]
    stats: dict
    verification: str

    @staticmethod
    def from_solution(ps: PointSet, k: int, seed: int, params: TuningParams,
                      sol: Solution, verification: str = "unverified") -> "ResultRecord":
        return ResultRecord(
            digest=instance_digest(ps),
            n=ps.n,
            k=k,
            seed=seed,
            sample_constant=params.sample_constant,
            t_override=params.t_override,
            instrument=params.instrument,
            ropt_num=str(sol.ropt_sq.numerator),
            ropt_den=str(sol.ropt_sq.denominator),
            ropt_float=sol.ropt_float,
            subset=tuple(sol.subset),
            stats=sol.stats.deterministic_dict(),
            verification=verification,
        )

    @property
    def ropt_sq(self) -> Fraction:
        return Fraction(int(self.ropt_num), int(self.ropt_den))

    def to_json_line(self) -> str:
        payload = {
            "schema": SCHEMA,
            "digest": self.digest,
            "n": self.n,
            "k": self.k,
            "seed": self.seed,
            "params": {
                "c": self.sample_constant,
                "t": self.t_override,
                "instrument": self.instrument,
            },
            "ropt_sq": {"num": self.ropt_num, "den": self.ropt_den},
            "ropt_float": self.ropt_float,
            "subset": list(self.subset),
            "stats": self.stats,
            "verification": self.verification,
        }
        return json.dumps(payload, sort_keys=True, separators=(",", ":"))

    @staticmethod
    def from_json_line(line: str) -> "ResultRecord":
        d = json.loads(line)
        if d.get("schema") != SCHEMA:
            raise ValueError(f"unknown record schema: {d.get('schema')!r}")
        return ResultRecord(
            digest=d["digest"],
            n=d["n"],
            k=d["k"],
            seed=d["seed"],
            sample_constant=d["params"]["c"],
            t_override=d["params"]["t"],
            instrument=d["params"]["instrument"],
            ropt_num=d["ropt_sq"]["num"],
            ropt_den=d["ropt_sq"]["den"],
            ropt_float=d["ropt_float"],
            subset=tuple(d["subset"]),
            stats=d["stats"],
            verification=d["verification"],
        )


# ---------------------------------------------------------------------------
# SVG rendering (pure presentation; never feeds back into results)


def render_svg(ps: PointSet, subset: Sequence[int], ropt_sq: Fraction,
               size: int = 640) -> str:
    xs = [p.x for p in ps]
    ys = [p.y for p in ps]
    lo_x, hi_x = min(xs), max(xs)
    lo_y, hi_y = min(ys), max(ys)
    span = max(hi_x - lo_x, hi_y - lo_y, 1)
    pad = 0.06 * span

    def tx(x: float) -> float:
        return (x - lo_x + pad) * size / (span + 2 * pad)

    def ty(y: float) -> float:
        return size - (y - lo_y + pad) * size / (span + 2 * pad)

    def poly_path(pts) -> str:
        return " ".join(f"{tx(p.x):.2f},{ty(p.y):.2f}" for p in pts)

    hull_p = ps.hull
    hull_q = convex_hull([ps[i] for i in subset])
    res = hausdorff_sq(ps, list(subset))
    r = math.sqrt(float(ropt_sq))
    scale = size / (span + 2 * pad)
    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}" '
        f'viewBox="0 0 {size} {size}">',
        '<rect width="100%" height="100%" fill="white"/>',
        f'<polygon points="{poly_path(hull_p.vertices)}" fill="none" '
        'stroke="#888" stroke-width="1.5"/>',
        f'<polygon points="{poly_path(hull_q.vertices)}" fill="#cce5ff" '
        'fill-opacity="0.6" stroke="#1f6fbf" stroke-width="2"/>',
    ]
    for p in ps:
        out.append(f'<circle cx="{tx(p.x):.2f}" cy="{ty(p.y):.2f}" r="2.5" fill="#333"/>')
    for i in subset:
        p = ps[i]
        out.append(f'<circle cx="{tx(p.x):.2f}" cy="{ty(p.y):.2f}" r="4" fill="#d62728"/>')
    if res.witness_point is not None and ropt_sq > 0:
        w = res.witness_point
        out.append(
            f'<circle cx="{tx(w.x):.2f}" cy="{ty(w.y):.2f}" r="{r * scale:.2f}" '
            'fill="none" stroke="#d62728" stroke-dasharray="4 3" stroke-width="1.5"/>'
        )
    out.append("</svg>")
    return "\n".join(out) + "\n"
