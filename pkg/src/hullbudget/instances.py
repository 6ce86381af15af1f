"""Instance generation and the plain-text point-file format.

File format: UTF-8 text, one point per line as two decimal integers separated
by whitespace; blank lines and lines starting with ``#`` are ignored.  Parsing
is strict: anything else is rejected with an exact line and column.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .geometry import PointSet

SHAPES = ("uniform-disk", "grid", "convex", "clustered")

_INT_RE = re.compile(r"[+-]?[0-9]+$")


class ParseError(ValueError):
    def __init__(self, line: int, col: int, message: str):
        self.line = line
        self.col = col
        super().__init__(f"line {line}, column {col}: {message}")


def parse_points(text: str) -> list[tuple[int, int]]:
    pts: list[tuple[int, int]] = []
    for ln, raw in enumerate(text.splitlines(), start=1):
        line = raw.rstrip("\n")
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        tokens = line.split()
        if len(tokens) != 2:
            raise ParseError(ln, 1, f"expected two integers, got {len(tokens)} tokens")
        coords = []
        for tok in tokens:
            col = line.index(tok) + 1
            if not _INT_RE.match(tok):
                raise ParseError(ln, col, f"not an integer: {tok!r}")
            coords.append(int(tok))
        pts.append((coords[0], coords[1]))
    if not pts:
        raise ParseError(1, 1, "no points in file")
    return pts


def format_points(coords: Sequence[tuple[int, int]], header: Sequence[str] = ()) -> str:
    lines = [f"# {h}" for h in header]
    lines.extend(f"{x} {y}" for x, y in coords)
    return "\n".join(lines) + "\n"


def load_pointset(path: str) -> PointSet:
    with open(path, "r", encoding="utf-8") as fh:
        return PointSet(parse_points(fh.read()))


# ---------------------------------------------------------------------------
# generators


def generate(shape: str, n: int, coord_bound: int, seed: int) -> list[tuple[int, int]]:
    """n distinct integer points of the requested shape, deterministic in the
    seed.  ``coord_bound`` must be at least n (collision headroom)."""
    if shape not in SHAPES:
        raise ValueError(f"unknown shape {shape!r}; choose from {SHAPES}")
    if n < 1:
        raise ValueError("n must be >= 1")
    if coord_bound < n:
        raise ValueError("coord_bound must be at least n")
    rng = np.random.Generator(np.random.PCG64(np.random.SeedSequence(seed)))
    if shape == "uniform-disk":
        return _gen_disk(n, coord_bound, rng)
    if shape == "grid":
        return _gen_grid(n, coord_bound, rng)
    if shape == "convex":
        return _gen_convex(n, coord_bound, rng)
    return _gen_clustered(n, coord_bound, rng)


def _gen_disk(n: int, b: int, rng) -> list[tuple[int, int]]:
    got: dict[tuple[int, int], None] = {}
    bb = b * b
    for _ in range(200):
        xs = rng.integers(-b, b + 1, size=4 * n + 16)
        ys = rng.integers(-b, b + 1, size=4 * n + 16)
        for x, y in zip(xs, ys):
            if x * x + y * y <= bb:
                got.setdefault((int(x), int(y)))
                if len(got) == n:
                    return list(got)
    raise ValueError(f"could not place {n} distinct points in a disk of radius {b}")


def _gen_grid(n: int, b: int, rng) -> list[tuple[int, int]]:
    side = 2 * b + 1
    if side * side < n:
        raise ValueError(f"grid [-{b},{b}]^2 has fewer than {n} cells")
    got: dict[tuple[int, int], None] = {}
    for _ in range(200):
        cells = rng.integers(0, side * side, size=2 * n + 16)
        for c in cells:
            got.setdefault((int(c) % side - b, int(c) // side - b))
            if len(got) == n:
                return list(got)
    raise ValueError("grid sampling failed to reach n distinct cells")


def _gen_convex(n: int, b: int, rng) -> list[tuple[int, int]]:
    """Exactly n integer points in strictly convex position within [-b, b]^2.

    Random difference construction: sorted coordinate samples are split into
    two chains to make signed displacement lists summing to zero, paired up
    randomly, sorted by angle, and prefix-summed.  Draws are retried until
    the hull has exactly n vertices (duplicate directions collapse vertices).
    """
    if n == 1:
        return [(int(rng.integers(-b, b + 1)), int(rng.integers(-b, b + 1)))]
    if n == 2:
        while True:
            p = (int(rng.integers(-b, b + 1)), int(rng.integers(-b, b + 1)))
            q = (int(rng.integers(-b, b + 1)), int(rng.integers(-b, b + 1)))
            if p != q:
                return [p, q]
    span = 2 * b
    for _ in range(400):
        dx = _valtr_deltas(n, span, rng)
        dy = _valtr_deltas(n, span, rng)
        rng.shuffle(dy)
        vecs = list(zip(dx, dy))
        vecs.sort(key=lambda v: (math.atan2(v[1], v[0])))
        pts = []
        x = y = 0
        for vx, vy in vecs:
            x += int(vx)
            y += int(vy)
            pts.append((x, y))
        xs = [p[0] for p in pts]
        ys = [p[1] for p in pts]
        shift_x = -(min(xs) + max(xs)) // 2
        shift_y = -(min(ys) + max(ys)) // 2
        pts = [(x + shift_x, y + shift_y) for x, y in pts]
        if max(abs(c) for p in pts for c in p) > b:
            continue
        if len(set(pts)) != n:
            continue
        ps = PointSet(pts)
        if ps.hull.m == n:
            return pts
    raise ValueError(
        f"failed to build {n} points in convex position within bound {b}; "
        "try a larger coord_bound")


def _valtr_deltas(n: int, span: int, rng) -> list[int]:
    """n signed integer displacements summing to zero, from sorted samples."""
    xs = sorted(int(v) for v in rng.integers(0, span + 1, size=n))
    lo, hi = xs[0], xs[-1]
    mids = xs[1:-1]
    sides = rng.integers(0, 2, size=len(mids))
    up = [lo] + [m for m, s in zip(mids, sides) if s == 0] + [hi]
    dn = [lo] + [m for m, s in zip(mids, sides) if s == 1] + [hi]
    deltas = [b_ - a_ for a_, b_ in zip(up, up[1:])]
    deltas += [a_ - b_ for a_, b_ in zip(dn, dn[1:])]
    return deltas


def _gen_clustered(n: int, b: int, rng) -> list[tuple[int, int]]:
    ncl = max(1, int(round(math.sqrt(n))))
    half = max(1, b // 2)
    centers = [(int(rng.integers(-half, half + 1)), int(rng.integers(-half, half + 1)))
               for _ in range(ncl)]
    sigma = max(1.0, b / 20.0)
    got: dict[tuple[int, int], None] = {}
    for _ in range(400):
        which = rng.integers(0, ncl, size=2 * n + 16)
        offs = rng.normal(0.0, sigma, size=(2 * n + 16, 2))
        for w, (ox, oy) in zip(which, offs):
            cx, cy = centers[int(w)]
            x = min(b, max(-b, cx + int(round(ox))))
            y = min(b, max(-b, cy + int(round(oy))))
            got.setdefault((x, y))
            if len(got) == n:
                return list(got)
    raise ValueError(f"clustered sampling failed to reach {n} distinct points")
