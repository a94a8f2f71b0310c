"""Shared test oracles: direct neighbor counting on explicit patches/segments.

These deliberately avoid the quotient machinery so that quotient-based
parameter computations can be checked against an independent route.
"""

from __future__ import annotations

from fractions import Fraction

from perfcolor.coloring import Coloring
from perfcolor.periodic import CirculantSpec, GridSpec
from perfcolor.ratmat import RationalMatrix


def grid_params_by_patch_count(
    spec: GridSpec, periods: tuple[int, int], coloring: Coloring, patch: int = 20
) -> RationalMatrix | None:
    """Parameters of a doubly periodic grid coloring via explicit patch counting.

    Lays out a patch x patch window colored by periodic extension and counts
    neighbor colors directly at every cell whose neighbors stay inside.
    Returns None when some class has inconsistent counts.
    """
    p, q = periods
    k = coloring.k
    window = [
        [coloring.colors[(x % p) * q + (y % q)] for y in range(patch)] for x in range(patch)
    ]
    rad = spec.radius
    rows: list[list[Fraction] | None] = [None] * k
    for x in range(rad, patch - rad):
        for y in range(rad, patch - rad):
            sums = [Fraction(0)] * k
            for ox, oy in spec.offsets:
                sums[window[x + ox][y + oy] - 1] += 1
            i = window[x][y] - 1
            if rows[i] is None:
                rows[i] = sums
            elif rows[i] != sums:
                return None
    if any(r is None for r in rows):
        return None
    return RationalMatrix(rows)  # type: ignore[arg-type]


def circulant_params_by_segment_count(
    spec: CirculantSpec, period: int, coloring: Coloring, segment: int = 100
) -> RationalMatrix | None:
    """Parameters of a periodic circulant coloring via counting on a segment."""
    k = coloring.k
    line = [coloring.colors[x % period] for x in range(segment)]
    rad = max(spec.ds)
    rows: list[list[Fraction] | None] = [None] * k
    for x in range(rad, segment - rad):
        sums = [Fraction(0)] * k
        for d in spec.ds:
            sums[line[x + d] - 1] += 1
            sums[line[x - d] - 1] += 1
        i = line[x] - 1
        if rows[i] is None:
            rows[i] = sums
        elif rows[i] != sums:
            return None
    if any(r is None for r in rows):
        return None
    return RationalMatrix(rows)  # type: ignore[arg-type]


def normalized_coloring(colors: tuple[int, ...]) -> Coloring:
    """Relabel arbitrary positive color values to 1..k by first appearance."""
    relabel: dict[int, int] = {}
    out = []
    for c in colors:
        if c not in relabel:
            relabel[c] = len(relabel) + 1
        out.append(relabel[c])
    return Coloring(tuple(out), len(relabel))
