"""Rejection filters for putative parameter matrices.

Every check here is a *necessary* condition: INFEASIBLE rules the
configuration out, FEASIBLE only means "not rejected" and never proves
that a coloring exists.  The core inequality is that the L1 distance
between two adjacency rows bounds the L1 distance between the matching
parameter rows from above:

    d([M]^u, [M]^v) >= d([S]^{f(u)}, [S]^{f(v)}).

For a simple r-regular graph the left side equals 2(r - h), where h is the
number of common neighbors of u and v, which gives the simple-graph bound
d([S]^i, [S]^j) <= 2(r - h).  For two colors this becomes the window
h <= b + c <= 2r - h, sharpened to h + 2 <= b + c when u and v are
adjacent.  At equality the color distributions over N(u) & N(v),
N(u) \\ N(v), and N(v) \\ N(u) are pinned down: the triangle inequality
|x - y| <= |x| + |y| used row-by-row is tight only when no cancellation
occurs, which forces intersection counts min(s_i, s_j) and difference
counts max(s_i - s_j, 0) per color.  Those elementwise formulas are the
equality case worked out explicitly, since only the existence of forced
distributions is usually stated.

Vertex indices are 0-based, color indices 1-based throughout.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction

from .coloring import TwoColorParams
from .graphs import Graph, distance_matrices, distance_polynomials, intersection_array
from .ratmat import RationalMatrix, l1_row_distance, rat

__all__ = [
    "FilterVerdict",
    "ForcedDistributions",
    "ForcedSets",
    "PairContext",
    "VerdictStatus",
    "drg_check",
    "distance_power_check",
    "forced_distributions",
    "pair_color_feasible",
    "simple_pair_bound",
    "two_color_check",
    "two_color_forced_sets",
]


class VerdictStatus(str, Enum):
    FEASIBLE = "feasible"
    INFEASIBLE = "infeasible"
    INCONCLUSIVE = "inconclusive"


@dataclass(frozen=True)
class FilterVerdict:
    """Outcome of one rejection test, with both sides kept as exact rationals."""

    status: VerdictStatus
    lhs: Fraction | None = None
    rhs: Fraction | None = None
    violated: str | None = None

    def __post_init__(self) -> None:
        if self.status is VerdictStatus.INFEASIBLE and not self.violated:
            raise ValueError("an INFEASIBLE verdict must name the violated inequality")

    @property
    def feasible(self) -> bool:
        return self.status is VerdictStatus.FEASIBLE

    @property
    def infeasible(self) -> bool:
        return self.status is VerdictStatus.INFEASIBLE

    def to_json(self) -> dict:
        return {
            "status": self.status.value,
            "lhs": None if self.lhs is None else str(self.lhs),
            "rhs": None if self.rhs is None else str(self.rhs),
            "violated": self.violated,
        }


@dataclass(frozen=True)
class PairContext:
    """Valency r, common-neighbor count h, and adjacency of a vertex pair."""

    r: Fraction
    h: int
    adjacent: bool

    def __post_init__(self) -> None:
        object.__setattr__(self, "r", rat(self.r))
        if self.h < 0 or self.h > self.r:
            raise ValueError("h must satisfy 0 <= h <= r")
        if self.adjacent and self.h > self.r - 1:
            raise ValueError("an adjacent pair has at most r - 1 common neighbors")


def pair_color_feasible(
    m: RationalMatrix, s: RationalMatrix, u: int, v: int, i: int, j: int
) -> FilterVerdict:
    """Reject colors (i, j) for vertices (u, v) when the row-distance bound fails."""
    lhs = l1_row_distance(m, u, v)
    rhs = l1_row_distance(s, i - 1, j - 1)
    if lhs < rhs:
        return FilterVerdict(
            VerdictStatus.INFEASIBLE,
            lhs,
            rhs,
            f"d(M rows {u},{v}) = {lhs} < {rhs} = d(S rows {i},{j})",
        )
    return FilterVerdict(VerdictStatus.FEASIBLE, lhs, rhs)


def simple_pair_bound(ctx: PairContext, s: RationalMatrix, i: int, j: int) -> FilterVerdict:
    """Simple-graph form: d([S]^i, [S]^j) must be at most 2(r - h)."""
    for idx, total in enumerate(s.row_sums()):
        if total != ctx.r:
            raise ValueError(f"row {idx} of S sums to {total}, expected r = {ctx.r}")
    lhs = l1_row_distance(s, i - 1, j - 1)
    rhs = 2 * (ctx.r - ctx.h)
    if lhs > rhs:
        return FilterVerdict(
            VerdictStatus.INFEASIBLE,
            lhs,
            rhs,
            f"d(S rows {i},{j}) = {lhs} > {rhs} = 2(r - h)",
        )
    return FilterVerdict(VerdictStatus.FEASIBLE, lhs, rhs)


@dataclass(frozen=True)
class ForcedDistributions:
    """Per-color counts forced on N(u) & N(v), N(u) \\ N(v), N(v) \\ N(u) at equality."""

    intersection: tuple[Fraction, ...]
    only_u: tuple[Fraction, ...]
    only_v: tuple[Fraction, ...]


def forced_distributions(
    ctx: PairContext, s: RationalMatrix, i: int, j: int
) -> ForcedDistributions | None:
    """Color distributions pinned down when d([S]^i,[S]^j) = 2(r - h) exactly.

    Absent unless the equality holds.  The formulas are the no-cancellation
    case per color: intersection min(s_i, s_j), differences the positive
    parts, so intersection sums to h and each difference to r - h.
    """
    if l1_row_distance(s, i - 1, j - 1) != 2 * (ctx.r - ctx.h):
        return None
    ri, rj = s.row(i - 1), s.row(j - 1)
    inter = tuple(min(a, b) for a, b in zip(ri, rj))
    only_u = tuple(max(a - b, Fraction(0)) for a, b in zip(ri, rj))
    only_v = tuple(max(b - a, Fraction(0)) for a, b in zip(ri, rj))
    return ForcedDistributions(inter, only_u, only_v)


def two_color_check(ctx: PairContext, params: TwoColorParams) -> FilterVerdict:
    """Window check h <= b+c <= 2r-h, with h+2 <= b+c for adjacent pairs.

    Applies to a pair of *differently colored* vertices; INFEASIBLE means
    such a pair cannot exist, i.e. the two endpoints are forced to share a
    color in every perfect coloring with these parameters.
    """
    if params.r != ctx.r:
        raise ValueError(f"parameter valency {params.r} differs from pair valency {ctx.r}")
    bc = params.b + params.c
    low = Fraction(ctx.h)
    high = 2 * ctx.r - ctx.h
    if bc < low:
        return FilterVerdict(
            VerdictStatus.INFEASIBLE, bc, low, f"b+c = {bc} < {low} = h"
        )
    if ctx.adjacent and bc < low + 2:
        return FilterVerdict(
            VerdictStatus.INFEASIBLE, bc, low + 2, f"b+c = {bc} < {low + 2} = h+2 (adjacent pair)"
        )
    if bc > high:
        return FilterVerdict(
            VerdictStatus.INFEASIBLE, bc, high, f"b+c = {bc} > {high} = 2r-h"
        )
    return FilterVerdict(VerdictStatus.FEASIBLE, bc, high)


@dataclass(frozen=True)
class ForcedSets:
    """Monochromatic side sets at a window boundary, for u of color 1, v of color 2.

    ``excludes_endpoints`` marks the adjacent lower boundary, where the
    forcing applies to N(u) \\ (N(v) + {v}) and N(v) \\ (N(u) + {u}); at the
    other boundaries the endpoints already carry the forced color.
    """

    only_u_color: int
    only_v_color: int
    excludes_endpoints: bool
    bound: str  # "lower" | "adjacent-lower" | "upper"


def two_color_forced_sets(ctx: PairContext, params: TwoColorParams) -> ForcedSets | None:
    """Forced side-set colors when b+c sits on a boundary of its window.

    At b+c = h the sets N(u) \\ N(v) and N(v) \\ N(u) take the colors of u
    and v respectively; at b+c = 2r-h the colors swap.  For adjacent pairs
    the effective lower boundary is b+c = h+2, and the forcing then applies
    to the side sets with the opposite endpoint removed.
    """
    if params.r != ctx.r:
        raise ValueError(f"parameter valency {params.r} differs from pair valency {ctx.r}")
    bc = params.b + params.c
    if bc == 2 * ctx.r - ctx.h:
        return ForcedSets(2, 1, excludes_endpoints=False, bound="upper")
    if ctx.adjacent:
        if bc == ctx.h + 2:
            return ForcedSets(1, 2, excludes_endpoints=True, bound="adjacent-lower")
        return None
    if bc == ctx.h:
        return ForcedSets(1, 2, excludes_endpoints=False, bound="lower")
    return None


def distance_power_check(
    m: RationalMatrix, s: RationalMatrix, l: int, u: int, v: int, i: int, j: int
) -> FilterVerdict:
    """Row-distance bound applied to the walk-counting matrices M^l and S^l."""
    if l < 1:
        raise ValueError("power must be a positive integer")
    return pair_color_feasible(m**l, s**l, u, v, i, j)


def drg_check(
    g: Graph, s: RationalMatrix, radius: int, u: int, v: int, i: int, j: int
) -> tuple[FilterVerdict, FilterVerdict]:
    """Ball and sphere bounds in a distance-regular graph.

    |B_r(u) symdiff B_r(v)| must dominate the distance between rows i, j of
    the ball polynomial image of S, and likewise for spheres.  Returns the
    (ball, sphere) verdicts.
    """
    ia = intersection_array(g)
    if ia is None:
        raise ValueError("graph is not distance-regular")
    mats = distance_matrices(g)
    if not 1 <= radius <= len(mats) - 1:
        raise ValueError(f"radius must be in 1..{len(mats) - 1}")
    polys = distance_polynomials(ia)

    ball_indicator = mats[0]
    for t in range(1, radius + 1):
        ball_indicator = ball_indicator + mats[t]

    def side(indicator: RationalMatrix, image: RationalMatrix, kind: str) -> FilterVerdict:
        lhs = l1_row_distance(indicator, u, v)
        rhs = l1_row_distance(image, i - 1, j - 1)
        if lhs < rhs:
            return FilterVerdict(
                VerdictStatus.INFEASIBLE,
                lhs,
                rhs,
                f"|{kind}_{radius}({u}) symdiff {kind}_{radius}({v})| = {lhs} < {rhs}",
            )
        return FilterVerdict(VerdictStatus.FEASIBLE, lhs, rhs)

    ball = side(ball_indicator, polys.ball[radius](s), "B")
    sphere = side(mats[radius], polys.sphere[radius](s), "W")
    return ball, sphere
