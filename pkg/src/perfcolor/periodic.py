"""Infinite periodic graphs handled through exact finite quotients.

Two families are covered:

* circulant (multi)graphs on the integers with connection multiset D,
  where x ~ y iff |x - y| is in D (2m-regular counting multiplicity);
* plane grids on Z^2 given by a finite offset set closed under negation
  (square grid: the four unit offsets; triangular grid: those plus
  +-(1,-1), the standard coordinatization of the 6-regular lattice in
  which adjacent vertices share exactly two common neighbors).

A coloring with period T (resp. doubly periodic with periods dividing a
full-rank lattice L) factors through the quotient Z_T (resp. Z^2/L).  The
quotient is built as a *multigraph* whose integer entry at (x, y) counts
the connection offsets that land on y from x, including loops when an
offset reduces to zero.  With that convention a periodic coloring of the
infinite graph is perfect if and only if its quotient coloring is perfect
on the quotient multigraph, with the same parameter matrix, so finite
searches below are exact and need no "period large enough" caveats.

Multiset conventions: when D has repeated elements the common-neighbor
count of the pair (x, x+t) intersects {+-d_i} with {t +- d_i} counting
each value with the minimum of its two multiplicities.

Searches report REJECTED / WITNESS / INCONCLUSIVE.  REJECTED is a proof of
nonexistence on the infinite graph (an empty patch search, or an empty
search of a quotient that every coloring is forced onto); a failed witness
search at fixed periods is only INCONCLUSIVE.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from itertools import combinations, product
from math import gcd

from .coloring import Coloring, TwoColorParams, induced_parameters, two_color_matrix
from .filters import FilterVerdict, PairContext, VerdictStatus, two_color_check
from .graphs import Graph
from .ratmat import RationalMatrix

__all__ = [
    "BudgetExceededError",
    "CirculantSpec",
    "DEFAULT_ENUM_BUDGET",
    "DEFAULT_NODE_BUDGET",
    "DeltaVerdict",
    "EnumeratedColoring",
    "GridRejectReport",
    "GridSpec",
    "PeriodConstraint",
    "SearchOutcome",
    "SearchStats",
    "SearchStatus",
    "circulant_enumerate",
    "circulant_h",
    "circulant_period_filter",
    "circulant_quotient",
    "grid_h",
    "grid_reject_2color",
    "offset_automorphisms",
    "patch_search",
    "periodic_coloring_canonical",
    "torus_quotient",
    "torus_search",
]

DEFAULT_ENUM_BUDGET = 2**20
DEFAULT_NODE_BUDGET = 10**7


class BudgetExceededError(RuntimeError):
    """Raised when a search or enumeration would exceed its configured budget."""


# ---------------------------------------------------------------------------
# circulants


@dataclass(frozen=True)
class CirculantSpec:
    """Connection multiset D = {d_1..d_m}; repeats are kept and give multigraphs."""

    ds: tuple[int, ...]

    def __post_init__(self) -> None:
        ds = tuple(sorted(self.ds))
        if not ds or any(d < 1 for d in ds):
            raise ValueError("connection multiset must be non-empty positive integers")
        object.__setattr__(self, "ds", ds)

    @property
    def m(self) -> int:
        return len(self.ds)

    @property
    def valency(self) -> int:
        return 2 * self.m

    @classmethod
    def parse(cls, text: str) -> "CirculantSpec":
        return cls(tuple(int(part) for part in text.split(",") if part.strip()))


def circulant_h(spec: CirculantSpec, t: int) -> int:
    """Common neighbors of x and x+t: |{+-d_i} multiset-cap {t +- d_i}|."""
    if t < 1:
        raise ValueError("t must be a positive integer")
    left = Counter()
    right = Counter()
    for d in spec.ds:
        left[d] += 1
        left[-d] += 1
        right[t + d] += 1
        right[t - d] += 1
    return sum(min(n, right[v]) for v, n in left.items())


@dataclass(frozen=True)
class PeriodConstraint:
    """Shifts t whose window condition fired; the period must divide each of them."""

    fired: tuple[int, ...]
    divides: int  # gcd of fired, 0 when nothing fired

    def satisfied_by(self, period: int) -> bool:
        return self.divides == 0 or self.divides % period == 0


def circulant_period_filter(
    spec: CirculantSpec, params: TwoColorParams, t_max: int
) -> PeriodConstraint:
    """Collect every t in 1..t_max that forces x and x+t monochromatic.

    The condition at shift t with h = circulant_h(spec, t) is
    b+c > 4m - h, or b+c < h, or b+c < h+2 when t is itself a connection
    length.  Any of these contradicts a differently colored pair at
    distance t, so the coloring's period must divide every fired t, hence
    their gcd.
    """
    if params.r != spec.valency:
        raise ValueError(f"parameter valency {params.r} != 2m = {spec.valency}")
    bc = params.b + params.c
    fired = []
    for t in range(1, t_max + 1):
        h = circulant_h(spec, t)
        if bc > 4 * spec.m - h or bc < h or (t in spec.ds and bc < h + 2):
            fired.append(t)
    divides = 0
    for t in fired:
        divides = gcd(divides, t)
    return PeriodConstraint(tuple(fired), divides)


def circulant_quotient(spec: CirculantSpec, period: int) -> Graph:
    """Quotient multigraph on Z_period; entry (x, y) counts offsets +-d landing on y."""
    if period < 1:
        raise ValueError("period must be a positive integer")
    grid = [[0] * period for _ in range(period)]
    for x in range(period):
        for d in spec.ds:
            grid[x][(x + d) % period] += 1
            grid[x][(x - d) % period] += 1
    adjacency = RationalMatrix(grid)
    simple = all(
        grid[x][x] == 0 and all(w in (0, 1) for w in grid[x]) for x in range(period)
    )
    return Graph(adjacency, simple=simple, labels=tuple(str(x) for x in range(period)))


def _cyclic_canonical(assignment: tuple[int, ...]) -> tuple[int, ...]:
    """Lexicographically least member of the orbit under rotation and color renaming."""
    n = len(assignment)
    doubled = assignment + assignment
    best: tuple[int, ...] | None = None
    for s in range(n):
        relabel: dict[int, int] = {}
        out = []
        for c in doubled[s : s + n]:
            if c not in relabel:
                relabel[c] = len(relabel) + 1
            out.append(relabel[c])
        cand = tuple(out)
        if best is None or cand < best:
            best = cand
    assert best is not None
    return best


@dataclass(frozen=True)
class EnumeratedColoring:
    coloring: Coloring
    s: RationalMatrix


def circulant_enumerate(
    spec: CirculantSpec, period: int, k: int, budget: int = DEFAULT_ENUM_BUDGET
) -> tuple[EnumeratedColoring, ...]:
    """All perfect colorings of the period quotient in at most k colors.

    A coloring of Z_period is perfect on the quotient multigraph exactly
    when its periodic extension is perfect on the infinite circulant, so
    this enumeration is a complete census at the given period.  Results are
    deduplicated up to rotation of Z_period and renaming of colors; the
    stored representative is the lexicographically least orbit member, so
    output is stable across runs.
    """
    if k < 1:
        raise ValueError("k must be positive")
    if k**period > budget:
        raise BudgetExceededError(
            f"{k}^{period} colorings exceed the budget of {budget}"
        )
    quotient = circulant_quotient(spec, period)
    found = []
    for assignment in product(range(1, k + 1), repeat=period):
        if _cyclic_canonical(assignment) != assignment:
            continue
        f = Coloring(assignment, max(assignment))
        s = induced_parameters(quotient, f)
        if s is not None:
            found.append(EnumeratedColoring(f, s))
    return tuple(found)


# ---------------------------------------------------------------------------
# grids


@dataclass(frozen=True)
class GridSpec:
    """Neighbor offsets of a plane lattice graph; closed under negation, no origin."""

    offsets: frozenset[tuple[int, int]]

    def __post_init__(self) -> None:
        offs = frozenset((int(x), int(y)) for x, y in self.offsets)
        if not offs:
            raise ValueError("offset set must be non-empty")
        if (0, 0) in offs:
            raise ValueError("offsets must exclude the origin")
        if any((-x, -y) not in offs for x, y in offs):
            raise ValueError("offset set must be closed under negation")
        object.__setattr__(self, "offsets", offs)

    @classmethod
    def square(cls) -> "GridSpec":
        return cls(frozenset({(1, 0), (-1, 0), (0, 1), (0, -1)}))

    @classmethod
    def triangular(cls) -> "GridSpec":
        """Six offsets +-(1,0), +-(0,1), +-(1,-1); see the module notes."""
        return cls(frozenset({(1, 0), (-1, 0), (0, 1), (0, -1), (1, -1), (-1, 1)}))

    @classmethod
    def parse(cls, text: str) -> "GridSpec":
        """Parse "1,0;0,1;1,-1"; negations are added automatically."""
        offs = set()
        for part in text.split(";"):
            part = part.strip()
            if not part:
                continue
            x, y = (int(p) for p in part.split(","))
            offs.add((x, y))
            offs.add((-x, -y))
        return cls(frozenset(offs))

    @property
    def valency(self) -> int:
        return len(self.offsets)

    @property
    def radius(self) -> int:
        return max(max(abs(x), abs(y)) for x, y in self.offsets)


def grid_h(spec: GridSpec, delta: tuple[int, int]) -> tuple[int, bool]:
    """Common-neighbor count of x and x+delta, plus whether the pair is adjacent."""
    if delta == (0, 0):
        raise ValueError("delta must be nonzero")
    dx, dy = delta
    shifted = {(dx + x, dy + y) for x, y in spec.offsets}
    return len(spec.offsets & shifted), delta in spec.offsets


# --- integer lattice helpers ------------------------------------------------


def _ext_gcd(a: int, b: int) -> tuple[int, int, int]:
    if b == 0:
        return (abs(a), 1 if a >= 0 else -1, 0)
    g, x, y = _ext_gcd(b, a % b)
    return (g, y, x - (a // b) * y)


def _lattice_basis(vectors: list[tuple[int, int]]) -> list[tuple[int, int]]:
    """Row-style Hermite basis of the sublattice of Z^2 generated by the vectors.

    Returns [] (rank 0), [(a, b)] (rank 1), or [(a, b), (0, d)] with a, d > 0.
    """
    pivot: tuple[int, int] | None = None
    tail = 0  # generator of the y-only rows
    for vec in vectors:
        x, y = vec
        if x == 0 and y == 0:
            continue
        if x == 0:
            tail = gcd(tail, abs(y))
            continue
        if pivot is None:
            pivot = (x, y)
            continue
        px, py = pivot
        g, s, t = _ext_gcd(px, x)
        new_pivot = (g, s * py + t * y)
        leftover_y = (px // g) * y - (x // g) * py
        tail = gcd(tail, abs(leftover_y))
        pivot = new_pivot
    basis: list[tuple[int, int]] = []
    if pivot is not None:
        a, b = pivot
        if a < 0:
            a, b = -a, -b
        if tail:
            b %= tail
        basis.append((a, b))
    if tail:
        basis.append((0, tail))
    return basis


def _reduce_mod_basis(x: int, y: int, basis: list[tuple[int, int]]) -> tuple[int, int]:
    (a, b), (_, d) = basis
    q = x // a
    x -= q * a
    y -= q * b
    return x, y % d


def _lattice_quotient(spec: GridSpec, basis: list[tuple[int, int]]) -> Graph:
    """Quotient multigraph of the grid by a full-rank sublattice in Hermite form."""
    (a, _), (_, d) = basis
    residues = [(i, j) for i in range(a) for j in range(d)]
    index = {res: v for v, res in enumerate(residues)}
    n = len(residues)
    grid = [[0] * n for _ in range(n)]
    for (x, y), v in index.items():
        for ox, oy in spec.offsets:
            w = index[_reduce_mod_basis(x + ox, y + oy, basis)]
            grid[v][w] += 1
    adjacency = RationalMatrix(grid)
    simple = all(
        grid[v][v] == 0 and all(w in (0, 1) for w in grid[v]) for v in range(n)
    )
    labels = tuple(f"({x},{y})" for x, y in residues)
    return Graph(adjacency, simple=simple, labels=labels)


def torus_quotient(spec: GridSpec, periods: tuple[int, int]) -> Graph:
    """Quotient of the grid on Z_p x Z_q; vertex (x, y) sits at index x*q + y."""
    p, q = periods
    if p < 1 or q < 1:
        raise ValueError("periods must be positive")
    return _lattice_quotient(spec, [(p, 0), (0, q)])


# --- exhaustive quotient search ----------------------------------------------


class SearchStatus(str, Enum):
    REJECTED = "rejected"
    WITNESS = "witness"
    INCONCLUSIVE = "inconclusive"


@dataclass(frozen=True)
class SearchStats:
    nodes: int
    complete: bool
    detail: str


@dataclass(frozen=True)
class SearchOutcome:
    status: SearchStatus
    witnesses: tuple[Coloring, ...] = ()
    stats: SearchStats = field(default=SearchStats(0, True, ""))

    @property
    def witness(self) -> Coloring | None:
        return self.witnesses[0] if self.witnesses else None

    def to_json(self) -> dict:
        return {
            "status": self.status.value,
            "witness": self.witness.to_json() if self.witness else None,
            "witnesses": [w.to_json() for w in self.witnesses],
            "certificate": {
                "nodes": self.stats.nodes,
                "complete": self.stats.complete,
                "detail": self.stats.detail,
            },
        }


def _search_quotient_colorings(
    g: Graph,
    s: RationalMatrix,
    *,
    find_all: bool,
    node_budget: int = DEFAULT_NODE_BUDGET,
) -> tuple[list[Coloring], int, bool]:
    """Backtracking over colorings of a finite (multi)graph with exact target rows.

    A vertex of color i must see exactly s[i, j] total weight of color-j
    neighbors.  Vertices are assigned in index order; partial assignments
    are pruned by comparing the weight already seen per color against the
    target row, with the unassigned remainder as slack.  All k colors must
    be used.  Returns (witnesses, nodes expanded, search completed).
    """
    n, k = g.n, s.rows
    m = g.adjacency
    # affected[u]: vertices whose neighborhood sum changes when u is colored,
    # with the weight each one sees (column u of the adjacency matrix)
    affected = [
        [(w, m[w, u]) for w in range(n) if m[w, u] != 0] for u in range(n)
    ]
    color = [0] * n
    seen = [[Fraction(0)] * (k + 1) for _ in range(n)]  # seen[u][j]: assigned weight of color j
    remaining = [sum(m.row(u), Fraction(0)) for u in range(n)]
    used = [0] * (k + 1)
    witnesses: list[Coloring] = []
    nodes = 0
    aborted = False

    def consistent(u: int) -> bool:
        i = color[u]
        row = s.row(i - 1)
        slack = remaining[u]
        need = Fraction(0)
        for j in range(1, k + 1):
            have = seen[u][j]
            want = row[j - 1]
            if have > want:
                return False
            need += want - have
        return need <= slack

    def dfs(u: int) -> bool:
        nonlocal nodes, aborted
        if u == n:
            if any(used[j] == 0 for j in range(1, k + 1)):
                return False
            f = Coloring(tuple(color), k)
            if induced_parameters(g, f) != s:  # defensive re-check; should be unreachable
                return False
            witnesses.append(f)
            return not find_all
        missing = sum(1 for j in range(1, k + 1) if used[j] == 0)
        if missing > n - u:
            return False
        for c in range(1, k + 1):
            nodes += 1
            if nodes > node_budget:
                aborted = True
                return True
            color[u] = c
            used[c] += 1
            ok = True
            for w, wt in affected[u]:
                seen[w][c] += wt
                remaining[w] -= wt
                if ok and color[w] and not consistent(w):
                    ok = False
            if ok and not consistent(u):
                ok = False
            if ok and dfs(u + 1):
                return True
            for w, wt in affected[u]:
                seen[w][c] -= wt
                remaining[w] += wt
            used[c] -= 1
            color[u] = 0
        return False

    dfs(0)
    return witnesses, nodes, not aborted


def _target_matrix(
    target: RationalMatrix | tuple | TwoColorParams, valency: int
) -> RationalMatrix:
    if isinstance(target, RationalMatrix):
        s = target
    elif isinstance(target, TwoColorParams):
        s = target.matrix()
    else:
        b, c = target
        s = two_color_matrix(b, c, valency)
    if any(total != valency for total in s.row_sums()):
        raise ValueError(f"target rows must sum to the valency {valency}")
    return s


def torus_search(
    spec: GridSpec,
    periods: tuple[int, int],
    target: RationalMatrix | tuple | TwoColorParams,
    *,
    budget: int = DEFAULT_ENUM_BUDGET,
    find_all: bool = False,
) -> SearchOutcome:
    """Search doubly periodic colorings with the exact target parameter matrix.

    WITNESS carries quotient colorings that re-verify; no witness is only
    INCONCLUSIVE for the infinite grid, since other periods might work.
    """
    g = torus_quotient(spec, periods)
    s = _target_matrix(target, spec.valency)
    if s.rows ** g.n > budget:
        raise BudgetExceededError(
            f"{s.rows}^{g.n} colorings exceed the budget of {budget}"
        )
    witnesses, nodes, complete = _search_quotient_colorings(g, s, find_all=find_all)
    detail = f"torus {periods[0]}x{periods[1]}, {len(witnesses)} witness(es)"
    status = SearchStatus.WITNESS if witnesses else SearchStatus.INCONCLUSIVE
    return SearchOutcome(status, tuple(witnesses), SearchStats(nodes, complete, detail))


# --- two-color rejection over a window of differences -------------------------


@dataclass(frozen=True)
class DeltaVerdict:
    delta: tuple[int, int]
    h: int
    adjacent: bool
    verdict: FilterVerdict


@dataclass(frozen=True)
class GridRejectReport:
    verdict: FilterVerdict
    per_delta: tuple[DeltaVerdict, ...]
    monochromatic: tuple[tuple[int, int], ...]
    note: str | None = None


def _coset_sizes(offsets: frozenset[tuple[int, int]], g: tuple[int, int]) -> list[int]:
    """Sizes of offset classes modulo the rank-1 lattice Z*g."""
    gx, gy = g
    remaining = list(offsets)
    sizes = []
    while remaining:
        o = remaining.pop()
        cls = [o]
        rest = []
        for other in remaining:
            dx, dy = o[0] - other[0], o[1] - other[1]
            if gx:
                multiple = dx % gx == 0 and dy == (dx // gx) * gy
            else:
                multiple = dx == 0 and dy % gy == 0
            (cls if multiple else rest).append(other)
        remaining = rest
        sizes.append(len(cls))
    return sizes


def _subset_sums(sizes: list[int]) -> set[int]:
    sums = {0}
    for s in sizes:
        sums |= {x + s for x in sums}
    return sums


def grid_reject_2color(
    spec: GridSpec,
    params: TwoColorParams,
    *,
    window: int | None = None,
    quotient_budget: int = DEFAULT_ENUM_BUDGET,
) -> GridRejectReport:
    """Scan pair differences, derive monochromatic directions, and try to reject.

    Every difference delta in the window gets the two-color window check;
    an INFEASIBLE delta means x and x+delta share a color in every perfect
    (b,c)-coloring, i.e. the coloring is invariant under translation by
    delta.  Consequences drawn from the invariant directions:

    * full-rank direction lattice: the coloring factors through the finite
      quotient, which is searched outright for the parameters (in both
      orientations); an empty search is a proof of nonexistence;
    * rank one: neighbors of a vertex fall into classes that are forced
      monochromatic, so b and c must each be a subset sum of the class
      sizes; otherwise nonexistence again.

    INFEASIBLE verdicts here are proofs; FEASIBLE only means no bound in
    the window fired, and INCONCLUSIVE means directions fired without a
    contradiction within the budget.
    """
    if params.r != spec.valency:
        raise ValueError(f"parameter valency {params.r} != |offsets| = {spec.valency}")
    w = window if window is not None else 2 * spec.radius
    per_delta = []
    mono = []
    for dx in range(0, w + 1):
        for dy in range(-w, w + 1):
            if dx == 0 and dy <= 0:
                continue  # one representative per +-delta pair
            delta = (dx, dy)
            h, adjacent = grid_h(spec, delta)
            verdict = two_color_check(PairContext(Fraction(spec.valency), h, adjacent), params)
            per_delta.append(DeltaVerdict(delta, h, adjacent, verdict))
            if verdict.infeasible:
                mono.append(delta)

    def report(verdict: FilterVerdict, note: str | None = None) -> GridRejectReport:
        return GridRejectReport(verdict, tuple(per_delta), tuple(mono), note)

    if not mono:
        return report(FilterVerdict(VerdictStatus.FEASIBLE))

    basis = _lattice_basis(mono)
    directions = ", ".join(str(d) for d in mono)
    if len(basis) == 2:
        index = basis[0][0] * basis[1][1]
        if 2**index > quotient_budget:
            return report(
                FilterVerdict(VerdictStatus.INCONCLUSIVE),
                f"monochromatic directions give an index-{index} quotient, over budget",
            )
        quotient = _lattice_quotient(spec, basis)
        targets = [params.matrix()]
        if params.b != params.c:
            targets.append(TwoColorParams(params.c, params.b, params.r).matrix())
        for s in targets:
            witnesses, _, _ = _search_quotient_colorings(quotient, s, find_all=False)
            if witnesses:
                return report(
                    FilterVerdict(VerdictStatus.FEASIBLE),
                    f"forced directions [{directions}] admit a periodic witness "
                    f"on the index-{index} quotient",
                )
        return report(
            FilterVerdict(
                VerdictStatus.INFEASIBLE,
                violated=(
                    f"directions [{directions}] are forced monochromatic, so any "
                    f"coloring factors through the index-{index} quotient, which "
                    f"admits no ({params.b},{params.c})-coloring in either orientation"
                ),
            )
        )

    # rank 1: per-vertex neighbor classes along the invariant direction
    g = basis[0]
    sizes = _coset_sizes(spec.offsets, g)
    sums = _subset_sums(sizes)
    for name, value in (("b", params.b), ("c", params.c)):
        if value.denominator != 1 or int(value) not in sums:
            return report(
                FilterVerdict(
                    VerdictStatus.INFEASIBLE,
                    violated=(
                        f"direction {g} is forced monochromatic; neighbor classes "
                        f"have sizes {sorted(sizes)}, and {name} = {value} is not a "
                        f"sum of class sizes"
                    ),
                )
            )
    return report(
        FilterVerdict(VerdictStatus.INCONCLUSIVE),
        f"directions [{directions}] are forced monochromatic but no contradiction follows",
    )


# --- patch search -------------------------------------------------------------


def patch_search(
    spec: GridSpec,
    target: RationalMatrix | tuple | TwoColorParams,
    size: tuple[int, int],
    *,
    node_budget: int = DEFAULT_NODE_BUDGET,
    require_two_interior_colors: bool = False,
) -> SearchOutcome:
    """Exhaust colorings of a finite window with exact constraints inside.

    Interior cells are those whose whole neighborhood lies in the window;
    each must match its row of the target matrix exactly.  Any perfect
    coloring of the plane restricts to a valid window coloring, so an empty
    search is a proof of nonexistence (REJECTED).  A non-empty search says
    nothing about the plane and is reported INCONCLUSIVE.

    For a (b, c) target the first interior cell's color is pinned to 1 and,
    when b != c, the swapped orientation (c, b) is searched as well; a plane
    coloring whose restriction colors that cell 2 turns into a valid
    pinned coloring of the swapped orientation, so the pair of runs is
    still exhaustive.  Explicit matrix targets are searched unpinned.

    ``require_two_interior_colors`` additionally demands two distinct
    interior colors; only sound for callers that separately rule out
    colorings whose interior is constant (e.g. when b >= 1 and the interior
    is deep enough that a constant interior violates its own row).
    """
    width, height = size
    if width < 1 or height < 1:
        raise ValueError("patch dimensions must be positive")
    cells = [(x, y) for y in range(height) for x in range(width)]
    index = {cell: i for i, cell in enumerate(cells)}
    interior = [
        index[(x, y)]
        for (x, y) in cells
        if all((x + ox, y + oy) in index for ox, oy in spec.offsets)
    ]
    if not interior:
        raise ValueError("patch too small: no cell has its whole neighborhood inside")
    interior_set = set(interior)

    if isinstance(target, (RationalMatrix,)):
        runs = [(_target_matrix(target, spec.valency), False)]
    else:
        params = (
            target
            if isinstance(target, TwoColorParams)
            else TwoColorParams(
                *(Fraction(v) for v in target), Fraction(spec.valency)
            )
        )
        runs = [(params.matrix(), True)]
        if params.b != params.c:
            runs.append((TwoColorParams(params.c, params.b, params.r).matrix(), True))

    nbr_idx = [
        [index[(x + ox, y + oy)] for ox, oy in spec.offsets if (x + ox, y + oy) in index]
        for (x, y) in cells
    ]

    total_nodes = 0
    complete = True
    for s, pin_first in runs:
        k = s.rows
        color = [0] * len(cells)
        seen = [[0] * (k + 1) for _ in range(len(cells))]
        remaining = [len(nbr_idx[c]) for c in range(len(cells))]
        pinned = interior[0] if pin_first else -1
        found = False
        nodes = 0

        def consistent(u: int) -> bool:
            row = s.row(color[u] - 1)
            need = 0
            for j in range(1, k + 1):
                have = seen[u][j]
                want = row[j - 1]
                if have > want:
                    return False
                need += want - have
            return need <= remaining[u]

        def dfs(u: int) -> bool:
            nonlocal nodes, found, complete
            if u == len(cells):
                if require_two_interior_colors and len({color[c] for c in interior_set}) < 2:
                    return False
                found = True
                return True
            choices = (1,) if u == pinned else tuple(range(1, k + 1))
            for c in choices:
                nodes += 1
                if total_nodes + nodes > node_budget:
                    complete = False
                    return True
                color[u] = c
                ok = True
                for w in nbr_idx[u]:
                    seen[w][c] += 1
                    remaining[w] -= 1
                    if ok and w in interior_set and color[w] and not consistent(w):
                        ok = False
                if ok and u in interior_set and not consistent(u):
                    ok = False
                if ok and dfs(u + 1):
                    return True
                for w in nbr_idx[u]:
                    seen[w][c] -= 1
                    remaining[w] += 1
                color[u] = 0
            return False

        dfs(0)
        total_nodes += nodes
        if found and complete:
            return SearchOutcome(
                SearchStatus.INCONCLUSIVE,
                (),
                SearchStats(
                    total_nodes,
                    True,
                    f"patch {width}x{height}: a valid window coloring exists",
                ),
            )
        if not complete:
            return SearchOutcome(
                SearchStatus.INCONCLUSIVE,
                (),
                SearchStats(total_nodes, False, f"patch {width}x{height}: node budget exhausted"),
            )
    return SearchOutcome(
        SearchStatus.REJECTED,
        (),
        SearchStats(
            total_nodes,
            True,
            f"patch {width}x{height}: no valid window coloring in any orientation",
        ),
    )


# --- symmetry helpers for uniqueness checks -----------------------------------


def offset_automorphisms(spec: GridSpec) -> tuple[tuple[tuple[int, int], tuple[int, int]], ...]:
    """Integer-linear maps with determinant +-1 permuting the offset set.

    These are the point symmetries of the lattice graph (rotations and
    reflections fixing the origin).  Requires the offsets to span the
    plane; the identity alone is returned otherwise.
    """
    offs = sorted(spec.offsets)
    basis_pair = None
    for e1, e2 in combinations(offs, 2):
        if e1[0] * e2[1] - e1[1] * e2[0] != 0:
            basis_pair = (e1, e2)
            break
    identity = ((1, 0), (0, 1))
    if basis_pair is None:
        return (identity,)
    e1, e2 = basis_pair
    det_e = e1[0] * e2[1] - e1[1] * e2[0]
    autos = set()
    for f1 in offs:
        for f2 in offs:
            # solve A e1 = f1, A e2 = f2 over the rationals
            num_a = f1[0] * e2[1] - f2[0] * e1[1]
            num_b = f2[0] * e1[0] - f1[0] * e2[0]
            num_c = f1[1] * e2[1] - f2[1] * e1[1]
            num_d = f2[1] * e1[0] - f1[1] * e2[0]
            if any(v % det_e for v in (num_a, num_b, num_c, num_d)):
                continue
            a, b, c, d = (v // det_e for v in (num_a, num_b, num_c, num_d))
            if abs(a * d - b * c) != 1:
                continue
            image = {(a * x + b * y, c * x + d * y) for x, y in offs}
            if image == spec.offsets:
                autos.add(((a, b), (c, d)))
    autos.add(identity)
    return tuple(sorted(autos))


def periodic_coloring_canonical(
    spec: GridSpec,
    periods: tuple[int, int],
    coloring: Coloring,
    *,
    modulus: int,
    use_symmetries: bool = True,
) -> tuple[int, ...]:
    """Canonical form of the plane coloring induced by a torus coloring.

    The torus coloring extends to the plane by periodicity; its orbit under
    translations, color renamings, and (optionally) the lattice's point
    symmetries is canonicalized as the least color sequence over a
    modulus-by-modulus window.  Both periods must divide the modulus so the
    window determines the coloring.  Two witnesses are the same pattern up
    to those motions iff their canonical forms are equal.
    """
    p, q = periods
    if modulus % p or modulus % q:
        raise ValueError("modulus must be a multiple of both periods")
    colors = coloring.colors

    def at(x: int, y: int) -> int:
        return colors[(x % p) * q + (y % q)]

    transforms = offset_automorphisms(spec) if use_symmetries else (((1, 0), (0, 1)),)
    best: tuple[int, ...] | None = None
    for (a, b), (c, d) in transforms:
        for tx in range(p):
            for ty in range(q):
                relabel: dict[int, int] = {}
                seq = []
                for x in range(modulus):
                    for y in range(modulus):
                        col = at(a * x + b * y + tx, c * x + d * y + ty)
                        if col not in relabel:
                            relabel[col] = len(relabel) + 1
                        seq.append(relabel[col])
                cand = tuple(seq)
                if best is None or cand < best:
                    best = cand
    assert best is not None
    return best
