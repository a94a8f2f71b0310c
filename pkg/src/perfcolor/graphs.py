"""Finite graphs with exact rational adjacency matrices.

A graph here is just a square matrix plus optional vertex labels.  The
``simple`` flag marks the classical case (symmetric 0/1 adjacency, zero
diagonal); operations that only make sense for simple graphs guard on it
and fail loudly.  Weighted graphs and multigraphs are handled by letting
adjacency entries be arbitrary rationals / positive integers.

Distance-regularity is detected by checking the definition over all vertex
pairs rather than spectrally; at the sizes this package targets the
all-pairs check is instant and doubles as a test oracle.  The sphere
polynomials come from the standard three-term recurrence

    c_{r+1} p_{r+1}(x) = (x - a_r) p_r(x) - b_{r-1} p_{r-1}(x),
    p_0 = 1,  p_1 = x,

and ball polynomials are their prefix sums.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from .ratmat import Polynomial, RationalMatrix, rat

__all__ = [
    "DistancePolynomials",
    "Graph",
    "IntersectionArray",
    "common_neighbor_count",
    "complete",
    "cycle",
    "distance_matrices",
    "diameter",
    "distance_polynomials",
    "from_edges",
    "intersection_array",
    "neighborhood",
    "petersen",
    "regularity",
]

ZERO = Fraction(0)
ONE = Fraction(1)


@dataclass(frozen=True)
class Graph:
    adjacency: RationalMatrix
    simple: bool = False
    labels: tuple[str, ...] | None = None

    def __post_init__(self) -> None:
        m = self.adjacency
        if not m.is_square:
            raise ValueError("adjacency matrix must be square")
        if self.labels is not None and len(self.labels) != m.rows:
            raise ValueError("label count must equal the number of vertices")
        if self.simple:
            for i in range(m.rows):
                if m[i, i] != 0:
                    raise ValueError("simple graph must have a zero diagonal")
                for j in range(i + 1, m.cols):
                    if m[i, j] != m[j, i]:
                        raise ValueError("simple graph must be symmetric")
                    if m[i, j] not in (ZERO, ONE):
                        raise ValueError("simple graph entries must be 0 or 1")

    @property
    def n(self) -> int:
        return self.adjacency.rows

    def to_json(self) -> dict:
        obj: dict = {"adjacency": self.adjacency.to_json(), "simple": self.simple}
        if self.labels is not None:
            obj["labels"] = list(self.labels)
        return obj

    @classmethod
    def from_json(cls, obj: dict) -> "Graph":
        labels = tuple(obj["labels"]) if "labels" in obj else None
        if "adjacency" in obj:
            adj = RationalMatrix.from_json(obj["adjacency"])
            simple = obj.get("simple")
            if simple is None:
                simple = _looks_simple(adj)
            return cls(adj, simple=simple, labels=labels)
        if "edges" in obj:
            return from_edges(
                obj["n"],
                [tuple(e) for e in obj["edges"]],
                simple=obj.get("simple", True),
                labels=labels,
            )
        raise ValueError("graph JSON needs an 'adjacency' or 'edges' field")


def _looks_simple(m: RationalMatrix) -> bool:
    return all(
        m[i, i] == 0
        and all(m[i, j] == m[j, i] and m[i, j] in (ZERO, ONE) for j in range(i + 1, m.cols))
        for i in range(m.rows)
    )


def from_edges(n, edges, simple=True, labels=None) -> Graph:
    """Build a graph from (u, v) or (u, v, weight) tuples.

    When ``simple`` the symmetric closure is applied and weights must stay
    0/1; otherwise entries accumulate, so repeated edges make multigraphs.
    """
    grid = [[Fraction(0)] * n for _ in range(n)]
    for edge in edges:
        u, v = edge[0], edge[1]
        w = rat(edge[2]) if len(edge) > 2 else ONE
        if not (0 <= u < n and 0 <= v < n):
            raise ValueError(f"edge {edge} out of range for n={n}")
        if simple:
            grid[u][v] = w
            grid[v][u] = w
        else:
            grid[u][v] += w
    return Graph(RationalMatrix(grid), simple=simple, labels=labels)


def cycle(n: int) -> Graph:
    if n < 3:
        raise ValueError("cycle needs at least 3 vertices")
    return from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def complete(n: int) -> Graph:
    if n < 1:
        raise ValueError("complete graph needs at least 1 vertex")
    return from_edges(n, list(combinations(range(n), 2)))


def petersen() -> Graph:
    """Kneser construction: vertices are 2-subsets of {0..4}, disjoint sets adjacent."""
    verts = list(combinations(range(5), 2))
    index = {v: i for i, v in enumerate(verts)}
    edges = [
        (index[a], index[b])
        for a, b in combinations(verts, 2)
        if not (set(a) & set(b))
    ]
    labels = tuple("{%d,%d}" % v for v in verts)
    return from_edges(10, edges, labels=labels)


def regularity(g: Graph) -> Fraction | None:
    """The common row sum r, or None when row sums differ."""
    sums = g.adjacency.row_sums()
    return sums[0] if all(s == sums[0] for s in sums) else None


def _require_simple(g: Graph, op: str) -> None:
    if not g.simple:
        raise ValueError(f"{op} is defined for simple graphs only")


def neighborhood(g: Graph, u: int) -> frozenset[int]:
    _require_simple(g, "neighborhood")
    return frozenset(w for w in range(g.n) if g.adjacency[u, w] == 1)


def common_neighbor_count(g: Graph, u: int, v: int) -> int:
    _require_simple(g, "common_neighbor_count")
    return sum(1 for w in range(g.n) if g.adjacency[u, w] == 1 and g.adjacency[v, w] == 1)


def _bfs_distances(g: Graph) -> list[list[int]]:
    """All-pairs BFS distances; -1 marks unreachable pairs."""
    nbrs = [
        [w for w in range(g.n) if g.adjacency[u, w] == 1] for u in range(g.n)
    ]
    out = []
    for s in range(g.n):
        dist = [-1] * g.n
        dist[s] = 0
        queue = deque([s])
        while queue:
            u = queue.popleft()
            for w in nbrs[u]:
                if dist[w] < 0:
                    dist[w] = dist[u] + 1
                    queue.append(w)
        out.append(dist)
    return out


def distance_matrices(g: Graph) -> tuple[RationalMatrix, ...]:
    """0/1 matrices A_0..A_d with A_r[u,v] = 1 iff dist(u,v) = r."""
    _require_simple(g, "distance_matrices")
    dist = _bfs_distances(g)
    d = max(max(row) for row in dist)
    if any(x < 0 for row in dist for x in row):
        raise ValueError("distance matrices require a connected graph")
    mats = []
    for r in range(d + 1):
        mats.append(
            RationalMatrix([[1 if dist[u][v] == r else 0 for v in range(g.n)] for u in range(g.n)])
        )
    return tuple(mats)


def diameter(g: Graph) -> int:
    return len(distance_matrices(g)) - 1


@dataclass(frozen=True)
class IntersectionArray:
    """Distance-regularity data: b = (b_0..b_{d-1}), c = (c_1..c_d)."""

    b: tuple[Fraction, ...]
    c: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        if len(self.b) != len(self.c) or not self.b:
            raise ValueError("b and c sequences must have equal positive length")
        if any(x <= 0 for x in self.b) or any(x <= 0 for x in self.c):
            raise ValueError("intersection numbers must be positive")
        for i in range(self.d + 1):
            if self.a(i) < 0:
                raise ValueError(f"a_{i} = b_0 - b_{i} - c_{i} must be non-negative")

    @property
    def d(self) -> int:
        return len(self.b)

    @property
    def valency(self) -> Fraction:
        return self.b[0]

    def b_at(self, i: int) -> Fraction:
        # b_d := 0
        return self.b[i] if i < self.d else ZERO

    def c_at(self, i: int) -> Fraction:
        # c_0 := 0
        return self.c[i - 1] if i >= 1 else ZERO

    def a(self, i: int) -> Fraction:
        return self.b[0] - self.b_at(i) - self.c_at(i)


def intersection_array(g: Graph) -> IntersectionArray | None:
    """Detect distance-regularity by definition-checking all vertex pairs.

    Returns None whenever the array does not exist, which covers
    non-simple, disconnected, and irregular inputs as well as genuinely
    non-distance-regular graphs.
    """
    if not g.simple or regularity(g) is None:
        return None
    dist = _bfs_distances(g)
    if any(x < 0 for row in dist for x in row):
        return None
    d = max(max(row) for row in dist)
    if d == 0:
        return None
    nbrs = [[w for w in range(g.n) if g.adjacency[u, w] == 1] for u in range(g.n)]
    b: list[Fraction | None] = [None] * d
    c: list[Fraction | None] = [None] * d
    b[0] = Fraction(len(nbrs[0]))
    for u in range(g.n):
        for v in range(g.n):
            r = dist[u][v]
            if r == 0:
                continue
            closer = sum(1 for w in nbrs[v] if dist[u][w] == r - 1)
            farther = sum(1 for w in nbrs[v] if dist[u][w] == r + 1)
            if c[r - 1] is None:
                c[r - 1] = Fraction(closer)
            elif c[r - 1] != closer:
                return None
            if r < d:
                if b[r] is None:
                    b[r] = Fraction(farther)
                elif b[r] != farther:
                    return None
            elif farther != 0:
                return None
    if any(x is None for x in b) or any(x is None for x in c):
        return None
    return IntersectionArray(tuple(b), tuple(c))


@dataclass(frozen=True)
class DistancePolynomials:
    """sphere[r](M) indicates distance-r pairs; ball[r] = sum of spheres 0..r."""

    sphere: tuple[Polynomial, ...]
    ball: tuple[Polynomial, ...]


def distance_polynomials(ia: IntersectionArray) -> DistancePolynomials:
    sphere = [Polynomial([1])]
    if ia.d >= 1:
        sphere.append(Polynomial.x())
    for r in range(1, ia.d):
        c_next = ia.c_at(r + 1)
        if c_next == 0:
            raise ValueError(f"c_{r + 1} is zero; malformed intersection array")
        term = (Polynomial.x() - Polynomial.constant(ia.a(r))) * sphere[r]
        term = term - sphere[r - 1].scaled(ia.b_at(r - 1))
        sphere.append(term.scaled(Fraction(1) / c_next))
    ball = [sphere[0]]
    for r in range(1, ia.d + 1):
        ball.append(ball[r - 1] + sphere[r])
    return DistancePolynomials(tuple(sphere), tuple(ball))
