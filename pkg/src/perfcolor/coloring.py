"""Colorings, partition matrices, and the defining product identity.

A coloring of an n-vertex graph assigns each vertex a color in 1..k, with
every color used at least once.  It is *perfect* for a parameter matrix S
when M P = P S, where M is the adjacency matrix and P the n-by-k partition
matrix; equivalently, the color-wise neighbor weight sums of a vertex
depend only on the vertex's own color.  Color indices are 1-based in every
public surface to match the usual J_1..J_k class notation; vertex indices
are 0-based.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .graphs import Graph
from .ratmat import Polynomial, RationalMatrix, RatLike, rat

__all__ = [
    "Coloring",
    "PerfectColoringTriple",
    "TwoColorParams",
    "VerifyResult",
    "induced_parameters",
    "make_triple",
    "partition_matrix",
    "poly_lift",
    "two_color_matrix",
    "two_color_params",
    "verify_perfect",
]


@dataclass(frozen=True)
class Coloring:
    colors: tuple[int, ...]
    k: int

    def __post_init__(self) -> None:
        object.__setattr__(self, "colors", tuple(self.colors))
        if not self.colors:
            raise ValueError("coloring needs at least one vertex")
        if self.k < 1:
            raise ValueError("k must be positive")
        used = set(self.colors)
        if not used <= set(range(1, self.k + 1)):
            raise ValueError(f"colors must lie in 1..{self.k}")
        if used != set(range(1, self.k + 1)):
            raise ValueError("every color in 1..k must be used by some vertex")

    @property
    def n(self) -> int:
        return len(self.colors)

    def color_class(self, i: int) -> tuple[int, ...]:
        return tuple(v for v, c in enumerate(self.colors) if c == i)

    def to_json(self) -> dict:
        return {"k": self.k, "colors": list(self.colors)}

    @classmethod
    def from_json(cls, obj: dict) -> "Coloring":
        return cls(tuple(obj["colors"]), obj["k"])


def partition_matrix(f: Coloring) -> RationalMatrix:
    """The n-by-k 0/1 matrix with a single 1 per row at the vertex's color."""
    return RationalMatrix(
        [[1 if f.colors[v] == j else 0 for j in range(1, f.k + 1)] for v in range(f.n)]
    )


def induced_parameters(g: Graph, f: Coloring) -> RationalMatrix | None:
    """Color-wise row sums if they are constant on every class, else None.

    None is the common outcome when search code probes many candidate
    colorings, so imperfection is signalled by absence, not by an error.
    """
    m = g.adjacency
    if f.n != g.n:
        raise ValueError("coloring length must equal the number of vertices")
    rows: list[list[Fraction] | None] = [None] * f.k
    for u in range(g.n):
        sums = [Fraction(0)] * f.k
        mu = m.row(u)
        for w, a in enumerate(mu):
            if a:
                sums[f.colors[w] - 1] += a
        i = f.colors[u] - 1
        if rows[i] is None:
            rows[i] = sums
        elif rows[i] != sums:
            return None
    return RationalMatrix(rows)  # type: ignore[arg-type]


@dataclass(frozen=True)
class PerfectColoringTriple:
    """Matrices (M, P, S) with M n-by-n, P an n-by-k partition matrix, S k-by-k.

    Construction checks shapes and the partition structure of P; whether
    M P = P S actually holds is the job of verify_perfect.
    """

    m: RationalMatrix
    p: RationalMatrix
    s: RationalMatrix

    def __post_init__(self) -> None:
        if not self.m.is_square:
            raise ValueError("M must be square")
        if not self.s.is_square:
            raise ValueError("S must be square")
        if self.p.rows != self.m.rows or self.p.cols != self.s.rows:
            raise ValueError("P must be n-by-k for M of order n and S of order k")
        for v in range(self.p.rows):
            row = self.p.row(v)
            if sum(row) != 1 or any(x not in (Fraction(0), Fraction(1)) for x in row):
                raise ValueError(f"row {v} of P must contain exactly one 1 and zeroes")

    @property
    def n(self) -> int:
        return self.m.rows

    @property
    def k(self) -> int:
        return self.s.rows

    def coloring(self) -> Coloring:
        colors = tuple(
            next(j + 1 for j in range(self.k) if self.p[v, j] == 1) for v in range(self.n)
        )
        return Coloring(colors, self.k)


def make_triple(g: Graph | RationalMatrix, f: Coloring, s: RationalMatrix | None = None) -> PerfectColoringTriple:
    """Assemble (M, P, S) from a graph and coloring; S defaults to the induced matrix."""
    graph = g if isinstance(g, Graph) else Graph(g)
    if s is None:
        s = induced_parameters(graph, f)
        if s is None:
            raise ValueError("coloring is not perfect and no parameter matrix was given")
    return PerfectColoringTriple(graph.adjacency, partition_matrix(f), s)


@dataclass(frozen=True)
class VerifyResult:
    ok: bool
    witness: tuple[int, int] | None  # (vertex, color), color 1-based

    def __bool__(self) -> bool:
        return self.ok


def verify_perfect(triple: PerfectColoringTriple) -> VerifyResult:
    """Check M P = P S exactly; on failure report the first differing cell.

    The witness is chosen at the lowest vertex index, then lowest color, so
    the result does not depend on evaluation order.
    """
    mp = triple.m * triple.p
    ps = triple.p * triple.s
    for v in range(mp.rows):
        for j in range(mp.cols):
            if mp[v, j] != ps[v, j]:
                return VerifyResult(False, (v, j + 1))
    return VerifyResult(True, None)


def poly_lift(triple: PerfectColoringTriple, p: Polynomial) -> PerfectColoringTriple:
    """Map a verified triple (M, P, S) to (p(M), P, p(S)).

    The image is again perfect: p(M) P = P p(S) follows by applying
    M P = P S power by power.  The input must verify, and the output is
    re-verified before being returned.
    """
    check = verify_perfect(triple)
    if not check.ok:
        raise ValueError(f"input triple is not perfect; first bad cell {check.witness}")
    lifted = PerfectColoringTriple(p(triple.m), triple.p, p(triple.s))
    lifted_check = verify_perfect(lifted)
    if not lifted_check.ok:
        raise AssertionError("polynomial image of a perfect triple failed to verify")
    return lifted


@dataclass(frozen=True)
class TwoColorParams:
    """Off-diagonal parameters (b, c) of a 2-color matrix with row sums r."""

    b: Fraction
    c: Fraction
    r: Fraction

    @property
    def a(self) -> Fraction:
        return self.r - self.b

    @property
    def d(self) -> Fraction:
        return self.r - self.c

    @property
    def second_eigenvalue(self) -> Fraction:
        return self.r - (self.b + self.c)

    def matrix(self) -> RationalMatrix:
        return RationalMatrix([[self.a, self.b], [self.c, self.d]])


def two_color_params(s: RationalMatrix, r: RatLike) -> TwoColorParams:
    """Extract (b, c) from a 2x2 parameter matrix with both row sums r."""
    rr = rat(r)
    if s.rows != 2 or s.cols != 2:
        raise ValueError("parameter matrix must be 2x2")
    if s.row_sums() != (rr, rr):
        raise ValueError(f"both row sums must equal {rr}, got {s.row_sums()}")
    return TwoColorParams(b=s[0, 1], c=s[1, 0], r=rr)


def two_color_matrix(b: RatLike, c: RatLike, r: RatLike) -> RationalMatrix:
    """The 2x2 matrix [[r-b, b], [c, r-c]]."""
    return TwoColorParams(rat(b), rat(c), rat(r)).matrix()
