"""Hamming-cube points and point sets.

A point of the n-cube is stored as a machine-int bit pattern
(coordinate k = bit k, so n <= 64) and distances are popcounts of XORs.
A PointSet is an ordered, duplicate-free list of points; the first
listed point is the translation base, and `normalize` XORs the whole
set by it, which leaves all pairwise distances unchanged.

The `distance_rows` / `gram_rows` helpers build the distance and Gram
matrices as plain integer row lists for the enumeration sweeps; `derive`
wraps the same data in exact RationalMatrix form.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Iterator, Sequence

from .errors import DegenerateMetricError, DimensionError, ParseError
from .ratlinalg import RationalMatrix, RationalVector, rank_int

MIN_DIM = 2
MAX_DIM = 64


@dataclass(frozen=True, order=True)
class HammingPoint:
    """A 0/1 vector of dimension n, stored as a bit pattern."""

    n: int
    bits: int

    def __post_init__(self):
        if not MIN_DIM <= self.n <= MAX_DIM:
            raise DimensionError(f"cube dimension {self.n} outside [{MIN_DIM}, {MAX_DIM}]")
        if not 0 <= self.bits < (1 << self.n):
            raise DimensionError(f"bit pattern {self.bits:#x} does not fit in {self.n} coordinates")

    @classmethod
    def from_coords(cls, coords: Iterable[int]) -> "HammingPoint":
        coords = tuple(coords)
        if any(c not in (0, 1) for c in coords):
            raise ValueError(f"coordinates must be 0 or 1, got {coords}")
        bits = 0
        for k, c in enumerate(coords):
            bits |= c << k
        return cls(len(coords), bits)

    @classmethod
    def from_string(cls, text: str) -> "HammingPoint":
        if set(text) - {"0", "1"}:
            raise ValueError(f"point string may contain only 0/1: {text!r}")
        return cls.from_coords(int(ch) for ch in text)

    def coords(self) -> tuple[int, ...]:
        return tuple((self.bits >> k) & 1 for k in range(self.n))

    def to_string(self) -> str:
        return "".join(str(c) for c in self.coords())

    def weight(self) -> int:
        """Number of ones (distance to the zero point)."""
        return self.bits.bit_count()

    def __xor__(self, other: "HammingPoint") -> "HammingPoint":
        if self.n != other.n:
            raise DimensionError(f"xor of points in dimensions {self.n} and {other.n}")
        return HammingPoint(self.n, self.bits ^ other.bits)


def distance(x: HammingPoint, y: HammingPoint) -> int:
    """Hamming distance: the popcount of the XOR."""
    if x.n != y.n:
        raise DimensionError(f"distance between dimensions {x.n} and {y.n}")
    return (x.bits ^ y.bits).bit_count()


@dataclass(frozen=True)
class PointSet:
    """Ordered list x_0, ..., x_m of distinct cube points (m >= 1)."""

    n: int
    points: tuple[HammingPoint, ...]

    def __post_init__(self):
        if len(self.points) < 2:
            raise ValueError("a point set needs at least two points")
        if any(p.n != self.n for p in self.points):
            raise DimensionError("all points must share the set's dimension")
        seen = set()
        for i, p in enumerate(self.points):
            if p.bits in seen:
                raise DegenerateMetricError(f"point {i} repeats {p.to_string()}")
            seen.add(p.bits)

    @classmethod
    def from_bits(cls, n: int, bits: Iterable[int]) -> "PointSet":
        return cls(n, tuple(HammingPoint(n, b) for b in bits))

    @classmethod
    def from_coords(cls, coords_list: Iterable[Iterable[int]]) -> "PointSet":
        pts = tuple(HammingPoint.from_coords(c) for c in coords_list)
        if not pts:
            raise ValueError("a point set needs at least two points")
        return cls(pts[0].n, pts)

    @property
    def m(self) -> int:
        return len(self.points) - 1

    @property
    def normalized(self) -> bool:
        return self.points[0].bits == 0

    def bits(self) -> tuple[int, ...]:
        return tuple(p.bits for p in self.points)

    def to_strings(self) -> list[str]:
        return [p.to_string() for p in self.points]


def normalize(s: PointSet) -> PointSet:
    """Translate so x_0 = 0 by XORing every point with the base.

    The cube's group structure makes this an isometry, so the distance
    matrix is unchanged.
    """
    if s.normalized:
        return s
    base = s.points[0].bits
    return PointSet.from_bits(s.n, (p.bits ^ base for p in s.points))


def distance_rows(bits: Sequence[int]) -> list[list[int]]:
    """Pairwise Hamming distance matrix of bit patterns, as int rows."""
    return [[(a ^ b).bit_count() for b in bits] for a in bits]


def gram_rows(tail_bits: Sequence[int]) -> tuple[list[list[int]], list[int]]:
    """Gram matrix and its diagonal for 0/1 points given as bit patterns.

    The dot product of 0/1 vectors is the popcount of the AND.
    """
    g = [[(a & b).bit_count() for b in tail_bits] for a in tail_bits]
    u = [g[i][i] for i in range(len(tail_bits))]
    return g, u


def _gf2_rank(vals: Iterable[int]) -> int:
    pivots: dict[int, int] = {}
    r = 0
    for v in vals:
        while v:
            h = v.bit_length() - 1
            p = pivots.get(h)
            if p is None:
                pivots[h] = v
                r += 1
                break
            v ^= p
    return r


def rank_of_bits(tail_bits: Sequence[int], n: int) -> int:
    """Exact rank over the rationals of 0/1 rows given as bit patterns.

    Rational rank dominates GF(2) rank, so full GF(2) rank certifies
    full rational rank without leaving bit arithmetic; a GF(2)-dependent
    set can still be rationally independent, so anything else falls back
    to exact integer elimination.
    """
    m = len(tail_bits)
    if m == 0:
        return 0
    if _gf2_rank(tail_bits) == m:
        return m
    rows = [[(b >> k) & 1 for k in range(n)] for b in tail_bits]
    return rank_int(rows)


def linear_independent(s: PointSet) -> bool:
    """Whether x_1, ..., x_m are linearly independent (Gram criterion).

    Requires a normalized set: for unnormalized input the question
    concerns the differences from the base, so normalize first.
    """
    if not s.normalized:
        raise ValueError("linear_independent needs a normalized set; call normalize() first")
    tail = s.bits()[1:]
    return rank_of_bits(tail, s.n) == s.m


def affinely_independent(s: PointSet) -> bool:
    """Whether x_0, ..., x_m are affinely independent.

    Equivalent to linear independence of the XOR-translated tail, so
    invariant under reordering and under translating the whole set.
    """
    return linear_independent(normalize(s))


@dataclass(frozen=True)
class DerivedMatrices:
    """The coordinate matrix B, Gram matrix G = B B^T, its diagonal u,
    and the full distance matrix D of a point set."""

    B: RationalMatrix
    G: RationalMatrix
    u: RationalVector
    D: RationalMatrix


def derive(s: PointSet) -> DerivedMatrices:
    """Build B, G, u, D. Normalizes internally, so B holds the
    translated tail points and D equals the input's distance matrix."""
    sn = normalize(s)
    tail = sn.bits()[1:]
    b_rows = [[(b >> k) & 1 for k in range(sn.n)] for b in tail]
    g, u = gram_rows(tail)
    d = distance_rows(sn.bits())
    return DerivedMatrices(
        B=RationalMatrix.from_rows(b_rows),
        G=RationalMatrix.from_rows(g),
        u=RationalVector.of(u),
        D=RationalMatrix.from_rows(d),
    )


def parse_point_set(text: str) -> PointSet:
    """Parse the point-set text format.

    First line: ``n count``; then `count` lines, each a string of n
    characters '0'/'1'. Structural problems raise ParseError with the
    offending line; a repeated point raises DegenerateMetricError.
    """
    lines = text.splitlines()
    if not lines or not lines[0].strip():
        raise ParseError("missing header line 'n count'", line=1)
    head = lines[0].split()
    if len(head) != 2:
        raise ParseError(f"header must be 'n count', got {lines[0]!r}", line=1)
    try:
        n, count = int(head[0]), int(head[1])
    except ValueError:
        raise ParseError(f"header must hold two integers, got {lines[0]!r}", line=1) from None
    if not MIN_DIM <= n <= MAX_DIM:
        raise ParseError(f"dimension {n} outside [{MIN_DIM}, {MAX_DIM}]", line=1)
    if count < 2:
        raise ParseError(f"need at least 2 points, header says {count}", line=1)
    body = [(i + 2, ln.strip()) for i, ln in enumerate(lines[1:]) if ln.strip()]
    if len(body) != count:
        raise ParseError(f"header promises {count} points but file has {len(body)}", line=1)
    pts = []
    seen: dict[int, int] = {}
    for lineno, token in body:
        if len(token) != n:
            raise ParseError(f"point has {len(token)} coordinates, expected {n}", line=lineno)
        if set(token) - {"0", "1"}:
            raise ParseError(f"characters outside 0/1 in {token!r}", line=lineno)
        p = HammingPoint.from_string(token)
        if p.bits in seen:
            raise DegenerateMetricError(
                f"line {lineno}: point {token} repeats line {seen[p.bits]}"
            )
        seen[p.bits] = lineno
        pts.append(p)
    return PointSet(n, tuple(pts))


def parse_point_set_file(path) -> PointSet:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_point_set(fh.read())


def format_point_set(s: PointSet) -> str:
    return "\n".join([f"{s.n} {len(s.points)}"] + s.to_strings()) + "\n"


def all_subsets_with_base(n: int, m: int) -> Iterator[tuple[int, ...]]:
    """Yield the tails (x_1..x_m bit patterns, ascending) of every
    normalized m+1 point set in H_n, in lexicographic order."""
    yield from combinations(range(1, 1 << n), m)
