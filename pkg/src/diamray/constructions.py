"""Generators for the point-set families used throughout the package.

Combinatorial families (partition sets, characteristic-vector sets, bricks,
the cube-corner star) are built with integer coordinates in exact mode, so
their squared distances are integers. Metric families (regular simplices,
polygons) live in float mode; their exactness is recovered at the
squared-distance level where needed.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from itertools import combinations
from math import cos, pi, radians, sin, sqrt

import numpy as np

from .geometry import (
    EXACT,
    PointSet,
    cartesian_product,
    parse_exact,
)


def segment(length) -> PointSet:
    """Two points at the given distance; exact when the length is rational."""
    if isinstance(length, float):
        if length <= 0:
            raise ValueError("segment length must be positive")
        return PointSet.from_floats([[0.0], [length]])
    val = parse_exact(length)
    if val <= 0:
        raise ValueError("segment length must be positive")
    return PointSet.exact([[0], [val]])


def brick(lengths) -> PointSet:
    """Vertex set of a box: the Cartesian product of one segment per length."""
    lengths = list(lengths)
    if not lengths:
        raise ValueError("brick needs at least one side length")
    return reduce(cartesian_product, (segment(l) for l in lengths))


def _set_label(elems) -> str:
    return ",".join(str(e) for e in sorted(elems))


def kahn_kalai_blocks(n: int) -> list:
    """Canonical halves X (each containing element 1) of all partitions of [2n]."""
    if n < 2 or n % 2 != 0:
        raise ValueError("n must be an even integer >= 2")
    return [frozenset((1,) + rest)
            for rest in combinations(range(2, 2 * n + 1), n - 1)]


def kahn_kalai_set(n: int) -> PointSet:
    """0/1 point set indexed by partitions of [2n] into equal halves.

    Coordinates are indexed by the 2-subsets T of [2n] in lexicographic
    order; the coordinate is 1 exactly when T meets both halves. Each point
    has n^2 ones, and two points at block intersection t are at squared
    distance 2n^2 - 2(t^2 + (n-t)^2), so the diameter is n.
    """
    blocks = kahn_kalai_blocks(n)
    ground = list(range(1, 2 * n + 1))
    pair_index = list(combinations(ground, 2))
    full = frozenset(ground)
    pts = []
    labels = []
    for X in blocks:
        Y = full - X
        coords = tuple(1 if ((a in X) != (b in X)) else 0 for a, b in pair_index)
        pts.append(coords)
        labels.append(f"{_set_label(X)}|{_set_label(Y)}")
    return PointSet(tuple(pts), EXACT, tuple(labels))


def kneser_subsets(n: int, k: int, r: int) -> list:
    """All n-subsets of [d] with d = r*n + (k-1)*(r-1), in lexicographic order."""
    if n < 1 or k < 2 or r < 2:
        raise ValueError("need n >= 1, k >= 2, r >= 2")
    d = r * n + (k - 1) * (r - 1)
    return [frozenset(c) for c in combinations(range(1, d + 1), n)]


def kneser_points(n: int, k: int, r: int) -> PointSet:
    """Characteristic vectors of all n-subsets of [d], d = r*n + (k-1)*(r-1).

    Squared distances equal symmetric-difference sizes, so the diameter is
    sqrt(2n), attained exactly by disjoint subset pairs.
    """
    subsets = kneser_subsets(n, k, r)
    d = r * n + (k - 1) * (r - 1)
    pts = tuple(tuple(1 if i in s else 0 for i in range(1, d + 1)) for s in subsets)
    labels = tuple(_set_label(s) for s in subsets)
    return PointSet(pts, EXACT, labels)


def cube_corner_set(arms: int = 6) -> PointSet:
    """The origin together with `arms` unit coordinate vectors.

    A cube vertex and its neighbors: distances are 1 to the origin and
    sqrt(2) between arms, so the diameter is sqrt(2).
    """
    if arms < 1:
        raise ValueError("need at least one arm")
    pts = [tuple(0 for _ in range(arms))]
    labels = ["origin"]
    for i in range(arms):
        pts.append(tuple(1 if j == i else 0 for j in range(arms)))
        labels.append(f"e{i + 1}")
    return PointSet(tuple(pts), EXACT, tuple(labels))


def regular_polygon(n: int, circumradius: float = 1.0) -> PointSet:
    """Vertices of a regular n-gon on a circle of the given radius."""
    if n < 3:
        raise ValueError("polygon needs n >= 3")
    if circumradius <= 0:
        raise ValueError("circumradius must be positive")
    pts = [(circumradius * cos(2 * pi * i / n), circumradius * sin(2 * pi * i / n))
           for i in range(n)]
    return PointSet.from_floats(pts)


def heptagon_config(circumradius: float = 1.0):
    """Regular heptagon R and the obtuse triangle P on vertices 1, 2, 4.

    Both share the same diameter (the 3-step chord).
    """
    host = regular_polygon(7, circumradius)
    pattern = host.select((0, 1, 3))
    return host, pattern


def isosceles_apex_triangle(apex_degrees: float, base: float = 1.0) -> PointSet:
    """Isosceles triangle with given apex angle, apex first, base as stated.

    The base is the longest side whenever the apex angle exceeds 60 degrees.
    """
    if not 0 < apex_degrees < 180:
        raise ValueError("apex angle must lie strictly between 0 and 180")
    half = radians(apex_degrees) / 2.0
    leg = base / (2.0 * sin(half))
    p2 = (leg * cos(half), leg * sin(half))
    p3 = (leg * cos(half), -leg * sin(half))
    return PointSet.from_floats([(0.0, 0.0), p2, p3])


class NonRealizableError(ValueError):
    """Side matrix admits no Euclidean realization."""

    def __init__(self, eigenvalue: float):
        self.eigenvalue = eigenvalue
        super().__init__(
            f"side matrix is not realizable: Gram eigenvalue {eigenvalue:.6g} < 0")


@dataclass(frozen=True)
class SimplexSpec:
    """Abstract simplex given by its squared side lengths (exact Fractions)."""

    side_sq: tuple

    def __post_init__(self):
        n = len(self.side_sq)
        if n < 1:
            raise ValueError("simplex needs at least one vertex")
        for i in range(n):
            if len(self.side_sq[i]) != n:
                raise ValueError("side matrix must be square")
            if self.side_sq[i][i] != 0:
                raise ValueError("diagonal must be zero")
            for j in range(n):
                if self.side_sq[i][j] != self.side_sq[j][i]:
                    raise ValueError("side matrix must be symmetric")
                if i != j and self.side_sq[i][j] <= 0:
                    raise ValueError("off-diagonal sides must be positive")

    @property
    def n(self) -> int:
        return len(self.side_sq)

    def scaled(self, factor: Fraction) -> "SimplexSpec":
        return SimplexSpec(tuple(tuple(x * factor for x in row)
                                 for row in self.side_sq))

    def max_side_sq(self) -> Fraction:
        if self.n == 1:
            return Fraction(0)
        return max(self.side_sq[i][j] for i in range(self.n)
                   for j in range(i + 1, self.n))


def _as_fraction(x) -> Fraction:
    if isinstance(x, float):
        return Fraction(x)
    return Fraction(parse_exact(x))


def simplex_from_squared_sides(side_sq) -> SimplexSpec:
    rows = tuple(tuple(_as_fraction(x) for x in row) for row in side_sq)
    return SimplexSpec(rows)


def simplex_from_sides(sides) -> SimplexSpec:
    """SimplexSpec from a full side-length matrix or a flat upper triangle.

    A flat sequence of length n(n-1)/2 is read row by row: (s01, s02, ...,
    s0(n-1), s12, ...). Squared sides are stored exactly.
    """
    sides = list(sides)
    if not sides:
        raise ValueError("empty side list")
    flat = not hasattr(sides[0], "__len__") or isinstance(sides[0], str)
    if flat:
        m = len(sides)
        n = int((1 + sqrt(1 + 8 * m)) / 2)
        if n * (n - 1) // 2 != m:
            raise ValueError(f"{m} side lengths do not fill an upper triangle")
        vals = [_as_fraction(s) for s in sides]
        sq = [[Fraction(0)] * n for _ in range(n)]
        it = iter(vals)
        for i in range(n):
            for j in range(i + 1, n):
                s = next(it)
                sq[i][j] = sq[j][i] = s * s
        return SimplexSpec(tuple(tuple(row) for row in sq))
    vals = [[_as_fraction(x) for x in row] for row in sides]
    n = len(vals)
    sq = [[vals[i][j] * vals[i][j] for j in range(n)] for i in range(n)]
    return SimplexSpec(tuple(tuple(row) for row in sq))


PSD_TOLERANCE = 1e-8


def realize(spec: SimplexSpec, psd_tolerance: float = PSD_TOLERANCE) -> PointSet:
    """Embed a simplex spec in Euclidean space via its Gram factorization.

    Vertex 0 sits at the origin; the dimension is the Gram rank. Raises
    NonRealizableError when an eigenvalue is below -psd_tolerance times the
    largest one.
    """
    n = spec.n
    if n == 1:
        return PointSet.from_floats([[0.0]])
    M = np.array([[float(x) for x in row] for row in spec.side_sq])
    G = np.empty((n - 1, n - 1))
    for i in range(1, n):
        for j in range(1, n):
            G[i - 1, j - 1] = (M[0, i] + M[0, j] - M[i, j]) / 2.0
    w, V = np.linalg.eigh(G)
    scale = max(w.max(), 1.0)
    if w.min() < -psd_tolerance * scale:
        raise NonRealizableError(float(w.min()))
    keep = [i for i in range(len(w)) if w[i] > psd_tolerance * scale]
    keep.sort(key=lambda i: -w[i])
    if not keep:
        keep = [int(np.argmax(w))]
    coords = V[:, keep] * np.sqrt(np.maximum(w[keep], 0.0))
    pts = [tuple(0.0 for _ in keep)]
    pts.extend(tuple(float(x) for x in coords[i]) for i in range(n - 1))
    return PointSet.from_floats(pts)


def regular_simplex(m: int, side=1.0) -> PointSet:
    """m vertices pairwise at distance `side`, embedded in dimension m-1."""
    if m < 1:
        raise ValueError("need at least one vertex")
    if float(side) <= 0:
        raise ValueError("side must be positive")
    if m == 1:
        return PointSet.from_floats([[0.0]])
    s_sq = _as_fraction(side) ** 2 if not isinstance(side, float) else Fraction(side) ** 2
    rows = tuple(tuple(Fraction(0) if i == j else s_sq for j in range(m))
                 for i in range(m))
    return realize(SimplexSpec(rows))
