"""Congruent-copy enumeration, the arrow relation, and embedding witnesses.

R arrows P with r colors when every r-coloring of R leaves some congruent
copy of P monochromatic; deciding that reduces to non-colorability of the
copy hypergraph. The embedding witnesses certify the constructive half of
the diameter-preserving host constructions: a pattern embeds into a product
of regular simplices whose diameter equals the pattern's. Certificates are
kept in exact rational arithmetic on squared lengths; realizations are
float and checked against a relative tolerance.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import reduce
from itertools import combinations
from math import ceil, floor, sqrt

import numpy as np

from .coloring import Coloring, colorable
from .constructions import (
    SimplexSpec,
    regular_simplex,
    realize,
    segment,
    simplex_from_squared_sides,
)
from .geometry import (
    PointSet,
    cartesian_product,
    close,
    diameter,
    find_congruence,
    sq_dist,
    sq_dist_matrix,
    _pattern_order,
)
from .hypergraph import Hypergraph


@dataclass(frozen=True)
class CopyFamily:
    """All subsets of the host congruent to the pattern, as sorted tuples."""

    host: PointSet
    pattern: PointSet
    copies: tuple

    @property
    def as_hypergraph(self) -> Hypergraph:
        return Hypergraph.make(len(self.host), self.copies)

    def __len__(self) -> int:
        return len(self.copies)


def congruent_copies(R: PointSet, P: PointSet) -> CopyFamily:
    """Enumerate every |P|-subset of R congruent to P, each exactly once."""
    if len(P) > len(R):
        raise ValueError("pattern larger than host")
    MR, MP = sq_dist_matrix(R), sq_dist_matrix(P)
    if MP.exact and MR.exact:
        eq = lambda a, b: a == b
    else:
        eps = max(MP.tolerance, MR.tolerance)
        eq = lambda a, b: close(float(a), float(b), eps)
    order = _pattern_order(MP)
    np_, nr = len(P), len(R)
    found = set()
    assigned = []

    def bt(k: int) -> None:
        if k == np_:
            found.add(tuple(sorted(assigned)))
            return
        p = order[k]
        for h in range(nr):
            if h in assigned:
                continue
            ok = True
            for i in range(k):
                if not eq(MP.entries[p][order[i]], MR.entries[h][assigned[i]]):
                    ok = False
                    break
            if ok:
                assigned.append(h)
                bt(k + 1)
                assigned.pop()

    bt(0)
    return CopyFamily(R, P, tuple(sorted(found)))


@dataclass(frozen=True)
class ArrowResult:
    arrows: bool
    num_copies: int
    evading: Coloring | None


def arrows(R: PointSet, P: PointSet, r: int) -> ArrowResult:
    """Decide whether every r-coloring of R has a monochromatic copy of P.

    True exactly when the copy hypergraph admits no proper r-coloring; when
    it does, the witness coloring evades every copy.
    """
    if r < 1:
        raise ValueError("need at least one color")
    family = congruent_copies(R, P)
    evading = colorable(family.as_hypergraph, r)
    if evading is None:
        return ArrowResult(True, len(family), None)
    return ArrowResult(False, len(family), evading)


def regular_simplex_arrow(d: int, r: int, side: float = 1.0,
                          exact_limit: int = 12):
    """Host simplex forcing a monochromatic regular d-simplex with r colors.

    The host is the regular simplex with r*d+1 vertices of the same side:
    with r colors some class has at least d+1 vertices and spans a congruent
    copy of the pattern. For hosts up to exact_limit vertices the arrow
    relation is also decided exactly.
    """
    if d < 1 or r < 2:
        raise ValueError("need pattern dimension >= 1 and r >= 2")
    host = regular_simplex(r * d + 1, side)
    pattern = regular_simplex(d + 1, side)
    class_size = ceil((r * d + 1) / r)
    report = {
        "host_vertices": r * d + 1,
        "pattern_vertices": d + 1,
        "colors": r,
        "pigeonhole_class_size": class_size,
        "pigeonhole_ok": class_size >= d + 1,
        "exact_checked": False,
        "exact_arrows": None,
    }
    if r * d + 1 <= exact_limit:
        res = arrows(host, pattern, r)
        report["exact_checked"] = True
        report["exact_arrows"] = res.arrows
    return host, report


@dataclass(frozen=True)
class PairCheck:
    i: int
    j: int
    expected_sq: Fraction
    measured_sq: float
    ok: bool


@dataclass(frozen=True)
class EmbeddingWitness:
    """A diameter-preserving embedding of a pattern into a simplex product.

    `factors` are the nondegenerate product factors; `diam_sq` is the exact
    squared diameter of the product, equal to the pattern's. The embedded
    points live in the product coordinates; `host` is materialized only when
    the product is small.
    """

    pattern: PointSet
    factors: tuple
    embedded: PointSet
    diam_sq: Fraction
    pair_checks: tuple
    congruent: bool
    host: PointSet | None = None
    embedded_host_indices: tuple | None = None
    details: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return self.congruent and all(c.ok for c in self.pair_checks)

    def to_json(self) -> dict:
        return {
            "schema": 1,
            "ok": self.ok,
            "diam_sq": str(self.diam_sq),
            "congruent": self.congruent,
            "factor_sizes": [len(f) for f in self.factors],
            "embedded_dim": self.embedded.dim,
            "pair_checks": [
                {"i": c.i, "j": c.j, "expected_sq": str(c.expected_sq),
                 "measured_sq": c.measured_sq, "ok": c.ok}
                for c in self.pair_checks
            ],
            "details": {k: (str(v) if isinstance(v, Fraction) else v)
                        for k, v in self.details.items()},
        }


class EmbeddingConditionError(ValueError):
    """Side-length sum falls short of the embedding condition."""

    def __init__(self, deficit: Fraction):
        self.deficit = deficit
        super().__init__(
            "sum of squared sides misses the required bound by "
            f"{float(-deficit):.6g}")


def _as_sq(x) -> Fraction:
    return Fraction(x) * Fraction(x)


def _pair_checks(embedded: PointSet, expected, rel_tol: float):
    checks = []
    n = len(embedded)
    for i in range(n):
        for j in range(i + 1, n):
            measured = float(sq_dist(embedded.points[i], embedded.points[j], False))
            exp = expected(i, j)
            ok = close(measured, float(exp), rel_tol)
            checks.append(PairCheck(i, j, exp, measured, ok))
    return tuple(checks)


def right_triangle_embedding(l1, l2, colors: int = 2,
                             rel_tol: float = 1e-9) -> EmbeddingWitness:
    """Embed the right triangle with the given legs into a two-segment brick.

    The brick's squared diameter is l1^2 + l2^2, the triangle's hypotenuse,
    and the triangle sits on three of the four brick vertices. A zero leg
    degenerates the triangle to a segment and drops that factor.
    """
    leg1, leg2 = Fraction(l1), Fraction(l2)
    if leg1 < 0 or leg2 < 0 or (leg1 == 0 and leg2 == 0):
        raise ValueError("legs must be nonnegative and not both zero")
    if leg2 > leg1:
        leg1, leg2 = leg2, leg1
    l1_sq, l2_sq = leg1 * leg1, leg2 * leg2
    if leg2 == 0:
        seg = segment(leg1)
        embedded = PointSet.from_floats([[0.0], [float(leg1)]])
        checks = _pair_checks(embedded, lambda i, j: l1_sq, rel_tol)
        cong = find_congruence(embedded, seg) is not None
        return EmbeddingWitness(
            pattern=embedded, factors=(seg,), embedded=embedded,
            diam_sq=l1_sq, pair_checks=checks, congruent=cong,
            host=seg, embedded_host_indices=(0, 1),
            details={"degenerate": "segment", "colors": colors,
                     "segment_host_vertices": colors + 1})
    f1, f2 = segment(leg1), segment(leg2)
    host = cartesian_product(f1, f2)
    # product order: (0,0), (0,l2), (l1,0), (l1,l2)
    idx = (0, 2, 3)
    embedded = host.select(idx)
    side_sq = {
        (0, 1): l1_sq,
        (1, 2): l2_sq,
        (0, 2): l1_sq + l2_sq,
    }
    checks = _pair_checks(embedded, lambda i, j: side_sq[(i, j)], rel_tol)
    pattern = realize(simplex_from_squared_sides(
        [[0, l1_sq, l1_sq + l2_sq], [l1_sq, 0, l2_sq], [l1_sq + l2_sq, l2_sq, 0]]))
    cong = find_congruence(embedded, pattern) is not None
    diam_sq = l1_sq + l2_sq
    host_diam = diameter(host)
    return EmbeddingWitness(
        pattern=pattern, factors=(f1, f2), embedded=embedded,
        diam_sq=diam_sq, pair_checks=checks, congruent=cong,
        host=host, embedded_host_indices=idx,
        details={
            "l1_sq": l1_sq, "l2_sq": l2_sq, "colors": colors,
            "segment_host_vertices": colors + 1,
            "host_diam_sq_ok": close(host_diam.value ** 2, float(diam_sq), rel_tol),
        })


def acute_triangle_embedding(a, b, c, colors: int = 2,
                             rel_tol: float = 1e-9) -> EmbeddingWitness:
    """Embed an acute (or right) triangle into a diameter-preserving product.

    With sides a <= b <= c, the product of a right triangle with legs
    sqrt(c^2-a^2), sqrt(c^2-b^2) and an equilateral triangle of side
    sqrt(a^2+b^2-c^2) has squared diameter c^2 and contains the triangle.
    Obtuse inputs are rejected; use the degeneracy module for those.
    """
    sa, sb, sc = sorted((Fraction(a), Fraction(b), Fraction(c)))
    if sa <= 0 or sa + sb <= sc:
        raise ValueError("not a valid triangle")
    a_sq, b_sq, c_sq = sa * sa, sb * sb, sc * sc
    x_sq = a_sq + b_sq - c_sq
    if x_sq < 0:
        raise ValueError(
            "obtuse triangle: no diameter-preserving product embedding here; "
            "see the degeneracy analysis instead")
    l1_sq = c_sq - a_sq
    l2_sq = c_sq - b_sq
    # identities behind the construction; exact by rational arithmetic
    assert a_sq == l2_sq + x_sq and b_sq == l1_sq + x_sq
    assert c_sq == l1_sq + l2_sq + x_sq
    if x_sq == 0:
        return right_triangle_embedding(sb, sa, colors=colors, rel_tol=rel_tol)

    x = sqrt(float(x_sq))
    S = regular_simplex(3, x)
    if l2_sq == 0 and l1_sq == 0:
        # equilateral: the product collapses to the equilateral factor
        embedded = S
        factors = (S,)
        host = S
        idx = (0, 1, 2)
    elif l2_sq == 0:
        T0 = segment(sqrt(float(l1_sq)))
        host = cartesian_product(T0, S)
        idx = (0, 4, 5)
        embedded = host.select(idx)
        factors = (T0, S)
    else:
        l1f, l2f = sqrt(float(l1_sq)), sqrt(float(l2_sq))
        T0 = PointSet.from_floats([(0.0, 0.0), (l1f, 0.0), (l1f, l2f)])
        host = cartesian_product(T0, S)
        idx = (0, 7, 5)
        embedded = host.select(idx)
        factors = (T0, S)
    side_sq = {(0, 1): c_sq, (0, 2): b_sq, (1, 2): a_sq}
    checks = _pair_checks(embedded, lambda i, j: side_sq[(i, j)], rel_tol)
    pattern = realize(simplex_from_squared_sides(
        [[0, c_sq, b_sq], [c_sq, 0, a_sq], [b_sq, a_sq, 0]]))
    cong = find_congruence(embedded, pattern) is not None
    host_diam = diameter(host)
    return EmbeddingWitness(
        pattern=pattern, factors=factors, embedded=embedded,
        diam_sq=c_sq, pair_checks=checks, congruent=cong,
        host=host, embedded_host_indices=idx,
        details={
            "a_sq": a_sq, "b_sq": b_sq, "c_sq": c_sq,
            "l1_sq": l1_sq, "l2_sq": l2_sq, "x_sq": x_sq, "colors": colors,
            "host_diam_sq_ok": close(host_diam.value ** 2, float(c_sq), rel_tol),
        })


def near_regular_simplex_embedding(spec: SimplexSpec, normalize: bool = True,
                                   rel_tol: float = 1e-9) -> EmbeddingWitness:
    """Embed a near-regular simplex into a product of regular simplices.

    After scaling the diameter to 1, the squared sides must sum to at least
    n(n-1)/2 - 1; otherwise EmbeddingConditionError reports the deficit.
    The product of one regular n-simplex (side a) and one regular
    (n-1)-simplex per vertex pair (side x_ij) has squared diameter exactly
    a^2 + sum x_ij^2 = 1, and the embedded points reproduce every squared
    side as 1 - x_ij^2. Zero-side factors are dropped.
    """
    n = spec.n
    if n < 2:
        raise ValueError("need at least two vertices")
    side_sq = spec.side_sq
    if normalize:
        m = spec.max_side_sq()
        side_sq = spec.scaled(Fraction(1) / m).side_sq
    else:
        if spec.max_side_sq() != 1:
            raise ValueError("diameter must be 1 when normalize is off")
    pairs = list(combinations(range(n), 2))
    total = sum(side_sq[i][j] for i, j in pairs)
    need = Fraction(n * (n - 1), 2) - 1
    deficit = total - need
    if deficit < 0:
        raise EmbeddingConditionError(deficit)
    a_sq = deficit
    x_sq = {(i, j): 1 - side_sq[i][j] for i, j in pairs}

    factor_sets = []
    dropped = []
    t0 = None
    if a_sq > 0:
        t0 = regular_simplex(n, sqrt(float(a_sq)))
        factor_sets.append(("core", None, t0))
    else:
        dropped.append("core")
    pair_factors = {}
    for (i, j) in pairs:
        if x_sq[(i, j)] > 0 and n - 1 >= 2:
            ps = regular_simplex(n - 1, sqrt(float(x_sq[(i, j)])))
            pair_factors[(i, j)] = ps
            factor_sets.append(("pair", (i, j), ps))
        else:
            dropped.append(f"pair{(i, j)}")
    if not factor_sets:
        raise AssertionError("unreachable: a_sq and all x_ij cannot vanish together")

    def pair_vertex(i: int, j: int, k: int) -> int:
        if k == i or k == j:
            return 0
        others = [v for v in range(n) if v not in (i, j)]
        return 1 + others.index(k)

    emb_pts = []
    for k in range(n):
        coords = []
        if t0 is not None:
            coords.extend(t0.points[k])
        for (i, j) in pairs:
            if (i, j) in pair_factors:
                coords.extend(pair_factors[(i, j)].points[pair_vertex(i, j, k)])
        emb_pts.append(tuple(coords))
    embedded = PointSet.from_floats(emb_pts)

    # product diameter identity, exact on squared lengths
    assert a_sq + sum(x_sq.values()) == 1
    for (k, l) in pairs:
        assert a_sq + sum(x_sq.values()) - x_sq[(k, l)] == side_sq[k][l]

    checks = _pair_checks(embedded, lambda i, j: side_sq[i][j], rel_tol)
    norm_spec = SimplexSpec(side_sq)
    pattern = realize(norm_spec)
    cong = find_congruence(embedded, pattern) is not None

    measured_diam_sq = 0.0
    for _, _, f in factor_sets:
        measured_diam_sq += diameter(f).value ** 2
    factors = tuple(f for _, _, f in factor_sets)

    host = None
    host_idx = None
    size = 1
    for f in factors:
        size *= len(f)
    if size <= 64:
        host = reduce(cartesian_product, factors)
        host_idx = []
        for k in range(n):
            pos = 0
            for (kind, key, f) in factor_sets:
                local = k if kind == "core" else pair_vertex(*key, k)
                pos = pos * len(f) + local
            host_idx.append(pos)
        host_idx = tuple(host_idx)

    return EmbeddingWitness(
        pattern=pattern, factors=factors, embedded=embedded,
        diam_sq=Fraction(1), pair_checks=checks, congruent=cong,
        host=host, embedded_host_indices=host_idx,
        details={
            "n": n,
            "a_sq": a_sq,
            "sum_side_sq": total,
            "condition_slack": deficit,
            "dropped_factors": dropped,
            "measured_diam_sq_err": abs(measured_diam_sq - 1.0),
        })


def mod8_color(x) -> int:
    """Color a point by floor(2 * squared norm) mod 8."""
    norm_sq = float(sum(float(v) * float(v) for v in x))
    return int(floor(2.0 * norm_sq)) % 8


def mod8_near_boundary(x, tol: float = 1e-12) -> bool:
    """True when 2*|x|^2 sits within tol of an integer (floor is unreliable)."""
    v = 2.0 * float(sum(float(t) * float(t) for t in x))
    return abs(v - round(v)) < tol


def obtuse_gadget_audit(K: float = 2.0, trials: int = 100000, seed: int = 0,
                        dim: int = 3, boundary_tol: float = 1e-12,
                        legs: float | None = None) -> dict:
    """Audit the residue coloring against one thin isosceles triangle.

    Samples congruent placements (random rotation and translation, rejected
    unless all vertices lie in the radius-K ball) of an isosceles triangle
    with base 2 and, by default, apex height sqrt(xi) over the base midpoint
    where xi = 1/(17 K^2) -- legs sqrt(1 + xi). No such placement can be
    monochromatic under the floor(2|x|^2) mod 8 coloring: three equal
    residues force 8 K sqrt(xi) >= 2, which the choice of xi rules out.

    Pass `legs` to audit a different isosceles triangle with base 2. The
    bound only protects apex heights below 1/(4K); legs of 1 + xi, say, put
    the apex at sqrt(2 xi + xi^2) > 1/(4K) and monochromatic placements do
    exist (the audit finds and reports them).

    Placements with a vertex too close to a floor boundary (within
    boundary_tol) are excluded from the monochromatic count and tallied.
    """
    if K <= 1:
        raise ValueError("need K > 1")
    xi = 1.0 / (17.0 * K * K)
    leg = sqrt(1.0 + xi) if legs is None else float(legs)
    if not 1.0 < leg <= 2.0:
        raise ValueError("legs must lie in (1, 2] so the base is the diameter")
    h = sqrt(leg * leg - 1.0)
    rng = np.random.default_rng(seed)

    accepted = 0
    flagged = 0
    mono = 0
    failures = []
    batch = 16384
    while accepted < trials:
        g1 = rng.standard_normal((batch, dim))
        u = g1 / np.linalg.norm(g1, axis=1, keepdims=True)
        g2 = rng.standard_normal((batch, dim))
        w = g2 - (g2 * u).sum(axis=1, keepdims=True) * u
        wn = np.linalg.norm(w, axis=1, keepdims=True)
        good = wn[:, 0] > 1e-12
        dirs = rng.standard_normal((batch, dim))
        dirs /= np.linalg.norm(dirs, axis=1, keepdims=True)
        radii = K * rng.random(batch) ** (1.0 / dim)
        m = dirs * radii[:, None]

        u, w, m = u[good], (w / np.maximum(wn, 1e-300))[good], m[good]
        a = m - u
        c = m + u
        b = m + h * w
        in_ball = ((a * a).sum(1) <= K * K) & ((b * b).sum(1) <= K * K) \
            & ((c * c).sum(1) <= K * K)
        a, b, c = a[in_ball], b[in_ball], c[in_ball]
        take = min(len(a), trials - accepted)
        a, b, c = a[:take], b[:take], c[:take]
        accepted += take

        two_sq = [2.0 * (p * p).sum(1) for p in (a, b, c)]
        near = np.zeros(take, dtype=bool)
        for v in two_sq:
            near |= np.abs(v - np.round(v)) < boundary_tol
        flagged += int(near.sum())
        cols = [np.floor(v).astype(np.int64) % 8 for v in two_sq]
        bad = (~near) & (cols[0] == cols[1]) & (cols[1] == cols[2])
        mono += int(bad.sum())
        for i in np.nonzero(bad)[0][:3]:
            failures.append({
                "a": [float(x) for x in a[i]],
                "b": [float(x) for x in b[i]],
                "c": [float(x) for x in c[i]],
                "color": int(cols[0][i]),
            })
    return {
        "K": K,
        "xi": xi,
        "legs": leg,
        "apex_height": h,
        "dim": dim,
        "seed": seed,
        "trials": accepted,
        "boundary_flagged": flagged,
        "monochromatic": mono,
        "failures": failures[:5],
        "ok": mono == 0,
    }
