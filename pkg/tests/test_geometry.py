"""Geometry core: squared-distance matrices, diameter, congruence, products."""

from fractions import Fraction
from itertools import combinations
from math import cos, isclose, pi, radians, sin, sqrt

import numpy as np
import pytest

from diamray import (
    PointSet,
    angle_at,
    brick,
    cartesian_product,
    circumcenter,
    diameter,
    find_congruence,
    random_orthogonal,
    regular_polygon,
    segment,
    sq_dist,
    sq_dist_matrix,
)


def test_unit_segment_matrix():
    M = sq_dist_matrix(segment(1))
    assert M.entries == ((0, 1), (1, 0))
    assert M.exact


def test_partition_set_n2_matrix_by_direct_enumeration():
    # independent oracle: build the three equal-halves partitions of {1..4}
    # by hand and compute coordinates directly
    pairs = list(combinations(range(1, 5), 2))
    halves = [{1, 2}, {1, 3}, {1, 4}]
    pts = [tuple(1 if len(set(T) & X) == 1 else 0 for T in pairs) for X in halves]
    for p in pts:
        assert sum(p) == 4
    for a, b in combinations(pts, 2):
        assert sq_dist(a, b, True) == 4


def test_heptagon_chords_match_closed_form():
    P = regular_polygon(7, 1.0)
    M = sq_dist_matrix(P)
    for i in range(7):
        for j in range(i + 1, 7):
            k = min((j - i) % 7, (i - j) % 7)
            expected = 4.0 * sin(k * pi / 7) ** 2
            assert isclose(M.entries[i][j], expected, rel_tol=1e-12)


def test_diameter_single_point():
    info = diameter(PointSet.exact([[0, 0]]))
    assert info.value == 0.0 and info.pairs == ()


def test_brick_diameter_by_direct_coordinates():
    B = brick([3, 4])
    # oracle: scan all coordinate pairs directly
    best = max(sq_dist(p, q, True) for p, q in combinations(B.points, 2))
    assert best == 25
    info = diameter(B)
    assert info.sq == 25 and info.value == 5.0


def test_product_diameter_additivity():
    square = cartesian_product(segment(1), segment(1))
    assert diameter(square).sq == 2
    tri = PointSet.exact([[0, 0], [3, 0], [3, 4]])
    single = PointSet.exact([[7]])
    prod = cartesian_product(tri, single)
    assert find_congruence(prod, tri) is not None


def test_three_segment_brick_all_pairs():
    B = brick([2, 3, 6])
    assert len(B) == 8
    pairs = list(combinations(range(8), 2))
    assert len(pairs) == 28
    best = max(sq_dist(B.points[i], B.points[j], True) for i, j in pairs)
    assert best == 4 + 9 + 36
    assert diameter(B).value == 7.0


def _random_rational_set(rng, n, dim, den):
    pts = set()
    while len(pts) < n:
        pts.add(tuple(Fraction(int(x), den)
                      for x in rng.integers(-8, 9, size=dim)))
    return PointSet.exact(sorted(pts))


def test_product_diameter_exact_random_rational_sets():
    rng = np.random.default_rng(12)
    for _ in range(20):
        A = _random_rational_set(rng, 4, 2, 4)
        B = _random_rational_set(rng, 3, 2, 3)
        prod = cartesian_product(A, B)
        assert diameter(prod).sq == diameter(A).sq + diameter(B).sq


def test_congruence_under_permutation():
    P = PointSet.exact([[0, 0], [2, 0], [0, 3], [5, 1]])
    Q = P.select((2, 0, 3, 1))
    m = find_congruence(P, Q)
    assert m is not None
    MP, MQ = sq_dist_matrix(P), sq_dist_matrix(Q)
    for i in range(4):
        for j in range(4):
            assert MP.entries[i][j] == MQ.entries[m.mapping[i]][m.mapping[j]]


def test_congruence_rejects_different_lengths():
    assert find_congruence(segment(1), segment(2)) is None


def test_congruence_symmetric():
    rng = np.random.default_rng(5)
    for _ in range(10):
        P = PointSet.from_floats(rng.standard_normal((5, 3)))
        Q = PointSet.from_floats(rng.standard_normal((5, 3)))
        assert (find_congruence(P, Q) is None) == (find_congruence(Q, P) is None)
    P = PointSet.from_floats(rng.standard_normal((6, 3)))
    Q = P.select((3, 1, 5, 0, 2, 4))
    assert find_congruence(P, Q) is not None
    assert find_congruence(Q, P) is not None


def test_right_triangle_found_in_brick_corner():
    l1, l2 = 3, 4
    tri = PointSet.exact([[0, 0], [l1, 0], [l1, l2]])
    B = brick([l1, l2])
    corner = B.select((0, 2, 3))
    assert find_congruence(tri, corner) is not None


def test_congruence_across_dimensions():
    # congruence is intrinsic: flat sets in different ambient dimensions match
    P = PointSet.exact([[0], [5]])
    Q = PointSet.exact([[0, 0, 0], [3, 4, 0]])
    assert find_congruence(P, Q) is not None


def test_rigid_motion_invariance():
    rng = np.random.default_rng(99)
    P = PointSet.from_floats(rng.standard_normal((7, 4)))
    M = sq_dist_matrix(P)
    Q_mat = random_orthogonal(4, rng)
    shift = rng.standard_normal(4)
    moved = PointSet.from_floats(P.as_array() @ Q_mat.T + shift)
    M2 = sq_dist_matrix(moved)
    for i in range(7):
        for j in range(7):
            a, b = M.entries[i][j], M2.entries[i][j]
            assert abs(a - b) <= 1e-9 * max(1.0, abs(a), abs(b))
    assert find_congruence(P, moved) is not None


def test_angle_at_examples():
    eq = PointSet.from_floats([(0, 0), (1, 0), (0.5, sqrt(3) / 2)])
    assert isclose(angle_at(eq.points[0], eq.points[1], eq.points[2]), 60.0,
                   abs_tol=1e-9)
    assert isclose(angle_at((0, 0), (1, 0), (0, 1)), 90.0, abs_tol=1e-9)
    # legs 1 with base 2*cos(15 degrees) puts 150 degrees at the apex
    base = 2 * cos(radians(15.0))
    apex = (0.0, 0.0)
    b = (cos(radians(75.0)), sin(radians(75.0)))
    c = (cos(radians(75.0)), -sin(radians(75.0)))
    assert isclose(sqrt(sq_dist(b, c, False)), base, rel_tol=1e-12)
    assert isclose(angle_at(apex, b, c), 150.0, abs_tol=1e-9)


def test_angle_at_degenerate_raises():
    with pytest.raises(ValueError):
        angle_at((0, 0), (0, 0), (1, 0))


def test_circumcenter_equidistant():
    a, b, c = (0.0, 0.0), (4.0, 0.0), (1.0, 3.0)
    o = circumcenter(a, b, c)
    ra = np.linalg.norm(o - np.array(a))
    assert isclose(ra, float(np.linalg.norm(o - np.array(b))), rel_tol=1e-12)
    assert isclose(ra, float(np.linalg.norm(o - np.array(c))), rel_tol=1e-12)
    with pytest.raises(ValueError):
        circumcenter((0, 0), (1, 0), (2, 0))


def test_pointset_validation():
    with pytest.raises(ValueError):
        PointSet.exact([[0, 0], [0, 0]])
    with pytest.raises(ValueError):
        PointSet.exact([[0, 0], [1]])
    with pytest.raises(ValueError):
        PointSet.exact([])
    with pytest.raises(TypeError):
        PointSet.exact([[0.5]])
    with pytest.raises(ValueError):
        PointSet.from_floats([[1e-13], [0.0]])


def test_json_round_trip_exact_rationals():
    P = PointSet.exact([["1/2", 3], [0, "-7/3"]], labels=["a", "b"])
    doc = P.to_json()
    assert doc["mode"] == "exact" and doc["schema"] == 1
    assert doc["points"][0][0] == "1/2"
    back = PointSet.from_json(doc)
    assert back.points == P.points and back.labels == P.labels


def test_json_round_trip_float():
    P = PointSet.from_floats([[0.25, -1.5], [2.0, 3.125]], tolerance=1e-7)
    back = PointSet.from_json(P.to_json())
    assert back.points == P.points and back.tolerance == 1e-7


def test_near_miss_flagging():
    # distance(1,2) = 1 - 8e-7 sits between 10*eps and eps below the diameter
    P = PointSet.from_floats([[0.0], [1.0], [8e-7]], tolerance=2e-7)
    info = diameter(P)
    assert info.pairs == ((0, 1),)
    assert (1, 2) in info.near_misses


def test_random_orthogonal_is_orthogonal():
    rng = np.random.default_rng(0)
    Q = random_orthogonal(5, rng)
    assert np.allclose(Q @ Q.T, np.eye(5), atol=1e-12)


def _congruent_by_brute_force(P, Q):
    # oracle: try every bijection
    from itertools import permutations

    MP, MQ = sq_dist_matrix(P), sq_dist_matrix(Q)
    n = len(P)
    for perm in permutations(range(n)):
        if all(MP.entries[i][j] == MQ.entries[perm[i]][perm[j]]
               for i in range(n) for j in range(i + 1, n)):
            return True
    return False


def test_congruence_matches_brute_force_on_lattice_sets():
    rng = np.random.default_rng(44)
    hits = 0
    for _ in range(40):
        n = int(rng.integers(3, 6))
        pts = set()
        while len(pts) < n:
            pts.add(tuple(int(x) for x in rng.integers(0, 3, size=2)))
        P = PointSet.exact(sorted(pts))
        if rng.random() < 0.5:
            # genuine congruent partner: permute and reflect
            order = list(rng.permutation(n))
            Q = PointSet.exact([tuple((-a, b)) for a, b in
                                (P.points[i] for i in order)])
        else:
            pts2 = set()
            while len(pts2) < n:
                pts2.add(tuple(int(x) for x in rng.integers(0, 3, size=2)))
            Q = PointSet.exact(sorted(pts2))
        want = _congruent_by_brute_force(P, Q)
        got = find_congruence(P, Q) is not None
        assert got == want
        hits += want
    assert 0 < hits < 40  # the corpus saw both outcomes
