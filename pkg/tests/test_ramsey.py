"""Copy enumeration, arrow decisions, embedding witnesses, residue gadget."""

from fractions import Fraction
from itertools import combinations
from math import sqrt

import numpy as np
import pytest

from diamray import (
    PointSet,
    acute_triangle_embedding,
    arrows,
    brick,
    sq_dist_matrix,
    congruent_copies,
    diameter,
    find_congruence,
    heptagon_config,
    is_proper,
    mod8_color,
    mod8_near_boundary,
    near_regular_simplex_embedding,
    obtuse_gadget_audit,
    random_orthogonal,
    regular_simplex,
    regular_simplex_arrow,
    right_triangle_embedding,
    segment,
    simplex_from_sides,
    EmbeddingConditionError,
)


def _heptagon_copy_census():
    # independent oracle: count vertex triples of the 7-gon whose cyclic gap
    # multiset is {1, 2, 4}, the gap pattern of vertices (1, 2, 4)
    count = set()
    for i, j, k in combinations(range(7), 3):
        gaps = sorted((j - i, k - j, (i - k) % 7))
        if gaps == [1, 2, 4]:
            count.add((i, j, k))
    return count


def test_heptagon_copies_match_gap_census():
    R, P = heptagon_config()
    fam = congruent_copies(R, P)
    census = _heptagon_copy_census()
    assert len(census) == 14
    assert set(fam.copies) == census


def test_copies_trivial_cases():
    R = regular_simplex(5, 1.0)
    fam = congruent_copies(R, regular_simplex(3, 1.0))
    assert len(fam) == 10  # all C(5,3) triples

    square = brick([1, 1])
    diag = PointSet.from_floats([[0.0], [sqrt(2.0)]])
    fam = congruent_copies(square, diag)
    assert set(fam.copies) == {(0, 3), (1, 2)}


def test_copies_invariant_under_rigid_motion():
    R, P = heptagon_config()
    rng = np.random.default_rng(2)
    Q = random_orthogonal(2, rng)
    moved = PointSet.from_floats(R.as_array() @ Q.T + rng.standard_normal(2))
    assert len(congruent_copies(moved, P)) == 14


def test_heptagon_arrow_decisions():
    R, P = heptagon_config()
    assert arrows(R, P, 2).arrows
    res3 = arrows(R, P, 3)
    assert not res3.arrows
    # the evading 3-coloring really leaves no monochromatic copy
    fam = congruent_copies(R, P)
    assert is_proper(fam.as_hypergraph, res3.evading)


def test_arrow_monotone_in_colors():
    R, P = heptagon_config()
    results = [arrows(R, P, r).arrows for r in (1, 2, 3, 4)]
    assert results == [True, True, False, False]


def test_self_arrow_fails_with_two_colors():
    P = regular_simplex(3, 1.0)
    res = arrows(P, P, 2)
    assert not res.arrows and res.num_copies == 1


def test_simplex_arrow_witnesses():
    host, rep = regular_simplex_arrow(1, 2)
    assert len(host) == 3 and rep["pigeonhole_ok"]
    assert rep["exact_checked"] and rep["exact_arrows"]

    host, rep = regular_simplex_arrow(2, 2)
    assert len(host) == 5
    assert rep["exact_checked"] and rep["exact_arrows"]

    host, rep = regular_simplex_arrow(2, 3)
    assert len(host) == 7 and rep["pigeonhole_class_size"] == 3
    assert rep["exact_arrows"]

    host, rep = regular_simplex_arrow(4, 3, exact_limit=12)
    assert len(host) == 13 and not rep["exact_checked"]


def test_right_triangle_embedding_3_4():
    w = right_triangle_embedding(3, 4)
    assert w.ok and w.diam_sq == 25
    assert w.host is not None and len(w.host) == 4
    assert diameter(w.host).sq == 25
    # embedded points really sit at brick vertices
    host_pts = set(w.host.points)
    assert all(p in host_pts for p in w.embedded.points)


def test_right_triangle_embedding_unit_square():
    w = right_triangle_embedding(1, 1)
    assert w.ok and w.diam_sq == 2
    assert find_congruence(w.embedded, w.pattern) is not None


def test_right_triangle_zero_leg_degenerates_to_segment():
    w = right_triangle_embedding(1, 0)
    assert w.ok and w.diam_sq == 1 and len(w.factors) == 1
    assert w.details["degenerate"] == "segment"


def test_acute_triangle_4_5_6_exact_identities():
    w = acute_triangle_embedding(4, 5, 6)
    d = w.details
    assert (d["l1_sq"], d["l2_sq"], d["x_sq"]) == (20, 11, 5)
    assert d["a_sq"] == d["l2_sq"] + d["x_sq"]
    assert d["b_sq"] == d["l1_sq"] + d["x_sq"]
    assert d["c_sq"] == d["l1_sq"] + d["l2_sq"] + d["x_sq"]
    assert w.diam_sq == 36 and w.ok
    assert diameter(w.host).value == pytest.approx(6.0, rel=1e-12)


def test_acute_equilateral_collapses():
    w = acute_triangle_embedding(1, 1, 1)
    assert w.ok and len(w.factors) == 1 and w.diam_sq == 1
    assert find_congruence(w.embedded, regular_simplex(3, 1.0)) is not None


def test_acute_isosceles_segment_factor():
    # b == c drops one right-triangle leg: segment times equilateral
    w = acute_triangle_embedding(1, 2, 2)
    assert w.ok and w.diam_sq == 4
    assert sorted(len(f) for f in w.factors) == [2, 3]


def test_right_triangle_route_from_acute_entry():
    w = acute_triangle_embedding(3, 4, 5)
    assert w.ok and w.diam_sq == 25
    assert w.details["colors"] == 2


def test_obtuse_rejected():
    with pytest.raises(ValueError, match="degeneracy"):
        acute_triangle_embedding(1, 1, 1.9)
    with pytest.raises(ValueError):
        acute_triangle_embedding(1, 1, 3)  # not even a triangle


def test_near_regular_equilateral_is_itself():
    w = near_regular_simplex_embedding(simplex_from_sides([1, 1, 1]))
    assert w.ok and len(w.factors) == 1
    assert w.details["a_sq"] == 1
    assert find_congruence(w.embedded, regular_simplex(3, 1.0)) is not None


def test_near_regular_witness_values():
    spec = simplex_from_sides(["1", "1", "99/100"])
    w = near_regular_simplex_embedding(spec)
    assert w.details["a_sq"] == Fraction(9801, 10000)
    # sides (1, 1, 99/100): x^2 values are (0, 0, 199/10000); zero factors drop
    x_all = [Fraction(1) - spec.side_sq[i][j]
             for i, j in combinations(range(3), 2)]
    assert sorted(x_all) == [0, 0, Fraction(199, 10000)]
    assert len(w.factors) == 2  # core simplex + one pair factor
    assert w.ok


def test_near_regular_deficit():
    with pytest.raises(EmbeddingConditionError) as err:
        near_regular_simplex_embedding(simplex_from_sides(["1", "3/5", "3/5"]))
    assert err.value.deficit == Fraction(-7, 25)


def test_near_regular_diameter_exact_and_pairwise():
    rng = np.random.default_rng(13)
    for n in (3, 4, 5):
        sides = [float(x) for x in rng.uniform(0.97, 1.0, size=n * (n - 1) // 2)]
        w = near_regular_simplex_embedding(simplex_from_sides(sides))
        assert w.diam_sq == 1
        assert w.details["measured_diam_sq_err"] <= 1e-9
        assert all(c.ok for c in w.pair_checks)
        assert w.congruent


def test_near_regular_small_host_materialized():
    w = near_regular_simplex_embedding(simplex_from_sides([1, 1, 0.99]))
    if w.host is not None:
        emb = w.host.select(w.embedded_host_indices)
        assert find_congruence(emb, w.pattern) is not None
        assert diameter(w.host).value == pytest.approx(1.0, abs=1e-9)


def test_mod8_color_values():
    assert mod8_color([0.0, 0.0]) == 0
    # squared norm 1.75 -> floor(3.5) = 3
    assert mod8_color([sqrt(1.75)]) == 3
    assert mod8_color([2.0]) == 0  # floor(8) mod 8
    assert mod8_near_boundary([sqrt(0.5)])
    assert not mod8_near_boundary([sqrt(0.3)])


def test_gadget_audit_proof_triangle_clean():
    rep = obtuse_gadget_audit(K=2.0, trials=20000, seed=5)
    assert rep["ok"] and rep["monochromatic"] == 0
    assert rep["legs"] == pytest.approx(sqrt(1 + 1 / 68), rel=1e-12)


def test_gadget_audit_detects_thick_legs():
    # legs 1 + xi put the apex too high for the residue argument and real
    # monochromatic placements exist; the audit must find them
    rep = obtuse_gadget_audit(K=2.0, trials=100000, seed=11, legs=1 + 1 / 68)
    assert rep["monochromatic"] > 0 and not rep["ok"]
    assert rep["failures"]
    f = rep["failures"][0]
    a, b, c = (np.array(f[k]) for k in ("a", "b", "c"))
    assert np.linalg.norm(a - c) == pytest.approx(2.0, rel=1e-9)
    assert np.linalg.norm(b - a) == pytest.approx(1 + 1 / 68, rel=1e-9)
    assert len({mod8_color(p) for p in (a, b, c)}) == 1


def test_copies_match_brute_force_subsets():
    # oracle: a subset is a copy iff some bijection onto the pattern
    # preserves all squared distances; check every subset directly
    rng = np.random.default_rng(91)
    from itertools import permutations

    for _ in range(10):
        pts = set()
        while len(pts) < 7:
            pts.add(tuple(int(x) for x in rng.integers(0, 4, size=2)))
        R = PointSet.exact(sorted(pts))
        pat_idx = sorted(int(i) for i in rng.choice(7, size=3, replace=False))
        P = R.select(pat_idx)
        fam = congruent_copies(R, P)
        MR = sq_dist_matrix(R)
        MP = sq_dist_matrix(P)
        direct = set()
        for sub in combinations(range(7), 3):
            for perm in permutations(sub):
                if all(MP.entries[a][b] == MR.entries[perm[a]][perm[b]]
                       for a in range(3) for b in range(a + 1, 3)):
                    direct.add(sub)
                    break
        assert set(fam.copies) == direct
        assert tuple(pat_idx) in direct


def test_gadget_audit_other_dimensions_clean():
    for dim in (2, 4):
        rep = obtuse_gadget_audit(K=2.0, trials=10000, seed=8, dim=dim)
        assert rep["monochromatic"] == 0


def test_gadget_audit_deterministic_and_guarded():
    r1 = obtuse_gadget_audit(K=1.5, trials=5000, seed=9)
    r2 = obtuse_gadget_audit(K=1.5, trials=5000, seed=9)
    assert r1 == r2
    with pytest.raises(ValueError):
        obtuse_gadget_audit(K=0.5)
    with pytest.raises(ValueError):
        obtuse_gadget_audit(K=2.0, legs=2.5)
