"""Numeric certification of diameter-degenerate point sets.

A set is t-degenerate at an anchor point when every regular t-simplex of
side diam(P) through that point strictly increases the diameter of the
union. The optimizer searches over placements of the t free simplex
vertices for the smallest achievable union diameter: placements are
parametrized by an orthonormal frame (Gram-Schmidt of a free matrix), so
the simplex constraints hold to machine precision by construction, and the
nonsmooth max objective is minimized through a softmax surrogate with an
increasing sharpness schedule before the true maximum is reported.

SUPPORTED verdicts are evidence with a safety margin, not proofs; REFUTED
verdicts exhibit an explicit placement.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import sqrt

import numpy as np
from scipy.optimize import minimize

from .constructions import SimplexSpec, realize
from .geometry import PointSet, diameter, random_orthogonal

DEFAULT_RESTARTS = 50
SUPPORT_MARGIN = 1e-4
REFUTE_TOLERANCE = 1e-6
_BETAS = (4.0, 16.0, 64.0, 256.0)


@dataclass(frozen=True)
class ExtensionProblem:
    """Placement problem: regular t-simplex through one anchor of the base."""

    base: PointSet
    anchor: int
    t: int
    ambient_dim: int
    side: float

    def __post_init__(self):
        if not 0 <= self.anchor < len(self.base):
            raise ValueError("anchor out of range")
        if self.t < 1:
            raise ValueError("need t >= 1")
        # the ambient space must hold the base and a t-dimensional simplex;
        # dim(base) + t (the default) buys the simplex full freedom but
        # smaller ambients are legitimate, just more constrained
        if self.ambient_dim < max(self.base.dim, self.t):
            raise ValueError("ambient dimension cannot hold base and simplex")
        if self.side <= 0:
            raise ValueError("side must be positive")


def extension_problem(base: PointSet, anchor: int, t: int,
                      ambient_dim: int | None = None,
                      side: float | None = None) -> ExtensionProblem:
    """Build an ExtensionProblem with spec defaults (side = diam, dim+t)."""
    if side is None:
        side = diameter(base).value
    if ambient_dim is None:
        ambient_dim = base.dim + t
    return ExtensionProblem(base, anchor, t, ambient_dim, float(side))


@dataclass(frozen=True)
class ExtensionResult:
    value: float
    simplex: PointSet
    restart_values: tuple
    feasibility_error: float


def _anchored_frame(t: int, side: float) -> np.ndarray:
    """Vertices 1..t of a regular t-simplex with vertex 0 at the origin."""
    s_sq = Fraction(side) ** 2
    rows = tuple(tuple(Fraction(0) if i == j else s_sq for j in range(t + 1))
                 for i in range(t + 1))
    pts = realize(SimplexSpec(rows)).as_array()
    return pts[1:] - pts[0]


def _orthonormal(A: np.ndarray) -> np.ndarray:
    # modified Gram-Schmidt: unlike QR it has no sign gauge, so the map
    # A -> Q stays continuous along optimizer trajectories
    m, t = A.shape
    Q = np.empty_like(A)
    for i in range(t):
        v = A[:, i].astype(float).copy()
        for j in range(i):
            v -= (v @ Q[:, j]) * Q[:, j]
        n = np.linalg.norm(v)
        if n < 1e-12:
            v = np.zeros(m)
            v[i % m] = 1.0
            for j in range(i):
                v -= (v @ Q[:, j]) * Q[:, j]
            n = np.linalg.norm(v)
        Q[:, i] = v / n
    return Q


def min_extension_diameter(prob: ExtensionProblem,
                           restarts: int = DEFAULT_RESTARTS,
                           seed: int = 0) -> ExtensionResult:
    """Smallest found diameter of base union an anchored regular t-simplex.

    Multi-start local minimization; the returned value is an upper bound on
    the true minimum and never drops below diam(base). The placement is
    feasible to machine precision by the frame parametrization.
    """
    base = np.zeros((len(prob.base), prob.ambient_dim))
    base[:, :prob.base.dim] = prob.base.as_array()
    anchor = base[prob.anchor]
    side = prob.side
    t = prob.t
    frame = _anchored_frame(t, side)  # (t, t)
    base_diam = diameter(prob.base).value

    def placement(A_flat: np.ndarray) -> np.ndarray:
        Q = _orthonormal(A_flat.reshape(prob.ambient_dim, t))
        return anchor + frame @ Q.T

    def dists(V: np.ndarray) -> np.ndarray:
        diff = V[:, None, :] - base[None, :, :]
        return np.sqrt((diff * diff).sum(axis=2)).ravel()

    def true_value(V: np.ndarray) -> float:
        return max(side, base_diam, float(dists(V).max()))

    rng = np.random.default_rng(seed)
    best_val = np.inf
    best_x = None
    values = []
    for _ in range(restarts):
        x = rng.standard_normal(prob.ambient_dim * t)
        for beta in _BETAS:
            scale = beta / max(side, 1e-12)

            def surrogate(a):
                d = dists(placement(a))
                m = d.max()
                return m + np.log(np.exp(scale * (d - m)).sum()) / scale

            res = minimize(surrogate, x, method="L-BFGS-B",
                           options={"maxiter": 300})
            x = res.x
        val = true_value(placement(x))
        values.append(val)
        if val < best_val:
            best_val = val
            best_x = x
    if best_x is None or not np.isfinite(best_val):
        raise RuntimeError(
            f"optimizer failed on all {restarts} restarts: values={values[:5]}")

    # the softmax stages leave an O(1/beta) bias; polish the best restart on
    # the true nonsmooth objective
    polish = minimize(lambda a: true_value(placement(a)), best_x,
                      method="Nelder-Mead",
                      options={"maxiter": 4000, "fatol": 1e-12, "xatol": 1e-12})
    if polish.fun <= best_val:
        best_val = float(polish.fun)
        best_x = polish.x
    best_V = placement(best_x)

    feas = 0.0
    pts = np.vstack([anchor, best_V])
    for i in range(t + 1):
        for j in range(i + 1, t + 1):
            feas = max(feas, abs(float(np.linalg.norm(pts[i] - pts[j])) - side))
    simplex = PointSet.from_floats(pts)
    return ExtensionResult(best_val, simplex, tuple(values), feas)


def degeneracy_evidence(P: PointSet, t: int, margin: float = SUPPORT_MARGIN,
                        restarts: int = DEFAULT_RESTARTS, seed: int = 0,
                        tolerance: float = REFUTE_TOLERANCE,
                        ambient_dim: int | None = None) -> dict:
    """Per-anchor verdicts on t-degeneracy.

    SUPPORTED: every found placement exceeds diam(P) + margin.
    REFUTED: some placement achieves diam(P) + tolerance (a counterexample).
    Anything in between is INCONCLUSIVE.
    """
    diam = diameter(P).value
    anchors = []
    for a in range(len(P)):
        prob = extension_problem(P, a, t, ambient_dim=ambient_dim)
        res = min_extension_diameter(prob, restarts=restarts, seed=seed + a)
        if res.value <= diam + tolerance:
            verdict = "REFUTED"
        elif res.value > diam + margin:
            verdict = "SUPPORTED"
        else:
            verdict = "INCONCLUSIVE"
        anchors.append({"anchor": a, "value": res.value, "verdict": verdict})
    if any(a["verdict"] == "SUPPORTED" for a in anchors):
        overall = "degenerate-evidence"
    elif all(a["verdict"] == "REFUTED" for a in anchors):
        overall = "refuted"
    else:
        overall = "inconclusive"
    return {
        "t": t,
        "diameter": diam,
        "margin": margin,
        "tolerance": tolerance,
        "anchors": anchors,
        "overall": overall,
    }


def apex_angle_audit(trials: int = 100000, seed: int = 0,
                     dims=(2, 3, 4, 5), tol_degrees: float = 1e-6) -> dict:
    """Randomized audit: a bounded unit extension caps the apex angle at 150.

    Samples triangles (p1, p2, p3) with a point q satisfying
    max(p2q, p3q) <= p1q <= p2p3 and checks the angle at p1 never exceeds
    150 degrees plus the stated tolerance.
    """
    rng = np.random.default_rng(seed)
    accepted = 0
    violations = 0
    max_angle = 0.0
    worst = None
    dims = tuple(dims)
    round_robin = 0
    while accepted < trials:
        dim = dims[round_robin % len(dims)]
        round_robin += 1
        batch = 8192
        p1 = rng.standard_normal((batch, dim))
        p2 = rng.standard_normal((batch, dim))
        p3 = rng.standard_normal((batch, dim))
        base = np.linalg.norm(p2 - p3, axis=1)
        # q must reach within radius of p2 and p3, so radius >= half the
        # larger apex-to-base distance or the sample cannot satisfy the
        # hypothesis at all
        lo = np.maximum(np.linalg.norm(p2 - p1, axis=1),
                        np.linalg.norm(p3 - p1, axis=1)) / 2.0
        feasible = lo < base
        radius = lo + (base - lo) * rng.random(batch)
        dirs = rng.standard_normal((batch, dim))
        dirs /= np.linalg.norm(dirs, axis=1, keepdims=True)
        q = p1 + radius[:, None] * dirs
        hyp = feasible \
            & (np.linalg.norm(q - p2, axis=1) <= radius) \
            & (np.linalg.norm(q - p3, axis=1) <= radius)
        idx = np.nonzero(hyp)[0]
        if idx.size == 0:
            continue
        take = idx[: trials - accepted]
        u = p2[take] - p1[take]
        v = p3[take] - p1[take]
        cos = (u * v).sum(1) / (np.linalg.norm(u, axis=1)
                                * np.linalg.norm(v, axis=1))
        angles = np.degrees(np.arccos(np.clip(cos, -1.0, 1.0)))
        accepted += take.size
        batch_max = int(np.argmax(angles))
        if angles[batch_max] > max_angle:
            max_angle = float(angles[batch_max])
            gi = take[batch_max]
            worst = (p1[gi].tolist(), p2[gi].tolist(), p3[gi].tolist(),
                     q[gi].tolist())
        violations += int((angles > 150.0 + tol_degrees).sum())
    return {
        "trials": accepted,
        "violations": violations,
        "max_angle": max_angle,
        "worst_instance": worst if violations else None,
        "ok": violations == 0,
    }


def random_star_tetrahedron(seed_or_rng, dim: int = 9) -> np.ndarray:
    """Random regular tetrahedron of side sqrt(2) with one vertex at 0.

    Returns the three nonzero vertices as rows, each of norm sqrt(2),
    obtained by rotating a canonical frame with a Haar orthogonal map.
    """
    if dim < 6:
        raise ValueError("need ambient dimension >= 6")
    rng = (seed_or_rng if isinstance(seed_or_rng, np.random.Generator)
           else np.random.default_rng(seed_or_rng))
    frame = _anchored_frame(3, sqrt(2.0))  # (3, 3)
    padded = np.zeros((3, dim))
    padded[:, :3] = frame
    Q = random_orthogonal(dim, rng)
    return padded @ Q.T


def far_pair_witness(tetra_points, tol: float = 1e-9):
    """Locate a tetra vertex farther than sqrt(2) from some unit vector.

    Input: the three nonzero vertices of a regular side-sqrt(2) tetrahedron
    anchored at the origin, in dimension >= 6. Returns (i, j, value) with
    value the smallest of the first six coordinates; value < 1/2 always
    holds for feasible input, and is equivalent to |p_i - e_j| > sqrt(2).
    Indices are 0-based.
    """
    pts = np.asarray(tetra_points, dtype=float)
    if pts.shape[0] != 3 or pts.shape[1] < 6:
        raise ValueError("need 3 points in dimension >= 6")
    for i in range(3):
        if abs(pts[i] @ pts[i] - 2.0) > tol * 2.0:
            raise ValueError(f"vertex {i} does not have squared norm 2")
        for j in range(i + 1, 3):
            d = pts[i] - pts[j]
            if abs(d @ d - 2.0) > tol * 2.0:
                raise ValueError(f"pair {i},{j} is not at squared distance 2")
    first6 = pts[:, :6]
    flat = int(np.argmin(first6))
    i, j = divmod(flat, 6)
    return i, j, float(first6[i, j])


def far_pair_adversary(restarts: int = DEFAULT_RESTARTS, seed: int = 0,
                       dim: int = 9) -> dict:
    """Adversarial search maximizing the smallest of the first six coordinates.

    Over all regular side-sqrt(2) tetrahedra anchored at the origin, tries
    to push every coordinate x_i(j), j < 6, as high as possible. The best
    max-min found is a lower bound on the adversary's optimum; it stays
    below 1/2, which is exactly why appending such a tetrahedron to the
    cube-corner star always stretches some distance past sqrt(2).
    """
    if dim < 6:
        raise ValueError("need ambient dimension >= 6")
    frame = _anchored_frame(3, sqrt(2.0))

    def placement(A_flat: np.ndarray) -> np.ndarray:
        Q = _orthonormal(A_flat.reshape(dim, 3))
        return frame @ Q.T

    def true_minimum(V: np.ndarray) -> float:
        return float(V[:, :6].min())

    rng = np.random.default_rng(seed)
    best_val = -np.inf
    best_V = None
    values = []
    for _ in range(restarts):
        x = rng.standard_normal(dim * 3)
        for beta in _BETAS:

            def surrogate(a):
                v = placement(a)[:, :6].ravel()
                m = v.min()
                # smooth minimum, negated for the minimizer
                return -(m - np.log(np.exp(-beta * (v - m)).sum()) / beta)

            res = minimize(surrogate, x, method="L-BFGS-B",
                           options={"maxiter": 300})
            x = res.x
        V = placement(x)
        val = true_minimum(V)
        values.append(val)
        if val > best_val:
            best_val = val
            best_V = V
    return {
        "dim": dim,
        "restarts": restarts,
        "best_max_min": best_val,
        "restart_values": tuple(values),
        "points": best_V.tolist(),
    }
