"""Diameter graphs and their r-uniform clique hypergraphs.

The r-uniform structure on a point set has one hyperedge per r-subset whose
points are pairwise at the diameter, i.e. per r-clique of the diameter
graph. Edges are kept as strictly sorted, deduplicated index tuples so that
results are canonical regardless of enumeration order.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .constructions import kahn_kalai_blocks, kahn_kalai_set
from .geometry import PointSet, diameter


@dataclass(frozen=True)
class Hypergraph:
    """Vertex count plus a canonical list of hyperedges."""

    n_vertices: int
    edges: tuple
    uniformity: int | None = None

    def __post_init__(self):
        seen = set()
        for e in self.edges:
            if not e:
                raise ValueError("empty hyperedge")
            if list(e) != sorted(set(e)):
                raise ValueError(f"edge {e} is not strictly sorted")
            if e[0] < 0 or e[-1] >= self.n_vertices:
                raise ValueError(f"edge {e} leaves the vertex range")
            if e in seen:
                raise ValueError(f"duplicate edge {e}")
            seen.add(e)
            if self.uniformity is not None and len(e) != self.uniformity:
                raise ValueError(f"edge {e} breaks {self.uniformity}-uniformity")

    @classmethod
    def make(cls, n_vertices: int, edges, uniformity: int | None = None) -> "Hypergraph":
        canon = sorted({tuple(sorted(set(e))) for e in edges})
        return cls(n_vertices, tuple(canon), uniformity)

    @property
    def n_edges(self) -> int:
        return len(self.edges)

    def to_json(self) -> dict:
        return {
            "schema": 1,
            "n": self.n_vertices,
            "r": self.uniformity,
            "edges": [list(e) for e in self.edges],
        }

    @classmethod
    def from_json(cls, doc: dict) -> "Hypergraph":
        try:
            n = doc["n"]
            edges = [tuple(int(v) for v in e) for e in doc["edges"]]
        except (KeyError, TypeError) as exc:
            raise ValueError(f"malformed hypergraph document: {exc}") from exc
        return cls.make(int(n), edges, doc.get("r"))


def diameter_graph(P: PointSet) -> Hypergraph:
    """Graph joining exactly the pairs of points at distance diam(P)."""
    if len(P) < 2:
        raise ValueError("diameter graph needs at least two points")
    info = diameter(P)
    return Hypergraph.make(len(P), info.pairs, uniformity=2)


def _r_cliques(n: int, pair_edges, r: int) -> list:
    """All r-cliques of a graph, via ordered extension over adjacency bitsets."""
    adj = [0] * n
    for i, j in pair_edges:
        adj[i] |= 1 << j
        adj[j] |= 1 << i
    out = []
    stack = []

    def extend(cand: int) -> None:
        need = r - len(stack)
        if need == 0:
            out.append(tuple(stack))
            return
        while cand:
            if cand.bit_count() < need:
                return
            low = cand & -cand
            v = low.bit_length() - 1
            cand ^= low
            stack.append(v)
            extend(cand & adj[v])
            stack.pop()

    extend((1 << n) - 1)
    return out


def diameter_hypergraph(P: PointSet, r: int) -> Hypergraph:
    """r-uniform hypergraph whose edges are the r-cliques of the diameter graph."""
    if r < 2:
        raise ValueError("uniformity r must be >= 2")
    base = diameter_graph(P)
    if r == 2:
        return base
    cliques = _r_cliques(base.n_vertices, base.edges, r)
    return Hypergraph.make(len(P), cliques, uniformity=r)


def verify_intersection_fact(n: int, r: int) -> dict:
    """Cross-check the partition set's hyperedges against set intersections.

    The clique route (diameter hypergraph) must coincide with the direct
    route: r-families of partition blocks pairwise intersecting in n/2
    elements. Returns a report with counts and, on mismatch, one offending
    family per direction.
    """
    P = kahn_kalai_set(n)
    blocks = kahn_kalai_blocks(n)
    H = diameter_hypergraph(P, r)
    half = n // 2
    direct = set()
    for family in combinations(range(len(blocks)), r):
        if all(len(blocks[i] & blocks[j]) == half
               for i, j in combinations(family, 2)):
            direct.add(family)
    clique_route = set(H.edges)
    missing = sorted(direct - clique_route)
    extra = sorted(clique_route - direct)
    return {
        "n": n,
        "r": r,
        "match": not missing and not extra,
        "hyperedge_count": len(clique_route),
        "direct_count": len(direct),
        "missing_from_cliques": missing[:3],
        "not_in_direct": extra[:3],
    }


def hopf_pannwitz_audit(P: PointSet) -> dict:
    """Check the planar bound: the diameter occurs at most n times."""
    if P.dim != 2:
        raise ValueError("audit applies to planar point sets only")
    G = diameter_graph(P)
    n = len(P)
    return {
        "points": n,
        "diameter_edges": G.n_edges,
        "bound": n,
        "ok": G.n_edges <= n,
        "attains_bound": G.n_edges == n,
    }
