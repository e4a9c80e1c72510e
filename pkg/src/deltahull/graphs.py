"""Skeleton graphs of polytopes and cone fans, with exact diameters."""

from collections import deque
from dataclasses import dataclass, field

from . import linalg, model
from .errors import DisconnectedGraph
from .linalg import Mat, dot

Rows = tuple[int, ...]


@dataclass
class SkeletonGraph:
    """Undirected simple graph over integer node ids."""

    kind: str
    adjacency: dict[int, list[int]] = field(default_factory=dict)

    @property
    def nodes(self) -> list[int]:
        return sorted(self.adjacency)

    @property
    def edge_count(self) -> int:
        return sum(len(v) for v in self.adjacency.values()) // 2

    def degree(self, node: int) -> int:
        return len(self.adjacency[node])

    def add_edge(self, u: int, v: int) -> None:
        if u == v:
            return
        if v not in self.adjacency.setdefault(u, []):
            self.adjacency[u].append(v)
        if u not in self.adjacency.setdefault(v, []):
            self.adjacency[v].append(u)

    def finalize(self) -> "SkeletonGraph":
        for node in self.adjacency:
            self.adjacency[node].sort()
        return self


def build_polytope_graph(p: model.HPolyhedron, result) -> SkeletonGraph:
    """Vertex-edge graph from positive-step pivots, revalidated exactly.

    A candidate pair must share tight rows of rank n-1 and have a feasible
    midpoint; both hold for genuine edges, so a rejection here means the
    enumeration produced an inconsistent pair.
    """
    g = SkeletonGraph(kind="polytope-graph")
    for v in result.vertices:
        g.adjacency.setdefault(v.index, [])
    for edge in result.pivot_edges:
        if edge.ray or edge.step == 0:
            continue
        u = result.basis_owner[edge.from_basis]
        w = result.basis_owner[edge.to_basis]
        if u == w:
            continue
        common = tuple(
            sorted(set(result.vertices[u].tight) & set(result.vertices[w].tight))
        )
        if linalg.rank_of(model.submatrix(p, common)) != p.n - 1:
            continue
        mid = [
            (a + b) / 2
            for a, b in zip(result.vertices[u].point, result.vertices[w].point)
        ]
        if not p.contains(mid):
            continue
        g.add_edge(u, w)
    return g.finalize()


def build_fan_graph(cones: list[Rows], generators: Mat) -> SkeletonGraph:
    """Cone adjacency: shared n-1 rays spanning a true common facet.

    generators[i] is the vector of ray i. Two cones are adjacent when they
    share exactly n-1 rays and their remaining rays lie strictly on opposite
    sides of the shared hyperplane (adjugate sign test).
    """
    g = SkeletonGraph(kind="fan-graph")
    for i in range(len(cones)):
        g.adjacency.setdefault(i, [])
    by_facet: dict[Rows, list[int]] = {}
    for ci, cone in enumerate(cones):
        for drop in cone:
            facet = tuple(r for r in cone if r != drop)
            by_facet.setdefault(facet, []).append(ci)
    for facet, owners in by_facet.items():
        for a in range(len(owners)):
            for b in range(a + 1, len(owners)):
                ci, cj = owners[a], owners[b]
                if _opposite_sides(cones[ci], cones[cj], facet, generators):
                    g.add_edge(ci, cj)
    return g.finalize()


def _opposite_sides(cone_a: Rows, cone_b: Rows, facet: Rows, gens: Mat) -> bool:
    ra = next(r for r in cone_a if r not in facet)
    rb = next(r for r in cone_b if r not in facet)
    sub = [gens[r] for r in cone_a]
    pos = cone_a.index(ra)
    u = linalg.adjugate_column(sub, pos)
    side_a = dot(gens[ra], u)  # equals det(sub), nonzero
    side_b = dot(gens[rb], u)
    return side_a * side_b < 0


def graph_diameter(g: SkeletonGraph) -> int:
    """Exact diameter via breadth-first search from every node."""
    nodes = g.nodes
    if not nodes:
        raise DisconnectedGraph("empty graph")
    diameter = 0
    for source in nodes:
        dist = {source: 0}
        queue = deque([source])
        while queue:
            u = queue.popleft()
            for v in g.adjacency[u]:
                if v not in dist:
                    dist[v] = dist[u] + 1
                    queue.append(v)
        if len(dist) != len(nodes):
            raise DisconnectedGraph(
                f"{len(dist)} of {len(nodes)} nodes reachable from {source}"
            )
        diameter = max(diameter, max(dist.values()))
    return diameter
