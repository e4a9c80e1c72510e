"""Vertex enumeration by best-first search over feasible bases.

The search nodes are simplicial cones of the normal fan, one basis per cone.
Simple vertices contribute their unique basis; a degenerate vertex gets its
normal cone triangulated on first visit and each simplex becomes a node.
Pivoting from a node runs an exact ratio test; positive steps cross edges of
the polyhedron, zero steps move between bases of the same vertex, and an
empty ratio test marks an unbounded edge.
"""

import heapq
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from math import comb

from . import linalg, model
from .errors import BudgetExceeded, NotAVertex, RankDeficient, SingularUpdate
from .linalg import Mat, Vec, dot
from .model import HPolyhedron, VertexRecord

Rows = tuple[int, ...]


@dataclass(frozen=True)
class PivotEdge:
    """One pivot out of a basis: relax `leaving`, walk until `entering` blocks.

    `ray` marks an unblocked direction; then entering is None and step is 0.
    A zero step with an entering row means the pivot stays at the same point.
    """

    from_basis: Rows
    leaving: int
    entering: int | None
    step: Fraction
    direction: tuple[Fraction, ...]
    ray: bool = False

    @property
    def to_basis(self) -> Rows | None:
        if self.ray:
            return None
        keep = set(self.from_basis) - {self.leaving} | {self.entering}
        return tuple(sorted(keep))


@dataclass
class Triangulation:
    """Simplicial cones of the normal fan, grouped by owning vertex."""

    cones_by_vertex: list[list[Rows]] = field(default_factory=list)

    @property
    def cones(self) -> list[Rows]:
        return [c for group in self.cones_by_vertex for c in group]

    def __len__(self) -> int:
        return sum(len(g) for g in self.cones_by_vertex)


@dataclass
class WorkCounters:
    bases_visited: int = 0
    ratio_mults: int = 0
    max_basis_mults: int = 0

    def charge(self, mults: int) -> None:
        self.ratio_mults += mults
        self.max_basis_mults = max(self.max_basis_mults, mults)


@dataclass
class EnumerationResult:
    vertices: list[VertexRecord]
    triangulation: Triangulation
    pivot_graph: dict[Rows, list[Rows]]
    pivot_edges: list[PivotEdge]
    rays: list[tuple[int, tuple[Fraction, ...]]]
    counters: WorkCounters
    basis_owner: dict[Rows, int]

    @property
    def bounded(self) -> bool:
        return not self.rays

    def vertex_points(self) -> set[tuple[Fraction, ...]]:
        return {v.point for v in self.vertices}


def _primitive_direction(d: Vec) -> tuple[Fraction, ...]:
    """Scale a nonzero rational vector to primitive integer form."""
    from math import gcd

    lcm = 1
    for x in d:
        lcm = lcm // gcd(lcm, x.denominator) * x.denominator
    ints = [int(x * lcm) for x in d]
    g = 0
    for v in ints:
        g = gcd(g, abs(v))
    return tuple(Fraction(v, g) for v in ints)


def pivot_neighbors(
    p: HPolyhedron,
    rows: Rows,
    inv: Mat,
    x: Vec,
    counters: WorkCounters | None = None,
) -> list[PivotEdge]:
    """All pivot edges out of a feasible basis.

    For each leaving row the edge direction is the negated inverse column;
    the exact ratio test picks every row attaining the minimal step (ties at
    a degenerate vertex each yield an edge). Multiplications spent in the
    test are charged to `counters` when given.
    """
    n = p.n
    edges = []
    mults = 0
    for pos, leaving in enumerate(rows):
        d = [-inv[r][pos] for r in range(n)]
        best: Fraction | None = None
        winners: list[int] = []
        for i in range(p.m):
            if i in rows:
                continue
            w = dot(p.row(i), d)
            mults += n
            if w <= 0:
                continue
            t = (p.b[i] - dot(p.row(i), x)) / w
            mults += n
            if best is None or t < best:
                best, winners = t, [i]
            elif t == best:
                winners.append(i)
        if best is None:
            edges.append(
                PivotEdge(rows, leaving, None, Fraction(0), tuple(d), ray=True)
            )
        else:
            for i in winners:
                edges.append(PivotEdge(rows, leaving, i, best, tuple(d)))
    if counters is not None:
        counters.charge(mults)
    return edges


def _coefficients_in_basis(gens: Mat, v: Vec) -> Vec:
    """Coordinates of v in the span of independent generators (Gram solve)."""
    gram = [[dot(g, h) for h in gens] for g in gens]
    return linalg.solve_linear(gram, [dot(g, v) for g in gens])


def triangulate_normal_cone(p: HPolyhedron, tight: Rows) -> list[Rows]:
    """Placing triangulation of the cone spanned by the tight-row normals.

    Rows are inserted in ascending index order. A row that enlarges the span
    cones the whole current complex; a row inside the span is joined to every
    boundary facet it sees strictly from outside. Rows that land inside the
    cone are absorbed without creating simplices. Returns index tuples whose
    union covers the cone with pairwise disjoint interiors.
    """
    tight = tuple(sorted(tight))
    if linalg.rank_of(model.submatrix(p, tight)) < p.n:
        raise RankDeficient("tight rows do not span the space")
    cones: list[Rows] = [(tight[0],)]
    span_rows: list[int] = [tight[0]]
    for idx in tight[1:]:
        v = p.row(idx)
        gens = model.submatrix(p, tuple(span_rows))
        if linalg.rank_of(gens + [v]) > len(span_rows):
            cones = [c + (idx,) for c in cones]
            span_rows.append(idx)
            continue
        facet_count: dict[Rows, int] = {}
        for c in cones:
            for drop in c:
                f = tuple(j for j in c if j != drop)
                facet_count[f] = facet_count.get(f, 0) + 1
        added: list[Rows] = []
        for c in cones:
            gen_rows = model.submatrix(p, c)
            lam = _coefficients_in_basis(gen_rows, v)
            for k, drop in enumerate(c):
                f = tuple(j for j in c if j != drop)
                if facet_count[f] == 1 and lam[k] < 0:
                    added.append(tuple(sorted(f + (idx,))))
        cones.extend(added)
    return sorted(tuple(sorted(c)) for c in cones)


def _sorted_inverse(inv_unsorted: Mat, unsorted_rows: list[int]) -> Mat:
    """Permute inverse columns so they match the sorted row order."""
    order = sorted(range(len(unsorted_rows)), key=lambda k: unsorted_rows[k])
    return [[row[k] for k in order] for row in inv_unsorted]


def _child_inverse(p: HPolyhedron, inv: Mat, rows: Rows, edge: PivotEdge) -> Mat:
    """Inverse of the pivoted basis, kept in sorted-row column order."""
    pos = rows.index(edge.leaving)
    new_row = p.row(edge.entering)
    try:
        upd = linalg.basis_inverse_update(inv, pos, new_row)
    except SingularUpdate:  # pragma: no cover - valid pivots never trigger
        return linalg.invert(model.submatrix(p, edge.to_basis))
    unsorted_rows = list(rows)
    unsorted_rows[pos] = edge.entering
    return _sorted_inverse(upd, unsorted_rows)


def enumerate_vertices(p: HPolyhedron, v0: VertexRecord) -> EnumerationResult:
    """All vertices of p reachable from the starting vertex (that is, all).

    Best-first search over bases in lexicographic order: deterministic
    traversal, duplicate-free vertex list keyed on exact points, normal cone
    triangulated once per vertex, rays recorded per (vertex, direction).
    """
    tight = model.tight_set(p, list(v0.point))
    if linalg.rank_of(model.submatrix(p, tight)) < p.n:
        raise NotAVertex("tight rows at the starting point have rank < n")
    start = VertexRecord(tuple(v0.point), tight)

    vertices: list[VertexRecord] = []
    triangulation = Triangulation()
    by_point: dict[tuple[Fraction, ...], int] = {}
    basis_owner: dict[Rows, int] = {}
    pivot_graph: dict[Rows, set[Rows]] = {}
    pivot_edges: list[PivotEdge] = []
    ray_set: set[tuple[int, tuple[Fraction, ...]]] = set()
    counters = WorkCounters()
    heap: list[Rows] = []
    seen: set[Rows] = set()
    inv_cache: dict[Rows, Mat] = {}

    def register(point: tuple[Fraction, ...], tight: Rows) -> int:
        index = by_point.get(point)
        if index is not None:
            return index
        index = len(vertices)
        by_point[point] = index
        record = VertexRecord(point, tight, index)
        vertices.append(record)
        cones = triangulate_normal_cone(p, tight)
        triangulation.cones_by_vertex.append(cones)
        record.bases = list(cones)
        for c in cones:
            basis_owner.setdefault(c, index)
            heapq.heappush(heap, c)
        return index

    register(start.point, start.tight)
    while heap:
        rows = heapq.heappop(heap)
        if rows in seen:
            continue
        seen.add(rows)
        counters.bases_visited += 1
        inv = inv_cache.pop(rows, None)
        if inv is None:
            inv = linalg.invert(model.submatrix(p, rows))
        owner = basis_owner.get(rows)
        if owner is None:
            x = linalg.solve_linear(
                model.submatrix(p, rows), [p.b[i] for i in rows]
            )
            owner = register(tuple(x), model.tight_set(p, x))
            basis_owner[rows] = owner
        x = list(vertices[owner].point)
        for edge in pivot_neighbors(p, rows, inv, x, counters):
            if edge.ray:
                ray_set.add((owner, _primitive_direction(list(edge.direction))))
                pivot_edges.append(edge)
                continue
            pivot_edges.append(edge)
            target = edge.to_basis
            pivot_graph.setdefault(rows, set()).add(target)
            pivot_graph.setdefault(target, set()).add(rows)
            if target in seen:
                continue
            if edge.step > 0:
                point = tuple(
                    xi + edge.step * di for xi, di in zip(x, edge.direction)
                )
                register(point, model.tight_set(p, list(point)))
                if target not in basis_owner:
                    basis_owner[target] = by_point[point]
            else:
                basis_owner.setdefault(target, owner)
            if target not in inv_cache:
                inv_cache[target] = _child_inverse(p, inv, rows, edge)
            heapq.heappush(heap, target)

    graph = {b: sorted(neigh) for b, neigh in sorted(pivot_graph.items())}
    return EnumerationResult(
        vertices=vertices,
        triangulation=triangulation,
        pivot_graph=graph,
        pivot_edges=pivot_edges,
        rays=sorted(ray_set),
        counters=counters,
        basis_owner=basis_owner,
    )


def run_enumeration(p: HPolyhedron, feasible_point: Vec | None = None) -> EnumerationResult:
    """Feasibility phase, ray-cast initialization, then full enumeration."""
    x0 = list(feasible_point) if feasible_point is not None else model.phase_one(p)
    return enumerate_vertices(p, model.find_initial_vertex(p, x0))


@dataclass
class OracleEnumeration:
    """Ground truth from testing every n-subset of rows."""

    vertices: list[VertexRecord]
    feasible_bases: list[Rows]

    def vertex_points(self) -> set[tuple[Fraction, ...]]:
        return {v.point for v in self.vertices}


def enumerate_all_bases_oracle(
    p: HPolyhedron, budget: int = 10**5
) -> OracleEnumeration:
    """Exhaustive vertex enumeration over all C(m,n) row subsets."""
    total = comb(p.m, p.n)
    if total > budget:
        raise BudgetExceeded(f"C({p.m},{p.n}) = {total} exceeds budget {budget}")
    by_point: dict[tuple[Fraction, ...], VertexRecord] = {}
    feasible: list[Rows] = []
    for rows in combinations(range(p.m), p.n):
        if not model.is_feasible_basis(p, rows):
            continue
        feasible.append(rows)
        x = model.basis_vertex(p, rows)
        point = tuple(x)
        record = by_point.get(point)
        if record is None:
            record = VertexRecord(point, model.tight_set(p, x), len(by_point))
            by_point[point] = record
        record.bases.append(rows)
    vertices = sorted(by_point.values(), key=lambda r: r.point)
    for i, r in enumerate(vertices):
        r.index = i
    return OracleEnumeration(vertices, feasible)
