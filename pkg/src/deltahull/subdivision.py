"""Iterated barycentric facet subdivision and the lifted simplicial polytopes.

The base object is the integer sum-zero simplex with vertex columns
(n+1)e_i - 1 and the all-minus-ones column. Each subdivision step replaces
every facet simplex by the n simplices through its barycenter, multiplying
the cone count by n and dividing each cone determinant by n exactly. Lifting
scales each barycenter ray just past the facet it subdivides, producing a
simplicial polytope whose facet cones reproduce the fan.
"""

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import factorial, sqrt

from . import linalg, model, stats
from .errors import EmptyAlphaInterval
from .linalg import Mat, dot

Rows = tuple[int, ...]
Point = tuple[Fraction, ...]


@dataclass
class SubdivisionFan:
    """Depth-k fan: rays indexed 0.., cones as n-tuples of ray indices."""

    n: int
    depth: int
    rays: list[Point]
    cones: list[Rows]
    parent: list[int]  # cone position at depth-1 that spawned each cone; -1 at depth 0

    def generators(self) -> Mat:
        """Rays as matrix rows, the layout delta_max and cone tests expect."""
        return [list(r) for r in self.rays]

    def cone_det(self, cone: Rows) -> Fraction:
        return abs(linalg.det_exact([list(self.rays[r]) for r in cone]))


def base_simplex(n: int) -> list[Point]:
    """Vertex columns of the sum-zero integer simplex in dimension n."""
    if n < 2:
        raise ValueError("dimension must be at least 2")
    cols = []
    for i in range(n):
        cols.append(
            tuple(Fraction((n + 1) if j == i else 0) - 1 for j in range(n))
        )
    cols.append(tuple(Fraction(-1) for _ in range(n)))
    return cols


def base_fan(n: int) -> SubdivisionFan:
    rays = base_simplex(n)
    cones = [tuple(c) for c in combinations(range(n + 1), n)]
    return SubdivisionFan(n, 0, rays, cones, [-1] * len(cones))


def barycenter_index(fan: SubdivisionFan, cone_position: int) -> int:
    """Ray index the given cone's barycenter receives after one subdivision."""
    return len(fan.rays) + cone_position


def subdivide_fan(fan: SubdivisionFan) -> SubdivisionFan:
    """One barycentric step: every cone splits into n children."""
    n = fan.n
    rays = list(fan.rays)
    cones: list[Rows] = []
    parent: list[int] = []
    for ci, cone in enumerate(fan.cones):
        b = tuple(
            sum((fan.rays[r][t] for r in cone), Fraction(0)) / n
            for t in range(n)
        )
        b_idx = len(rays)
        rays.append(b)
        for r in cone:
            child = tuple(sorted(set(cone) - {r} | {b_idx}))
            cones.append(child)
            parent.append(ci)
    return SubdivisionFan(n, fan.depth + 1, rays, cones, parent)


def build_subdivision_fans(n: int, k: int) -> list[SubdivisionFan]:
    """Fans of every depth 0..k."""
    fans = [base_fan(n)]
    for _ in range(k):
        fans.append(subdivide_fan(fans[-1]))
    return fans


def expected_counts(n: int, k: int) -> dict[str, int]:
    """Closed-form cone count, fan-graph diameter, and delta ratio."""
    return {
        "cones": (n + 1) * n**k,
        "diameter": 2 ** (k + 1) - 1,
        "delta_ratio": n**k,
    }


@dataclass
class LiftedPolytope:
    """Simplicial polytope whose facet cones are the depth-k fan."""

    fan: SubdivisionFan
    scaling: list[Fraction]
    facet_normals: dict[Rows, Point]  # facet inequality <u, x> <= 1

    def vertex_columns(self) -> list[Point]:
        return [
            tuple(s * x for x in ray)
            for s, ray in zip(self.scaling, self.fan.rays)
        ]

    def dual_rhs(self) -> list[Fraction]:
        return [1 / s for s in self.scaling]

    def dual_polyhedron(self) -> model.HPolyhedron:
        """Polar polytope {x : <ray_i, x> <= 1/scale_i} as an instance."""
        return model.make_polyhedron(
            self.fan.generators(),
            self.dual_rhs(),
            name=f"subdivision-dual-n{self.fan.n}-k{self.fan.depth}",
        )


def _facet_normal(points: list[Point]) -> Point:
    return tuple(linalg.solve_linear([list(p) for p in points], [Fraction(1)] * len(points)))


def lift_polytope(fans: list[SubdivisionFan]) -> LiftedPolytope:
    """Scale each barycenter ray so it beats exactly its parent facet.

    Processes depths in order, keeping the running facet set. For a parent
    facet T with normal u_T, the new ray v gets a scale alpha in the open
    interval (1/<u_T,v>, min over other facets of 1/<u_F,v>), taken at the
    midpoint, or twice the lower end when no other facet caps it. The facet
    T is then replaced by its n children through the new vertex.
    """
    base = fans[0]
    n = base.n
    scaling: list[Fraction] = [Fraction(1)] * len(base.rays)
    facets: dict[Rows, Point] = {}
    for cone in base.cones:
        facets[cone] = _facet_normal([base.rays[r] for r in cone])
    for depth in range(1, len(fans)):
        prev, fan = fans[depth - 1], fans[depth]
        for ci, parent_cone in enumerate(prev.cones):
            b = barycenter_index(prev, ci)
            v = fan.rays[b]
            u_t = facets[parent_cone]
            denom = dot(list(u_t), list(v))
            if denom <= 0:
                raise EmptyAlphaInterval(
                    f"barycenter ray leaves through its own facet at depth {depth}"
                )
            lo = 1 / denom
            hi: Fraction | None = None
            for cone2, u2 in facets.items():
                if cone2 == parent_cone:
                    continue
                w = dot(list(u2), list(v))
                if w > 0:
                    cand = 1 / w
                    if hi is None or cand < hi:
                        hi = cand
            if hi is not None and hi <= lo:
                raise EmptyAlphaInterval(
                    f"no admissible scale at depth {depth}: ({lo}, {hi})"
                )
            alpha = (lo + hi) / 2 if hi is not None else 2 * lo
            assert len(scaling) == b
            scaling.append(alpha)
            del facets[parent_cone]
            for r in parent_cone:
                child = tuple(sorted(set(parent_cone) - {r} | {b}))
                pts = [
                    tuple(scaling[q] * x for x in fan.rays[q]) for q in child
                ]
                facets[child] = _facet_normal(pts)
    final = fans[-1]
    assert set(facets) == set(final.cones)
    return LiftedPolytope(final, scaling, facets)


def normalize_rays(rays: list[Point], digits: int) -> list[Point]:
    """Rays rescaled to unit length, entries rounded to 10^-digits."""
    scale = 10**digits
    out = []
    for ray in rays:
        norm = sqrt(sum(float(x) * float(x) for x in ray))
        if norm == 0:
            raise ValueError("zero ray cannot be normalized")
        out.append(
            tuple(Fraction(round(float(x) / norm * scale), scale) for x in ray)
        )
    return out


def density_profile(fan: SubdivisionFan, samples: int) -> float:
    """Worst distance from a base-facet grid point to the ray set.

    The grid puts positive barycentric combinations (a_i + 1)/(samples-1+n)
    on each base facet; samples=1 is exactly the facet barycenters. The
    value is monotone nonincreasing in depth because rays only accumulate.
    """
    if samples < 1:
        raise ValueError("need at least one sample per facet")
    n = fan.n
    base_rays = [[float(x) for x in fan.rays[i]] for i in range(n + 1)]
    points = [[float(x) for x in ray] for ray in fan.rays]
    worst = 0.0
    total = samples - 1 + n
    for facet in combinations(range(n + 1), n):
        for comp in _compositions(samples - 1, n):
            coeffs = [(a + 1) / total for a in comp]
            sample = [
                sum(c * base_rays[r][t] for c, r in zip(coeffs, facet))
                for t in range(n)
            ]
            dist = min(
                sqrt(sum((s - p[t]) ** 2 for t, s in enumerate(sample)))
                for p in points
            )
            worst = max(worst, dist)
    return worst


def _compositions(total: int, parts: int):
    if parts == 1:
        yield (total,)
        return
    for head in range(total + 1):
        for rest in _compositions(total - head, parts - 1):
            yield (head,) + rest


def tightness_experiment(
    n: int, k_max: int, digits: int, budget: int = stats.DEFAULT_BUDGET
) -> list[dict]:
    """Cone count against the vertex bound on sphere-normalized rays, per depth.

    Each row reports the count, the maximal and average subdeterminants of
    the normalized ray matrix, the bound n!*(delta/delta_avg)*vol(ball), and
    the count/bound ratio. The ratio climbs toward 1 as depth grows.
    """
    fans = build_subdivision_fans(n, k_max)
    table = []
    for fan in fans:
        normalized = normalize_rays(fan.rays, digits)
        gens = [list(r) for r in normalized]
        dets = [
            abs(linalg.det_exact([gens[i] for i in cone])) for cone in fan.cones
        ]
        delta, _ = stats.delta_max(gens, budget)
        avg = sum(dets, Fraction(0)) / len(dets)
        bound = factorial(n) * float(delta / avg) * stats.unit_ball_volume(n)
        table.append(
            {
                "depth": fan.depth,
                "cones": len(fan.cones),
                "delta": delta,
                "delta_avg": avg,
                "bound": bound,
                "ratio": len(fan.cones) / bound,
            }
        )
    return table
