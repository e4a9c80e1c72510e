"""H-polyhedron model: {x : A x <= b} with exact rational data.

Holds the instance type plus the vertex-level primitives everything else
builds on: tight sets, basis solves, a deterministic ray-cast walk from a
feasible point to a vertex, an exact phase-1 simplex (Bland's rule), and the
redundancy scan.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd

from . import linalg
from .errors import (
    DimensionMismatch,
    DuplicateRow,
    Infeasible,
    InfeasiblePoint,
    NotPointed,
    SingularBasis,
    SingularMatrix,
    UnboundedLine,
)
from .linalg import Mat, Vec, dot


def _normalized_row_key(row: Vec, rhs: Fraction) -> tuple:
    """Canonical key of (row, rhs) under positive rescaling."""
    nums = [x.numerator for x in row] + [rhs.numerator]
    dens = [x.denominator for x in row] + [rhs.denominator]
    lcm = 1
    for d in dens:
        lcm = lcm // gcd(lcm, d) * d
    ints = [n * (lcm // d) for n, d in zip(nums, dens)]
    g = 0
    for v in ints:
        g = gcd(g, abs(v))
    if g > 1:
        ints = [v // g for v in ints]
    return tuple(ints)


@dataclass(frozen=True)
class HPolyhedron:
    """Inequality system A x <= b with rank(A) = n (pointed)."""

    a: tuple[tuple[Fraction, ...], ...]
    b: tuple[Fraction, ...]
    name: str = ""

    @property
    def m(self) -> int:
        return len(self.a)

    @property
    def n(self) -> int:
        return len(self.a[0]) if self.a else 0

    def rows(self) -> Mat:
        return [list(r) for r in self.a]

    def row(self, i: int) -> Vec:
        return list(self.a[i])

    def contains(self, x: Vec) -> bool:
        return all(dot(row, x) <= rhs for row, rhs in zip(self.a, self.b))

    def slacks(self, x: Vec) -> Vec:
        return [rhs - dot(row, x) for row, rhs in zip(self.a, self.b)]


def make_polyhedron(rows, rhs, name: str = "") -> HPolyhedron:
    """Validate and freeze an inequality system.

    Raises DimensionMismatch for ragged input, DuplicateRow when two rows
    coincide up to positive scaling, and NotPointed when rank(A) < n.
    """
    a = [linalg.to_vector(r) for r in rows]
    b = linalg.to_vector(rhs)
    if not a:
        raise DimensionMismatch("empty constraint matrix")
    n = len(a[0])
    if n == 0:
        raise DimensionMismatch("zero-dimensional ambient space")
    if any(len(r) != n for r in a):
        raise DimensionMismatch("ragged constraint matrix")
    if len(b) != len(a):
        raise DimensionMismatch(f"{len(a)} rows but {len(b)} right-hand sides")
    seen = {}
    for i, (row, beta) in enumerate(zip(a, b)):
        if all(x == 0 for x in row):
            raise DimensionMismatch(f"row {i} is the zero vector")
        key = _normalized_row_key(row, beta)
        if key in seen:
            raise DuplicateRow(f"rows {seen[key]} and {i} coincide after scaling")
        seen[key] = i
    if linalg.rank_of(a) < n:
        raise NotPointed(f"rank(A) = {linalg.rank_of(a)} < n = {n}")
    return HPolyhedron(tuple(tuple(r) for r in a), tuple(b), name)


@dataclass(frozen=True)
class Basis:
    """A feasible basis: n independent tight rows plus the cached inverse."""

    rows: tuple[int, ...]
    inverse: tuple[tuple[Fraction, ...], ...]

    def inverse_mat(self) -> Mat:
        return [list(r) for r in self.inverse]


@dataclass
class VertexRecord:
    point: tuple[Fraction, ...]
    tight: tuple[int, ...]
    index: int = -1
    bases: list[tuple[int, ...]] = field(default_factory=list)

    @property
    def simple(self) -> bool:
        return len(self.tight) == len(self.point)


def submatrix(p: HPolyhedron, rows: tuple[int, ...]) -> Mat:
    return [p.row(i) for i in rows]


def basis_vertex(p: HPolyhedron, rows) -> Vec:
    """Solve A_B x = b_B for a candidate vertex; SingularBasis if dependent."""
    rows = tuple(rows)
    try:
        return linalg.solve_linear(submatrix(p, rows), [p.b[i] for i in rows])
    except SingularMatrix as exc:
        raise SingularBasis(str(exc)) from None


def is_feasible_basis(p: HPolyhedron, rows) -> bool:
    try:
        x = basis_vertex(p, rows)
    except SingularMatrix:
        return False
    return p.contains(x)


def tight_set(p: HPolyhedron, x: Vec) -> tuple[int, ...]:
    """Indices of rows satisfied with equality; x must be feasible."""
    out = []
    for i, (row, rhs) in enumerate(zip(p.a, p.b)):
        s = rhs - dot(row, x)
        if s < 0:
            raise InfeasiblePoint(f"row {i} violated by {s}")
        if s == 0:
            out.append(i)
    return tuple(out)


def make_basis(p: HPolyhedron, rows) -> Basis:
    rows = tuple(sorted(rows))
    inv = linalg.invert(submatrix(p, rows))
    return Basis(rows, tuple(tuple(r) for r in inv))


def _independent_tight_basis(p: HPolyhedron, tight: tuple[int, ...]) -> tuple[int, ...]:
    """Lexicographically smallest independent n-subset of a rank-n tight set."""
    chosen: list[int] = []
    for i in tight:
        trial = [p.row(j) for j in chosen] + [p.row(i)]
        if linalg.rank_of(trial) == len(trial):
            chosen.append(i)
            if len(chosen) == p.n:
                return tuple(chosen)
    raise NotPointed("tight rows do not span; point is not a vertex")


def _project_off_rows(p: HPolyhedron, tight: tuple[int, ...], e_index: int) -> Vec:
    """Component of e_{e_index} orthogonal to the span of the tight rows."""
    n = p.n
    e = [Fraction(int(j == e_index)) for j in range(n)]
    if not tight:
        return e
    rows = []
    for i in tight:
        cand = rows + [p.row(i)]
        if linalg.rank_of(cand) == len(cand):
            rows.append(p.row(i))
    if not rows:
        return e
    gram = [[dot(r, s) for s in rows] for r in rows]
    lam = linalg.solve_linear(gram, [dot(r, e) for r in rows])
    proj = e[:]
    for coeff, r in zip(lam, rows):
        proj = [x - coeff * y for x, y in zip(proj, r)]
    return proj


def find_initial_vertex(p: HPolyhedron, x0: Vec) -> VertexRecord:
    """Ray-cast from a feasible point to a vertex of p.

    Deterministic rule: pick the lowest-index standard basis vector outside
    the span of the current tight rows, project it against them, and move to
    the farthest feasible point along the projected direction (or its
    negation if the forward ray is unbounded). Each move adds at least one
    independent tight row, so at most n moves happen.
    """
    x = linalg.to_vector(x0)
    tight = tight_set(p, x)
    while linalg.rank_of(submatrix(p, tight)) < p.n:
        d = None
        for j in range(p.n):
            tight_rows = submatrix(p, tight)
            e = [Fraction(int(t == j)) for t in range(p.n)]
            if linalg.rank_of(tight_rows + [e]) > linalg.rank_of(tight_rows):
                d = _project_off_rows(p, tight, j)
                break
        if d is None:
            raise UnboundedLine("no direction found below rank n")  # unreachable
        step = _max_step(p, x, d)
        if step is None:
            d = [-t for t in d]
            step = _max_step(p, x, d)
            if step is None:
                raise UnboundedLine("polyhedron contains a line despite rank n")
        x = [xi + step * di for xi, di in zip(x, d)]
        tight = tight_set(p, x)
    return VertexRecord(tuple(x), tight)


def _max_step(p: HPolyhedron, x: Vec, d: Vec):
    """Largest t with x + t d feasible, or None if unbounded."""
    best = None
    for row, rhs in zip(p.a, p.b):
        w = dot(row, d)
        if w > 0:
            t = (rhs - dot(row, x)) / w
            if best is None or t < best:
                best = t
    return best


def simplex_max(p: HPolyhedron, objective: Vec, start_rows, start_point=None):
    """Maximize <objective, x> over p from a starting feasible basis.

    Exact simplex over basis pivots with Bland's anti-cycling rule: relax the
    smallest-index basic row whose edge improves the objective; the entering
    row is the smallest index attaining the minimum ratio. Returns
    ("optimal", x, basis_rows) or ("unbounded", direction, basis_rows).
    """
    rows = tuple(sorted(start_rows))
    inv = linalg.invert(submatrix(p, rows))
    x = (
        linalg.to_vector(start_point)
        if start_point is not None
        else basis_vertex(p, rows)
    )
    while True:
        leave_pos = None
        direction = None
        for pos in range(p.n):
            d = [-inv[r][pos] for r in range(p.n)]
            if dot(objective, d) > 0:
                leave_pos = pos
                direction = d
                break
        if leave_pos is None:
            return "optimal", x, rows
        t_best = None
        enter = None
        for i in range(p.m):
            if i in rows:
                continue
            w = dot(p.row(i), direction)
            if w > 0:
                t = (p.b[i] - dot(p.row(i), x)) / w
                if t_best is None or t < t_best or (t == t_best and i < enter):
                    t_best, enter = t, i
        if enter is None:
            return "unbounded", direction, rows
        x = [xi + t_best * di for xi, di in zip(x, direction)]
        rows = tuple(sorted(set(rows) - {rows[leave_pos]} | {enter}))
        inv = linalg.invert(submatrix(p, rows))


def _phase_one_system(p: HPolyhedron) -> HPolyhedron:
    """Auxiliary system over (x, t): A x - t <= b and -t <= 0."""
    rows = [list(r) + [Fraction(-1)] for r in p.rows()]
    rows.append([Fraction(0)] * p.n + [Fraction(-1)])
    rhs = list(p.b) + [Fraction(0)]
    return HPolyhedron(tuple(tuple(r) for r in rows), tuple(rhs), name="phase1")


def phase_one(p: HPolyhedron) -> Vec:
    """Exact feasible point of A x <= b, or raise Infeasible.

    Minimizes the single slack t in the auxiliary system A x - t·1 <= b,
    t >= 0 with Bland's rule; t* = 0 iff the original system is feasible.
    """
    worst = min(p.b)
    if worst >= 0:
        return [Fraction(0)] * p.n
    q = _phase_one_system(p)
    start = [Fraction(0)] * p.n + [-worst]
    v = find_initial_vertex(q, start)
    basis_rows = _independent_tight_basis(q, v.tight)
    objective = [Fraction(0)] * p.n + [Fraction(-1)]  # maximize -t
    status, opt, _ = simplex_max(q, objective, basis_rows, list(v.point))
    assert status == "optimal"  # -t <= 0 bounds the objective
    if opt[-1] > 0:
        raise Infeasible(f"phase one optimum t = {opt[-1]} > 0")
    return opt[: p.n]


def strict_interior_point(p: HPolyhedron):
    """A point with A x < b strictly, or None if the polyhedron is flat.

    Maximizes t in A x + t·1 <= b, t <= 1 starting from a feasible point of
    the original system; the cap keeps the auxiliary problem bounded.
    """
    rows = [list(r) + [Fraction(1)] for r in p.rows()]
    rows.append([Fraction(0)] * p.n + [Fraction(1)])
    rhs = list(p.b) + [Fraction(1)]
    q = HPolyhedron(tuple(tuple(r) for r in rows), tuple(rhs), name="interior")
    x0 = phase_one(p)
    start = x0 + [Fraction(0)]
    v = find_initial_vertex(q, start)
    basis_rows = _independent_tight_basis(q, v.tight)
    objective = [Fraction(0)] * p.n + [Fraction(1)]
    status, opt, _ = simplex_max(q, objective, basis_rows, list(v.point))
    assert status == "optimal"
    if opt[-1] <= 0:
        return None
    return opt[: p.n]


def redundancy_scan(p: HPolyhedron) -> list[int]:
    """Indices of rows whose removal leaves the feasible set unchanged.

    Row i is redundant iff max{A_i x : the other rows} <= b_i. The maximum is
    computed with the exact simplex; an unbounded maximum or a rank drop in
    the remaining system certifies irredundancy. Assumes p is feasible.
    """
    redundant = []
    for i in range(p.m):
        keep = [j for j in range(p.m) if j != i]
        rows = [p.row(j) for j in keep]
        if linalg.rank_of(rows) < p.n:
            continue
        try:
            sub = make_polyhedron(rows, [p.b[j] for j in keep], name=f"{p.name}/-{i}")
        except DuplicateRow:  # pragma: no cover - parent validation forbids
            continue
        try:
            x0 = phase_one(sub)
        except Infeasible:  # parent infeasible too; removal changes nothing
            redundant.append(i)
            continue
        v = find_initial_vertex(sub, x0)
        basis_rows = _independent_tight_basis(sub, v.tight)
        status, opt, _ = simplex_max(sub, p.row(i), basis_rows, list(v.point))
        if status == "optimal" and dot(p.row(i), opt) <= p.b[i]:
            redundant.append(i)
    return redundant


def drop_rows(p: HPolyhedron, drop) -> HPolyhedron:
    keep = [i for i in range(p.m) if i not in set(drop)]
    return make_polyhedron(
        [p.row(i) for i in keep], [p.b[i] for i in keep], name=p.name
    )
