"""Subdeterminant statistics and the bound certificates built on them.

Covers the maximum absolute n x n subdeterminant with a witness basis,
per-triangulation averages and minima, exact fan volumes, the vertex-count
and fan-volume inequalities, the unimodularizing transform, and the
basis-distance / wideness numbers behind the diameter certificate.
"""

import os
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import comb, factorial, gamma, log, pi

from . import linalg, model
from .errors import BoundViolated, BudgetExceeded, SingularBasis, SingularMatrix
from .linalg import Mat, dot

Rows = tuple[int, ...]

DEFAULT_BUDGET = int(os.environ.get("DELTAHULL_BUDGET", "100000"))


def _abs_det(rows: Mat) -> Fraction:
    return abs(linalg.det_exact(rows))


def delta_max(a: Mat, budget: int = DEFAULT_BUDGET) -> tuple[Fraction, Rows]:
    """Largest |det| over all n-row submatrices, with its witness rows.

    Scans every subset when C(m,n) fits the budget; otherwise branch and
    bound on a norm-descending row order with a Gram-determinant x
    remaining-norms product bound. Ties resolve to the lexicographically
    smallest witness in original row order. Raises BudgetExceeded when the
    pruned search still exceeds 50x the subset budget.
    """
    m, n = len(a), len(a[0])
    if comb(m, n) <= budget:
        best = Fraction(-1)
        witness: Rows = ()
        for rows in combinations(range(m), n):
            d = _abs_det([a[i] for i in rows])
            if d > best:
                best, witness = d, rows
        return best, witness
    return _delta_max_branch_bound(a, budget)


def _delta_max_branch_bound(a: Mat, budget: int) -> tuple[Fraction, Rows]:
    m, n = len(a), len(a[0])
    norms_sq = [dot(row, row) for row in a]
    order = sorted(range(m), key=lambda i: (-norms_sq[i], i))
    sorted_norms = [norms_sq[i] for i in order]
    # suffix_top[p][j]: product of the j largest norms at positions >= p
    suffix_top = [[Fraction(1)] * (n + 1) for _ in range(m + 1)]
    for p in range(m - 1, -1, -1):
        for j in range(1, n + 1):
            if p + j <= m:
                suffix_top[p][j] = sorted_norms[p] * suffix_top[p + 1][j - 1]

    def gram_det(rows: list[int]) -> Fraction:
        g = [[dot(a[i], a[j]) for j in rows] for i in rows]
        return linalg.det_exact(g)

    best_sq = Fraction(-1)
    witness: Rows = ()
    node_cap = 50 * budget
    nodes = 0
    stack: list[tuple[list[int], int]] = [([], 0)]
    while stack:
        chosen, start = stack.pop()
        nodes += 1
        if nodes > node_cap:
            raise BudgetExceeded(
                f"subdeterminant search exceeded {node_cap} nodes"
            )
        k = len(chosen)
        if k == n:
            d_sq = gram_det(chosen)
            rows = tuple(sorted(chosen))
            if d_sq > best_sq or (d_sq == best_sq and rows < witness):
                best_sq, witness = d_sq, rows
            continue
        g = gram_det(chosen) if chosen else Fraction(1)
        if g * suffix_top[start][n - k] < best_sq:
            continue
        children = []
        for pos in range(start, m - (n - k) + 1):
            # ties may hide the lex-min witness: prune only on strict loss
            if g * suffix_top[pos][n - k] < best_sq:
                break
            children.append((chosen + [order[pos]], pos + 1))
        stack.extend(reversed(children))
    if best_sq <= 0:
        raise SingularBasis("matrix has rank < n; no nonsingular row subset")
    num = linalg.isqrt_exact(best_sq.numerator)
    den = linalg.isqrt_exact(best_sq.denominator)
    return Fraction(num, den), witness


@dataclass
class FanStats:
    """Exact statistics of a simplicial-cone family drawn from matrix rows."""

    delta: Fraction
    witness: Rows
    delta_avg: Fraction
    delta_min: Fraction
    cone_count: int
    fan_volume: Fraction
    cone_dets: tuple[Fraction, ...]

    @property
    def n(self) -> int:
        return len(self.witness)

    @property
    def det_square_sum(self) -> Fraction:
        return sum((d * d for d in self.cone_dets), Fraction(0))


def triangulation_stats(
    a: Mat, cones: list[Rows], budget: int = DEFAULT_BUDGET
) -> FanStats:
    """Delta plus per-triangulation average, minimum, and exact volume."""
    if not cones:
        raise ValueError("empty cone list")
    n = len(a[0])
    dets = tuple(_abs_det([a[i] for i in c]) for c in cones)
    if min(dets) == 0:
        raise SingularBasis("triangulation contains a singular cone")
    delta, witness = delta_max(a, budget)
    total = sum(dets, Fraction(0))
    return FanStats(
        delta=delta,
        witness=witness,
        delta_avg=total / len(dets),
        delta_min=min(dets),
        cone_count=len(dets),
        fan_volume=total / factorial(n),
        cone_dets=dets,
    )


def unit_ball_volume(n: int) -> float:
    """Volume of the n-dimensional Euclidean unit ball."""
    return pi ** (n / 2) / gamma(n / 2 + 1)


RELATIVE_SLACK = 1e-9


@dataclass
class BoundReport:
    name: str
    lhs: float
    rhs: float
    lhs_exact: str
    rhs_exact: str
    passed: bool


def _check(name: str, lhs_exact, lhs: float, rhs: float, rhs_desc: str) -> BoundReport:
    passed = lhs <= rhs * (1 + RELATIVE_SLACK)
    report = BoundReport(name, lhs, rhs, str(lhs_exact), rhs_desc, passed)
    if not passed:
        raise BoundViolated(f"{name}: {lhs} > {rhs}", report)
    return report


def check_vertex_bound(
    p: model.HPolyhedron, result, stats: FanStats | None = None,
    budget: int = DEFAULT_BUDGET,
) -> BoundReport:
    """Vertex count against n! * (delta / delta_avg) * vol(unit ball).

    `result` is an enumeration result carrying vertices and triangulation.
    """
    if stats is None:
        stats = triangulation_stats(p.rows(), result.triangulation.cones, budget)
    n = p.n
    vertex_count = len(result.vertices)
    rhs = float(factorial(n) * stats.delta / stats.delta_avg) * unit_ball_volume(n)
    if vertex_count > stats.cone_count:
        raise BoundViolated(
            f"vertex count {vertex_count} exceeds cone count {stats.cone_count}"
        )
    return _check(
        "vertex-count",
        vertex_count,
        float(vertex_count),
        rhs,
        f"{factorial(n)}*(({stats.delta})/({stats.delta_avg}))*vol_ball({n})",
    )


def check_fan_bound(a: Mat, stats: FanStats) -> tuple[BoundReport, BoundReport]:
    """Fan volume against delta * vol(ball); cone count as in the vertex check."""
    n = len(a[0])
    ball = unit_ball_volume(n)
    volume_report = _check(
        "fan-volume",
        stats.fan_volume,
        float(stats.fan_volume),
        float(stats.delta) * ball,
        f"{stats.delta}*vol_ball({n})",
    )
    count_report = _check(
        "cone-count",
        stats.cone_count,
        float(stats.cone_count),
        float(factorial(n) * stats.delta / stats.delta_avg) * ball,
        f"{factorial(n)}*(({stats.delta})/({stats.delta_avg}))*vol_ball({n})",
    )
    return volume_report, count_report


def totally_unimodular_transform(a: Mat, witness: Rows) -> Mat:
    """Right-multiply by the inverse of the witness rows: A * (A_B)^-1."""
    basis = [a[i] for i in witness]
    try:
        inv = linalg.invert(basis)
    except SingularMatrix:
        raise SingularBasis("witness rows are singular") from None
    return linalg.mat_mul(a, inv)


def count_minors(m: int, n: int) -> int:
    return sum(comb(m, k) * comb(n, k) for k in range(1, min(m, n) + 1))


def verify_total_unimodularity(a: Mat, budget: int = DEFAULT_BUDGET) -> bool:
    """True iff every square minor of any size has |det| <= 1."""
    m, n = len(a), len(a[0])
    total = count_minors(m, n)
    if total > budget:
        raise BudgetExceeded(f"{total} minors exceed budget {budget}")
    for k in range(1, min(m, n) + 1):
        for rows in combinations(range(m), k):
            for cols in combinations(range(n), k):
                sub = [[a[i][j] for j in cols] for i in rows]
                if abs(linalg.det_exact(sub)) > 1:
                    return False
    return True


@dataclass
class DistanceCertificate:
    """Worst basis-row angle over a cone family, kept as an exact square."""

    sin_sq_min: Fraction
    basis: Rows
    row: int

    @property
    def delta(self) -> float:
        return float(self.sin_sq_min) ** 0.5


def local_delta_distance(a: Mat, bases: list[Rows]) -> DistanceCertificate:
    """Minimum normalized distance from a basis row to the others' span.

    For each basis and row, sin^2 of the angle between the row and the span
    of the remaining rows is det^2 / (|row|^2 * |adjugate column|^2), all
    exact. The certificate keeps the minimizing square.
    """
    best: DistanceCertificate | None = None
    for rows in bases:
        sub = [a[i] for i in rows]
        det = linalg.det_exact(sub)
        for pos, i in enumerate(rows):
            u = linalg.adjugate_column(sub, pos)
            sin_sq = det * det / (dot(sub[pos], sub[pos]) * dot(u, u))
            if best is None or sin_sq < best.sin_sq_min:
                best = DistanceCertificate(sin_sq, rows, i)
    if best is None:
        raise ValueError("no bases given")
    return best


@dataclass
class WidenessReport:
    transform_basis: Rows
    sin_sq_min: Fraction
    delta_distance: float
    tau: float
    diameter_bound: float
    lemma_floor: Fraction

    def floor_holds(self) -> bool:
        return self.sin_sq_min >= self.lemma_floor * self.lemma_floor


def wideness_and_diameter_bound(
    p: model.HPolyhedron, stats: FanStats, cones: list[Rows]
) -> WidenessReport:
    """Transform by the witness basis, certify the distance floor, and
    evaluate the 8n/tau * (1 + ln(1/tau)) diameter bound."""
    transformed = totally_unimodular_transform(p.rows(), stats.witness)
    cert = local_delta_distance(transformed, cones)
    n = p.n
    floor = stats.delta_min / (n * stats.delta)
    if cert.sin_sq_min < floor * floor:
        raise BoundViolated(
            f"distance {float(cert.sin_sq_min)}^(1/2) below floor {floor}",
            cert,
        )
    delta = cert.delta
    tau = delta / n
    bound = 8 * n / tau * (1 + log(1 / tau))
    return WidenessReport(
        transform_basis=stats.witness,
        sin_sq_min=cert.sin_sq_min,
        delta_distance=delta,
        tau=tau,
        diameter_bound=bound,
        lemma_floor=floor,
    )
