"""Instance validation, tight sets, vertex ray-cast, phase 1, redundancy."""

import random
from fractions import Fraction
from itertools import combinations

import pytest

from deltahull.errors import (
    DimensionMismatch,
    DuplicateRow,
    Infeasible,
    InfeasiblePoint,
    NotPointed,
    SingularBasis,
)
from deltahull.linalg import rank_of
from deltahull.model import (
    basis_vertex,
    drop_rows,
    find_initial_vertex,
    is_feasible_basis,
    make_polyhedron,
    phase_one,
    redundancy_scan,
    strict_interior_point,
    submatrix,
    tight_set,
)

from conftest import cube, square, square_pyramid


def test_make_polyhedron_accepts_unit_square():
    p = square()
    assert p.m == 4
    assert p.n == 2
    assert p.contains([Fraction(1, 2), Fraction(1, 2)])
    assert not p.contains([Fraction(2), Fraction(0)])


def test_make_polyhedron_preserves_rational_entries_exactly():
    p = make_polyhedron([["3/7", 1], [-1, 0], [0, -1]], [1, 0, 0])
    assert p.a[0][0] == Fraction(3, 7)
    assert p.a[0][0] * 7 == 3


def test_make_polyhedron_rejects_bad_shapes():
    with pytest.raises(DimensionMismatch):
        make_polyhedron([[1, 0], [0, 1, 2]], [1, 1])
    with pytest.raises(DimensionMismatch):
        make_polyhedron([[1, 0], [0, 1]], [1])
    with pytest.raises(DimensionMismatch):
        make_polyhedron([[0, 0], [0, 1]], [1, 1])
    with pytest.raises(DimensionMismatch):
        make_polyhedron([], [])


def test_make_polyhedron_rejects_duplicate_rows_up_to_scaling():
    with pytest.raises(DuplicateRow):
        make_polyhedron([[1, 0], [2, 0], [0, 1]], [1, 2, 1])
    # Same normal but a genuinely different constraint is fine.
    p = make_polyhedron([[1, 0], [2, 0], [0, 1], [-1, 0], [0, -1]], [1, 4, 1, 0, 0])
    assert p.m == 5


def test_make_polyhedron_rejects_rank_deficient_systems():
    with pytest.raises(NotPointed):
        make_polyhedron([[1, 0], [-1, 0]], [1, 0])
    with pytest.raises(NotPointed):
        make_polyhedron([[1, 1, 0], [0, 1, 0], [1, 2, 0]], [1, 1, 2])


def test_basis_vertex_unit_square_examples():
    p = square()
    # Row order in the fixture: x<=1, y<=1, -x<=0, -y<=0.
    assert basis_vertex(p, (0, 1)) == [Fraction(1), Fraction(1)]
    assert basis_vertex(p, (0, 3)) == [Fraction(1), Fraction(0)]
    assert basis_vertex(p, (2, 3)) == [Fraction(0), Fraction(0)]


def test_basis_vertex_rejects_dependent_rows():
    p = square()
    with pytest.raises(SingularBasis):
        basis_vertex(p, (0, 2))  # x<=1 and -x<=0 are parallel


def test_is_feasible_basis_matches_direct_definition():
    rng = random.Random(4201)
    checked = 0
    while checked < 15:
        rows = [[rng.randint(-4, 4) for _ in range(3)] for _ in range(6)]
        rhs = [rng.randint(-4, 4) for _ in range(6)]
        try:
            p = make_polyhedron(rows, rhs)
        except (DimensionMismatch, DuplicateRow, NotPointed):
            continue
        checked += 1
        for sub in combinations(range(p.m), p.n):
            mat = submatrix(p, sub)
            if rank_of(mat) < p.n:
                assert not is_feasible_basis(p, sub)
                continue
            x = basis_vertex(p, sub)
            assert is_feasible_basis(p, sub) == p.contains(x)


def test_tight_set_examples():
    p = square()
    assert tight_set(p, [Fraction(1), Fraction(1)]) == (0, 1)
    assert tight_set(p, [Fraction(1, 2), Fraction(1, 2)]) == ()
    assert tight_set(p, [Fraction(0), Fraction(1)]) == (1, 2)
    with pytest.raises(InfeasiblePoint):
        tight_set(p, [Fraction(2), Fraction(0)])


def test_tight_set_at_degenerate_apex():
    p = square_pyramid()
    apex = [Fraction(0), Fraction(0), Fraction(1)]
    assert len(tight_set(p, apex)) == 4


def test_find_initial_vertex_walks_square_interior_to_corner():
    p = square()
    v = find_initial_vertex(p, [Fraction(1, 2), Fraction(1, 2)])
    # Deterministic: first move follows +e1 to x=1, second +e2 to y=1.
    assert v.point == (Fraction(1), Fraction(1))
    assert v.tight == (0, 1)
    assert v.simple


def test_find_initial_vertex_keeps_existing_vertex():
    p = cube()
    v = find_initial_vertex(p, [Fraction(0)] * 3)
    assert v.point == (Fraction(0), Fraction(0), Fraction(0))


def test_find_initial_vertex_on_unbounded_cone():
    p = make_polyhedron([[-1, 0], [0, -1]], [0, 0], name="quadrant")
    v = find_initial_vertex(p, [Fraction(3), Fraction(5)])
    assert v.point == (Fraction(0), Fraction(0))
    assert v.tight == (0, 1)


def test_find_initial_vertex_lands_on_vertex_for_random_instances():
    rng = random.Random(4202)
    built = 0
    while built < 40:
        n = rng.choice([2, 3])
        rows = [[rng.randint(-4, 4) for _ in range(n)] for _ in range(n + 3)]
        rhs = [rng.randint(-4, 4) for _ in range(n + 3)]
        try:
            p = make_polyhedron(rows, rhs)
            x0 = phase_one(p)
        except (DimensionMismatch, DuplicateRow, NotPointed, Infeasible):
            continue
        built += 1
        v = find_initial_vertex(p, x0)
        assert p.contains(list(v.point))
        assert rank_of(submatrix(p, v.tight)) == n
        assert tight_set(p, list(v.point)) == v.tight


def test_phase_one_square_and_shifted_box():
    p = square()
    x = phase_one(p)
    assert p.contains(x)
    shifted = make_polyhedron([[1, 0], [0, 1], [-1, 0], [0, -1]], [5, 6, -4, -5])
    x = phase_one(shifted)
    assert shifted.contains(x)


def test_phase_one_detects_empty_system():
    p = make_polyhedron([[1], [-1]], [0, -1], name="x<=0 and x>=1")
    with pytest.raises(Infeasible):
        phase_one(p)
    p2 = make_polyhedron(
        [[1, 0], [0, 1], [-1, -1]], [0, 0, -1], name="negative orthant below x+y>=1"
    )
    with pytest.raises(Infeasible):
        phase_one(p2)


def test_phase_one_feasible_on_random_instances():
    rng = random.Random(4203)
    feasible = 0
    infeasible = 0
    while feasible < 30 or infeasible < 5:
        n = rng.choice([2, 3])
        rows = [[rng.randint(-4, 4) for _ in range(n)] for _ in range(n + 4)]
        rhs = [rng.randint(-4, 4) for _ in range(n + 4)]
        try:
            p = make_polyhedron(rows, rhs)
        except (DimensionMismatch, DuplicateRow, NotPointed):
            continue
        try:
            x = phase_one(p)
        except Infeasible:
            infeasible += 1
            continue
        assert p.contains(x)
        feasible += 1


def test_strict_interior_point_square_and_flat_slab():
    p = square()
    x = strict_interior_point(p)
    assert x is not None
    assert all(s > 0 for s in p.slacks(x))
    flat = make_polyhedron([[1, 0], [-1, 0], [0, 1], [0, -1]], [0, 0, 1, 0])
    assert strict_interior_point(flat) is None


def test_redundancy_scan_flags_dominated_rows_only():
    p = square()
    assert redundancy_scan(p) == []
    padded = make_polyhedron(
        [[1, 0], [0, 1], [-1, 0], [0, -1], [1, 1]], [1, 1, 0, 0, 5]
    )
    assert redundancy_scan(padded) == [4]
    trimmed = drop_rows(padded, [4])
    assert trimmed.m == 4
    assert redundancy_scan(trimmed) == []


def test_redundancy_scan_flags_tangent_rows():
    # x + y <= 2 touches the square only at (1,1); dropping it changes
    # nothing, so it counts as redundant even though it is tight somewhere.
    p = make_polyhedron([[1, 0], [0, 1], [-1, 0], [0, -1], [1, 1]], [1, 1, 0, 0, 2])
    assert redundancy_scan(p) == [4]


def test_redundancy_scan_agrees_with_vertex_description():
    rng = random.Random(4204)
    done = 0
    while done < 10:
        rows = [[rng.randint(-3, 3) for _ in range(2)] for _ in range(6)]
        rhs = [rng.randint(-3, 3) for _ in range(6)]
        try:
            p = make_polyhedron(rows, rhs)
            phase_one(p)
        except (DimensionMismatch, DuplicateRow, NotPointed, Infeasible):
            continue
        done += 1
        redundant = redundancy_scan(p)
        slim = drop_rows(p, redundant) if redundant else p
        # Dropping redundant rows must not admit new points: probe along a
        # random grid and compare membership verdicts.
        for _ in range(200):
            x = [Fraction(rng.randint(-8, 8), 2) for _ in range(2)]
            assert p.contains(x) == slim.contains(x)
