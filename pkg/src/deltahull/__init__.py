"""Exact-arithmetic toolkit for rational H-polyhedra: vertex enumeration by
basis pivoting, normal-fan triangulations, subdeterminant statistics,
diameter certificates, the barycentric-subdivision generator family, and an
integer-point counting oracle."""

from .counting import (
    CountReport,
    count_integer_points_bruteforce,
    estimate_counting_cost,
    knapsack_bound_check,
)
from .errors import (
    BoundViolated,
    BudgetExceeded,
    DeltahullError,
    DimensionMismatch,
    DisconnectedGraph,
    DuplicateRow,
    EmptyAlphaInterval,
    Infeasible,
    InfeasiblePoint,
    NotAVertex,
    NotPointed,
    ParseError,
    PreconditionViolated,
    RankDeficient,
    SingularBasis,
    SingularMatrix,
    SingularUpdate,
    Unbounded,
    UnboundedLine,
)
from .graphs import SkeletonGraph, build_fan_graph, build_polytope_graph, graph_diameter
from .hull import (
    EnumerationResult,
    OracleEnumeration,
    PivotEdge,
    Triangulation,
    WorkCounters,
    enumerate_all_bases_oracle,
    enumerate_vertices,
    pivot_neighbors,
    run_enumeration,
    triangulate_normal_cone,
)
from .model import (
    Basis,
    HPolyhedron,
    VertexRecord,
    basis_vertex,
    find_initial_vertex,
    is_feasible_basis,
    make_polyhedron,
    phase_one,
    redundancy_scan,
    strict_interior_point,
    tight_set,
)
from .serialize import (
    InstanceDocument,
    canonical_dumps,
    dump_fan,
    dump_instance,
    load_fan_json,
    load_instance_csv,
    load_instance_json,
    load_instance_path,
    load_polyhedron,
    parse_rational,
    rational_str,
)
from .stats import (
    BoundReport,
    DistanceCertificate,
    FanStats,
    WidenessReport,
    check_fan_bound,
    check_vertex_bound,
    delta_max,
    local_delta_distance,
    totally_unimodular_transform,
    triangulation_stats,
    unit_ball_volume,
    verify_total_unimodularity,
    wideness_and_diameter_bound,
)
from .subdivision import (
    LiftedPolytope,
    SubdivisionFan,
    base_fan,
    base_simplex,
    build_subdivision_fans,
    density_profile,
    expected_counts,
    lift_polytope,
    normalize_rays,
    subdivide_fan,
    tightness_experiment,
)

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
