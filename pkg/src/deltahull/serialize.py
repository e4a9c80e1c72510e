"""Instance, fan, and report documents: exact-rational JSON and CSV forms.

Rationals travel as strings in lowest terms ("7/3", "-2"); binary floats are
rejected on input and appear on output only in fields explicitly named as
float renderings. JSON output is canonical: sorted keys, compact separators,
so re-serializing a parsed document is byte-identical.
"""

import csv
import io
import json
from dataclasses import dataclass
from fractions import Fraction

from .errors import ParseError
from .model import HPolyhedron, make_polyhedron
from .subdivision import SubdivisionFan

SCHEMA_VERSION = 1


def parse_rational(token) -> Fraction:
    """Exact rational from an int or a string like '7/3' or '-2'."""
    if isinstance(token, bool):
        raise ParseError(f"not a rational: {token!r}")
    if isinstance(token, int):
        return Fraction(token)
    if isinstance(token, float):
        raise ParseError(f"binary float {token!r} not accepted; use 'p/q'")
    if isinstance(token, str):
        try:
            return Fraction(token.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise ParseError(f"bad rational {token!r}: {exc}") from None
    raise ParseError(f"not a rational: {token!r}")


def rational_str(x: Fraction) -> str:
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def rationalize(obj):
    """Deep-copy a structure, turning Fractions into canonical strings."""
    if isinstance(obj, Fraction):
        return rational_str(obj)
    if isinstance(obj, dict):
        return {str(k): rationalize(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [rationalize(v) for v in obj]
    return obj


def canonical_dumps(obj) -> str:
    return json.dumps(rationalize(obj), sort_keys=True, separators=(",", ":"))


@dataclass
class InstanceDocument:
    polyhedron: HPolyhedron
    feasible_point: list[Fraction] | None
    name: str


def load_instance_json(text: str) -> InstanceDocument:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc}") from None
    if not isinstance(doc, dict):
        raise ParseError("instance document must be a JSON object")
    try:
        raw_a = doc["A"]
        raw_b = doc["b"]
    except KeyError as exc:
        raise ParseError(f"missing key {exc}") from None
    if not isinstance(raw_a, list) or not all(isinstance(r, list) for r in raw_a):
        raise ParseError("A must be an array of arrays")
    if not isinstance(raw_b, list):
        raise ParseError("b must be an array")
    a = [[parse_rational(x) for x in row] for row in raw_a]
    b = [parse_rational(x) for x in raw_b]
    name = str(doc.get("name", ""))
    feasible = doc.get("feasible_point")
    if feasible is not None:
        feasible = [parse_rational(x) for x in feasible]
    return InstanceDocument(make_polyhedron(a, b, name=name), feasible, name)


def load_instance_csv(text: str) -> InstanceDocument:
    rows = []
    for record in csv.reader(io.StringIO(text)):
        cells = [c.strip() for c in record if c.strip()]
        if not cells or cells[0].startswith("#"):
            continue
        rows.append([parse_rational(c) for c in cells])
    if not rows:
        raise ParseError("empty CSV instance")
    width = len(rows[0])
    if width < 2 or any(len(r) != width for r in rows):
        raise ParseError("CSV rows must all have n+1 columns")
    a = [r[:-1] for r in rows]
    b = [r[-1] for r in rows]
    return InstanceDocument(make_polyhedron(a, b), None, "")


def load_instance_path(path: str) -> InstanceDocument:
    with open(path, "r", encoding="utf-8") as fh:
        text = fh.read()
    if path.endswith(".csv"):
        return load_instance_csv(text)
    return load_instance_json(text)


def load_polyhedron(document: str) -> HPolyhedron:
    """Instance text (JSON) to a validated constraint system."""
    return load_instance_json(document).polyhedron


def dump_instance(
    p: HPolyhedron, feasible_point=None, name: str = ""
) -> str:
    doc = {
        "schema": SCHEMA_VERSION,
        "A": [[Fraction(x) for x in row] for row in p.a],
        "b": [Fraction(x) for x in p.b],
    }
    if name or p.name:
        doc["name"] = name or p.name
    if feasible_point is not None:
        doc["feasible_point"] = [Fraction(x) for x in feasible_point]
    return canonical_dumps(doc)


def dump_fan(fan: SubdivisionFan) -> str:
    return canonical_dumps(
        {
            "schema": SCHEMA_VERSION,
            "n": fan.n,
            "depth": fan.depth,
            "rays": [list(ray) for ray in fan.rays],
            "cones": [list(c) for c in fan.cones],
            "parent": list(fan.parent),
        }
    )


def load_fan_json(text: str) -> SubdivisionFan:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc}") from None
    try:
        rays = [tuple(parse_rational(x) for x in ray) for ray in doc["rays"]]
        cones = [tuple(int(i) for i in c) for c in doc["cones"]]
    except (KeyError, TypeError) as exc:
        raise ParseError(f"malformed fan document: {exc}") from None
    n = int(doc.get("n", len(rays[0]) if rays else 0))
    depth = int(doc.get("depth", 0))
    parent = [int(x) for x in doc.get("parent", [-1] * len(cones))]
    for c in cones:
        if len(c) != n or any(i < 0 or i >= len(rays) for i in c):
            raise ParseError(f"cone {c} does not index the rays")
    return SubdivisionFan(n, depth, rays, cones, parent)
