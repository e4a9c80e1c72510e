"""Exact-rational JSON/CSV document handling and canonical output."""

import json
from fractions import Fraction

import pytest

from deltahull.errors import ParseError
from deltahull.serialize import (
    canonical_dumps,
    dump_fan,
    dump_instance,
    load_fan_json,
    load_instance_csv,
    load_instance_json,
    load_instance_path,
    parse_rational,
    rational_str,
    rationalize,
)
from deltahull.subdivision import build_subdivision_fans

from conftest import square


def test_parse_rational_accepted_forms():
    assert parse_rational(3) == Fraction(3)
    assert parse_rational("-2") == Fraction(-2)
    assert parse_rational("7/3") == Fraction(7, 3)
    assert parse_rational(" 5/10 ") == Fraction(1, 2)


def test_parse_rational_rejections():
    with pytest.raises(ParseError):
        parse_rational(1.5)
    with pytest.raises(ParseError):
        parse_rational(True)
    with pytest.raises(ParseError):
        parse_rational("abc")
    with pytest.raises(ParseError):
        parse_rational("1/0")
    with pytest.raises(ParseError):
        parse_rational(None)


def test_rational_str_lowest_terms():
    assert rational_str(Fraction(14, 6)) == "7/3"
    assert rational_str(Fraction(-4, 2)) == "-2"
    assert rational_str(Fraction(0)) == "0"


def test_rationalize_handles_nested_structures():
    obj = {"x": [Fraction(1, 2), {"y": Fraction(3)}], "z": "keep"}
    assert rationalize(obj) == {"x": ["1/2", {"y": "3"}], "z": "keep"}


def test_instance_round_trip_is_byte_identical():
    p = square()
    text = dump_instance(p, feasible_point=[Fraction(1, 2), Fraction(1, 2)])
    doc = load_instance_json(text)
    assert doc.polyhedron.a == p.a
    assert doc.polyhedron.b == p.b
    assert doc.feasible_point == [Fraction(1, 2), Fraction(1, 2)]
    again = dump_instance(
        doc.polyhedron, feasible_point=doc.feasible_point, name=doc.name
    )
    assert again == text
    # Re-serializing the parsed JSON object canonically is also identical.
    assert canonical_dumps(json.loads(text)) == text


def test_instance_json_rejects_floats_and_missing_keys():
    with pytest.raises(ParseError):
        load_instance_json('{"A": [[0.5, 1]], "b": [1]}')
    with pytest.raises(ParseError):
        load_instance_json('{"A": [[1, 0]]}')
    with pytest.raises(ParseError):
        load_instance_json('["not", "an", "object"]')
    with pytest.raises(ParseError):
        load_instance_json("{bad json")
    with pytest.raises(ParseError):
        load_instance_json('{"A": "rows", "b": [1]}')


def test_instance_csv_round_trip(tmp_path):
    text = "# unit box\n1,0,1\n0,1,1\n-1,0,0\n0,-1,0\n"
    doc = load_instance_csv(text)
    assert doc.polyhedron.m == 4
    assert doc.polyhedron.a == square().a
    path = tmp_path / "box.csv"
    path.write_text(text, encoding="utf-8")
    from_path = load_instance_path(str(path))
    assert from_path.polyhedron.a == doc.polyhedron.a


def test_instance_csv_rejects_ragged_and_empty_input():
    with pytest.raises(ParseError):
        load_instance_csv("1,0,1\n0,1\n")
    with pytest.raises(ParseError):
        load_instance_csv("# only a comment\n")
    with pytest.raises(ParseError):
        load_instance_csv("5\n")


def test_instance_path_json(tmp_path):
    p = square()
    path = tmp_path / "box.json"
    path.write_text(dump_instance(p), encoding="utf-8")
    doc = load_instance_path(str(path))
    assert doc.polyhedron.b == p.b


def test_fan_round_trip():
    fan = build_subdivision_fans(2, 2)[2]
    text = dump_fan(fan)
    loaded = load_fan_json(text)
    assert loaded.n == fan.n
    assert loaded.depth == fan.depth
    assert loaded.rays == fan.rays
    assert loaded.cones == fan.cones
    assert loaded.parent == fan.parent
    assert dump_fan(loaded) == text


def test_fan_document_validation():
    with pytest.raises(ParseError):
        load_fan_json('{"rays": [[1, 0], [0, 1]], "cones": [[0, 5]]}')
    with pytest.raises(ParseError):
        load_fan_json('{"cones": [[0, 1]]}')
    with pytest.raises(ParseError):
        load_fan_json("not json at all")


def test_canonical_dumps_sorts_keys_and_compacts():
    out = canonical_dumps({"b": Fraction(1, 3), "a": 2})
    assert out == '{"a":2,"b":"1/3"}'
