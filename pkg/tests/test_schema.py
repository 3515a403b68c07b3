"""Schema canonicalization and validation."""

import pytest
from hypothesis import given

from binjson import (
    Real,
    SchemaError,
    SchemaRefError,
    canonicalize,
    parse_json,
    schema_to_json,
    validate,
)
from binjson.schema import (
    ANY,
    AnySchema,
    ArraySchema,
    BooleanSchema,
    EnumSchema,
    IntegerSchema,
    NullSchema,
    ObjectSchema,
    RealSchema,
    RefSchema,
    StringSchema,
    UnionSchema,
)

from conftest import json_values


def test_empty_and_true_are_any():
    assert isinstance(canonicalize({}).root, AnySchema)
    assert isinstance(canonicalize(True).root, AnySchema)


def test_false_is_rejected():
    with pytest.raises(SchemaError):
        canonicalize(False)


def test_const_becomes_singleton_enum():
    root = canonicalize({"const": "on"}).root
    assert root == EnumSchema(("on",))


def test_enum_dedupes_keeping_first_occurrence():
    root = canonicalize(parse_json('{"enum": [1, "1", 1.0, 2, 1]}')).root
    assert isinstance(root, EnumSchema)
    # 1.0 duplicates 1 numerically; the string "1" does not.
    assert len(root.values) == 3
    assert root.values[0] == 1 and root.values[1] == "1" and root.values[2] == 2


def test_empty_enum_rejected():
    with pytest.raises(SchemaError):
        canonicalize({"enum": []})


def test_integer_bounds():
    root = canonicalize({"type": "integer", "minimum": 0, "maximum": 255}).root
    assert root == IntegerSchema(0, 255, None)
    with pytest.raises(SchemaError):
        canonicalize({"type": "integer", "minimum": 10, "maximum": 9})


def test_unsatisfiable_scaled_range_rejected():
    with pytest.raises(SchemaError):
        canonicalize({"type": "integer", "minimum": 6, "maximum": 9, "multipleOf": 5})


def test_type_list_becomes_union_in_declaration_order():
    root = canonicalize({"type": ["integer", "string", "null"]}).root
    assert isinstance(root, UnionSchema)
    assert isinstance(root.branches[0], IntegerSchema)
    assert isinstance(root.branches[1], StringSchema)
    assert isinstance(root.branches[2], NullSchema)


def test_single_entry_containers_collapse():
    assert isinstance(canonicalize({"type": ["string"]}).root, StringSchema)
    assert isinstance(canonicalize({"anyOf": [{"type": "boolean"}]}).root, BooleanSchema)


def test_oneof_and_anyof_become_unions():
    for keyword in ["oneOf", "anyOf"]:
        root = canonicalize({keyword: [{"type": "null"}, {"type": "number"}]}).root
        assert isinstance(root, UnionSchema)
        assert isinstance(root.branches[0], NullSchema)
        assert isinstance(root.branches[1], RealSchema)


def test_unrecognized_keyword_degrades_that_node_only():
    schema = {
        "type": "object",
        "required": ["a", "b"],
        "properties": {
            "a": {"type": "string", "format": "email"},
            "b": {"type": "boolean"},
        },
    }
    root = canonicalize(schema).root
    assert isinstance(root, ObjectSchema)
    by_key = dict(root.required)
    assert isinstance(by_key["a"], AnySchema)
    assert isinstance(by_key["b"], BooleanSchema)


def test_object_keys_sorted_by_utf8_bytes():
    schema = {
        "type": "object",
        "required": ["zz", "aa"],
        "properties": {"zz": {"type": "null"}, "aa": {"type": "null"}, "mm": {"type": "null"}},
    }
    root = canonicalize(schema).root
    assert [key for key, _ in root.required] == ["aa", "zz"]
    assert [key for key, _ in root.optional] == ["mm"]


def test_required_key_without_property_gets_any():
    root = canonicalize({"type": "object", "required": ["x"]}).root
    assert root.required == (("x", ANY),)


def test_additional_properties_forms():
    open_any = canonicalize({"type": "object"}).root
    assert isinstance(open_any.additional, AnySchema)
    closed = canonicalize({"type": "object", "additionalProperties": False}).root
    assert closed.additional is None
    typed = canonicalize({"type": "object", "additionalProperties": {"type": "integer"}}).root
    assert isinstance(typed.additional, IntegerSchema)


def test_array_forms():
    root = canonicalize(
        {
            "type": "array",
            "prefixItems": [{"type": "string"}, {"type": "integer"}],
            "items": {"type": "boolean"},
            "minItems": 2,
            "maxItems": 5,
        }
    ).root
    assert isinstance(root, ArraySchema)
    assert isinstance(root.prefix[0], StringSchema)
    assert isinstance(root.prefix[1], IntegerSchema)
    assert isinstance(root.items, BooleanSchema)
    assert (root.min_items, root.max_items) == (2, 5)


def test_items_false_caps_length_at_prefix():
    root = canonicalize(
        {"type": "array", "prefixItems": [{"type": "integer"}], "items": False}
    ).root
    assert root.max_items == 1


def test_refs_resolve_in_defs():
    canonical = canonicalize(
        {
            "type": "object",
            "required": ["node"],
            "properties": {"node": {"$ref": "#/$defs/node"}},
            "$defs": {"node": {"type": "integer"}},
        }
    )
    root = canonical.root
    assert dict(root.required)["node"] == RefSchema("node")
    assert isinstance(canonical.definitions["node"], IntegerSchema)


def test_root_self_reference():
    canonical = canonicalize(
        {
            "type": "object",
            "properties": {"child": {"$ref": "#"}},
        }
    )
    assert canonical.definitions["#"] is canonical.root
    assert validate(canonical, {"child": {"child": {}}})


def test_remote_and_unresolved_refs_rejected():
    with pytest.raises(SchemaRefError):
        canonicalize({"$ref": "https://example.test/schema.json"})
    with pytest.raises(SchemaRefError):
        canonicalize({"$ref": "#/$defs/missing"})
    with pytest.raises(SchemaRefError):
        canonicalize({"$ref": "#/definitions/old-style"})


def test_guarded_cycle_is_legal():
    canonical = canonicalize(
        {
            "$ref": "#/$defs/tree",
            "$defs": {
                "tree": {
                    "type": "object",
                    "required": ["leaf"],
                    "properties": {
                        "leaf": {"type": "boolean"},
                        "kids": {"type": "array", "items": {"$ref": "#/$defs/tree"}},
                    },
                    "additionalProperties": False,
                }
            },
        }
    )
    doc = {"leaf": False, "kids": [{"leaf": True, "kids": []}]}
    assert validate(canonical, doc)


def test_unguarded_cycle_rejected():
    with pytest.raises(SchemaError, match="cycle"):
        canonicalize({"$ref": "#/$defs/a", "$defs": {"a": {"$ref": "#/$defs/b"}, "b": {"$ref": "#/$defs/a"}}})
    with pytest.raises(SchemaError, match="cycle"):
        canonicalize({"$defs": {"a": {"anyOf": [{"type": "null"}, {"$ref": "#/$defs/a"}]}}})


def test_ref_with_sibling_constraints_rejected():
    with pytest.raises(SchemaError):
        canonicalize({"$ref": "#/$defs/a", "type": "integer", "$defs": {"a": {}}})


def test_nested_defs_rejected():
    with pytest.raises(SchemaError, match="root"):
        canonicalize({"type": "object", "properties": {"a": {"$defs": {"x": {}}}}})


def test_validate_frozen_object_example():
    canonical = canonicalize(
        {
            "type": "object",
            "required": ["kind"],
            "properties": {"kind": {"const": "point"}, "x": {"type": "integer"}},
            "additionalProperties": False,
        }
    )
    assert validate(canonical, {"kind": "point", "x": 3})
    assert not validate(canonical, {"kind": "point", "x": parse_json("3.5")})
    assert not validate(canonical, {"x": 3})
    assert not validate(canonical, {"kind": "point", "y": 1})


def test_validate_numbers():
    integer = canonicalize({"type": "integer"})
    assert validate(integer, 5)
    assert validate(integer, parse_json("5.0"))
    assert validate(integer, parse_json("2e2"))
    assert not validate(integer, parse_json("5.5"))
    assert not validate(integer, True)
    number = canonicalize({"type": "number"})
    assert validate(number, 5)
    assert validate(number, parse_json("5.5"))
    assert not validate(number, True)
    assert not validate(number, "5")


def test_validate_multiple_of():
    canonical = canonicalize({"type": "integer", "multipleOf": 5})
    assert validate(canonical, 0) and validate(canonical, -15)
    assert not validate(canonical, 7)


def test_validate_string_length():
    canonical = canonicalize({"type": "string", "maxLength": 2})
    assert validate(canonical, "ab") and validate(canonical, "é…")
    assert not validate(canonical, "abc")


def test_validate_enum_distinguishes_bool_from_number():
    canonical = canonicalize({"enum": [True, 1]})
    assert len(canonical.root.values) == 2
    assert validate(canonical, True) and validate(canonical, 1)
    assert not validate(canonical, 2)


def test_canonical_form_is_fixed_point():
    schemas = [
        {},
        {"const": 42},
        {"enum": ["a", "b", 3]},
        {"type": "integer", "minimum": 0, "maximum": 100, "multipleOf": 4},
        {"type": "number"},
        {"type": "string", "maxLength": 9},
        {"type": ["boolean", "null"]},
        {
            "type": "array",
            "prefixItems": [{"type": "integer"}],
            "items": {"type": "string"},
            "minItems": 1,
            "maxItems": 8,
        },
        {
            "type": "object",
            "required": ["b", "a"],
            "properties": {"a": {"type": "null"}, "b": {"enum": [1, 2]}, "c": {"type": "boolean"}},
            "additionalProperties": {"type": "integer", "minimum": 0},
        },
        {
            "$ref": "#/$defs/entry",
            "$defs": {"entry": {"type": "object", "properties": {"next": {"type": "string"}}}},
        },
    ]
    for schema in schemas:
        first = canonicalize(schema)
        second = canonicalize(schema_to_json(first))
        assert first == second, schema


def test_canonical_emission_survives_minify():
    schema = {
        "type": "object",
        "required": ["v"],
        "properties": {"v": {"enum": [parse_json("2.5"), 1]}},
        "additionalProperties": False,
    }
    first = canonicalize(schema)
    text = __import__("binjson").minify(schema_to_json(first))
    assert canonicalize(parse_json(text)) == first


@given(json_values())
def test_wildcard_accepts_everything(value):
    assert validate(canonicalize({}), value)


@given(json_values())
def test_validate_never_crashes_on_mixed_schema(value):
    canonical = canonicalize(
        {
            "type": ["object", "array", "string", "integer", "boolean", "null"],
        }
    )
    validate(canonical, value)
