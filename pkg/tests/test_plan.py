"""Compilation of canonical schemas into encoding plans."""

import pytest

from binjson import build_plan, canonicalize, plan_bit_bound, plan_to_json, parse_json
from binjson.plan import (
    AnyPlan,
    ArrayPlan,
    BoolPlan,
    BoundedIntPlan,
    ChoicePlan,
    ConstPlan,
    NullPlan,
    ObjectPlan,
    RealPlan,
    RefPlan,
    StringPlan,
    UnionPlan,
    VarIntPlan,
)


def plan_for(schema):
    return build_plan(canonicalize(schema))


def test_wildcard_compiles_to_any():
    assert isinstance(plan_for({}).root, AnyPlan)


def test_single_value_enum_is_const():
    plan = plan_for({"const": 42})
    assert plan.root == ConstPlan(42)
    assert plan_bit_bound(plan) == 0


def test_multi_value_enum_index_bits():
    # 2 values need 1 bit, 3 need 2, 4 need 2, 5 need 3.
    for count, bits in [(2, 1), (3, 2), (4, 2), (5, 3), (8, 3), (9, 4)]:
        plan = plan_for({"enum": list(range(count))})
        assert plan.root == ChoicePlan(tuple(range(count)), bits)
        assert plan_bit_bound(plan) == bits


def test_bounded_integer_range_bits():
    plan = plan_for({"type": "integer", "minimum": 0, "maximum": 255})
    assert plan.root == BoundedIntPlan(base=0, range_bits=8, scale=1)
    assert plan_bit_bound(plan) == 8
    single = plan_for({"type": "integer", "minimum": 7, "maximum": 7})
    assert single.root == BoundedIntPlan(base=7, range_bits=0, scale=1)
    assert plan_bit_bound(single) == 0


def test_scaled_bounds_align_base_upward():
    plan = plan_for({"type": "integer", "minimum": 1, "maximum": 30, "multipleOf": 5})
    # Usable values 5..30: base 5, six steps, 3 bits.
    assert plan.root == BoundedIntPlan(base=5, range_bits=3, scale=5)


def test_half_open_integers_become_varints():
    floor = plan_for({"type": "integer", "minimum": 10})
    assert floor.root == VarIntPlan(kind="floor", offset=10)
    ceil = plan_for({"type": "integer", "maximum": -3})
    assert ceil.root == VarIntPlan(kind="ceil", offset=-3)
    free = plan_for({"type": "integer"})
    assert free.root == VarIntPlan(kind="zigzag", offset=None)
    assert plan_bit_bound(floor) is None
    assert plan_bit_bound(ceil) is None
    assert plan_bit_bound(free) is None


def test_scalar_types():
    assert isinstance(plan_for({"type": "number"}).root, RealPlan)
    assert plan_for({"type": "string", "maxLength": 4}).root == StringPlan(max_length=4)
    assert isinstance(plan_for({"type": "boolean"}).root, BoolPlan)
    assert isinstance(plan_for({"type": "null"}).root, NullPlan)
    assert plan_bit_bound(plan_for({"type": "boolean"})) == 1
    assert plan_bit_bound(plan_for({"type": "null"})) == 0


def test_array_fixed_and_variable_count():
    fixed = plan_for({"type": "array", "items": {"type": "boolean"}, "minItems": 3, "maxItems": 3})
    assert isinstance(fixed.root, ArrayPlan)
    assert fixed.root.fixed_count == 3
    assert plan_bit_bound(fixed) == 3
    variable = plan_for({"type": "array", "items": {"type": "boolean"}, "minItems": 2})
    assert variable.root.fixed_count is None
    assert variable.root.min_count == 2
    assert plan_bit_bound(variable) is None


def test_tuple_prefix_positionally_planned():
    plan = plan_for(
        {
            "type": "array",
            "prefixItems": [{"type": "string"}, {"type": "integer", "minimum": 0, "maximum": 1}],
            "items": False,
        }
    )
    root = plan.root
    assert isinstance(root.prefix[0], StringPlan)
    assert root.prefix[1] == BoundedIntPlan(base=0, range_bits=1, scale=1)


def test_object_plan_partitions_and_sorts_keys():
    plan = plan_for(
        {
            "type": "object",
            "required": ["z", "a"],
            "properties": {"z": {"type": "boolean"}, "a": {"type": "null"}, "m": {"type": "boolean"}},
            "additionalProperties": False,
        }
    )
    root = plan.root
    assert [key for key, _ in root.required] == ["a", "z"]
    assert [key for key, _ in root.optional] == ["m"]
    assert root.additional is None
    # 1 presence bit + bool(z) 1 + null(a) 0 + optional bool(m) 1.
    assert plan_bit_bound(plan) == 3


def test_eight_required_booleans_bound_is_one_byte():
    properties = {f"k{i}": {"type": "boolean"} for i in range(8)}
    plan = plan_for(
        {
            "type": "object",
            "required": sorted(properties),
            "properties": properties,
            "additionalProperties": False,
        }
    )
    assert plan_bit_bound(plan) == 8


def test_open_object_has_unbounded_plan():
    plan = plan_for({"type": "object", "properties": {"a": {"type": "boolean"}}})
    assert isinstance(plan.root.additional, AnyPlan)
    assert plan_bit_bound(plan) is None


def test_union_tag_bits_and_guards():
    plan = plan_for({"type": ["boolean", "null", "integer"]})
    root = plan.root
    assert isinstance(root, UnionPlan)
    assert root.tag_bits == 2
    guards = [guard for guard, _ in root.branches]
    assert [type(plan_).__name__ for _, plan_ in root.branches] == [
        "BoolPlan",
        "NullPlan",
        "VarIntPlan",
    ]
    assert len(guards) == 3
    assert plan_bit_bound(plan) is None  # zigzag branch is unbounded
    bounded = plan_for({"anyOf": [{"type": "boolean"}, {"const": 0}]})
    assert plan_bit_bound(bounded) == 2  # 1 tag bit + max(1, 0)


def test_refs_compile_to_named_plans():
    plan = plan_for(
        {
            "$ref": "#/$defs/node",
            "$defs": {
                "node": {
                    "type": "object",
                    "required": ["v"],
                    "properties": {
                        "v": {"type": "integer", "minimum": 0, "maximum": 3},
                        "next": {"$ref": "#/$defs/node"},
                    },
                    "additionalProperties": False,
                }
            },
        }
    )
    assert plan.root == RefPlan("node")
    assert "node" in plan.definitions
    assert plan_bit_bound(plan) is None  # recursion defeats the static bound


def test_const_real_plan_round_trips_value():
    plan = plan_for({"const": parse_json("2.5")})
    assert plan.root == ConstPlan(parse_json("2.5"))


def test_plan_json_dump_is_deterministic():
    schema = {
        "type": "object",
        "required": ["mode", "level"],
        "properties": {
            "mode": {"enum": ["eco", "boost"]},
            "level": {"type": "integer", "minimum": 0, "maximum": 10},
            "note": {"type": "string"},
        },
        "additionalProperties": False,
    }
    first = plan_to_json(plan_for(schema))
    second = plan_to_json(plan_for(schema))
    assert first == second
    assert first["root"]["kind"] == "object"


def test_plan_build_rejects_nothing_valid_combinations():
    with pytest.raises(Exception):
        plan_for({"type": "integer", "minimum": 2, "maximum": 1})
