"""Compilation of canonical schemas into bit-level encoding plans.

Every canonical node maps to exactly one plan node.  The mapping is where
the space comes from: single-value enums cost zero bits, N-value enums
cost ceil(log2 N) bits, integers with both bounds cost just enough bits
for their range, and object keys disappear entirely because both sides
derive them from the plan.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from . import schema as sc


class PlanNode:
    """Base class for encoding plan tree nodes."""

    __slots__ = ()


@dataclass(frozen=True)
class ConstPlan(PlanNode):
    """A value pinned by the schema; occupies zero bits."""

    value: object


@dataclass(frozen=True)
class ChoicePlan(PlanNode):
    """One of N known values, stored as a ceil(log2 N)-bit index in
    schema declaration order."""

    values: tuple
    index_bits: int


@dataclass(frozen=True)
class BoundedIntPlan(PlanNode):
    """An integer in a finite range, stored as (value - base) / scale in
    range_bits bits.  base is the smallest encodable value: the schema
    minimum aligned up to a multiple of scale so decoding stays a pure
    multiply-add."""

    base: int
    range_bits: int
    scale: int = 1


@dataclass(frozen=True)
class VarIntPlan(PlanNode):
    """An integer with at most one bound, stored as a varint.

    kind "floor": uvarint(value - offset); kind "ceil":
    uvarint(offset - value); kind "zigzag": no bound, zigzag varint.
    """

    kind: str = "zigzag"
    offset: int | None = None


@dataclass(frozen=True)
class RealPlan(PlanNode):
    """A decimal stored as zigzag varints of mantissa and exponent."""


@dataclass(frozen=True)
class StringPlan(PlanNode):
    """Length-prefixed UTF-8 bytes, or a pool back-reference when the
    same string already appeared in this encode session."""

    max_length: int | None = None


@dataclass(frozen=True)
class BoolPlan(PlanNode):
    """A single bit."""


@dataclass(frozen=True)
class NullPlan(PlanNode):
    """Occupies zero bits; the schema already pins the value."""


@dataclass(frozen=True)
class ArrayPlan(PlanNode):
    """uvarint(count - min_count) unless fixed_count pins the length,
    then per-position prefix elements, then uniform elements."""

    element: PlanNode = field(default_factory=lambda: AnyPlan())
    prefix: tuple = ()
    fixed_count: int | None = None
    min_count: int = 0
    max_count: int | None = None


@dataclass(frozen=True)
class ObjectPlan(PlanNode):
    """A presence bitmap for optional keys, then required values, then
    present optional values, all in lexicographic key order with no keys
    on the wire.  additional None means closed; otherwise extra pairs
    follow as a count plus pooled-key/value pairs."""

    required: tuple = ()
    optional: tuple = ()
    additional: PlanNode | None = None


@dataclass(frozen=True)
class UnionPlan(PlanNode):
    """A ceil(log2 K)-bit branch tag, then the branch encoding.  Each
    branch pairs the canonical guard used to pick it with its plan;
    encoding takes the first branch whose guard validates."""

    branches: tuple
    tag_bits: int


@dataclass(frozen=True)
class AnyPlan(PlanNode):
    """Self-describing tagged encoding; see the codec module."""


@dataclass(frozen=True)
class RefPlan(PlanNode):
    name: str


@dataclass(frozen=True)
class EncodingPlan:
    """A plan tree plus the definition tables references resolve in.

    schema_definitions is kept alongside because union guards are
    canonical schema nodes and may themselves contain references.
    """

    root: PlanNode
    definitions: dict = field(default_factory=dict)
    schema_definitions: dict = field(default_factory=dict)


def _bits_for(count):
    """ceil(log2 count) for count >= 1."""
    return (count - 1).bit_length()


def _node_plan(node):
    if isinstance(node, sc.AnySchema):
        return AnyPlan()
    if isinstance(node, sc.EnumSchema):
        if len(node.values) == 1:
            return ConstPlan(node.values[0])
        return ChoicePlan(node.values, _bits_for(len(node.values)))
    if isinstance(node, sc.IntegerSchema):
        if node.minimum is not None and node.maximum is not None:
            scale = node.multiple_of or 1
            base = -(-node.minimum // scale) * scale
            top = (node.maximum // scale) * scale
            count = (top - base) // scale + 1
            return BoundedIntPlan(base, _bits_for(count), scale)
        if node.minimum is not None:
            return VarIntPlan("floor", node.minimum)
        if node.maximum is not None:
            return VarIntPlan("ceil", node.maximum)
        return VarIntPlan("zigzag", None)
    if isinstance(node, sc.RealSchema):
        return RealPlan()
    if isinstance(node, sc.StringSchema):
        return StringPlan(node.max_length)
    if isinstance(node, sc.BooleanSchema):
        return BoolPlan()
    if isinstance(node, sc.NullSchema):
        return NullPlan()
    if isinstance(node, sc.ArraySchema):
        fixed = node.min_items if node.max_items == node.min_items else None
        return ArrayPlan(
            _node_plan(node.items),
            tuple(_node_plan(sub) for sub in node.prefix),
            fixed,
            node.min_items,
            node.max_items,
        )
    if isinstance(node, sc.ObjectSchema):
        return ObjectPlan(
            tuple((key, _node_plan(sub)) for key, sub in node.required),
            tuple((key, _node_plan(sub)) for key, sub in node.optional),
            None if node.additional is None else _node_plan(node.additional),
        )
    if isinstance(node, sc.UnionSchema):
        return UnionPlan(
            tuple((guard, _node_plan(guard)) for guard in node.branches),
            _bits_for(len(node.branches)),
        )
    if isinstance(node, sc.RefSchema):
        return RefPlan(node.name)
    raise TypeError(f"not a schema node: {type(node).__name__}")


def build_plan(canonical):
    """Compile a canonical schema into an encoding plan.

    Deterministic: structurally identical schemas give structurally
    identical plans.
    """
    return EncodingPlan(
        _node_plan(canonical.root),
        {name: _node_plan(node) for name, node in canonical.definitions.items()},
        dict(canonical.definitions),
    )


def _node_bound(node):
    if isinstance(node, (ConstPlan, NullPlan)):
        return 0
    if isinstance(node, ChoicePlan):
        return node.index_bits
    if isinstance(node, BoundedIntPlan):
        return node.range_bits
    if isinstance(node, BoolPlan):
        return 1
    if isinstance(node, ArrayPlan):
        if node.fixed_count is None:
            return None
        total = 0
        for index in range(node.fixed_count):
            sub = node.prefix[index] if index < len(node.prefix) else node.element
            bound = _node_bound(sub)
            if bound is None:
                return None
            total += bound
        return total
    if isinstance(node, ObjectPlan):
        if node.additional is not None:
            return None
        total = len(node.optional)
        for _, sub in node.required + node.optional:
            bound = _node_bound(sub)
            if bound is None:
                return None
            total += bound
        return total
    if isinstance(node, UnionPlan):
        worst = 0
        for _, sub in node.branches:
            bound = _node_bound(sub)
            if bound is None:
                return None
            worst = max(worst, bound)
        return node.tag_bits + worst
    return None


def plan_bit_bound(plan):
    """Exact worst-case payload size in bits, or None when the plan can
    grow without bound (varints, strings, open objects, references,
    schema-less regions)."""
    return _node_bound(plan.root)


def _node_to_json(node):
    if isinstance(node, ConstPlan):
        return {"kind": "const", "value": node.value}
    if isinstance(node, ChoicePlan):
        return {"kind": "choice", "values": list(node.values), "indexBits": node.index_bits}
    if isinstance(node, BoundedIntPlan):
        return {
            "kind": "boundedInt",
            "base": node.base,
            "rangeBits": node.range_bits,
            "scale": node.scale,
        }
    if isinstance(node, VarIntPlan):
        out = {"kind": "varInt", "mode": node.kind}
        if node.offset is not None:
            out["offset"] = node.offset
        return out
    if isinstance(node, RealPlan):
        return {"kind": "real"}
    if isinstance(node, StringPlan):
        out = {"kind": "string"}
        if node.max_length is not None:
            out["maxLength"] = node.max_length
        return out
    if isinstance(node, BoolPlan):
        return {"kind": "bool"}
    if isinstance(node, NullPlan):
        return {"kind": "null"}
    if isinstance(node, ArrayPlan):
        out = {"kind": "array", "element": _node_to_json(node.element)}
        if node.prefix:
            out["prefix"] = [_node_to_json(sub) for sub in node.prefix]
        if node.fixed_count is not None:
            out["fixedCount"] = node.fixed_count
        if node.min_count:
            out["minCount"] = node.min_count
        if node.max_count is not None and node.fixed_count is None:
            out["maxCount"] = node.max_count
        return out
    if isinstance(node, ObjectPlan):
        out = {"kind": "object"}
        if node.required:
            out["required"] = {key: _node_to_json(sub) for key, sub in node.required}
        if node.optional:
            out["optional"] = {key: _node_to_json(sub) for key, sub in node.optional}
        out["additional"] = (
            None if node.additional is None else _node_to_json(node.additional)
        )
        return out
    if isinstance(node, UnionPlan):
        return {
            "kind": "union",
            "tagBits": node.tag_bits,
            "branches": [
                {"guard": sc.schema_to_json(sc.CanonicalSchema(guard, {})), "plan": _node_to_json(sub)}
                for guard, sub in node.branches
            ],
        }
    if isinstance(node, AnyPlan):
        return {"kind": "any"}
    if isinstance(node, RefPlan):
        return {"kind": "ref", "name": node.name}
    raise TypeError(f"not a plan node: {type(node).__name__}")


def plan_to_json(plan):
    """A JSON rendering of a plan for inspection tools."""
    out = {"root": _node_to_json(plan.root)}
    if plan.definitions:
        out["definitions"] = {
            name: _node_to_json(node) for name, node in sorted(plan.definitions.items())
        }
    return out
