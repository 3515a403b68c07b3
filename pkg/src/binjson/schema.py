"""Schema canonicalization and validation.

A practical subset of JSON Schema is compiled into a small closed tree of
canonical nodes that the plan builder understands.  Supported keywords:
type, enum, const, minimum, maximum, multipleOf, maxLength, items,
prefixItems, minItems, maxItems, properties, required,
additionalProperties, oneOf, anyOf, $ref and $defs (same document only).
A node carrying any other keyword degrades to Any: the document still
encodes, just without that node's constraints.  The empty schema and
``true`` are Any; ``false`` admits no instance and is rejected.

When several constraint families appear on one node the strongest
recognized one wins ($ref, then const, then enum, then oneOf/anyOf, then
type) and the rest are dropped.  Dropping only ever widens what the node
accepts, which is safe: validation stays a sound guard for encoding.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import SchemaError, SchemaRefError
from .values import Real, json_equal

_KEYWORDS = frozenset(
    {
        "type",
        "enum",
        "const",
        "minimum",
        "maximum",
        "multipleOf",
        "maxLength",
        "items",
        "prefixItems",
        "minItems",
        "maxItems",
        "properties",
        "required",
        "additionalProperties",
        "oneOf",
        "anyOf",
        "$ref",
        "$defs",
    }
)

_TYPE_NAMES = frozenset(
    {"integer", "number", "string", "boolean", "null", "array", "object"}
)

# Name under which a whole-schema self reference ("$ref": "#") resolves.
ROOT_REF = "#"


class SchemaNode:
    """Base class for canonical schema tree nodes."""

    __slots__ = ()


@dataclass(frozen=True)
class AnySchema(SchemaNode):
    pass


@dataclass(frozen=True)
class EnumSchema(SchemaNode):
    values: tuple


@dataclass(frozen=True)
class IntegerSchema(SchemaNode):
    minimum: int | None = None
    maximum: int | None = None
    multiple_of: int | None = None


@dataclass(frozen=True)
class RealSchema(SchemaNode):
    pass


@dataclass(frozen=True)
class StringSchema(SchemaNode):
    max_length: int | None = None


@dataclass(frozen=True)
class BooleanSchema(SchemaNode):
    pass


@dataclass(frozen=True)
class NullSchema(SchemaNode):
    pass


@dataclass(frozen=True)
class ArraySchema(SchemaNode):
    items: SchemaNode = field(default_factory=AnySchema)
    prefix: tuple = ()
    min_items: int = 0
    max_items: int | None = None


@dataclass(frozen=True)
class ObjectSchema(SchemaNode):
    """required and optional are (key, node) pairs sorted by the UTF-8
    bytes of the key; additional None means no extra keys are allowed."""

    required: tuple = ()
    optional: tuple = ()
    additional: SchemaNode | None = field(default_factory=AnySchema)


@dataclass(frozen=True)
class UnionSchema(SchemaNode):
    branches: tuple = ()


@dataclass(frozen=True)
class RefSchema(SchemaNode):
    name: str


ANY = AnySchema()


@dataclass(frozen=True)
class CanonicalSchema:
    """A canonical root node plus the table its references resolve in."""

    root: SchemaNode
    definitions: dict = field(default_factory=dict)


def _require_int(raw, keyword):
    # bool is an int subclass; a boolean here is a schema author mistake.
    if type(raw) is not int:
        raise SchemaError(f"{keyword} must be an integer, got {raw!r}")
    return raw


def _require_count(raw, keyword):
    value = _require_int(raw, keyword)
    if value < 0:
        raise SchemaError(f"{keyword} must be non-negative, got {value}")
    return value


class _Canonicalizer:
    def __init__(self, schema):
        self._schema = schema
        self._definitions = {}
        self._root_referenced = False

    def run(self):
        schema = self._schema
        if schema is True:
            return CanonicalSchema(ANY, {})
        if schema is False:
            raise SchemaError("false admits no instance and has no encoding")
        if not isinstance(schema, dict):
            raise SchemaError(f"schema must be an object or boolean, got {type(schema).__name__}")
        defs = schema.get("$defs")
        if defs is not None:
            if not isinstance(defs, dict):
                raise SchemaError("$defs must be an object")
            for name, sub in defs.items():
                self._definitions[name] = self._node(sub, at_root=False)
        root = self._node(schema, at_root=True)
        if self._root_referenced:
            self._definitions[ROOT_REF] = root
        result = CanonicalSchema(root, self._definitions)
        _check_refs(result)
        _check_cycles(result)
        return result

    def _node(self, schema, at_root):
        if schema is True:
            return ANY
        if schema is False:
            raise SchemaError("false admits no instance and has no encoding")
        if not isinstance(schema, dict):
            raise SchemaError(f"schema must be an object or boolean, got {type(schema).__name__}")
        keys = set(schema)
        if not keys <= _KEYWORDS:
            return ANY
        if "$defs" in keys and not at_root:
            raise SchemaError("$defs is only supported at the schema root")
        if "$ref" in keys:
            extra = keys - {"$ref"} - ({"$defs"} if at_root else set())
            if extra:
                raise SchemaError(f"$ref does not combine with {sorted(extra)}")
            return self._ref(schema["$ref"])
        if "const" in keys:
            return EnumSchema((schema["const"],))
        if "enum" in keys:
            return self._enum(schema["enum"])
        if "oneOf" in keys or "anyOf" in keys:
            return self._union(schema)
        if "type" in keys:
            return self._typed(schema)
        return ANY

    def _ref(self, target):
        if not isinstance(target, str):
            raise SchemaRefError(f"$ref must be a string, got {target!r}")
        if target == "#":
            self._root_referenced = True
            return RefSchema(ROOT_REF)
        prefix = "#/$defs/"
        if target.startswith(prefix) and "/" not in target[len(prefix) :]:
            return RefSchema(target[len(prefix) :])
        raise SchemaRefError(
            f"only same-document references (# or #/$defs/name) are supported: {target!r}"
        )

    def _enum(self, raw):
        if not isinstance(raw, list) or not raw:
            raise SchemaError("enum must be a non-empty array")
        values = []
        for candidate in raw:
            if not any(json_equal(candidate, seen) for seen in values):
                values.append(candidate)
        return EnumSchema(tuple(values))

    def _union(self, schema):
        raw = list(schema.get("oneOf", [])) + list(schema.get("anyOf", []))
        if not raw:
            raise SchemaError("oneOf/anyOf must be a non-empty array")
        branches = tuple(self._node(sub, at_root=False) for sub in raw)
        if len(branches) == 1:
            return branches[0]
        return UnionSchema(branches)

    def _typed(self, schema):
        declared = schema["type"]
        if isinstance(declared, list):
            names = []
            for name in declared:
                if name not in names:
                    names.append(name)
            if not names:
                raise SchemaError("type list must not be empty")
            if len(names) == 1:
                return self._single_type(names[0], schema)
            return UnionSchema(tuple(self._single_type(n, schema) for n in names))
        return self._single_type(declared, schema)

    def _single_type(self, name, schema):
        if name not in _TYPE_NAMES:
            raise SchemaError(f"unknown type {name!r}")
        if name == "integer":
            return self._integer(schema)
        if name == "number":
            return RealSchema()
        if name == "string":
            max_length = schema.get("maxLength")
            if max_length is not None:
                max_length = _require_count(max_length, "maxLength")
            return StringSchema(max_length)
        if name == "boolean":
            return BooleanSchema()
        if name == "null":
            return NullSchema()
        if name == "array":
            return self._array(schema)
        return self._object(schema)

    def _integer(self, schema):
        minimum = schema.get("minimum")
        maximum = schema.get("maximum")
        multiple_of = schema.get("multipleOf")
        if minimum is not None:
            minimum = _require_int(minimum, "minimum")
        if maximum is not None:
            maximum = _require_int(maximum, "maximum")
        if multiple_of is not None:
            multiple_of = _require_int(multiple_of, "multipleOf")
            if multiple_of <= 0:
                raise SchemaError(f"multipleOf must be positive, got {multiple_of}")
        if minimum is not None and maximum is not None:
            if minimum > maximum:
                raise SchemaError(f"minimum {minimum} exceeds maximum {maximum}")
            scale = multiple_of or 1
            if -(-minimum // scale) * scale > maximum:
                raise SchemaError(
                    f"no multiple of {scale} lies between {minimum} and {maximum}"
                )
        return IntegerSchema(minimum, maximum, multiple_of)

    def _array(self, schema):
        items_raw = schema.get("items", True)
        prefix_raw = schema.get("prefixItems", [])
        if not isinstance(prefix_raw, list):
            raise SchemaError("prefixItems must be an array")
        prefix = tuple(self._node(sub, at_root=False) for sub in prefix_raw)
        min_items = _require_count(schema.get("minItems", 0), "minItems")
        max_items = schema.get("maxItems")
        if max_items is not None:
            max_items = _require_count(max_items, "maxItems")
        if items_raw is False:
            # Tuple form: nothing is allowed past the prefix.
            cap = len(prefix)
            max_items = cap if max_items is None else min(max_items, cap)
            items = ANY
        else:
            items = self._node(items_raw, at_root=False)
        if max_items is not None and min_items > max_items:
            raise SchemaError(f"minItems {min_items} exceeds maxItems {max_items}")
        return ArraySchema(items, prefix, min_items, max_items)

    def _object(self, schema):
        properties = schema.get("properties", {})
        if not isinstance(properties, dict):
            raise SchemaError("properties must be an object")
        required_raw = schema.get("required", [])
        if not isinstance(required_raw, list) or not all(
            isinstance(k, str) for k in required_raw
        ):
            raise SchemaError("required must be an array of strings")
        required_keys = []
        for key in required_raw:
            if key not in required_keys:
                required_keys.append(key)
        by_key = {}
        for key, sub in properties.items():
            if not isinstance(key, str):
                raise SchemaError("property names must be strings")
            by_key[key] = self._node(sub, at_root=False)
        required = tuple(
            (key, by_key.get(key, ANY))
            for key in sorted(required_keys, key=lambda k: k.encode("utf-8"))
        )
        optional = tuple(
            (key, by_key[key])
            for key in sorted(by_key, key=lambda k: k.encode("utf-8"))
            if key not in required_keys
        )
        additional_raw = schema.get("additionalProperties", True)
        if additional_raw is False:
            additional = None
        elif additional_raw is True:
            additional = ANY
        else:
            additional = self._node(additional_raw, at_root=False)
        return ObjectSchema(required, optional, additional)


def _walk(node):
    yield node
    if isinstance(node, UnionSchema):
        for branch in node.branches:
            yield from _walk(branch)
    elif isinstance(node, ArraySchema):
        yield from _walk(node.items)
        for sub in node.prefix:
            yield from _walk(sub)
    elif isinstance(node, ObjectSchema):
        for _, sub in node.required + node.optional:
            yield from _walk(sub)
        if node.additional is not None:
            yield from _walk(node.additional)


def _check_refs(canonical):
    for start in [canonical.root, *canonical.definitions.values()]:
        for node in _walk(start):
            if isinstance(node, RefSchema) and node.name not in canonical.definitions:
                raise SchemaRefError(f"unresolved reference {node.name!r}")


def _unguarded_refs(node):
    """Reference names reachable without crossing an array or object node.

    Arrays and objects guard recursion because each level consumes part of
    a finite document; a cycle with no such guard admits no finite value.
    """
    if isinstance(node, RefSchema):
        return {node.name}
    if isinstance(node, UnionSchema):
        names = set()
        for branch in node.branches:
            names |= _unguarded_refs(branch)
        return names
    return set()


def _check_cycles(canonical):
    edges = {
        name: _unguarded_refs(node) for name, node in canonical.definitions.items()
    }
    state = {}

    def visit(name):
        if state.get(name) == "done":
            return
        if state.get(name) == "active":
            raise SchemaError(f"reference cycle through {name!r} never reaches a value")
        state[name] = "active"
        for target in edges.get(name, ()):
            visit(target)
        state[name] = "done"

    for name in edges:
        visit(name)


def canonicalize(schema):
    """Compile a schema document into a :class:`CanonicalSchema`.

    Raises SchemaError for schemas that admit no encoding (``false``,
    empty ranges, unguarded reference cycles) and SchemaRefError for
    remote or unresolvable references.
    """
    return _Canonicalizer(schema).run()


def integral_value(value):
    """The int behind a numeric document value, or None.

    Accepts int and any Real whose normalized exponent is non-negative
    (such a Real has no fractional digits); rejects bool and values
    outside signed 64-bit.
    """
    if isinstance(value, bool):
        return None
    if isinstance(value, int):
        return value
    if isinstance(value, Real) and value.exponent >= 0:
        if len(value.digits) + value.exponent > 19:
            return None
        result = value.sign * int(value.digits) * 10 ** value.exponent
        if -(1 << 63) <= result <= (1 << 63) - 1:
            return result
    return None


def _validate_node(node, value, definitions):
    if isinstance(node, AnySchema):
        return True
    if isinstance(node, EnumSchema):
        return any(json_equal(value, candidate) for candidate in node.values)
    if isinstance(node, IntegerSchema):
        number = integral_value(value)
        if number is None:
            return False
        if node.minimum is not None and number < node.minimum:
            return False
        if node.maximum is not None and number > node.maximum:
            return False
        if node.multiple_of is not None and number % node.multiple_of != 0:
            return False
        return True
    if isinstance(node, RealSchema):
        return isinstance(value, Real) or (
            isinstance(value, int) and not isinstance(value, bool)
        )
    if isinstance(node, StringSchema):
        if not isinstance(value, str):
            return False
        return node.max_length is None or len(value) <= node.max_length
    if isinstance(node, BooleanSchema):
        return isinstance(value, bool)
    if isinstance(node, NullSchema):
        return value is None
    if isinstance(node, ArraySchema):
        if not isinstance(value, list):
            return False
        count = len(value)
        if count < node.min_items:
            return False
        if node.max_items is not None and count > node.max_items:
            return False
        for index, item in enumerate(value):
            sub = node.prefix[index] if index < len(node.prefix) else node.items
            if not _validate_node(sub, item, definitions):
                return False
        return True
    if isinstance(node, ObjectSchema):
        if not isinstance(value, dict):
            return False
        declared = {}
        for key, sub in node.required:
            if key not in value:
                return False
            declared[key] = sub
        for key, sub in node.optional:
            declared[key] = sub
        for key, item in value.items():
            sub = declared.get(key)
            if sub is None:
                if node.additional is None:
                    return False
                sub = node.additional
            if not _validate_node(sub, item, definitions):
                return False
        return True
    if isinstance(node, UnionSchema):
        return any(_validate_node(b, value, definitions) for b in node.branches)
    if isinstance(node, RefSchema):
        return _validate_node(definitions[node.name], value, definitions)
    raise TypeError(f"not a schema node: {type(node).__name__}")


def validate(canonical, value):
    """True iff ``value`` conforms to the canonical schema."""
    return _validate_node(canonical.root, value, canonical.definitions)


def _node_to_json(node):
    if isinstance(node, AnySchema):
        return {}
    if isinstance(node, EnumSchema):
        return {"enum": list(node.values)}
    if isinstance(node, IntegerSchema):
        out = {"type": "integer"}
        if node.minimum is not None:
            out["minimum"] = node.minimum
        if node.maximum is not None:
            out["maximum"] = node.maximum
        if node.multiple_of is not None:
            out["multipleOf"] = node.multiple_of
        return out
    if isinstance(node, RealSchema):
        return {"type": "number"}
    if isinstance(node, StringSchema):
        out = {"type": "string"}
        if node.max_length is not None:
            out["maxLength"] = node.max_length
        return out
    if isinstance(node, BooleanSchema):
        return {"type": "boolean"}
    if isinstance(node, NullSchema):
        return {"type": "null"}
    if isinstance(node, ArraySchema):
        out = {"type": "array"}
        if node.prefix:
            out["prefixItems"] = [_node_to_json(sub) for sub in node.prefix]
        if not isinstance(node.items, AnySchema):
            out["items"] = _node_to_json(node.items)
        if node.min_items:
            out["minItems"] = node.min_items
        if node.max_items is not None:
            out["maxItems"] = node.max_items
        return out
    if isinstance(node, ObjectSchema):
        out = {"type": "object"}
        pairs = node.required + node.optional
        if pairs:
            out["properties"] = {
                key: _node_to_json(sub)
                for key, sub in sorted(pairs, key=lambda p: p[0].encode("utf-8"))
            }
        if node.required:
            out["required"] = [key for key, _ in node.required]
        if node.additional is None:
            out["additionalProperties"] = False
        elif not isinstance(node.additional, AnySchema):
            out["additionalProperties"] = _node_to_json(node.additional)
        return out
    if isinstance(node, UnionSchema):
        return {"anyOf": [_node_to_json(b) for b in node.branches]}
    if isinstance(node, RefSchema):
        if node.name == ROOT_REF:
            return {"$ref": "#"}
        return {"$ref": f"#/$defs/{node.name}"}
    raise TypeError(f"not a schema node: {type(node).__name__}")


def schema_to_json(canonical):
    """Re-serialize a canonical schema as a schema document.

    Canonicalizing the result yields a structurally identical
    CanonicalSchema, so canonical form is a fixed point.
    """
    out = _node_to_json(canonical.root)
    defs = {
        name: _node_to_json(node)
        for name, node in sorted(canonical.definitions.items())
        if name != ROOT_REF
    }
    if defs:
        if not isinstance(out, dict) or "$defs" in out:
            raise SchemaError("cannot attach $defs to this root")
        out = {**out, "$defs": defs}
    return out
