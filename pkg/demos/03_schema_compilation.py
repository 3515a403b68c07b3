"""From a JSON Schema to an encoding plan, step by step.

Run as: python3 demos/03_schema_compilation.py
"""

import binjson as bj

SCHEMA = {
    "type": "object",
    "required": ["kind", "level", "window"],
    "properties": {
        "kind": {"const": "alert"},
        "level": {"enum": ["info", "warning", "critical"]},
        "window": {"type": "integer", "minimum": 0, "maximum": 1440, "multipleOf": 15},
        "note": {"type": "string", "format": "uri"},
    },
    "additionalProperties": False,
}

# Canonicalization rewrites the schema into a small normal form:
# const becomes a one-value enum, keys are sorted, and the "note"
# property degrades to the wildcard because "format" is not a
# recognized keyword (graceful fallback, per node).
canonical = bj.canonicalize(SCHEMA)
print("canonical form:")
print(bj.minify(bj.schema_to_json(canonical)))

# The plan assigns each node its wire layout.  A one-value enum costs
# zero bits, three alternatives cost two, and the bounded multiple-of-15
# integer is transmitted as a step index.
plan = bj.build_plan(canonical)
print("\nencoding plan:")
print(bj.minify(bj.plan_to_json(plan)))

document = {"kind": "alert", "level": "warning", "window": 450}
payload = bj.encode(document, plan)
print(f"\n{bj.minify(document)!r}")
print(f"encodes to {len(payload)} byte(s): {payload.hex()}")
print("decodes to:", bj.minify(bj.decode(payload, plan)))

# When every field is pinned by the schema, the payload disappears.
pinned = bj.build_plan(bj.canonicalize({"const": {"status": "ok", "code": 0}}))
print("\nfully pinned document:", len(bj.encode({"status": "ok", "code": 0}, pinned)), "bytes")
print("worst-case bits, pinned plan:", bj.plan_bit_bound(pinned))
