"""Schema-driven and schema-less encodings of the same document.

Schema-less is not a separate format here: it is the same machinery
running under the wildcard schema, which accepts anything and therefore
must spend bytes on structure tags and keys.  A real schema lets the
encoder drop all of that.

Run as: python3 demos/04_two_modes.py
"""

import binjson as bj

document = {
    "device": "relay-4",
    "open": True,
    "amps": 12,
    "log": ["reset", "probe", "reset", "probe"],
}

STRICT = {
    "type": "object",
    "required": ["device", "open", "amps", "log"],
    "properties": {
        "device": {"type": "string", "maxLength": 16},
        "open": {"type": "boolean"},
        "amps": {"type": "integer", "minimum": 0, "maximum": 63},
        "log": {"type": "array", "items": {"enum": ["reset", "probe", "fault"]}},
    },
    "additionalProperties": False,
}

minified = bj.minify(document).encode("utf-8")
driven_plan = bj.build_plan(bj.canonicalize(STRICT))
less_plan = bj.build_plan(bj.canonicalize({}))

driven = bj.encode(document, driven_plan)
less = bj.encode(document, less_plan)

print(f"minified JSON:  {len(minified):3} bytes")
print(f"schema-less:    {len(less):3} bytes  {less.hex()}")
print(f"schema-driven:  {len(driven):3} bytes  {driven.hex()}")

# Both modes share the string pool: the second "reset" in schema-less
# mode is a two-byte back-reference instead of a six-byte literal.  In
# schema-driven mode the log entries are two-bit enum indices, object
# keys never reach the wire at all, and "amps" fits in six bits.
for name, plan, payload in [("driven", driven_plan, driven), ("less", less_plan, less)]:
    restored = bj.decode(payload, plan)
    assert bj.json_equal(restored, document)
    print(f"{name} round trip: ok")

# A document the schema rejects is refused with the offending path
# rather than silently encoded.
try:
    bj.encode({**document, "amps": 99}, driven_plan)
except bj.SchemaMismatchError as error:
    print("rejected:", error)
