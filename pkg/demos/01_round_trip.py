"""A first round trip: JSON text in, bytes out, same document back.

Run as: python3 demos/01_round_trip.py
"""

import binjson as bj

TEXT = """
{
  "station": "de-bilt",
  "temp_c": 21.5,
  "wind_bft": 3,
  "gusts": false,
  "readings": [21.4, 21.5, 21.5, 21.6]
}
"""

document = bj.parse_json(TEXT)

# Numbers with a fraction come back as exact decimal Real values, not
# floats, so nothing is lost before encoding even begins.
print("temp_c parsed as:", repr(document["temp_c"]))
print("minified:", bj.minify(document))

# Schema-less mode needs no preparation beyond the wildcard plan.
plan = bj.build_plan(bj.canonicalize({}))
payload = bj.encode(document, plan)
minified_size = len(bj.minify(document).encode("utf-8"))
print(f"\nminified JSON: {minified_size} bytes")
print(f"binary payload: {len(payload)} bytes")
print("payload hex:", payload.hex())

decoded = bj.decode(payload, plan)
print("\nround trip equal:", bj.json_equal(decoded, document))
print("decoded minified:", bj.minify(decoded))
