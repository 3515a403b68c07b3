"""The primitives underneath: unaligned bit fields, uvarints, zigzag.

Run as: python3 demos/02_bitstream.py
"""

from binjson import BitReader, BitWriter
from binjson.bitstream import unzigzag, uvarint_length, zigzag

# Fields are written most significant bit first and packed with no
# alignment between them: 1 + 3 + 4 bits fill exactly one byte.
writer = BitWriter()
writer.write_bits(1, 1)
writer.write_bits(0b011, 3)
writer.write_bits(0b0010, 4)
data = writer.finalize()
print(f"1+3+4 bits -> {len(data)} byte: {data.hex()}")

reader = BitReader(data)
print("read back:", reader.read_bits(1), reader.read_bits(3), reader.read_bits(4))

# Variable-length unsigned integers use 7 value bits per group with a
# continuation bit, least significant group first.
for value in [0, 127, 128, 300, 2**32, 2**64 - 1]:
    writer = BitWriter()
    writer.write_uvarint(value)
    print(f"uvarint({value}) = {writer.finalize().hex()} ({uvarint_length(value)} byte(s))")

# A partly filled byte does not disturb the grouping: after 3 leading
# bits the uvarint still occupies whole 8-bit groups mid-stream.
writer = BitWriter()
writer.write_bits(0b101, 3)
writer.write_uvarint(300)
print("3 bits then uvarint(300):", writer.finalize().hex())

# Zigzag folds signed integers into unsigned ones so small magnitudes
# of either sign stay small on the wire.
for value in [0, -1, 1, -2, 2, -(2**63)]:
    print(f"zigzag({value}) = {zigzag(value)}")
assert all(unzigzag(zigzag(v)) == v for v in range(-1000, 1000))
print("zigzag round trip over [-1000, 1000): ok")
