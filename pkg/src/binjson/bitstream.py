"""Unaligned bit-level stream primitives.

The writer appends fields of 0..64 bits most-significant-bit first, so a
sequence of single bits 1,0,1,1,0,0,1,0 becomes the byte 0xB2.  Varints
are LEB128: little-endian base-128 groups with a continuation bit, each
group written as a whole 8-bit field even when the stream is not at a
byte boundary.  Zigzag folds signed 64-bit integers into unsigned ones
so small magnitudes of either sign stay short.
"""

from .errors import DecodeError, TruncatedStreamError

U64_MAX = (1 << 64) - 1
_I64_MIN = -(1 << 63)
_I64_MAX = (1 << 63) - 1

# A 64-bit value spans at most ceil(64 / 7) LEB128 groups.
_MAX_GROUPS = 10


def zigzag(value):
    """Map signed 64-bit to unsigned 64-bit: (n << 1) XOR (n >> 63)."""
    if not _I64_MIN <= value <= _I64_MAX:
        raise ValueError(f"zigzag domain is signed 64-bit: {value}")
    return ((value << 1) ^ (value >> 63)) & U64_MAX


def unzigzag(value):
    """Inverse of :func:`zigzag`."""
    if not 0 <= value <= U64_MAX:
        raise ValueError(f"unzigzag domain is unsigned 64-bit: {value}")
    return (value >> 1) ^ -(value & 1)


def uvarint_length(value):
    """Number of bytes the LEB128 encoding of ``value`` occupies."""
    if not 0 <= value <= U64_MAX:
        raise ValueError(f"uvarint domain is unsigned 64-bit: {value}")
    return max(1, (value.bit_length() + 6) // 7)


class BitWriter:
    """Append-only unaligned bit stream."""

    def __init__(self):
        self._buf = bytearray()
        self._acc = 0
        self._pending = 0

    @property
    def bit_count(self):
        """Total bits written so far."""
        return len(self._buf) * 8 + self._pending

    def write_bits(self, value, width):
        """Append ``value`` as a ``width``-bit big-endian field, 0..64 bits."""
        if not 0 <= width <= 64:
            raise ValueError(f"width must be 0..64: {width}")
        if value < 0 or value >> width:
            raise ValueError(f"value {value} does not fit in {width} bits")
        acc = (self._acc << width) | value
        pending = self._pending + width
        buf = self._buf
        while pending >= 8:
            pending -= 8
            buf.append((acc >> pending) & 0xFF)
        self._acc = acc & ((1 << pending) - 1)
        self._pending = pending

    def write_bytes(self, data):
        """Append whole bytes; a fast path when the cursor is aligned."""
        if self._pending == 0:
            self._buf.extend(data)
            return
        for start in range(0, len(data) - 7, 8):
            self.write_bits(int.from_bytes(data[start : start + 8], "big"), 64)
        for byte in data[len(data) - len(data) % 8 :]:
            self.write_bits(byte, 8)

    def write_uvarint(self, value):
        """Append an unsigned 64-bit value as LEB128 groups."""
        if not 0 <= value <= U64_MAX:
            raise ValueError(f"uvarint domain is unsigned 64-bit: {value}")
        while True:
            group = value & 0x7F
            value >>= 7
            if value:
                self.write_bits(group | 0x80, 8)
            else:
                self.write_bits(group, 8)
                return

    def finalize(self):
        """The stream as bytes, zero-padded to a byte boundary.

        Does not mutate the writer; an empty stream yields empty bytes.
        """
        if self._pending == 0:
            return bytes(self._buf)
        return bytes(self._buf) + bytes([(self._acc << (8 - self._pending)) & 0xFF])


class BitReader:
    """Cursor over a byte string, reading unaligned bit fields."""

    def __init__(self, data):
        self._data = bytes(data)
        self._pos = 0

    @property
    def bit_position(self):
        return self._pos

    @property
    def bits_remaining(self):
        return len(self._data) * 8 - self._pos

    def read_bits(self, width):
        """Read a ``width``-bit big-endian field; error past end of data."""
        if not 0 <= width <= 64:
            raise ValueError(f"width must be 0..64: {width}")
        if width > self.bits_remaining:
            raise TruncatedStreamError(
                f"need {width} bits at bit {self._pos}, have {self.bits_remaining}"
            )
        data = self._data
        pos = self._pos
        value = 0
        remaining = width
        while remaining:
            byte_index, bit_offset = divmod(pos, 8)
            take = min(8 - bit_offset, remaining)
            chunk = (data[byte_index] >> (8 - bit_offset - take)) & ((1 << take) - 1)
            value = (value << take) | chunk
            pos += take
            remaining -= take
        self._pos = pos
        return value

    def read_bytes(self, count):
        """Read ``count`` whole bytes; a fast path when aligned."""
        if count * 8 > self.bits_remaining:
            raise TruncatedStreamError(
                f"need {count} bytes at bit {self._pos}, have {self.bits_remaining} bits"
            )
        if self._pos % 8 == 0:
            start = self._pos // 8
            self._pos += count * 8
            return self._data[start : start + count]
        out = bytearray()
        for _ in range(count):
            out.append(self.read_bits(8))
        return bytes(out)

    def read_uvarint(self):
        """Read a LEB128 value; reject streams over 10 groups or 64 bits."""
        result = 0
        shift = 0
        for _ in range(_MAX_GROUPS):
            group = self.read_bits(8)
            result |= (group & 0x7F) << shift
            if not group & 0x80:
                if result > U64_MAX:
                    raise DecodeError(f"uvarint overflows 64 bits: {result}")
                return result
            shift += 7
        raise DecodeError("uvarint exceeds 10 groups")
