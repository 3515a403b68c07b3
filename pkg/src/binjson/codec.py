"""Binary encoding and decoding of documents under an encoding plan.

Schema-driven regions spend bits only on what the plan leaves open.
Schema-less regions (AnyPlan) use a self-describing tag byte: the major
type in the high 3 bits and a small field in the low 5 bits.

    major 0  non-negative integer; small is the value 0..23, 24 means a
             uvarint with the value follows
    major 1  negative integer; small carries magnitude - 1 the same way
    major 2  string; small is the byte length 0..23, 24 means a uvarint
             length follows, 31 means a uvarint pool index follows
    major 3  array; small is the element count, sized like major 0
    major 4  object; small is the pair count; each pair is a major-2
             string key then a value
    major 5  simple; small 0 false, 1 true, 2 null
    major 6  decimal; zigzag uvarints of mantissa then exponent follow
    major 7  reserved

Both modes share one string pool per encode or decode session.  A string
of two bytes or more is appended to the pool right after its first
literal emission; a later occurrence is written as a back-reference when
that is strictly shorter than repeating the literal.  The decoder
mirrors the rule exactly, so it reconstructs the encoder's pool from the
stream alone.
"""

from __future__ import annotations

import copy

from .bitstream import BitReader, BitWriter, unzigzag, uvarint_length, zigzag
from .errors import (
    ChoiceError,
    DecodeError,
    EncodeError,
    PaddingError,
    PoolReferenceError,
    SchemaMismatchError,
    TagError,
    Utf8Error,
)
from . import plan as pl
from .schema import _validate_node, integral_value
from .values import I32_MAX, I32_MIN, I64_MAX, I64_MIN, Real, json_equal, number_parts

_POOL_MIN_BYTES = 2

_MAJOR_UINT = 0
_MAJOR_NEGINT = 1
_MAJOR_STRING = 2
_MAJOR_ARRAY = 3
_MAJOR_OBJECT = 4
_MAJOR_SIMPLE = 5
_MAJOR_REAL = 6

_SMALL_LIMIT = 23
_SMALL_UVARINT = 24
_SMALL_POOL_REF = 31

_SIMPLE_FALSE = 0
_SIMPLE_TRUE = 1
_SIMPLE_NULL = 2


class StringPool:
    """Insertion-ordered set of strings with stable indices."""

    def __init__(self):
        self.strings = []
        self._index = {}

    def find(self, value):
        return self._index.get(value)

    def add(self, value):
        if value in self._index:
            raise ValueError(f"string already pooled: {value!r}")
        self._index[value] = len(self.strings)
        self.strings.append(value)

    def __len__(self):
        return len(self.strings)


def _mantissa_exponent(value, path=""):
    sign, digits, exponent = number_parts(value)
    if len(digits) > 19:
        raise EncodeError(f"{path or '/'}: mantissa exceeds 64 bits: {digits}")
    mantissa = sign * int(digits)
    if not I64_MIN <= mantissa <= I64_MAX:
        raise EncodeError(f"{path or '/'}: mantissa exceeds 64 bits: {digits}")
    return mantissa, exponent


def _real_from_parts(mantissa, exponent):
    """Rebuild a document number from decoded mantissa and exponent.

    A non-negative exponent means the value is a whole number; return it
    as int when it fits signed 64-bit, otherwise keep the exact Real.
    """
    if mantissa == 0:
        return 0
    if exponent >= 0:
        digits = len(str(abs(mantissa))) + exponent
        if digits <= 19:
            value = mantissa * 10 ** exponent
            if I64_MIN <= value <= I64_MAX:
                return value
    return Real(1 if mantissa > 0 else -1, str(abs(mantissa)), exponent)


def _write_head(writer, major, small_value):
    if small_value <= _SMALL_LIMIT:
        writer.write_bits((major << 5) | small_value, 8)
    else:
        writer.write_bits((major << 5) | _SMALL_UVARINT, 8)
        writer.write_uvarint(small_value)


def _literal_string_cost(byte_length):
    if byte_length <= _SMALL_LIMIT:
        return 1 + byte_length
    return 1 + uvarint_length(byte_length) + byte_length


def _write_any_string(value, pool, writer):
    data = value.encode("utf-8")
    index = pool.find(value)
    if index is not None:
        if 1 + uvarint_length(index) < _literal_string_cost(len(data)):
            writer.write_bits((_MAJOR_STRING << 5) | _SMALL_POOL_REF, 8)
            writer.write_uvarint(index)
            return
    _write_head(writer, _MAJOR_STRING, len(data))
    writer.write_bytes(data)
    if index is None and len(data) >= _POOL_MIN_BYTES:
        pool.add(value)


def encode_any(value, pool, writer):
    """Append the self-describing encoding of ``value`` to ``writer``."""
    if isinstance(value, bool):
        writer.write_bits((_MAJOR_SIMPLE << 5) | (_SIMPLE_TRUE if value else _SIMPLE_FALSE), 8)
    elif value is None:
        writer.write_bits((_MAJOR_SIMPLE << 5) | _SIMPLE_NULL, 8)
    elif isinstance(value, int):
        if value >= 0:
            _write_head(writer, _MAJOR_UINT, value)
        else:
            _write_head(writer, _MAJOR_NEGINT, -value - 1)
    elif isinstance(value, Real):
        mantissa, exponent = _mantissa_exponent(value)
        writer.write_bits((_MAJOR_REAL << 5) | 0, 8)
        writer.write_uvarint(zigzag(mantissa))
        writer.write_uvarint(zigzag(exponent))
    elif isinstance(value, str):
        _write_any_string(value, pool, writer)
    elif isinstance(value, list):
        _write_head(writer, _MAJOR_ARRAY, len(value))
        for item in value:
            encode_any(item, pool, writer)
    elif isinstance(value, dict):
        _write_head(writer, _MAJOR_OBJECT, len(value))
        for key, item in value.items():
            if not isinstance(key, str):
                raise EncodeError(f"object keys must be strings, got {type(key).__name__}")
            _write_any_string(key, pool, writer)
            encode_any(item, pool, writer)
    else:
        raise EncodeError(f"not a JSON value: {type(value).__name__}")


def _read_small(reader, small):
    if small <= _SMALL_LIMIT:
        return small
    if small == _SMALL_UVARINT:
        return reader.read_uvarint()
    raise TagError(f"malformed small field {small}")


def _read_any_string(reader, pool, small):
    if small == _SMALL_POOL_REF:
        index = reader.read_uvarint()
        if index >= len(pool):
            raise PoolReferenceError(f"pool index {index} of {len(pool)}")
        return pool.strings[index]
    length = _read_small(reader, small)
    data = reader.read_bytes(length)
    try:
        value = data.decode("utf-8")
    except UnicodeDecodeError as exc:
        raise Utf8Error(f"invalid UTF-8 in string payload: {exc.reason}") from exc
    if length >= _POOL_MIN_BYTES and pool.find(value) is None:
        pool.add(value)
    return value


def _read_real_payload(reader):
    mantissa = unzigzag(reader.read_uvarint())
    exponent = unzigzag(reader.read_uvarint())
    if not I32_MIN <= exponent <= I32_MAX:
        raise DecodeError(f"real exponent out of range: {exponent}")
    return _real_from_parts(mantissa, exponent)


def decode_any(reader, pool):
    """Read one self-describing value from ``reader``."""
    tag = reader.read_bits(8)
    major = tag >> 5
    small = tag & 0x1F
    if major == _MAJOR_UINT:
        value = _read_small(reader, small)
        if value > I64_MAX:
            raise DecodeError(f"integer out of 64-bit range: {value}")
        return value
    if major == _MAJOR_NEGINT:
        magnitude = _read_small(reader, small) + 1
        if -magnitude < I64_MIN:
            raise DecodeError(f"integer out of 64-bit range: {-magnitude}")
        return -magnitude
    if major == _MAJOR_STRING:
        return _read_any_string(reader, pool, small)
    if major == _MAJOR_ARRAY:
        count = _read_small(reader, small)
        return [decode_any(reader, pool) for _ in range(count)]
    if major == _MAJOR_OBJECT:
        count = _read_small(reader, small)
        out = {}
        for _ in range(count):
            key = decode_any(reader, pool)
            if not isinstance(key, str):
                raise TagError("object key is not a string")
            if key in out:
                raise DecodeError(f"duplicate object key {key!r}")
            out[key] = decode_any(reader, pool)
        return out
    if major == _MAJOR_SIMPLE:
        if small == _SIMPLE_FALSE:
            return False
        if small == _SIMPLE_TRUE:
            return True
        if small == _SIMPLE_NULL:
            return None
        raise TagError(f"unknown simple value {small}")
    if major == _MAJOR_REAL:
        if small != 0:
            raise TagError(f"malformed decimal tag small field {small}")
        return _read_real_payload(reader)
    raise TagError(f"reserved major type {major}")


class Encoder:
    """One encode session: a plan, a bit writer and a string pool."""

    def __init__(self, plan):
        self.plan = plan
        self.pool = StringPool()
        self._writer = BitWriter()
        self._done = False

    def encode(self, value):
        """Encode one document; a session is single use."""
        if self._done:
            raise RuntimeError("encode session already used")
        self._done = True
        self._value(value, self.plan.root, "")
        return self._writer.finalize()

    def _mismatch(self, message, path):
        raise SchemaMismatchError(message, path)

    def _value(self, value, node, path):
        if isinstance(node, pl.ConstPlan):
            if not json_equal(value, node.value):
                self._mismatch("value differs from schema constant", path)
        elif isinstance(node, pl.ChoicePlan):
            for index, candidate in enumerate(node.values):
                if json_equal(value, candidate):
                    self._writer.write_bits(index, node.index_bits)
                    return
            self._mismatch("value is not one of the schema alternatives", path)
        elif isinstance(node, pl.BoundedIntPlan):
            number = integral_value(value)
            if number is None:
                self._mismatch("expected an integer", path)
            offset = number - node.base
            if offset < 0 or offset % node.scale:
                self._mismatch(f"integer {number} outside encodable range", path)
            step = offset // node.scale
            if step >> node.range_bits:
                self._mismatch(f"integer {number} outside encodable range", path)
            self._writer.write_bits(step, node.range_bits)
        elif isinstance(node, pl.VarIntPlan):
            number = integral_value(value)
            if number is None:
                self._mismatch("expected an integer", path)
            if node.kind == "floor":
                if number < node.offset:
                    self._mismatch(f"integer {number} below minimum {node.offset}", path)
                self._writer.write_uvarint(number - node.offset)
            elif node.kind == "ceil":
                if number > node.offset:
                    self._mismatch(f"integer {number} above maximum {node.offset}", path)
                self._writer.write_uvarint(node.offset - number)
            else:
                self._writer.write_uvarint(zigzag(number))
        elif isinstance(node, pl.RealPlan):
            if isinstance(value, bool) or not isinstance(value, (int, Real)):
                self._mismatch("expected a number", path)
            mantissa, exponent = _mantissa_exponent(value, path)
            self._writer.write_uvarint(zigzag(mantissa))
            self._writer.write_uvarint(zigzag(exponent))
        elif isinstance(node, pl.StringPlan):
            if not isinstance(value, str):
                self._mismatch("expected a string", path)
            if node.max_length is not None and len(value) > node.max_length:
                self._mismatch(f"string longer than maxLength {node.max_length}", path)
            self._string(value)
        elif isinstance(node, pl.BoolPlan):
            if not isinstance(value, bool):
                self._mismatch("expected a boolean", path)
            self._writer.write_bits(1 if value else 0, 1)
        elif isinstance(node, pl.NullPlan):
            if value is not None:
                self._mismatch("expected null", path)
        elif isinstance(node, pl.ArrayPlan):
            self._array(value, node, path)
        elif isinstance(node, pl.ObjectPlan):
            self._object(value, node, path)
        elif isinstance(node, pl.UnionPlan):
            self._union(value, node, path)
        elif isinstance(node, pl.AnyPlan):
            encode_any(value, self.pool, self._writer)
        elif isinstance(node, pl.RefPlan):
            self._value(value, self.plan.definitions[node.name], path)
        else:
            raise TypeError(f"not a plan node: {type(node).__name__}")

    def _string(self, value):
        """Pool-aware string field: uvarint(0) + uvarint(index) for a
        back-reference, else uvarint(byte length + 1) + bytes."""
        data = value.encode("utf-8")
        index = self.pool.find(value)
        literal_cost = uvarint_length(len(data) + 1) + len(data)
        if index is not None and 1 + uvarint_length(index) < literal_cost:
            self._writer.write_uvarint(0)
            self._writer.write_uvarint(index)
            return
        self._writer.write_uvarint(len(data) + 1)
        self._writer.write_bytes(data)
        if index is None and len(data) >= _POOL_MIN_BYTES:
            self.pool.add(value)

    def _array(self, value, node, path):
        if not isinstance(value, list):
            self._mismatch("expected an array", path)
        count = len(value)
        if node.fixed_count is not None:
            if count != node.fixed_count:
                self._mismatch(f"expected exactly {node.fixed_count} items, got {count}", path)
        else:
            if count < node.min_count:
                self._mismatch(f"expected at least {node.min_count} items, got {count}", path)
            if node.max_count is not None and count > node.max_count:
                self._mismatch(f"expected at most {node.max_count} items, got {count}", path)
            self._writer.write_uvarint(count - node.min_count)
        for index, item in enumerate(value):
            sub = node.prefix[index] if index < len(node.prefix) else node.element
            self._value(item, sub, f"{path}/{index}")
        return None

    def _object(self, value, node, path):
        if not isinstance(value, dict):
            self._mismatch("expected an object", path)
        declared = set()
        for key, _ in node.required:
            if key not in value:
                self._mismatch(f"missing required key {key!r}", path)
            declared.add(key)
        for key, _ in node.optional:
            declared.add(key)
            self._writer.write_bits(1 if key in value else 0, 1)
        for key, sub in node.required:
            self._value(value[key], sub, f"{path}/{key}")
        for key, sub in node.optional:
            if key in value:
                self._value(value[key], sub, f"{path}/{key}")
        extras = [key for key in value if key not in declared]
        if node.additional is None:
            if extras:
                self._mismatch(f"unexpected key {extras[0]!r}", path)
            return
        self._writer.write_uvarint(len(extras))
        for key in extras:
            self._string(key)
            self._value(value[key], node.additional, f"{path}/{key}")

    def _union(self, value, node, path):
        for index, (guard, sub) in enumerate(node.branches):
            if _validate_node(guard, value, self.plan.schema_definitions):
                self._writer.write_bits(index, node.tag_bits)
                self._value(value, sub, path)
                return
        self._mismatch("value matches no union branch", path)


class Decoder:
    """One decode session: a plan, a bit reader and a string pool."""

    def __init__(self, plan, data):
        self.plan = plan
        self.pool = StringPool()
        self._reader = BitReader(data)
        self._done = False

    def decode(self):
        """Decode one document and verify the stream is exactly spent."""
        if self._done:
            raise RuntimeError("decode session already used")
        self._done = True
        value = self._value(self.plan.root)
        remaining = self._reader.bits_remaining
        if remaining >= 8:
            raise PaddingError(f"{remaining // 8} trailing bytes after payload")
        if remaining and self._reader.read_bits(remaining):
            raise PaddingError("nonzero padding bits")
        return value

    def _value(self, node):
        if isinstance(node, pl.ConstPlan):
            return copy.deepcopy(node.value)
        if isinstance(node, pl.ChoicePlan):
            index = self._reader.read_bits(node.index_bits)
            if index >= len(node.values):
                raise ChoiceError(f"choice index {index} of {len(node.values)}")
            return copy.deepcopy(node.values[index])
        if isinstance(node, pl.BoundedIntPlan):
            step = self._reader.read_bits(node.range_bits)
            return node.base + step * node.scale
        if isinstance(node, pl.VarIntPlan):
            if node.kind == "floor":
                value = node.offset + self._reader.read_uvarint()
                if value > I64_MAX:
                    raise DecodeError(f"integer out of 64-bit range: {value}")
                return value
            if node.kind == "ceil":
                value = node.offset - self._reader.read_uvarint()
                if value < I64_MIN:
                    raise DecodeError(f"integer out of 64-bit range: {value}")
                return value
            return unzigzag(self._reader.read_uvarint())
        if isinstance(node, pl.RealPlan):
            return _read_real_payload(self._reader)
        if isinstance(node, pl.StringPlan):
            return self._string()
        if isinstance(node, pl.BoolPlan):
            return bool(self._reader.read_bits(1))
        if isinstance(node, pl.NullPlan):
            return None
        if isinstance(node, pl.ArrayPlan):
            return self._array(node)
        if isinstance(node, pl.ObjectPlan):
            return self._object(node)
        if isinstance(node, pl.UnionPlan):
            index = self._reader.read_bits(node.tag_bits)
            if index >= len(node.branches):
                raise ChoiceError(f"union tag {index} of {len(node.branches)}")
            return self._value(node.branches[index][1])
        if isinstance(node, pl.AnyPlan):
            return decode_any(self._reader, self.pool)
        if isinstance(node, pl.RefPlan):
            return self._value(self.plan.definitions[node.name])
        raise TypeError(f"not a plan node: {type(node).__name__}")

    def _string(self):
        head = self._reader.read_uvarint()
        if head == 0:
            index = self._reader.read_uvarint()
            if index >= len(self.pool):
                raise PoolReferenceError(f"pool index {index} of {len(self.pool)}")
            return self.pool.strings[index]
        data = self._reader.read_bytes(head - 1)
        try:
            value = data.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise Utf8Error(f"invalid UTF-8 in string payload: {exc.reason}") from exc
        if len(data) >= _POOL_MIN_BYTES and self.pool.find(value) is None:
            self.pool.add(value)
        return value

    def _array(self, node):
        if node.fixed_count is not None:
            count = node.fixed_count
        else:
            count = node.min_count + self._reader.read_uvarint()
            if node.max_count is not None and count > node.max_count:
                raise DecodeError(f"array count {count} above schema maximum {node.max_count}")
        out = []
        for index in range(count):
            sub = node.prefix[index] if index < len(node.prefix) else node.element
            out.append(self._value(sub))
        return out

    def _object(self, node):
        present = [self._reader.read_bits(1) for _ in node.optional]
        out = {}
        for key, sub in node.required:
            out[key] = self._value(sub)
        for (key, sub), bit in zip(node.optional, present):
            if bit:
                out[key] = self._value(sub)
        if node.additional is None:
            return out
        count = self._reader.read_uvarint()
        for _ in range(count):
            key = self._string()
            if key in out:
                raise DecodeError(f"duplicate object key {key!r}")
            out[key] = self._value(node.additional)
        return out


def encode(value, plan):
    """Encode a document under a plan.

    The document must conform to the schema the plan was built from;
    violations raise SchemaMismatchError naming the offending path.
    Identical documents and plans always produce identical bytes.
    """
    return Encoder(plan).encode(value)


def decode(data, plan):
    """Decode bytes produced by :func:`encode` under the same plan."""
    return Decoder(plan, data).decode()
