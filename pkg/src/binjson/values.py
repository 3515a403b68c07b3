"""Lossless JSON document model.

Documents are plain Python values: None, bool, int, str, list and dict,
plus :class:`Real` for numbers that carry a fraction or an exponent.
Integers are confined to signed 64-bit; anything larger is rejected at
parse time rather than silently widened or rounded.  Reals store an exact
decimal (sign, digits, exponent) triple so that no precision is invented
or lost anywhere in the pipeline.

Values are treated as immutable once built.  Nothing in this library
mutates a document after :func:`parse_json` returns it.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from .errors import JsonParseError, UnsupportedNumberError

I64_MIN = -(1 << 63)
I64_MAX = (1 << 63) - 1
I32_MIN = -(1 << 31)
I32_MAX = (1 << 31) - 1

# Longest decimal digit count a signed 64-bit integer can have.
_I64_DIGITS = 19


def _normalize_parts(sign, digits, exponent):
    digits = digits.lstrip("0")
    if not digits:
        return 1, "0", 0
    stripped = digits.rstrip("0")
    exponent += len(digits) - len(stripped)
    return (1 if sign >= 0 else -1), stripped, exponent


@dataclass(frozen=True)
class Real:
    """An exact decimal number: sign * int(digits) * 10**exponent.

    The constructor normalizes its arguments: digits carry no leading or
    trailing zeros (zero itself is digits "0", exponent 0, sign +1), so
    two Reals are numerically equal iff they are field-wise equal.
    """

    sign: int
    digits: str
    exponent: int

    def __post_init__(self):
        if not self.digits or self.digits.strip("0123456789"):
            raise ValueError(f"digits must be a decimal string: {self.digits!r}")
        sign, digits, exponent = _normalize_parts(self.sign, self.digits, self.exponent)
        if not I32_MIN <= exponent <= I32_MAX:
            raise UnsupportedNumberError(f"exponent out of range: {exponent}")
        object.__setattr__(self, "sign", sign)
        object.__setattr__(self, "digits", digits)
        object.__setattr__(self, "exponent", exponent)


def _number_from_literal(literal):
    """Turn a JSON numeric literal into an int or a Real.

    Literals with no fraction and no exponent become int and must fit
    signed 64-bit.  Everything else becomes a normalized Real.
    """
    if "." not in literal and "e" not in literal and "E" not in literal:
        value = int(literal)
        if not I64_MIN <= value <= I64_MAX:
            raise UnsupportedNumberError(f"integer literal out of 64-bit range: {literal}")
        return value
    mantissa, _, exp_part = literal.replace("E", "e").partition("e")
    int_part, _, frac_part = mantissa.partition(".")
    sign = -1 if int_part.startswith("-") else 1
    digits = int_part.lstrip("+-") + frac_part
    exponent = (int(exp_part) if exp_part else 0) - len(frac_part)
    # Pre-check so a pathological exponent fails before Real's i32 guard
    # has a chance to see a normalized value.
    if not I32_MIN - len(digits) <= exponent <= I32_MAX + len(digits):
        raise UnsupportedNumberError(f"exponent out of range: {literal}")
    return Real(sign, digits if digits else "0", exponent)


def _reject_constant(literal):
    raise JsonParseError(f"{literal} is not a JSON value")


def _object_pairs(pairs):
    obj = {}
    for key, value in pairs:
        if key in obj:
            raise JsonParseError(f"duplicate object key {key!r}")
        obj[key] = value
    return obj


def _reject_surrogates(value):
    if isinstance(value, str):
        for ch in value:
            if 0xD800 <= ord(ch) <= 0xDFFF:
                raise JsonParseError(f"lone surrogate U+{ord(ch):04X} in string")
    elif isinstance(value, list):
        for item in value:
            _reject_surrogates(item)
    elif isinstance(value, dict):
        for key, item in value.items():
            _reject_surrogates(key)
            _reject_surrogates(item)


def parse_json(text):
    """Parse JSON text (str or UTF-8 bytes) into a document value.

    Rejects byte-order marks, duplicate object keys, integer literals
    beyond signed 64-bit, and strings containing lone surrogates.  Parse
    errors carry the byte offset of the problem where known.
    """
    if isinstance(text, (bytes, bytearray)):
        try:
            text = bytes(text).decode("utf-8")
        except UnicodeDecodeError as exc:
            raise JsonParseError(f"invalid UTF-8: {exc.reason}", offset=exc.start) from exc
    if text.startswith("﻿"):
        raise JsonParseError("byte-order mark is not allowed", offset=0)
    try:
        value = json.loads(
            text,
            parse_int=_number_from_literal,
            parse_float=_number_from_literal,
            parse_constant=_reject_constant,
            object_pairs_hook=_object_pairs,
        )
    except json.JSONDecodeError as exc:
        byte_offset = len(text[: exc.pos].encode("utf-8"))
        raise JsonParseError(exc.msg, offset=byte_offset) from exc
    _reject_surrogates(value)
    return value


def _format_real(real):
    """Shortest decimal text that parses back to the same numeric value.

    Candidates are the plain integer form (only when it fits signed
    64-bit, so re-parsing cannot fail), the plain decimal form, and
    mantissa-exponent forms.  Ties go to the earlier candidate.
    """
    sign = "-" if real.sign < 0 else ""
    digits, exponent = real.digits, real.exponent
    if digits == "0":
        return "0"
    n = len(digits)
    candidates = []
    if exponent >= 0:
        if n + exponent <= _I64_DIGITS:
            magnitude = int(digits) * 10 ** exponent
            if magnitude <= (-I64_MIN if sign else I64_MAX):
                candidates.append(sign + digits + "0" * exponent)
    elif -exponent < n:
        candidates.append(sign + digits[: n + exponent] + "." + digits[n + exponent :])
    else:
        candidates.append(sign + "0." + "0" * (-exponent - n) + digits)
    candidates.append(sign + digits + "e" + str(exponent))
    if n > 1:
        candidates.append(sign + digits[0] + "." + digits[1:] + "e" + str(exponent + n - 1))
    return min(candidates, key=len)


def _emit(value, out):
    if value is None:
        out.append("null")
    elif isinstance(value, bool):
        out.append("true" if value else "false")
    elif isinstance(value, int):
        out.append(str(value))
    elif isinstance(value, Real):
        out.append(_format_real(value))
    elif isinstance(value, str):
        out.append(json.dumps(value, ensure_ascii=False))
    elif isinstance(value, list):
        out.append("[")
        for i, item in enumerate(value):
            if i:
                out.append(",")
            _emit(item, out)
        out.append("]")
    elif isinstance(value, dict):
        out.append("{")
        first = True
        for key, item in value.items():
            if not isinstance(key, str):
                raise TypeError(f"object keys must be strings, got {type(key).__name__}")
            if not first:
                out.append(",")
            first = False
            out.append(json.dumps(key, ensure_ascii=False))
            out.append(":")
            _emit(item, out)
        out.append("}")
    else:
        raise TypeError(f"not a JSON value: {type(value).__name__}")


def minify(value):
    """Emit the shortest JSON text for a document.

    No whitespace, object keys in insertion order, numbers in their
    shortest round-trip form.  The UTF-8 length of this text is the
    baseline document size used by the benchmark harness.
    """
    out = []
    _emit(value, out)
    return "".join(out)


def number_parts(value):
    """Normalized (sign, digits, exponent) triple for an int or Real."""
    if isinstance(value, Real):
        return value.sign, value.digits, value.exponent
    if value == 0:
        return 1, "0", 0
    sign = 1 if value > 0 else -1
    digits = str(abs(value))
    stripped = digits.rstrip("0")
    return sign, stripped, len(digits) - len(stripped)


def json_equal(a, b):
    """Structural equality with order-insensitive objects and
    mathematical number comparison (2 equals 2.0 equals 0.2e1).

    Booleans never equal numbers, order matters inside arrays.
    """
    if isinstance(a, bool) or isinstance(b, bool):
        return a is b
    if isinstance(a, (int, Real)) and isinstance(b, (int, Real)):
        return number_parts(a) == number_parts(b)
    if a is None or b is None:
        return a is None and b is None
    if isinstance(a, str) and isinstance(b, str):
        return a == b
    if isinstance(a, list) and isinstance(b, list):
        return len(a) == len(b) and all(json_equal(x, y) for x, y in zip(a, b))
    if isinstance(a, dict) and isinstance(b, dict):
        if len(a) != len(b):
            return False
        for key, item in a.items():
            if key not in b or not json_equal(item, b[key]):
                return False
        return True
    return False
