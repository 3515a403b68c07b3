"""Exception taxonomy shared across the library.

Every error raised by the public API derives from BinJsonError so callers
can catch one base class.  The command-line front end maps the taxonomy to
exit codes: parse errors, schema errors, validation errors, I/O errors and
decode errors each get a distinct code.
"""


class BinJsonError(Exception):
    """Base class for all errors raised by this library."""


class JsonParseError(BinJsonError):
    """Malformed JSON text.

    ``offset`` is the byte offset of the problem in the UTF-8 input when
    known, else None.
    """

    def __init__(self, message, offset=None):
        if offset is not None:
            message = f"{message} (byte offset {offset})"
        super().__init__(message)
        self.offset = offset


class UnsupportedNumberError(JsonParseError):
    """A numeric literal outside the representable range.

    Raised for integer literals beyond signed 64-bit and for exponents
    beyond signed 32-bit after normalization.
    """


class SchemaError(BinJsonError):
    """A schema that cannot be canonicalized or admits no encoding."""


class SchemaRefError(SchemaError):
    """An unresolvable, remote, or unsupported schema reference."""


class SchemaMismatchError(BinJsonError):
    """A value that does not conform to the schema it is encoded under.

    ``path`` is a JSON-pointer-like location of the offending value.
    """

    def __init__(self, message, path=""):
        super().__init__(f"{path or '/'}: {message}")
        self.path = path


class EncodeError(BinJsonError):
    """A value that conforms to its schema but cannot be represented,
    e.g. a decimal mantissa beyond signed 64-bit."""


class DecodeError(BinJsonError):
    """A byte stream that was not produced by the encoder."""


class TruncatedStreamError(DecodeError):
    """The stream ended before the plan was fully decoded."""


class PaddingError(DecodeError):
    """Nonzero padding bits or trailing bytes after the payload."""


class ChoiceError(DecodeError):
    """An enum index or union tag outside the declared alternatives."""


class PoolReferenceError(DecodeError):
    """A string-pool back-reference to an index that does not exist."""


class Utf8Error(DecodeError):
    """String payload bytes that are not valid UTF-8."""


class TagError(DecodeError):
    """A reserved or malformed tag byte in a schema-less region."""


class BenchmarkError(BinJsonError):
    """A benchmark invariant violation, e.g. a corpus case that fails to
    round-trip losslessly in either mode."""


class UsageError(BinJsonError):
    """Invalid command-line usage or an empty benchmark corpus."""
