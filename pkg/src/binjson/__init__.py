"""Space-efficiency-first binary serialization for JSON documents.

Two modes share one machine.  Schema-driven mode compiles a schema into
an encoding plan and spends bits only on what the schema leaves open;
schema-less mode is the same pipeline run under the wildcard schema, so
any document encodes without prior agreement.  Both modes decode back to
a document equal to the input: equality of parsed values, not of source
text bytes.

    >>> import binjson
    >>> plan = binjson.build_plan(binjson.canonicalize({}))
    >>> binjson.decode(binjson.encode(True, plan), plan)
    True
"""

from .bench import (
    CaseReport,
    CorpusCase,
    ModeSummary,
    Summary,
    emit_report,
    gzip_best,
    load_corpus,
    run_case,
    run_corpus,
    size_reduction,
    summarize,
)
from .bitstream import BitReader, BitWriter, unzigzag, uvarint_length, zigzag
from .codec import Decoder, Encoder, StringPool, decode, decode_any, encode, encode_any
from .errors import (
    BenchmarkError,
    BinJsonError,
    ChoiceError,
    DecodeError,
    EncodeError,
    JsonParseError,
    PaddingError,
    PoolReferenceError,
    SchemaError,
    SchemaMismatchError,
    SchemaRefError,
    TagError,
    TruncatedStreamError,
    UnsupportedNumberError,
    UsageError,
    Utf8Error,
)
from .plan import EncodingPlan, build_plan, plan_bit_bound, plan_to_json
from .schema import CanonicalSchema, canonicalize, schema_to_json, validate
from .values import Real, json_equal, minify, parse_json

__all__ = [
    "BenchmarkError",
    "BinJsonError",
    "BitReader",
    "BitWriter",
    "CanonicalSchema",
    "CaseReport",
    "ChoiceError",
    "CorpusCase",
    "DecodeError",
    "Decoder",
    "EncodeError",
    "Encoder",
    "EncodingPlan",
    "JsonParseError",
    "ModeSummary",
    "PaddingError",
    "PoolReferenceError",
    "Real",
    "SchemaError",
    "SchemaMismatchError",
    "SchemaRefError",
    "StringPool",
    "Summary",
    "TagError",
    "TruncatedStreamError",
    "UnsupportedNumberError",
    "UsageError",
    "Utf8Error",
    "build_plan",
    "canonicalize",
    "decode",
    "decode_any",
    "emit_report",
    "encode",
    "encode_any",
    "gzip_best",
    "json_equal",
    "load_corpus",
    "minify",
    "parse_json",
    "plan_bit_bound",
    "plan_to_json",
    "run_case",
    "run_corpus",
    "schema_to_json",
    "size_reduction",
    "summarize",
    "unzigzag",
    "uvarint_length",
    "validate",
    "zigzag",
]

__version__ = "0.1.0"
