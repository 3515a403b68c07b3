"""Command-line front end.

Subcommands: encode, decode, canonicalize, plan, bench.  Payload bytes
go to the output file or stdout; diagnostics go to stderr.  Exit codes:
1 malformed JSON, 2 schema or usage problems, 3 schema validation
failures, 4 I/O failures, 5 malformed binary payloads.
"""

from __future__ import annotations

import argparse
import sys

from .bench import REPORT_FORMATS, emit_report, run_corpus, summarize
from .codec import decode, encode
from .errors import (
    BenchmarkError,
    DecodeError,
    EncodeError,
    JsonParseError,
    SchemaError,
    SchemaMismatchError,
    UsageError,
)
from .plan import build_plan, plan_to_json
from .schema import canonicalize, schema_to_json
from .values import minify, parse_json

EXIT_OK = 0
EXIT_PARSE = 1
EXIT_SCHEMA = 2
EXIT_VALIDATION = 3
EXIT_IO = 4
EXIT_DECODE = 5

# Framed container: magic, then one mode byte, then the payload.
FRAME_MAGIC = b"BJ1"
MODE_BYTES = {"schema-driven": 0, "schema-less": 1}
MODE_NAMES = {byte: name for name, byte in MODE_BYTES.items()}

WILDCARD_SCHEMA = {}


def _read_bytes(path):
    if path == "-":
        return sys.stdin.buffer.read()
    with open(path, "rb") as handle:
        return handle.read()


def _write_bytes(path, data):
    if path == "-":
        sys.stdout.buffer.write(data)
        sys.stdout.buffer.flush()
    else:
        with open(path, "wb") as handle:
            handle.write(data)


def _write_text(path, text):
    _write_bytes(path, text.encode("utf-8"))


def _load_plan(args, mode):
    if mode == "schema-driven":
        if not args.schema:
            raise UsageError("--schema is required for schema-driven mode")
        schema = parse_json(_read_bytes(args.schema))
    else:
        schema = WILDCARD_SCHEMA
    return build_plan(canonicalize(schema))


def _cmd_encode(args):
    document = parse_json(_read_bytes(args.input))
    payload = encode(document, _load_plan(args, args.mode))
    out = payload
    if args.framed:
        out = FRAME_MAGIC + bytes([MODE_BYTES[args.mode]]) + payload
    _write_bytes(args.out, out)
    print(f"{len(payload)} bytes", file=sys.stderr)
    return EXIT_OK


def _cmd_decode(args):
    data = _read_bytes(args.input)
    mode = args.mode
    if args.framed:
        if len(data) < len(FRAME_MAGIC) + 1 or not data.startswith(FRAME_MAGIC):
            raise DecodeError("not a framed payload: bad magic")
        mode_byte = data[len(FRAME_MAGIC)]
        if mode_byte not in MODE_NAMES:
            raise DecodeError(f"unknown mode byte {mode_byte}")
        mode = MODE_NAMES[mode_byte]
        data = data[len(FRAME_MAGIC) + 1 :]
        document = decode(data, _load_plan(args, mode))
    else:
        try:
            document = decode(data, _load_plan(args, mode))
        except DecodeError as exc:
            if data.startswith(FRAME_MAGIC):
                raise DecodeError(f"{exc} (input starts with the container magic; retry with --framed)") from exc
            raise
    _write_text(args.out, minify(document) + "\n")
    return EXIT_OK


def _cmd_canonicalize(args):
    canonical = canonicalize(parse_json(_read_bytes(args.input)))
    _write_text(args.out, minify(schema_to_json(canonical)) + "\n")
    return EXIT_OK


def _cmd_plan(args):
    plan = build_plan(canonicalize(parse_json(_read_bytes(args.input))))
    _write_text(args.out, minify(plan_to_json(plan)) + "\n")
    return EXIT_OK


def _cmd_bench(args):
    formats = [name.strip() for name in args.format.split(",") if name.strip()]
    unknown = set(formats) - set(REPORT_FORMATS)
    if unknown:
        raise UsageError(f"unknown report formats: {sorted(unknown)}")
    reports = run_corpus(args.corpus)
    summary = summarize(reports)
    paths = emit_report(reports, summary, args.out, formats)
    for mode, stats in (("schema-driven", summary.schema_driven), ("schema-less", summary.schema_less)):
        print(
            f"{mode}: median {stats.median}% average {stats.average}% "
            f"({stats.negative_cases} negative of {stats.total})",
            file=sys.stderr,
        )
    print(f"{len(paths)} report files in {args.out}", file=sys.stderr)
    return EXIT_OK


def _build_parser():
    parser = argparse.ArgumentParser(
        prog="binjson",
        description="Space-efficient binary serialization for JSON documents.",
    )
    commands = parser.add_subparsers(dest="command", required=True)

    encode_cmd = commands.add_parser("encode", help="encode a JSON document")
    encode_cmd.add_argument("input", help="JSON file, or - for stdin")
    encode_cmd.add_argument(
        "--mode", choices=sorted(MODE_BYTES), default="schema-less"
    )
    encode_cmd.add_argument("--schema", help="schema file for schema-driven mode")
    encode_cmd.add_argument("--framed", action="store_true", help="wrap in a self-identifying container")
    encode_cmd.add_argument("--out", default="-", help="output file, default stdout")
    encode_cmd.set_defaults(run=_cmd_encode)

    decode_cmd = commands.add_parser("decode", help="decode a binary payload")
    decode_cmd.add_argument("input", help="payload file, or - for stdin")
    decode_cmd.add_argument(
        "--mode", choices=sorted(MODE_BYTES), default="schema-less"
    )
    decode_cmd.add_argument("--schema", help="schema file for schema-driven mode")
    decode_cmd.add_argument("--framed", action="store_true", help="read the container header for the mode")
    decode_cmd.add_argument("--out", default="-", help="output file, default stdout")
    decode_cmd.set_defaults(run=_cmd_decode)

    canon_cmd = commands.add_parser("canonicalize", help="print a schema's canonical form")
    canon_cmd.add_argument("input", help="schema file, or - for stdin")
    canon_cmd.add_argument("--out", default="-")
    canon_cmd.set_defaults(run=_cmd_canonicalize)

    plan_cmd = commands.add_parser("plan", help="print the encoding plan for a schema")
    plan_cmd.add_argument("input", help="schema file, or - for stdin")
    plan_cmd.add_argument("--out", default="-")
    plan_cmd.set_defaults(run=_cmd_plan)

    bench_cmd = commands.add_parser("bench", help="run the size benchmark over a corpus")
    bench_cmd.add_argument("--corpus", required=True, help="corpus directory")
    bench_cmd.add_argument("--out", default="report", help="report output directory")
    bench_cmd.add_argument(
        "--format", default=",".join(REPORT_FORMATS), help="comma-separated: csv,markdown,svg"
    )
    bench_cmd.set_defaults(run=_cmd_bench)
    return parser


def main(argv=None):
    args = _build_parser().parse_args(argv)
    try:
        return args.run(args)
    except JsonParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except (SchemaMismatchError, EncodeError, BenchmarkError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except (SchemaError, UsageError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_SCHEMA
    except DecodeError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DECODE
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
