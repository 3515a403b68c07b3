"""Size benchmark harness.

Each corpus case is one document with a strict schema (hand-written,
tight) and a loose schema (the empty schema, matching any instance).
The harness minifies the document for the baseline size, encodes it
schema-driven under the strict schema and schema-less under the loose
one, proves both encodings decode back to an equal document, and reports
size reductions against the minified JSON and against gzip at maximum
compression.  A case that fails to round-trip in either mode aborts the
run: sizes are only comparable between encodings that kept the data.

Corpus layout on disk::

    corpus/<case>/document.json
    corpus/<case>/schema-strict.json
    corpus/<case>/schema-loose.json
    corpus/<case>/meta.json          {"taxonomy": ..., "references": {...}}

Reports are deterministic: cases are processed in name order and every
emitted number has a fixed format, so two runs over the same corpus
produce byte-identical output.
"""

from __future__ import annotations

import csv
import gzip
import statistics
from dataclasses import dataclass, field
from decimal import Decimal, ROUND_HALF_EVEN
from pathlib import Path

from .codec import Decoder, Encoder
from .errors import BenchmarkError, UsageError
from .plan import build_plan
from .schema import AnySchema, canonicalize, validate
from .values import json_equal, minify, parse_json

REPORT_FORMATS = ("csv", "markdown", "svg")

_TENTH = Decimal("0.1")


@dataclass
class CorpusCase:
    """One benchmark input: a document plus its two canonical schemas."""

    name: str
    document: object
    strict_schema: object
    loose_schema: object
    taxonomy: str = ""
    references: dict = field(default_factory=dict)


@dataclass
class CaseReport:
    """Sizes and reductions measured for one corpus case."""

    name: str
    taxonomy: str
    json_size: int
    gzip_size: int
    schema_driven_size: int
    schema_less_size: int
    schema_driven_reduction: Decimal
    schema_less_reduction: Decimal
    schema_driven_reduction_gzip: Decimal
    schema_less_reduction_gzip: Decimal
    schema_driven_round_trip: bool = True
    schema_less_round_trip: bool = True
    references: dict = field(default_factory=dict)


@dataclass
class ModeSummary:
    maximum: Decimal
    minimum: Decimal
    value_range: Decimal
    median: Decimal
    average: Decimal
    negative_cases: int
    total: int


@dataclass
class Summary:
    schema_driven: ModeSummary
    schema_less: ModeSummary


def gzip_best(data):
    """Byte length of ``data`` as an RFC-1952 gzip stream at maximum
    compression with a pinned zero timestamp, so the result is stable."""
    return len(gzip.compress(bytes(data), compresslevel=9, mtime=0))


def size_reduction(baseline, size):
    """(1 - size / baseline) * 100 to one decimal, round half to even.

    Negative when the encoding is larger than the baseline.
    """
    if baseline <= 0:
        raise ValueError(f"baseline must be positive: {baseline}")
    exact = Decimal((baseline - size) * 100) / Decimal(baseline)
    return exact.quantize(_TENTH, rounding=ROUND_HALF_EVEN)


def _round_trip(document, plan, payload, case_name, mode):
    decoded = Decoder(plan, payload).decode()
    if not json_equal(decoded, document):
        raise BenchmarkError(f"{case_name}: {mode} encoding did not round-trip")


def run_case(case):
    """Measure one corpus case; raises BenchmarkError if either mode
    fails to reproduce the document exactly."""
    if not isinstance(case.loose_schema.root, AnySchema):
        raise BenchmarkError(f"{case.name}: loose schema must match any instance")
    if not validate(case.strict_schema, case.document):
        raise BenchmarkError(f"{case.name}: document does not match its strict schema")
    json_bytes = minify(case.document).encode("utf-8")
    json_size = len(json_bytes)
    gzip_size = gzip_best(json_bytes)

    strict_plan = build_plan(case.strict_schema)
    loose_plan = build_plan(case.loose_schema)
    driven = Encoder(strict_plan).encode(case.document)
    less = Encoder(loose_plan).encode(case.document)
    _round_trip(case.document, strict_plan, driven, case.name, "schema-driven")
    _round_trip(case.document, loose_plan, less, case.name, "schema-less")

    return CaseReport(
        name=case.name,
        taxonomy=case.taxonomy,
        json_size=json_size,
        gzip_size=gzip_size,
        schema_driven_size=len(driven),
        schema_less_size=len(less),
        schema_driven_reduction=size_reduction(json_size, len(driven)),
        schema_less_reduction=size_reduction(json_size, len(less)),
        schema_driven_reduction_gzip=size_reduction(gzip_size, len(driven)),
        schema_less_reduction_gzip=size_reduction(gzip_size, len(less)),
        references=dict(case.references),
    )


def _mode_summary(reductions):
    maximum = max(reductions)
    minimum = min(reductions)
    return ModeSummary(
        maximum=maximum,
        minimum=minimum,
        value_range=maximum - minimum,
        median=Decimal(statistics.median(reductions)).quantize(_TENTH, ROUND_HALF_EVEN),
        average=(sum(reductions) / len(reductions)).quantize(_TENTH, ROUND_HALF_EVEN),
        negative_cases=sum(1 for r in reductions if r < 0),
        total=len(reductions),
    )


def summarize(reports):
    """Aggregate per-mode reduction statistics across case reports.

    The median of an even count is the mean of the two middle values.
    """
    if not reports:
        raise UsageError("no case reports to summarize")
    return Summary(
        schema_driven=_mode_summary([r.schema_driven_reduction for r in reports]),
        schema_less=_mode_summary([r.schema_less_reduction for r in reports]),
    )


def _load_case(case_dir):
    document = parse_json(Path(case_dir, "document.json").read_bytes())
    strict = canonicalize(parse_json(Path(case_dir, "schema-strict.json").read_bytes()))
    loose = canonicalize(parse_json(Path(case_dir, "schema-loose.json").read_bytes()))
    taxonomy = ""
    references = {}
    meta_path = Path(case_dir, "meta.json")
    if meta_path.exists():
        meta = parse_json(meta_path.read_bytes())
        taxonomy = meta.get("taxonomy", "")
        references = {name: int(size) for name, size in meta.get("references", {}).items()}
    return CorpusCase(case_dir.name, document, strict, loose, taxonomy, references)


def load_corpus(corpus_dir):
    """Read every case directory under ``corpus_dir``, sorted by name."""
    root = Path(corpus_dir)
    if not root.is_dir():
        raise UsageError(f"corpus directory not found: {root}")
    cases = [
        _load_case(case_dir)
        for case_dir in sorted(root.iterdir(), key=lambda p: p.name)
        if case_dir.is_dir()
    ]
    if not cases:
        raise UsageError(f"corpus directory is empty: {root}")
    return cases


def run_corpus(corpus_dir):
    """Load and measure a whole corpus; reports come back name-sorted."""
    return [run_case(case) for case in load_corpus(corpus_dir)]


def _reference_columns(reports):
    names = set()
    for report in reports:
        names.update(report.references)
    return sorted(names)


def _emit_csv(reports, out_dir):
    references = _reference_columns(reports)
    path = Path(out_dir, "report.csv")
    with open(path, "w", newline="", encoding="utf-8") as handle:
        writer = csv.writer(handle, lineterminator="\n")
        writer.writerow(
            [
                "case",
                "taxonomy",
                "json_size",
                "gzip_size",
                "schema_driven_size",
                "schema_less_size",
                "schema_driven_reduction",
                "schema_less_reduction",
                "schema_driven_reduction_gzip",
                "schema_less_reduction_gzip",
                *[f"ref_{name}" for name in references],
            ]
        )
        for report in reports:
            writer.writerow(
                [
                    report.name,
                    report.taxonomy,
                    report.json_size,
                    report.gzip_size,
                    report.schema_driven_size,
                    report.schema_less_size,
                    str(report.schema_driven_reduction),
                    str(report.schema_less_reduction),
                    str(report.schema_driven_reduction_gzip),
                    str(report.schema_less_reduction_gzip),
                    *[
                        str(report.references[name]) if name in report.references else ""
                        for name in references
                    ],
                ]
            )
    return path


def _markdown_summary_rows(summary):
    rows = []
    for mode, stats in (
        ("schema-driven", summary.schema_driven),
        ("schema-less", summary.schema_less),
    ):
        rows.append(
            f"| {mode} | {stats.maximum} | {stats.minimum} | {stats.value_range} "
            f"| {stats.median} | {stats.average} | {stats.negative_cases} / {stats.total} |"
        )
    return rows


def _emit_markdown(reports, summary, out_dir):
    lines = ["# Size benchmark", "", "## Summary (reduction vs. minified JSON, %)", ""]
    lines.append("| Mode | Max | Min | Range | Median | Average | Negative cases |")
    lines.append("| --- | --- | --- | --- | --- | --- | --- |")
    lines.extend(_markdown_summary_rows(summary))
    lines += ["", "## Cases", ""]
    lines.append(
        "| Case | Taxonomy | JSON | gzip | Schema-driven | Schema-less "
        "| Driven red. % | Less red. % |"
    )
    lines.append("| --- | --- | --- | --- | --- | --- | --- | --- |")
    for report in reports:
        lines.append(
            f"| {report.name} | {report.taxonomy} | {report.json_size} "
            f"| {report.gzip_size} | {report.schema_driven_size} "
            f"| {report.schema_less_size} | {report.schema_driven_reduction} "
            f"| {report.schema_less_reduction} |"
        )
    path = Path(out_dir, "report.md")
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")
    return path


_SVG_BAR_WIDTH = 56
_SVG_BAR_GAP = 18
_SVG_HEIGHT = 220
_SVG_MARGIN = 34
_SVG_COLORS = ("#4878a8", "#b05050", "#50a070", "#c09048", "#8868a8", "#607880")


def _emit_case_svg(report, out_dir):
    bars = [
        ("json", report.json_size),
        ("gzip", report.gzip_size),
        ("schema-driven", report.schema_driven_size),
        ("schema-less", report.schema_less_size),
    ]
    bars += [(name, report.references[name]) for name in sorted(report.references)]
    scale_max = max(size for _, size in bars) or 1
    width = _SVG_MARGIN * 2 + len(bars) * (_SVG_BAR_WIDTH + _SVG_BAR_GAP)
    height = _SVG_HEIGHT + 2 * _SVG_MARGIN
    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}" font-family="sans-serif" font-size="11">',
        f'<text x="{width // 2}" y="{_SVG_MARGIN - 14}" text-anchor="middle" '
        f'font-size="13">{report.name} (bytes)</text>',
    ]
    for index, (label, size) in enumerate(bars):
        bar_height = round(_SVG_HEIGHT * size / scale_max)
        x = _SVG_MARGIN + index * (_SVG_BAR_WIDTH + _SVG_BAR_GAP)
        y = _SVG_MARGIN + _SVG_HEIGHT - bar_height
        color = _SVG_COLORS[index % len(_SVG_COLORS)]
        parts.append(
            f'<rect x="{x}" y="{y}" width="{_SVG_BAR_WIDTH}" height="{bar_height}" '
            f'fill="{color}"/>'
        )
        parts.append(
            f'<text x="{x + _SVG_BAR_WIDTH // 2}" y="{y - 4}" '
            f'text-anchor="middle">{size}</text>'
        )
        parts.append(
            f'<text x="{x + _SVG_BAR_WIDTH // 2}" y="{_SVG_MARGIN + _SVG_HEIGHT + 14}" '
            f'text-anchor="middle">{label}</text>'
        )
    parts.append("</svg>")
    path = Path(out_dir, f"{report.name}.svg")
    path.write_text("\n".join(parts) + "\n", encoding="utf-8")
    return path


def emit_report(reports, summary, out_dir, formats=REPORT_FORMATS):
    """Write the selected report files and return their paths.

    Formats: "csv" (one fixed-order table), "markdown" (summary plus
    per-case tables), "svg" (one grouped bar chart per case).
    """
    unknown = set(formats) - set(REPORT_FORMATS)
    if unknown:
        raise UsageError(f"unknown report formats: {sorted(unknown)}")
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    ordered = sorted(reports, key=lambda r: r.name)
    paths = []
    if "csv" in formats:
        paths.append(_emit_csv(ordered, out))
    if "markdown" in formats:
        paths.append(_emit_markdown(ordered, summarize(ordered) if summary is None else summary, out))
    if "svg" in formats:
        for report in ordered:
            paths.append(_emit_case_svg(report, out))
    return paths
