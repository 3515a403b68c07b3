"""Run the size benchmark over the bundled corpus and write reports.

Every case is round-tripped in both modes before its sizes count; a
lossy encoding would abort the run rather than flatter the numbers.

Run as: python3 demos/05_benchmark.py
"""

import tempfile
from pathlib import Path

from binjson.bench import emit_report, run_corpus, summarize

corpus_dir = Path(__file__).resolve().parent.parent / "corpus"
reports = run_corpus(corpus_dir)

print(f"{'case':24} {'json':>6} {'gzip':>6} {'driven':>7} {'less':>6} {'driven%':>8} {'less%':>7}")
for r in reports:
    print(
        f"{r.name:24} {r.json_size:>6} {r.gzip_size:>6} {r.schema_driven_size:>7} "
        f"{r.schema_less_size:>6} {r.schema_driven_reduction:>8} {r.schema_less_reduction:>7}"
    )

summary = summarize(reports)
print()
for mode, stats in [("schema-driven", summary.schema_driven), ("schema-less", summary.schema_less)]:
    print(
        f"{mode:14} median {stats.median:>5}%  average {stats.average:>5}%  "
        f"range {stats.minimum}..{stats.maximum}  negatives {stats.negative_cases}/{stats.total}"
    )

out_dir = Path(tempfile.mkdtemp(prefix="binjson-report-"))
paths = emit_report(reports, summary, out_dir)
print(f"\n{len(paths)} report files under {out_dir}")
for path in paths[:4]:
    print("  ", path.name)
print("   ...")
