"""Command-line interface: cogscope analyze | weyuker | corpus.

Exit codes: 0 success (and, for weyuker, conformance as documented);
1 analysis failures or conformance mismatch; 2 usage errors.
The environment variable COGSCOPE_SEED supplies the default seed.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from .analysis import METRIC_IDS, analyze_source
from .errors import MiniLangError
from .report import CSV_COLUMNS, render_csv, render_json, render_text, report_document
from .weyuker import EXPECTED_ROWS, PROPERTY_IDS, WeyukerHarness

_METRIC_CHOICES = ("all", "escim", "cfs", "cicm", "mccm", "cpcm", "scim")


def _env_seed(default: int = 1) -> int:
    raw = os.environ.get("COGSCOPE_SEED")
    if raw is None:
        return default
    try:
        return int(raw)
    except ValueError:
        return default


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cogscope",
        description="Scope-aware cognitive information complexity metrics for MiniLang.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    analyze = sub.add_parser("analyze", help="analyze MiniLang files")
    analyze.add_argument("paths", nargs="+", help="MiniLang source files (.ml1)")
    analyze.add_argument("--format", choices=("text", "json"), default="text")
    analyze.add_argument("--metric", choices=_METRIC_CHOICES, default="all")
    analyze.add_argument("--granules", action="store_true", help="include the per-granule table")

    weyuker = sub.add_parser("weyuker", help="run the Weyuker conformance suite")
    weyuker.add_argument("--seed", type=int, default=None)
    weyuker.add_argument("--trials", type=int, default=1000)
    weyuker.add_argument("--metrics", default="escim,cfs,cicm,mccm,cpcm,scim_icn,loc")
    weyuker.add_argument("--format", choices=("text", "json"), default="text")
    weyuker.add_argument("--witness-dir", default=None, help="write witness programs as .ml1 files")

    corpus = sub.add_parser("corpus", help="analyze a directory of .ml1 files")
    corpus.add_argument("directory")
    corpus.add_argument("--csv", action="store_true", help="emit comma-separated rows")
    return parser


# ============================================================
# ANALYZE
# ============================================================


def cmd_analyze(args) -> int:
    documents = []
    failed = False
    for path in args.paths:
        try:
            source = Path(path).read_text()
        except OSError as exc:
            print(f"{path}: cannot read: {exc}", file=sys.stderr)
            failed = True
            continue
        try:
            analysis = analyze_source(source, path=path)
        except MiniLangError as exc:
            print(exc.render(path), file=sys.stderr)
            failed = True
            continue
        if args.format == "json":
            documents.append(report_document(analysis, args.metric))
        else:
            sys.stdout.write(render_text(analysis, args.metric, granules=args.granules))
    if args.format == "json" and documents:
        payload = documents[0] if len(documents) == 1 else documents
        sys.stdout.write(render_json(payload))
    return 1 if failed else 0


# ============================================================
# WEYUKER
# ============================================================


def _status_mark(status: str) -> str:
    return "/" if status == "satisfied" else "x"


def cmd_weyuker(args) -> int:
    seed = args.seed if args.seed is not None else _env_seed()
    metrics = [m.strip() for m in args.metrics.split(",") if m.strip()]
    for metric in metrics:
        if metric not in METRIC_IDS:
            print(f"unknown metric {metric!r}; choose from {', '.join(METRIC_IDS)}", file=sys.stderr)
            return 2
    harness = WeyukerHarness(seed=seed, trials=args.trials)
    table = harness.run_table(metrics)

    if args.witness_dir:
        out_dir = Path(args.witness_dir)
        out_dir.mkdir(parents=True, exist_ok=True)
        for metric, row in table.results.items():
            for prop, result in row.items():
                if not result.witness:
                    continue
                for role, value in result.witness.items():
                    if isinstance(value, str) and value.startswith(("void", "int")):
                        safe_role = role.replace(";", "_").replace(" ", "")
                        name = f"p{prop}_{metric}_{safe_role}.ml1"
                        (out_dir / name).write_text(value)

    if args.format == "json":
        payload = {
            "seed": table.seed,
            "trials": table.trials,
            "properties": list(PROPERTY_IDS),
            "results": {
                metric: {
                    prop: {
                        "status": result.status,
                        "trials": result.trials,
                        "note": result.note,
                        "witness": result.witness,
                    }
                    for prop, result in row.items()
                }
                for metric, row in table.results.items()
            },
            "matches_expected": table.matches,
        }
        sys.stdout.write(json.dumps(payload, sort_keys=True, indent=2) + "\n")
    else:
        width = max(len(m) for m in metrics)
        header = "property".ljust(10) + "  " + "  ".join(m.rjust(width) for m in metrics)
        lines = [f"seed={table.seed} trials={table.trials}", header]
        for prop in PROPERTY_IDS:
            cells = [
                _status_mark(table.results[m][prop].status).rjust(width) for m in metrics
            ]
            lines.append(prop.ljust(10) + "  " + "  ".join(cells))
        for metric in metrics:
            verdict = table.matches[metric]
            if verdict is None:
                lines.append(f"{metric}: no documented expectation (reported only)")
            else:
                lines.append(f"{metric}: {'matches' if verdict else 'DIFFERS FROM'} expected conformance")
        sys.stdout.write("\n".join(lines) + "\n")

    gated = [m for m in metrics if m in EXPECTED_ROWS]
    return 0 if all(table.matches[m] for m in gated) else 1


# ============================================================
# CORPUS
# ============================================================


def cmd_corpus(args) -> int:
    directory = Path(args.directory)
    if not directory.is_dir():
        print(f"{args.directory}: not a directory", file=sys.stderr)
        return 2
    rows = []
    failures = []
    for path in sorted(directory.glob("*.ml1")):
        try:
            analysis = analyze_source(path.read_text(), path=str(path))
        except (OSError, MiniLangError) as exc:
            message = exc.render(str(path)) if isinstance(exc, MiniLangError) else str(exc)
            failures.append(message)
            continue
        rows.append((str(path), analysis))
    if args.csv:
        sys.stdout.write(render_csv(rows))
    else:
        header = "  ".join(c.rjust(12) for c in CSV_COLUMNS)
        lines = [header]
        ranked = sorted(rows, key=lambda r: (-r[1].program.efficiency_e, r[0]))
        for path, analysis in rows:
            program = analysis.program
            record = (
                path,
                program.loc,
                program.wc,
                program.cfs,
                f"{program.cicm:.6f}",
                program.mccm,
                program.cpcm,
                program.scim_icn,
                program.escim,
                f"{program.efficiency_e:.6f}",
            )
            lines.append("  ".join(str(v).rjust(12) for v in record))
        lines.append("")
        lines.append("ranked by efficiency E:")
        for rank, (path, analysis) in enumerate(ranked, start=1):
            lines.append(f"  {rank}. {path}  E={analysis.program.efficiency_e:.6f}")
        sys.stdout.write("\n".join(lines) + "\n")
    for message in failures:
        print(message, file=sys.stderr)
    return 1 if failures else 0


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "analyze":
        return cmd_analyze(args)
    if args.command == "weyuker":
        return cmd_weyuker(args)
    if args.command == "corpus":
        return cmd_corpus(args)
    parser.error("unknown command")
    return 2


if __name__ == "__main__":
    sys.exit(main())
