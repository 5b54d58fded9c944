"""Command-line entrypoint orchestrating the analysis pipeline."""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import __version__
from .clones import edge_to_json, find_clones
from .corpus import LABEL_SLOTS, corpus_to_json, load_corpus
from .errors import CodeLineageError
from .genealogy import (
    aggregate_to_specimens,
    build_genealogy,
    export_view_json,
    lineage_of,
    lineage_view_to_json,
)
from .metrics import specimen_metrics
from .pipeline import (
    PipelineConfig,
    artifact_digests,
    metrics_csv,
    parse_corpus_functions,
    run_pipeline,
    _run_meta,
)
from .scan import (
    IdentifierKind,
    cwe_enrichment,
    ingest_cwe_findings,
    load_identifier_list,
    parse_periods,
    scan_corpus,
    top_k_by_period,
)
from .server import serve
from .tags import function_tags


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="codelineage",
        description="Source-level software genealogy toolkit",
    )
    parser.add_argument("--version", action="version", version=f"codelineage {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p):
        p.add_argument("--config", type=Path, default=None, help="TOML config file")
        p.add_argument("--corpus", type=Path, default=None, help="corpus.json manifest")
        p.add_argument("--out", type=Path, default=None, help="output directory")
        p.add_argument("--threads", type=int, default=None)

    p = sub.add_parser("ingest", help="load and validate a corpus manifest")
    add_common(p)

    p = sub.add_parser("metrics", help="per-specimen metrics CSV + yearly trend JSON")
    add_common(p)

    p = sub.add_parser("clones", help="function-level reuse edges as JSON lines")
    add_common(p)
    p.add_argument("--threshold", type=float, default=None)
    p.add_argument("--min-tokens", type=int, default=None)

    p = sub.add_parser("tags", help="normalized function tags as JSON")
    add_common(p)

    p = sub.add_parser("scan", help="identifier scanning with per-period top-k")
    add_common(p)
    p.add_argument("--kind", choices=["syscall", "api"], required=True)
    p.add_argument("--list", dest="list_path", type=Path, required=True)
    p.add_argument("--periods", type=str, default=None)
    p.add_argument("--top", type=int, default=3)

    p = sub.add_parser("enrich", help="CWE inheritance enrichment statistics")
    add_common(p)
    p.add_argument("--derived", type=Path, required=True, help="file of specimen ids")
    p.add_argument("--cwe", type=int, required=True)
    p.add_argument("--report", type=Path, required=True, help="analyzer XML/CSV export")

    p = sub.add_parser("genealogy", help="build and export genealogy views")
    add_common(p)
    p.add_argument("--label", choices=list(LABEL_SLOTS), default=None)
    p.add_argument("--max-depth", type=int, default=10)
    p.add_argument("--focus", type=str, default=None, help="print a lineage view")

    p = sub.add_parser("run", help="full pipeline: all artifacts")
    add_common(p)

    p = sub.add_parser("serve", help="serve exported views and UI over HTTP")
    p.add_argument("--export-dir", type=Path, required=True)
    p.add_argument("--port", type=int, default=8080)
    p.add_argument("--ui-dir", type=Path, default=None)
    return parser


def _config_from_args(args) -> PipelineConfig:
    overrides = {
        "corpus_path": getattr(args, "corpus", None),
        "out_dir": getattr(args, "out", None),
        "threads": getattr(args, "threads", None),
        "clone_threshold": getattr(args, "threshold", None),
        "clone_min_tokens": getattr(args, "min_tokens", None),
        "periods": getattr(args, "periods", None),
    }
    overrides = {k: v for k, v in overrides.items() if v is not None}
    if getattr(args, "config", None):
        return PipelineConfig.from_toml(args.config, overrides)
    return PipelineConfig._from_dict(overrides)


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return _dispatch(args)
    except CodeLineageError as exc:
        print(f"error [{args.command}]: {exc}", file=sys.stderr)
        return exc.exit_code


def _dispatch(args) -> int:
    cmd = args.command

    if cmd == "serve":
        print(f"serving {args.export_dir} on http://127.0.0.1:{args.port}")
        serve(args.export_dir, args.port, args.ui_dir)
        return 0

    config = _config_from_args(args)

    if cmd == "ingest":
        corpus = load_corpus(config.corpus_path)
        print(json.dumps(corpus_to_json(corpus), indent=2, sort_keys=True))
        return 0

    if cmd == "metrics":
        corpus = load_corpus(config.corpus_path)
        rows = [
            specimen_metrics(s, config.cocomo_params(), config.fp_ratios)
            for s in corpus
        ]
        sys.stdout.write(metrics_csv(rows, _run_meta(config)))
        return 0

    if cmd == "clones":
        corpus = load_corpus(config.corpus_path)
        units = parse_corpus_functions(corpus, config.threads)
        edges = find_clones(units, config.clone_config(), corpus.timestamps())
        for e in edges:
            print(json.dumps(edge_to_json(e), sort_keys=True))
        return 0

    if cmd == "tags":
        corpus = load_corpus(config.corpus_path)
        units = parse_corpus_functions(corpus, config.threads)
        lexicon = config.lexicon()
        out = [
            {
                "specimen": u.specimen_id,
                "file": u.file,
                "function": u.name,
                "tags": list(function_tags(u, lexicon)),
            }
            for u in units
        ]
        print(json.dumps(out, indent=2, sort_keys=True))
        return 0

    if cmd == "scan":
        corpus = load_corpus(config.corpus_path)
        idlist = load_identifier_list(args.list_path, IdentifierKind(args.kind))
        hits = scan_corpus(corpus, idlist)
        bounds = parse_periods(config.periods)
        for ranking in top_k_by_period(corpus, hits, args.top, bounds):
            print(ranking.format_row())
        return 0

    if cmd == "enrich":
        corpus = load_corpus(config.corpus_path)
        derived = [
            line.strip()
            for line in args.derived.read_text(encoding="utf-8").splitlines()
            if line.strip() and not line.startswith("#")
        ]
        findings, unattributed = ingest_cwe_findings(args.report, corpus)
        result = cwe_enrichment(derived, corpus, findings, args.cwe)
        print(
            json.dumps(
                {
                    "cwe": result.cwe_id,
                    "derived_rate": result.derived_rate,
                    "overall_rate": result.overall_rate,
                    "derived": f"{result.derived_hits}/{result.derived_total}",
                    "overall": f"{result.overall_hits}/{result.overall_total}",
                    "p_value": result.p_value,
                    "unattributed_findings": len(unattributed),
                },
                indent=2,
                sort_keys=True,
            )
        )
        return 0

    if cmd == "genealogy":
        corpus = load_corpus(config.corpus_path)
        units = parse_corpus_functions(corpus, config.threads)
        edges = find_clones(units, config.clone_config(), corpus.timestamps())
        lexicon = config.lexicon()
        tags_by_fn = {
            (u.specimen_id, u.file, u.name): list(function_tags(u, lexicon))
            for u in units
        }
        spec_edges = aggregate_to_specimens(edges, corpus, tags_by_fn)
        genealogy = build_genealogy(corpus, spec_edges)
        slots = [args.label] if args.label else list(LABEL_SLOTS)
        written = export_view_json(genealogy, config.out_dir, slots)
        for p in written:
            print(p)
        if args.focus:
            view = lineage_of(genealogy, args.focus, args.max_depth)
            print(json.dumps(lineage_view_to_json(view), indent=2, sort_keys=True))
        return 0

    if cmd == "run":
        artifacts = run_pipeline(config)
        digests = artifact_digests(artifacts)
        for name, digest in digests.items():
            print(f"{digest}  {name}")
        return 0

    raise AssertionError(f"unhandled command {cmd!r}")


if __name__ == "__main__":
    sys.exit(main())
