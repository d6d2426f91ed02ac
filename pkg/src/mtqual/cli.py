"""Command-line entry points.

Subcommands: ``score`` (one metric over candidate/reference files),
``matrix`` (full metric x document x system x reference report from a
manifest), ``correlate`` (metrics vs human ratings), ``serve`` (the
annotation HTTP service) and ``export`` (dump the ratings log as CSV).

Exit codes: 0 success, 1 usage error, 2 data error (missing or malformed
input).  Diagnostics go to stderr; results go to stdout or ``--out``.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .corpus import load_evaluation_set, read_segment_file
from .errors import MTQualError
from .human import (
    aggregate_human,
    build_correlation_report,
    read_ratings_csv,
    write_ratings_csv,
)
from .metrics.bleu import BleuConfig, bleu_score
from .metrics.gtm import gtm_score
from .metrics.meteor import EMPTY_LEXICON, MeteorConfig, SynonymLexicon, meteor_score
from .metrics.nist import build_info_weights, nist_score
from .metrics.ter import ter_corpus, ter_score
from .pipeline import (
    METRICS,
    render_report,
    run_matrix,
    sentence_series,
    system_scores,
)
from .service import RatingsStore, resolve_data_dir, serve_annotation

METRIC_LIST = ", ".join(METRICS)


class _Parser(argparse.ArgumentParser):
    """argparse exits 2 on usage errors; this tool reserves 2 for data errors."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _load_aligned(candidate: str, refs: list[str]):
    """Candidate segments plus per-segment reference lists from plain files."""
    cand_segments = read_segment_file(candidate)
    ref_versions = [read_segment_file(path) for path in refs]
    counts = {candidate: len(cand_segments)}
    counts.update({path: len(version) for path, version in zip(refs, ref_versions)})
    if len(set(counts.values())) > 1:
        detail = ", ".join(f"{p}: {n} lines" for p, n in sorted(counts.items()))
        raise MTQualError(f"aligned files disagree ({detail})")
    references = [
        [version[i] for version in ref_versions] for i in range(len(cand_segments))
    ]
    return cand_segments, references, ref_versions


METEOR_MODES = {"simple": "paper_simple", "weighted": "weighted_penalized"}


def _score_payload(args) -> dict | list:
    candidates, references, ref_versions = _load_aligned(args.candidate, args.ref)
    lexicon = (
        SynonymLexicon.from_file(args.synonyms) if args.synonyms else EMPTY_LEXICON
    )
    metric = args.metric
    level = args.level

    def wrap(score) -> dict:
        return {"metric": metric, "level": level, "value": score.value,
                "components": score.components()}

    if metric == "bleu":
        smoothing = args.smoothing or ("add-one" if level == "sentence" else "none")
        config = BleuConfig(
            max_order=args.max_order or 4,
            smoothing=smoothing.replace("-", "_"),
        )
        result = bleu_score(candidates, references, config, level=level)
        return [wrap(s) for s in result] if level == "sentence" else wrap(result)
    if metric == "nist":
        max_order = args.max_order or 5
        info = build_info_weights(
            [seg for version in ref_versions for seg in version], max_order=max_order
        )
        if args.info_out:
            rows = "".join(
                f"{ngram}\t{weight!r}\n" for ngram, _, weight in info.export_rows()
            )
            Path(args.info_out).write_text(rows, encoding="utf-8")
        if level == "sentence":
            payload = [
                wrap(nist_score([c], [r], info, max_order=max_order))
                for c, r in zip(candidates, references)
            ]
        else:
            payload = wrap(nist_score(candidates, references, info, max_order=max_order))
        if args.normalize == "self":
            self_candidates = [refs[0] for refs in references]
            denom = nist_score(
                self_candidates, references, info, max_order=max_order
            ).value
            for item in payload if isinstance(payload, list) else [payload]:
                item["components"]["self_score"] = denom
                item["normalized_value"] = (
                    item["value"] / denom if denom > 0 else 0.0
                )
        return payload
    if metric == "gtm":
        result = gtm_score(candidates, references, level=level, exponent=args.exponent)
        return [wrap(s) for s in result] if level == "sentence" else wrap(result)
    if metric == "meteor":
        config = MeteorConfig(
            stages=tuple(s.strip() for s in args.stages.split(",") if s.strip()),
            mode=METEOR_MODES[args.mode],
        )
        result = meteor_score(candidates, references, config, lexicon, level=level)
        return [wrap(s) for s in result] if level == "sentence" else wrap(result)
    block = args.max_shift_block if args.max_shift_block is not None else 10
    if level == "sentence":
        return [
            wrap(ter_score(c, r, max_shift_block=block))
            for c, r in zip(candidates, references)
        ]
    return wrap(ter_corpus(candidates, references, max_shift_block=block))


def _cmd_score(args, parser: _Parser) -> int:
    known = {"exact", "stem", "synonym"}
    stages = tuple(s.strip() for s in args.stages.split(",") if s.strip())
    unknown = [s for s in stages if s not in known]
    if unknown:
        parser.error(
            f"unknown stage(s): {', '.join(unknown)}; available stages: exact, stem, synonym"
        )
    payload = _score_payload(args)
    _emit(json.dumps(payload, indent=2, sort_keys=True) + "\n", args.out)
    return 0


def _parse_metrics(parser: _Parser, raw: str) -> tuple[str, ...]:
    metrics = tuple(m.strip() for m in raw.split(",") if m.strip())
    unknown = [m for m in metrics if m not in METRICS]
    if unknown:
        parser.error(
            f"unknown metric(s): {', '.join(unknown)}; available metrics: {METRIC_LIST}"
        )
    if not metrics:
        parser.error(f"no metrics given; available metrics: {METRIC_LIST}")
    return metrics


def _cmd_matrix(args, parser: _Parser) -> int:
    metrics = _parse_metrics(parser, args.metrics)
    eval_set = load_evaluation_set(args.manifest)
    matrix = run_matrix(
        eval_set,
        metrics,
        include_combined=args.include_combined,
        include_corpus=args.include_corpus,
    )
    fmt = args.format
    if not fmt:
        fmt = Path(args.out).suffix.lstrip(".").lower() if args.out else "json"
    if fmt not in ("csv", "json", "md", "markdown"):
        parser.error(f"unknown report format {fmt!r}; expected csv, json or md")
    failures = [cell for cell in matrix.ordered_cells() if cell.error]
    for cell in failures:
        print(
            f"warning: {cell.metric}/{cell.document}/{cell.system}/{cell.ref}: {cell.error}",
            file=sys.stderr,
        )
    _emit(render_report(matrix, fmt), args.out)
    return 0


def _cmd_correlate(args, parser: _Parser) -> int:
    metrics = _parse_metrics(parser, args.metrics)
    eval_set = load_evaluation_set(args.manifest)
    ratings = read_ratings_csv(args.ratings)
    if not ratings:
        raise MTQualError(f"{args.ratings}: no ratings found")
    per_system_metric = system_scores(eval_set, metrics)
    if args.granularity == "system":
        human = {
            score.system_id: score.normalized
            for score in aggregate_human(ratings, level="system")
        }
        report = build_correlation_report(per_system_metric, human, "system")
    else:
        series = sentence_series(eval_set, metrics, include_combined=True)
        metric_scores: dict[str, dict] = {m: {} for m in metrics}
        for doc in eval_set.documents:
            label = "All" if eval_set.reference_versions(doc) > 1 else "Ref1"
            for system in eval_set.system_ids:
                for metric in metrics:
                    values = series[(metric, doc, system, label)]
                    for index, value in enumerate(values):
                        metric_scores[metric][(system, doc, index)] = value
        human = {
            (score.system_id, score.document, score.segment_index): score.normalized
            for score in aggregate_human(ratings, level="segment")
        }
        human_system = {
            score.system_id: score.normalized
            for score in aggregate_human(ratings, level="system")
        }
        report = build_correlation_report(
            metric_scores,
            human,
            "segment",
            system_scores=per_system_metric,
            human_system_scores=human_system,
        )
    _emit(report.to_json(), args.out)
    return 0


def _cmd_serve(args) -> int:
    eval_set = load_evaluation_set(args.manifest)
    server = serve_annotation(
        eval_set,
        data_dir=args.data_dir,
        host=args.host,
        port=args.port,
        static_dir=args.static,
        quiet=not args.verbose,
    )
    host, port = server.server_address[:2]
    print(f"serving annotation API on http://{host}:{port}/", file=sys.stderr)
    print(f"ratings log: {server.service.store.path}", file=sys.stderr)
    try:
        server.serve_forever()
    except KeyboardInterrupt:
        print("shutting down", file=sys.stderr)
    finally:
        server.server_close()
    return 0


def _cmd_export(args) -> int:
    data_dir = resolve_data_dir(args.data_dir)
    store = RatingsStore(data_dir / "ratings.ndjson")
    _emit(write_ratings_csv(store.to_ratings()), args.out)
    return 0


def build_parser() -> _Parser:
    parser = _Parser(
        prog="mtqual",
        description=(
            "Machine translation evaluation: automatic metrics "
            f"({METRIC_LIST}), human judgments, and their correlation."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    score = sub.add_parser("score", help="score one candidate file with one metric")
    score.add_argument(
        "--metric", required=True, choices=METRICS,
        help=f"metric to compute (one of: {METRIC_LIST})",
    )
    score.add_argument("--candidate", required=True, help="candidate file, one segment per line")
    score.add_argument(
        "--ref", action="append", required=True,
        help="reference file; repeat for multiple reference versions",
    )
    score.add_argument("--level", choices=("corpus", "sentence"), default="corpus")
    score.add_argument(
        "--max-order", dest="max_order", type=int, default=None,
        help="n-gram order cap (default: 4 for bleu, 5 for nist)",
    )
    score.add_argument(
        "--smoothing", choices=("none", "add-one", "exp-decay"), default=None,
        help="BLEU smoothing (default: none at corpus level, add-one at sentence level)",
    )
    score.add_argument(
        "--exponent", type=float, default=1.0,
        help="GTM run-length exponent (1.0 rewards nothing beyond unigram runs)",
    )
    score.add_argument(
        "--stages", default="exact,stem,synonym",
        help="comma-separated METEOR matching stages, applied in order",
    )
    score.add_argument(
        "--mode", choices=("simple", "weighted"), default="simple",
        help="METEOR formula: simple 2PR/(P+R), or weighted with the chunk penalty",
    )
    score.add_argument("--synonyms", help="synonym groups file (one group per line)")
    score.add_argument(
        "--max-shift-block", dest="max_shift_block", type=int, default=None,
        help="TER: longest block a single shift may move (default 10)",
    )
    score.add_argument(
        "--normalize", choices=("self",), default=None,
        help="NIST: also report the score divided by the reference-vs-itself score",
    )
    score.add_argument(
        "--info-out", dest="info_out", default=None,
        help="NIST: write the info-weight table as TSV (ngram<TAB>weight)",
    )
    score.add_argument("--out", help="write the report here instead of stdout")

    matrix = sub.add_parser("matrix", help="score a manifest into a report matrix")
    matrix.add_argument("--manifest", required=True, help="JSON manifest path")
    matrix.add_argument(
        "--metrics", default=",".join(METRICS),
        help=f"comma-separated metrics (default: {','.join(METRICS)})",
    )
    matrix.add_argument(
        "--format", choices=("csv", "json", "md", "markdown"), default=None,
        help="report format (default: from --out extension, else json)",
    )
    matrix.add_argument(
        "--include-combined", action="store_true",
        help="add an All column scoring against every reference at once",
    )
    matrix.add_argument(
        "--include-corpus", action="store_true",
        help="add a pooled ALL document row",
    )
    matrix.add_argument("--out", help="write the report here instead of stdout")

    correlate = sub.add_parser(
        "correlate", help="correlate metric scores with human ratings"
    )
    correlate.add_argument("--manifest", required=True)
    correlate.add_argument("--ratings", required=True, help="human ratings CSV")
    correlate.add_argument(
        "--granularity", choices=("system", "segment"), default="system"
    )
    correlate.add_argument(
        "--metrics", default=",".join(METRICS),
        help=f"comma-separated metrics (default: {','.join(METRICS)})",
    )
    correlate.add_argument("--out", help="write the report here instead of stdout")

    serve = sub.add_parser("serve", help="run the annotation HTTP service")
    serve.add_argument("--manifest", required=True)
    serve.add_argument("--host", default="127.0.0.1")
    serve.add_argument("--port", type=int, default=8765)
    serve.add_argument(
        "--data-dir", default=None,
        help="ratings storage directory (default: $MTQUAL_DATA_DIR or ./mtqual_data)",
    )
    serve.add_argument("--static", default=None, help="directory of UI files to serve")
    serve.add_argument("--verbose", action="store_true", help="log requests to stderr")

    export = sub.add_parser("export", help="dump the ratings log as CSV")
    export.add_argument(
        "--data-dir", default=None,
        help="ratings storage directory (default: $MTQUAL_DATA_DIR or ./mtqual_data)",
    )
    export.add_argument("--out", help="write the CSV here instead of stdout")

    return parser


def main(argv=None) -> int:
    """Dispatch one command line; returns the process exit code."""
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "score":
            return _cmd_score(args, parser)
        if args.command == "matrix":
            return _cmd_matrix(args, parser)
        if args.command == "correlate":
            return _cmd_correlate(args, parser)
        if args.command == "serve":
            return _cmd_serve(args)
        return _cmd_export(args)
    except FileNotFoundError as exc:
        name = exc.filename if exc.filename else exc
        print(f"mtqual: error: file not found: {name}", file=sys.stderr)
        return 2
    except (MTQualError, json.JSONDecodeError, KeyError, ValueError) as exc:
        print(f"mtqual: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
