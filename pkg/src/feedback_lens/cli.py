"""Command-line interface.

Subcommands cover the full pipeline: classify utterances with cue
lexicons, aggregate label proportions, compare corpora lexically,
map and decide dialogue-act groups, evaluate against gold tags,
diff two proportion tables, and render charts.

Exit codes: 0 on success, 1 for validation errors (bad arguments or
malformed input files), 2 for I/O errors.  Diagnostics go to stderr;
data goes to the requested output files or stdout.
"""

from __future__ import annotations

import argparse
import csv
import json
import logging
import sys

from . import charts, classify, corpus_io, dialogue_acts, lexicon, metrics, stats

log = logging.getLogger("feedback_lens")

EXIT_OK = 0
EXIT_VALIDATION = 1
EXIT_IO = 2


class _Parser(argparse.ArgumentParser):
    # Usage problems are validation errors, not I/O errors.
    def error(self, message: str):  # noqa: D102 (argparse override)
        self.print_usage(sys.stderr)
        raise corpus_io.FormatError(message)


def _write_json(obj, path: str | None) -> None:
    text = json.dumps(obj, ensure_ascii=False, indent=2) + "\n"
    if path is None:
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)


def _load_config(path: str | None) -> dict:
    if path is None:
        return {}
    with open(path, encoding="utf-8") as fh:
        try:
            obj = json.load(fh)
        except json.JSONDecodeError as exc:
            raise corpus_io.FormatError(f"invalid JSON: {exc}", path=path) from exc
    if not isinstance(obj, dict):
        raise corpus_io.FormatError("config must be a JSON object", path=path)
    unknown = set(obj) - {"thresholds", "filter_policy"}
    if unknown:
        raise corpus_io.FormatError(f"unknown config keys: {', '.join(sorted(unknown))}", path=path)
    return obj


def _filter_policy_from(args, config: dict) -> corpus_io.FilterPolicy | None:
    if getattr(args, "filter_policy", None):
        return corpus_io.FilterPolicy.from_json(args.filter_policy)
    if "filter_policy" in config:
        obj = config["filter_policy"]
        kwargs = {}
        if "min_year" in obj:
            kwargs["min_year"] = int(obj["min_year"])
        if "min_utterances" in obj:
            kwargs["min_utterances"] = int(obj["min_utterances"])
        if "excluded_genres" in obj:
            kwargs["excluded_genres"] = tuple(str(g).lower() for g in obj["excluded_genres"])
        if "drop_single_character_utterances" in obj:
            kwargs["drop_single_character_utterances"] = bool(obj["drop_single_character_utterances"])
        return corpus_io.FilterPolicy(**kwargs)
    if getattr(args, "apply_filters", False):
        return corpus_io.FilterPolicy()
    return None


def _load_corpus(args, *, corpus_attr: str = "corpus", manifest_attr: str = "manifest") -> corpus_io.Corpus:
    corpus = corpus_io.parse_corpus(getattr(args, corpus_attr), getattr(args, manifest_attr))
    if getattr(args, "strip_markup", False):
        corpus, warnings = corpus_io.strip_corpus_markup(corpus)
        if warnings.unmatched_brackets:
            log.warning("left %d unmatched bracket(s) verbatim", warnings.unmatched_brackets)
    policy = _filter_policy_from(args, _load_config(getattr(args, "config", None)))
    if policy is not None:
        corpus, report = corpus_io.filter_corpus(corpus, policy)
        if report.rejected_reason:
            log.warning("corpus rejected: %s", report.rejected_reason)
        elif report.removed_single_character:
            log.info("dropped %d single-character utterance(s)", report.removed_single_character)
    return corpus


def _load_lexicon(args, language: str) -> lexicon.CueLexicon:
    if getattr(args, "lexicon", None):
        lex = lexicon.load_lexicon(args.lexicon)
    else:
        lex = lexicon.load_language(language)
    if lex.cross_class_duplicates:
        log.info(
            "lexicon has %d cue(s) in more than one class: %s",
            len(lex.cross_class_duplicates),
            ", ".join(" ".join(cue) for cue, _ in lex.cross_class_duplicates),
        )
    return lex


def _aligned_labels(corpus: corpus_io.Corpus, path: str) -> list[classify.LabelRecord]:
    records = classify.read_labels(path)
    if len(records) != len(corpus.utterances):
        raise corpus_io.FormatError(
            f"label file has {len(records)} rows for {len(corpus.utterances)} utterances", path=path
        )
    for utt, rec in zip(corpus.utterances, records):
        if utt.id != rec.id:
            raise corpus_io.FormatError(
                f"label id {rec.id!r} does not match utterance id {utt.id!r}", path=path
            )
    return records


# --- subcommand handlers --------------------------------------------------


def _cmd_classify(args) -> int:
    corpus = _load_corpus(args)
    lex = _load_lexicon(args, corpus.manifest.language)
    options = classify.ClassifyOptions(
        include_initial=not args.no_initial,
        short_initial_fallback=not args.no_short_fallback,
        extra_classes=tuple(args.extras.split(",")) if args.extras else (),
    )
    result = classify.classify_corpus(corpus, lex, options)
    classify.write_labels(result, args.out)
    summary = ", ".join(f"{label}={result.counts.get(label, 0)}" for label in classify.CORE_LABELS)
    log.info("classified %d utterance(s): %s", len(result.records), summary)
    return EXIT_OK


def _cmd_stats_proportions(args) -> int:
    records = classify.read_labels(args.labels)
    table = classify.class_proportions(records, denominator=args.denominator)
    _write_json({
        "kind": "proportions",
        "denominator": table.denominator,
        "total": table.total,
        "counts": table.counts,
        "proportions": table.proportions,
    }, args.out)
    return EXIT_OK


_TERM_CSV_COLUMNS = (
    "term", "count_a", "count_b", "precision_a", "frequency_a", "fscore_a",
    "precision_b", "frequency_b", "fscore_b",
)


def _cmd_stats_terms(args) -> int:
    a = corpus_io.parse_corpus(args.corpus_a, args.manifest_a)
    b = corpus_io.parse_corpus(args.corpus_b, args.manifest_b)
    comparison = stats.compare_corpora_terms(a, b, n_max=args.n_max, top_k=args.top_k, scope=args.scope)
    with open(args.out, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(_TERM_CSV_COLUMNS)
        for t in comparison.table:
            writer.writerow([
                " ".join(t.term), t.count_a, t.count_b,
                t.precision_a, t.frequency_a, t.fscore_a,
                t.precision_b, t.frequency_b, t.fscore_b,
            ])
    if args.json:
        _write_json({
            "kind": "terms",
            "total_tokens_a": comparison.total_tokens_a,
            "total_tokens_b": comparison.total_tokens_b,
            "top_a": [" ".join(t.term) for t in comparison.top_a],
            "top_b": [" ".join(t.term) for t in comparison.top_b],
            "stats": [{
                "term": " ".join(t.term),
                "count_a": t.count_a, "count_b": t.count_b,
                "precision_a": t.precision_a, "frequency_a": t.frequency_a, "fscore_a": t.fscore_a,
                "precision_b": t.precision_b, "frequency_b": t.frequency_b, "fscore_b": t.fscore_b,
            } for t in comparison.table],
        }, args.json)
    log.info("compared %d term(s)", len(comparison.table))
    return EXIT_OK


def _cmd_stats_lengths(args) -> int:
    corpus = _load_corpus(args)
    records = _aligned_labels(corpus, args.labels)
    hist = stats.length_distribution(corpus, records, max_length=args.max_length)
    _write_json({
        "kind": "lengths",
        "max_length": hist.max_length,
        "empty_count": hist.empty_count,
        "total": hist.total,
        "bins": {str(n): {"feedback": fb, "other": ot} for n, (fb, ot) in hist.bins.items()},
    }, args.out)
    return EXIT_OK


def _cmd_stats_top(args) -> int:
    corpus = _load_corpus(args)
    records = _aligned_labels(corpus, args.labels)
    items = stats.top_feedback_items(corpus, records, k=args.k)
    _write_json({
        "kind": "top",
        "items": [{"term": " ".join(i.term), "count": i.count, "label": i.label} for i in items],
    }, args.out)
    return EXIT_OK


def _cmd_da_map(args) -> int:
    corpus = corpus_io.parse_corpus(args.corpus, args.manifest)
    mapping = dialogue_acts.load_mapping(args.mapping)
    skipped = 0
    with open(args.out, "w", encoding="utf-8", newline="\n") as fh:
        for utt in corpus.utterances:
            if utt.da_tag is None:
                skipped += 1
                continue
            group = dialogue_acts.map_swbd_tag(utt.da_tag, mapping)
            row = {"id": utt.id, "da_tag": utt.da_tag, "group": group.value}
            if args.binary:
                row["binary"] = dialogue_acts.to_binary_group(utt.da_tag, mapping).value
            fh.write(json.dumps(row, ensure_ascii=False, sort_keys=True, separators=(",", ":")))
            fh.write("\n")
    if skipped:
        log.info("skipped %d utterance(s) without a dialogue-act tag", skipped)
    return EXIT_OK


def _cmd_da_decide(args) -> int:
    config = _load_config(args.config)
    if args.thresholds:
        thresholds = dialogue_acts.ThresholdConfig.from_json(args.thresholds)
    elif "thresholds" in config:
        thresholds = dialogue_acts.ThresholdConfig(**{k: float(v) for k, v in config["thresholds"].items()})
    else:
        thresholds = dialogue_acts.ThresholdConfig()
    rows = dialogue_acts.read_probability_file(args.probs)
    decided: list[dialogue_acts.DAGroup] = []
    with open(args.out, "w", encoding="utf-8", newline="\n") as fh:
        for uid, vec in rows:
            group = dialogue_acts.decide_label(vec, thresholds)
            decided.append(group)
            fh.write(json.dumps({"id": uid, "group": group.value},
                                ensure_ascii=False, sort_keys=True, separators=(",", ":")))
            fh.write("\n")
    if args.summary:
        table = dialogue_acts.group_proportions(decided)
        _write_json({
            "kind": "da_proportions",
            "total": table.total,
            "counts": {g.value: table.counts[g] for g in dialogue_acts.GROUP_ORDER},
            "percentages": {g.value: table.percentages[g] for g in dialogue_acts.GROUP_ORDER},
        }, args.summary)
    log.info("decided %d label(s)", len(decided))
    return EXIT_OK


def _cmd_eval(args) -> int:
    corpus = corpus_io.parse_corpus(args.corpus, args.manifest)
    lex = _load_lexicon(args, corpus.manifest.language)
    mapping = dialogue_acts.load_mapping(args.mapping)
    evaluation = metrics.evaluate_binary_cues(corpus, lex, mapping)
    if args.out:
        _write_json({
            **metrics.metrics_to_dict(evaluation.report),
            "evaluated": evaluation.evaluated,
            "skipped_untagged": evaluation.skipped_untagged,
        }, args.out)
    sys.stdout.write(metrics.format_metrics_table(evaluation.report, class_header="Utterance type") + "\n")
    if evaluation.skipped_untagged:
        log.info("skipped %d utterance(s) without a dialogue-act tag", evaluation.skipped_untagged)
    return EXIT_OK


def _read_percentages(path: str) -> dict[str, float]:
    with open(path, encoding="utf-8") as fh:
        try:
            obj = json.load(fh)
        except json.JSONDecodeError as exc:
            raise corpus_io.FormatError(f"invalid JSON: {exc}", path=path) from exc
    if not isinstance(obj, dict):
        raise corpus_io.FormatError("expected a JSON object", path=path)
    kind = obj.get("kind")
    if kind == "proportions":
        return {k: 100.0 * v for k, v in obj["proportions"].items()}
    if kind == "da_proportions":
        return dict(obj["percentages"])
    values = {k: v for k, v in obj.items() if isinstance(v, (int, float)) and not isinstance(v, bool)}
    if not values:
        raise corpus_io.FormatError("no numeric per-class values found", path=path)
    return values


def _cmd_compare(args) -> int:
    a = _read_percentages(args.a)
    b = _read_percentages(args.b)
    labels = [k for k in a if k in b] + sorted(set(b) - set(a)) + sorted(set(a) - set(b))
    rows = []
    for label in labels:
        va = a.get(label)
        vb = b.get(label)
        delta = None if va is None or vb is None else vb - va
        rows.append((label, va, vb, delta))
    with open(args.out, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["label", "a_pct", "b_pct", "delta_pp"])
        for label, va, vb, delta in rows:
            writer.writerow([
                label,
                "" if va is None else f"{va:.2f}",
                "" if vb is None else f"{vb:.2f}",
                "" if delta is None else f"{delta:.2f}",
            ])
    width = max(len(label) for label, *_ in rows)
    for label, va, vb, delta in rows:
        if delta is None:
            continue
        sys.stdout.write(f"{label:<{width}}  a={va:6.2f}  b={vb:6.2f}  delta={delta:+7.2f}pp\n")
    return EXIT_OK


def _cmd_chart(args) -> int:
    path = args.infile
    if path.endswith(".csv"):
        with open(path, encoding="utf-8", newline="") as fh:
            reader = csv.DictReader(fh)
            if reader.fieldnames is None or "term" not in reader.fieldnames:
                raise corpus_io.FormatError("CSV input must have term-comparison columns", path=path)
            rows = [stats.TermStats(
                term=tuple(row["term"].split(" ")),
                count_a=int(row["count_a"]), count_b=int(row["count_b"]),
                precision_a=float(row["precision_a"]), precision_b=float(row["precision_b"]),
                frequency_a=float(row["frequency_a"]), frequency_b=float(row["frequency_b"]),
                fscore_a=float(row["fscore_a"]), fscore_b=float(row["fscore_b"]),
            ) for row in reader]
        svg = charts.render_term_scatter(rows, title=args.title or "Term comparison")
        charts.write_svg(svg, args.out)
        return EXIT_OK

    with open(path, encoding="utf-8") as fh:
        try:
            obj = json.load(fh)
        except json.JSONDecodeError as exc:
            raise corpus_io.FormatError(f"invalid JSON: {exc}", path=path) from exc
    kind = obj.get("kind") if isinstance(obj, dict) else None
    if kind == "proportions":
        items = [(k, 100.0 * v) for k, v in obj["proportions"].items()]
        svg = charts.render_bar_chart(items, title=args.title or "Label proportions")
    elif kind == "da_proportions":
        items = list(obj["percentages"].items())
        svg = charts.render_bar_chart(items, title=args.title or "Dialogue act groups")
    elif kind == "lengths":
        bins = {int(n): (v["feedback"], v["other"]) for n, v in obj["bins"].items()}
        hist = stats.LengthHistogram(bins=dict(sorted(bins.items())), max_length=int(obj["max_length"]),
                                     empty_count=int(obj["empty_count"]), total=int(obj["total"]))
        svg = charts.render_length_histogram(hist, title=args.title or "Utterance lengths")
    elif kind == "terms":
        rows = [stats.TermStats(
            term=tuple(r["term"].split(" ")),
            count_a=r["count_a"], count_b=r["count_b"],
            precision_a=r["precision_a"], precision_b=r["precision_b"],
            frequency_a=r["frequency_a"], frequency_b=r["frequency_b"],
            fscore_a=r["fscore_a"], fscore_b=r["fscore_b"],
        ) for r in obj["stats"]]
        svg = charts.render_term_scatter(rows, title=args.title or "Term comparison")
    elif kind == "top":
        items = [(i["term"], float(i["count"])) for i in obj["items"]]
        svg = charts.render_bar_chart(items, title=args.title or "Top feedback items", y_label="count")
    else:
        raise corpus_io.FormatError(f"cannot infer chart type from {kind!r}", path=path)
    charts.write_svg(svg, args.out)
    return EXIT_OK


# --- parser wiring --------------------------------------------------------


def _add_corpus_args(p: _Parser, *, with_filters: bool = True) -> None:
    p.add_argument("--corpus", required=True, help="corpus JSONL file")
    p.add_argument("--manifest", required=True, help="corpus manifest JSON file")
    if with_filters:
        p.add_argument("--strip-markup", action="store_true", help="strip transcription markup first")
        p.add_argument("--apply-filters", action="store_true", help="apply the default filter policy")
        p.add_argument("--filter-policy", help="JSON file overriding the filter policy")
        p.add_argument("--config", help="JSON config supplying thresholds and/or filter policy")


def _add_lexicon_args(p: _Parser) -> None:
    group = p.add_mutually_exclusive_group()
    group.add_argument("--lexicon", help="lexicon JSON file")
    group.add_argument("--language", help="language code resolved against the lexicon directory "
                                          f"(${lexicon.ENV_LEXICON_DIR} or the bundled data)")


def build_parser() -> _Parser:
    parser = _Parser(prog="feedback-lens",
                     description="Quantify conversational feedback in dialogue corpora.")
    parser.add_argument("--log-level", default="INFO",
                        choices=["DEBUG", "INFO", "WARNING", "ERROR"], help="stderr verbosity")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("classify", help="label utterances with cue lexicon classes")
    _add_corpus_args(p)
    _add_lexicon_args(p)
    p.add_argument("--out", required=True, help="output label JSONL")
    p.add_argument("--no-initial", action="store_true",
                   help="disable first-token matching for longer utterances")
    p.add_argument("--no-short-fallback", action="store_true",
                   help="disable first-token fallback for 2-3 token utterances")
    p.add_argument("--extras", help="comma-separated extra categories to match (e.g. politeness,emoji)")
    p.set_defaults(func=_cmd_classify)

    p = sub.add_parser("stats-proportions", help="label share table from a label file")
    p.add_argument("--labels", required=True, help="label JSONL from classify")
    p.add_argument("--denominator", default="all_utterances",
                   choices=["all_utterances", "feedback_only"])
    p.add_argument("--out", help="output JSON (stdout when omitted)")
    p.set_defaults(func=_cmd_stats_proportions)

    p = sub.add_parser("stats-terms", help="scaled f-score term comparison of two corpora")
    p.add_argument("--corpus-a", required=True)
    p.add_argument("--manifest-a", required=True)
    p.add_argument("--corpus-b", required=True)
    p.add_argument("--manifest-b", required=True)
    p.add_argument("--n-max", type=int, default=3)
    p.add_argument("--top-k", type=int, default=20)
    p.add_argument("--scope", default="very_short_only", choices=list(stats.NGRAM_SCOPES))
    p.add_argument("--out", required=True, help="output CSV (full term table)")
    p.add_argument("--json", help="also write the table as chartable JSON")
    p.set_defaults(func=_cmd_stats_terms)

    p = sub.add_parser("stats-lengths", help="length histogram of feedback vs other utterances")
    _add_corpus_args(p, with_filters=False)
    p.add_argument("--labels", required=True, help="label JSONL aligned with the corpus")
    p.add_argument("--max-length", type=int, default=20)
    p.add_argument("--out", help="output JSON (stdout when omitted)")
    p.set_defaults(func=_cmd_stats_lengths)

    p = sub.add_parser("stats-top", help="most frequent feedback forms")
    _add_corpus_args(p, with_filters=False)
    p.add_argument("--labels", required=True, help="label JSONL aligned with the corpus")
    p.add_argument("-k", type=int, default=10)
    p.add_argument("--out", help="output JSON (stdout when omitted)")
    p.set_defaults(func=_cmd_stats_top)

    p = sub.add_parser("da-map", help="map fine dialogue-act tags to coarse groups")
    _add_corpus_args(p, with_filters=False)
    p.add_argument("--mapping", help="mapping JSON (bundled default when omitted)")
    p.add_argument("--binary", action="store_true", help="also emit the feedback/other grouping")
    p.add_argument("--out", required=True, help="output JSONL")
    p.set_defaults(func=_cmd_da_map)

    p = sub.add_parser("da-decide", help="pick groups from per-group probabilities")
    p.add_argument("--probs", required=True, help="probability JSONL")
    p.add_argument("--thresholds", help="threshold config JSON")
    p.add_argument("--config", help="JSON config supplying thresholds")
    p.add_argument("--out", required=True, help="output JSONL")
    p.add_argument("--summary", help="also write a group proportion summary JSON")
    p.set_defaults(func=_cmd_da_decide)

    p = sub.add_parser("eval", help="score cue-rule feedback detection against gold tags")
    _add_corpus_args(p, with_filters=False)
    _add_lexicon_args(p)
    p.add_argument("--mapping", help="mapping JSON (bundled default when omitted)")
    p.add_argument("--out", help="output report JSON")
    p.set_defaults(func=_cmd_eval)

    p = sub.add_parser("compare", help="per-class percentage-point deltas between two tables")
    p.add_argument("--a", required=True, help="baseline proportion JSON")
    p.add_argument("--b", required=True, help="comparison proportion JSON")
    p.add_argument("--out", required=True, help="output CSV")
    p.set_defaults(func=_cmd_compare)

    p = sub.add_parser("chart", help="render a stats JSON/CSV file as a static SVG")
    p.add_argument("--in", dest="infile", required=True, help="input JSON or CSV table")
    p.add_argument("--out", required=True, help="output SVG")
    p.add_argument("--title", help="chart title")
    p.set_defaults(func=_cmd_chart)

    return parser


def run(argv: list[str] | None = None) -> int:
    logging.basicConfig(stream=sys.stderr, format="%(levelname)s %(message)s", force=True)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        log.setLevel(args.log_level)
        return args.func(args)
    except corpus_io.FormatError as exc:
        log.error("%s", exc)
        return EXIT_VALIDATION
    except ValueError as exc:
        log.error("%s", exc)
        return EXIT_VALIDATION
    except OSError as exc:
        log.error("%s", exc)
        return EXIT_IO


def main() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
