"""Command-line pipeline: ingest -> split -> (tag | map) -> refine -> score -> report.

Every subcommand reads and writes the documented interchange files only, and
drops a ``*.manifest.json`` next to its primary output recording inputs (with
digests), the resolved configuration, and the package version.  Exit codes:
0 success, 1 validation error, 2 I/O error.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import logging
import os
import sys
from pathlib import Path

from ci_extractor import __version__
from ci_extractor.config import CONFIG_ENV_VAR, PipelineConfig, load_config
from ci_extractor.corpus import (
    FlowAnnotation,
    ingest_corpus,
    read_annotations,
    read_statements,
    spans_to_tags,
    split_sentences,
    tags_to_spans,
    write_annotations,
    write_statements,
)
from ci_extractor.depmap import DEFAULT_RULES, load_rules, map_dependencies
from ci_extractor.errors import CiExtractorError, FormatError
from ci_extractor.evaluate import (
    Criterion,
    MatchPolicy,
    macro_average,
    per_policy_f1,
    score_statement,
    tag_distribution,
    word_level_scores,
)
from ci_extractor.hmm import load_model, save_model, train, tune_lambdas, viterbi_decode
from ci_extractor.interchange import (
    TaggedSentence,
    read_conll2003,
    read_conllu,
    read_srl_frames,
    write_conll2003,
)
from ci_extractor.refine import refine, write_refinement_reports
from ci_extractor.reports import (
    scores_to_dict,
    write_policy_histogram_csv,
    write_scores_csv,
    write_summary_json,
    write_tag_distribution_csv,
)
from ci_extractor.srlmap import DEFAULT_LEXICON, extract_statement, load_lexicon

log = logging.getLogger("ci_extractor")


class _Parser(argparse.ArgumentParser):
    # spec'd exit codes: usage problems are validation errors (1), not 2
    def error(self, message: str) -> None:  # type: ignore[override]
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _sha256(path: Path) -> str:
    digest = hashlib.sha256()
    with open(path, "rb") as handle:
        for block in iter(lambda: handle.read(65536), b""):
            digest.update(block)
    return digest.hexdigest()


def _write_manifest(
    out: Path, subcommand: str, inputs: list[Path], config: PipelineConfig
) -> None:
    # inputs are recorded by name + digest, not path, so reruns from other
    # directories produce byte-identical manifests
    manifest = {
        "tool": "ci-extractor",
        "version": __version__,
        "subcommand": subcommand,
        "inputs": [
            {"name": p.name, "sha256": _sha256(p)} for p in inputs if p.is_file()
        ],
        "config": config.as_dict(),
        "config_sha256": config.digest(),
    }
    path = out.with_name(out.name + ".manifest.json")
    with open(path, "w", encoding="utf-8", newline="\n") as handle:
        json.dump(manifest, handle, ensure_ascii=False, sort_keys=True, indent=2)
        handle.write("\n")


def _resolve_config(args: argparse.Namespace) -> PipelineConfig:
    path = args.config or os.environ.get(CONFIG_ENV_VAR)
    config = load_config(path)
    overrides = {
        "split_on_colon": getattr(args, "split_on_colon", None) or None,
        "lambda1": getattr(args, "lambda1", None),
        "lambda2": getattr(args, "lambda2", None),
        "grid_step": getattr(args, "grid_step", None),
        "dp_rules": getattr(args, "dp_rules", None),
        "verb_lexicon": getattr(args, "verb_lexicon", None),
        "criterion": getattr(args, "criterion", None),
        "overlap_threshold": getattr(args, "overlap_threshold", None),
    }
    allow = getattr(args, "allow_label", None)
    values = config.as_dict()
    if allow:
        values["allow_labels"] = tuple(allow)
    else:
        values["allow_labels"] = tuple(values["allow_labels"])
    for key, value in overrides.items():
        if value is not None:
            values[key] = value
    return PipelineConfig(**values)


def _policy_from(config: PipelineConfig) -> MatchPolicy:
    return MatchPolicy(
        criterion=Criterion(config.criterion),
        overlap_threshold=config.overlap_threshold,
    )


def _lexicon_from(config: PipelineConfig):
    return load_lexicon(config.verb_lexicon) if config.verb_lexicon else DEFAULT_LEXICON


# --------------------------------------------------------------------------
# Subcommand handlers


def cmd_ingest(args: argparse.Namespace) -> int:
    config = _resolve_config(args)
    corpus = ingest_corpus(
        args.segments,
        allow_labels=config.allow_labels,
        split_on_colon=config.split_on_colon,
    )
    out = Path(args.out)
    write_statements(corpus.statements, out)
    log.info(
        "ingested %d statements (%d segments skipped)",
        len(corpus), corpus.skipped_segments,
    )
    inputs = sorted(Path(args.segments).glob("*.jsonl"))
    _write_manifest(out, "ingest", inputs, config)
    return 0


def cmd_split(args: argparse.Namespace) -> int:
    config = _resolve_config(args)
    text = Path(args.infile).read_text(encoding="utf-8")
    sentences = split_sentences(text, split_on_colon=config.split_on_colon)
    out = Path(args.out)
    out.write_text("".join(s + "\n" for s in sentences), encoding="utf-8")
    _write_manifest(out, "split", [Path(args.infile)], config)
    return 0


def cmd_hmm_train(args: argparse.Namespace) -> int:
    config = _resolve_config(args)
    sentences = read_conll2003(args.train)
    model = train(sentences, config.lambda1, config.lambda2)
    out = Path(args.out)
    save_model(model, out)
    _write_manifest(out, "hmm-train", [Path(args.train)], config)
    return 0


def cmd_hmm_tune(args: argparse.Namespace) -> int:
    config = _resolve_config(args)
    train_set = read_conll2003(args.train)
    validation = read_conll2003(args.validation)
    lambda1, lambda2 = tune_lambdas(train_set, validation, config.grid_step)
    out = Path(args.out)
    with open(out, "w", encoding="utf-8", newline="\n") as handle:
        json.dump(
            {"lambda1": lambda1, "lambda2": lambda2, "grid_step": config.grid_step},
            handle, sort_keys=True, indent=2,
        )
        handle.write("\n")
    _write_manifest(out, "hmm-tune", [Path(args.train), Path(args.validation)], config)
    return 0


def cmd_hmm_tag(args: argparse.Namespace) -> int:
    config = _resolve_config(args)
    model = load_model(args.model)
    statements = read_statements(args.statements)
    annotations = []
    tagged = []
    for statement in statements:
        tags = viterbi_decode(model, [t.text for t in statement.tokens])
        tagged.append(TaggedSentence(statement.id, list(statement.tokens), tags))
        annotations.append(
            FlowAnnotation(
                statement_id=statement.id,
                method="hmm",
                spans=tags_to_spans(tags, "hmm"),
            )
        )
    out = Path(args.out)
    write_annotations(annotations, out)
    if args.out_conll:
        write_conll2003(tagged, args.out_conll)
    _write_manifest(out, "hmm-tag", [Path(args.model), Path(args.statements)], config)
    return 0


def cmd_dp_map(args: argparse.Namespace) -> int:
    config = _resolve_config(args)
    rules = load_rules(config.dp_rules) if config.dp_rules else DEFAULT_RULES
    trees = read_conllu(args.conllu)
    inputs = [Path(args.conllu)]
    if args.statements:
        # parses were produced from the same text; on divergence the parse
        # file's tokenization wins, with a warning
        inputs.append(Path(args.statements))
        words = {s.id: s.words for s in read_statements(args.statements)}
        for tree in trees:
            expected = words.get(tree.statement_id)
            actual = [t.text for t in tree.tokens]
            if expected is not None and expected != actual:
                log.warning(
                    "%s: parse tokens differ from the statement file; "
                    "trusting the parse", tree.statement_id,
                )
    annotations = [map_dependencies(tree, rules) for tree in trees]
    out = Path(args.out)
    write_annotations(annotations, out)
    _write_manifest(out, "dp-map", inputs, config)
    return 0


def _frames_by_statement(path: str) -> dict[str, list]:
    grouped: dict[str, list] = {}
    for frame in read_srl_frames(path):
        grouped.setdefault(frame.statement_id, []).append(frame)
    return grouped


def cmd_srl_map(args: argparse.Namespace) -> int:
    config = _resolve_config(args)
    lexicon = _lexicon_from(config)
    grouped = _frames_by_statement(args.frames)
    annotations = [
        extract_statement(frames, lexicon) for _, frames in sorted(grouped.items())
    ]
    unprocessed = sum(1 for a in annotations if a.metadata.get("unprocessed"))
    if unprocessed:
        log.info("%d statement(s) had no tracked verbs", unprocessed)
    out = Path(args.out)
    write_annotations(annotations, out)
    _write_manifest(out, "srl-map", [Path(args.frames)], config)
    return 0


def cmd_ci_srl(args: argparse.Namespace) -> int:
    config = _resolve_config(args)
    lexicon = _lexicon_from(config)
    grouped = _frames_by_statement(args.frames)
    annotations = []
    reports = []
    for _, frames in sorted(grouped.items()):
        annotation, report = refine(frames, lexicon, fixpoint=args.fixpoint_redundancy)
        annotations.append(annotation)
        reports.append(report)
    out = Path(args.out)
    write_annotations(annotations, out)
    if args.emit_refinement_report:
        write_refinement_reports(reports, args.emit_refinement_report)
    _write_manifest(out, "ci-srl", [Path(args.frames)], config)
    return 0


def _load_predictions(path: str, lengths: dict[str, int] | None) -> tuple[str, dict]:
    annotations = read_annotations(path, lengths)
    methods = {a.method for a in annotations}
    if len(methods) > 1:
        raise FormatError(f"{path}: mixed methods {sorted(methods)}")
    method = methods.pop() if methods else Path(path).stem
    return method, {a.statement_id: a for a in annotations}


def _statement_scores(
    pred_by_id: dict[str, FlowAnnotation],
    gold_by_id: dict[str, FlowAnnotation],
    policy: MatchPolicy,
) -> dict[str, dict]:
    scores = {}
    for sid in sorted(set(pred_by_id) | set(gold_by_id)):
        pred = pred_by_id.get(sid) or FlowAnnotation(sid, "empty")
        gold = gold_by_id.get(sid) or FlowAnnotation(sid, "gold")
        scores[sid] = score_statement(pred, gold, policy)
    return scores


def _tag_sequences(
    statements, annotations_by_id: dict[str, FlowAnnotation]
) -> list[TaggedSentence]:
    sequences = []
    for statement in statements:
        annotation = annotations_by_id.get(statement.id)
        spans = [s for s in annotation.spans] if annotation else []
        sequences.append(
            TaggedSentence(
                statement.id,
                list(statement.tokens),
                spans_to_tags(len(statement.tokens), spans),
            )
        )
    return sequences


def cmd_score(args: argparse.Namespace) -> int:
    config = _resolve_config(args)
    policy = _policy_from(config)
    lengths = None
    statements = None
    if args.statements:
        statements = read_statements(args.statements)
        lengths = {s.id: len(s.tokens) for s in statements}
    method, pred_by_id = _load_predictions(args.pred, lengths)
    _, gold_by_id = _load_predictions(args.gold, lengths)

    if args.mode == "phrase-macro":
        per_statement = _statement_scores(pred_by_id, gold_by_id, policy)
        scores = macro_average(list(per_statement.values()))
    else:
        if statements is None:
            raise FormatError("--statements is required for word-level scoring")
        pred_tags = _tag_sequences(statements, pred_by_id)
        gold_tags = _tag_sequences(statements, gold_by_id)
        scores = word_level_scores(pred_tags, gold_tags)

    out = Path(args.out)
    write_scores_csv([(method, s) for s in scores], out)
    inputs = [Path(args.pred), Path(args.gold)]
    if args.statements:
        inputs.append(Path(args.statements))
    _write_manifest(out, "score", inputs, config)
    return 0


def cmd_report(args: argparse.Namespace) -> int:
    config = _resolve_config(args)
    policy = _policy_from(config)
    statements = read_statements(args.statements)
    lengths = {s.id: len(s.tokens) for s in statements}
    policy_of = {s.id: s.policy_id for s in statements}
    _, gold_by_id = _load_predictions(args.gold, lengths)

    out_dir = Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)

    summary: dict = {"methods": {}}
    macro_rows = []
    word_rows = []
    for pred_path in args.pred:
        method, pred_by_id = _load_predictions(pred_path, lengths)
        per_statement = _statement_scores(pred_by_id, gold_by_id, policy)
        macro_scores = macro_average(list(per_statement.values()))
        macro_rows.extend((method, s) for s in macro_scores)
        method_summary = {"phrase_macro": scores_to_dict(macro_scores)}

        shares = tag_distribution(
            [pred_by_id[sid] for sid in sorted(pred_by_id)], gold_by_id, policy
        )
        write_tag_distribution_csv(shares, out_dir / f"tag_distribution_{method}.csv")
        method_summary["tag_distribution"] = {
            s.tag: {"total": s.total, "tp_pct": round(s.tp_pct, 2),
                    "fp_pct": round(s.fp_pct, 2)}
            for s in shares
        }

        scored_by_policy = [
            (policy_of[sid], counts)
            for sid, counts in per_statement.items()
            if sid in policy_of
        ]
        histogram = per_policy_f1(scored_by_policy)
        write_policy_histogram_csv(histogram, out_dir / f"per_policy_f1_{method}.csv")
        method_summary["per_policy_f1"] = {
            "bins": dict(histogram.bins),
            "policies": {k: round(v, 4) for k, v in histogram.policy_f1.items()},
        }

        if method == "hmm":
            pred_tags = _tag_sequences(statements, pred_by_id)
            gold_tags = _tag_sequences(statements, gold_by_id)
            word_scores = word_level_scores(pred_tags, gold_tags)
            word_rows.extend((method, s) for s in word_scores)
            method_summary["word_level"] = scores_to_dict(word_scores)

        summary["methods"][method] = method_summary

    write_scores_csv(macro_rows, out_dir / "scores_phrase_macro.csv")
    if word_rows:
        write_scores_csv(word_rows, out_dir / "scores_word_level.csv")

    gold_list = [gold_by_id[sid] for sid in sorted(gold_by_id)]
    summary["corpus"] = {
        "statements": len(statements),
        "valid_statements": sum(1 for g in gold_list if g.valid),
        "gold_spans": sum(len(g.spans) for g in gold_list),
        "policies": len(set(policy_of.values())),
    }
    summary["match_policy"] = {
        "criterion": policy.criterion.value,
        "overlap_threshold": policy.overlap_threshold,
    }
    write_summary_json(summary, out_dir / "summary.json")
    inputs = [Path(args.statements), Path(args.gold)] + [Path(p) for p in args.pred]
    _write_manifest(out_dir / "summary.json", "report", inputs, config)
    return 0


# --------------------------------------------------------------------------
# Parser


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="ci-extractor", description=__doc__)
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name: str, handler, help_text: str) -> argparse.ArgumentParser:
        p = sub.add_parser(name, help=help_text)
        p.set_defaults(handler=handler)
        p.add_argument("--config", help="TOML config file (default: $CI_EXTRACTOR_CONFIG)")
        p.add_argument("-v", "--verbose", action="store_true")
        return p

    p = add("ingest", cmd_ingest, "read segment files into a statements file")
    p.add_argument("--segments", required=True, help="directory of segment *.jsonl files")
    p.add_argument("--out", required=True)
    p.add_argument("--allow-label", action="append", help="segment label to keep (repeatable)")
    p.add_argument("--split-on-colon", action="store_true", default=None)

    p = add("split", cmd_split, "split a text file into sentences, one per line")
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--split-on-colon", action="store_true", default=None)

    p = add("hmm-train", cmd_hmm_train, "train the trigram tagger on a CoNLL file")
    p.add_argument("--train", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--lambda1", type=float)
    p.add_argument("--lambda2", type=float)

    p = add("hmm-tune", cmd_hmm_tune, "grid-search interpolation weights")
    p.add_argument("--train", required=True)
    p.add_argument("--validation", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--grid-step", type=float)

    p = add("hmm-tag", cmd_hmm_tag, "tag statements with a trained model")
    p.add_argument("--model", required=True)
    p.add_argument("--statements", required=True)
    p.add_argument("--out", required=True, help="annotation JSON-lines output")
    p.add_argument("--out-conll", help="also write tagged tokens as CoNLL")

    p = add("dp-map", cmd_dp_map, "map dependency trees to CI spans")
    p.add_argument("--conllu", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--dp-rules", help="TOML rules file")
    p.add_argument("--statements", help="statements file, for token cross-checks")

    p = add("srl-map", cmd_srl_map, "map SRL frames to CI spans")
    p.add_argument("--frames", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--verb-lexicon", help="TOML lexicon file")

    p = add("ci-srl", cmd_ci_srl, "SRL mapping with redundant-verb filtering")
    p.add_argument("--frames", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--verb-lexicon", help="TOML lexicon file")
    p.add_argument("--emit-refinement-report", help="JSON-lines audit output")
    p.add_argument("--fixpoint-redundancy", action="store_true",
                   help="only containment by surviving frames condemns a frame")

    p = add("score", cmd_score, "score predictions against gold annotations")
    p.add_argument("--pred", required=True)
    p.add_argument("--gold", required=True)
    p.add_argument("--mode", choices=["phrase-macro", "word-level"], required=True)
    p.add_argument("--statements", help="statements file (required for word-level)")
    p.add_argument("--criterion", choices=["overlap", "exact"])
    p.add_argument("--overlap-threshold", type=float)
    p.add_argument("--out", required=True)

    p = add("report", cmd_report, "full evaluation report for one or more methods")
    p.add_argument("--statements", required=True)
    p.add_argument("--gold", required=True)
    p.add_argument("--pred", action="append", required=True,
                   help="prediction file (repeatable)")
    p.add_argument("--criterion", choices=["overlap", "exact"])
    p.add_argument("--overlap-threshold", type=float)
    p.add_argument("--out-dir", required=True)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(
        level=logging.DEBUG if args.verbose else logging.INFO,
        format="%(levelname)s %(name)s: %(message)s",
    )
    try:
        return args.handler(args)
    except (CiExtractorError, ValueError) as exc:
        print(f"ci-extractor: error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"ci-extractor: i/o error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
