"""Dependency-parse adapter: statements file in, CoNLL-U out.

``--model builtin`` (default) uses the deterministic pattern-based backend;
``--model spacy[:pipeline]`` runs a spaCy pipeline over the pre-tokenized
words when spaCy and the named pipeline are installed.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from parser_adapters import __version__
from parser_adapters.heuristics import Parse, parse_sentence
from parser_adapters.manifest import write_manifest
from parser_adapters.output import atomic_output
from parser_adapters.statements import AdapterError, StatementRow, read_statement_rows


def parse_with_spacy(rows: list[StatementRow], pipeline: str) -> list[Parse]:
    try:
        import spacy
        from spacy.tokens import Doc
    except ImportError as exc:
        raise AdapterError("spaCy is not installed; use --model builtin") from exc
    try:
        nlp = spacy.load(pipeline)
    except OSError as exc:
        raise AdapterError(f"spaCy pipeline {pipeline!r} is not available: {exc}") from exc
    parses = []
    for row in rows:
        doc = Doc(nlp.vocab, words=list(row.words))
        for name, pipe in nlp.pipeline:
            doc = pipe(doc)
        heads = [-1 if t.head is t else t.head.i for t in doc]
        deps = [t.dep_.lower() if t.head is not t else "root" for t in doc]
        pos = [t.pos_ for t in doc]
        parses.append(Parse(heads=heads, deps=deps, pos=pos))
    return parses


def emit_conllu(rows: list[StatementRow], parses: list[Parse], handle) -> None:
    handle.write(f"# generator = ci-dep-adapter {__version__}\n")
    for row, parse in zip(rows, parses):
        handle.write(f"# sent_id = {row.statement_id}\n")
        handle.write(f"# text = {' '.join(row.words)}\n")
        for i, word in enumerate(row.words):
            head = 0 if parse.heads[i] == -1 else parse.heads[i] + 1
            columns = [str(i + 1), word, "_", parse.pos[i], "_", "_",
                       str(head), parse.deps[i], "_", "_"]
            handle.write("\t".join(columns) + "\n")
        handle.write("\n")


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(prog="ci-dep-adapter", description=__doc__)
    parser.add_argument("--statements", required=True)
    parser.add_argument("--out", required=True, help="CoNLL-U output path")
    parser.add_argument("--manifest", help="manifest JSON path (default: <out>.manifest.json)")
    parser.add_argument("--model", default="builtin",
                        help="builtin (default) or spacy[:pipeline]")
    args = parser.parse_args(argv)

    try:
        rows = read_statement_rows(args.statements)
        if args.model == "builtin":
            parses = [parse_sentence(list(row.words)) for row in rows]
            model_name, model_version = "builtin-heuristic", __version__
        elif args.model.startswith("spacy"):
            _, _, pipeline = args.model.partition(":")
            pipeline = pipeline or "en_core_web_sm"
            parses = parse_with_spacy(rows, pipeline)
            import spacy

            model_name, model_version = f"spacy:{pipeline}", spacy.__version__
        else:
            raise AdapterError(f"unknown model {args.model!r}")
        with atomic_output(args.out) as handle:
            emit_conllu(rows, parses, handle)
    except AdapterError as exc:
        print(f"ci-dep-adapter: error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"ci-dep-adapter: i/o error: {exc}", file=sys.stderr)
        return 2

    manifest_path = args.manifest or str(Path(args.out).with_name(Path(args.out).name + ".manifest.json"))
    write_manifest(manifest_path, "ci-dep-adapter", model_name, model_version,
                   [row.statement_id for row in rows])
    return 0


if __name__ == "__main__":
    sys.exit(main())
