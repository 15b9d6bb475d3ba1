"""SRL adapter: statements file in, frame JSON-lines out.

``--model builtin`` (default) uses the deterministic pattern-based backend.
``--model allennlp[:archive]`` is accepted for installations that have an
AllenNLP predictor available; it is imported lazily and reported as an error
otherwise.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from parser_adapters import __version__
from parser_adapters.heuristics import Frame, extract_frames
from parser_adapters.manifest import write_manifest
from parser_adapters.output import atomic_output
from parser_adapters.statements import AdapterError, StatementRow, read_statement_rows


def frames_with_allennlp(rows: list[StatementRow], archive: str):
    try:
        from allennlp.predictors.predictor import Predictor  # noqa: F401
    except ImportError as exc:
        raise AdapterError(
            "AllenNLP is not installed; use --model builtin"
        ) from exc
    raise AdapterError(
        "AllenNLP backend requires a local archive and GPU/CPU model setup; "
        "wire it here before use"
    )


def emit_frames(rows: list[StatementRow], frames_per_row: list[list[Frame]], handle) -> None:
    for row, frames in zip(rows, frames_per_row):
        for frame in frames:
            record = {
                "statement_id": row.statement_id,
                "sentence_len": len(row.words),
                "verb_index": frame.verb_index,
                "verb_lemma": frame.verb_lemma,
                "arguments": [
                    {"role": role, "start": start, "end": end}
                    for role, start, end in frame.arguments
                ],
            }
            handle.write(json.dumps(record, ensure_ascii=False) + "\n")


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(prog="ci-srl-adapter", description=__doc__)
    parser.add_argument("--statements", required=True)
    parser.add_argument("--out", required=True, help="frame JSON-lines output path")
    parser.add_argument("--manifest", help="manifest JSON path (default: <out>.manifest.json)")
    parser.add_argument("--model", default="builtin",
                        help="builtin (default) or allennlp[:archive]")
    args = parser.parse_args(argv)

    try:
        rows = read_statement_rows(args.statements)
        if args.model == "builtin":
            frames_per_row = [extract_frames(list(row.words)) for row in rows]
            model_name, model_version = "builtin-heuristic", __version__
        elif args.model.startswith("allennlp"):
            _, _, archive = args.model.partition(":")
            frames_per_row = frames_with_allennlp(rows, archive)
            model_name, model_version = args.model, "external"
        else:
            raise AdapterError(f"unknown model {args.model!r}")
        with atomic_output(args.out) as handle:
            emit_frames(rows, frames_per_row, handle)
    except AdapterError as exc:
        print(f"ci-srl-adapter: error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"ci-srl-adapter: i/o error: {exc}", file=sys.stderr)
        return 2

    manifest_path = args.manifest or str(Path(args.out).with_name(Path(args.out).name + ".manifest.json"))
    write_manifest(manifest_path, "ci-srl-adapter", model_name, model_version,
                   [row.statement_id for row in rows])
    return 0


if __name__ == "__main__":
    sys.exit(main())
