"""Convert an OPP-115-style export into the core's segment JSON-lines format.

Expected export layout, mirroring the public corpus distribution:

    <export>/sanitized_policies/<policy>.html   segments separated by "|||"
    <export>/annotations/<policy>.csv           headerless rows whose fifth
                                                and sixth columns are the
                                                segment index and category

A segment may carry labels from several annotators; the converter keeps the
majority category (ties go to the lexicographically first) since the segment
schema holds one label per segment.  Unlabeled segments are skipped.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
from collections import Counter
from pathlib import Path

from parser_adapters.output import atomic_output
from parser_adapters.statements import AdapterError

SEGMENT_SEPARATOR = "|||"
_SEGMENT_COLUMN = 4
_CATEGORY_COLUMN = 5


def read_labels(csv_path: Path) -> dict[int, str]:
    votes: dict[int, Counter] = {}
    with open(csv_path, encoding="utf-8", newline="") as handle:
        for row in csv.reader(handle):
            if len(row) <= _CATEGORY_COLUMN:
                continue
            try:
                segment = int(row[_SEGMENT_COLUMN])
            except ValueError:
                continue  # header or malformed row
            votes.setdefault(segment, Counter())[row[_CATEGORY_COLUMN]] += 1
    labels = {}
    for segment, counter in votes.items():
        top = max(counter.values())
        labels[segment] = sorted(c for c, n in counter.items() if n == top)[0]
    return labels


def convert_policy(policy_path: Path, csv_path: Path, out_path: Path) -> int:
    segments = policy_path.read_text(encoding="utf-8").split(SEGMENT_SEPARATOR)
    labels = read_labels(csv_path)
    emitted = 0
    with atomic_output(out_path) as handle:
        for index, text in enumerate(segments):
            label = labels.get(index)
            text = text.strip()
            if label is None or not text:
                continue
            handle.write(json.dumps({
                "policy_id": policy_path.stem,
                "segment_id": str(index),
                "label": label,
                "text": text,
            }, ensure_ascii=False) + "\n")
            emitted += 1
    return emitted


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(prog="ci-opp115-convert", description=__doc__)
    parser.add_argument("--export", required=True, help="export root directory")
    parser.add_argument("--out-dir", required=True)
    args = parser.parse_args(argv)

    export = Path(args.export)
    policies_dir = export / "sanitized_policies"
    annotations_dir = export / "annotations"
    try:
        if not policies_dir.is_dir() or not annotations_dir.is_dir():
            raise AdapterError(
                f"{export}: expected sanitized_policies/ and annotations/ subdirectories"
            )
        out_dir = Path(args.out_dir)
        out_dir.mkdir(parents=True, exist_ok=True)
        total = 0
        for policy_path in sorted(policies_dir.glob("*.html")):
            csv_path = annotations_dir / (policy_path.stem + ".csv")
            if not csv_path.is_file():
                print(f"ci-opp115-convert: no annotations for {policy_path.stem}, skipped",
                      file=sys.stderr)
                continue
            total += convert_policy(
                policy_path, csv_path, out_dir / f"{policy_path.stem}.jsonl"
            )
        print(f"ci-opp115-convert: wrote {total} labeled segment(s)")
    except AdapterError as exc:
        print(f"ci-opp115-convert: error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"ci-opp115-convert: i/o error: {exc}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
