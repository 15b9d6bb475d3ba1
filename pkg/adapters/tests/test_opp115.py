"""OPP-115 export conversion tests on a synthetic mini export."""

from __future__ import annotations

import json

from ci_extractor.corpus import ingest_corpus

from parser_adapters.opp115 import main as convert_main


def build_export(tmp_path):
    export = tmp_path / "export"
    (export / "sanitized_policies").mkdir(parents=True)
    (export / "annotations").mkdir()
    (export / "sanitized_policies" / "20_example.com.html").write_text(
        "We collect your email address when you register."
        "|||We may update this policy."
        "|||We share usage data with partners."
    )
    rows = [
        # annotation_id, batch_id, annotator_id, policy_id, segment_id, category, ...
        ["1", "b1", "a1", "20", "0", "First Party Collection/Use", "{}", "d", "u"],
        ["2", "b1", "a2", "20", "0", "First Party Collection/Use", "{}", "d", "u"],
        ["3", "b1", "a3", "20", "0", "Data Retention", "{}", "d", "u"],
        ["4", "b1", "a1", "20", "1", "Policy Change", "{}", "d", "u"],
        ["5", "b1", "a1", "20", "2", "Third Party Sharing/Collection", "{}", "d", "u"],
    ]
    (export / "annotations" / "20_example.com.csv").write_text(
        "\n".join(",".join(r) for r in rows) + "\n"
    )
    return export


def test_convert_and_ingest(tmp_path):
    export = build_export(tmp_path)
    out_dir = tmp_path / "segments"
    assert convert_main(["--export", str(export), "--out-dir", str(out_dir)]) == 0
    records = [
        json.loads(line)
        for line in (out_dir / "20_example.com.jsonl").read_text().splitlines()
    ]
    assert [r["segment_id"] for r in records] == ["0", "1", "2"]
    # majority vote: two annotators said First Party Collection/Use
    assert records[0]["label"] == "First Party Collection/Use"
    assert records[1]["label"] == "Policy Change"

    corpus = ingest_corpus(out_dir)
    assert [s.id for s in corpus] == ["20_example.com/0/0", "20_example.com/2/0"]
    assert corpus.skipped_segments == 1


def test_missing_layout_is_a_validation_error(tmp_path):
    assert convert_main(["--export", str(tmp_path), "--out-dir", str(tmp_path / "o")]) == 1
