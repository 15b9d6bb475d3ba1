"""Integrity checks for the bundled fixture corpus."""

from __future__ import annotations

import hashlib
import subprocess
import sys
from pathlib import Path

from ci_extractor.corpus import corpus_stats, ingest_corpus, read_annotations, read_statements
from ci_extractor.interchange import read_conllu, read_srl_frames


def test_fixture_corpus_stats(fixtures):
    corpus = ingest_corpus(fixtures / "corpus")
    gold = read_annotations(fixtures / "gold.jsonl")
    stats = corpus_stats(corpus, gold)
    # hand counts from the fixture inventory
    assert stats.total_statements == 59
    assert stats.valid_statements == 52
    assert stats.gold_spans == 192
    assert stats.valid_per_policy == {
        "alpha": 8, "bravo": 10, "cobalt": 8, "delta": 10, "ember": 11, "flint": 5,
    }
    assert stats.min_valid == 5
    assert stats.max_valid == 11
    assert corpus.skipped_segments == 3


def test_statements_file_matches_ingest(fixtures):
    corpus = ingest_corpus(fixtures / "corpus")
    assert read_statements(fixtures / "statements.jsonl") == corpus.statements


def test_parse_and_frame_ids_exist(fixtures):
    ids = {s.id for s in read_statements(fixtures / "statements.jsonl")}
    trees = read_conllu(fixtures / "parses" / "corpus.conllu")
    frames = read_srl_frames(fixtures / "frames" / "corpus_frames.jsonl")
    assert {t.statement_id for t in trees} <= ids
    assert {f.statement_id for f in frames} <= ids
    lengths = {s.id: len(s.tokens) for s in read_statements(fixtures / "statements.jsonl")}
    for tree in trees:
        assert len(tree.tokens) == lengths[tree.statement_id]
    for frame in frames:
        assert frame.sentence_len == lengths[frame.statement_id]


def test_generator_is_deterministic(fixtures):
    def digest() -> dict[str, str]:
        out = {}
        for path in sorted(fixtures.rglob("*")):
            if path.is_file():
                out[str(path)] = hashlib.sha256(path.read_bytes()).hexdigest()
        return out

    before = digest()
    subprocess.run(
        [sys.executable, str(Path(fixtures).parent / "scripts" / "build_fixtures.py")],
        check=True,
        capture_output=True,
    )
    assert digest() == before
