"""Acceptance suite: one test and one printed pass/fail line per criterion.

Run with ``pytest tests/test_acceptance.py -s`` to see the summary lines.
"""

from __future__ import annotations

import random
import time

from ci_extractor.cli import main as cli_main
from ci_extractor.corpus import (
    CIParam,
    FlowAnnotation,
    read_annotations,
    read_statements,
    span_text,
)
from ci_extractor.evaluate import (
    Criterion,
    MatchPolicy,
    macro_average,
    score_statement,
    word_level_scores,
)
from ci_extractor.hmm import STOP, interpolated_transition, train, viterbi_decode
from ci_extractor.interchange import (
    read_conll2003,
    read_conllu,
    read_srl_frames,
)
from ci_extractor.depmap import DEFAULT_RULES, map_dependencies
from ci_extractor.refine import refine
from ci_extractor.srlmap import DEFAULT_LEXICON, extract_statement

from tests.metrics_fixture import (
    EXPECTED_PHRASE_EXACT,
    EXPECTED_PHRASE_OVERLAP,
    EXPECTED_WORD_LEVEL,
    annotations as metrics_annotations,
)
from tests.test_evaluate import word_level_fixture
from tests.test_hmm import brute_force_decode, random_model, random_sentence
from tests.test_refine import random_frames

OVERLAP = MatchPolicy(criterion=Criterion.OVERLAP)


def report(name: str, ok: bool, detail: str = "") -> None:
    status = "PASS" if ok else "FAIL"
    suffix = f" ({detail})" if detail else ""
    print(f"{status}: {name}{suffix}")
    assert ok, f"{name}{suffix}"


# --------------------------------------------------------------------------
# 1. Viterbi oracle equivalence


def test_viterbi_oracle_equivalence():
    rng = random.Random(987654)
    pairs = [
        (random_model(rng), random_sentence(rng, max_len=6)) for _ in range(200)
    ]
    start = time.monotonic()
    mismatches = sum(
        viterbi_decode(model, sentence) != brute_force_decode(model, sentence)
        for model, sentence in pairs
    )
    elapsed = time.monotonic() - start
    report(
        "viterbi oracle equivalence",
        mismatches == 0 and elapsed < 10.0,
        f"{mismatches} mismatches over 200 pairs in {elapsed:.2f}s",
    )


# --------------------------------------------------------------------------
# 2. Probability normalization


def test_transition_normalization(fixtures):
    model = train(read_conll2003(fixtures / "conll" / "train.conll"))
    outcomes = model.tagset + [STOP]
    worst = 0.0
    contexts = 0
    for t2, inner in model.trigram_counts.items():
        for t1 in inner:
            total = sum(interpolated_transition(model, t2, t1, t) for t in outcomes)
            worst = max(worst, abs(total - 1.0))
            contexts += 1
    report(
        "transition normalization",
        contexts > 0 and worst <= 1e-9,
        f"{contexts} observed contexts, worst deviation {worst:.2e}",
    )


# --------------------------------------------------------------------------
# 3. Paper worked examples from bundled fixtures


def _texts(annotation, statement, param):
    return sorted(span_text(statement, s) for s in annotation.spans_for(param))


def test_worked_example_dp(fixtures):
    statements = {
        s.id: s for s in read_statements(fixtures / "examples" / "statements.jsonl")
    }
    tree = read_conllu(fixtures / "examples" / "location.conllu")[0]
    annotation = map_dependencies(tree, DEFAULT_RULES)
    statement = statements["location-example"]
    ok = (
        _texts(annotation, statement, CIParam.TP) == ["When you use Google services"]
        and _texts(annotation, statement, CIParam.SUBJECT) == ["your"]
        and "information about your actual location"
        in _texts(annotation, statement, CIParam.ATTRIBUTE)
        and "we" in _texts(annotation, statement, CIParam.ACTOR)
    )
    report("worked example: dependency mapping", ok)


def test_worked_example_srl(fixtures):
    statements = {
        s.id: s for s in read_statements(fixtures / "examples" / "statements.jsonl")
    }
    frames = read_srl_frames(fixtures / "examples" / "collect_frames.jsonl")
    annotation = extract_statement(frames, DEFAULT_LEXICON)
    statement = statements["collect-example"]
    ok = (
        _texts(annotation, statement, CIParam.RECEIVER) == ["We"]
        and _texts(annotation, statement, CIParam.ATTRIBUTE) == ["technical information"]
        and _texts(annotation, statement, CIParam.TP)
        == ["or use our mobile applications or services", "when you visit our websites"]
    )
    report("worked example: SRL mapping (agent of collect is the recipient)", ok)


def test_worked_example_ci_srl(fixtures):
    frames = read_srl_frames(fixtures / "examples" / "collect_share_frames.jsonl")
    annotation, audit = refine(frames, DEFAULT_LEXICON)
    dropped = {(s.param, s.start, s.end) for s in audit.dropped_spans}
    kept = {(s.param, s.start, s.end) for s in annotation.spans}
    ok = (
        [(v.verb_lemma, v.verb_index) for v in audit.redundant_verbs] == [("share", 8)]
        and (CIParam.SENDER, 6, 7) in dropped
        and (CIParam.ATTRIBUTE, 9, 11) in dropped
        and (CIParam.SENDER, 6, 7) not in kept
        and (CIParam.ATTRIBUTE, 9, 11) not in kept
    )
    report("worked example: redundant share verb filtered", ok)


# --------------------------------------------------------------------------
# 4. Filter direction on the fixture corpus


def test_filter_direction_on_fixture_corpus(fixtures):
    gold = {g.statement_id: g for g in read_annotations(fixtures / "gold.jsonl")}
    grouped: dict[str, list] = {}
    for frame in read_srl_frames(fixtures / "frames" / "corpus_frames.jsonl"):
        grouped.setdefault(frame.statement_id, []).append(frame)

    def table(predictions):
        rows = []
        for sid in sorted(gold):
            pred = predictions.get(sid) or FlowAnnotation(sid, "x")
            rows.append(score_statement(pred, gold[sid], OVERLAP))
        return {s.param: s for s in macro_average(rows)}

    srl = table({sid: extract_statement(f, DEFAULT_LEXICON) for sid, f in grouped.items()})
    cisrl = table({sid: refine(f, DEFAULT_LEXICON)[0] for sid, f in grouped.items()})
    failures = []
    for param, base in srl.items():
        refined = cisrl[param]
        if refined.precision < base.precision:
            failures.append(f"{param.value}: P {refined.precision:.3f} < {base.precision:.3f}")
        if refined.recall < base.recall - 0.05:
            failures.append(f"{param.value}: R {refined.recall:.3f} < {base.recall:.3f} - 0.05")
    report(
        "filter direction (precision up, recall within 0.05)",
        not failures,
        "; ".join(failures) if failures else f"{len(srl)} parameters checked",
    )


# --------------------------------------------------------------------------
# 5. Metrics correctness against the hand-computed spreadsheet


def test_metrics_match_hand_spreadsheet():
    preds, golds = metrics_annotations()

    def table(policy):
        rows = [score_statement(p, g, policy) for p, g in zip(preds, golds)]
        return {
            s.param: (round(s.recall, 4), round(s.precision, 4), round(s.f1, 4), s.support)
            for s in macro_average(rows)
        }

    word_preds, word_golds = word_level_fixture()
    word = {
        s.param: (round(s.recall, 4), round(s.precision, 4), round(s.f1, 4), s.support)
        for s in word_level_scores(word_preds, word_golds)
    }
    ok = (
        table(OVERLAP) == EXPECTED_PHRASE_OVERLAP
        and table(MatchPolicy(criterion=Criterion.EXACT)) == EXPECTED_PHRASE_EXACT
        and word == EXPECTED_WORD_LEVEL
    )
    report("metrics match hand-computed tables to 4 decimals", ok)


# --------------------------------------------------------------------------
# 6. Filter set-containment and idempotence over randomized frames


def test_filter_containment_and_idempotence():
    from tests.test_refine import keys, rebuild_from_output

    rng = random.Random(13579)
    containment_ok = True
    idempotent_ok = True
    for _ in range(500):
        frames = random_frames(rng)
        annotation, audit = refine(frames, DEFAULT_LEXICON)
        extracted = extract_statement(frames, DEFAULT_LEXICON)
        if not keys(annotation.spans) <= keys(extracted.spans):
            containment_ok = False
            break
        redundant = {v.verb_index for v in audit.redundant_verbs}
        rebuilt = rebuild_from_output(frames, redundant, keys(annotation.spans))
        again, _ = refine(rebuilt, DEFAULT_LEXICON)
        if keys(again.spans) != keys(annotation.spans):
            idempotent_ok = False
            break
    report(
        "filter containment and idempotence over 500 random frame sets",
        containment_ok and idempotent_ok,
        f"containment={containment_ok} idempotence={idempotent_ok}",
    )


# --------------------------------------------------------------------------
# 7. End-to-end determinism


def _run_pipeline(fixtures, out_dir):
    out_dir.mkdir()
    statements = out_dir / "statements.jsonl"
    steps = [
        ["ingest", "--segments", str(fixtures / "corpus"), "--out", str(statements)],
        ["hmm-train", "--train", str(fixtures / "conll" / "train.conll"),
         "--out", str(out_dir / "model.json")],
        ["hmm-tag", "--model", str(out_dir / "model.json"),
         "--statements", str(statements), "--out", str(out_dir / "hmm.jsonl")],
        ["dp-map", "--conllu", str(fixtures / "parses" / "corpus.conllu"),
         "--out", str(out_dir / "dp.jsonl")],
        ["srl-map", "--frames", str(fixtures / "frames" / "corpus_frames.jsonl"),
         "--out", str(out_dir / "srl.jsonl")],
        ["ci-srl", "--frames", str(fixtures / "frames" / "corpus_frames.jsonl"),
         "--out", str(out_dir / "cisrl.jsonl"),
         "--emit-refinement-report", str(out_dir / "refinement.jsonl")],
        ["report", "--statements", str(statements),
         "--gold", str(fixtures / "gold.jsonl"),
         "--pred", str(out_dir / "hmm.jsonl"), "--pred", str(out_dir / "dp.jsonl"),
         "--pred", str(out_dir / "srl.jsonl"), "--pred", str(out_dir / "cisrl.jsonl"),
         "--out-dir", str(out_dir / "report")],
    ]
    for step in steps:
        assert cli_main(step) == 0, step


def test_end_to_end_determinism(fixtures, tmp_path):
    first = tmp_path / "run1"
    second = tmp_path / "run2"
    _run_pipeline(fixtures, first)
    _run_pipeline(fixtures, second)
    differing = []
    first_files = sorted(p.relative_to(first) for p in first.rglob("*") if p.is_file())
    second_files = sorted(p.relative_to(second) for p in second.rglob("*") if p.is_file())
    assert first_files == second_files
    for rel in first_files:
        if (first / rel).read_bytes() != (second / rel).read_bytes():
            differing.append(str(rel))
    report(
        "end-to-end determinism (byte-identical annotation and report files)",
        not differing,
        f"{len(first_files)} files compared" if not differing else ", ".join(differing),
    )
