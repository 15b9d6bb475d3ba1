"""Redundant-verb filtering tests, including randomized set properties."""

from __future__ import annotations

import random

import pytest

from ci_extractor.corpus import CIParam
from ci_extractor.errors import FormatError
from ci_extractor.interchange import SrlArgument, SrlFrame
from ci_extractor.refine import find_redundant_frames, refine
from ci_extractor.srlmap import DEFAULT_LEXICON, extract_statement, map_frame

# "We collect your personal information when you are sharing your post ."
COLLECT_SHARE = [
    SrlFrame(
        "cs", 12, 1, "collect",
        [
            SrlArgument("ARG0", 0, 1),
            SrlArgument("ARG1", 2, 5),
            SrlArgument("ARGM-TMP", 5, 11),
        ],
    ),
    SrlFrame(
        "cs", 12, 8, "share",
        [
            SrlArgument("ARGM-TMP", 5, 6),
            SrlArgument("ARG0", 6, 7),
            SrlArgument("ARG1", 9, 11),
        ],
    ),
]


def keys(spans):
    return {(s.param, s.start, s.end) for s in spans}


def test_share_inside_collect_tp_is_redundant():
    assert find_redundant_frames(COLLECT_SHARE, DEFAULT_LEXICON) == {8}


def test_single_frame_is_never_redundant():
    assert find_redundant_frames(COLLECT_SHARE[:1], DEFAULT_LEXICON) == set()


def test_collect_share_refinement_drops_agent_and_attribute():
    annotation, report = refine(COLLECT_SHARE, DEFAULT_LEXICON)
    assert [(v.verb_index, v.verb_lemma, v.containing_verb_index)
            for v in report.redundant_verbs] == [(8, "share", 1)]
    assert keys(report.dropped_spans) == {
        (CIParam.SENDER, 6, 7),
        (CIParam.ATTRIBUTE, 9, 11),
    }
    # the share frame's "when" span overlaps the surviving TP and is kept
    assert keys(report.kept_overlapping_spans) == {(CIParam.TP, 5, 6)}
    assert keys(annotation.spans) == {
        (CIParam.RECEIVER, 0, 1),
        (CIParam.ATTRIBUTE, 2, 5),
        (CIParam.TP, 5, 11),
        (CIParam.TP, 5, 6),
    }
    assert annotation.method == "ci-srl"


def test_refine_equals_extract_without_redundancy():
    frames = [COLLECT_SHARE[0]]
    annotation, report = refine(frames, DEFAULT_LEXICON)
    assert keys(annotation.spans) == keys(extract_statement(frames, DEFAULT_LEXICON).spans)
    assert not report.redundant_verbs
    assert not report.dropped_spans


def chain_frames() -> list[SrlFrame]:
    # A's TP contains B's verb; B's TP contains C's verb; C is outside A's TP.
    return [
        SrlFrame("ch", 12, 0, "collect", [SrlArgument("ARGM-TMP", 3, 6)]),
        SrlFrame("ch", 12, 4, "share", [SrlArgument("ARGM-TMP", 7, 10)]),
        SrlFrame("ch", 12, 8, "provide", [SrlArgument("ARG1", 9, 10)]),
    ]


def test_chain_is_redundant_under_single_pass():
    assert find_redundant_frames(chain_frames(), DEFAULT_LEXICON) == {4, 8}


def test_chain_keeps_tail_under_fixpoint():
    assert find_redundant_frames(chain_frames(), DEFAULT_LEXICON, fixpoint=True) == {4}


def test_mutual_containment_keeps_earlier_verb():
    frames = [
        SrlFrame("mu", 12, 2, "collect", [SrlArgument("ARGM-TMP", 6, 10)]),
        SrlFrame("mu", 12, 8, "share", [SrlArgument("ARGM-TMP", 0, 4)]),
    ]
    assert find_redundant_frames(frames, DEFAULT_LEXICON) == {8}
    assert find_redundant_frames(frames, DEFAULT_LEXICON, fixpoint=True) == {8}


def test_overlapping_attribute_of_redundant_frame_is_kept():
    frames = [
        SrlFrame(
            "ov", 14, 1, "collect",
            [SrlArgument("ARG1", 2, 6), SrlArgument("ARGM-TMP", 6, 12)],
        ),
        SrlFrame(
            "ov", 14, 8, "share",
            [SrlArgument("ARG1", 4, 8), SrlArgument("ARG0", 9, 10)],
        ),
    ]
    annotation, report = refine(frames, DEFAULT_LEXICON)
    assert keys(report.kept_overlapping_spans) == {(CIParam.ATTRIBUTE, 4, 8)}
    assert keys(report.dropped_spans) == {(CIParam.SENDER, 9, 10)}
    assert (CIParam.ATTRIBUTE, 4, 8) in keys(annotation.spans)


def test_refine_rejects_mixed_statements():
    frames = [COLLECT_SHARE[0], SrlFrame("other", 4, 1, "share", [])]
    with pytest.raises(FormatError):
        refine(frames, DEFAULT_LEXICON)


# --------------------------------------------------------------------------
# Randomized properties

LEMMAS = sorted(DEFAULT_LEXICON.sending | DEFAULT_LEXICON.receiving)
ROLES = ["ARG0", "ARG1", "ARG2", "ARG3", "ARGM-TMP", "ARGM-ADV", "ARGM-CAU"]


def random_frames(rng: random.Random) -> list[SrlFrame]:
    n = rng.randint(10, 20)
    verb_indices = rng.sample(range(n), rng.randint(1, 5))
    frames = []
    for verb in sorted(verb_indices):
        arguments = []
        for _ in range(rng.randint(0, 4)):
            side = rng.random() < 0.5
            if verb == 0 or (side and verb < n - 1):
                start = rng.randint(verb + 1, n - 1)
                end = rng.randint(start + 1, n)
            elif verb > 0:
                start = rng.randrange(0, verb)
                end = rng.randint(start + 1, verb)
            else:
                continue
            arguments.append(SrlArgument(rng.choice(ROLES), start, end))
        frames.append(SrlFrame("rx", n, verb, rng.choice(LEMMAS), arguments))
    return frames


def rebuild_from_output(frames, redundant, kept_keys):
    """Frames implied by the refine output: redundant frames keep only the
    arguments whose mapped spans survived."""
    rebuilt = []
    for frame in frames:
        if frame.verb_index not in redundant:
            rebuilt.append(frame)
            continue
        kept_args = []
        for argument in frame.arguments:
            probe = SrlFrame(
                frame.statement_id, frame.sentence_len, frame.verb_index,
                frame.verb_lemma, [argument],
            )
            spans = map_frame(probe, DEFAULT_LEXICON).spans
            if spans and (spans[0].param, spans[0].start, spans[0].end) in kept_keys:
                kept_args.append(argument)
        rebuilt.append(
            SrlFrame(frame.statement_id, frame.sentence_len, frame.verb_index,
                     frame.verb_lemma, kept_args)
        )
    return rebuilt


@pytest.mark.parametrize("fixpoint", [False, True])
def test_randomized_containment_and_idempotence(fixpoint):
    rng = random.Random(20240401)
    for _ in range(200):
        frames = random_frames(rng)
        annotation, report = refine(frames, DEFAULT_LEXICON, fixpoint=fixpoint)
        extracted = extract_statement(frames, DEFAULT_LEXICON)
        assert keys(annotation.spans) <= keys(extracted.spans)

        # dropped spans are exactly the redundant-frame spans that fail the
        # same-parameter overlap rule against the survivors' spans
        redundant = {v.verb_index for v in report.redundant_verbs}
        survivor_spans = []
        for frame in frames:
            if frame.verb_index not in redundant:
                survivor_spans.extend(map_frame(frame, DEFAULT_LEXICON).spans)
        expected_dropped = set()
        expected_kept = set()
        for frame in frames:
            if frame.verb_index not in redundant:
                continue
            for span in map_frame(frame, DEFAULT_LEXICON).spans:
                overlaps = any(
                    s.param == span.param and span.overlap(s) > 0
                    for s in survivor_spans
                )
                target = expected_kept if overlaps else expected_dropped
                target.add((span.param, span.start, span.end))
        assert keys(report.dropped_spans) == expected_dropped
        assert keys(report.kept_overlapping_spans) == expected_kept

        # Idempotence holds for the default single-pass rule: refining the
        # frames implied by the output changes nothing.  The fixpoint variant
        # re-evaluates containment against survivors, so dropping a condemned
        # frame's TP argument can legitimately re-stratify the rest.
        if not fixpoint:
            rebuilt = rebuild_from_output(frames, redundant, keys(annotation.spans))
            again, _ = refine(rebuilt, DEFAULT_LEXICON)
            assert keys(again.spans) == keys(annotation.spans)
