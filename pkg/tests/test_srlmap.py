"""SRL role-to-parameter mapping tests."""

from __future__ import annotations

import random

import pytest

from ci_extractor.corpus import CIParam
from ci_extractor.errors import FormatError
from ci_extractor.interchange import SrlArgument, SrlFrame
from ci_extractor.srlmap import (
    DEFAULT_LEXICON,
    VerbClass,
    VerbLexicon,
    classify_verb,
    extract_statement,
    load_lexicon,
    map_frame,
)

COLLECT_WORDS = (
    "We collect technical information when you visit our websites "
    "or use our mobile applications or services"
).split()


def collect_frame() -> SrlFrame:
    return SrlFrame(
        statement_id="s1",
        sentence_len=len(COLLECT_WORDS),
        verb_index=1,
        verb_lemma="collect",
        arguments=[
            SrlArgument("ARG0", 0, 1),
            SrlArgument("ARG1", 2, 4),
            SrlArgument("ARGM-TMP", 4, 9),
            SrlArgument("ARGM-TMP", 9, 16),
        ],
    )


def spans_as_texts(annotation, words, param):
    return sorted(
        " ".join(words[s.start : s.end]) for s in annotation.spans_for(param)
    )


def test_classify_verb_defaults():
    assert classify_verb("share", DEFAULT_LEXICON) is VerbClass.SENDING
    assert classify_verb("Collect", DEFAULT_LEXICON) is VerbClass.RECEIVING
    for lemma in ("visit", "sell", "rent"):
        assert classify_verb(lemma, DEFAULT_LEXICON) is VerbClass.UNTRACKED


def test_receiving_frame_maps_agent_to_receiver():
    ann = map_frame(collect_frame(), DEFAULT_LEXICON)
    assert spans_as_texts(ann, COLLECT_WORDS, CIParam.RECEIVER) == ["We"]
    assert spans_as_texts(ann, COLLECT_WORDS, CIParam.ATTRIBUTE) == [
        "technical information"
    ]
    assert spans_as_texts(ann, COLLECT_WORDS, CIParam.TP) == [
        "or use our mobile applications or services",
        "when you visit our websites",
    ]
    assert ann.metadata["assumed_subject"] == "user"
    assert {s.source_tag for s in ann.spans} == {
        "collect:ARG0",
        "collect:ARG1",
        "collect:ARGM-TMP",
    }


def test_sending_frame_maps_agent_to_sender():
    words = "We share your data with partners".split()
    frame = SrlFrame(
        statement_id="s2",
        sentence_len=len(words),
        verb_index=1,
        verb_lemma="share",
        arguments=[
            SrlArgument("ARG0", 0, 1),
            SrlArgument("ARG1", 2, 4),
            SrlArgument("ARG2", 4, 6),
        ],
    )
    ann = map_frame(frame, DEFAULT_LEXICON)
    assert spans_as_texts(ann, words, CIParam.SENDER) == ["We"]
    assert spans_as_texts(ann, words, CIParam.RECEIVER) == ["with partners"]
    assert spans_as_texts(ann, words, CIParam.ATTRIBUTE) == ["your data"]


def test_frame_without_arguments_maps_to_nothing():
    frame = SrlFrame("s3", 5, 2, "collect", [])
    assert map_frame(frame, DEFAULT_LEXICON).spans == []


def test_unmapped_roles_are_ignored():
    frame = SrlFrame(
        "s4", 8, 1, "collect",
        [SrlArgument("ARG3", 2, 4), SrlArgument("ARG4", 4, 6)],
    )
    assert map_frame(frame, DEFAULT_LEXICON).spans == []


def test_untracked_verb_is_an_error():
    frame = SrlFrame("s5", 4, 1, "visit", [SrlArgument("ARG0", 0, 1)])
    with pytest.raises(FormatError):
        map_frame(frame, DEFAULT_LEXICON)


def test_extract_statement_unions_and_dedupes():
    other = SrlFrame(
        statement_id="s1",
        sentence_len=len(COLLECT_WORDS),
        verb_index=10,
        verb_lemma="gather",
        arguments=[SrlArgument("ARG1", 2, 4), SrlArgument("ARG0", 11, 13)],
    )
    ann = extract_statement([collect_frame(), other], DEFAULT_LEXICON)
    attribute_ranges = [(s.start, s.end) for s in ann.spans_for(CIParam.ATTRIBUTE)]
    assert attribute_ranges == [(2, 4)]  # identical ranges deduplicated
    assert ann.method == "srl"
    assert "unprocessed" not in ann.metadata


def test_extract_statement_is_order_independent():
    frames = [
        collect_frame(),
        SrlFrame("s1", 16, 6, "share", [SrlArgument("ARG0", 5, 6)]),
    ]
    forward = extract_statement(frames, DEFAULT_LEXICON)
    backward = extract_statement(list(reversed(frames)), DEFAULT_LEXICON)
    assert forward.spans == backward.spans


def test_extract_statement_flags_untracked_only_statements():
    frames = [
        SrlFrame("s6", 6, 1, "visit", [SrlArgument("ARG0", 0, 1)]),
        SrlFrame("s6", 6, 3, "sell", [SrlArgument("ARG1", 4, 6)]),
    ]
    ann = extract_statement(frames, DEFAULT_LEXICON)
    assert ann.spans == []
    assert ann.metadata["unprocessed"] == "true"


def test_extract_statement_rejects_mixed_ids():
    frames = [collect_frame(), SrlFrame("other", 4, 1, "share", [])]
    with pytest.raises(FormatError):
        extract_statement(frames, DEFAULT_LEXICON)


def test_no_actor_or_subject_spans_ever():
    rng = random.Random(4)
    for _ in range(100):
        frame = random_tracked_frame(rng, "sX")
        ann = map_frame(frame, DEFAULT_LEXICON)
        for span in ann.spans:
            assert span.param not in (CIParam.ACTOR, CIParam.SUBJECT)


def random_tracked_frame(rng: random.Random, statement_id: str) -> SrlFrame:
    n = rng.randint(6, 14)
    verb = rng.randrange(n)
    lemma = rng.choice(sorted(DEFAULT_LEXICON.sending | DEFAULT_LEXICON.receiving))
    roles = ["ARG0", "ARG1", "ARG2", "ARG3", "C-ARG1", "ARGM-TMP", "ARGM-ADV",
             "ARGM-MNR", "ARGM-PNC", "ARGM-CAU"]
    arguments = []
    for _ in range(rng.randint(0, 4)):
        if verb > 0 and (verb == n - 1 or rng.random() < 0.5):
            start = rng.randrange(0, verb)
            end = rng.randint(start + 1, verb)
        elif verb < n - 1:
            start = rng.randint(verb + 1, n - 1)
            end = rng.randint(start + 1, n)
        else:
            continue
        arguments.append(SrlArgument(rng.choice(roles), start, end))
    return SrlFrame(statement_id, n, verb, lemma, arguments)


def test_swapping_verb_class_swaps_sender_and_receiver():
    moved = VerbLexicon(
        sending=DEFAULT_LEXICON.sending | {"collect"},
        receiving=DEFAULT_LEXICON.receiving - {"collect"},
    )
    rng = random.Random(11)
    for _ in range(50):
        frame = random_tracked_frame(rng, "sX")
        if frame.verb_lemma != "collect":
            continue
        before = map_frame(frame, DEFAULT_LEXICON)
        after = map_frame(frame, moved)
        as_map = lambda ann: {
            (s.start, s.end, s.source_tag): s.param for s in ann.spans
        }
        first, second = as_map(before), as_map(after)
        assert first.keys() == second.keys()
        swap = {
            CIParam.SENDER: CIParam.RECEIVER,
            CIParam.RECEIVER: CIParam.SENDER,
        }
        for key, param in first.items():
            assert second[key] == swap.get(param, param)


def test_lexicon_validates_overlap_and_role_maps():
    with pytest.raises(FormatError):
        VerbLexicon(sending=frozenset({"share"}), receiving=frozenset({"share"}))
    with pytest.raises(FormatError):
        VerbLexicon(
            sending=frozenset({"share"}),
            receiving=frozenset({"collect"}),
            sending_roles={"ARG0": CIParam.SENDER, "ARG2": CIParam.SENDER},
        )


def test_lexicon_loads_from_toml_with_role_override(tmp_path):
    path = tmp_path / "verbs.toml"
    path.write_text(
        """
sending = ["share", "send"]
receiving = ["collect"]
assumed_subject = "user"

[sending_roles]
ARG2 = "Sender"
ARG0 = "Receiver"
"""
    )
    lexicon = load_lexicon(path)
    assert classify_verb("send", lexicon) is VerbClass.SENDING
    assert lexicon.sending_roles == {
        "ARG2": CIParam.SENDER,
        "ARG0": CIParam.RECEIVER,
    }
    # default receiving map untouched
    assert lexicon.receiving_roles["ARG0"] is CIParam.RECEIVER
