"""Redundant-verb filtering for SRL-derived annotations.

A tracked verb whose token lies inside another tracked verb's
transmission-principle argument is redundant: its frame repeats, from inside
the condition clause, information the main predicate already carries.  The
filter discards a redundant frame's spans except those that overlap a
same-parameter span of a surviving frame.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

from ci_extractor.corpus import CIParam, FlowAnnotation, Span
from ci_extractor.errors import FormatError
from ci_extractor.interchange import SrlFrame
from ci_extractor.srlmap import (
    DEFAULT_LEXICON,
    VerbClass,
    VerbLexicon,
    classify_verb,
    map_frame,
    sort_frames,
)


@dataclass(frozen=True)
class RedundantVerb:
    verb_index: int
    verb_lemma: str
    containing_verb_index: int


@dataclass
class RefinementReport:
    """Audit trail: which frames were discarded and where their spans went."""

    statement_id: str
    redundant_verbs: list[RedundantVerb] = field(default_factory=list)
    dropped_spans: list[Span] = field(default_factory=list)
    kept_overlapping_spans: list[Span] = field(default_factory=list)

    def to_dict(self) -> dict:
        def span_dict(span: Span) -> dict:
            return {
                "start": span.start,
                "end": span.end,
                "param": span.param.value,
                "source_tag": span.source_tag,
            }

        return {
            "statement_id": self.statement_id,
            "redundant_verbs": [
                {
                    "verb_index": v.verb_index,
                    "verb_lemma": v.verb_lemma,
                    "containing_verb_index": v.containing_verb_index,
                }
                for v in self.redundant_verbs
            ],
            "dropped_spans": [span_dict(s) for s in self.dropped_spans],
            "kept_overlapping_spans": [span_dict(s) for s in self.kept_overlapping_spans],
        }


def write_refinement_reports(reports: list[RefinementReport], path: str | Path) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as handle:
        for report in reports:
            handle.write(json.dumps(report.to_dict(), ensure_ascii=False) + "\n")


def _tp_spans(frame: SrlFrame, lexicon: VerbLexicon) -> list[tuple[int, int]]:
    return [
        (a.start, a.end) for a in frame.arguments if a.role in lexicon.tp_roles
    ]


def _contained(frame: SrlFrame, container: SrlFrame, lexicon: VerbLexicon) -> bool:
    return any(
        start <= frame.verb_index < end for start, end in _tp_spans(container, lexicon)
    )


def find_redundant_frames(
    frames: list[SrlFrame],
    lexicon: VerbLexicon = DEFAULT_LEXICON,
    fixpoint: bool = False,
) -> set[int]:
    """Verb indices of redundant frames.

    Default is a single containment pass: a frame inside a redundant frame's
    TP is still redundant.  With ``fixpoint=True`` only containment by a
    surviving frame counts, so a chain discards every second link.  Mutual
    containment keeps the frame with the smaller verb index either way.
    """
    for frame in frames:
        if classify_verb(frame.verb_lemma, lexicon) is VerbClass.UNTRACKED:
            raise FormatError(
                f"{frame.statement_id}: untracked verb {frame.verb_lemma!r}; "
                "filter frames before redundancy detection"
            )
    ids = {f.statement_id for f in frames}
    if len(ids) > 1:
        raise FormatError(f"frames from multiple statements: {sorted(ids)}")
    ordered = sort_frames(frames)

    if not fixpoint:
        redundant = {
            f.verb_index
            for f in ordered
            if any(g is not f and _contained(f, g, lexicon) for g in ordered)
        }
        for i, f in enumerate(ordered):
            for g in ordered[i + 1 :]:
                if (
                    f.verb_index in redundant
                    and g.verb_index in redundant
                    and _contained(f, g, lexicon)
                    and _contained(g, f, lexicon)
                ):
                    redundant.discard(min(f.verb_index, g.verb_index))
        return redundant

    active = list(ordered)
    while True:
        contained = [
            f for f in active
            if any(g is not f and _contained(f, g, lexicon) for g in active)
        ]
        if not contained:
            break
        survivors = [f for f in active if f not in contained]
        removable = [
            f for f in contained
            if any(_contained(f, g, lexicon) for g in survivors)
        ]
        if removable:
            active = [f for f in active if f not in removable]
        else:
            # mutual/cyclic containment: the largest verb index goes
            loser = max(contained, key=lambda f: f.verb_index)
            active = [f for f in active if f is not loser]
    return {f.verb_index for f in ordered} - {f.verb_index for f in active}


def refine(
    frames: list[SrlFrame],
    lexicon: VerbLexicon = DEFAULT_LEXICON,
    fixpoint: bool = False,
) -> tuple[FlowAnnotation, RefinementReport]:
    """Drop redundant frames' spans, keeping only overlapping survivors.

    A redundant frame's span is kept when it shares at least one token with a
    same-parameter span from a non-redundant frame.  Untracked frames are
    ignored, as in plain extraction.
    """
    if not frames:
        raise FormatError("no frames given")
    ids = {f.statement_id for f in frames}
    if len(ids) > 1:
        raise FormatError(f"frames from multiple statements: {sorted(ids)}")
    statement_id = frames[0].statement_id
    tracked = [
        f for f in sort_frames(frames)
        if classify_verb(f.verb_lemma, lexicon) is not VerbClass.UNTRACKED
    ]
    report = RefinementReport(statement_id=statement_id)
    if not tracked:
        annotation = FlowAnnotation(
            statement_id=statement_id,
            method="ci-srl",
            spans=[],
            metadata={"unprocessed": "true"},
        )
        return annotation, report

    redundant_indices = find_redundant_frames(tracked, lexicon, fixpoint=fixpoint)
    survivors = [f for f in tracked if f.verb_index not in redundant_indices]
    redundant = [f for f in tracked if f.verb_index in redundant_indices]

    for frame in redundant:
        container = next(
            g for g in tracked if g is not frame and _contained(frame, g, lexicon)
        )
        report.redundant_verbs.append(
            RedundantVerb(frame.verb_index, frame.verb_lemma, container.verb_index)
        )

    spans: list[Span] = []
    seen: set[tuple[CIParam, int, int]] = set()
    for frame in survivors:
        for span in map_frame(frame, lexicon).spans:
            key = (span.param, span.start, span.end)
            if key not in seen:
                seen.add(key)
                spans.append(span)
    base = list(spans)

    for frame in redundant:
        for span in map_frame(frame, lexicon).spans:
            overlaps = any(
                s.param == span.param and span.overlap(s) > 0 for s in base
            )
            if overlaps:
                report.kept_overlapping_spans.append(span)
                key = (span.param, span.start, span.end)
                if key not in seen:
                    seen.add(key)
                    spans.append(span)
            else:
                report.dropped_spans.append(span)

    annotation = FlowAnnotation(
        statement_id=statement_id,
        method="ci-srl",
        spans=spans,
        metadata={"assumed_subject": lexicon.assumed_subject},
    )
    return annotation, report
