"""Map SRL frames to CI parameter spans using a verb lexicon.

The lexicon splits tracked predicates into sending and receiving classes;
the class decides which core argument is the sender and which the receiver.
Attribute and transmission-principle roles are class-independent.  No
subject span is ever produced: statements are assumed to be about the user,
recorded as annotation metadata.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path

from ci_extractor.config import load_toml
from ci_extractor.corpus import CIParam, FlowAnnotation, Span
from ci_extractor.errors import FormatError
from ci_extractor.interchange import SrlFrame


class VerbClass(Enum):
    SENDING = "sending"
    RECEIVING = "receiving"
    UNTRACKED = "untracked"


def _default_sending_roles() -> dict[str, CIParam]:
    return {"ARG0": CIParam.SENDER, "ARG2": CIParam.RECEIVER}


def _default_receiving_roles() -> dict[str, CIParam]:
    return {"ARG0": CIParam.RECEIVER, "ARG2": CIParam.SENDER}


@dataclass(frozen=True)
class VerbLexicon:
    """Verb classes plus per-class agent-role maps.

    The default role maps follow the PropBank glosses (the agent of a
    receiving verb such as "collect" is the recipient of the information);
    both maps are configurable for the opposite reading.
    """

    sending: frozenset[str] = frozenset(
        {"send", "share", "transmit", "transfer", "disclose", "provide"}
    )
    receiving: frozenset[str] = frozenset({"collect", "gather", "receive", "acquire"})
    sending_roles: dict[str, CIParam] = field(default_factory=_default_sending_roles)
    receiving_roles: dict[str, CIParam] = field(default_factory=_default_receiving_roles)
    attribute_roles: frozenset[str] = frozenset({"ARG1", "C-ARG1"})
    tp_roles: frozenset[str] = frozenset(
        {"ARGM-TMP", "ARGM-ADV", "ARGM-MNR", "ARGM-PNC", "ARGM-CAU"}
    )
    assumed_subject: str = "user"

    def __post_init__(self) -> None:
        overlap = self.sending & self.receiving
        if overlap:
            raise FormatError(f"verbs in both classes: {sorted(overlap)}")
        for name, roles in (("sending", self.sending_roles),
                            ("receiving", self.receiving_roles)):
            params = list(roles.values())
            if sorted(p.value for p in params) != ["Receiver", "Sender"]:
                raise FormatError(
                    f"{name} role map must assign Sender and Receiver to "
                    f"distinct roles, got {roles}"
                )

    def roles_for(self, verb_class: VerbClass) -> dict[str, CIParam]:
        if verb_class is VerbClass.SENDING:
            return self.sending_roles
        if verb_class is VerbClass.RECEIVING:
            return self.receiving_roles
        raise FormatError("untracked verbs have no role map")


DEFAULT_LEXICON = VerbLexicon()


def load_lexicon(path: str | Path) -> VerbLexicon:
    data = load_toml(path)
    kwargs: dict = {}
    if "sending" in data:
        kwargs["sending"] = frozenset(w.lower() for w in data["sending"])
    if "receiving" in data:
        kwargs["receiving"] = frozenset(w.lower() for w in data["receiving"])
    for key in ("sending_roles", "receiving_roles"):
        if key in data:
            try:
                kwargs[key] = {role: CIParam(param) for role, param in data[key].items()}
            except ValueError as exc:
                raise FormatError(f"{path}: bad {key}: {exc}") from exc
    if "attribute_roles" in data:
        kwargs["attribute_roles"] = frozenset(data["attribute_roles"])
    if "tp_roles" in data:
        kwargs["tp_roles"] = frozenset(data["tp_roles"])
    if "assumed_subject" in data:
        kwargs["assumed_subject"] = str(data["assumed_subject"])
    return VerbLexicon(**kwargs)


def classify_verb(lemma: str, lexicon: VerbLexicon = DEFAULT_LEXICON) -> VerbClass:
    lowered = lemma.lower()
    if lowered in lexicon.sending:
        return VerbClass.SENDING
    if lowered in lexicon.receiving:
        return VerbClass.RECEIVING
    return VerbClass.UNTRACKED


def map_frame(frame: SrlFrame, lexicon: VerbLexicon = DEFAULT_LEXICON) -> FlowAnnotation:
    """CI spans of one tracked frame; untracked predicates are an error."""
    verb_class = classify_verb(frame.verb_lemma, lexicon)
    if verb_class is VerbClass.UNTRACKED:
        raise FormatError(
            f"{frame.statement_id}: verb {frame.verb_lemma!r} is not tracked"
        )
    agent_roles = lexicon.roles_for(verb_class)
    spans: list[Span] = []
    seen: set[tuple[CIParam, int, int]] = set()
    for argument in frame.arguments:
        if argument.role in lexicon.attribute_roles:
            param = CIParam.ATTRIBUTE
        elif argument.role in lexicon.tp_roles:
            param = CIParam.TP
        elif argument.role in agent_roles:
            param = agent_roles[argument.role]
        else:
            continue
        key = (param, argument.start, argument.end)
        if key in seen:
            continue
        seen.add(key)
        spans.append(
            Span(
                start=argument.start,
                end=argument.end,
                param=param,
                source_tag=f"{frame.verb_lemma}:{argument.role}",
            )
        )
    return FlowAnnotation(
        statement_id=frame.statement_id,
        method="srl",
        spans=spans,
        metadata={"assumed_subject": lexicon.assumed_subject},
    )


def sort_frames(frames: list[SrlFrame]) -> list[SrlFrame]:
    return sorted(frames, key=lambda f: (f.verb_index, f.verb_lemma))


def extract_statement(
    frames: list[SrlFrame], lexicon: VerbLexicon = DEFAULT_LEXICON
) -> FlowAnnotation:
    """Union of span output over all tracked frames of one statement.

    Statements whose frames are all untracked come back empty with an
    ``unprocessed`` metadata marker.
    """
    if not frames:
        raise FormatError("no frames given")
    ids = {f.statement_id for f in frames}
    if len(ids) > 1:
        raise FormatError(f"frames from multiple statements: {sorted(ids)}")
    tracked = [
        f for f in sort_frames(frames)
        if classify_verb(f.verb_lemma, lexicon) is not VerbClass.UNTRACKED
    ]
    if not tracked:
        return FlowAnnotation(
            statement_id=frames[0].statement_id,
            method="srl",
            spans=[],
            metadata={"unprocessed": "true"},
        )
    spans: list[Span] = []
    seen: set[tuple[CIParam, int, int]] = set()
    for frame in tracked:
        for span in map_frame(frame, lexicon).spans:
            key = (span.param, span.start, span.end)
            if key not in seen:
                seen.add(key)
                spans.append(span)
    return FlowAnnotation(
        statement_id=frames[0].statement_id,
        method="srl",
        spans=spans,
        metadata={"assumed_subject": lexicon.assumed_subject},
    )
