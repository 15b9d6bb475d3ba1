#!/usr/bin/env python3
"""Regenerate the bundled fixture corpus under fixtures/.

Sentences are assembled from clause structures, so the segment files, gold
annotations, dependency trees, and SRL frames stay mutually consistent.  The
gold labels come from the structure definitions (who sends what to whom),
not from running any mapper.  Output is deterministic; run from the repo
root after changing the inventory below.
"""

from __future__ import annotations

import json
import sys
from dataclasses import dataclass
from pathlib import Path

REPO = Path(__file__).resolve().parent.parent
sys.path.insert(0, str(REPO / "src"))

from ci_extractor.corpus import (  # noqa: E402
    CIParam,
    FlowAnnotation,
    Span,
    Token,
    ingest_corpus,
    spans_to_tags,
    write_annotations,
    write_statements,
    tokenize,
)
from ci_extractor.interchange import (  # noqa: E402
    ROOT,
    DepTree,
    SrlArgument,
    SrlFrame,
    TaggedSentence,
    write_conll2003,
    write_conllu,
    write_srl_frames,
)

FIXTURES = REPO / "fixtures"

POSS = {"your", "our", "their", "Your", "Our", "Their"}
DET = {"the", "a", "an", "The", "new"}
ADJ = {
    "personal", "technical", "aggregated", "demographic", "anonymized",
    "mobile", "online", "actual", "emergency", "sponsored", "embedded",
    "marketing", "shared", "applicable",
}
PRONOUN_HEADS = {"we", "you", "they", "us", "them", "it"}

#: surface verb form -> lemma, for every verb appearing in the inventory
LEMMAS = {
    "collect": "collect", "collects": "collect", "collected": "collect",
    "gather": "gather", "gathered": "gather",
    "receive": "receive", "receives": "receive",
    "acquire": "acquire", "acquired": "acquire",
    "share": "share", "shares": "share", "sharing": "share", "shared": "share",
    "send": "send", "disclose": "disclose", "disclosed": "disclose",
    "transfer": "transfer", "transferred": "transfer",
    "transmit": "transmit", "transmitted": "transmit",
    "provide": "provide", "sell": "sell", "rent": "rent",
    "store": "store", "retained": "retain", "contact": "contact",
    "register": "register", "visit": "visit", "use": "use", "make": "make",
    "create": "create", "view": "view", "request": "request",
    "submit": "submit", "review": "review", "enable": "enable",
    "place": "place", "violate": "violate", "crashes": "crash",
    "starts": "start", "fail": "fail", "browse": "browse",
    "customize": "customize", "follow": "follow", "delete": "delete",
    "interact": "interact", "complete": "complete", "link": "link",
    "subscribe": "subscribe",
}


@dataclass
class NP:
    words: tuple[str, ...]


@dataclass
class PP:
    prep: str
    np: NP
    role: str | None = "ARG2"  # SRL role carried by the whole phrase


@dataclass
class Clause:
    subject: NP
    verb: str
    obj: NP | None = None
    pp: PP | None = None
    aux: tuple[str, ...] = ()
    passive: bool = False
    agent: NP | None = None  # passive by-phrase


@dataclass
class Sent:
    main: Clause
    conn: str | None = None
    sub: Clause | None = None
    #: (CIParam value, part name) pairs; parts are filled in by the builder
    gold: tuple[tuple[str, str], ...] = ()
    valid: bool = True


@dataclass
class Built:
    words: list[str]
    heads: list[int]
    deps: list[str]
    pos: list[str]
    frames: list[SrlFrame]
    parts: dict[str, tuple[int, int]]


def np_pos(word: str, is_head: bool) -> str:
    if word in POSS:
        return "PRON"
    if word in DET:
        return "DET"
    if word in ADJ:
        return "ADJ"
    if is_head and word.lower() in PRONOUN_HEADS:
        return "PRON"
    if word.lower() in PRONOUN_HEADS:
        return "PRON"
    return "NOUN" if is_head else "NOUN"


class SentenceBuilder:
    def __init__(self) -> None:
        self.words: list[str] = []
        self.heads: list[int] = []
        self.deps: list[str] = []
        self.pos: list[str] = []

    def add(self, word: str, head: int, dep: str, pos: str) -> int:
        self.words.append(word)
        self.heads.append(head)
        self.deps.append(dep)
        self.pos.append(pos)
        return len(self.words) - 1

    def add_np(self, np: NP, attach: int, rel: str) -> tuple[int, int]:
        start = len(self.words)
        head = start + len(np.words) - 1
        for i, word in enumerate(np.words):
            if start + i == head:
                self.add(word, attach, rel, np_pos(word, True))
                continue
            if word in POSS:
                dep = "poss"
            elif word in DET:
                dep = "det"
            elif word in ADJ:
                dep = "amod"
            else:
                dep = "compound"
            self.add(word, head, dep, np_pos(word, False))
        return start, head

    def add_clause(self, clause: Clause, attach: int, rel: str) -> dict:
        info: dict = {}
        subj_start = len(self.words)
        subj_rel = "nsubjpass" if clause.passive else "nsubj"
        verb_index_guess = subj_start + len(clause.subject.words) + len(clause.aux)
        _, subj_head = self.add_np(clause.subject, verb_index_guess, subj_rel)
        info["subject"] = (subj_start, subj_head + 1)
        for i, aux in enumerate(clause.aux):
            is_passive_aux = clause.passive and i == len(clause.aux) - 1
            self.add(aux, verb_index_guess, "auxpass" if is_passive_aux else "aux", "AUX")
        verb_index = self.add(clause.verb, attach, rel, "VERB")
        assert verb_index == verb_index_guess
        info["verb"] = verb_index
        if clause.obj is not None:
            start, head = self.add_np(clause.obj, verb_index, "dobj")
            info["object"] = (start, head + 1)
        if clause.agent is not None:
            by_index = self.add("by", verb_index, "agent", "ADP")
            start, head = self.add_np(clause.agent, by_index, "pobj")
            info["agent"] = (by_index, head + 1)
            info["agent_np"] = (start, head + 1)
        if clause.pp is not None:
            prep_index = self.add(clause.pp.prep, verb_index, "prep", "ADP")
            start, head = self.add_np(clause.pp.np, prep_index, "pobj")
            info["pp"] = (prep_index, head + 1)
            info["pp_np"] = (start, head + 1)
        return info


def build_sentence(spec: Sent) -> Built:
    builder = SentenceBuilder()
    main = builder.add_clause(spec.main, ROOT, "root")
    parts: dict[str, tuple[int, int]] = {}
    parts["ms"] = main["subject"]
    if "object" in main:
        parts["mo"] = main["object"]
    if "pp" in main:
        parts["mpp"] = main["pp"]
        parts["mppn"] = main["pp_np"]
    if "agent" in main:
        parts["magent"] = main["agent"]
        parts["magent_np"] = main["agent_np"]

    sub = None
    if spec.sub is not None:
        conn_index = len(builder.words)
        conn_dep = "advmod" if spec.conn == "when" else "mark"
        conn_head_guess = (
            conn_index + 1 + len(spec.sub.subject.words) + len(spec.sub.aux)
        )
        builder.add(spec.conn, conn_head_guess, conn_dep, "SCONJ")
        sub = builder.add_clause(spec.sub, main["verb"], "advcl")
        assert sub["verb"] == conn_head_guess
        parts["conn"] = (conn_index, conn_index + 1)
        parts["tp"] = (conn_index, len(builder.words))
        parts["ss"] = sub["subject"]
        if "object" in sub:
            parts["so"] = sub["object"]
        if "pp" in sub:
            parts["spp"] = sub["pp"]
            parts["sppn"] = sub["pp_np"]

    builder.add(".", main["verb"], "punct", "PUNCT")
    # sentence casing: parts and spans are index-based, so this is safe
    if builder.words[0][0].islower():
        builder.words[0] = builder.words[0][0].upper() + builder.words[0][1:]

    for prefix, clause_info in (("m", main), ("s", sub)):
        if clause_info is None:
            continue
        span = clause_info.get("object")
        if span is not None:
            first = builder.words[span[0]]
            if first in POSS:
                parts[f"{prefix}o_poss"] = (span[0], span[0] + 1)
        span = clause_info["subject"]
        first = builder.words[span[0]]
        if first in POSS:
            parts[f"{prefix}s_poss"] = (span[0], span[0] + 1)

    frames = build_frames(spec, main, sub, parts, len(builder.words))
    return Built(
        words=builder.words,
        heads=builder.heads,
        deps=builder.deps,
        pos=builder.pos,
        frames=frames,
        parts=parts,
    )


def build_frames(spec, main, sub, parts, sentence_len) -> list[SrlFrame]:
    conn_role = "ARGM-ADV" if spec.conn == "if" else "ARGM-TMP"
    frames = []

    def clause_frame(clause: Clause, info: dict, extra: list[SrlArgument]):
        arguments = []
        if clause.passive:
            arguments.append(SrlArgument("ARG1", *info["subject"]))
            if "agent" in info:
                arguments.append(SrlArgument("ARG0", *info["agent"]))
        else:
            arguments.append(SrlArgument("ARG0", *info["subject"]))
            if "object" in info:
                arguments.append(SrlArgument("ARG1", *info["object"]))
        if "pp" in info and clause.pp is not None and clause.pp.role:
            arguments.append(SrlArgument(clause.pp.role, *info["pp"]))
        arguments.extend(extra)
        lemma = LEMMAS[clause.verb]
        return SrlFrame("", sentence_len, info["verb"], lemma, arguments)

    main_extra = []
    if sub is not None:
        main_extra.append(SrlArgument(conn_role, *parts["tp"]))
    frames.append(clause_frame(spec.main, main, main_extra))
    if sub is not None:
        sub_extra = [SrlArgument(conn_role, *parts["conn"])]
        frames.append(clause_frame(spec.sub, sub, sub_extra))
    return frames


# ---------------------------------------------------------------------------
# Inventory

def np(*words):
    return NP(tuple(words))


def sent(main, conn=None, sub=None, gold=(), valid=True):
    return Sent(main=main, conn=conn, sub=sub, gold=tuple(gold), valid=valid)


WE = np("We")
YOU = np("you")

FPC = "First Party Collection/Use"
TPS = "Third Party Sharing/Collection"
RET = "Data Retention"

# (policy, [(segment label, [Sent or raw-text str])])
INVENTORY: list[tuple[str, list[tuple[str, list]]]] = [
    ("alpha", [
        (FPC, [
            sent(Clause(WE, "collect", np("your", "email", "address")),
                 "when", Clause(YOU, "register"),
                 gold=[("Receiver", "ms"), ("Attribute", "mo"),
                       ("Subject", "mo_poss"), ("TP", "tp")]),
            sent(Clause(WE, "collect", np("your", "location", "data")),
                 "when", Clause(YOU, "use", np("our", "services")),
                 gold=[("Receiver", "ms"), ("Attribute", "mo"),
                       ("Subject", "mo_poss"), ("TP", "tp")]),
            sent(Clause(WE, "gather", np("usage", "data")),
                 "when", Clause(YOU, "visit", np("our", "websites")),
                 gold=[("Receiver", "ms"), ("Attribute", "mo"), ("TP", "tp")]),
        ]),
        (FPC, [
            sent(Clause(WE, "receive", np("payment", "information"),
                        PP("from", np("payment", "processors"))),
                 "when", Clause(YOU, "make", np("a", "purchase")),
                 gold=[("Receiver", "ms"), ("Attribute", "mo"),
                       ("Sender", "mppn"), ("TP", "tp")]),
            sent(Clause(WE, "acquire", np("demographic", "information"),
                        PP("from", np("data", "brokers"))),
                 gold=[("Receiver", "ms"), ("Attribute", "mo"),
                       ("Sender", "mppn")]),
            sent(Clause(WE, "collect", np("your", "contact", "details")),
                 "if", Clause(YOU, "contact", np("support")),
                 gold=[("Receiver", "ms"), ("Attribute", "mo"),
                       ("Subject", "mo_poss"), ("TP", "tp")]),
            sent(Clause(WE, "receive", np("crash", "reports"),
                        PP("from", np("your", "device"))),
                 "when", Clause(np("the", "application"), "crashes"),
                 gold=[("Receiver", "ms"), ("Attribute", "mo"),
                       ("Sender", "mppn"), ("TP", "tp")]),
            sent(Clause(WE, "gather", np("your", "browsing", "history")),
                 "when", Clause(YOU, "browse", np("our", "websites")),
                 gold=[("Receiver", "ms"), ("Attribute", "mo"),
                       ("Subject", "mo_poss"), ("TP", "tp")]),
        ]),
        (RET, [
            sent(Clause(WE, "store", np("account", "information"),
                        PP("for", np("five", "years"), role=None)),
                 valid=False),
            sent(Clause(YOU, "contact", np("our", "support", "team"),
                        PP("at", np("any", "time"), role=None), aux=("can",)),
                 valid=False),
        ]),
        ("Policy Change", ["We may update this policy from time to time."]),
    ]),
    ("bravo", [
        (TPS, [
            sent(Clause(WE, "share", np("your", "personal", "information"),
                        PP("with", np("advertising", "partners"))),
                 "when", Clause(YOU, "use", np("our", "mobile", "applications")),
                 gold=[("Sender", "ms"), ("Attribute", "mo"),
                       ("Subject", "mo_poss"), ("Receiver", "mppn"), ("TP", "tp")]),
            sent(Clause(WE, "disclose", np("your", "contact", "details"),
                        PP("to", np("service", "providers"))),
                 "if", Clause(YOU, "contact", np("support")),
                 gold=[("Sender", "ms"), ("Attribute", "mo"),
                       ("Subject", "mo_poss"), ("Receiver", "mppn"), ("TP", "tp")]),
            sent(Clause(WE, "transfer", np("payment", "information"),
                        PP("to", np("payment", "processors"))),
                 "when", Clause(YOU, "make", np("a", "purchase")),
                 gold=[("Sender", "ms"), ("Attribute", "mo"),
                       ("Receiver", "mpp"), ("TP", "tp")]),
        ]),
        (TPS, [
            sent(Clause(WE, "provide", np("aggregated", "statistics"),
                        PP("to", np("advertisers"))),
                 gold=[("Sender", "ms"), ("Attribute", "mo"),
                       ("Receiver", "mppn")]),
            sent(Clause(WE, "sell", np("anonymized", "usage", "data"),
                        PP("to", np("research", "firms"))),
                 gold=[("Sender", "ms"), ("Attribute", "mo"),
                       ("Receiver", "mppn")]),
        ]),
        (FPC, [
            sent(Clause(WE, "collect", np("technical", "information")),
                 "when", Clause(YOU, "visit", np("our", "websites")),
                 gold=[("Receiver", "ms"), ("Attribute", "mo"), ("TP", "tp")]),
            sent(Clause(np("Our", "partners"), "share", np("usage", "data"),
                        PP("with", np("us"))),
                 "when", Clause(YOU, "use", np("their", "services")),
                 gold=[("Sender", "ms"), ("Attribute", "mo"),
                       ("Receiver", "mppn"), ("TP", "tp")]),
            sent(Clause(WE, "send", np("marketing", "emails"),
                        PP("to", np("your", "email", "address"))),
                 "if", Clause(YOU, "subscribe", None,
                              PP("to", np("updates"), role=None)),
                 gold=[("Sender", "ms"), ("Attribute", "mo"),
                       ("Receiver", "mppn"), ("TP", "tp")]),
            sent(Clause(np("Our", "affiliates"), "provide",
                        np("account", "information"), PP("to", np("us"))),
                 "when", Clause(YOU, "link", np("accounts")),
                 gold=[("Sender", "ms"), ("Attribute", "mo"),
                       ("Receiver", "mppn"), ("TP", "tp")]),
            sent(Clause(WE, "transmit", np("log", "data"),
                        PP("to", np("our", "servers"))),
                 "when", Clause(np("the", "application"), "starts"),
                 gold=[("Sender", "ms"), ("Attribute", "mo"),
                       ("Receiver", "mppn"), ("TP", "tp")]),
        ]),
        ("User Choice/Control", ["You may opt out of marketing emails."]),
    ]),
    ("cobalt", [
        (FPC, [
            sent(Clause(np("Your", "personal", "information"), "collected",
                        aux=("is",), passive=True, agent=np("our", "servers")),
                 "when", Clause(YOU, "create", np("an", "account")),
                 gold=[("Attribute", "ms"), ("Subject", "ms_poss"),
                       ("Receiver", "magent_np"), ("TP", "tp")]),
            sent(Clause(np("Your", "browsing", "history"), "gathered",
                        aux=("is",), passive=True,
                        agent=np("our", "analytics", "tools")),
                 "when", Clause(YOU, "visit", np("our", "websites")),
                 gold=[("Attribute", "ms"), ("Subject", "ms_poss"),
                       ("Receiver", "magent_np"), ("TP", "tp")]),
            sent(Clause(np("Device", "identifiers"), "collected",
                        aux=("are",), passive=True,
                        agent=np("our", "mobile", "applications")),
                 gold=[("Attribute", "ms"), ("Receiver", "magent_np")]),
        ]),
        (TPS, [
            sent(Clause(np("Your", "photos"), "shared", aux=("are",),
                        passive=True, pp=PP("with", np("our", "affiliates"))),
                 "if", Clause(YOU, "enable", np("cloud", "backup")),
                 gold=[("Attribute", "ms"), ("Subject", "ms_poss"),
                       ("Receiver", "mppn"), ("TP", "tp")]),
            sent(Clause(np("Log", "data"), "transmitted", aux=("is",),
                        passive=True, pp=PP("to", np("our", "servers"))),
                 "when", Clause(YOU, "use", np("our", "services")),
                 gold=[("Attribute", "ms"), ("Receiver", "mppn"), ("TP", "tp")]),
            sent(Clause(np("Your", "personal", "information"), "transferred",
                        aux=("is",), passive=True,
                        pp=PP("to", np("new", "owners"))),
                 "if", Clause(np("our", "company"), "acquired", aux=("is",),
                              passive=True),
                 gold=[("Attribute", "ms"), ("Subject", "ms_poss"),
                       ("Receiver", "mppn"), ("TP", "tp")]),
            sent(Clause(np("Usage", "data"), "acquired", aux=("is",),
                        passive=True, agent=np("advertising", "partners")),
                 "when", Clause(YOU, "view", np("advertisements")),
                 gold=[("Attribute", "ms"), ("Receiver", "magent_np"),
                       ("TP", "tp")]),
            sent(Clause(np("Your", "contact", "details"), "disclosed",
                        aux=("are",), passive=True,
                        pp=PP("to", np("delivery", "partners"))),
                 "when", Clause(YOU, "place", np("an", "order")),
                 gold=[("Attribute", "ms"), ("Subject", "ms_poss"),
                       ("Receiver", "mppn"), ("TP", "tp")]),
        ]),
        (RET, [
            sent(Clause(np("Account", "information"), "retained", aux=("is",),
                        passive=True,
                        pp=PP("for", np("two", "years"), role=None)),
                 valid=False),
            sent(Clause(WE, "rent", np("advertising", "space"),
                        PP("to", np("sponsors"))),
                 valid=False),
        ]),
    ]),
    ("delta", [
        (FPC, [
            sent(Clause(WE, "collect", np("your", "personal", "information")),
                 "when", Clause(YOU, "sharing", np("your", "post"), aux=("are",)),
                 gold=[("Receiver", "ms"), ("Attribute", "mo"),
                       ("Subject", "mo_poss"), ("TP", "tp")]),
            sent(Clause(WE, "collect", np("your", "photos")),
                 "when", Clause(YOU, "send", np("your", "photos"),
                                PP("to", np("us"))),
                 gold=[("Receiver", "ms"), ("Attribute", "mo"),
                       ("Subject", "mo_poss"), ("TP", "tp"), ("Sender", "ss")]),
            sent(Clause(WE, "gather", np("usage", "data")),
                 "when", Clause(YOU, "share", np("files"),
                                PP("with", np("friends"))),
                 gold=[("Receiver", "ms"), ("Attribute", "mo"), ("TP", "tp")]),
        ]),
        (FPC, [
            sent(Clause(WE, "collect", np("feedback")),
                 "if", Clause(YOU, "provide", np("feedback"),
                              PP("to", np("us"))),
                 gold=[("Receiver", "ms"), ("Attribute", "mo"), ("TP", "tp")]),
            sent(Clause(WE, "receive", np("log", "data")),
                 "when", Clause(YOU, "sharing", np("updates"), aux=("are",)),
                 gold=[("Receiver", "ms"), ("Attribute", "mo"), ("TP", "tp")]),
            sent(Clause(WE, "collect", np("your", "personal", "information")),
                 "when", Clause(YOU, "sharing", np("photos"), aux=("are",),
                                pp=PP("with", np("friends"))),
                 gold=[("Receiver", "ms"), ("Attribute", "mo"),
                       ("Subject", "mo_poss"), ("TP", "tp")]),
            sent(Clause(WE, "acquire", np("transaction", "records")),
                 "when", Clause(YOU, "transfer", np("funds"),
                                PP("to", np("merchants"))),
                 gold=[("Receiver", "ms"), ("Attribute", "mo"), ("TP", "tp")]),
            sent(Clause(np("Our", "systems"), "receive",
                        np("diagnostic", "data")),
                 "if", Clause(YOU, "enable", np("telemetry")),
                 gold=[("Receiver", "ms"), ("Attribute", "mo"), ("TP", "tp")]),
        ]),
        (TPS, [
            sent(Clause(WE, "share", np("diagnostic", "reports"),
                        PP("with", np("developers"))),
                 "when", Clause(YOU, "submit", np("a", "crash", "report")),
                 gold=[("Sender", "ms"), ("Attribute", "mo"),
                       ("Receiver", "mppn"), ("TP", "tp")]),
            sent(Clause(WE, "share", np("crash", "statistics"),
                        PP("with", np("hardware", "vendors"))),
                 "when", Clause(np("devices"), "fail"),
                 gold=[("Sender", "ms"), ("Attribute", "mo"),
                       ("Receiver", "mppn"), ("TP", "tp")]),
            sent(Clause(YOU, "review", np("your", "information"),
                        PP("at", np("any", "time"), role=None), aux=("can",)),
                 valid=False),
        ]),
    ]),
    ("ember", [
        (FPC, [
            sent(Clause(WE, "collect", np("your", "phone", "number")),
                 "when", Clause(YOU, "create", np("an", "account")),
                 gold=[("Receiver", "ms"), ("Attribute", "mo"),
                       ("Subject", "mo_poss"), ("TP", "tp")]),
            sent(Clause(WE, "gather", np("technical", "information")),
                 "when", Clause(YOU, "use", np("our", "mobile", "applications")),
                 gold=[("Receiver", "ms"), ("Attribute", "mo"), ("TP", "tp")]),
            sent(Clause(np("Advertisers"), "receive",
                        np("demographic", "information"), PP("from", np("us"))),
                 "when", Clause(YOU, "view", np("sponsored", "content")),
                 gold=[("Receiver", "ms"), ("Attribute", "mo"),
                       ("Sender", "mppn"), ("TP", "tp")]),
            sent(Clause(WE, "acquire", np("your", "browsing", "history"),
                        PP("from", np("advertising", "partners"))),
                 gold=[("Receiver", "ms"), ("Attribute", "mo"),
                       ("Subject", "mo_poss"), ("Sender", "mppn")]),
            sent(Clause(WE, "collect", np("payment", "information")),
                 "when", Clause(YOU, "make", np("a", "purchase")),
                 gold=[("Receiver", "ms"), ("Attribute", "mo"), ("TP", "tp")]),
            sent(Clause(WE, "receive", np("your", "feedback")),
                 "when", Clause(YOU, "complete", np("surveys")),
                 gold=[("Receiver", "ms"), ("Attribute", "mo"),
                       ("Subject", "mo_poss"), ("TP", "tp")]),
        ]),
        (TPS, [
            sent(Clause(WE, "transmit", np("device", "identifiers"),
                        PP("to", np("analytics", "providers"))),
                 "when", Clause(YOU, "use", np("our", "services")),
                 gold=[("Sender", "ms"), ("Attribute", "mo"),
                       ("Receiver", "mpp"), ("TP", "tp")]),
            sent(Clause(WE, "share", np("your", "location", "data"),
                        PP("with", np("emergency", "services"))),
                 "if", Clause(YOU, "request", np("assistance")),
                 gold=[("Sender", "ms"), ("Attribute", "mo"),
                       ("Subject", "mo_poss"), ("Receiver", "mppn"), ("TP", "tp")]),
            sent(Clause(np("Third", "parties"), "gather", np("usage", "data")),
                 "when", Clause(YOU, "interact",
                                pp=PP("with", np("embedded", "content"),
                                      role=None)),
                 gold=[("Receiver", "ms"), ("Attribute", "mo"), ("TP", "tp")]),
            sent(Clause(WE, "disclose", np("incident", "reports"),
                        PP("to", np("regulators"))),
                 "when", Clause(np("regulators"), "request", np("them")),
                 gold=[("Sender", "ms"), ("Attribute", "mo"),
                       ("Receiver", "mppn"), ("TP", "tp")]),
        ]),
        (FPC, [
            # long colon-joined statement: stays one sentence by default and
            # ships with no parses or frames
            "There are two main types of information we collect about users "
            "of our online services: information that identifies you and "
            "information that relates to you.",
        ]),
        ("Policy Change", ["We will post any changes on this page."]),
    ]),
    ("flint", [
        (FPC, [
            sent(Clause(WE, "collect", np("account", "information")),
                 "when", Clause(YOU, "register"),
                 gold=[("Receiver", "ms"), ("Attribute", "mo"), ("TP", "tp")]),
            sent(Clause(WE, "store", np("your", "preferences"),
                        PP("on", np("your", "device"), role=None)),
                 valid=False),
            sent(Clause(WE, "collect", np("your", "preferences")),
                 "when", Clause(YOU, "customize", np("your", "profile")),
                 gold=[("Receiver", "ms"), ("Attribute", "mo"),
                       ("Subject", "mo_poss"), ("TP", "tp")]),
        ]),
        (TPS, [
            sent(Clause(WE, "disclose", np("usage", "data"),
                        PP("to", np("regulators"))),
                 "when", Clause(YOU, "violate", np("our", "terms")),
                 gold=[("Sender", "ms"), ("Attribute", "mo"),
                       ("Receiver", "mppn"), ("TP", "tp")]),
            sent(Clause(np("They"), "sell", np("your", "contact", "details"),
                        PP("to", np("marketing", "firms"))),
                 gold=[("Sender", "ms"), ("Attribute", "mo"),
                       ("Subject", "mo_poss"), ("Receiver", "mppn")]),
            sent(Clause(np("Our", "partners"), "receive", np("referral", "data"),
                        PP("from", np("us"))),
                 "when", Clause(YOU, "follow", np("shared", "links")),
                 gold=[("Receiver", "ms"), ("Attribute", "mo"),
                       ("Sender", "mppn"), ("TP", "tp")]),
            sent(Clause(YOU, "delete", np("your", "account"),
                        PP("at", np("any", "time"), role=None), aux=("may",)),
                 valid=False),
        ]),
    ]),
]

#: gold phrases for the colon-joined statement, located by word search
COLON_GOLD_PHRASES = [
    ("Attribute", "information that identifies you"),
    ("Attribute", "information that relates to you"),
]


def sentence_text(built: Built) -> str:
    words = built.words
    return " ".join(words[:-1]) + words[-1]


def find_phrase(words: list[str], phrase: str) -> tuple[int, int]:
    needle = phrase.split()
    for start in range(len(words) - len(needle) + 1):
        if words[start : start + len(needle)] == needle:
            return start, start + len(needle)
    raise ValueError(f"phrase {phrase!r} not found")


def main() -> None:
    for sub in ("corpus", "parses", "frames", "conll", "examples", "configs"):
        (FIXTURES / sub).mkdir(parents=True, exist_ok=True)

    # 1. build every structured sentence and write segment files
    built_by_key: dict[tuple[str, str, int], Built | None] = {}
    spec_by_key: dict[tuple[str, str, int], Sent | None] = {}
    for policy, segments in INVENTORY:
        lines = []
        for seg_index, (label, sentences) in enumerate(segments):
            texts = []
            for ordinal, item in enumerate(sentences):
                key = (policy, str(seg_index), ordinal)
                if isinstance(item, str):
                    built_by_key[key] = None
                    spec_by_key[key] = None
                    texts.append(item)
                else:
                    built = build_sentence(item)
                    built_by_key[key] = built
                    spec_by_key[key] = item
                    texts.append(sentence_text(built))
            lines.append(json.dumps({
                "policy_id": policy,
                "segment_id": str(seg_index),
                "label": label,
                "text": " ".join(texts),
            }, ensure_ascii=False))
        (FIXTURES / "corpus" / f"{policy}.jsonl").write_text(
            "\n".join(lines) + "\n", encoding="utf-8"
        )

    # 2. ingest the segment files back to obtain canonical statements
    corpus = ingest_corpus(FIXTURES / "corpus")
    write_statements(corpus.statements, FIXTURES / "statements.jsonl")

    # 3. align and emit gold, parses, and frames
    golds: list[FlowAnnotation] = []
    trees: list[DepTree] = []
    frames: list[SrlFrame] = []
    for statement in corpus.statements:
        key = (statement.policy_id, statement.segment_id,
               int(statement.id.rsplit("/", 1)[1]))
        built = built_by_key[key]
        spec = spec_by_key[key]
        words = [t.text for t in statement.tokens]
        if built is None:
            spans = []
            if statement.policy_id == "ember" and "types of information" in statement.raw_text:
                for param, phrase in COLON_GOLD_PHRASES:
                    start, end = find_phrase(words, phrase)
                    spans.append(Span(start, end, CIParam(param), "gold"))
                golds.append(FlowAnnotation(statement.id, "gold", spans, valid=True))
            else:
                golds.append(FlowAnnotation(statement.id, "gold", [], valid=False))
            continue
        if words != built.words:
            raise AssertionError(
                f"{statement.id}: tokenization mismatch\n{words}\n{built.words}"
            )
        spans = [
            Span(*built.parts[part], CIParam(param), "gold")
            for param, part in spec.gold
        ]
        spans.sort(key=lambda s: (s.start, s.end, s.param.value))
        golds.append(
            FlowAnnotation(statement.id, "gold", spans, valid=spec.valid)
        )
        trees.append(
            DepTree(
                statement.id,
                [Token(index=i, text=w, pos=p)
                 for i, (w, p) in enumerate(zip(built.words, built.pos))],
                built.heads,
                built.deps,
            )
        )
        for frame in built.frames:
            frames.append(
                SrlFrame(statement.id, frame.sentence_len, frame.verb_index,
                         frame.verb_lemma, frame.arguments)
            )

    write_annotations(golds, FIXTURES / "gold.jsonl")
    write_conllu(trees, FIXTURES / "parses" / "corpus.conllu")
    write_srl_frames(frames, FIXTURES / "frames" / "corpus_frames.jsonl")

    # 4. CoNLL files for the tagger: every fifth statement is held out
    gold_by_id = {g.statement_id: g for g in golds}
    train_rows, heldout_rows = [], []
    for index, statement in enumerate(corpus.statements):
        gold = gold_by_id[statement.id]
        tags = spans_to_tags(len(statement.tokens), gold.spans)
        row = TaggedSentence(statement.id, list(statement.tokens), tags)
        (heldout_rows if index % 5 == 4 else train_rows).append(row)
    write_conll2003(train_rows, FIXTURES / "conll" / "train.conll")
    write_conll2003(heldout_rows, FIXTURES / "conll" / "heldout.conll")

    # 5. worked-example fixtures
    write_examples()

    # 6. default config files
    (FIXTURES / "configs" / "verb_lexicon.toml").write_text(
        'sending = ["send", "share", "transmit", "transfer", "disclose", "provide"]\n'
        'receiving = ["collect", "gather", "receive", "acquire"]\n'
        'assumed_subject = "user"\n'
        "\n[sending_roles]\n"
        'ARG0 = "Sender"\n'
        'ARG2 = "Receiver"\n'
        "\n[receiving_roles]\n"
        'ARG0 = "Receiver"\n'
        'ARG2 = "Sender"\n',
        encoding="utf-8",
    )
    (FIXTURES / "configs" / "dp_rules.toml").write_text(
        'attribute = ["dobj", "parataxis", "nsubjpass"]\n'
        'actor = ["nsubj"]\n'
        'tp = ["xcomp", "ccomp", "advcl", "oprd"]\n'
        'subject = ["poss", "agent"]\n'
        "pronoun_actors = true\n",
        encoding="utf-8",
    )

    valid = sum(1 for g in golds if g.valid)
    spans_total = sum(len(g.spans) for g in golds)
    print(f"{len(corpus.statements)} statements, {valid} valid, "
          f"{spans_total} gold spans, {len(trees)} trees, {len(frames)} frames")


def write_examples() -> None:
    # Dependency parse of the location example sentence.
    text = ("When you use Google services , we may collect and process "
            "information about your actual location .")
    words = text.split()
    heads = [2, 2, 8, 4, 2, 8, 8, 8, ROOT, 8, 8, 8, 11, 15, 15, 12, 8]
    deps = ["advmod", "nsubj", "advcl", "compound", "dobj", "punct", "nsubj",
            "aux", "root", "cc", "conj", "dobj", "prep", "poss", "amod",
            "pobj", "punct"]
    pos = ["ADV", "PRON", "VERB", "PROPN", "NOUN", "PUNCT", "PRON", "AUX",
           "VERB", "CCONJ", "VERB", "NOUN", "ADP", "PRON", "ADJ", "NOUN",
           "PUNCT"]
    tree = DepTree(
        "location-example",
        [Token(index=i, text=w, pos=p) for i, (w, p) in enumerate(zip(words, pos))],
        heads,
        deps,
    )
    write_conllu([tree], FIXTURES / "examples" / "location.conllu")

    # SRL frames for the technical-information example (two TP clauses).
    collect_words = ("We collect technical information when you visit our "
                     "websites or use our mobile applications or services").split()
    collect = [
        SrlFrame("collect-example", 16, 1, "collect", [
            SrlArgument("ARG0", 0, 1),
            SrlArgument("ARG1", 2, 4),
            SrlArgument("ARGM-TMP", 4, 9),
            SrlArgument("ARGM-TMP", 9, 16),
        ]),
        SrlFrame("collect-example", 16, 6, "visit", [
            SrlArgument("ARG0", 5, 6),
            SrlArgument("ARG1", 7, 9),
        ]),
        SrlFrame("collect-example", 16, 10, "use", [
            SrlArgument("ARG0", 5, 6),
            SrlArgument("ARG1", 11, 16),
        ]),
    ]
    write_srl_frames(collect, FIXTURES / "examples" / "collect_frames.jsonl")

    # SRL frames for the redundant-verb example.
    share_words = ("We collect your personal information when you are "
                   "sharing your post .").split()
    share = [
        SrlFrame("collect-share-example", 12, 1, "collect", [
            SrlArgument("ARG0", 0, 1),
            SrlArgument("ARG1", 2, 5),
            SrlArgument("ARGM-TMP", 5, 11),
        ]),
        SrlFrame("collect-share-example", 12, 8, "share", [
            SrlArgument("ARGM-TMP", 5, 6),
            SrlArgument("ARG0", 6, 7),
            SrlArgument("ARG1", 9, 11),
        ]),
    ]
    write_srl_frames(share, FIXTURES / "examples" / "collect_share_frames.jsonl")

    # token lists for the examples, for text-level assertions
    from ci_extractor.corpus import Statement, write_statements as _ws

    statements = [
        Statement("location-example", "examples", "0", FPC,
                  tokenize("When you use Google services, we may collect and "
                           "process information about your actual location."),
                  "When you use Google services, we may collect and process "
                  "information about your actual location."),
        Statement("collect-example", "examples", "1", FPC,
                  tuple(Token(index=i, text=w) for i, w in enumerate(collect_words)),
                  " ".join(collect_words)),
        Statement("collect-share-example", "examples", "2", FPC,
                  tokenize("We collect your personal information when you are "
                           "sharing your post."),
                  "We collect your personal information when you are sharing "
                  "your post."),
    ]
    _ws(statements, FIXTURES / "examples" / "statements.jsonl")


if __name__ == "__main__":
    main()
