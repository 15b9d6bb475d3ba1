"""Builtin pattern-based parsing and SRL backends.

These exist so the adapters run deterministically with no model downloads:
a small lexicon drives clause segmentation (main clause plus one optional
subordinate clause), NP/PP chunking, and role assignment.  The output is
always structurally valid (single root, in-bounds spans) for any input, but
linguistically it only aims at the plain declarative shapes found in
privacy-policy statements.  Pick the spaCy or AllenNLP backends for real
text.
"""

from __future__ import annotations

from dataclasses import dataclass, field

ROOT = -1

SUBORDINATORS = {"when", "if", "after", "while", "because", "before"}
TEMPORAL_SUBORDINATORS = {"when", "after", "while", "before"}
PRONOUNS = {"we", "you", "they", "us", "them", "it", "i"}
POSSESSIVES = {"your", "our", "their", "my", "its", "his", "her"}
DETERMINERS = {"the", "a", "an", "this", "that", "these", "those", "any",
               "some", "all", "each", "every", "new", "five", "two"}
ADJECTIVES = {
    "personal", "technical", "aggregated", "demographic", "anonymized",
    "mobile", "online", "actual", "emergency", "sponsored", "embedded",
    "marketing", "shared", "applicable", "main", "diagnostic", "financial",
}
AUXILIARIES = {"may", "can", "will", "must", "shall", "should", "would",
               "could", "do", "does", "did", "have", "has", "had"}
BE_FORMS = {"is", "are", "was", "were", "am", "be", "been", "being"}
CONJUNCTIONS = {"and", "or", "but"}
PREPOSITIONS = {"with", "from", "to", "by", "for", "about", "of", "on",
                "at", "in", "into", "under", "over", "through"}
#: prepositions that attach to an immediately preceding noun, not the verb
NOUN_PREPOSITIONS = {"about", "of"}
#: prepositional phrases that carry a core argument role
ROLE_PREPOSITIONS = {"with", "from", "to"}
PUNCTUATION = {".", ",", "!", "?", ";", ":", '"', "'", "(", ")"}

VERB_FORMS = {
    "collect", "collects", "collected", "collecting",
    "gather", "gathers", "gathered", "gathering",
    "receive", "receives", "received", "receiving",
    "acquire", "acquires", "acquired", "acquiring",
    "share", "shares", "shared", "sharing",
    "send", "sends", "sent", "sending",
    "disclose", "discloses", "disclosed", "disclosing",
    "transfer", "transfers", "transferred", "transferring",
    "transmit", "transmits", "transmitted", "transmitting",
    "provide", "provides", "provided", "providing",
    "sell", "sells", "sold", "selling",
    "rent", "rents", "rented",
    "store", "stores", "stored", "storing",
    "retain", "retains", "retained",
    "use", "uses", "used", "using",
    "visit", "visits", "visited",
    "process", "processes", "processed", "processing",
    "register", "registers", "registered",
    "make", "makes", "made",
    "create", "creates", "created",
    "view", "views", "viewed",
    "request", "requests", "requested",
    "submit", "submits", "submitted",
    "review", "reviews", "reviewed",
    "enable", "enables", "enabled",
    "place", "places", "placed",
    "violate", "violates", "violated",
    "crash", "crashes", "crashed",
    "start", "starts", "started",
    "fail", "fails", "failed",
    "browse", "browses", "browsed",
    "customize", "customizes", "customized",
    "follow", "follows", "followed",
    "delete", "deletes", "deleted",
    "interact", "interacts", "interacted",
    "complete", "completes", "completed",
    "link", "links", "linked",
    "subscribe", "subscribes", "subscribed",
    "update", "updates", "updated",
    "contact", "contacts", "contacted",
    "keep", "keeps", "kept",
    "track", "tracks", "tracked",
}

_LEMMA_OVERRIDES = {
    "sent": "send", "sold": "sell", "made": "make", "kept": "keep",
    "processes": "process", "crashes": "crash", "uses": "use",
    "places": "place",
}

_PARTICIPLES = {
    "collected", "gathered", "received", "acquired", "shared", "sent",
    "disclosed", "transferred", "transmitted", "provided", "sold", "stored",
    "retained", "used", "processed", "kept", "tracked",
}


def lemma_of(word: str) -> str:
    """Dictionary lemmatizer with conservative suffix stripping."""
    lowered = word.lower()
    if lowered in _LEMMA_OVERRIDES:
        return _LEMMA_OVERRIDES[lowered]
    for suffix, replacement in (("ing", ""), ("ied", "y"), ("ed", ""), ("es", "e"), ("s", "")):
        if lowered.endswith(suffix) and len(lowered) > len(suffix) + 2:
            candidate = lowered[: -len(suffix)] + replacement
            if candidate in VERB_FORMS:
                return candidate
            doubled = candidate[:-1]  # transferred -> transfer
            if len(candidate) > 2 and candidate[-1] == candidate[-2] and doubled in VERB_FORMS:
                return doubled
            if candidate + "e" in VERB_FORMS:  # sharing -> share
                return candidate + "e"
    return lowered


def pos_of(word: str, is_verb: bool, is_aux: bool) -> str:
    lowered = word.lower()
    if is_aux:
        return "AUX"
    if is_verb:
        return "VERB"
    if word in PUNCTUATION:
        return "PUNCT"
    if lowered in PRONOUNS or lowered in POSSESSIVES:
        return "PRON"
    if lowered in DETERMINERS:
        return "DET"
    if lowered in ADJECTIVES:
        return "ADJ"
    if lowered in PREPOSITIONS:
        return "ADP"
    if lowered in SUBORDINATORS:
        return "SCONJ"
    if lowered in CONJUNCTIONS:
        return "CCONJ"
    return "NOUN"


@dataclass
class Parse:
    heads: list[int]
    deps: list[str]
    pos: list[str]


@dataclass
class Frame:
    verb_index: int
    verb_lemma: str
    arguments: list[tuple[str, int, int]] = field(default_factory=list)


@dataclass
class _Clause:
    start: int
    end: int
    subordinator: int | None = None
    verb: int | None = None
    conj_verbs: list[int] = field(default_factory=list)
    aux: list[int] = field(default_factory=list)
    passive: bool = False
    subject: tuple[int, int] | None = None
    obj: tuple[int, int] | None = None
    pps: list[tuple[int, int, int]] = field(default_factory=list)  # (prep, start, end)
    agent: tuple[int, int] | None = None  # (by-token, end)


def _split_clauses(words: list[str]) -> tuple[_Clause, _Clause | None, list[int]]:
    """Main clause, optional subordinate clause, and final punctuation."""
    end = len(words)
    trailing = []
    while end > 0 and words[end - 1] in PUNCTUATION:
        trailing.append(end - 1)
        end -= 1
    lowered = [w.lower() for w in words]
    if lowered and lowered[0] in SUBORDINATORS:
        # fronted subordinate clause up to the first comma
        comma = next((i for i in range(end) if words[i] == ","), None)
        if comma is not None:
            sub = _Clause(start=0, end=comma, subordinator=0)
            main = _Clause(start=comma + 1, end=end)
            trailing.append(comma)
            return main, sub, trailing
    for i in range(1, end):
        if lowered[i] in SUBORDINATORS:
            return _Clause(start=0, end=i), _Clause(start=i, end=end, subordinator=i), trailing
    return _Clause(start=0, end=end), None, trailing


def _analyze_clause(words: list[str], clause: _Clause) -> None:
    lowered = [w.lower() for w in words]
    body = clause.start if clause.subordinator is None else clause.subordinator + 1
    verbs = [i for i in range(body, clause.end) if lowered[i] in VERB_FORMS]
    if not verbs:
        return
    verb = verbs[0]
    clause.verb = verb
    clause.aux = [
        i for i in range(body, verb)
        if lowered[i] in AUXILIARIES or lowered[i] in BE_FORMS
    ]
    clause.passive = bool(
        clause.aux
        and lowered[clause.aux[-1]] in BE_FORMS
        and lowered[verb] in _PARTICIPLES
    )
    for extra in verbs[1:]:
        if extra - 1 > verb and lowered[extra - 1] in CONJUNCTIONS:
            clause.conj_verbs.append(extra)
    first_pre = min(clause.aux + [verb])
    if first_pre > body:
        clause.subject = (body, first_pre)
    # everything after the verb (and its conjuncts) is an object NP then PPs
    skip = set(clause.conj_verbs) | {v - 1 for v in clause.conj_verbs}
    tail = verb + 1
    while tail < clause.end and tail in skip:
        tail += 1
    i = tail
    while i < clause.end and i not in skip and lowered[i] not in PREPOSITIONS:
        i += 1
    if i > tail:
        clause.obj = (tail, i)
    while i < clause.end:
        prep = i
        j = i + 1
        while j < clause.end and lowered[j] not in PREPOSITIONS:
            j += 1
        if lowered[prep] == "by" and clause.passive:
            clause.agent = (prep, j)
        else:
            clause.pps.append((prep, prep + 1, j))
        i = j


def _attach_np(parse: Parse, words: list[str], start: int, end: int,
               attach: int, rel: str) -> int:
    head = end - 1
    for i in range(start, end - 1):
        lowered = words[i].lower()
        if lowered in POSSESSIVES:
            dep = "poss"
        elif lowered in DETERMINERS:
            dep = "det"
        elif lowered in ADJECTIVES:
            dep = "amod"
        else:
            dep = "compound"
        parse.heads[i] = head
        parse.deps[i] = dep
    parse.heads[head] = attach
    parse.deps[head] = rel
    return head


def _attach_clause(parse: Parse, words: list[str], clause: _Clause,
                   attach: int, rel: str) -> int:
    """Attach one analyzed clause; returns its head token."""
    lowered = [w.lower() for w in words]
    if clause.verb is None:
        # verbless fragment: last token heads the rest
        end = clause.end
        head = end - 1
        for i in range(clause.start, end - 1):
            parse.heads[i] = head
            parse.deps[i] = "dep"
        parse.heads[head] = attach
        parse.deps[head] = rel if attach != ROOT else "root"
        return head
    verb = clause.verb
    parse.heads[verb] = attach
    parse.deps[verb] = rel if attach != ROOT else "root"
    parse.pos[verb] = "VERB"
    if clause.subordinator is not None:
        sub = clause.subordinator
        parse.heads[sub] = verb
        parse.deps[sub] = "advmod" if lowered[sub] == "when" else "mark"
    for aux in clause.aux:
        parse.heads[aux] = verb
        parse.deps[aux] = "auxpass" if (clause.passive and aux == clause.aux[-1]) else "aux"
        parse.pos[aux] = "AUX"
    if clause.subject is not None:
        _attach_np(parse, words, *clause.subject, verb,
                   "nsubjpass" if clause.passive else "nsubj")
    for conj in clause.conj_verbs:
        parse.heads[conj] = verb
        parse.deps[conj] = "conj"
        parse.pos[conj] = "VERB"
        cc = conj - 1
        parse.heads[cc] = verb
        parse.deps[cc] = "cc"
    previous_noun = None
    if clause.obj is not None:
        previous_noun = _attach_np(parse, words, *clause.obj, verb, "dobj")
    if clause.agent is not None:
        by_token, end = clause.agent
        parse.heads[by_token] = verb
        parse.deps[by_token] = "agent"
        if end > by_token + 1:
            previous_noun = _attach_np(parse, words, by_token + 1, end, by_token, "pobj")
    for prep, np_start, np_end in clause.pps:
        if lowered[prep] in NOUN_PREPOSITIONS and previous_noun == prep - 1:
            parse.heads[prep] = previous_noun
        else:
            parse.heads[prep] = verb
        parse.deps[prep] = "prep"
        if np_end > np_start:
            previous_noun = _attach_np(parse, words, np_start, np_end, prep, "pobj")
    return verb


def parse_sentence(words: list[str]) -> Parse:
    n = len(words)
    parse = Parse(heads=[ROOT] * n, deps=["dep"] * n,
                  pos=[pos_of(w, False, False) for w in words])
    if n == 1:
        parse.deps[0] = "root"
        return parse
    main, sub, trailing = _split_clauses(list(words))
    _analyze_clause(list(words), main)
    root = _attach_clause(parse, list(words), main, ROOT, "root")
    if sub is not None:
        _analyze_clause(list(words), sub)
        _attach_clause(parse, list(words), sub, root, "advcl")
    for index in trailing:
        parse.heads[index] = root
        parse.deps[index] = "punct"
        parse.pos[index] = "PUNCT"
    # safety net: anything left unattached hangs off the root
    for i in range(n):
        if i != root and parse.heads[i] == ROOT:
            parse.heads[i] = root
    return parse


def extract_frames(words: list[str]) -> list[Frame]:
    """One frame per recognized clause-heading verb, with clause-local roles."""
    lowered = [w.lower() for w in words]
    main, sub, _ = _split_clauses(list(words))
    _analyze_clause(list(words), main)
    frames: list[Frame] = []
    sub_span = None
    sub_role = None
    if sub is not None:
        _analyze_clause(list(words), sub)
        sub_span = (sub.start, sub.end)
        sub_role = (
            "ARGM-TMP"
            if sub.subordinator is not None
            and lowered[sub.subordinator] in TEMPORAL_SUBORDINATORS
            else "ARGM-ADV"
        )

    def clause_frame(clause: _Clause, extra: list[tuple[str, int, int]]) -> None:
        if clause.verb is None:
            return
        frame = Frame(clause.verb, lemma_of(words[clause.verb]))
        if clause.passive:
            if clause.subject is not None:
                frame.arguments.append(("ARG1", *clause.subject))
            if clause.agent is not None:
                by_token, end = clause.agent
                frame.arguments.append(("ARG0", by_token, end))
        else:
            if clause.subject is not None:
                frame.arguments.append(("ARG0", *clause.subject))
            if clause.obj is not None:
                frame.arguments.append(("ARG1", *clause.obj))
        for prep, _, np_end in clause.pps:
            if lowered[prep] in ROLE_PREPOSITIONS:
                frame.arguments.append(("ARG2", prep, np_end))
        frame.arguments.extend(extra)
        frames.append(frame)

    main_extra = []
    if sub_span is not None and sub_role is not None:
        main_extra.append((sub_role, *sub_span))
    clause_frame(main, main_extra)
    if sub is not None and sub.subordinator is not None:
        clause_frame(sub, [(sub_role, sub.subordinator, sub.subordinator + 1)])
    elif sub is not None:
        clause_frame(sub, [])
    return frames
