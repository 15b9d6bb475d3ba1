"""Domain types for policies, statements, and CI labels, plus corpus ingestion.

A corpus is a directory of segment files (JSON-lines, one segment per line
with ``policy_id``, ``segment_id``, ``label``, ``text``).  Ingestion keeps
only segments whose label is on the allow-list, splits each kept segment
into sentences, and tokenizes each sentence into a :class:`Statement`.
"""

from __future__ import annotations

import json
import logging
import statistics
from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path
from typing import Iterator

from ci_extractor.errors import FormatError

log = logging.getLogger(__name__)


class CIParam(str, Enum):
    """Contextual-integrity parameter labels.

    ``ACTOR`` marks a phrase that is a sender or a receiver when the producing
    method cannot tell which (dependency mapping only).  ``O`` is the outside
    label used in token-level tag sequences; it never appears in annotation
    spans.
    """

    SENDER = "Sender"
    RECEIVER = "Receiver"
    SUBJECT = "Subject"
    ATTRIBUTE = "Attribute"
    TP = "TP"
    ACTOR = "Actor"
    O = "O"


#: Parameters that may appear in annotation spans.
SPAN_PARAMS = (
    CIParam.SENDER,
    CIParam.RECEIVER,
    CIParam.SUBJECT,
    CIParam.ATTRIBUTE,
    CIParam.TP,
    CIParam.ACTOR,
)

#: Labels allowed in token-level tag sequences, in canonical order.  The order
#: doubles as the deterministic tie-break order wherever labels compete.
TAG_PARAMS = (
    CIParam.SENDER,
    CIParam.RECEIVER,
    CIParam.SUBJECT,
    CIParam.ATTRIBUTE,
    CIParam.TP,
    CIParam.O,
)

DEFAULT_SEGMENT_LABELS = (
    "First Party Collection/Use",
    "Third Party Sharing/Collection",
    "Data Retention",
)


@dataclass(frozen=True)
class Token:
    index: int
    text: str
    lemma: str | None = None
    pos: str | None = None

    def __post_init__(self) -> None:
        if not self.text:
            raise FormatError("token text must be non-empty")
        if self.index < 0:
            raise FormatError(f"token index must be >= 0, got {self.index}")


@dataclass(frozen=True)
class Statement:
    """One sentence-level privacy statement with its provenance."""

    id: str
    policy_id: str
    segment_id: str
    segment_label: str
    tokens: tuple[Token, ...]
    raw_text: str

    def __len__(self) -> int:
        return len(self.tokens)

    @property
    def words(self) -> list[str]:
        return [t.text for t in self.tokens]


@dataclass(frozen=True, order=True)
class Span:
    """A labeled token range, start inclusive, end exclusive."""

    start: int
    end: int
    param: CIParam
    source_tag: str = ""

    def __post_init__(self) -> None:
        if not 0 <= self.start < self.end:
            raise FormatError(f"invalid span range [{self.start}, {self.end})")

    def overlap(self, other: "Span") -> int:
        """Number of tokens shared with another span."""
        return max(0, min(self.end, other.end) - max(self.start, other.start))


@dataclass
class FlowAnnotation:
    """The CI parameters of one statement as labeled token spans.

    ``valid`` is a gold-only flag marking whether the statement prescribes an
    information exchange; predictions leave it ``None``.  ``metadata`` carries
    free-form notes such as the SRL mapper's assumed subject.
    """

    statement_id: str
    method: str
    spans: list[Span] = field(default_factory=list)
    valid: bool | None = None
    metadata: dict[str, str] = field(default_factory=dict)

    def __post_init__(self) -> None:
        for span in self.spans:
            if span.param not in SPAN_PARAMS:
                raise FormatError(
                    f"annotation {self.statement_id}: span param "
                    f"{span.param.value!r} not allowed in spans"
                )

    def spans_for(self, param: CIParam) -> list[Span]:
        return [s for s in self.spans if s.param == param]


@dataclass
class Corpus:
    statements: list[Statement] = field(default_factory=list)
    skipped_segments: int = 0

    def __iter__(self) -> Iterator[Statement]:
        return iter(self.statements)

    def __len__(self) -> int:
        return len(self.statements)

    def by_id(self) -> dict[str, Statement]:
        return {s.id: s for s in self.statements}


@dataclass
class CorpusStats:
    total_statements: int
    valid_statements: int
    gold_spans: int
    valid_per_policy: dict[str, int]
    min_valid: int
    mean_valid: float
    max_valid: int


# --------------------------------------------------------------------------
# Tokenization

_TRAILING_PUNCT = set(".,;:!?\"')]")
_LEADING_PUNCT = set("\"'([")


def tokenize(text: str) -> tuple[Token, ...]:
    """Whitespace split with leading/trailing punctuation detached.

    Trailing ``.,;:!?"'`` and leading quotes/parens become tokens of their
    own; everything else is kept verbatim.  Joining the token texts with
    single spaces reproduces the input up to whitespace.
    """
    words: list[str] = []
    for chunk in text.split():
        lead: list[str] = []
        tail: list[str] = []
        while len(chunk) > 1 and chunk[0] in _LEADING_PUNCT:
            lead.append(chunk[0])
            chunk = chunk[1:]
        while len(chunk) > 1 and chunk[-1] in _TRAILING_PUNCT:
            tail.append(chunk[-1])
            chunk = chunk[:-1]
        words.extend(lead)
        words.append(chunk)
        words.extend(reversed(tail))
    return tuple(Token(index=i, text=w) for i, w in enumerate(words))


def detokenize(tokens: tuple[Token, ...] | list[Token]) -> str:
    return " ".join(t.text for t in tokens)


def span_text(statement: Statement, span: Span) -> str:
    if span.end > len(statement.tokens):
        raise FormatError(
            f"span [{span.start}, {span.end}) exceeds statement "
            f"{statement.id} of length {len(statement.tokens)}"
        )
    return " ".join(t.text for t in statement.tokens[span.start : span.end])


# --------------------------------------------------------------------------
# Sentence splitting

DEFAULT_ABBREVIATIONS = frozenset(
    {
        "e.g.", "i.e.", "etc.", "cf.", "vs.", "approx.", "inc.", "ltd.",
        "corp.", "co.", "no.", "dr.", "mr.", "mrs.", "ms.", "u.s.",
    }
)

_SENTENCE_FINAL = ".!?"
_NEXT_SENTENCE_OPENERS = "\"'"


def _starts_new_sentence(char: str) -> bool:
    return char.isupper() or char.isdigit() or char in _NEXT_SENTENCE_OPENERS


def split_sentences(
    text: str,
    *,
    split_on_colon: bool = False,
    abbreviations: frozenset[str] = DEFAULT_ABBREVIATIONS,
) -> list[str]:
    """Rule-based sentence splitting.

    Splits after ``.``, ``!`` or ``?`` (and ``:`` when ``split_on_colon``)
    when followed by whitespace and an uppercase letter, digit, or quote.
    Words on the abbreviation guard list never end a sentence.  Total
    function: no characters are dropped, only inter-sentence whitespace.
    """
    terminators = _SENTENCE_FINAL + (":" if split_on_colon else "")
    breaks: list[int] = []
    for i, char in enumerate(text):
        if char not in terminators:
            continue
        j = i + 1
        while j < len(text) and text[j].isspace():
            j += 1
        if j == i + 1 or j >= len(text):
            continue  # no whitespace after, or end of text
        if not _starts_new_sentence(text[j]):
            continue
        if char == ".":
            word_start = i
            while word_start > 0 and not text[word_start - 1].isspace():
                word_start -= 1
            if text[word_start : i + 1].lower() in abbreviations:
                continue
        breaks.append(i + 1)

    sentences: list[str] = []
    prev = 0
    for point in breaks + [len(text)]:
        piece = text[prev:point].strip()
        if piece:
            sentences.append(piece)
        prev = point
    return sentences


# --------------------------------------------------------------------------
# Ingestion

_SEGMENT_FIELDS = ("policy_id", "segment_id", "label", "text")


def ingest_corpus(
    path: str | Path,
    *,
    allow_labels: tuple[str, ...] = DEFAULT_SEGMENT_LABELS,
    split_on_colon: bool = False,
) -> Corpus:
    """Read every ``*.jsonl`` segment file under ``path`` into a corpus.

    Segments whose label is not on the allow-list are counted and skipped.
    Statement ids are deterministic: ``policy_id/segment_id/<sentence ordinal>``.
    """
    directory = Path(path)
    if not directory.is_dir():
        raise FileNotFoundError(f"segment directory not found: {directory}")

    allowed = set(allow_labels)
    corpus = Corpus()
    seen_segments: set[tuple[str, str]] = set()
    for file in sorted(directory.glob("*.jsonl")):
        with open(file, encoding="utf-8") as handle:
            for lineno, line in enumerate(handle, start=1):
                if not line.strip():
                    continue
                try:
                    record = json.loads(line)
                except json.JSONDecodeError as exc:
                    raise FormatError(f"{file}:{lineno}: malformed JSON: {exc}") from exc
                missing = [f for f in _SEGMENT_FIELDS if f not in record]
                if missing:
                    raise FormatError(
                        f"{file}:{lineno}: segment record missing fields {missing}"
                    )
                if record["label"] not in allowed:
                    corpus.skipped_segments += 1
                    continue
                key = (record["policy_id"], record["segment_id"])
                if key in seen_segments:
                    raise FormatError(
                        f"{file}:{lineno}: duplicate segment {key[0]}/{key[1]}"
                    )
                seen_segments.add(key)
                sentences = split_sentences(
                    record["text"], split_on_colon=split_on_colon
                )
                for ordinal, sentence in enumerate(sentences):
                    corpus.statements.append(
                        Statement(
                            id=f"{record['policy_id']}/{record['segment_id']}/{ordinal}",
                            policy_id=record["policy_id"],
                            segment_id=record["segment_id"],
                            segment_label=record["label"],
                            tokens=tokenize(sentence),
                            raw_text=sentence,
                        )
                    )
    if corpus.skipped_segments:
        log.warning("skipped %d segment(s) with labels outside the allow-list",
                    corpus.skipped_segments)
    return corpus


def corpus_stats(corpus: Corpus, gold: list[FlowAnnotation]) -> CorpusStats:
    """Summarize a corpus against its gold annotations."""
    ids = {s.id for s in corpus}
    dangling = sorted({g.statement_id for g in gold} - ids)
    if dangling:
        raise FormatError(
            "gold annotations reference unknown statements: " + ", ".join(dangling)
        )
    policy_of = {s.id: s.policy_id for s in corpus}
    valid_per_policy = {s.policy_id: 0 for s in corpus}
    valid = 0
    for g in gold:
        if g.valid:
            valid += 1
            valid_per_policy[policy_of[g.statement_id]] += 1
    counts = list(valid_per_policy.values())
    return CorpusStats(
        total_statements=len(corpus),
        valid_statements=valid,
        gold_spans=sum(len(g.spans) for g in gold),
        valid_per_policy=valid_per_policy,
        min_valid=min(counts) if counts else 0,
        mean_valid=statistics.mean(counts) if counts else 0.0,
        max_valid=max(counts) if counts else 0,
    )


# --------------------------------------------------------------------------
# Statement and annotation files (JSON-lines)


def write_statements(statements: list[Statement], path: str | Path) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as handle:
        for s in statements:
            record = {
                "id": s.id,
                "policy_id": s.policy_id,
                "segment_id": s.segment_id,
                "segment_label": s.segment_label,
                "raw_text": s.raw_text,
                "tokens": [_token_record(t) for t in s.tokens],
            }
            handle.write(json.dumps(record, ensure_ascii=False) + "\n")


def _token_record(token: Token) -> dict:
    record: dict = {"text": token.text}
    if token.lemma is not None:
        record["lemma"] = token.lemma
    if token.pos is not None:
        record["pos"] = token.pos
    return record


def read_statements(path: str | Path) -> list[Statement]:
    statements: list[Statement] = []
    with open(path, encoding="utf-8") as handle:
        for lineno, line in enumerate(handle, start=1):
            if not line.strip():
                continue
            try:
                record = json.loads(line)
                tokens = tuple(
                    Token(index=i, text=t["text"], lemma=t.get("lemma"),
                          pos=t.get("pos"))
                    for i, t in enumerate(record["tokens"])
                )
                statements.append(
                    Statement(
                        id=record["id"],
                        policy_id=record["policy_id"],
                        segment_id=record["segment_id"],
                        segment_label=record["segment_label"],
                        tokens=tokens,
                        raw_text=record["raw_text"],
                    )
                )
            except (KeyError, TypeError, json.JSONDecodeError) as exc:
                raise FormatError(f"{path}:{lineno}: bad statement record: {exc}") from exc
    return statements


def write_annotations(annotations: list[FlowAnnotation], path: str | Path) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as handle:
        for ann in annotations:
            record: dict = {
                "statement_id": ann.statement_id,
                "method": ann.method,
                "valid": ann.valid,
                "spans": [
                    {
                        "start": s.start,
                        "end": s.end,
                        "param": s.param.value,
                        "source_tag": s.source_tag,
                    }
                    for s in ann.spans
                ],
            }
            if ann.metadata:
                record["metadata"] = ann.metadata
            handle.write(json.dumps(record, ensure_ascii=False) + "\n")


def read_annotations(
    path: str | Path,
    lengths: dict[str, int] | None = None,
) -> list[FlowAnnotation]:
    """Read an annotation file; with ``lengths``, also bound-check spans."""
    annotations: list[FlowAnnotation] = []
    with open(path, encoding="utf-8") as handle:
        for lineno, line in enumerate(handle, start=1):
            if not line.strip():
                continue
            try:
                record = json.loads(line)
            except json.JSONDecodeError as exc:
                raise FormatError(f"{path}:{lineno}: malformed JSON: {exc}") from exc
            try:
                spans = [
                    Span(
                        start=s["start"],
                        end=s["end"],
                        param=CIParam(s["param"]),
                        source_tag=s.get("source_tag", ""),
                    )
                    for s in record["spans"]
                ]
                ann = FlowAnnotation(
                    statement_id=record["statement_id"],
                    method=record["method"],
                    spans=spans,
                    valid=record.get("valid"),
                    metadata=record.get("metadata", {}),
                )
            except (KeyError, TypeError, ValueError) as exc:
                raise FormatError(f"{path}:{lineno}: bad annotation record: {exc}") from exc
            if lengths is not None:
                n = lengths.get(ann.statement_id)
                if n is None:
                    raise FormatError(
                        f"{path}:{lineno}: unknown statement {ann.statement_id!r}"
                    )
                for s in ann.spans:
                    if s.end > n:
                        raise FormatError(
                            f"{path}:{lineno}: span [{s.start}, {s.end}) exceeds "
                            f"statement {ann.statement_id} of length {n}"
                        )
            annotations.append(ann)
    return annotations


# --------------------------------------------------------------------------
# Span/tag conversion


def spans_to_tags(length: int, spans: list[Span]) -> list[CIParam]:
    """Project spans onto a per-token tag sequence.

    Where spans overlap, the span that starts first wins; among spans with
    identical ranges the canonical tag order decides.  ``Actor`` spans are
    rejected: tag sequences distinguish sender from receiver.
    """
    order = {p: i for i, p in enumerate(TAG_PARAMS)}
    tags: list[CIParam] = [CIParam.O] * length
    for span in sorted(spans, key=lambda s: (s.start, s.end, order.get(s.param, 99))):
        if span.param not in order:
            raise FormatError(f"cannot project {span.param.value!r} span onto tags")
        if span.end > length:
            raise FormatError(
                f"span [{span.start}, {span.end}) exceeds sentence length {length}"
            )
        for i in range(span.start, span.end):
            if tags[i] is CIParam.O:
                tags[i] = span.param
    return tags


def tags_to_spans(tags: list[CIParam], source_tag: str) -> list[Span]:
    """Collapse maximal runs of the same non-O tag into spans."""
    spans: list[Span] = []
    start: int | None = None
    current = CIParam.O
    for i, tag in enumerate(tags + [CIParam.O]):
        if tag != current:
            if current is not CIParam.O and start is not None:
                spans.append(Span(start=start, end=i, param=current, source_tag=source_tag))
            start = i
            current = tag
    return spans
