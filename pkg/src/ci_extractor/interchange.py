"""Readers and writers for the formats that connect the core to external tools.

Three carriers: CoNLL-2003 two-column files for token/tag sequences, CoNLL-U
for dependency trees, and JSON-lines for SRL frames.  Readers validate
structure and reject out-of-bounds indices instead of clamping.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

from ci_extractor.corpus import CIParam, TAG_PARAMS, Token
from ci_extractor.errors import FormatError

ROOT = -1  # head sentinel for the tree root

_TAG_BY_VALUE = {p.value: p for p in TAG_PARAMS}


@dataclass
class TaggedSentence:
    statement_id: str
    tokens: list[Token]
    tags: list[CIParam]

    def __post_init__(self) -> None:
        if len(self.tokens) != len(self.tags):
            raise FormatError(
                f"{self.statement_id}: {len(self.tokens)} tokens "
                f"but {len(self.tags)} tags"
            )
        for tag in self.tags:
            if tag not in TAG_PARAMS:
                raise FormatError(
                    f"{self.statement_id}: {tag.value!r} not allowed in tag sequences"
                )


@dataclass
class DepTree:
    """A dependency tree: per-token head indices (0-based, root = -1) and types."""

    statement_id: str
    tokens: list[Token]
    heads: list[int]
    dep_types: list[str]

    def __post_init__(self) -> None:
        n = len(self.tokens)
        if not (len(self.heads) == len(self.dep_types) == n):
            raise FormatError(f"{self.statement_id}: column lengths differ")
        roots = [i for i, h in enumerate(self.heads) if h == ROOT]
        if len(roots) != 1:
            raise FormatError(
                f"{self.statement_id}: expected exactly one root, found {len(roots)}"
            )
        for i, head in enumerate(self.heads):
            if head != ROOT and not 0 <= head < n:
                raise FormatError(f"{self.statement_id}: head of token {i} out of range")
        # every token must reach the root: single parent + reachability = tree
        for i in range(n):
            node, steps = i, 0
            while node != ROOT:
                node = self.heads[node]
                steps += 1
                if steps > n:
                    raise FormatError(f"{self.statement_id}: cyclic heads at token {i}")

    def children(self) -> list[list[int]]:
        out: list[list[int]] = [[] for _ in self.tokens]
        for i, head in enumerate(self.heads):
            if head != ROOT:
                out[head].append(i)
        return out


@dataclass(frozen=True)
class SrlArgument:
    role: str
    start: int
    end: int

    def __post_init__(self) -> None:
        if not 0 <= self.start < self.end:
            raise FormatError(f"invalid argument range [{self.start}, {self.end})")


@dataclass
class SrlFrame:
    """One verb predicate with its role-labeled argument spans."""

    statement_id: str
    sentence_len: int
    verb_index: int
    verb_lemma: str
    arguments: list[SrlArgument] = field(default_factory=list)

    def __post_init__(self) -> None:
        if not 0 <= self.verb_index < self.sentence_len:
            raise FormatError(
                f"{self.statement_id}: verb index {self.verb_index} outside "
                f"sentence of length {self.sentence_len}"
            )
        for arg in self.arguments:
            if arg.end > self.sentence_len:
                raise FormatError(
                    f"{self.statement_id}: argument [{arg.start}, {arg.end}) outside "
                    f"sentence of length {self.sentence_len}"
                )
            if arg.start <= self.verb_index < arg.end:
                raise FormatError(
                    f"{self.statement_id}: argument [{arg.start}, {arg.end}) contains "
                    f"the frame's own verb at {self.verb_index}"
                )


# --------------------------------------------------------------------------
# CoNLL-2003 (token + CI label columns, blank-line sentence breaks)


def read_conll2003(path: str | Path) -> list[TaggedSentence]:
    sentences: list[TaggedSentence] = []
    words: list[str] = []
    tags: list[CIParam] = []

    def flush() -> None:
        if words:
            tokens = [Token(index=i, text=w) for i, w in enumerate(words)]
            sentences.append(
                TaggedSentence(f"s{len(sentences)}", tokens, list(tags))
            )
            words.clear()
            tags.clear()

    with open(path, encoding="utf-8") as handle:
        for lineno, line in enumerate(handle, start=1):
            stripped = line.strip()
            if not stripped:
                flush()
                continue
            columns = stripped.split()
            if columns[0] == "-DOCSTART-":
                flush()
                continue
            if len(columns) != 2:
                raise FormatError(
                    f"{path}:{lineno}: expected 2 columns, got {len(columns)}"
                )
            word, label = columns
            if label not in _TAG_BY_VALUE:
                raise FormatError(f"{path}:{lineno}: unknown label {label!r}")
            words.append(word)
            tags.append(_TAG_BY_VALUE[label])
    flush()
    return sentences


def write_conll2003(sentences: list[TaggedSentence], path: str | Path) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as handle:
        for sentence in sentences:
            for token, tag in zip(sentence.tokens, sentence.tags):
                handle.write(f"{token.text} {tag.value}\n")
            handle.write("\n")


# --------------------------------------------------------------------------
# CoNLL-U (10 columns; ID, FORM, LEMMA, UPOS, HEAD, DEPREL consumed)


def read_conllu(path: str | Path) -> list[DepTree]:
    trees: list[DepTree] = []
    sent_id: str | None = None
    rows: list[tuple[int, str, str | None, str | None, int, str]] = []
    start_line = 0

    def flush(lineno: int) -> None:
        nonlocal sent_id, rows
        if not rows:
            sent_id = None
            return
        if sent_id is None:
            raise FormatError(
                f"{path}:{start_line}: sentence without a '# sent_id =' comment"
            )
        tokens: list[Token] = []
        heads: list[int] = []
        dep_types: list[str] = []
        for i, (tid, form, lemma, upos, head, deprel) in enumerate(rows):
            if tid != i + 1:
                raise FormatError(
                    f"{path}: sentence {sent_id}: token ids not contiguous at {tid}"
                )
            tokens.append(Token(index=i, text=form, lemma=lemma, pos=upos))
            heads.append(ROOT if head == 0 else head - 1)
            dep_types.append(deprel)
        try:
            trees.append(DepTree(sent_id, tokens, heads, dep_types))
        except FormatError as exc:
            raise FormatError(f"{path}: {exc}") from exc
        sent_id = None
        rows = []

    with open(path, encoding="utf-8") as handle:
        for lineno, line in enumerate(handle, start=1):
            stripped = line.rstrip("\n")
            if not stripped.strip():
                flush(lineno)
                continue
            if stripped.startswith("#"):
                comment = stripped[1:].strip()
                if comment.startswith("sent_id"):
                    _, _, value = comment.partition("=")
                    sent_id = value.strip()
                continue
            columns = stripped.split("\t")
            if len(columns) != 10:
                raise FormatError(
                    f"{path}:{lineno}: expected 10 columns, got {len(columns)}"
                )
            tid, form, lemma, upos, _, _, head, deprel, _, _ = columns
            if "-" in tid or "." in tid:
                continue  # multiword-token ranges and empty nodes
            if not rows:
                start_line = lineno
            try:
                rows.append(
                    (
                        int(tid),
                        form,
                        None if lemma == "_" else lemma,
                        None if upos == "_" else upos,
                        int(head),
                        deprel,
                    )
                )
            except ValueError as exc:
                raise FormatError(f"{path}:{lineno}: bad ID or HEAD: {exc}") from exc
    flush(0)
    return trees


def write_conllu(trees: list[DepTree], path: str | Path) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as handle:
        for tree in trees:
            handle.write(f"# sent_id = {tree.statement_id}\n")
            handle.write(f"# text = {' '.join(t.text for t in tree.tokens)}\n")
            for token, head, deprel in zip(tree.tokens, tree.heads, tree.dep_types):
                conllu_head = 0 if head == ROOT else head + 1
                handle.write(
                    "\t".join(
                        [
                            str(token.index + 1),
                            token.text,
                            token.lemma or "_",
                            token.pos or "_",
                            "_",
                            "_",
                            str(conllu_head),
                            deprel,
                            "_",
                            "_",
                        ]
                    )
                    + "\n"
                )
            handle.write("\n")


# --------------------------------------------------------------------------
# SRL frames (JSON-lines)


def read_srl_frames(path: str | Path) -> list[SrlFrame]:
    frames: list[SrlFrame] = []
    with open(path, encoding="utf-8") as handle:
        for lineno, line in enumerate(handle, start=1):
            if not line.strip():
                continue
            try:
                record = json.loads(line)
            except json.JSONDecodeError as exc:
                raise FormatError(f"{path}:{lineno}: malformed JSON: {exc}") from exc
            try:
                frames.append(
                    SrlFrame(
                        statement_id=record["statement_id"],
                        sentence_len=record["sentence_len"],
                        verb_index=record["verb_index"],
                        verb_lemma=record["verb_lemma"],
                        arguments=[
                            SrlArgument(a["role"], a["start"], a["end"])
                            for a in record["arguments"]
                        ],
                    )
                )
            except (KeyError, TypeError) as exc:
                raise FormatError(f"{path}:{lineno}: bad frame record: {exc}") from exc
            except FormatError as exc:
                raise FormatError(f"{path}:{lineno}: {exc}") from exc
    return frames


def write_srl_frames(frames: list[SrlFrame], path: str | Path) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as handle:
        for frame in frames:
            record = {
                "statement_id": frame.statement_id,
                "sentence_len": frame.sentence_len,
                "verb_index": frame.verb_index,
                "verb_lemma": frame.verb_lemma,
                "arguments": [
                    {"role": a.role, "start": a.start, "end": a.end}
                    for a in frame.arguments
                ],
            }
            handle.write(json.dumps(record, ensure_ascii=False) + "\n")
