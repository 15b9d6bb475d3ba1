"""Trainable trigram HMM over CI tags with interpolated transitions.

Transition probabilities blend maximum-likelihood trigram, bigram, and
unigram estimates with weights ``lambda1``/``lambda2`` (the remainder goes to
the unigram term).  Emissions are maximum-likelihood over lowercased tokens,
with training hapaxes folded into a reserved unknown-word symbol.

Conventions this implementation pins down (the method itself is standard but
these details are not):

* no additive smoothing; unseen higher-order contexts simply contribute zero
  and the interpolation's lower-order terms carry the mass;
* decoding ties are broken toward earlier-listed tags, with later sentence
  positions compared first -- the deterministic rule the exhaustive oracle in
  the test suite replicates;
* if every path has zero probability the decoder falls back to a per-token
  argmax of unigram times emission.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, replace
from pathlib import Path

from ci_extractor.corpus import CIParam, TAG_PARAMS
from ci_extractor.errors import FormatError
from ci_extractor.interchange import TaggedSentence

START = "<s>"
STOP = "</s>"
DEFAULT_UNK = "<unk>"

#: Interpolation weights that worked best in the original full-corpus study.
DEFAULT_LAMBDA1 = 0.42
DEFAULT_LAMBDA2 = 0.48

_MODEL_FORMAT = "ci-extractor-hmm"
_MODEL_VERSION = 1


@dataclass
class HmmModel:
    """Count tables plus interpolation weights; probabilities are derived."""

    tagset: list[str]
    lambda1: float
    lambda2: float
    unigram_counts: dict[str, int]
    bigram_counts: dict[str, dict[str, int]]
    trigram_counts: dict[str, dict[str, dict[str, int]]]
    emission_counts: dict[str, dict[str, int]]
    unk_token: str = DEFAULT_UNK

    def __post_init__(self) -> None:
        if self.lambda1 < 0 or self.lambda2 < 0:
            raise FormatError("interpolation weights must be >= 0")
        if self.lambda1 + self.lambda2 > 1.0 + 1e-9:
            raise FormatError(
                f"lambda1 + lambda2 must be <= 1, got "
                f"{self.lambda1} + {self.lambda2}"
            )
        for sentinel in (START, STOP):
            if sentinel in self.tagset:
                raise FormatError(f"tagset must not contain the sentinel {sentinel!r}")
        self._unigram_total = sum(self.unigram_counts.values())
        self._bigram_totals = {
            t1: sum(row.values()) for t1, row in self.bigram_counts.items()
        }
        self._trigram_totals = {
            t2: {t1: sum(row.values()) for t1, row in inner.items()}
            for t2, inner in self.trigram_counts.items()
        }
        self._emission_totals = {
            t: sum(row.values()) for t, row in self.emission_counts.items()
        }
        self._vocabulary = frozenset(
            word for row in self.emission_counts.values() for word in row
        )

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, HmmModel):
            return NotImplemented
        return (
            self.tagset == other.tagset
            and self.lambda1 == other.lambda1
            and self.lambda2 == other.lambda2
            and self.unigram_counts == other.unigram_counts
            and self.bigram_counts == other.bigram_counts
            and self.trigram_counts == other.trigram_counts
            and self.emission_counts == other.emission_counts
            and self.unk_token == other.unk_token
        )

    @property
    def vocabulary(self) -> frozenset[str]:
        return self._vocabulary

    def map_word(self, word: str) -> str:
        lowered = word.lower()
        return lowered if lowered in self._vocabulary else self.unk_token

    def unigram_p(self, t: str) -> float:
        if self._unigram_total == 0:
            return 0.0
        return self.unigram_counts.get(t, 0) / self._unigram_total

    def bigram_p(self, t: str, t1: str) -> float:
        row = self.bigram_counts.get(t1)
        if not row:
            return 0.0
        return row.get(t, 0) / self._bigram_totals[t1]

    def trigram_p(self, t: str, t2: str, t1: str) -> float:
        row = self.trigram_counts.get(t2, {}).get(t1)
        if not row:
            return 0.0
        return row.get(t, 0) / self._trigram_totals[t2][t1]

    def emission_p(self, word: str, tag: str) -> float:
        row = self.emission_counts.get(tag)
        if not row:
            return 0.0
        return row.get(word, 0) / self._emission_totals[tag]

    def with_lambdas(self, lambda1: float, lambda2: float) -> "HmmModel":
        return replace(self, lambda1=lambda1, lambda2=lambda2)


def interpolated_transition(model: HmmModel, t2: str, t1: str, t: str) -> float:
    """P(t | t1, t2) as the weighted mix of trigram, bigram, and unigram MLEs."""
    for context in (t2, t1):
        if context != START and context not in model.tagset:
            raise FormatError(f"unknown context tag {context!r}")
    if t != STOP and t not in model.tagset:
        raise FormatError(f"unknown tag {t!r}")
    p3 = model.trigram_p(t, t2, t1)
    p2 = model.bigram_p(t, t1)
    p1 = model.unigram_p(t)
    return model.lambda1 * p3 + model.lambda2 * p2 + (1.0 - model.lambda1 - model.lambda2) * p1


def train(
    sentences: list[TaggedSentence],
    lambda1: float = DEFAULT_LAMBDA1,
    lambda2: float = DEFAULT_LAMBDA2,
    unk_token: str = DEFAULT_UNK,
) -> HmmModel:
    """Maximum-likelihood estimation with two start sentinels and a stop tag.

    Tokens are lowercased; tokens seen exactly once in training are replaced
    by ``unk_token`` before emissions are estimated.
    """
    if not sentences:
        raise FormatError("training set is empty")

    frequency: dict[str, int] = {}
    for sentence in sentences:
        for token in sentence.tokens:
            word = token.text.lower()
            frequency[word] = frequency.get(word, 0) + 1

    observed = {tag for sentence in sentences for tag in sentence.tags}
    tagset = [p.value for p in TAG_PARAMS if p in observed]

    unigram: dict[str, int] = {}
    bigram: dict[str, dict[str, int]] = {}
    trigram: dict[str, dict[str, dict[str, int]]] = {}
    emission: dict[str, dict[str, int]] = {}
    for sentence in sentences:
        tags = [tag.value for tag in sentence.tags]
        padded = [START, START] + tags + [STOP]
        for i in range(2, len(padded)):
            t2, t1, t = padded[i - 2], padded[i - 1], padded[i]
            unigram[t] = unigram.get(t, 0) + 1
            bigram.setdefault(t1, {})[t] = bigram.get(t1, {}).get(t, 0) + 1
            row = trigram.setdefault(t2, {}).setdefault(t1, {})
            row[t] = row.get(t, 0) + 1
        for token, tag in zip(sentence.tokens, sentence.tags):
            word = token.text.lower()
            if frequency[word] == 1:
                word = unk_token
            row = emission.setdefault(tag.value, {})
            row[word] = row.get(word, 0) + 1

    return HmmModel(
        tagset=tagset,
        lambda1=lambda1,
        lambda2=lambda2,
        unigram_counts=unigram,
        bigram_counts=bigram,
        trigram_counts=trigram,
        emission_counts=emission,
        unk_token=unk_token,
    )


def _log(p: float) -> float:
    return math.log(p) if p > 0.0 else -math.inf


def viterbi_decode(model: HmmModel, tokens: list[str]) -> list[CIParam]:
    """Most probable tag sequence under the trigram lattice, in log space.

    The lattice state is the last two tags.  Scores accumulate transition
    then emission per position, matching the brute-force oracle's order so
    that equal-probability paths compare exactly equal.
    """
    if not tokens:
        raise FormatError("cannot decode an empty sentence")
    words = [model.map_word(w) for w in tokens]
    tags = model.tagset
    n = len(words)

    # scores[(u, v)] = best log score of a prefix ending in tags (u, v)
    scores: dict[tuple[str, str], float] = {}
    backpointers: list[dict[tuple[str, str], str]] = [{} for _ in range(n + 1)]
    for v in tags:
        s = _log(interpolated_transition(model, START, START, v))
        s = s + _log(model.emission_p(words[0], v))
        scores[(START, v)] = s

    for k in range(2, n + 1):
        previous_by_u: dict[str, dict[str, float]] = {}
        for (w, u), s in scores.items():
            previous_by_u.setdefault(u, {})[w] = s
        current: dict[tuple[str, str], float] = {}
        for v in tags:
            le = _log(model.emission_p(words[k - 1], v))
            for u, entries in previous_by_u.items():
                best = -math.inf
                best_w: str | None = None
                for w in _context_order(tags, entries):
                    s = entries[w] + _log(interpolated_transition(model, w, u, v))
                    s = s + le
                    if best_w is None or s > best:
                        best = s
                        best_w = w
                assert best_w is not None
                current[(u, v)] = best
                backpointers[k][(u, v)] = best_w
        scores = current

    best = -math.inf
    best_state: tuple[str, str] | None = None
    for v in tags:
        for u in [START] + tags:
            if (u, v) not in scores:
                continue
            s = scores[(u, v)] + _log(interpolated_transition(model, u, v, STOP))
            if best_state is None or s > best:
                best = s
                best_state = (u, v)
    assert best_state is not None
    if best == -math.inf:
        return _fallback_decode(model, words)

    sequence: list[str] = [""] * n
    u, v = best_state
    sequence[n - 1] = v
    if n >= 2:
        sequence[n - 2] = u
    for k in range(n, 2, -1):
        w = backpointers[k][(u, v)]
        sequence[k - 3] = w
        u, v = w, u
    return [CIParam(t) for t in sequence]


def _context_order(tags: list[str], entries: dict[str, float]) -> list[str]:
    return [t for t in [START] + tags if t in entries]


def _fallback_decode(model: HmmModel, words: list[str]) -> list[CIParam]:
    # Reachable only when no tag sequence has positive probability; pick the
    # best tag per token from unigram times emission.
    out: list[CIParam] = []
    for word in words:
        best = -math.inf
        best_tag = model.tagset[0]
        for tag in model.tagset:
            s = _log(model.unigram_p(tag))
            s = s + _log(model.emission_p(word, tag))
            if s > best:
                best = s
                best_tag = tag
        out.append(CIParam(best_tag))
    return out


def tune_lambdas(
    train_set: list[TaggedSentence],
    validation: list[TaggedSentence],
    grid_step: float,
) -> tuple[float, float]:
    """Grid-search the interpolation weights on validation token accuracy.

    Ties go to the smaller ``lambda1``, then the smaller ``lambda2``.
    """
    if not 0.0 < grid_step <= 0.5:
        raise FormatError(f"grid step must be in (0, 0.5], got {grid_step}")
    if not train_set or not validation:
        raise FormatError("training and validation sets must be non-empty")
    base = train(train_set, 0.0, 0.0)
    grid: list[float] = []
    k = 0
    while k * grid_step <= 1.0 + 1e-9:
        grid.append(round(k * grid_step, 10))
        k += 1

    total_tokens = sum(len(s.tokens) for s in validation)
    best_accuracy = -1.0
    best_pair = (0.0, 0.0)
    for lambda1 in grid:
        for lambda2 in grid:
            if lambda1 + lambda2 > 1.0 + 1e-9:
                continue
            model = base.with_lambdas(lambda1, lambda2)
            correct = 0
            for sentence in validation:
                decoded = viterbi_decode(model, [t.text for t in sentence.tokens])
                correct += sum(d == g for d, g in zip(decoded, sentence.tags))
            accuracy = correct / total_tokens if total_tokens else 0.0
            if accuracy > best_accuracy:
                best_accuracy = accuracy
                best_pair = (lambda1, lambda2)
    return best_pair


def save_model(model: HmmModel, path: str | Path) -> None:
    payload = {
        "format": _MODEL_FORMAT,
        "version": _MODEL_VERSION,
        "tagset": model.tagset,
        "lambda1": model.lambda1,
        "lambda2": model.lambda2,
        "unk_token": model.unk_token,
        "unigram_counts": model.unigram_counts,
        "bigram_counts": model.bigram_counts,
        "trigram_counts": model.trigram_counts,
        "emission_counts": model.emission_counts,
    }
    with open(path, "w", encoding="utf-8", newline="\n") as handle:
        json.dump(payload, handle, ensure_ascii=False, sort_keys=True, indent=2)
        handle.write("\n")


def load_model(path: str | Path) -> HmmModel:
    with open(path, encoding="utf-8") as handle:
        try:
            payload = json.load(handle)
        except json.JSONDecodeError as exc:
            raise FormatError(f"{path}: malformed model file: {exc}") from exc
    if payload.get("format") != _MODEL_FORMAT or payload.get("version") != _MODEL_VERSION:
        raise FormatError(
            f"{path}: expected {_MODEL_FORMAT} version {_MODEL_VERSION}"
        )
    try:
        return HmmModel(
            tagset=payload["tagset"],
            lambda1=payload["lambda1"],
            lambda2=payload["lambda2"],
            unigram_counts=payload["unigram_counts"],
            bigram_counts=payload["bigram_counts"],
            trigram_counts=payload["trigram_counts"],
            emission_counts=payload["emission_counts"],
            unk_token=payload["unk_token"],
        )
    except KeyError as exc:
        raise FormatError(f"{path}: model file missing field {exc}") from exc
