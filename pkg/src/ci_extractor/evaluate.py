"""Scoring: word-level tag metrics and statement-macro phrase metrics.

Two counting modes:

* word level -- token counts pooled over the whole test set, one tag per
  token, the outside label excluded as a scored class;
* phrase macro -- per-statement precision/recall from greedy one-to-one span
  matching, averaged across statements, F1 from the averaged P and R.

Macro-average conventions (footnoted in reports): a statement contributes to
a parameter only if either side has a span for it; an empty denominator
scores zero.  ``Actor`` spans are excluded from per-parameter scoring and
only appear in the source-tag distributions.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from ci_extractor.corpus import CIParam, FlowAnnotation, SPAN_PARAMS, Span
from ci_extractor.errors import FormatError
from ci_extractor.interchange import TaggedSentence

_PARAM_ORDER = {p: i for i, p in enumerate(SPAN_PARAMS)}


class Mode(Enum):
    WORD_LEVEL = "word-level"
    PHRASE_MACRO = "phrase-macro"


class Criterion(Enum):
    OVERLAP = "overlap"
    EXACT = "exact"


@dataclass(frozen=True)
class MatchPolicy:
    """How a predicted span may claim a gold span.

    ``overlap_threshold`` is the minimum shared-token fraction of the gold
    span; zero means any shared token qualifies.  Exact matching ignores it.
    """

    criterion: Criterion = Criterion.OVERLAP
    overlap_threshold: float = 0.0

    def __post_init__(self) -> None:
        if not 0.0 <= self.overlap_threshold <= 1.0:
            raise FormatError(
                f"overlap threshold must be in [0, 1], got {self.overlap_threshold}"
            )


@dataclass
class PrfCounts:
    tp: int = 0
    fp: int = 0
    fn: int = 0


@dataclass(frozen=True)
class ParamScore:
    param: CIParam
    recall: float
    precision: float
    f1: float
    mode: Mode
    support: int


@dataclass(frozen=True)
class TagShare:
    tag: str
    total: int
    matched: int
    tp_pct: float
    fp_pct: float


@dataclass
class PolicyF1Histogram:
    policy_f1: dict[str, float]
    bins: list[tuple[str, int]]


def _f1(precision: float, recall: float) -> float:
    if precision + recall == 0.0:
        return 0.0
    return 2 * precision * recall / (precision + recall)


def _qualifies(pred: Span, gold: Span, policy: MatchPolicy) -> int:
    """Shared-token count if the pair qualifies under the policy, else 0."""
    if policy.criterion is Criterion.EXACT:
        if (pred.start, pred.end) == (gold.start, gold.end):
            return gold.end - gold.start
        return 0
    shared = pred.overlap(gold)
    if shared == 0:
        return 0
    if shared / (gold.end - gold.start) < policy.overlap_threshold:
        return 0
    return shared


def score_statement(
    pred: FlowAnnotation, gold: FlowAnnotation, policy: MatchPolicy
) -> dict[CIParam, PrfCounts]:
    """Greedy one-to-one span matching, per parameter.

    Predictions are visited in start order; each claims the unmatched gold
    span with the largest qualifying overlap (ties to the earliest gold).
    """
    if pred.statement_id != gold.statement_id:
        raise FormatError(
            f"statement mismatch: {pred.statement_id!r} vs {gold.statement_id!r}"
        )
    params = sorted(
        {s.param for s in pred.spans} | {s.param for s in gold.spans},
        key=lambda p: _PARAM_ORDER[p],
    )
    counts: dict[CIParam, PrfCounts] = {}
    for param in params:
        if param is CIParam.ACTOR:
            continue
        gold_spans = sorted(gold.spans_for(param), key=lambda s: (s.start, s.end))
        pred_spans = sorted(
            pred.spans_for(param), key=lambda s: (s.start, s.end, s.source_tag)
        )
        matched = [False] * len(gold_spans)
        c = PrfCounts()
        for p in pred_spans:
            best_shared = 0
            best_index: int | None = None
            for i, g in enumerate(gold_spans):
                if matched[i]:
                    continue
                shared = _qualifies(p, g, policy)
                if shared > best_shared:
                    best_shared = shared
                    best_index = i
            if best_index is None:
                c.fp += 1
            else:
                matched[best_index] = True
                c.tp += 1
        c.fn = matched.count(False)
        counts[param] = c
    return counts


def macro_average(per_statement: list[dict[CIParam, PrfCounts]]) -> list[ParamScore]:
    """Mean per-statement P and R across statements; F1 from the means."""
    if not per_statement:
        raise FormatError("no statement scores to average")
    params = sorted(
        {p for counts in per_statement for p in counts},
        key=lambda p: _PARAM_ORDER[p],
    )
    scores: list[ParamScore] = []
    for param in params:
        precisions: list[float] = []
        recalls: list[float] = []
        for counts in per_statement:
            c = counts.get(param)
            if c is None or (c.tp + c.fp + c.fn) == 0:
                continue  # parameter absent on both sides: skipped
            precisions.append(c.tp / (c.tp + c.fp) if c.tp + c.fp else 0.0)
            recalls.append(c.tp / (c.tp + c.fn) if c.tp + c.fn else 0.0)
        if not precisions:
            continue
        precision = sum(precisions) / len(precisions)
        recall = sum(recalls) / len(recalls)
        scores.append(
            ParamScore(
                param=param,
                recall=recall,
                precision=precision,
                f1=_f1(precision, recall),
                mode=Mode.PHRASE_MACRO,
                support=len(precisions),
            )
        )
    return scores


def word_level_scores(
    pred: list[TaggedSentence], gold: list[TaggedSentence]
) -> list[ParamScore]:
    """Pooled token-level counts over aligned tag sequences."""
    if len(pred) != len(gold):
        raise FormatError(
            f"{len(pred)} predicted sentences vs {len(gold)} gold sentences"
        )
    pooled: dict[CIParam, PrfCounts] = {}

    def counts_for(param: CIParam) -> PrfCounts:
        return pooled.setdefault(param, PrfCounts())

    for p, g in zip(pred, gold):
        if p.statement_id != g.statement_id:
            raise FormatError(
                f"statement mismatch: {p.statement_id!r} vs {g.statement_id!r}"
            )
        if len(p.tags) != len(g.tags):
            raise FormatError(
                f"{p.statement_id}: {len(p.tags)} predicted tags vs {len(g.tags)} gold"
            )
        for pt, gt in zip(p.tags, g.tags):
            if pt is gt:
                if pt is not CIParam.O:
                    counts_for(pt).tp += 1
            else:
                if pt is not CIParam.O:
                    counts_for(pt).fp += 1
                if gt is not CIParam.O:
                    counts_for(gt).fn += 1

    scores: list[ParamScore] = []
    for param in sorted(pooled, key=lambda p: _PARAM_ORDER[p]):
        c = pooled[param]
        precision = c.tp / (c.tp + c.fp) if c.tp + c.fp else 0.0
        recall = c.tp / (c.tp + c.fn) if c.tp + c.fn else 0.0
        scores.append(
            ParamScore(
                param=param,
                recall=recall,
                precision=precision,
                f1=_f1(precision, recall),
                mode=Mode.WORD_LEVEL,
                support=c.tp + c.fn,
            )
        )
    return scores


#: Gold parameters an Actor prediction may legitimately stand for.
_ACTOR_COMPATIBLE = frozenset({CIParam.SENDER, CIParam.RECEIVER})


def tag_distribution(
    predictions: list[FlowAnnotation],
    gold_by_id: dict[str, FlowAnnotation],
    policy: MatchPolicy,
) -> list[TagShare]:
    """Share of each source tag's spans that hit a gold span.

    Unlike per-parameter scoring this is per-span and not one-to-one, and
    Actor spans count as hits against gold senders or receivers.
    """
    totals: dict[str, int] = {}
    hits: dict[str, int] = {}
    for prediction in predictions:
        gold = gold_by_id.get(prediction.statement_id)
        if gold is None:
            raise FormatError(
                f"no gold annotation for statement {prediction.statement_id!r}"
            )
        for span in prediction.spans:
            compatible = (
                _ACTOR_COMPATIBLE if span.param is CIParam.ACTOR else {span.param}
            )
            matched = any(
                g.param in compatible and _qualifies(span, g, policy) > 0
                for g in gold.spans
            )
            totals[span.source_tag] = totals.get(span.source_tag, 0) + 1
            if matched:
                hits[span.source_tag] = hits.get(span.source_tag, 0) + 1
    shares = []
    for tag in sorted(totals):
        total = totals[tag]
        matched = hits.get(tag, 0)
        shares.append(
            TagShare(
                tag=tag,
                total=total,
                matched=matched,
                tp_pct=100.0 * matched / total,
                fp_pct=100.0 * (total - matched) / total,
            )
        )
    return shares


DEFAULT_BIN_EDGES = (0.7, 0.8, 0.9)


def per_policy_f1(
    scored: list[tuple[str, dict[CIParam, PrfCounts]]],
    bin_edges: tuple[float, ...] = DEFAULT_BIN_EDGES,
) -> PolicyF1Histogram:
    """Per-policy macro F1 (mean over parameters), bucketed into bins.

    Policies whose statements have no scorable parameters are left out.
    Bins are half-open on the right; the last bin closes at 100.
    """
    if not bin_edges or list(bin_edges) != sorted(bin_edges):
        raise FormatError(f"bin edges must be ascending, got {bin_edges}")
    grouped: dict[str, list[dict[CIParam, PrfCounts]]] = {}
    for policy_id, counts in scored:
        grouped.setdefault(policy_id, []).append(counts)
    policy_f1: dict[str, float] = {}
    for policy_id in sorted(grouped):
        scores = macro_average(grouped[policy_id])
        if not scores:
            continue
        policy_f1[policy_id] = sum(s.f1 for s in scores) / len(scores)

    labels = [f"<{int(bin_edges[0] * 100)}"]
    for lo, hi in zip(bin_edges, bin_edges[1:]):
        labels.append(f"{int(lo * 100)}-{int(hi * 100) - 1}")
    labels.append(f"{int(bin_edges[-1] * 100)}-100")
    counts = [0] * len(labels)
    for value in policy_f1.values():
        index = 0
        for i, edge in enumerate(bin_edges):
            if value >= edge:
                index = i + 1
        counts[index] += 1
    return PolicyF1Histogram(
        policy_f1=policy_f1, bins=list(zip(labels, counts))
    )
