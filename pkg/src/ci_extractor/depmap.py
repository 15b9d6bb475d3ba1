"""Map dependency-parsed statements to CI parameter spans.

Each token whose dependency type is on a rule list contributes the covering
interval of its subtree as a span.  Dependency types cannot separate senders
from receivers, so subject-position matches are labeled ``Actor``.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

from ci_extractor.config import load_toml
from ci_extractor.corpus import CIParam, FlowAnnotation, Span
from ci_extractor.errors import FormatError
from ci_extractor.interchange import DepTree

#: Coarse POS values treated as pronouns.
PRONOUN_POS = frozenset({"PRON", "PRP", "PRP$"})

#: Dependency types that count as subject position for the pronoun rule.
SUBJECT_RELATIONS = frozenset({"nsubj", "nsubjpass"})

#: Types whose span is the object of the relation, not the token itself
#: (passive by-phrases).
_AGENT_OBJECT_TYPES = ("pobj", "obj")


@dataclass(frozen=True)
class DepMappingRules:
    attribute_types: frozenset[str] = frozenset({"dobj", "parataxis", "nsubjpass"})
    actor_types: frozenset[str] = frozenset({"nsubj"})
    tp_types: frozenset[str] = frozenset({"xcomp", "ccomp", "advcl", "oprd"})
    subject_types: frozenset[str] = frozenset({"poss", "agent"})
    pronoun_actors: bool = True

    def __post_init__(self) -> None:
        sets = [
            self.attribute_types,
            self.actor_types,
            self.tp_types,
            self.subject_types,
        ]
        for i, left in enumerate(sets):
            for right in sets[i + 1 :]:
                common = left & right
                if common:
                    raise FormatError(
                        f"dependency rule sets overlap on {sorted(common)}"
                    )


DEFAULT_RULES = DepMappingRules()


def load_rules(path: str | Path) -> DepMappingRules:
    """Read mapping rules from a TOML file with per-parameter type lists."""
    data = load_toml(path)
    try:
        return DepMappingRules(
            attribute_types=frozenset(data.get("attribute", DEFAULT_RULES.attribute_types)),
            actor_types=frozenset(data.get("actor", DEFAULT_RULES.actor_types)),
            tp_types=frozenset(data.get("tp", DEFAULT_RULES.tp_types)),
            subject_types=frozenset(data.get("subject", DEFAULT_RULES.subject_types)),
            pronoun_actors=bool(data.get("pronoun_actors", True)),
        )
    except TypeError as exc:
        raise FormatError(f"{path}: bad rules file: {exc}") from exc


def subtree_span(tree: DepTree, index: int) -> tuple[int, int]:
    """Covering interval of a token and all of its descendants.

    For non-projective attachments the interval may include tokens that are
    not descendants; the result is always contiguous.
    """
    if not 0 <= index < len(tree.tokens):
        raise FormatError(f"token index {index} out of range")
    children = tree.children()
    lo = hi = index
    stack = [index]
    while stack:
        node = stack.pop()
        lo = min(lo, node)
        hi = max(hi, node)
        stack.extend(children[node])
    return lo, hi + 1


def map_dependencies(tree: DepTree, rules: DepMappingRules = DEFAULT_RULES) -> FlowAnnotation:
    """Project rule-listed dependency types onto CI parameter spans."""
    children = tree.children()
    spans: list[Span] = []
    seen: set[tuple[int, int, CIParam, str]] = set()

    def emit(start: int, end: int, param: CIParam, source_tag: str) -> None:
        key = (start, end, param, source_tag)
        if key not in seen:
            seen.add(key)
            spans.append(Span(start=start, end=end, param=param, source_tag=source_tag))

    for index, dep in enumerate(tree.dep_types):
        if dep in rules.attribute_types:
            start, end = subtree_span(tree, index)
            emit(start, end, CIParam.ATTRIBUTE, dep)
        if dep in rules.tp_types:
            start, end = subtree_span(tree, index)
            emit(start, end, CIParam.TP, dep)
        if dep in rules.subject_types:
            target = index
            if dep == "agent":
                for child in children[index]:
                    if tree.dep_types[child] in _AGENT_OBJECT_TYPES:
                        target = child
                        break
            start, end = subtree_span(tree, target)
            emit(start, end, CIParam.SUBJECT, dep)
        if dep in rules.actor_types:
            start, end = subtree_span(tree, index)
            emit(start, end, CIParam.ACTOR, dep)
        elif (
            rules.pronoun_actors
            and dep in SUBJECT_RELATIONS
            and (tree.tokens[index].pos or "") in PRONOUN_POS
        ):
            start, end = subtree_span(tree, index)
            emit(start, end, CIParam.ACTOR, dep)

    spans.sort(key=lambda s: (s.start, s.end, s.param.value, s.source_tag))
    return FlowAnnotation(statement_id=tree.statement_id, method="dp", spans=spans)
