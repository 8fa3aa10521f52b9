"""Map preprocessed keywords to ontology entities.

Each keyword is matched against every registered ontology through three
tiers, strongest first:

1. ``DIRECT``  - the keyword equals an entity's local name
   (case-insensitive).
2. ``SYNONYM`` - a lexicon synonym of the keyword equals an entity name,
   or the keyword is a synonym of one of the segments of an entity name
   (so "garnish" reaches ``hasTopping`` through its "topping" part).
3. ``LABEL``   - the keyword equals an ``rdfs:label`` value
   (case-insensitive).

A given (ontology, entity) pair is reported once, under its strongest
tier.  Keywords that no tier can place are returned separately; if that
happens to every keyword the query cannot proceed and
:class:`NoKeywordResolvedError` is raised.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Mapping, Optional, Sequence

from .lexicon import SynonymLexicon, segment_name, synonyms_of
from .ontology import Ontology
from .rdf import EntityKind, Iri


class NoKeywordResolvedError(Exception):
    """Raised when not a single keyword matched any entity."""

    def __init__(self, tokens: Sequence[str]):
        self.tokens = list(tokens)
        super().__init__(f"no keyword could be resolved: {self.tokens}")


class Tier(Enum):
    DIRECT = "Direct"
    SYNONYM = "Synonym"
    LABEL = "Label"


# Lower rank wins when the same entity is reached through several tiers.
_RANK = {Tier.DIRECT: 0, Tier.SYNONYM: 1, Tier.LABEL: 2}


@dataclass(frozen=True)
class Match:
    """One entity a keyword resolved to."""

    ontology_id: str
    iri: Iri
    kind: EntityKind
    tier: Tier
    via_word: Optional[str] = None


@dataclass(frozen=True)
class ResolvedKeyword:
    surface: str
    matches: tuple[Match, ...]


def _name_expansion(name: str, lex: SynonymLexicon) -> frozenset[str]:
    """All lexicon synonyms of any segment of ``name``, lowercased."""
    words: set[str] = set()
    for part in segment_name(name):
        words.update(synonyms_of(lex, part))
    return frozenset(words)


def _matches_for(
    token: str,
    ontology_id: str,
    ontology: Ontology,
    lex: SynonymLexicon,
) -> list[Match]:
    low = token.lower()
    synonyms = synonyms_of(lex, low)
    best: dict[Iri, Match] = {}

    def offer(iri: Iri, kind: EntityKind, tier: Tier, word: Optional[str]) -> None:
        held = best.get(iri)
        if held is None or _RANK[tier] < _RANK[held.tier]:
            best[iri] = Match(ontology_id, iri, kind, tier, word)

    for iri, kind in ontology.entities.values():
        name_low = iri.local_name.lower()
        if name_low == low:
            offer(iri, kind, Tier.DIRECT, None)
        elif name_low in synonyms or low in _name_expansion(iri.local_name, lex):
            offer(iri, kind, Tier.SYNONYM, token)

    for iri, labels in ontology.labels.items():
        if any(label.lower() == low for label in labels):
            hit = ontology.entity_kind(iri.local_name)
            assert hit is not None
            offer(iri, hit[1], Tier.LABEL, None)

    return sorted(best.values(), key=lambda m: m.iri.local_name)


def resolve(
    tokens: Sequence[str],
    ontologies: Mapping[str, Ontology],
    lex: SynonymLexicon,
) -> tuple[list[ResolvedKeyword], list[str]]:
    """Resolve ``tokens`` against every ontology in ``ontologies``.

    Returns ``(resolved, unresolved)`` where ``resolved`` preserves the
    order of the input tokens and ``unresolved`` lists the tokens no
    tier could place.
    """
    resolved: list[ResolvedKeyword] = []
    unresolved: list[str] = []
    for token in tokens:
        matches: list[Match] = []
        for ontology_id in sorted(ontologies):
            matches.extend(
                _matches_for(token, ontology_id, ontologies[ontology_id], lex)
            )
        if matches:
            resolved.append(ResolvedKeyword(token, tuple(matches)))
        else:
            unresolved.append(token)
    if tokens and not resolved:
        raise NoKeywordResolvedError(tokens)
    return resolved, unresolved
