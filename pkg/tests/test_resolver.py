"""Keyword-to-entity resolution across one or more ontologies."""

import pytest

from conftest import HEADER
from ontoquery.lexicon import SynonymLexicon
from ontoquery.ontology import parse_ontology
from ontoquery.rdf import EntityKind
from ontoquery.resolver import NoKeywordResolvedError, Tier, resolve

PIZZA_NS = "http://ex.org/pizza"
MOUSE_NS = "http://ex.org/mouse"

LEX = SynonymLexicon(
    {
        "hot": frozenset({"thermal"}),
        "thermal": frozenset({"hot"}),
        "topping": frozenset({"garnish"}),
        "garnish": frozenset({"topping"}),
    }
)


@pytest.fixture(scope="module")
def registry(pizza_source, mouse_source):
    return {
        "pizza": parse_ontology(pizza_source),
        "mouse": parse_ontology(mouse_source),
    }


def match_keys(rk):
    return {(m.ontology_id, m.iri.local_name, m.kind, m.tier) for m in rk.matches}


class TestTiers:
    def test_direct_match(self, registry):
        resolved, unresolved = resolve(["FishTopping"], registry, LEX)
        assert unresolved == []
        assert match_keys(resolved[0]) == {
            ("pizza", "FishTopping", EntityKind.CLASS, Tier.DIRECT)
        }

    def test_direct_is_case_insensitive(self, registry):
        resolved, _ = resolve(["fishtopping"], registry, LEX)
        assert match_keys(resolved[0]) == {
            ("pizza", "FishTopping", EntityKind.CLASS, Tier.DIRECT)
        }

    def test_synonym_match_via_whole_name(self, registry):
        resolved, _ = resolve(["thermal"], registry, LEX)
        (m,) = resolved[0].matches
        assert (m.ontology_id, m.iri.local_name, m.kind, m.tier) == (
            "pizza",
            "Hot",
            EntityKind.CLASS,
            Tier.SYNONYM,
        )
        assert m.via_word == "thermal"

    def test_synonym_match_via_name_part(self, registry):
        # "garnish" is a synonym of the segment "topping", present in
        # four pizza entities of two kinds.
        resolved, _ = resolve(["garnish"], registry, LEX)
        assert match_keys(resolved[0]) == {
            ("pizza", "Topping", EntityKind.CLASS, Tier.SYNONYM),
            ("pizza", "FishTopping", EntityKind.CLASS, Tier.SYNONYM),
            ("pizza", "hasTopping", EntityKind.OBJECT_PROPERTY, Tier.SYNONYM),
            ("pizza", "isToppingOf", EntityKind.OBJECT_PROPERTY, Tier.SYNONYM),
        }

    def test_label_fallback_for_symbol_heavy_names(self, registry):
        # No entity or synonym is called "sacrum", but MA-0001480 wears
        # that label.
        resolved, _ = resolve(["sacrum"], registry, LEX)
        assert match_keys(resolved[0]) == {
            ("mouse", "MA-0001480", EntityKind.CLASS, Tier.LABEL)
        }

    def test_direct_suppresses_lower_tiers_for_same_entity_only(self):
        src = HEADER + ":Garnish a owl:Class .\n:Topping a owl:Class .\n"
        o = parse_ontology(src)
        resolved, _ = resolve(["garnish"], {"t": o}, LEX)
        keys = match_keys(resolved[0])
        # Direct hit on Garnish itself, synonym hit kept for Topping.
        assert ("t", "Garnish", EntityKind.CLASS, Tier.DIRECT) in keys
        assert ("t", "Topping", EntityKind.CLASS, Tier.SYNONYM) in keys
        assert len(keys) == 2

    def test_label_tier_not_added_when_name_matches(self, registry):
        # "Pizza" is both a class name and that class's label; only the
        # direct match survives for the pair.
        resolved, _ = resolve(["Pizza"], registry, LEX)
        assert match_keys(resolved[0]) == {
            ("pizza", "Pizza", EntityKind.CLASS, Tier.DIRECT)
        }


class TestAcrossOntologies:
    def test_each_keyword_routes_to_owner(self, registry):
        resolved, unresolved = resolve(
            ["FishTopping", "MA-0001480", "hasBase"], registry, LEX
        )
        assert unresolved == []
        owners = [
            {m.ontology_id for m in rk.matches} for rk in resolved
        ]
        assert owners == [{"pizza"}, {"mouse"}, {"pizza"}]

    def test_surface_order_preserved(self, registry):
        resolved, _ = resolve(["Italy", "Food"], registry, LEX)
        assert [rk.surface for rk in resolved] == ["Italy", "Food"]


class TestUnresolved:
    def test_partial(self, registry):
        resolved, unresolved = resolve(["FishTopping", "xyzzy"], registry, LEX)
        assert [rk.surface for rk in resolved] == ["FishTopping"]
        assert unresolved == ["xyzzy"]

    def test_all_unresolved_raises(self, registry):
        with pytest.raises(NoKeywordResolvedError) as e:
            resolve(["xyzzy", "plugh"], registry, LEX)
        assert e.value.tokens == ["xyzzy", "plugh"]

    def test_matches_are_deduplicated_and_sorted(self, registry):
        resolved, _ = resolve(["garnish"], registry, LEX)
        names = [m.iri.local_name for m in resolved[0].matches]
        assert names == sorted(names)
        assert len(names) == len(set(names))
