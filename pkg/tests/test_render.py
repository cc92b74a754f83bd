import json

import pytest

from phrasebook import (
    GenerationSpec,
    JokerSentence,
    generate_random,
    parse_catalogue,
    render_description,
    render_sentence,
    resolve_slots,
    validate_selection,
)
from phrasebook.errors import RenderError
from phrasebook.model import LayoutPart, Phrase
from phrasebook.render import capitalize_first

from .conftest import (
    BONDING_SELECTION,
    BONDING_SENTENCE_IT,
    MARGINS_SELECTION,
    MARGINS_SENTENCES,
    WET_SELECTION,
    WET_SENTENCES,
    load_doc,
    make_selection,
)
from .oracles import naive_render


class TestReferenceSentences:
    @pytest.mark.parametrize("lang", ["de", "en", "fr", "it"])
    def test_wet_avalanches(self, wet_cat, lang):
        sel = make_selection("p65", WET_SELECTION)
        assert render_sentence(wet_cat, sel, lang).text == WET_SENTENCES[lang]

    @pytest.mark.parametrize("lang", ["de", "en", "fr", "it"])
    def test_release_margins(self, margins_cat, lang):
        sel = make_selection("p57", MARGINS_SELECTION)
        assert render_sentence(margins_cat, sel, lang).text == MARGINS_SENTENCES[lang]

    def test_bonding_glue_across_slot_boundary(self, bonding_cat):
        sel = make_selection("p22", BONDING_SELECTION)
        assert render_sentence(bonding_cat, sel, "it").text == BONDING_SENTENCE_IT

    def test_bonding_glue_with_second_article(self, bonding_cat):
        sel = make_selection("p22", dict(BONDING_SELECTION, **{"3": "o2"}))
        assert (
            render_sentence(bonding_cat, sel, "it").text
            == "Il legame dei vari accumuli di neve ventata è in corso."
        )

    def test_nested_slots_two_levels(self, drift_cat):
        sel = make_selection(
            "p19",
            {
                "1": "o4",
                "1/o4/vor_alle/1": "o2",
                "1/o4/Gebiet/1": "o2",
                "1/o4/Gebiet/1/o2/östlich/1": "o1",
                "1/o4/Gebiet/1/o2/Ort/1": "o1",
                "1/o4/,Gebiet/1": "o2",
                "1/o4/und_Gebiet/1": "o2",
                "2": "o1",
                "3": "o1",
                "4": "o1",
                "5": "o2",
            },
        )
        assert render_sentence(drift_cat, sel, "de").text == (
            "Vor allem am Alpennordhang östlich von Interlaken, in der Urseren "
            "und in den östlichen Voralpen wachsen die Triebschneeansammlungen weiter an."
        )


def test_empty_options_drop_without_double_spaces(margins_cat):
    sel = make_selection("p57", {"1": "o1", "2": "o1", "3": "o1", "4": "o1"})
    assert render_sentence(margins_cat, sel, "en").text == "Elsewhere, avalanches can be released."
    assert render_sentence(margins_cat, sel, "de").text == "Sonst können Lawinen ausgelöst werden."
    assert render_sentence(margins_cat, sel, "it").text == "Altrimenti le valanghe possono distaccarsi."


def test_empty_nested_slot_drops(drift_cat):
    sel = make_selection(
        "p19",
        {
            "1": "o3",
            "1/o3/vor_alle/1": "o1",  # blank sub-segment
            "2": "o1",
            "3": "o1",
            "4": "o1",
            "5": "o1",
        },
    )
    assert render_sentence(drift_cat, sel, "de").text == (
        "In Kamm- und Passlagen wachsen die Triebschneeansammlungen an."
    )


def test_determinism(wet_cat):
    sel = make_selection("p65", WET_SELECTION)
    first = [render_sentence(wet_cat, sel, lang).text for lang in wet_cat.language_codes]
    second = [render_sentence(wet_cat, sel, lang).text for lang in wet_cat.language_codes]
    assert first == second


def test_unknown_language_rejected(wet_cat):
    sel = make_selection("p65", WET_SELECTION)
    with pytest.raises(RenderError) as err:
        render_sentence(wet_cat, sel, "es")
    assert err.value.code == "UNKNOWN_LANGUAGE"


def test_incomplete_selection_rejected(wet_cat):
    sel = make_selection("p65", {"1": "o1"})
    with pytest.raises(RenderError) as err:
        render_sentence(wet_cat, sel, "de")
    assert err.value.code == "INCOMPLETE_SELECTION"


def test_missing_child_choice_rejected(wet_cat):
    choices = dict(WET_SELECTION)
    choices.pop("5/o2/ziemlich/1")
    with pytest.raises(RenderError) as err:
        render_sentence(wet_cat, make_selection("p65", choices), "de")
    assert err.value.code == "INCOMPLETE_SELECTION"


def test_render_matches_naive_oracle_on_random_selections():
    for name, phrase_ids in [
        ("drift_growth", ["p19", "p23"]),
        ("wet_avalanches", ["p65"]),
        ("release_margins", ["p57"]),
        ("bonding", ["p22"]),
    ]:
        doc = load_doc(name)
        cat = parse_catalogue(json.dumps(doc, ensure_ascii=False).encode("utf-8"))
        for phrase_id in phrase_ids:
            for sel in generate_random(cat, GenerationSpec(phrase_id, seed=99, count=40)):
                raw_choices = sel.to_document()["choices"]
                for lang in cat.language_codes:
                    assert (
                        render_sentence(cat, sel, lang).text
                        == naive_render(doc, phrase_id, raw_choices, lang)
                    ), (name, phrase_id, raw_choices, lang)


def test_layout_order_changes_order_not_content(bonding_cat):
    rotated = Phrase(
        phrase_id="p22",
        number=22,
        segments=bonding_cat.phrases["p22"].segments,
        layouts={
            **bonding_cat.phrases["p22"].layouts,
            "it": tuple(
                LayoutPart.from_str(t) for t in ["5", "1", "2a", "3", "4", "2b"]
            ),
        },
        title=bonding_cat.phrases["p22"].title,
    )
    cat = type(bonding_cat)(
        schema_version=bonding_cat.schema_version,
        languages=bonding_cat.languages,
        lists=bonding_cat.lists,
        phrases={"p22": rotated},
    )
    sel = make_selection("p22", BONDING_SELECTION)
    original = render_sentence(bonding_cat, sel, "it").text
    moved = render_sentence(cat, sel, "it").text
    normalize = lambda s: sorted(s.lower().replace(".", "").split())
    assert normalize(original) == normalize(moved)
    assert original != moved


class TestCapitalization:
    def test_basic(self):
        assert capitalize_first("il legame") == "Il legame"

    def test_accented(self):
        assert capitalize_first("è in corso") == "È in corso"

    def test_skips_leading_non_alpha(self):
        assert capitalize_first('"zeitweise" gilt das') == '"Zeitweise" gilt das'
        assert capitalize_first("2500 m sind erreicht") == "2500 M sind erreicht"

    def test_no_alpha_unchanged(self):
        assert capitalize_first("2500") == "2500"
        assert capitalize_first("") == ""

    def test_idempotent(self):
        for text in ["il legame", "È in corso", "'quote' first", "123 abc"]:
            once = capitalize_first(text)
            assert capitalize_first(once) == once


class TestRenderDescription:
    def test_sentences_joined_with_single_space(self, bulletin_cat):
        items = [
            make_selection("p65", WET_SELECTION),
            make_selection("p57", MARGINS_SELECTION),
        ]
        assert render_description(bulletin_cat, items, "de") == (
            WET_SENTENCES["de"] + " " + MARGINS_SENTENCES["de"]
        )

    def test_empty_description(self, bulletin_cat):
        assert render_description(bulletin_cat, [], "de") == ""

    def test_joker_inserted_verbatim(self, bulletin_cat):
        joker = JokerSentence(texts={"de": "Achtung.", "en": "Ad-hoc warning."})
        assert render_description(bulletin_cat, [joker], "en") == "Ad-hoc warning."

    def test_joker_missing_language(self, bulletin_cat):
        joker = JokerSentence(texts={"de": "Achtung."})
        with pytest.raises(RenderError) as err:
            render_description(bulletin_cat, [joker], "en")
        assert err.value.code == "MISSING_JOKER_TEXT"

    def test_error_carries_sentence_index(self, bulletin_cat):
        items = [
            make_selection("p65", WET_SELECTION),
            make_selection("p57", {"1": "o1"}),
        ]
        with pytest.raises(RenderError) as err:
            render_description(bulletin_cat, items, "de")
        assert err.value.code == "INCOMPLETE_SELECTION"
        assert "sentences[1]" in (err.value.path or "")


class TestResolveSlots:
    def test_segments_without_choices(self, drift_cat):
        tree = resolve_slots(drift_cat, make_selection("p19", {}))
        assert [s.path for s in tree] == [(1,), (2,), (3,), (4,), (5,)]
        assert [len(s.options) for s in tree] == [8, 2, 3, 1, 7]
        assert all(s.chosen is None for s in tree)

    def test_choice_reveals_child_slots(self, drift_cat):
        tree = resolve_slots(drift_cat, make_selection("p19", {"1": "o4"}))
        child_lists = [s.list_id for s in tree if len(s.path) > 1]
        assert child_lists == ["vor_alle", "Gebiet", ",Gebiet", "und_Gebiet"]

    def test_nested_choice_reveals_grandchildren(self, drift_cat):
        sel = make_selection("p19", {"1": "o4", "1/o4/Gebiet/1": "o2"})
        tree = resolve_slots(drift_cat, sel)
        deep = [s.list_id for s in tree if len(s.path) > 4]
        assert deep == ["östlich", "Ort"]

    def test_single_segment_fixed_phrase(self):
        from .test_parsing import MINIMAL, doc_bytes

        cat = parse_catalogue(doc_bytes(MINIMAL))
        tree = resolve_slots(cat, make_selection("p1", {}))
        assert len(tree) == 1
        assert len(tree[0].options) == 1

    def test_blank_option_label(self, wet_cat):
        tree = resolve_slots(wet_cat, make_selection("p65", {}))
        seg4 = next(s for s in tree if s.path == (4,))
        assert seg4.options[0].label == "[Empty]"

    def test_hint_surfaces_in_options(self, margins_cat):
        tree = resolve_slots(margins_cat, make_selection("p57", {}))
        seg1 = next(s for s in tree if s.path == (1,))
        assert seg1.options[1].editor_hint == "=die Lawinen"
        assert seg1.options[3].editor_hint == "=die Triebschneeansammlungen"

    def test_unknown_phrase(self, drift_cat):
        with pytest.raises(RenderError) as err:
            resolve_slots(drift_cat, make_selection("nope", {}))
        assert err.value.code == "UNKNOWN_PHRASE"

    def test_stale_choice(self, drift_cat):
        with pytest.raises(RenderError) as err:
            resolve_slots(drift_cat, make_selection("p19", {"1": "gone"}))
        assert err.value.code == "STALE_OPTION"


class TestValidateSelection:
    def test_complete_selection_passes(self, bonding_cat):
        report = validate_selection(bonding_cat, make_selection("p22", BONDING_SELECTION))
        assert report.errors == ()

    def test_missing_choice_reports_path(self, bonding_cat):
        choices = dict(BONDING_SELECTION)
        choices.pop("3")
        report = validate_selection(bonding_cat, make_selection("p22", choices))
        assert [(f.code, f.path) for f in report.errors] == [("MISSING_CHOICE", "3")]

    def test_pronoun_hint_warns(self, margins_cat):
        report = validate_selection(margins_cat, make_selection("p57", MARGINS_SELECTION))
        assert report.errors == ()
        assert [f.code for f in report.warnings] == ["PRONOUN_CHECK"]
        assert "=die Triebschneeansammlungen" in report.warnings[0].message

    def test_stale_option(self, margins_cat):
        report = validate_selection(
            margins_cat, make_selection("p57", dict(MARGINS_SELECTION, **{"2": "o9"}))
        )
        assert "STALE_OPTION" in report.error_codes()

    def test_extraneous_choice(self, bonding_cat):
        choices = dict(BONDING_SELECTION, **{"9": "o1"})
        report = validate_selection(bonding_cat, make_selection("p22", choices))
        assert "EXTRANEOUS_CHOICE" in report.error_codes()

    def test_child_choice_without_parent_slot(self, wet_cat):
        choices = dict(WET_SELECTION)
        choices["5"] = "o1"  # o1 has no slots; the ziemlich child is now extraneous
        report = validate_selection(wet_cat, make_selection("p65", choices))
        assert "EXTRANEOUS_CHOICE" in report.error_codes()

    def test_unknown_phrase_is_a_finding(self, wet_cat):
        report = validate_selection(wet_cat, make_selection("nope", {}))
        assert "UNKNOWN_PHRASE" in report.error_codes()
