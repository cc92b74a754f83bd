import json
from pathlib import Path

import pytest

from phrasebook import parse_catalogue
from phrasebook.model import Selection, path_from_str

FIXTURES = Path(__file__).parent / "fixtures"

# Reference sentences for the hand-checked fixture selections.
WET_SELECTION = {
    "1": "o2",
    "2": "o1",
    "3": "o4",
    "3/o4/an_steilen/1": "o2",
    "4": "o1",
    "5": "o2",
    "5/o2/ziemlich/1": "o3",
}
WET_SENTENCES = {
    "de": "Nasse Lawinen können an sehr steilen Sonnenhängen gefährlich gross werden.",
    "en": "On very steep sunny slopes wet avalanches can reach dangerously large size.",
    "fr": "Des avalanches mouillées peuvent devenir dangereusement grandes sur les pentes très raides au soleil.",
    "it": "Sui pendii soleggiati molto ripidi, le valanghe bagnate possono raggiungere dimensioni pericolosamente grandi.",
}

MARGINS_SELECTION = {"1": "o4", "2": "o5", "3": "o3", "4": "o1"}
MARGINS_SENTENCES = {
    "de": "Sie können in ihren Randbereichen schon von einzelnen Wintersportlern ausgelöst werden.",
    "en": "They can at their margins be released, even by a single winter sport participant.",
    "fr": "Elles peuvent à leur périphérie être déjà déclenchées par un seul amateur de sports d'hiver.",
    "it": "Essi possono distaccarsi già in seguito al passaggio di un singolo appassionato di sport invernali nelle zone marginali.",
}

BONDING_SELECTION = {"1": "o1", "2": "o1", "3": "o1", "4": "o1", "5": "o1"}
BONDING_SENTENCE_IT = "Il legame degli accumuli di neve ventata è in corso."


def fixture_path(name: str) -> Path:
    return FIXTURES / f"{name}.json"


def load_doc(name: str) -> dict:
    return json.loads(fixture_path(name).read_text("utf-8"))


def make_selection(phrase_id: str, choices: dict) -> Selection:
    return Selection(
        phrase_id=phrase_id,
        choices={path_from_str(k): v for k, v in choices.items()},
    )


@pytest.fixture(scope="session")
def drift_cat():
    return parse_catalogue(fixture_path("drift_growth").with_suffix(".json").read_bytes())


@pytest.fixture(scope="session")
def wet_cat():
    return parse_catalogue(fixture_path("wet_avalanches").read_bytes())


@pytest.fixture(scope="session")
def margins_cat():
    return parse_catalogue(fixture_path("release_margins").read_bytes())


@pytest.fixture(scope="session")
def bonding_cat():
    return parse_catalogue(fixture_path("bonding").read_bytes())


@pytest.fixture(scope="session")
def synonyms_cat():
    return parse_catalogue(fixture_path("synonyms").read_bytes())


@pytest.fixture(scope="session")
def bulletin_cat():
    return parse_catalogue(fixture_path("bulletin_catalogue").read_bytes())


def bulletin_draft_doc(catalogue_hash: str) -> dict:
    doc = load_doc("bulletin_draft")
    doc["catalogue_hash"] = catalogue_hash
    return doc
