import json

import pytest
from click.testing import CliRunner

from phrasebook import Bulletin, BulletinStore, parse_catalogue
from phrasebook.cli import main

from .conftest import (
    BONDING_SENTENCE_IT,
    WET_SELECTION,
    WET_SENTENCES,
    bulletin_draft_doc,
    fixture_path,
    load_doc,
)


@pytest.fixture()
def runner():
    return CliRunner()


def invoke(runner, *args):
    return runner.invoke(main, [str(a) for a in args], catch_exceptions=False)


def test_validate_clean_catalogue(runner):
    result = invoke(runner, "validate", fixture_path("bulletin_catalogue"))
    assert result.exit_code == 0
    assert result.output.startswith("OK:")


def test_validate_reports_findings_with_exit_1(runner, tmp_path):
    doc = load_doc("bulletin_catalogue")
    doc["lists"]["p22_seg5"]["texts"]["it"].pop()
    path = tmp_path / "broken.json"
    path.write_text(json.dumps(doc, ensure_ascii=False), "utf-8")
    result = invoke(runner, "validate", path)
    assert result.exit_code == 1
    assert "PARALLEL_OPTION_COUNT" in result.output


def test_validate_unreadable_path(runner):
    result = CliRunner().invoke(main, ["validate", "/no/such/file"])
    assert result.exit_code == 2


def test_render_single_language(runner, tmp_path):
    choices = tmp_path / "choices.json"
    choices.write_text(json.dumps(WET_SELECTION), "utf-8")
    result = invoke(
        runner,
        "render",
        "--catalogue", fixture_path("wet_avalanches"),
        "--phrase", "p65",
        "--choices", choices,
        "--lang", "it",
    )
    assert result.exit_code == 0
    assert result.output.strip() == WET_SENTENCES["it"]


def test_render_all_languages_as_table(runner, tmp_path):
    choices = tmp_path / "choices.json"
    choices.write_text(json.dumps({"phrase": "p65", "choices": WET_SELECTION}), "utf-8")
    result = invoke(
        runner,
        "render",
        "--catalogue", fixture_path("wet_avalanches"),
        "--phrase", "p65",
        "--choices", choices,
    )
    lines = dict(line.split("\t", 1) for line in result.output.strip().splitlines())
    assert lines == WET_SENTENCES


def test_render_incomplete_choices_exit_1(runner, tmp_path):
    choices = tmp_path / "choices.json"
    choices.write_text(json.dumps({"1": "o1"}), "utf-8")
    result = runner.invoke(
        main,
        [
            "render",
            "--catalogue", str(fixture_path("wet_avalanches")),
            "--phrase", "p65",
            "--choices", str(choices),
            "--lang", "de",
        ],
    )
    assert result.exit_code == 1
    assert "INCOMPLETE_SELECTION" in result.output


def test_render_phrase_mismatch_exit_2(runner, tmp_path):
    choices = tmp_path / "choices.json"
    choices.write_text(json.dumps({"phrase": "p57", "choices": {}}), "utf-8")
    result = runner.invoke(
        main,
        [
            "render",
            "--catalogue", str(fixture_path("wet_avalanches")),
            "--phrase", "p65",
            "--choices", str(choices),
        ],
    )
    assert result.exit_code == 2


def test_generate_is_deterministic(runner):
    args = [
        "generate",
        "--catalogue", fixture_path("drift_growth"),
        "--phrase", "p19",
        "--seed", 42,
        "--count", 5,
    ]
    first = invoke(runner, *args)
    second = invoke(runner, *args)
    assert first.exit_code == 0
    assert first.output == second.output
    assert len(first.output.strip().splitlines()) == 5
    for line in first.output.strip().splitlines():
        doc = json.loads(line)
        assert doc["phrase"] == "p19"


def test_enumerate_prints_count(runner):
    result = invoke(
        runner, "enumerate", "--catalogue", fixture_path("drift_growth"), "--phrase", "p19"
    )
    assert result.output.strip() == "19320"


def test_enumerate_with_limit_lists_selections(runner):
    result = invoke(
        runner,
        "enumerate",
        "--catalogue", fixture_path("bonding"),
        "--phrase", "p22",
        "--limit", 100,
    )
    assert len(result.output.strip().splitlines()) == 32


def test_enumerate_limit_exceeded_exit_1(runner):
    result = runner.invoke(
        main,
        [
            "enumerate",
            "--catalogue", str(fixture_path("drift_growth")),
            "--phrase", "p19",
            "--limit", "5",
        ],
    )
    assert result.exit_code == 1
    assert "LIMIT_EXCEEDED" in result.output


def test_walk_writes_review_sheet(runner, tmp_path):
    out = tmp_path / "sheet.tsv"
    result = invoke(
        runner, "walk", "--catalogue", fixture_path("bonding"), "--out", out
    )
    assert result.exit_code == 0
    lines = out.read_text("utf-8").splitlines()
    header = lines[0].split("\t")
    assert header[:2] == ["list", "option"]
    assert "de" in header and "it" in header
    assert len(lines) == 1 + 12  # header + one row per option


def test_search_hits(runner):
    result = invoke(
        runner, "search", "--catalogue", fixture_path("synonyms"), "Grashänge"
    )
    assert result.output.splitlines()[0].split("\t")[0] == "s1"
    other = invoke(
        runner, "search", "--catalogue", fixture_path("synonyms"), "Wiesenhänge"
    )
    assert other.output.splitlines()[0].split("\t")[0] == "s1"


def test_publish_from_cli(runner, tmp_path):
    store = BulletinStore(tmp_path / "store")
    digest = store.put_catalogue(parse_catalogue(fixture_path("bulletin_catalogue").read_bytes()))
    bulletin_id = store.store_bulletin(Bulletin.from_document(bulletin_draft_doc(digest)))

    out = tmp_path / "artifacts"
    result = invoke(
        runner,
        "publish",
        "--store", tmp_path / "store",
        "--bulletin", bulletin_id,
        "--out", out,
    )
    assert result.exit_code == 0
    manifest = json.loads(result.output)
    assert manifest["joker_count"] == 1
    assert (out / "manifest.json").exists()


def test_publish_missing_bulletin_exit_2(runner, tmp_path):
    result = runner.invoke(
        main,
        ["publish", "--store", str(tmp_path / "store"), "--bulletin", "nope", "--out", str(tmp_path / "x")],
    )
    assert result.exit_code == 2
    assert "NOT_FOUND" in result.output


def test_usage_error_exit_2(runner):
    result = CliRunner().invoke(main, ["render", "--phrase", "p65"])
    assert result.exit_code == 2
