"""Command line interface.

Exit codes: 0 success, 1 validation findings (catalogue findings, selection
problems, exceeded limits), 2 usage or IO errors.
"""

from __future__ import annotations

import json
import sys
from pathlib import Path

import click

from .errors import EngineError
from .model import Selection
from .parsing import load_catalogue
from .publish import publish_bulletin
from .qa import GenerationSpec, enumerate_all, enumerate_count, generate_random, option_walk
from .render import render_sentence
from .search import build_index, search as search_index
from .store import BulletinStore
from .validation import lint_agreement, validate_catalogue

_FINDING_CODES = {
    "VALIDATION_FAILED",
    "INCOMPLETE_SELECTION",
    "MISSING_CHOICE",
    "EXTRANEOUS_CHOICE",
    "STALE_OPTION",
    "LIMIT_EXCEEDED",
    "SPLIT_MISMATCH",
    "MISSING_LANGUAGE_TEXT",
    "MISSING_JOKER_TEXT",
}


def _fail(exc: EngineError) -> None:
    click.echo(f"{exc.code}: {exc}", err=True)
    sys.exit(1 if exc.code in _FINDING_CODES else 2)


def _load(path: str):
    try:
        return load_catalogue(path)
    except OSError as exc:
        click.echo(f"cannot read catalogue: {exc}", err=True)
        sys.exit(2)
    except EngineError as exc:
        _fail(exc)


catalogue_option = click.option(
    "--catalogue", "catalogue_path", required=True, type=click.Path(exists=True),
    help="Catalogue document to operate on.",
)
store_option = click.option(
    "--store", "store_path", required=True, type=click.Path(),
    help="Bulletin store directory.",
)


@click.group()
def main() -> None:
    """Compose, check, search and publish catalogue-based warning texts."""


@main.command()
@click.argument("catalogue_path", type=click.Path(exists=True))
def validate(catalogue_path: str) -> None:
    """Check a catalogue; print findings as CODE<tab>PATH<tab>MESSAGE lines."""
    catalogue = _load(catalogue_path)
    report = validate_catalogue(catalogue).merged(lint_agreement(catalogue))
    for finding in report:
        click.echo(finding.as_line())
    if report.errors or report.warnings:
        sys.exit(1)
    click.echo(
        f"OK: {len(catalogue.phrases)} phrases, {len(catalogue.lists)} lists, "
        f"{len(catalogue.languages)} languages"
    )


@main.command()
@catalogue_option
@click.option("--phrase", required=True, help="Phrase id.")
@click.option(
    "--choices", "choices_path", required=True, type=click.Path(exists=True),
    help="JSON file: either {path: option} or a full selection document.",
)
@click.option("--lang", "langs", multiple=True, help="Language code (repeatable; default: all).")
def render(catalogue_path: str, phrase: str, choices_path: str, langs: tuple[str, ...]) -> None:
    """Render one selection."""
    catalogue = _load(catalogue_path)
    doc = json.loads(Path(choices_path).read_text("utf-8"))
    if "choices" in doc:
        if doc.get("phrase") not in (None, phrase):
            click.echo(f"choices file is for phrase {doc['phrase']!r}", err=True)
            sys.exit(2)
        doc = doc["choices"]
    selection = Selection.from_document({"phrase": phrase, "choices": doc})
    languages = langs or catalogue.language_codes
    try:
        rendered = [render_sentence(catalogue, selection, lang) for lang in languages]
    except EngineError as exc:
        _fail(exc)
    if len(rendered) == 1:
        click.echo(rendered[0].text)
    else:
        for sentence in rendered:
            click.echo(f"{sentence.language}\t{sentence.text}")


@main.command()
@catalogue_option
@click.option("--phrase", required=True)
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--count", type=int, default=10, show_default=True)
def generate(catalogue_path: str, phrase: str, seed: int, count: int) -> None:
    """Generate seeded random selections (one JSON document per line)."""
    catalogue = _load(catalogue_path)
    try:
        selections = generate_random(catalogue, GenerationSpec(phrase, seed, count))
    except EngineError as exc:
        _fail(exc)
    for selection in selections:
        click.echo(json.dumps(selection.to_document(), ensure_ascii=False, sort_keys=True))


@main.command()
@catalogue_option
@click.option("--phrase", required=True)
@click.option("--limit", type=int, default=None, help="List all selections up to this many.")
def enumerate(catalogue_path: str, phrase: str, limit: int | None) -> None:
    """Print the exact number of selections; with --limit, list them all."""
    catalogue = _load(catalogue_path)
    try:
        if limit is None:
            click.echo(str(enumerate_count(catalogue, phrase)))
            return
        selections = enumerate_all(catalogue, phrase, limit)
    except EngineError as exc:
        _fail(exc)
    for selection in selections:
        click.echo(json.dumps(selection.to_document(), ensure_ascii=False, sort_keys=True))


@main.command()
@catalogue_option
@click.option("--out", "out_path", required=True, type=click.Path())
def walk(catalogue_path: str, out_path: str) -> None:
    """Write the option review sheet (tab separated, one row per option)."""
    catalogue = _load(catalogue_path)
    sheet = option_walk(catalogue)
    Path(out_path).write_text(sheet.to_tsv(), encoding="utf-8")
    for warning in sheet.warnings:
        click.echo(warning.as_line(), err=True)
    click.echo(f"{len(sheet.rows)} rows -> {out_path}")


@main.command()
@catalogue_option
@click.option("--limit", type=int, default=10, show_default=True)
@click.argument("query", nargs=-1, required=True)
def search(catalogue_path: str, limit: int, query: tuple[str, ...]) -> None:
    """Search phrases; prints PHRASE<tab>NUMBER<tab>SCORE<tab>MATCHED."""
    catalogue = _load(catalogue_path)
    index = build_index(catalogue)
    for hit in search_index(index, " ".join(query), limit=limit):
        terms = ",".join(hit.matched_terms)
        click.echo(f"{hit.phrase_id}\t{hit.number}\t{hit.score!r}\t{terms}")


@main.command()
@store_option
@click.option("--bulletin", "bulletin_id", required=True)
@click.option("--out", "out_dir", required=True, type=click.Path())
def publish(store_path: str, bulletin_id: str, out_dir: str) -> None:
    """Render and publish a draft bulletin atomically."""
    store = BulletinStore(store_path)
    try:
        manifest = publish_bulletin(store, bulletin_id, Path(out_dir))
    except EngineError as exc:
        _fail(exc)
    click.echo(json.dumps(manifest, ensure_ascii=False, indent=2, sort_keys=True))


@main.command()
@catalogue_option
@store_option
@click.option("--addr", default="127.0.0.1:8080", show_default=True, help="HOST:PORT to bind.")
def serve(catalogue_path: str, store_path: str, addr: str) -> None:
    """Run the authoring service (fails fast on an invalid catalogue)."""
    import uvicorn

    from .service import create_app

    host, _, port = addr.partition(":")
    try:
        app = create_app(catalogue_path, store_path)
    except EngineError as exc:
        click.echo(f"refusing to start: {exc}", err=True)
        sys.exit(2)
    uvicorn.run(app, host=host or "127.0.0.1", port=int(port or "8080"), log_level="warning")


if __name__ == "__main__":
    main()
