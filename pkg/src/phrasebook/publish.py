"""Publish pipeline: render a draft bulletin in every language and write the
artifact set atomically.

Per language one plain-text and one structured document are produced, plus a
manifest with per-file checksums. Everything is staged in a scratch directory
next to the target and moved into place with a single rename, so after any
failure the target location contains either the complete artifact set or
nothing new. Only after the artifacts land is the bulletin marked published.
"""

from __future__ import annotations

import hashlib
import json
import logging
import shutil
from pathlib import Path

from .errors import PublishError, RenderError
from .model import Catalogue, JokerSentence, ValidationReport
from .qa import check_surface_invariants
from .render import render_sentence, validate_selection
from .store import Bulletin, BulletinStore, DangerDescription, DRAFT

logger = logging.getLogger(__name__)

# Joker sentences are free text: they skip the capitalization/marker rules
# and are only held to the whitespace rules.
_JOKER_CODES = {"EMPTY_TEXT", "DOUBLE_SPACE", "LEADING_OR_TRAILING_SPACE"}


def _write_file(path: Path, data: bytes) -> None:
    path.write_bytes(data)


def _render_description(
    cat: Catalogue, description: DangerDescription, lang: str, findings: list[str]
) -> dict:
    sentences = []
    for i, item in enumerate(description.sentences):
        where = f"{description.description_id}/sentences[{i}]/{lang}"
        if isinstance(item, JokerSentence):
            text = item.texts.get(lang)
            if text is None:
                findings.append(f"{where}: joker sentence lacks {lang} text")
                continue
            text = text.strip()
            violations = [
                v for v in check_surface_invariants(text, lang) if v.code in _JOKER_CODES
            ]
        else:
            try:
                text = render_sentence(cat, item, lang).text
            except RenderError as exc:
                findings.append(f"{where}: {exc.code}: {exc}")
                continue
            violations = check_surface_invariants(text, lang)
        findings.extend(f"{where}: {v.code}: {v.message}" for v in violations)
        sentences.append(text)
    return {
        "id": description.description_id,
        "region": description.region_label,
        "sentences": sentences,
        "text": " ".join(s for s in sentences if s),
    }


def publish_bulletin(store: BulletinStore, bulletin_id: str, output_dir: Path | str) -> dict:
    """Render, check, and atomically write all artifacts; returns the manifest."""
    bulletin = store.load_bulletin(bulletin_id)
    if bulletin.status != DRAFT:
        raise PublishError(
            f"bulletin {bulletin_id!r} is not a draft", code="IMMUTABLE_EDITION"
        )
    if not bulletin.descriptions:
        raise PublishError(
            "bulletin has no danger descriptions", code="VALIDATION_FAILED"
        )
    catalogue = store.get_catalogue(bulletin.catalogue_hash)

    findings: list[str] = []
    joker_count = 0
    for description in bulletin.descriptions:
        for i, item in enumerate(description.sentences):
            if isinstance(item, JokerSentence):
                joker_count += 1
                continue
            report: ValidationReport = validate_selection(catalogue, item)
            findings.extend(
                f"{description.description_id}/sentences[{i}]: {f.code}: {f.message}"
                for f in report.errors
            )
    if findings:
        raise PublishError(
            "bulletin failed validation:\n" + "\n".join(findings),
            code="VALIDATION_FAILED",
        )

    rendered: dict[str, list[dict]] = {}
    for lang in catalogue.language_codes:
        rendered[lang] = [
            _render_description(catalogue, description, lang, findings)
            for description in bulletin.descriptions
        ]
    if findings:
        raise PublishError(
            "rendered output failed the surface checks:\n" + "\n".join(findings),
            code="VALIDATION_FAILED",
        )

    output_dir = Path(output_dir)
    if output_dir.exists():
        raise PublishError(
            f"output directory {output_dir} already exists", code="IO_FAILURE"
        )
    output_dir.parent.mkdir(parents=True, exist_ok=True)
    stage = output_dir.parent / f".{output_dir.name}.stage"
    if stage.exists():
        shutil.rmtree(stage)

    files: dict[str, bytes] = {}
    for lang in catalogue.language_codes:
        blocks = rendered[lang]
        text_lines = []
        for block in blocks:
            if block["region"]:
                text_lines.append(block["region"])
            text_lines.append(block["text"])
            text_lines.append("")
        files[f"bulletin.{lang}.txt"] = "\n".join(text_lines).encode("utf-8")
        structured = {
            "bulletin_id": bulletin.bulletin_id,
            "edition_timestamp": bulletin.edition_timestamp,
            "catalogue_hash": bulletin.catalogue_hash,
            "language": lang,
            "descriptions": blocks,
        }
        files[f"bulletin.{lang}.json"] = (
            json.dumps(structured, ensure_ascii=False, indent=2, sort_keys=True) + "\n"
        ).encode("utf-8")

    manifest = {
        "bulletin_id": bulletin.bulletin_id,
        "edition_timestamp": bulletin.edition_timestamp,
        "catalogue_hash": bulletin.catalogue_hash,
        "languages": list(catalogue.language_codes),
        "joker_count": joker_count,
        "files": {
            name: hashlib.sha256(data).hexdigest() for name, data in sorted(files.items())
        },
    }
    files["manifest.json"] = (
        json.dumps(manifest, ensure_ascii=False, indent=2, sort_keys=True) + "\n"
    ).encode("utf-8")

    try:
        stage.mkdir()
        for name, data in sorted(files.items()):
            _write_file(stage / name, data)
        stage.replace(output_dir)
    except OSError as exc:
        shutil.rmtree(stage, ignore_errors=True)
        raise PublishError(f"could not write artifacts: {exc}", code="IO_FAILURE") from exc

    store.mark_published(bulletin_id)
    logger.info(
        "published bulletin %s (%d descriptions, joker sentences: %d)",
        bulletin.bulletin_id,
        len(bulletin.descriptions),
        joker_count,
    )
    return manifest


def verify_manifest(output_dir: Path | str) -> bool:
    """Recompute artifact checksums against the manifest."""
    output_dir = Path(output_dir)
    manifest = json.loads((output_dir / "manifest.json").read_text("utf-8"))
    for name, digest in manifest["files"].items():
        actual = hashlib.sha256((output_dir / name).read_bytes()).hexdigest()
        if actual != digest:
            return False
    return True
