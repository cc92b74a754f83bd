"""Bulletin persistence: a directory-backed store with content-addressed
catalogue snapshots.

Layout under the store root::

    bulletins/<bulletin_id>.json
    catalogues/<content_hash>.json

Published bulletins are immutable; the only sanctioned transition is
draft -> published, performed by the publish pipeline. Writes are serialized
through a single lock and land via atomic replace.
"""

from __future__ import annotations

import json
import os
import threading
import uuid
from dataclasses import dataclass
from pathlib import Path
from typing import Union

from .errors import StoreError
from .model import Catalogue, JokerSentence, Selection, ValidationReport
from .parsing import content_hash, parse_catalogue, serialize_catalogue
from .render import validate_selection

SentenceItem = Union[Selection, JokerSentence]

DRAFT = "draft"
PUBLISHED = "published"


@dataclass(frozen=True)
class DangerDescription:
    """Ordered sentences for one warning region."""

    description_id: str
    region_label: str
    sentences: tuple[SentenceItem, ...]

    def to_document(self) -> dict:
        sentences = []
        for item in self.sentences:
            if isinstance(item, JokerSentence):
                sentences.append({"kind": "joker", "texts": dict(item.texts)})
            else:
                sentences.append({"kind": "catalogue", **item.to_document()})
        return {
            "id": self.description_id,
            "region": self.region_label,
            "sentences": sentences,
        }

    @classmethod
    def from_document(cls, doc: dict) -> "DangerDescription":
        sentences: list[SentenceItem] = []
        for entry in doc.get("sentences", []):
            if entry.get("kind") == "joker":
                sentences.append(JokerSentence(texts=dict(entry["texts"])))
            else:
                sentences.append(Selection.from_document(entry))
        return cls(
            description_id=doc["id"],
            region_label=doc.get("region", ""),
            sentences=tuple(sentences),
        )


@dataclass(frozen=True)
class Bulletin:
    """One bulletin edition."""

    bulletin_id: str
    edition_timestamp: str
    catalogue_hash: str
    status: str = DRAFT
    descriptions: tuple[DangerDescription, ...] = ()

    def to_document(self) -> dict:
        return {
            "bulletin_id": self.bulletin_id,
            "edition_timestamp": self.edition_timestamp,
            "catalogue_hash": self.catalogue_hash,
            "status": self.status,
            "descriptions": [d.to_document() for d in self.descriptions],
        }

    @classmethod
    def from_document(cls, doc: dict) -> "Bulletin":
        return cls(
            bulletin_id=doc["bulletin_id"],
            edition_timestamp=doc.get("edition_timestamp", ""),
            catalogue_hash=doc.get("catalogue_hash", ""),
            status=doc.get("status", DRAFT),
            descriptions=tuple(
                DangerDescription.from_document(d) for d in doc.get("descriptions", [])
            ),
        )


@dataclass(frozen=True)
class BulletinSummary:
    bulletin_id: str
    edition_timestamp: str
    status: str
    description_count: int


def _atomic_write(path: Path, data: bytes) -> None:
    tmp = path.with_name(f".{path.name}.tmp{os.getpid()}")
    tmp.write_bytes(data)
    os.replace(tmp, path)


class BulletinStore:
    """Single-writer bulletin store; safe for concurrent readers."""

    def __init__(self, root: Path | str):
        self.root = Path(root)
        self._bulletins = self.root / "bulletins"
        self._catalogues = self.root / "catalogues"
        self._bulletins.mkdir(parents=True, exist_ok=True)
        self._catalogues.mkdir(parents=True, exist_ok=True)
        self._write_lock = threading.Lock()

    # -- catalogue snapshots -------------------------------------------------

    def put_catalogue(self, catalogue: Catalogue) -> str:
        """Retain a snapshot; returns its content hash (idempotent)."""
        data = serialize_catalogue(catalogue)
        digest = content_hash(catalogue)
        path = self._catalogues / f"{digest}.json"
        with self._write_lock:
            if not path.exists():
                _atomic_write(path, data)
        return digest

    def get_catalogue(self, digest: str) -> Catalogue:
        path = self._catalogues / f"{digest}.json"
        if not path.exists():
            raise StoreError(f"no catalogue snapshot {digest!r}", code="NOT_FOUND")
        return parse_catalogue(path.read_bytes())

    # -- bulletins -----------------------------------------------------------

    def _path(self, bulletin_id: str) -> Path:
        if not bulletin_id or "/" in bulletin_id or bulletin_id.startswith("."):
            raise StoreError(f"invalid bulletin id {bulletin_id!r}", code="NOT_FOUND")
        return self._bulletins / f"{bulletin_id}.json"

    def store_bulletin(self, bulletin: Bulletin) -> str:
        """Create or update a draft; rejects writes to published editions."""
        bulletin_id = bulletin.bulletin_id or uuid.uuid4().hex[:12]
        if bulletin.bulletin_id != bulletin_id:
            bulletin = Bulletin(
                bulletin_id=bulletin_id,
                edition_timestamp=bulletin.edition_timestamp,
                catalogue_hash=bulletin.catalogue_hash,
                status=bulletin.status,
                descriptions=bulletin.descriptions,
            )
        path = self._path(bulletin_id)
        with self._write_lock:
            if path.exists():
                existing = Bulletin.from_document(json.loads(path.read_text("utf-8")))
                if existing.status == PUBLISHED:
                    raise StoreError(
                        f"bulletin {bulletin_id!r} is published and immutable",
                        code="IMMUTABLE_EDITION",
                    )
            if bulletin.status == PUBLISHED:
                raise StoreError(
                    "bulletins are published through the publish pipeline",
                    code="IMMUTABLE_EDITION",
                )
            _atomic_write(path, _dump(bulletin.to_document()))
        return bulletin_id

    def load_bulletin(self, bulletin_id: str) -> Bulletin:
        path = self._path(bulletin_id)
        if not path.exists():
            raise StoreError(f"no bulletin {bulletin_id!r}", code="NOT_FOUND")
        return Bulletin.from_document(json.loads(path.read_text("utf-8")))

    def delete_bulletin(self, bulletin_id: str) -> None:
        path = self._path(bulletin_id)
        with self._write_lock:
            if not path.exists():
                raise StoreError(f"no bulletin {bulletin_id!r}", code="NOT_FOUND")
            existing = Bulletin.from_document(json.loads(path.read_text("utf-8")))
            if existing.status == PUBLISHED:
                raise StoreError(
                    f"bulletin {bulletin_id!r} is published and immutable",
                    code="IMMUTABLE_EDITION",
                )
            path.unlink()

    def list_bulletins(self, status: str | None = None) -> list[BulletinSummary]:
        summaries = []
        for path in sorted(self._bulletins.glob("*.json")):
            bulletin = Bulletin.from_document(json.loads(path.read_text("utf-8")))
            if status is not None and bulletin.status != status:
                continue
            summaries.append(
                BulletinSummary(
                    bulletin_id=bulletin.bulletin_id,
                    edition_timestamp=bulletin.edition_timestamp,
                    status=bulletin.status,
                    description_count=len(bulletin.descriptions),
                )
            )
        summaries.sort(key=lambda s: (s.edition_timestamp, s.bulletin_id))
        return summaries

    def mark_published(self, bulletin_id: str) -> Bulletin:
        """Transition draft -> published (used by the publish pipeline)."""
        path = self._path(bulletin_id)
        with self._write_lock:
            if not path.exists():
                raise StoreError(f"no bulletin {bulletin_id!r}", code="NOT_FOUND")
            bulletin = Bulletin.from_document(json.loads(path.read_text("utf-8")))
            if bulletin.status == PUBLISHED:
                raise StoreError(
                    f"bulletin {bulletin_id!r} is already published",
                    code="IMMUTABLE_EDITION",
                )
            published = Bulletin(
                bulletin_id=bulletin.bulletin_id,
                edition_timestamp=bulletin.edition_timestamp,
                catalogue_hash=bulletin.catalogue_hash,
                status=PUBLISHED,
                descriptions=bulletin.descriptions,
            )
            _atomic_write(path, _dump(published.to_document()))
        return published


def _dump(doc: dict) -> bytes:
    return (json.dumps(doc, ensure_ascii=False, indent=2, sort_keys=True) + "\n").encode("utf-8")


def copy_description(
    store: BulletinStore,
    from_bulletin: str,
    description_id: str,
    into_draft: str,
) -> tuple[DangerDescription, ValidationReport]:
    """Copy a description into a draft, revalidating against the draft's
    catalogue snapshot.

    Stale option ids become STALE_OPTION errors; options carrying editor
    hints surface PRONOUN_CHECK warnings so the author re-confirms pronoun
    antecedents after the copy. The description is appended even when
    findings exist — the report tells the editor what to fix.
    """
    source = store.load_bulletin(from_bulletin)
    description = next(
        (d for d in source.descriptions if d.description_id == description_id), None
    )
    if description is None:
        raise StoreError(
            f"no description {description_id!r} in bulletin {from_bulletin!r}",
            code="NOT_FOUND",
        )
    draft = store.load_bulletin(into_draft)
    if draft.status == PUBLISHED:
        raise StoreError(
            f"bulletin {into_draft!r} is published and immutable",
            code="IMMUTABLE_EDITION",
        )
    catalogue = store.get_catalogue(draft.catalogue_hash)

    report = ValidationReport()
    for i, item in enumerate(description.sentences):
        if isinstance(item, JokerSentence):
            continue
        sentence_report = validate_selection(catalogue, item)
        prefixed = ValidationReport(
            tuple(
                type(f)(f.code, f"sentences[{i}]/{f.path}", f.message)
                for f in sentence_report.errors
            ),
            tuple(
                type(f)(f.code, f"sentences[{i}]/{f.path}", f.message)
                for f in sentence_report.warnings
            ),
        )
        report = report.merged(prefixed)

    copied = DangerDescription(
        description_id=_unique_description_id(draft, description.description_id),
        region_label=description.region_label,
        sentences=description.sentences,
    )
    updated = Bulletin(
        bulletin_id=draft.bulletin_id,
        edition_timestamp=draft.edition_timestamp,
        catalogue_hash=draft.catalogue_hash,
        status=draft.status,
        descriptions=draft.descriptions + (copied,),
    )
    store.store_bulletin(updated)
    return copied, report


def _unique_description_id(draft: Bulletin, wanted: str) -> str:
    existing = {d.description_id for d in draft.descriptions}
    if wanted not in existing:
        return wanted
    n = 2
    while f"{wanted}-{n}" in existing:
        n += 1
    return f"{wanted}-{n}"
