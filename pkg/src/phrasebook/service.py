"""HTTP service hosting the authoring workflow for the editor client.

The catalogue snapshot (with its search index) is held behind a single
reference that reload swaps atomically: requests in flight keep rendering on
the snapshot they started with. Startup fails fast when the catalogue does
not parse or validate — a degraded warning service must not come up at all.

Errors are returned as problem-detail documents carrying the engine's
symbolic ``code``.
"""

from __future__ import annotations

import json
import threading
from dataclasses import dataclass
from pathlib import Path
from typing import Any

from fastapi import FastAPI, Query, Request
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse
from pydantic import BaseModel

from .errors import EngineError, ParseError
from .model import Catalogue, Selection, path_to_str
from .parsing import load_catalogue
from .publish import publish_bulletin
from .qa import check_surface_invariants
from .render import render_sentence, resolve_slots, validate_selection
from .search import PhraseIndex, build_index, search
from .store import Bulletin, BulletinStore
from .validation import validate_catalogue

_STATUS_BY_CODE = {
    "NOT_FOUND": 404,
    "UNKNOWN_PHRASE": 404,
    "IMMUTABLE_EDITION": 409,
    "PARSE_ERROR": 400,
    "IO_FAILURE": 500,
}


@dataclass(frozen=True)
class Snapshot:
    catalogue: Catalogue
    catalogue_hash: str
    index: PhraseIndex


class CatalogueHolder:
    """Atomic snapshot reference; readers grab it once per request."""

    def __init__(self, snapshot: Snapshot):
        self._snapshot = snapshot
        self._lock = threading.Lock()

    @property
    def snapshot(self) -> Snapshot:
        return self._snapshot

    def swap(self, snapshot: Snapshot) -> None:
        with self._lock:
            self._snapshot = snapshot


class RenderRequest(BaseModel):
    selection: dict
    languages: list[str] | None = None


class ValidateRequest(BaseModel):
    selection: dict


class BulletinRequest(BaseModel):
    bulletin_id: str | None = None
    edition_timestamp: str = ""
    descriptions: list[dict] = []


class ReloadRequest(BaseModel):
    path: str | None = None


def _load_snapshot(path: Path, store: BulletinStore) -> Snapshot:
    catalogue = load_catalogue(path)
    report = validate_catalogue(catalogue)
    if not report.ok:
        findings = "\n".join(f.as_line() for f in report.errors)
        raise ParseError(f"catalogue {path} failed validation:\n{findings}")
    digest = store.put_catalogue(catalogue)
    return Snapshot(catalogue=catalogue, catalogue_hash=digest, index=build_index(catalogue))


def _selection(doc: dict) -> Selection:
    try:
        return Selection.from_document(doc)
    except (KeyError, ValueError, TypeError) as exc:
        raise EngineError(f"malformed selection: {exc}", code="PARSE_ERROR") from exc


def _findings(report) -> dict:
    return {
        "errors": [
            {"code": f.code, "path": f.path, "message": f.message} for f in report.errors
        ],
        "warnings": [
            {"code": f.code, "path": f.path, "message": f.message} for f in report.warnings
        ],
    }


def create_app(catalogue_path: Path | str, store_path: Path | str) -> FastAPI:
    """Build the service; raises on an invalid catalogue (fail fast)."""
    catalogue_path = Path(catalogue_path)
    store = BulletinStore(store_path)
    holder = CatalogueHolder(_load_snapshot(catalogue_path, store))
    publish_root = Path(store_path) / "published"

    app = FastAPI(title="phrasebook", version="0.1.0")
    app.add_middleware(
        CORSMiddleware,
        allow_origins=["*"],
        allow_methods=["*"],
        allow_headers=["*"],
    )
    app.state.holder = holder
    app.state.store = store

    @app.exception_handler(EngineError)
    async def engine_error_handler(_request: Request, exc: EngineError) -> JSONResponse:
        status = _STATUS_BY_CODE.get(exc.code, 422)
        return JSONResponse(
            status_code=status,
            media_type="application/problem+json",
            content={
                "type": "about:blank",
                "title": exc.code,
                "status": status,
                "detail": str(exc),
                "code": exc.code,
            },
        )

    @app.get("/meta")
    def meta() -> dict:
        snap = holder.snapshot
        return {
            "catalogue_hash": snap.catalogue_hash,
            "languages": [
                {"code": lang.code, "source": lang.source}
                for lang in snap.catalogue.languages
            ],
            "phrase_count": len(snap.catalogue.phrases),
        }

    @app.get("/phrases")
    def phrases() -> dict:
        snap = holder.snapshot
        entries = [
            {"phrase_id": p.phrase_id, "number": p.number, "title": p.title}
            for p in snap.catalogue.phrases.values()
        ]
        entries.sort(key=lambda e: (e["number"], e["phrase_id"]))
        return {"phrases": entries}

    @app.get("/phrases/{phrase_id}/slots")
    def slots(phrase_id: str, selection: str | None = Query(default=None)) -> dict:
        snap = holder.snapshot
        choices: dict[str, str] = {}
        if selection:
            try:
                choices = json.loads(selection)
            except ValueError as exc:
                raise EngineError(f"malformed selection: {exc}", code="PARSE_ERROR") from exc
        sel = _selection({"phrase": phrase_id, "choices": choices})
        tree = resolve_slots(snap.catalogue, sel)
        return {
            "phrase_id": phrase_id,
            "slots": [
                {
                    "path": path_to_str(slot.path),
                    "list_id": slot.list_id,
                    "depth": slot.depth,
                    "chosen": slot.chosen,
                    "options": [
                        {"id": o.option_id, "label": o.label, "hint": o.editor_hint}
                        for o in slot.options
                    ],
                }
                for slot in tree
            ],
        }

    @app.post("/render")
    def render(body: RenderRequest) -> dict:
        snap = holder.snapshot
        sel = _selection(body.selection)
        languages = body.languages or list(snap.catalogue.language_codes)
        sentences = [
            {"language": lang, "text": render_sentence(snap.catalogue, sel, lang).text}
            for lang in languages
        ]
        return {"catalogue_hash": snap.catalogue_hash, "sentences": sentences}

    @app.post("/validate-selection")
    def validate(body: ValidateRequest) -> dict:
        snap = holder.snapshot
        sel = _selection(body.selection)
        return _findings(validate_selection(snap.catalogue, sel))

    @app.get("/search")
    def search_endpoint(q: str = Query(default=""), limit: int = Query(default=10)) -> dict:
        snap = holder.snapshot
        hits = search(snap.index, q, limit=limit)
        return {
            "hits": [
                {
                    "phrase_id": h.phrase_id,
                    "number": h.number,
                    "score": h.score,
                    "matched_terms": list(h.matched_terms),
                }
                for h in hits
            ]
        }

    def _bulletin_from_body(body: BulletinRequest, bulletin_id: str | None) -> Bulletin:
        snap = holder.snapshot
        doc: dict[str, Any] = {
            "bulletin_id": bulletin_id or body.bulletin_id or "",
            "edition_timestamp": body.edition_timestamp,
            "catalogue_hash": snap.catalogue_hash,
            "status": "draft",
            "descriptions": body.descriptions,
        }
        try:
            return Bulletin.from_document(doc)
        except (KeyError, ValueError, TypeError) as exc:
            raise EngineError(f"malformed bulletin: {exc}", code="PARSE_ERROR") from exc

    @app.get("/bulletins")
    def list_bulletins(status: str | None = Query(default=None)) -> dict:
        return {
            "bulletins": [
                {
                    "bulletin_id": s.bulletin_id,
                    "edition_timestamp": s.edition_timestamp,
                    "status": s.status,
                    "description_count": s.description_count,
                }
                for s in store.list_bulletins(status)
            ]
        }

    @app.post("/bulletins", status_code=201)
    def create_bulletin(body: BulletinRequest) -> dict:
        bulletin = _bulletin_from_body(body, None)
        bulletin_id = store.store_bulletin(bulletin)
        return store.load_bulletin(bulletin_id).to_document()

    @app.get("/bulletins/{bulletin_id}")
    def get_bulletin(bulletin_id: str) -> dict:
        return store.load_bulletin(bulletin_id).to_document()

    @app.put("/bulletins/{bulletin_id}")
    def update_bulletin(bulletin_id: str, body: BulletinRequest) -> dict:
        store.load_bulletin(bulletin_id)  # NOT_FOUND if missing
        bulletin = _bulletin_from_body(body, bulletin_id)
        store.store_bulletin(bulletin)
        return store.load_bulletin(bulletin_id).to_document()

    @app.delete("/bulletins/{bulletin_id}", status_code=204)
    def delete_bulletin(bulletin_id: str) -> None:
        store.delete_bulletin(bulletin_id)

    @app.post("/bulletins/{bulletin_id}/publish")
    def publish(bulletin_id: str) -> dict:
        manifest = publish_bulletin(store, bulletin_id, publish_root / bulletin_id)
        return {"manifest": manifest, "output_dir": str(publish_root / bulletin_id)}

    @app.post("/admin/reload-catalogue")
    def reload_catalogue(body: ReloadRequest) -> dict:
        nonlocal catalogue_path
        path = Path(body.path) if body.path else catalogue_path
        snapshot = _load_snapshot(path, store)
        catalogue_path = path
        holder.swap(snapshot)
        return {
            "catalogue_hash": snapshot.catalogue_hash,
            "phrase_count": len(snapshot.catalogue.phrases),
        }

    @app.post("/check-text")
    def check_text(body: dict) -> dict:
        violations = check_surface_invariants(
            str(body.get("text", "")), str(body.get("language", ""))
        )
        return {
            "violations": [
                {"code": v.code, "path": v.path, "message": v.message} for v in violations
            ]
        }

    return app
