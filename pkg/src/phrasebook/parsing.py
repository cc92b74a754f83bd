"""Catalogue document parsing and canonical serialization.

The document is a UTF-8 JSON tree::

    {
      "schema_version": 1,
      "languages": [{"code": "de", "source": true}, {"code": "it"}],
      "lists": {
        "<list_id>": {
          "depth": 0,
          "split": ["it"],                      # optional: split languages
          "options": ["o1", "o2"],              # ordered option ids
          "texts": {"de": ["...", "..."],       # one column per language
                    "it": [["part a", "part b"], ...]},
          "hints": {"de": {"o2": "=die Lawinen"}},          # optional
          "agreement": {"o1": {"gender": "f", "number": "pl"}},  # optional
          "time_notes": {"o1": "short-term"}                # optional
        }
      },
      "phrases": {
        "<phrase_id>": {
          "number": 19,
          "title": "...",
          "segments": [{"no": 1, "list": "..."}, ...],
          "layouts": {"it": ["1", "2a", "3", "4", "2b", "5"]}
        }
      }
    }

Inline markers inside text strings: ``(-)`` at the very start (or end)
suppresses the joining space before (after) the fragment; ``{id}`` and
``{{id}}`` embed a slot (brace doubling is a display convention, the nesting
depth is a property of the referenced list); the empty string is the
always-selectable blank option. All text is normalized to NFC at parse time.

Serialization is canonical: sorted object keys, two-space indent, no ASCII
escaping, a single trailing newline. ``parse(serialize(c))`` equals ``c``
structurally and serialization is a byte-level fixed point on its own output.
"""

from __future__ import annotations

import hashlib
import json
import re
import unicodedata
from typing import Any, Mapping

from .errors import ParseError
from .model import (
    GLUE_MARK,
    Agreement,
    Catalogue,
    Language,
    LayoutPart,
    OptionEntry,
    OptionList,
    OptionText,
    Phrase,
    SlotRef,
    TextRun,
)

SCHEMA_VERSION = 1

_SLOT_RE = re.compile(r"\{\{([^{}]+)\}\}|\{([^{}]+)\}")
_ID_FORBIDDEN = set("/{}\t\n\r")


def _norm(text: str) -> str:
    return unicodedata.normalize("NFC", text)


def _check_id(kind: str, value: Any, path: str) -> str:
    if not isinstance(value, str) or not value:
        raise ParseError(f"{kind} id must be a nonempty string", path=path)
    if value != value.strip():
        raise ParseError(f"{kind} id has leading/trailing whitespace: {value!r}", path=path)
    if any(ch in _ID_FORBIDDEN for ch in value):
        raise ParseError(f"{kind} id contains a forbidden character: {value!r}", path=path)
    return _norm(value)


def _pairs_hook(pairs: list[tuple[str, Any]]) -> dict:
    seen = set()
    for key, _ in pairs:
        if key in seen:
            raise ParseError(f"duplicate key {key!r} in document object")
        seen.add(key)
    return dict(pairs)


def parse_text_run(raw: str, ordinals: dict[str, int], path: str) -> TextRun:
    """Parse one text string into a run, consuming slot ordinals in order."""
    text = _norm(raw)
    glue_before = glue_after = False
    if text.startswith(GLUE_MARK):
        glue_before = True
        text = text[len(GLUE_MARK):]
    if text.endswith(GLUE_MARK):
        glue_after = True
        text = text[: -len(GLUE_MARK)]
    if GLUE_MARK in text:
        raise ParseError(
            f"glue marker {GLUE_MARK!r} is only allowed at the start or end of a text",
            path=path,
        )
    if (glue_before or glue_after) and not text.strip():
        raise ParseError("glue marker on an otherwise empty text", path=path)
    fragments: list[Any] = []
    pos = 0
    for match in _SLOT_RE.finditer(text):
        if match.start() > pos:
            fragments.append(text[pos:match.start()])
        list_id = match.group(1) or match.group(2)
        list_id = _check_id("list", list_id, path)
        ordinals[list_id] = ordinals.get(list_id, 0) + 1
        fragments.append(SlotRef(list_id, ordinals[list_id]))
        pos = match.end()
    if pos < len(text):
        fragments.append(text[pos:])
    for frag in fragments:
        if isinstance(frag, str) and ("{" in frag or "}" in frag):
            raise ParseError(f"unbalanced brace in text {raw!r}", path=path)
    return TextRun(tuple(fragments), glue_before=glue_before, glue_after=glue_after)


def parse_option_text(value: Any, path: str) -> OptionText:
    """Parse a document text entry: a string or a two-element split pair."""
    ordinals: dict[str, int] = {}
    if isinstance(value, str):
        return OptionText((parse_text_run(value, ordinals, path),))
    if isinstance(value, list) and len(value) == 2 and all(isinstance(v, str) for v in value):
        part_a = parse_text_run(value[0], ordinals, f"{path}/a")
        part_b = parse_text_run(value[1], ordinals, f"{path}/b")
        return OptionText((part_a, part_b))
    raise ParseError("text entry must be a string or a pair of strings", path=path)


def text_to_document(text: OptionText, catalogue: Catalogue | None = None) -> Any:
    """Reconstruct the canonical document form of an option text."""
    runs = [run_to_str(run, catalogue) for run in text.runs]
    if text.is_split:
        return runs
    return runs[0]


def run_to_str(run: TextRun, catalogue: Catalogue | None = None) -> str:
    parts: list[str] = []
    if run.glue_before:
        parts.append(GLUE_MARK)
    for frag in run.fragments:
        if isinstance(frag, SlotRef):
            depth = 1
            if catalogue is not None and frag.list_id in catalogue.lists:
                depth = catalogue.lists[frag.list_id].depth
            braces = "{" * max(depth, 1), "}" * max(depth, 1)
            parts.append(f"{braces[0]}{frag.list_id}{braces[1]}")
        else:
            parts.append(frag)
    if run.glue_after:
        parts.append(GLUE_MARK)
    return "".join(parts)


def _parse_agreement(raw: Any, languages: tuple[str, ...], path: str) -> Agreement:
    if not isinstance(raw, dict):
        raise ParseError("agreement entry must be an object", path=path)
    unknown = set(raw) - {"agrees_with", "gender", "number"}
    if unknown:
        raise ParseError(f"unknown agreement keys: {sorted(unknown)}", path=path)

    def expand(value: Any, key: str) -> dict[str, str]:
        if value is None:
            return {}
        if isinstance(value, str):
            return {lang: _norm(value) for lang in languages}
        if isinstance(value, dict):
            for lang in value:
                if lang not in languages:
                    raise ParseError(f"unknown language {lang!r} in {key}", path=path)
            return {lang: _norm(v) for lang, v in value.items()}
        raise ParseError(f"{key} must be a string or a per-language object", path=path)

    agrees_with = raw.get("agrees_with")
    if agrees_with is not None:
        agrees_with = _check_id("list", agrees_with, path)
    return Agreement(
        agrees_with=agrees_with,
        gender=expand(raw.get("gender"), "gender"),
        number=expand(raw.get("number"), "number"),
    )


def _parse_list(list_id: str, raw: Any, languages: tuple[str, ...], path: str) -> OptionList:
    if not isinstance(raw, dict):
        raise ParseError("list entry must be an object", path=path)
    depth = raw.get("depth")
    if not isinstance(depth, int) or isinstance(depth, bool):
        raise ParseError("list depth must be an integer", path=path)

    option_ids = raw.get("options")
    if not isinstance(option_ids, list):
        raise ParseError("list options must be an array of option ids", path=path)
    ids = [_check_id("option", oid, f"{path}/options") for oid in option_ids]
    if len(set(ids)) != len(ids):
        raise ParseError("duplicate option id in list", path=f"{path}/options")

    texts = raw.get("texts", {})
    if not isinstance(texts, dict):
        raise ParseError("list texts must be an object keyed by language", path=path)
    columns: dict[str, list[OptionText]] = {}
    counts: dict[str, int] = {}
    for lang, column in texts.items():
        if lang not in languages:
            raise ParseError(f"unknown language {lang!r} in list texts", path=path)
        if not isinstance(column, list):
            raise ParseError(f"texts[{lang}] must be an array", path=path)
        columns[lang] = [
            parse_option_text(value, f"{path}/texts/{lang}[{i}]")
            for i, value in enumerate(column)
        ]
        counts[lang] = len(column)

    hints_raw = raw.get("hints", {})
    if not isinstance(hints_raw, dict):
        raise ParseError("list hints must be an object keyed by language", path=path)
    hints: dict[str, dict[str, str]] = {}
    for lang, per_option in hints_raw.items():
        if lang not in languages:
            raise ParseError(f"unknown language {lang!r} in hints", path=path)
        if not isinstance(per_option, dict):
            raise ParseError(f"hints[{lang}] must map option ids to strings", path=path)
        for oid, hint in per_option.items():
            if oid not in ids:
                raise ParseError(f"hint for unknown option {oid!r}", path=path)
            hints.setdefault(oid, {})[lang] = _norm(hint)

    agreement_raw = raw.get("agreement", {})
    if not isinstance(agreement_raw, dict):
        raise ParseError("list agreement must be an object keyed by option id", path=path)
    agreements: dict[str, Agreement] = {}
    for oid, entry in agreement_raw.items():
        if oid not in ids:
            raise ParseError(f"agreement for unknown option {oid!r}", path=path)
        agreements[oid] = _parse_agreement(entry, languages, f"{path}/agreement/{oid}")

    notes_raw = raw.get("time_notes", {})
    if not isinstance(notes_raw, dict):
        raise ParseError("time_notes must be an object keyed by option id", path=path)
    for oid in notes_raw:
        if oid not in ids:
            raise ParseError(f"time note for unknown option {oid!r}", path=path)

    split_raw = raw.get("split", [])
    if not isinstance(split_raw, list):
        raise ParseError("list split must be an array of language codes", path=path)
    for lang in split_raw:
        if lang not in languages:
            raise ParseError(f"unknown language {lang!r} in split", path=path)

    unknown = set(raw) - {"depth", "options", "texts", "hints", "agreement", "time_notes", "split"}
    if unknown:
        raise ParseError(f"unknown list keys: {sorted(unknown)}", path=path)

    entries = []
    for i, oid in enumerate(ids):
        entry_texts = {
            lang: column[i] for lang, column in columns.items() if i < len(column)
        }
        entries.append(
            OptionEntry(
                option_id=oid,
                texts=entry_texts,
                editor_hints=hints.get(oid, {}),
                agreement=agreements.get(oid),
                time_note=_norm(notes_raw[oid]) if oid in notes_raw else None,
            )
        )
    return OptionList(
        list_id=list_id,
        depth=depth,
        options=tuple(entries),
        split_languages=frozenset(split_raw),
        language_option_counts=counts,
    )


def _parse_phrase(
    phrase_id: str, raw: Any, languages: tuple[str, ...], source: str, path: str
) -> Phrase:
    if not isinstance(raw, dict):
        raise ParseError("phrase entry must be an object", path=path)
    number = raw.get("number")
    if not isinstance(number, int) or isinstance(number, bool):
        raise ParseError("phrase number must be an integer", path=path)
    segments_raw = raw.get("segments")
    if not isinstance(segments_raw, list) or not segments_raw:
        raise ParseError("phrase segments must be a nonempty array", path=path)
    segments: list[tuple[int, str]] = []
    for i, seg in enumerate(segments_raw):
        if not isinstance(seg, dict) or "no" not in seg or "list" not in seg:
            raise ParseError("segment entry must be {no, list}", path=f"{path}/segments[{i}]")
        seg_no = seg["no"]
        if not isinstance(seg_no, int) or isinstance(seg_no, bool) or seg_no < 1:
            raise ParseError("segment no must be a positive integer", path=f"{path}/segments[{i}]")
        segments.append((seg_no, _check_id("list", seg["list"], f"{path}/segments[{i}]")))
    seg_nos = [no for no, _ in segments]
    if len(set(seg_nos)) != len(seg_nos):
        raise ParseError("duplicate segment number", path=f"{path}/segments")

    layouts_raw = raw.get("layouts", {})
    if not isinstance(layouts_raw, dict):
        raise ParseError("phrase layouts must be an object keyed by language", path=path)
    layouts: dict[str, tuple[LayoutPart, ...]] = {}
    for lang, tokens in layouts_raw.items():
        if lang not in languages:
            raise ParseError(f"unknown language {lang!r} in layouts", path=path)
        if not isinstance(tokens, list):
            raise ParseError(f"layouts[{lang}] must be an array", path=path)
        try:
            layouts[lang] = tuple(LayoutPart.from_str(t) for t in tokens)
        except (ValueError, AttributeError, TypeError) as exc:
            raise ParseError(str(exc), path=f"{path}/layouts/{lang}") from exc
    identity = tuple(LayoutPart(no) for no in seg_nos)
    for lang in languages:
        layouts.setdefault(lang, identity)

    title = raw.get("title", "")
    if not isinstance(title, str):
        raise ParseError("phrase title must be a string", path=path)

    unknown = set(raw) - {"number", "title", "segments", "layouts"}
    if unknown:
        raise ParseError(f"unknown phrase keys: {sorted(unknown)}", path=path)

    return Phrase(
        phrase_id=phrase_id,
        number=number,
        segments=tuple(segments),
        layouts=layouts,
        title=_norm(title),
    )


def parse_catalogue(data: bytes | str) -> Catalogue:
    """Parse a catalogue document into an immutable snapshot."""
    if isinstance(data, bytes):
        try:
            data = data.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise ParseError(f"document is not valid UTF-8: {exc}") from exc
    try:
        doc = json.loads(data, object_pairs_hook=_pairs_hook)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, line=exc.lineno) from exc
    if not isinstance(doc, dict):
        raise ParseError("document root must be an object")

    version = doc.get("schema_version")
    if version != SCHEMA_VERSION:
        raise ParseError(f"unknown schema_version: {version!r}")

    languages_raw = doc.get("languages")
    if not isinstance(languages_raw, list) or not languages_raw:
        raise ParseError("languages must be a nonempty array")
    languages: list[Language] = []
    for i, entry in enumerate(languages_raw):
        if not isinstance(entry, dict) or "code" not in entry:
            raise ParseError("language entry must be {code, source?}", path=f"languages[{i}]")
        code = _check_id("language", entry["code"], f"languages[{i}]")
        source = bool(entry.get("source", False))
        languages.append(Language(code=code, source=source))
    codes = [lang.code for lang in languages]
    if len(set(codes)) != len(codes):
        raise ParseError("duplicate language code", path="languages")
    sources = [lang.code for lang in languages if lang.source]
    if len(sources) != 1:
        raise ParseError(f"exactly one source language required, got {sources}")

    lists_raw = doc.get("lists", {})
    if not isinstance(lists_raw, dict):
        raise ParseError("lists must be an object keyed by list id")
    lists: dict[str, OptionList] = {}
    for list_id, raw in lists_raw.items():
        list_id = _check_id("list", list_id, f"lists/{list_id}")
        lists[list_id] = _parse_list(list_id, raw, tuple(codes), f"lists/{list_id}")

    phrases_raw = doc.get("phrases", {})
    if not isinstance(phrases_raw, dict):
        raise ParseError("phrases must be an object keyed by phrase id")
    phrases: dict[str, Phrase] = {}
    for phrase_id, raw in phrases_raw.items():
        phrase_id = _check_id("phrase", phrase_id, f"phrases/{phrase_id}")
        phrases[phrase_id] = _parse_phrase(
            phrase_id, raw, tuple(codes), sources[0], f"phrases/{phrase_id}"
        )

    unknown = set(doc) - {"schema_version", "languages", "lists", "phrases"}
    if unknown:
        raise ParseError(f"unknown top-level keys: {sorted(unknown)}")

    catalogue = Catalogue(
        schema_version=version,
        languages=tuple(languages),
        lists=lists,
        phrases=phrases,
    )
    _check_references(catalogue)
    return catalogue


def _check_references(catalogue: Catalogue) -> None:
    for phrase in catalogue.phrases.values():
        for seg_no, list_id in phrase.segments:
            if list_id not in catalogue.lists:
                raise ParseError(
                    f"segment {seg_no} references unknown list {list_id!r}",
                    path=f"phrases/{phrase.phrase_id}",
                )
    for option_list in catalogue.lists.values():
        for option in option_list.options:
            for lang, text in option.texts.items():
                for ref in text.slot_refs:
                    if ref.list_id not in catalogue.lists:
                        raise ParseError(
                            f"slot references unknown list {ref.list_id!r}",
                            path=f"lists/{option_list.list_id}/texts/{lang}",
                        )
            agreement = option.agreement
            if agreement and agreement.agrees_with and agreement.agrees_with not in catalogue.lists:
                raise ParseError(
                    f"agreement references unknown list {agreement.agrees_with!r}",
                    path=f"lists/{option_list.list_id}/agreement/{option.option_id}",
                )


def _agreement_to_document(agreement: Agreement, languages: tuple[str, ...]) -> dict:
    doc: dict[str, Any] = {}
    if agreement.agrees_with:
        doc["agrees_with"] = agreement.agrees_with

    def collapse(per_lang: Mapping[str, str]) -> Any:
        if not per_lang:
            return None
        values = set(per_lang.values())
        if len(values) == 1 and set(per_lang) == set(languages):
            return next(iter(values))
        return dict(sorted(per_lang.items()))

    gender = collapse(agreement.gender)
    if gender is not None:
        doc["gender"] = gender
    number = collapse(agreement.number)
    if number is not None:
        doc["number"] = number
    return doc


def catalogue_to_document(catalogue: Catalogue) -> dict:
    """Build the canonical JSON-compatible tree for a catalogue."""
    languages = catalogue.language_codes
    lists_doc: dict[str, Any] = {}
    for list_id in catalogue.lists:
        option_list = catalogue.lists[list_id]
        texts: dict[str, list[Any]] = {}
        hints: dict[str, dict[str, str]] = {}
        agreement: dict[str, Any] = {}
        time_notes: dict[str, str] = {}
        for option in option_list.options:
            for lang, text in option.texts.items():
                texts.setdefault(lang, []).append(text_to_document(text, catalogue))
            for lang, hint in option.editor_hints.items():
                hints.setdefault(lang, {})[option.option_id] = hint
            if option.agreement is not None:
                agreement[option.option_id] = _agreement_to_document(
                    option.agreement, languages
                )
            if option.time_note is not None:
                time_notes[option.option_id] = option.time_note
        entry: dict[str, Any] = {
            "depth": option_list.depth,
            "options": [o.option_id for o in option_list.options],
            "texts": texts,
        }
        if option_list.split_languages:
            entry["split"] = sorted(option_list.split_languages)
        if hints:
            entry["hints"] = hints
        if agreement:
            entry["agreement"] = agreement
        if time_notes:
            entry["time_notes"] = time_notes
        lists_doc[list_id] = entry

    phrases_doc: dict[str, Any] = {}
    for phrase_id in catalogue.phrases:
        phrase = catalogue.phrases[phrase_id]
        identity = tuple(LayoutPart(no) for no, _ in phrase.segments)
        layouts = {
            lang: [str(part) for part in layout]
            for lang, layout in phrase.layouts.items()
            if layout != identity
        }
        entry = {
            "number": phrase.number,
            "title": phrase.title,
            "segments": [{"no": no, "list": list_id} for no, list_id in phrase.segments],
        }
        if layouts:
            entry["layouts"] = layouts
        phrases_doc[phrase_id] = entry

    return {
        "schema_version": catalogue.schema_version,
        "languages": [
            {"code": lang.code, "source": True} if lang.source else {"code": lang.code}
            for lang in catalogue.languages
        ],
        "lists": lists_doc,
        "phrases": phrases_doc,
    }


def serialize_catalogue(catalogue: Catalogue) -> bytes:
    """Serialize to canonical UTF-8 bytes (a fixed point of parse/serialize)."""
    doc = catalogue_to_document(catalogue)
    text = json.dumps(doc, ensure_ascii=False, indent=2, sort_keys=True)
    return (text + "\n").encode("utf-8")


def content_hash(catalogue: Catalogue) -> str:
    """Hex digest identifying the catalogue content."""
    return hashlib.sha256(serialize_catalogue(catalogue)).hexdigest()


def load_catalogue(path) -> Catalogue:
    """Read and parse a catalogue document from ``path``."""
    with open(path, "rb") as fh:
        return parse_catalogue(fh.read())
