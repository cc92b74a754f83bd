"""Turning selections into sentences.

Rendering walks the target language's layout, fetches the chosen option text
for each placed segment (whole, part a or part b), recursively splices in the
texts chosen for embedded slots, joins adjacent visible pieces with a single
space unless a glue marker suppresses it, collapses whitespace and uppercases
the first alphabetic character. Pure functions over immutable inputs.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import RenderError
from .model import (
    Catalogue,
    Finding,
    JokerSentence,
    OptionEntry,
    Selection,
    SentenceText,
    SlotPath,
    SlotRef,
    TextRun,
    ValidationReport,
    path_to_str,
)
from .parsing import run_to_str

_GLUE = object()

EMPTY_LABEL = "[Empty]"


@dataclass(frozen=True)
class SlotOption:
    """Menu entry for one choosable option (source-language display)."""

    option_id: str
    label: str
    editor_hint: str | None = None


@dataclass(frozen=True)
class SlotDescriptor:
    """One fillable slot of a (possibly partial) selection."""

    path: SlotPath
    list_id: str
    depth: int
    chosen: str | None
    options: tuple[SlotOption, ...]


SlotTree = tuple[SlotDescriptor, ...]


def _option(cat: Catalogue, list_id: str, option_id: str, path: SlotPath) -> OptionEntry:
    option = cat.lists[list_id].by_id.get(option_id)
    if option is None:
        raise RenderError(
            f"option {option_id!r} does not exist in list {list_id!r}",
            code="STALE_OPTION",
            path=path_to_str(path),
        )
    return option


def _expand_run(
    cat: Catalogue,
    run: TextRun,
    owner_path: SlotPath,
    option_id: str,
    choices,
    lang: str,
) -> list:
    tokens: list = []
    for frag in run.fragments:
        if isinstance(frag, SlotRef):
            child_path = owner_path + (option_id, frag.list_id, frag.ordinal)
            chosen = choices.get(child_path)
            if chosen is None:
                raise RenderError(
                    f"no choice for slot {path_to_str(child_path)}",
                    code="INCOMPLETE_SELECTION",
                    path=path_to_str(child_path),
                )
            child = _option(cat, frag.list_id, chosen, child_path)
            text = child.texts.get(lang)
            if text is None:
                raise RenderError(
                    f"option {chosen!r} has no {lang} text",
                    code="MISSING_LANGUAGE_TEXT",
                    path=path_to_str(child_path),
                )
            tokens.extend(_expand_run(cat, text.runs[0], child_path, chosen, choices, lang))
        else:
            tokens.append(frag)
    if not any(isinstance(t, str) and t.strip() for t in tokens):
        return []
    if run.glue_before:
        tokens.insert(0, _GLUE)
    if run.glue_after:
        tokens.append(_GLUE)
    return tokens


def _resolve_tokens(tokens: list) -> str:
    out: list[str] = []
    glue = False
    for token in tokens:
        if token is _GLUE:
            while out and not out[-1].strip():
                out.pop()
            if out:
                out[-1] = out[-1].rstrip()
            glue = True
        else:
            text = token
            if glue:
                text = text.lstrip()
                if text:
                    glue = False
            if text:
                out.append(text)
    return "".join(out)


def capitalize_first(text: str) -> str:
    """Uppercase the first alphabetic character, leaving the rest untouched."""
    for i, ch in enumerate(text):
        if ch.isalpha():
            if ch.isupper():
                return text
            return text[:i] + ch.upper() + text[i + 1:]
    return text


def render_sentence(cat: Catalogue, sel: Selection, lang: str) -> SentenceText:
    """Render one selection in one catalogue language (deterministic)."""
    if lang not in cat.language_codes:
        raise RenderError(f"unknown language {lang!r}", code="UNKNOWN_LANGUAGE")
    phrase = cat.phrases.get(sel.phrase_id)
    if phrase is None:
        raise RenderError(f"unknown phrase {sel.phrase_id!r}", code="UNKNOWN_PHRASE")

    tokens: list = []
    for part in phrase.layouts[lang]:
        seg_path: SlotPath = (part.seg_no,)
        list_id = phrase.segment_lists[part.seg_no]
        chosen = sel.choices.get(seg_path)
        if chosen is None:
            raise RenderError(
                f"no choice for segment {part.seg_no}",
                code="INCOMPLETE_SELECTION",
                path=path_to_str(seg_path),
            )
        option = _option(cat, list_id, chosen, seg_path)
        text = option.texts.get(lang)
        if text is None:
            raise RenderError(
                f"option {chosen!r} has no {lang} text",
                code="MISSING_LANGUAGE_TEXT",
                path=path_to_str(seg_path),
            )
        if part.part == "whole":
            run = text.runs[0]
        else:
            if not text.is_split:
                raise RenderError(
                    f"option {chosen!r} has no split parts in {lang!r}",
                    code="SPLIT_MISMATCH",
                    path=path_to_str(seg_path),
                )
            run = text.part_a if part.part == "a" else text.part_b
        run_tokens = _expand_run(cat, run, seg_path, chosen, sel.choices, lang)
        if run_tokens:
            if tokens:
                tokens.append(" ")
            tokens.extend(run_tokens)

    flat = _resolve_tokens(tokens)
    normalized = " ".join(flat.split())
    return SentenceText(language=lang, text=capitalize_first(normalized))


def render_description(cat: Catalogue, sentences, lang: str) -> str:
    """Render an ordered mix of selections and joker sentences as one block."""
    parts: list[str] = []
    for i, item in enumerate(sentences):
        if isinstance(item, JokerSentence):
            text = item.texts.get(lang)
            if text is None:
                raise RenderError(
                    f"joker sentence has no {lang} text",
                    code="MISSING_JOKER_TEXT",
                    path=f"sentences[{i}]",
                )
            text = text.strip()
        else:
            try:
                text = render_sentence(cat, item, lang).text
            except RenderError as exc:
                raise RenderError(
                    f"sentence {i}: {exc}", code=exc.code, path=f"sentences[{i}]"
                ) from exc
        if text:
            parts.append(text)
    return " ".join(parts)


def _slot_options(cat: Catalogue, list_id: str) -> tuple[SlotOption, ...]:
    source = cat.source_language
    entries = []
    for option in cat.lists[list_id].options:
        text = option.texts.get(source)
        if text is None or text.is_empty():
            label = EMPTY_LABEL
        else:
            label = run_to_str(text.runs[0], cat)
        entries.append(
            SlotOption(
                option_id=option.option_id,
                label=label,
                editor_hint=option.editor_hints.get(source),
            )
        )
    return tuple(entries)


def resolve_slots(cat: Catalogue, sel: Selection) -> SlotTree:
    """List every fillable slot for a (possibly partial) selection.

    Slots appear in authoring order: segments as authored, then the child
    slots of each chosen option directly after it, depth first. Changing a
    choice invalidates only slots below it.
    """
    phrase = cat.phrases.get(sel.phrase_id)
    if phrase is None:
        raise RenderError(f"unknown phrase {sel.phrase_id!r}", code="UNKNOWN_PHRASE")
    source = cat.source_language
    slots: list[SlotDescriptor] = []

    def descend(path: SlotPath, list_id: str) -> None:
        chosen = sel.choices.get(path)
        option = None
        if chosen is not None:
            option = _option(cat, list_id, chosen, path)
        slots.append(
            SlotDescriptor(
                path=path,
                list_id=list_id,
                depth=cat.lists[list_id].depth,
                chosen=chosen,
                options=_slot_options(cat, list_id),
            )
        )
        if option is None:
            return
        text = option.texts.get(source)
        if text is None:
            return
        for ref in text.slot_refs:
            descend(path + (chosen, ref.list_id, ref.ordinal), ref.list_id)

    for seg_no, list_id in phrase.segments:
        descend((seg_no,), list_id)
    return tuple(slots)


def validate_selection(cat: Catalogue, sel: Selection) -> ValidationReport:
    """Report missing, stale and extraneous choices plus pronoun-hint prompts."""
    errors: list[Finding] = []
    warnings: list[Finding] = []
    phrase = cat.phrases.get(sel.phrase_id)
    if phrase is None:
        return ValidationReport(
            (Finding("UNKNOWN_PHRASE", "phrase", f"unknown phrase {sel.phrase_id!r}"),)
        )

    accounted: set[SlotPath] = set()
    stale_prefixes: list[SlotPath] = []

    def descend(path: SlotPath, list_id: str) -> None:
        accounted.add(path)
        chosen = sel.choices.get(path)
        if chosen is None:
            errors.append(
                Finding("MISSING_CHOICE", path_to_str(path), f"no choice for list {list_id!r}")
            )
            return
        option = cat.lists[list_id].by_id.get(chosen)
        if option is None:
            errors.append(
                Finding(
                    "STALE_OPTION",
                    path_to_str(path),
                    f"option {chosen!r} no longer exists in list {list_id!r}",
                )
            )
            stale_prefixes.append(path + (chosen,))
            return
        if option.editor_hints:
            hint = option.editor_hints.get(cat.source_language) or next(
                iter(option.editor_hints.values())
            )
            warnings.append(
                Finding(
                    "PRONOUN_CHECK",
                    path_to_str(path),
                    f"confirm annotated option ({hint})",
                )
            )
        text = option.texts.get(cat.source_language)
        if text is None:
            return
        for ref in text.slot_refs:
            descend(path + (chosen, ref.list_id, ref.ordinal), ref.list_id)

    for seg_no, list_id in phrase.segments:
        descend((seg_no,), list_id)

    for path in sel.choices:
        if path in accounted:
            continue
        if any(path[: len(prefix)] == prefix for prefix in stale_prefixes):
            continue
        errors.append(
            Finding("EXTRANEOUS_CHOICE", path_to_str(path), "choice does not match any slot")
        )
    return ValidationReport(tuple(errors), tuple(warnings))
