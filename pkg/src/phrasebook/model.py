"""Immutable data model for the phrase catalogue.

A catalogue is a snapshot of languages, shareable option lists and phrases.
Phrases are sequences of segments; each segment draws one option from a list;
option texts may embed slots that reference deeper lists (up to two levels of
nesting below the segment). All structures are frozen: reloading a catalogue
means parsing a new snapshot and swapping the reference.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterator, Mapping, Union

GLUE_MARK = "(-)"

# A slot path addresses one fillable slot of a phrase. Segment slots are
# (seg_no,); a child slot of the option chosen there appends
# (chosen_option_id, list_id, ordinal), recursively.
SlotPath = tuple[Union[int, str], ...]


def path_to_str(path: SlotPath) -> str:
    return "/".join(str(part) for part in path)


def path_from_str(raw: str) -> SlotPath:
    tokens = raw.split("/")
    if not tokens or len(tokens) % 3 != 1:
        raise ValueError(f"malformed slot path: {raw!r}")
    parts: list[int | str] = [int(tokens[0])]
    for i in range(1, len(tokens), 3):
        parts.append(tokens[i])
        parts.append(tokens[i + 1])
        parts.append(int(tokens[i + 2]))
    return tuple(parts)


@dataclass(frozen=True)
class Language:
    """One catalogue language; exactly one is the authoring (source) language."""

    code: str
    source: bool = False


@dataclass(frozen=True)
class SlotRef:
    """Reference to a child option list embedded in an option text.

    ``ordinal`` is the 1-based occurrence index among slots with the same
    ``list_id`` within one option text; it is what child choices bind to, so
    target languages may reorder slot occurrences freely.
    """

    list_id: str
    ordinal: int


Fragment = Union[str, SlotRef]


@dataclass(frozen=True)
class TextRun:
    """One contiguous piece of option text: literal fragments and slots.

    ``glue_before``/``glue_after`` suppress the joining space on that side
    (the ``(-)`` marker in the document format).
    """

    fragments: tuple[Fragment, ...]
    glue_before: bool = False
    glue_after: bool = False

    @cached_property
    def slot_refs(self) -> tuple[SlotRef, ...]:
        return tuple(f for f in self.fragments if isinstance(f, SlotRef))

    def is_empty(self) -> bool:
        return not any(
            (isinstance(f, SlotRef)) or f.strip() for f in self.fragments
        )


@dataclass(frozen=True)
class OptionText:
    """Text of one option in one language.

    Unsplit languages carry a single run; languages in which the owning list
    is split carry exactly two (part a and part b, placed independently by
    the phrase layout).
    """

    runs: tuple[TextRun, ...]

    @property
    def is_split(self) -> bool:
        return len(self.runs) == 2

    @property
    def whole(self) -> TextRun:
        return self.runs[0]

    @property
    def part_a(self) -> TextRun:
        return self.runs[0]

    @property
    def part_b(self) -> TextRun:
        return self.runs[1]

    @cached_property
    def slot_refs(self) -> tuple[SlotRef, ...]:
        return tuple(ref for run in self.runs for ref in run.slot_refs)

    def is_empty(self) -> bool:
        return all(run.is_empty() for run in self.runs)


@dataclass(frozen=True)
class Agreement:
    """Gender/number metadata used by the agreement lint.

    Subject-like options declare per-language ``gender``/``number``;
    adjective-like options declare ``agrees_with`` naming the governing list.
    """

    agrees_with: str | None = None
    gender: Mapping[str, str] = field(default_factory=dict)
    number: Mapping[str, str] = field(default_factory=dict)


@dataclass(frozen=True)
class OptionEntry:
    """One selectable option: parallel texts plus authoring metadata."""

    option_id: str
    texts: Mapping[str, OptionText]
    editor_hints: Mapping[str, str] = field(default_factory=dict)
    agreement: Agreement | None = None
    time_note: str | None = None


@dataclass(frozen=True)
class OptionList:
    """Named list of parallel options, shareable between phrases.

    ``depth`` 0 = segment level, 1 = sub-segment, 2 = sub-sub-segment.
    ``language_option_counts`` preserves the per-language column lengths of
    the source document so the validator can distinguish a missing language
    column from a column of the wrong length.
    """

    list_id: str
    depth: int
    options: tuple[OptionEntry, ...]
    split_languages: frozenset[str] = frozenset()
    language_option_counts: Mapping[str, int] = field(default_factory=dict)

    @cached_property
    def by_id(self) -> Mapping[str, OptionEntry]:
        return {opt.option_id: opt for opt in self.options}


@dataclass(frozen=True)
class LayoutPart:
    """One placed segment in a per-language layout: whole, part a or part b."""

    seg_no: int
    part: str = "whole"  # "whole" | "a" | "b"

    def __str__(self) -> str:
        suffix = "" if self.part == "whole" else self.part
        return f"{self.seg_no}{suffix}"

    @classmethod
    def from_str(cls, token: str) -> "LayoutPart":
        body = token.strip()
        part = "whole"
        if body and body[-1] in ("a", "b"):
            part = body[-1]
            body = body[:-1]
        if not body.isdigit():
            raise ValueError(f"malformed layout token: {token!r}")
        return cls(int(body), part)


@dataclass(frozen=True)
class Phrase:
    """Sentence template: ordered segments plus per-language layouts."""

    phrase_id: str
    number: int
    segments: tuple[tuple[int, str], ...]  # (seg_no, list_id)
    layouts: Mapping[str, tuple[LayoutPart, ...]]
    title: str = ""

    @cached_property
    def segment_lists(self) -> Mapping[int, str]:
        return {seg_no: list_id for seg_no, list_id in self.segments}


@dataclass(frozen=True)
class Catalogue:
    """Immutable catalogue snapshot."""

    schema_version: int
    languages: tuple[Language, ...]
    lists: Mapping[str, OptionList]
    phrases: Mapping[str, Phrase]

    @cached_property
    def language_codes(self) -> tuple[str, ...]:
        return tuple(lang.code for lang in self.languages)

    @cached_property
    def source_language(self) -> str:
        for lang in self.languages:
            if lang.source:
                return lang.code
        raise ValueError("catalogue has no source language")

    @cached_property
    def target_languages(self) -> tuple[str, ...]:
        return tuple(lang.code for lang in self.languages if not lang.source)


@dataclass(frozen=True)
class Finding:
    """One validation finding; ``path`` locates the offending element."""

    code: str
    path: str
    message: str

    def as_line(self) -> str:
        return f"{self.code}\t{self.path}\t{self.message}"


@dataclass(frozen=True)
class ValidationReport:
    errors: tuple[Finding, ...] = ()
    warnings: tuple[Finding, ...] = ()

    @property
    def ok(self) -> bool:
        return not self.errors

    def merged(self, other: "ValidationReport") -> "ValidationReport":
        return ValidationReport(
            self.errors + other.errors, self.warnings + other.warnings
        )

    def error_codes(self) -> set[str]:
        return {f.code for f in self.errors}

    def warning_codes(self) -> set[str]:
        return {f.code for f in self.warnings}

    def __iter__(self) -> Iterator[Finding]:
        return iter(self.errors + self.warnings)


@dataclass(frozen=True)
class Selection:
    """Language-independent record of one composed sentence."""

    phrase_id: str
    choices: Mapping[SlotPath, str]

    def to_document(self) -> dict:
        return {
            "phrase": self.phrase_id,
            "choices": {path_to_str(p): o for p, o in self.choices.items()},
        }

    @classmethod
    def from_document(cls, doc: Mapping) -> "Selection":
        return cls(
            phrase_id=doc["phrase"],
            choices={path_from_str(p): o for p, o in doc.get("choices", {}).items()},
        )


@dataclass(frozen=True)
class JokerSentence:
    """Escape-hatch free-text sentence, supplied manually per language."""

    texts: Mapping[str, str]


@dataclass(frozen=True)
class SentenceText:
    """Final rendered sentence in one language."""

    language: str
    text: str
