"""Quality-check tooling: seeded random generation, exact counting,
exhaustive enumeration, option review sheets and surface checks.

The random generator is splitmix64 (Steele, Lea & Flood's mixing constants),
chosen because it is trivially portable: any reimplementation that seeds the
same 64-bit value and draws slot indices in the same depth-first order
reproduces the selection stream exactly. Draw order: segments in authored
order; inside a chosen option, its slots in source-text order, depth first.
Each index is drawn by rejection sampling, so per-slot choices are exactly
uniform.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterator, Mapping

from .errors import EnumerationError
from .model import Catalogue, Finding, OptionEntry, Selection, SlotPath
from .parsing import text_to_document

_MASK = (1 << 64) - 1


class SplitMix64:
    """Deterministic 64-bit generator; documented for cross-language reuse."""

    def __init__(self, seed: int):
        self._state = seed & _MASK

    def next_u64(self) -> int:
        self._state = (self._state + 0x9E3779B97F4A7C15) & _MASK
        z = self._state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK
        return z ^ (z >> 31)

    def below(self, n: int) -> int:
        """Uniform integer in [0, n) via rejection sampling (no modulo bias)."""
        if n <= 0:
            raise ValueError("bound must be positive")
        threshold = (1 << 64) - ((1 << 64) % n)
        while True:
            value = self.next_u64()
            if value < threshold:
                return value % n


@dataclass(frozen=True)
class GenerationSpec:
    """Deterministic recipe for a batch of random selections."""

    phrase_id: str
    seed: int
    count: int

    def __post_init__(self) -> None:
        if self.count < 1:
            raise ValueError("count must be positive")


def _phrase(cat: Catalogue, phrase_id: str):
    phrase = cat.phrases.get(phrase_id)
    if phrase is None:
        raise EnumerationError(f"unknown phrase {phrase_id!r}", code="UNKNOWN_PHRASE")
    return phrase


def generate_random(cat: Catalogue, spec: GenerationSpec) -> list[Selection]:
    """Generate ``spec.count`` complete selections, uniform per slot."""
    phrase = _phrase(cat, spec.phrase_id)
    source = cat.source_language
    rng = SplitMix64(spec.seed)
    selections = []
    for _ in range(spec.count):
        choices: dict[SlotPath, str] = {}

        def fill(path: SlotPath, list_id: str) -> None:
            options = cat.lists[list_id].options
            option = options[rng.below(len(options))]
            choices[path] = option.option_id
            text = option.texts.get(source)
            if text is None:
                return
            for ref in text.slot_refs:
                fill(path + (option.option_id, ref.list_id, ref.ordinal), ref.list_id)

        for seg_no, list_id in phrase.segments:
            fill((seg_no,), list_id)
        selections.append(Selection(phrase_id=spec.phrase_id, choices=choices))
    return selections


def _option_count(cat: Catalogue, option: OptionEntry, memo: dict[str, int]) -> int:
    source = cat.source_language
    text = option.texts.get(source)
    if text is None:
        return 1
    product = 1
    for ref in text.slot_refs:
        product *= _list_count(cat, ref.list_id, memo)
    return product


def _list_count(cat: Catalogue, list_id: str, memo: dict[str, int]) -> int:
    if list_id not in memo:
        memo[list_id] = sum(
            _option_count(cat, option, memo) for option in cat.lists[list_id].options
        )
    return memo[list_id]


def enumerate_count(cat: Catalogue, phrase_id: str) -> int:
    """Exact number of distinct complete selections (arbitrary precision)."""
    phrase = _phrase(cat, phrase_id)
    memo: dict[str, int] = {}
    total = 1
    for _, list_id in phrase.segments:
        total *= _list_count(cat, list_id, memo)
    return total


def _slot_assignments(cat: Catalogue, path: SlotPath, list_id: str) -> Iterator[dict]:
    source = cat.source_language
    for option in cat.lists[list_id].options:
        base = {path: option.option_id}
        text = option.texts.get(source)
        refs = text.slot_refs if text is not None else ()

        def product(i: int, acc: dict) -> Iterator[dict]:
            if i == len(refs):
                yield acc
                return
            ref = refs[i]
            child = path + (option.option_id, ref.list_id, ref.ordinal)
            for assignment in _slot_assignments(cat, child, ref.list_id):
                yield from product(i + 1, {**acc, **assignment})

        yield from product(0, base)


def enumerate_all(cat: Catalogue, phrase_id: str, limit: int) -> list[Selection]:
    """All complete selections in lexicographic option order.

    Raises LIMIT_EXCEEDED if the exact count is larger than ``limit``.
    """
    phrase = _phrase(cat, phrase_id)
    total = enumerate_count(cat, phrase_id)
    if total > limit:
        raise EnumerationError(
            f"phrase {phrase_id!r} has {total} selections (limit {limit})",
            code="LIMIT_EXCEEDED",
        )

    def across(i: int, acc: dict) -> Iterator[dict]:
        if i == len(phrase.segments):
            yield acc
            return
        seg_no, list_id = phrase.segments[i]
        for assignment in _slot_assignments(cat, (seg_no,), list_id):
            yield from across(i + 1, {**acc, **assignment})

    return [
        Selection(phrase_id=phrase_id, choices=choices) for choices in across(0, {})
    ]


@dataclass(frozen=True)
class ReviewRow:
    """One option across all languages, for sequential translator review."""

    list_id: str
    option_id: str
    texts: Mapping[str, str]
    hints: Mapping[str, str] = field(default_factory=dict)


@dataclass(frozen=True)
class ReviewSheet:
    languages: tuple[str, ...]
    rows: tuple[ReviewRow, ...]
    warnings: tuple[Finding, ...] = ()

    def to_tsv(self) -> str:
        headers = ["list", "option", *self.languages]
        headers += [f"hint:{lang}" for lang in self.languages]
        lines = ["\t".join(headers)]
        for row in self.rows:
            cells = [row.list_id, row.option_id]
            cells += [row.texts.get(lang, "") for lang in self.languages]
            cells += [row.hints.get(lang, "") for lang in self.languages]
            lines.append("\t".join(c.replace("\t", " ").replace("\n", " ") for c in cells))
        return "\n".join(lines) + "\n"


EMPTY_LABEL = "[Empty]"


def _display_text(cat: Catalogue, option: OptionEntry, lang: str) -> str:
    text = option.texts.get(lang)
    if text is None:
        return ""
    doc = text_to_document(text, cat)
    if isinstance(doc, list):
        return " || ".join(part if part else EMPTY_LABEL for part in doc)
    return doc if doc else EMPTY_LABEL


def reachable_lists(cat: Catalogue) -> set[str]:
    """Lists reachable from any phrase segment through slot references."""
    seen: set[str] = set()
    stack = [list_id for phrase in cat.phrases.values() for _, list_id in phrase.segments]
    while stack:
        list_id = stack.pop()
        if list_id in seen or list_id not in cat.lists:
            continue
        seen.add(list_id)
        for option in cat.lists[list_id].options:
            for text in option.texts.values():
                stack.extend(ref.list_id for ref in text.slot_refs)
    return seen


def option_walk(cat: Catalogue) -> ReviewSheet:
    """One row per (list, option) with all languages side by side."""
    reachable = reachable_lists(cat)
    rows = []
    warnings = []
    for list_id in sorted(cat.lists):
        if list_id not in reachable:
            warnings.append(
                Finding("UNREACHABLE_LIST", f"lists/{list_id}", "not used by any phrase")
            )
        for option in cat.lists[list_id].options:
            rows.append(
                ReviewRow(
                    list_id=list_id,
                    option_id=option.option_id,
                    texts={
                        lang: _display_text(cat, option, lang)
                        for lang in cat.language_codes
                    },
                    hints=dict(option.editor_hints),
                )
            )
    return ReviewSheet(
        languages=cat.language_codes, rows=tuple(rows), warnings=tuple(warnings)
    )


def check_surface_invariants(text: str, lang: str = "") -> list[Finding]:
    """Check the rendered-sentence surface rules; returns one finding each."""
    violations = []

    def add(code: str, message: str) -> None:
        violations.append(Finding(code, lang or "text", message))

    if not text.strip():
        add("EMPTY_TEXT", "rendered text is empty")
        return violations
    if text != text.strip():
        add("LEADING_OR_TRAILING_SPACE", "text has leading or trailing whitespace")
    if "  " in text:
        add("DOUBLE_SPACE", "text contains two consecutive spaces")
    for ch in text:
        if ch.isalpha():
            if ch.islower():
                add("LOWERCASE_START", "first alphabetic character is lowercase")
            break
    if "{" in text or "}" in text or "(-)" in text:
        add("UNRESOLVED_MARKER", "text contains an unexpanded marker")
    return violations
