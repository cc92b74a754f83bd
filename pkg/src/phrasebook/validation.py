"""Structural validation and authoring lints for catalogue snapshots.

``validate_catalogue`` reports every violation of the model invariants that
unsupervised rendering relies on; a catalogue with zero errors renders every
complete selection in every language. Findings are report entries, never
exceptions.

Error codes:

==========================  ====================================================
MISSING_LANGUAGE_TEXT       a list has no text column for a catalogue language
PARALLEL_OPTION_COUNT       a text column length differs from the option count
PLACEHOLDER_PARITY          slot multiset differs from the source-language text
DEPTH_ORDER                 nesting depth out of bounds or not strictly increasing
LAYOUT_PERMUTATION          a layout is not a permutation of the segments
SPLIT_MISMATCH              split declaration, text shape and layout disagree
EMPTY_LIST                  a list has no options
DUPLICATE_ID                duplicate option id inside a list
SEGMENT_COUNT               phrase has zero or more than ten segments
UNRESOLVED_REF              a referenced list does not exist
SLOT_CYCLE                  slot references form a cycle
==========================  ====================================================

Warning codes: EMPTY_SOURCE_OPTION (an option with empty source text outside
the conventional first menu position), AGREEMENT_CONFLICT (agreement lint).
"""

from __future__ import annotations

from collections import Counter

from .model import Catalogue, Finding, OptionList, ValidationReport

MAX_SEGMENTS = 10
MAX_DEPTH = 2


def _counts(option_list: OptionList) -> dict[str, int]:
    if option_list.language_option_counts:
        return dict(option_list.language_option_counts)
    derived: dict[str, int] = {}
    for option in option_list.options:
        for lang in option.texts:
            derived[lang] = derived.get(lang, 0) + 1
    return derived


def _check_list_texts(cat: Catalogue, errors: list[Finding], warnings: list[Finding]) -> None:
    source = cat.source_language
    for list_id, option_list in cat.lists.items():
        base = f"lists/{list_id}"
        if not option_list.options:
            errors.append(Finding("EMPTY_LIST", base, "list has no options"))
            continue
        ids = [o.option_id for o in option_list.options]
        for dup in {i for i in ids if ids.count(i) > 1}:
            errors.append(Finding("DUPLICATE_ID", base, f"duplicate option id {dup!r}"))

        counts = _counts(option_list)
        complete_langs = []
        for lang in cat.language_codes:
            if lang not in counts:
                errors.append(
                    Finding(
                        "MISSING_LANGUAGE_TEXT",
                        f"{base}/texts/{lang}",
                        f"no {lang} texts for list {list_id!r}",
                    )
                )
            elif counts[lang] != len(option_list.options):
                errors.append(
                    Finding(
                        "PARALLEL_OPTION_COUNT",
                        f"{base}/texts/{lang}",
                        f"{counts[lang]} {lang} texts for {len(option_list.options)} options",
                    )
                )
            else:
                complete_langs.append(lang)

        for lang in complete_langs:
            for option in option_list.options:
                if lang not in option.texts:
                    errors.append(
                        Finding(
                            "MISSING_LANGUAGE_TEXT",
                            f"{base}/options/{option.option_id}/texts/{lang}",
                            "option lacks a text in this language",
                        )
                    )

        _check_split(cat, option_list, errors)
        _check_parity(cat, option_list, errors)

        if source in counts and counts[source] == len(option_list.options):
            for i, option in enumerate(option_list.options):
                text = option.texts.get(source)
                if i > 0 and text is not None and text.is_empty():
                    warnings.append(
                        Finding(
                            "EMPTY_SOURCE_OPTION",
                            f"{base}/options/{option.option_id}",
                            "empty source text outside the first menu position",
                        )
                    )


def _check_split(cat: Catalogue, option_list: OptionList, errors: list[Finding]) -> None:
    base = f"lists/{option_list.list_id}"
    split = option_list.split_languages
    if cat.source_language in split:
        errors.append(
            Finding(
                "SPLIT_MISMATCH",
                base,
                "segment splitting is not available in the source language",
            )
        )
    if split and option_list.depth != 0:
        errors.append(
            Finding("SPLIT_MISMATCH", base, "only segment-level lists can be split")
        )
    for option in option_list.options:
        for lang, text in option.texts.items():
            expected = lang in split
            if text.is_split != expected:
                shape = "a split pair" if expected else "a single text"
                errors.append(
                    Finding(
                        "SPLIT_MISMATCH",
                        f"{base}/options/{option.option_id}/texts/{lang}",
                        f"expected {shape} for language {lang!r}",
                    )
                )


def _check_parity(cat: Catalogue, option_list: OptionList, errors: list[Finding]) -> None:
    base = f"lists/{option_list.list_id}"
    source = cat.source_language
    for option in option_list.options:
        source_text = option.texts.get(source)
        if source_text is None:
            continue
        reference = Counter((r.list_id, r.ordinal) for r in source_text.slot_refs)
        for list_id in {r.list_id for r in source_text.slot_refs}:
            ordinals = sorted(o for (lid, o) in reference if lid == list_id)
            if ordinals != list(range(1, len(ordinals) + 1)):
                errors.append(
                    Finding(
                        "PLACEHOLDER_PARITY",
                        f"{base}/options/{option.option_id}/texts/{source}",
                        f"non-sequential slot ordinals for list {list_id!r}",
                    )
                )
        for lang, text in option.texts.items():
            if lang == source:
                continue
            found = Counter((r.list_id, r.ordinal) for r in text.slot_refs)
            if found != reference:
                errors.append(
                    Finding(
                        "PLACEHOLDER_PARITY",
                        f"{base}/options/{option.option_id}/texts/{lang}",
                        "slot references do not match the source-language text",
                    )
                )


def _check_depths(cat: Catalogue, errors: list[Finding]) -> None:
    for list_id, option_list in cat.lists.items():
        base = f"lists/{list_id}"
        if not 0 <= option_list.depth <= MAX_DEPTH:
            errors.append(
                Finding("DEPTH_ORDER", base, f"depth {option_list.depth} out of bounds")
            )
            continue
        for option in option_list.options:
            for lang, text in option.texts.items():
                for ref in text.slot_refs:
                    child = cat.lists.get(ref.list_id)
                    if child is None:
                        errors.append(
                            Finding(
                                "UNRESOLVED_REF",
                                f"{base}/options/{option.option_id}/texts/{lang}",
                                f"unknown list {ref.list_id!r}",
                            )
                        )
                    elif child.depth <= option_list.depth:
                        errors.append(
                            Finding(
                                "DEPTH_ORDER",
                                f"{base}/options/{option.option_id}/texts/{lang}",
                                f"list {ref.list_id!r} (depth {child.depth}) referenced "
                                f"from depth {option_list.depth}",
                            )
                        )


def _check_cycles(cat: Catalogue, errors: list[Finding]) -> None:
    # Independent of the depth ordering: walk slot references directly.
    edges: dict[str, set[str]] = {}
    for list_id, option_list in cat.lists.items():
        targets = set()
        for option in option_list.options:
            for text in option.texts.values():
                targets.update(r.list_id for r in text.slot_refs)
        edges[list_id] = targets & set(cat.lists)

    WHITE, GREY, BLACK = 0, 1, 2
    colour = dict.fromkeys(edges, WHITE)

    def visit(node: str, trail: list[str]) -> bool:
        colour[node] = GREY
        trail.append(node)
        for nxt in sorted(edges[node]):
            if colour[nxt] == GREY:
                cycle = trail[trail.index(nxt):] + [nxt]
                errors.append(
                    Finding(
                        "SLOT_CYCLE",
                        f"lists/{nxt}",
                        "slot reference cycle: " + " -> ".join(cycle),
                    )
                )
                return True
            if colour[nxt] == WHITE and visit(nxt, trail):
                return True
        trail.pop()
        colour[node] = BLACK
        return False

    for node in sorted(edges):
        if colour[node] == WHITE and visit(node, []):
            break


def _check_phrases(cat: Catalogue, errors: list[Finding]) -> None:
    source = cat.source_language
    for phrase_id, phrase in cat.phrases.items():
        base = f"phrases/{phrase_id}"
        if not 1 <= len(phrase.segments) <= MAX_SEGMENTS:
            errors.append(
                Finding(
                    "SEGMENT_COUNT",
                    base,
                    f"{len(phrase.segments)} segments (allowed 1..{MAX_SEGMENTS})",
                )
            )
        seg_lists: dict[int, OptionList] = {}
        for seg_no, list_id in phrase.segments:
            option_list = cat.lists.get(list_id)
            if option_list is None:
                errors.append(
                    Finding("UNRESOLVED_REF", f"{base}/segments/{seg_no}", f"unknown list {list_id!r}")
                )
                continue
            seg_lists[seg_no] = option_list
            if option_list.depth != 0:
                errors.append(
                    Finding(
                        "DEPTH_ORDER",
                        f"{base}/segments/{seg_no}",
                        f"segment references list {list_id!r} of depth {option_list.depth}",
                    )
                )

        for lang, layout in phrase.layouts.items():
            path = f"{base}/layouts/{lang}"
            if lang == source:
                identity = tuple((no, "whole") for no, _ in phrase.segments)
                if tuple((p.seg_no, p.part) for p in layout) != identity:
                    errors.append(
                        Finding(
                            "LAYOUT_PERMUTATION",
                            path,
                            "source layout must keep the authored segment order unsplit",
                        )
                    )
                continue
            placed: dict[int, list[str]] = {}
            order: dict[tuple[int, str], int] = {}
            bad = False
            for i, part in enumerate(layout):
                if part.seg_no not in phrase.segment_lists:
                    errors.append(
                        Finding("LAYOUT_PERMUTATION", path, f"unknown segment {part.seg_no}")
                    )
                    bad = True
                    continue
                placed.setdefault(part.seg_no, []).append(part.part)
                order[(part.seg_no, part.part)] = i
            if bad:
                continue
            for seg_no, list_id in phrase.segments:
                option_list = seg_lists.get(seg_no)
                forms = sorted(placed.get(seg_no, []))
                if forms not in (["whole"], ["a", "b"]):
                    errors.append(
                        Finding(
                            "LAYOUT_PERMUTATION",
                            path,
                            f"segment {seg_no} must appear once whole or once as each part",
                        )
                    )
                    continue
                if forms == ["a", "b"] and order[(seg_no, "a")] > order[(seg_no, "b")]:
                    errors.append(
                        Finding(
                            "LAYOUT_PERMUTATION",
                            path,
                            f"part a of segment {seg_no} must precede part b",
                        )
                    )
                if option_list is None:
                    continue
                split = lang in option_list.split_languages
                if split and forms != ["a", "b"]:
                    errors.append(
                        Finding(
                            "SPLIT_MISMATCH",
                            path,
                            f"segment {seg_no} is split in {lang!r} but placed whole",
                        )
                    )
                elif not split and forms != ["whole"]:
                    errors.append(
                        Finding(
                            "SPLIT_MISMATCH",
                            path,
                            f"segment {seg_no} is not split in {lang!r} but placed as parts",
                        )
                    )


def validate_catalogue(cat: Catalogue) -> ValidationReport:
    """Check every model invariant; zero errors means renderable everywhere."""
    errors: list[Finding] = []
    warnings: list[Finding] = []
    _check_list_texts(cat, errors, warnings)
    _check_depths(cat, errors)
    _check_cycles(cat, errors)
    _check_phrases(cat, errors)
    return ValidationReport(tuple(errors), tuple(warnings))


def lint_agreement(cat: Catalogue) -> ValidationReport:
    """Warn when an option's agreement target has mixed gender or number.

    Options carrying ``agrees_with`` require every option of the governing
    list to declare one identical gender and number in every language.
    Options without agreement metadata are skipped silently.
    """
    warnings: list[Finding] = []
    for list_id, option_list in cat.lists.items():
        for option in option_list.options:
            agreement = option.agreement
            if agreement is None or not agreement.agrees_with:
                continue
            path = f"lists/{list_id}/options/{option.option_id}"
            governing = cat.lists.get(agreement.agrees_with)
            if governing is None:
                warnings.append(
                    Finding(
                        "AGREEMENT_CONFLICT",
                        path,
                        f"governing list {agreement.agrees_with!r} does not exist",
                    )
                )
                continue
            features: set[tuple[tuple[tuple[str, str], ...], tuple[tuple[str, str], ...]]] = set()
            declared = True
            for subject in governing.options:
                if subject.agreement is None or (
                    not subject.agreement.gender and not subject.agreement.number
                ):
                    declared = False
                    break
                features.add(
                    (
                        tuple(sorted(subject.agreement.gender.items())),
                        tuple(sorted(subject.agreement.number.items())),
                    )
                )
            if not declared or len(features) > 1:
                why = (
                    "not all options declare gender and number"
                    if not declared
                    else "options declare differing gender/number"
                )
                warnings.append(
                    Finding(
                        "AGREEMENT_CONFLICT",
                        path,
                        f"governing list {agreement.agrees_with!r}: {why}",
                    )
                )
    return ValidationReport((), tuple(warnings))
