"""Deterministic synthetic catalogue builder for load and latency tests.

Produces a catalogue with a configurable number of phrases and lists at a
target mean segment count, mirroring the shape of a production catalogue:
most lists sit at segment level, a share of options embed sub-segment slots,
and a few of those reach sub-sub-segment depth. Same seed, same catalogue.
"""

from __future__ import annotations

from .model import Catalogue
from .parsing import parse_catalogue
from .qa import SplitMix64
import json

_WORDS = (
    "lawinen", "triebschnee", "altschnee", "neuschnee", "gefahr", "anstieg",
    "hänge", "lagen", "gebiete", "kamm", "pass", "wind", "sturm", "regen",
    "sonnig", "steil", "gross", "klein", "heikel", "günstig", "verbreitet",
    "vereinzelt", "oberhalb", "unterhalb", "morgen", "abend", "rasch", "kaum",
)


def build_synthetic_document(
    phrases: int = 110,
    lists: int = 603,
    mean_segments: float = 4.3,
    languages: tuple[str, ...] = ("de", "fr", "it", "en"),
    seed: int = 7,
) -> dict:
    """Build a catalogue document at the requested scale."""
    rng = SplitMix64(seed)

    def words(n: int) -> str:
        return " ".join(_WORDS[rng.below(len(_WORDS))] for _ in range(n))

    # keep segment-level lists below the segment-slot count so each list is
    # shared by at least one phrase
    depth2_count = max(lists // 12, 1)
    depth1_count = max(lists // 3, 1)
    depth0_count = lists - depth1_count - depth2_count

    child_cursor = {"n": 0}

    def list_entry(list_id: str, depth: int, child_pool: list[str]) -> dict:
        option_count = 2 + rng.below(6)
        option_ids = [f"o{i + 1}" for i in range(option_count)]
        texts: dict[str, list[str]] = {lang: [] for lang in languages}
        for i in range(option_count):
            # roughly one option in three embeds a slot, cycling through the
            # child pool so every nested list ends up reachable
            slot = ""
            if child_pool and rng.below(3) == 0:
                slot = " {" + child_pool[child_cursor["n"] % len(child_pool)] + "}"
                child_cursor["n"] += 1
            base = words(1 + rng.below(3))
            for lang in languages:
                texts[lang].append(f"{base} {lang}{slot}" if slot else f"{base} {lang}")
        return {"depth": depth, "options": option_ids, "texts": texts}

    doc_lists: dict[str, dict] = {}
    depth2_ids = [f"d2_{i}" for i in range(depth2_count)]
    for list_id in depth2_ids:
        doc_lists[list_id] = list_entry(list_id, 2, [])
    depth1_ids = [f"d1_{i}" for i in range(depth1_count)]
    for list_id in depth1_ids:
        doc_lists[list_id] = list_entry(list_id, 1, depth2_ids)
    depth0_ids = [f"d0_{i}" for i in range(depth0_count)]
    for list_id in depth0_ids:
        doc_lists[list_id] = list_entry(list_id, 0, depth1_ids)

    # Final-segment lists always carry sentence punctuation and no slots.
    closers = [f"d0_{i}" for i in range(depth0_count - 10, depth0_count)]
    for list_id in closers:
        entry = doc_lists[list_id]
        for lang in languages:
            entry["texts"][lang] = [
                t.split(" {")[0] + "." for t in entry["texts"][lang]
            ]

    total_segments = round(phrases * mean_segments)
    doc_phrases: dict[str, dict] = {}
    cursor = 0
    pool = [l for l in depth0_ids if l not in closers]
    pool_cursor = 0
    for p in range(phrases):
        remaining_phrases = phrases - p
        remaining_segments = total_segments - cursor
        count = max(2, min(10, round(remaining_segments / remaining_phrases)))
        cursor += count
        segments = []
        for s in range(count - 1):
            # cycle so every segment-level list is used by some phrase
            list_id = pool[pool_cursor % len(pool)]
            pool_cursor += 1
            segments.append({"no": s + 1, "list": list_id})
        segments.append({"no": count, "list": closers[rng.below(len(closers))]})
        doc_phrases[f"sp{p + 1}"] = {
            "number": p + 1,
            "title": f"Synthetic phrase {p + 1}",
            "segments": segments,
        }

    return {
        "schema_version": 1,
        "languages": [
            {"code": lang, "source": True} if i == 0 else {"code": lang}
            for i, lang in enumerate(languages)
        ],
        "lists": doc_lists,
        "phrases": doc_phrases,
    }


def build_synthetic_catalogue(**kwargs) -> Catalogue:
    return parse_catalogue(json.dumps(build_synthetic_document(**kwargs)))
