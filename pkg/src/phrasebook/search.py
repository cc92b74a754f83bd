"""Source-language phrase search.

Bag-of-words TF-IDF over every option text reachable from a phrase, with
coverage-dominant ranking: matching more distinct query terms always beats a
higher weight sum. The hit score packs both into one number — the integer
part is the count of distinct matched query terms, the fractional part is
the squashed TF-IDF sum ``s/(1+s)`` — so sorting by descending score is the
ranking. Ties break by ascending phrase number.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from typing import Mapping

from .model import Catalogue
from .parsing import content_hash

_TOKEN_RE = re.compile(r"\w+", re.UNICODE)


def tokenize(text: str) -> list[str]:
    """Lowercased word tokens; punctuation acts as a separator."""
    return [t.lower() for t in _TOKEN_RE.findall(text)]


@dataclass(frozen=True)
class SearchHit:
    phrase_id: str
    number: int
    score: float
    matched_terms: tuple[str, ...]


@dataclass(frozen=True)
class PhraseIndex:
    catalogue_hash: str
    source_language: str
    term_frequencies: Mapping[str, Mapping[str, int]]  # phrase -> term -> count
    document_frequencies: Mapping[str, int]
    phrase_numbers: Mapping[str, int]

    @property
    def phrase_count(self) -> int:
        return len(self.term_frequencies)


def build_index(cat: Catalogue) -> PhraseIndex:
    """Index every phrase under all source-language tokens it can produce."""
    source = cat.source_language
    term_frequencies: dict[str, dict[str, int]] = {}
    numbers: dict[str, int] = {}

    for phrase_id in sorted(cat.phrases):
        phrase = cat.phrases[phrase_id]
        numbers[phrase_id] = phrase.number
        counts: dict[str, int] = {}

        seen: set[str] = set()
        stack = [list_id for _, list_id in phrase.segments]
        while stack:
            list_id = stack.pop()
            if list_id in seen or list_id not in cat.lists:
                continue
            seen.add(list_id)
            for option in cat.lists[list_id].options:
                text = option.texts.get(source)
                if text is None:
                    continue
                for run in text.runs:
                    for frag in run.fragments:
                        if isinstance(frag, str):
                            for token in tokenize(frag):
                                counts[token] = counts.get(token, 0) + 1
                        else:
                            stack.append(frag.list_id)
        term_frequencies[phrase_id] = counts

    document_frequencies: dict[str, int] = {}
    for counts in term_frequencies.values():
        for term in counts:
            document_frequencies[term] = document_frequencies.get(term, 0) + 1

    return PhraseIndex(
        catalogue_hash=content_hash(cat),
        source_language=source,
        term_frequencies=term_frequencies,
        document_frequencies=document_frequencies,
        phrase_numbers=numbers,
    )


def search(index: PhraseIndex, query: str, limit: int = 10) -> list[SearchHit]:
    """Rank phrases for a source-language query (empty query: no hits)."""
    terms: list[str] = []
    for term in tokenize(query):
        if term not in terms:
            terms.append(term)
    if not terms or not index.term_frequencies:
        return []

    total = index.phrase_count
    hits = []
    for phrase_id, counts in index.term_frequencies.items():
        matched = [t for t in terms if t in counts]
        if not matched:
            continue
        weight = 0.0
        for term in matched:
            tf = 1.0 + math.log(counts[term])
            idf = math.log(1.0 + total / index.document_frequencies[term])
            weight += tf * idf
        score = len(matched) + weight / (1.0 + weight)
        hits.append(
            SearchHit(
                phrase_id=phrase_id,
                number=index.phrase_numbers[phrase_id],
                score=score,
                matched_terms=tuple(matched),
            )
        )
    hits.sort(key=lambda h: (-h.score, h.number, h.phrase_id))
    return hits[:limit]
