"""Catalogue-based multilingual sentence engine for warning bulletins.

Authors compose sentences by picking predefined options in the source
language; the engine instantly produces the parallel sentences in every
catalogue language from translations that were fixed and reviewed ahead of
time, so published output needs no proofreading.
"""

from .errors import (
    EngineError,
    EnumerationError,
    ParseError,
    PublishError,
    RenderError,
    StoreError,
)
from .model import (
    Catalogue,
    JokerSentence,
    Selection,
    SentenceText,
    ValidationReport,
)
from .parsing import (
    catalogue_to_document,
    content_hash,
    load_catalogue,
    parse_catalogue,
    serialize_catalogue,
)
from .publish import publish_bulletin, verify_manifest
from .qa import (
    GenerationSpec,
    ReviewSheet,
    check_surface_invariants,
    enumerate_all,
    enumerate_count,
    generate_random,
    option_walk,
)
from .render import (
    render_description,
    render_sentence,
    resolve_slots,
    validate_selection,
)
from .search import PhraseIndex, SearchHit, build_index, search
from .store import Bulletin, BulletinStore, DangerDescription, copy_description
from .validation import lint_agreement, validate_catalogue

__version__ = "0.1.0"

__all__ = [
    "Bulletin",
    "BulletinStore",
    "Catalogue",
    "DangerDescription",
    "EngineError",
    "EnumerationError",
    "GenerationSpec",
    "JokerSentence",
    "ParseError",
    "PhraseIndex",
    "PublishError",
    "RenderError",
    "ReviewSheet",
    "SearchHit",
    "Selection",
    "SentenceText",
    "StoreError",
    "ValidationReport",
    "build_index",
    "catalogue_to_document",
    "check_surface_invariants",
    "content_hash",
    "copy_description",
    "enumerate_all",
    "enumerate_count",
    "generate_random",
    "lint_agreement",
    "load_catalogue",
    "option_walk",
    "parse_catalogue",
    "publish_bulletin",
    "render_description",
    "render_sentence",
    "resolve_slots",
    "search",
    "serialize_catalogue",
    "validate_catalogue",
    "validate_selection",
    "verify_manifest",
]
