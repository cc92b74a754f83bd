"""Exception hierarchy shared across the engine.

Every error carries a symbolic ``code`` so the CLI and the HTTP service can
map failures to exit codes / problem-detail documents without string matching.
"""

from __future__ import annotations


class EngineError(Exception):
    """Base class for all engine failures."""

    code = "ENGINE_ERROR"

    def __init__(self, message: str, *, code: str | None = None, path: str | None = None):
        super().__init__(message)
        if code is not None:
            self.code = code
        self.path = path

    def __str__(self) -> str:
        base = super().__str__()
        if self.path:
            return f"{base} (at {self.path})"
        return base


class ParseError(EngineError):
    """Catalogue document is syntactically malformed."""

    code = "PARSE_ERROR"

    def __init__(self, message: str, *, path: str | None = None, line: int | None = None):
        super().__init__(message, path=path)
        self.line = line

    def __str__(self) -> str:
        base = super().__str__()
        if self.line is not None:
            return f"line {self.line}: {base}"
        return base


class RenderError(EngineError):
    """Selection cannot be rendered (incomplete, unknown language, ...)."""

    code = "RENDER_ERROR"


class EnumerationError(EngineError):
    """Enumeration refused (unknown phrase or limit exceeded)."""

    code = "ENUMERATION_ERROR"


class StoreError(EngineError):
    """Bulletin store failure (not found, immutable edition, ...)."""

    code = "STORE_ERROR"


class PublishError(EngineError):
    """Publish pipeline failure; guarantees no partial artifacts remain."""

    code = "PUBLISH_ERROR"
