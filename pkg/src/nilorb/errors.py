"""Exception types shared across the package."""

from __future__ import annotations


class NilorbError(Exception):
    """Base class for package-specific errors."""


class InputError(NilorbError, ValueError):
    """Caller input is malformed or mismatched (dimensions, labels, ranges)."""


class CapabilityError(NilorbError):
    """The request is valid but outside the supported range of this build."""


class IntegrityError(NilorbError):
    """An internal consistency guarantee failed; indicates a bug or corrupt data."""


class StepInapplicableError(NilorbError):
    """Neither variant of the elementary induction step yields a valid partition."""


class AtlasLoadError(NilorbError):
    """Atlas data is malformed or contradicts the embedded reference tables."""

    def __init__(self, message: str, record: object = None):
        super().__init__(message)
        self.record = record


class OrbitNotFoundError(NilorbError):
    """No atlas record matches the requested (group, label)."""

    def __init__(self, message: str, suggestions: tuple[str, ...] = ()):
        super().__init__(message)
        self.suggestions = suggestions
