"""Error hierarchy shared by the engine, the service and the CLI.

Every error carries a stable machine-readable ``code`` (used verbatim in API
error bodies) and optionally the name of the offending field.
"""

from __future__ import annotations


class MobishiftError(Exception):
    """Base class for all domain errors raised by this package."""

    code = "bad_request"

    def __init__(self, message: str, *, field: str | None = None):
        super().__init__(message)
        self.field = field

    @property
    def message(self) -> str:
        return str(self)


class DomainError(MobishiftError):
    """Input values outside their documented domain."""

    code = "bad_request"


class ConfigurationError(MobishiftError):
    """Inconsistent or incomplete configuration data."""

    code = "bad_request"


class MissingFactorError(MobishiftError):
    """A mode with travel recorded has no emission factor."""

    code = "missing_factor"


class MissingGridError(MobishiftError):
    """An electricity-consuming inventory was used without a grid factor."""

    code = "missing_grid"


class UnknownGridError(MobishiftError):
    """A grid label that matches no bundled profile or direct factor."""

    code = "unknown_grid"


class InconsistentAnchorError(MobishiftError):
    """Survey anchor quantities that contradict each other."""

    code = "inconsistent_anchor"


class ScenarioNotApplicableError(MobishiftError):
    """A lifetime scenario requested for a case that does not support it."""

    code = "scenario_not_applicable"


class UnknownCaseError(MobishiftError):
    """A case-study identifier that matches nothing bundled."""

    code = "unknown_case"
