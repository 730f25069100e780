"""Shared exception types."""


class VqeMaxcutError(Exception):
    """Base class for errors raised by this package."""


class ParseError(VqeMaxcutError, ValueError):
    """A text artifact (graph file, runs CSV, config) is malformed.

    The message always names the offending line or row.
    """


class GenerationError(VqeMaxcutError, RuntimeError):
    """Random graph generation could not satisfy a constraint."""


class UnboundParameterError(VqeMaxcutError, ValueError):
    """A parameterized gate was applied without a resolved angle."""


class NonFiniteObjectiveError(VqeMaxcutError, RuntimeError):
    """The objective returned NaN or infinity during optimization.

    Carries the evaluation trace up to and including the offending point,
    so the failure can be reproduced.
    """

    def __init__(self, message, trace):
        super().__init__(message)
        self.trace = trace


class OracleViolationError(VqeMaxcutError, RuntimeError):
    """A computed cut exceeded the brute-force optimum: a bug, not a result."""


class ReportError(VqeMaxcutError, RuntimeError):
    """Report rendering failed (missing traces, empty groups, bad filters)."""
