"""Exception types shared across the simulator."""

from __future__ import annotations


class PqeapError(Exception):
    """Base class for all errors raised by this package."""


class UnknownAlgorithm(PqeapError):
    """An algorithm identifier does not resolve to a registered scheme."""


class NoMatchingKem(PqeapError):
    """No KEM is registered for the requested security level."""


class InvalidHybrid(PqeapError):
    """A hybrid combination does not pair exactly one classical scheme with one PQ scheme."""


class IncompatibleConfig(PqeapError):
    """The method / signature / KEM combination cannot form a handshake."""


class RoundTripLimitExceeded(PqeapError):
    """The handshake needs more EAP round trips than the configured cap."""


class DeliveryFailed(PqeapError):
    """A frame was not delivered within the wireless retry budget."""


class AuthAborted(PqeapError):
    """A single authentication run aborted; carries the partial report."""

    def __init__(self, message: str, report=None):
        super().__init__(message)
        self.report = report


class AllRunsAborted(PqeapError):
    """Every repetition of a batch aborted, so no statistics exist."""


class ParseError(PqeapError):
    """A scenario file is malformed; message carries key / line diagnostics."""


class EmptyResults(PqeapError):
    """Refusing to emit a report with no rows."""
