"""Exceptions shared across the package."""

from __future__ import annotations


class CareliftError(Exception):
    """Base class for package errors."""


class NotFoundError(CareliftError):
    """A referenced state, id, or resource does not exist."""


class ValidationError(CareliftError):
    """Invalid input; ``details`` lists field-level messages."""

    def __init__(self, message: str, details: list[dict] | None = None):
        super().__init__(message)
        self.details = details or []


class DataFormatError(CareliftError):
    """A reference-data file is malformed; message carries file:line."""
