"""Shared records and exceptions."""
from __future__ import annotations

from typing import NamedTuple


class CabwtError(Exception):
    """Base class for all library errors."""


class InvalidSymbolError(CabwtError, ValueError):
    pass


class NotPrimitiveError(CabwtError, ValueError):
    pass


class MissingTerminatorError(CabwtError, ValueError):
    pass


class InvalidTransformError(CabwtError, ValueError):
    """Raised when (L, I) cannot be the output of the transform."""


class NotApplicableError(CabwtError, TypeError):
    """The scheme is outside the class an engine handles."""


class OracleTooLargeError(CabwtError, RuntimeError):
    pass


class CapExceededError(CabwtError, RuntimeError):
    pass


class SchemeFormatError(CabwtError, ValueError):
    pass


class Range(NamedTuple):
    """Rows ``b .. b+length-1`` (1-based) of the sorted rotation matrix.

    The empty range is always ``Range(0, 0)``.
    """

    b: int
    length: int

    @property
    def last(self) -> int:
        return self.b + self.length - 1

    def __contains__(self, row) -> bool:  # type: ignore[override]
        return self.length > 0 and self.b <= row < self.b + self.length


EMPTY = Range(0, 0)


def make_range(b: int, length: int) -> Range:
    return Range(b, length) if length > 0 else EMPTY


class TransformOutput(NamedTuple):
    """Last column ``L`` (raw symbols) and 1-based primary row ``I``."""

    L: bytes
    I: int  # noqa: E741


def as_bytes(data) -> bytes:
    if isinstance(data, str):
        return data.encode("latin-1")
    return bytes(data)


def check_primitive(text: bytes) -> bytes:
    """Return ``text`` or raise: a valid transform always decodes to a primitive string."""
    if (text + text).find(text, 1) != len(text):
        raise InvalidTransformError("decoded text is a power of a shorter string")
    return text
