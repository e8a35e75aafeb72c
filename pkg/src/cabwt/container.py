"""Binary container holding a transform together with its scheme.

Layout (integers little-endian)::

    b"BWTV" | version u8 | flags u8 | blob length u32 | scheme text | I u64 | L
"""
from __future__ import annotations

import os
import struct
import tempfile
from typing import NamedTuple

from .base import CabwtError
from .orderings import OrderingScheme, scheme_from_text, scheme_to_text

MAGIC = b"BWTV"
VERSION = 1
FLAG_TERMINATOR = 0x01
_HEAD = struct.Struct("<4sBBI")
_I = struct.Struct("<Q")


class ContainerFormatError(CabwtError, ValueError):
    pass


class Container(NamedTuple):
    scheme: OrderingScheme
    I: int  # noqa: E741
    L: bytes
    terminated: bool


def pack(scheme: OrderingScheme, I: int, L: bytes, terminated: bool) -> bytes:  # noqa: E741
    blob = scheme_to_text(scheme).encode("utf-8")
    flags = FLAG_TERMINATOR if terminated else 0
    return _HEAD.pack(MAGIC, VERSION, flags, len(blob)) + blob + _I.pack(I) + bytes(L)


def unpack(data: bytes) -> Container:
    if len(data) < _HEAD.size:
        raise ContainerFormatError("truncated header")
    magic, version, flags, size = _HEAD.unpack_from(data)
    if magic != MAGIC:
        raise ContainerFormatError("bad magic")
    if version != VERSION:
        raise ContainerFormatError(f"unsupported version {version}")
    start = _HEAD.size
    if len(data) < start + size + _I.size:
        raise ContainerFormatError("truncated scheme or primary row")
    try:
        scheme = scheme_from_text(data[start:start + size].decode("utf-8"))
    except UnicodeDecodeError:
        raise ContainerFormatError("scheme blob is not UTF-8") from None
    (I,) = _I.unpack_from(data, start + size)  # noqa: E741
    L = data[start + size + _I.size:]
    if not L:
        raise ContainerFormatError("empty payload")
    return Container(scheme, I, L, bool(flags & FLAG_TERMINATOR))


def write_atomic(path: str, data: bytes) -> None:
    """Write through a temporary file in the same directory, then rename."""
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".tmp-")
    try:
        with os.fdopen(fd, "wb") as fh:
            fh.write(data)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise
