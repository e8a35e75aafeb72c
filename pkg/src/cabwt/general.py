"""Counting and inversion for any context-adaptive scheme.

A :class:`RangeX` refines the range of ``x`` into the number of rows
prefixed by ``x c`` for every symbol ``c``.  Counts are always kept in
standard alphabet order; permutations only decide how the children are laid
out inside the parent range.
"""
from __future__ import annotations

from typing import NamedTuple

from .base import EMPTY, InvalidTransformError, Range, as_bytes, check_primitive, make_range
from .orderings import OrderingScheme, Permutation
from .rank import IndexedSequence


class RangeX(NamedTuple):
    b: int
    counts: tuple

    @property
    def length(self) -> int:
        return sum(self.counts)

    @property
    def range(self) -> Range:
        return make_range(self.b, sum(self.counts))


def empty_rangex(sigma: int) -> RangeX:
    return RangeX(0, (0,) * sigma)


def child_ranges(rx: RangeX, pi: Permutation) -> list:
    """``R(x c)`` for every code ``c``, indexed by code."""
    out = [EMPTY] * len(rx.counts)
    acc = rx.b
    for c in pi.order:
        size = rx.counts[c]
        if size:
            out[c] = Range(acc, size)
            acc += size
    return out


def next_char(rx: RangeX, pi: Permutation, i: int) -> int:
    """Code of the symbol following ``x`` in row ``i`` of ``R(x)``."""
    acc = rx.b
    for c in pi.order:
        size = rx.counts[c]
        if acc <= i < acc + size:
            return c
        acc += size
    raise IndexError(f"row {i} outside range {rx.range}")


def _extend(seq: IndexedSequence, left: RangeX, pi_left: Permutation,
            right: RangeX, pi_right: Permutation, head: int, tail: int) -> RangeX:
    r = child_ranges(left, pi_left)[tail]
    sigma = len(left.counts)
    if not r.length:
        return empty_rangex(sigma)
    counts = [0] * sigma
    b = right.b
    prev = seq.rank(head, b - 1)
    for c in pi_right.order:
        size = right.counts[c]
        if size:
            b += size
            cur = seq.rank(head, b - 1)
            counts[c] = cur - prev
            prev = cur
    return RangeX(r.b, tuple(counts))


class GeneralIndex:
    """The transformed string with rank support, its primary row and scheme."""

    def __init__(self, L, I, scheme: OrderingScheme):  # noqa: E741
        L = as_bytes(L)
        if not L:
            raise InvalidTransformError("empty transform")
        if not 1 <= I <= len(L):
            raise InvalidTransformError(f"primary row {I} outside 1..{len(L)}")
        self.scheme = scheme
        self.alphabet = scheme.alphabet
        self.sigma = scheme.alphabet.size
        self.n = len(L)
        self.I = I
        self.seq = IndexedSequence(self.alphabet.encode(L), self.sigma)
        root = RangeX(1, self.seq.counts)
        self.first = child_ranges(root, scheme.resolve(b""))
        self.base = []
        for c in range(self.sigma):
            r = self.first[c]
            if not r.length:
                self.base.append(empty_rangex(self.sigma))
                continue
            counts = tuple(self.seq.occ(c, d.b, d.last) if d.length else 0 for d in self.first)
            self.base.append(RangeX(r.b, counts))

    def resolve_span(self, codes: bytes, start: int, end: int) -> Permutation:
        return self.scheme.resolve_span(codes, start, end)


def extend(idx: GeneralIndex, left: RangeX, right: RangeX, x) -> RangeX:
    """``R*(x)`` from ``R*(x[:-1])`` and ``R*(x[1:])``."""
    codes = idx.alphabet.encode(as_bytes(x))
    m = len(codes)
    if m < 2:
        raise ValueError("extend needs a pattern of length >= 2")
    return _extend(idx.seq, left, idx.resolve_span(codes, 0, m - 1),
                   right, idx.resolve_span(codes, 1, m), codes[0], codes[-1])


def count_rangex(idx: GeneralIndex, x, order: str = "diagonal") -> RangeX:
    """``R*(x)`` by the triangular scheme, top-down by diagonals or bottom-up by rows."""
    codes = idx.alphabet.encode(as_bytes(x))
    p = len(codes)
    if p == 0:
        return RangeX(1, idx.seq.counts)
    seq, span, base = idx.seq, idx.resolve_span, idx.base
    if order == "diagonal":
        diag = []
        for j in range(p):
            new = [None] * (j + 1)
            new[j] = base[codes[j]]
            for i in range(j - 1, -1, -1):
                new[i] = _extend(seq, diag[i], span(codes, i, j), new[i + 1],
                                 span(codes, i + 1, j + 1), codes[i], codes[j])
            if not new[0].counts or new[0].b == 0:
                return empty_rangex(idx.sigma)
            diag = new
        return diag[0]
    if order == "row":
        row = [base[codes[p - 1]]]
        for i in range(p - 2, -1, -1):
            new = [base[codes[i]]]
            for j in range(i + 1, p):
                new.append(_extend(seq, new[-1], span(codes, i, j), row[j - i - 1],
                                   span(codes, i + 1, j + 1), codes[i], codes[j]))
            row = new
        return row[-1]
    raise ValueError(f"unknown evaluation order {order!r}")


def count(idx: GeneralIndex, x, order: str = "diagonal") -> Range:
    """Rows prefixed by ``x``; ``length`` is the number of circular occurrences."""
    return count_rangex(idx, x, order).range


def invert(L, I, scheme: OrderingScheme) -> bytes:  # noqa: E741
    """Recover the text from ``(L, I)`` in O(sigma n^2) time."""
    idx = GeneralIndex(L, I, scheme)
    n, seq, base = idx.n, idx.seq, idx.base
    first = next((c for c in range(idx.sigma) if I in idx.first[c]), None)
    text = bytearray([first])
    diag = [base[first]]
    for m in range(1, n):
        snap = bytes(text)
        try:
            c = next_char(diag[0], idx.resolve_span(snap, 0, m), I)
        except IndexError:
            raise InvalidTransformError(f"no continuation after {m} symbols") from None
        text.append(c)
        snap += bytes([c])
        new = [None] * (m + 1)
        new[m] = base[c]
        for j in range(m - 1, -1, -1):
            new[j] = _extend(seq, diag[j], idx.resolve_span(snap, j, m), new[j + 1],
                             idx.resolve_span(snap, j + 1, m + 1), snap[j], c)
        diag = new
    if diag[0].range != Range(I, 1):
        raise InvalidTransformError("recovered text does not sit in the primary row")
    return idx.alphabet.decode(check_primitive(bytes(text)))
