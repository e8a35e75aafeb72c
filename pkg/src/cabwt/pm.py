"""Engine for schemes whose every permutation is ``pi`` or its reversal.

Only plain ranges are needed: the range of ``x = y c`` sits inside the range
of ``y`` at an offset given by the rank of ``x_1`` inside the range of ``z``
(``y = x_1 z``).  Whether the offset is counted from the top or the bottom
depends on whether ``y`` and ``z`` carry the same sign.
"""
from __future__ import annotations

from typing import Callable

from .base import EMPTY, InvalidTransformError, NotApplicableError, Range, as_bytes, check_primitive
from .general import RangeX, child_ranges
from .orderings import OrderingScheme, Permutation, PlusMinusScheme
from .rank import IndexedSequence


def pm_view(scheme: OrderingScheme) -> tuple[Permutation, Callable]:
    """``(base, negative_span)`` for a scheme that only uses ``base`` and its reversal."""
    if isinstance(scheme, PlusMinusScheme):
        return scheme.base, scheme.negative_span
    base = scheme.resolve(b"")
    rev = base.reversed()
    for p in scheme.permutations():
        if p != base and p != rev:
            raise NotApplicableError(f"{scheme.kind} scheme uses a permutation other than pi_eps and its reversal")

    def negative_span(codes, start, end):
        return scheme.resolve_span(codes, start, end) != base

    return base, negative_span


class PmIndex:
    def __init__(self, L, I, scheme: OrderingScheme):  # noqa: E741
        L = as_bytes(L)
        if not L:
            raise InvalidTransformError("empty transform")
        if not 1 <= I <= len(L):
            raise InvalidTransformError(f"primary row {I} outside 1..{len(L)}")
        self.base, self.negative_span = pm_view(scheme)
        self.scheme = scheme
        self.alphabet = scheme.alphabet
        self.n = len(L)
        self.I = I
        self.seq = IndexedSequence(self.alphabet.encode(L), self.alphabet.size)
        self.full = Range(1, self.n)
        self.first = child_ranges(RangeX(1, self.seq.counts), scheme.resolve(b""))


def extend_pm(idx: PmIndex, r_y: Range, r_z: Range, r_zc: Range, head: int,
              neg_y: bool, neg_z: bool) -> Range:
    """``R(y c)`` where ``y = head z``, from ``R(y)``, ``R(z)`` and ``R(z c)``."""
    if not r_y.length or not r_zc.length:
        return EMPTY
    seq = idx.seq
    lo = seq.rank(head, r_zc.b - 1)
    hi = seq.rank(head, r_zc.last)
    h = hi - lo
    if not h:
        return EMPTY
    if neg_y == neg_z:
        offset = lo - seq.rank(head, r_z.b - 1)
    else:
        offset = seq.rank(head, r_z.last) - hi
    return Range(r_y.b + offset, h)


def count_pm(idx: PmIndex, x) -> Range:
    """Range of rows prefixed by ``x``, in O(p^2) rank queries."""
    codes = idx.alphabet.encode(as_bytes(x))
    p = len(codes)
    if p == 0:
        return idx.full
    neg, first = idx.negative_span, idx.first
    prev = [first[codes[0]]]
    if not prev[0].length:
        return EMPTY
    for j in range(1, p):
        cur = [EMPTY] * (j + 1)
        cur[j] = first[codes[j]]
        for i in range(j - 1, -1, -1):
            r_z = prev[i + 1] if i + 1 < j else idx.full
            cur[i] = extend_pm(idx, prev[i], r_z, cur[i + 1], codes[i],
                               neg(codes, i, j), neg(codes, i + 1, j))
        if not cur[0].length:
            return EMPTY
        prev = cur
    return prev[0]


def _symbol_after(idx: PmIndex, text: bytes, diag: list, row: int) -> int:
    """Symbol following ``text`` in ``row``, where ``diag[j]`` is ``R(text[j:])``."""
    seq, neg, n = idx.seq, idx.negative_span, idx.n
    m = len(text)
    for j in range(m):
        r_y = diag[j]
        r_z = diag[j + 1] if j + 1 < m else idx.full
        if row not in r_y:
            raise InvalidTransformError(f"row {row} outside {r_y}")
        t = row - r_y.b
        head = text[j]
        if neg(text, j, m) == neg(text, j + 1, m):
            target = seq.rank(head, r_z.b - 1) + t + 1
        else:
            target = seq.rank(head, r_z.last) - t
        try:
            row = seq.select(head, target)
        except IndexError:
            raise InvalidTransformError("inconsistent ranks") from None
        if row not in r_z or not 1 <= row <= n:
            raise InvalidTransformError("inconsistent ranks")
    for c, r in enumerate(idx.first):
        if row in r:
            return c
    raise InvalidTransformError(f"row {row} has no first symbol")


def invert_pm(L, I, scheme: OrderingScheme) -> bytes:  # noqa: E741
    """Recover the text in O(n^2) time and O(n) words of space."""
    idx = PmIndex(L, I, scheme)
    n, neg = idx.n, idx.negative_span
    text = b""
    diag: list = []
    for m in range(n):
        c = _symbol_after(idx, text, diag, I)
        text += bytes([c])
        new = [EMPTY] * (m + 1)
        new[m] = idx.first[c]
        for j in range(m - 1, -1, -1):
            r_z = diag[j + 1] if j + 1 < m else idx.full
            new[j] = extend_pm(idx, diag[j], r_z, new[j + 1], text[j],
                               neg(text, j, m), neg(text, j + 1, m))
        diag = new
        if not diag[0].length:
            raise InvalidTransformError(f"prefix of length {m + 1} does not occur")
    if diag[0] != Range(I, 1):
        raise InvalidTransformError("recovered text does not sit in the primary row")
    return idx.alphabet.decode(check_primitive(text))
