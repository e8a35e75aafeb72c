"""Linear-time engine for local schemes (order ``k``).

For a local scheme the rows prefixed by ``c z`` (``|z| = k``) appear in the
same relative order as the rows prefixed by ``z`` that end with ``c``.  With
the ranges of every string of length ``<= k+1`` precomputed, one backward
search step costs two rank queries and one circular right shift costs one.
"""
from __future__ import annotations

import bisect
from typing import NamedTuple

import numpy as np

from . import kernels
from .base import (EMPTY, CapExceededError, InvalidTransformError, NotApplicableError, Range, as_bytes,
                   check_primitive)
from .orderings import ConstantScheme, LocalScheme, OrderingScheme, PositionModKScheme
from .rank import IndexedSequence, run_ends

TABLE_CAP = 2 ** 24


def local_view(scheme: OrderingScheme) -> LocalScheme:
    """The scheme as a :class:`LocalScheme`, or ``NotApplicableError``."""
    if isinstance(scheme, LocalScheme):
        return scheme
    if isinstance(scheme, ConstantScheme):
        return LocalScheme(scheme.alphabet, 1, {}, scheme.perm)
    if isinstance(scheme, PositionModKScheme) and scheme.k == 1:
        return LocalScheme(scheme.alphabet, 1, {}, scheme.perms[0])
    raise NotApplicableError(f"{scheme.kind} scheme is not local")


class ToeholdSamples(NamedTuple):
    marks: dict       # run-end row of L -> text position of that L symbol
    last_row: list    # context id (length k) -> start of its last row, 0 if absent


class LocalIndex:
    """Rank-indexed L plus the range table for every string of length 1..k+1.

    ``b[j][id]`` and ``l[j][id]`` hold the range of the length-``j`` string
    whose base-sigma value is ``id`` (first symbol most significant).
    """

    def __init__(self, L, I, scheme: OrderingScheme, cap: int = TABLE_CAP):  # noqa: E741
        L = as_bytes(L)
        if not L:
            raise InvalidTransformError("empty transform")
        if not 1 <= I <= len(L):
            raise InvalidTransformError(f"primary row {I} outside 1..{len(L)}")
        self.scheme = local_view(scheme)
        self.alphabet = scheme.alphabet
        self.k = k = self.scheme.k
        self.sigma = sigma = self.alphabet.size
        if sum(sigma ** j for j in range(1, k + 2)) > cap:
            raise CapExceededError(f"range table for sigma={sigma}, k={k} exceeds {cap} entries")
        self.n = len(L)
        self.I = I
        self.seq = IndexedSequence(self.alphabet.encode(L), sigma)
        self._build_table()
        self.samples = None

    def _context(self, j: int, ident: int) -> bytes:
        out = bytearray(j)
        for t in range(j - 1, -1, -1):
            ident, out[t] = divmod(ident, self.sigma)
        return bytes(out)

    def _build_table(self):
        sigma, seq, n = self.sigma, self.seq, self.n
        self.b = [[1], None]
        self.l = [[n], None]
        pi = self.scheme.resolve(b"")
        b1, l1 = [0] * sigma, [0] * sigma
        acc = 1
        for c in pi.order:
            if seq.counts[c]:
                b1[c], l1[c] = acc, seq.counts[c]
                acc += seq.counts[c]
        self.b[1], self.l[1] = b1, l1
        for j in range(1, self.k + 1):
            pb, pl = self.b[j], self.l[j]
            size = sigma ** j
            nb, nl = [0] * (size * sigma), [0] * (size * sigma)
            low = sigma ** (j - 1)
            for ident in range(size):
                if not pl[ident]:
                    continue
                head = ident // low
                rest = (ident % low) * sigma
                counts = [0] * sigma
                for c in range(sigma):
                    s = rest + c
                    if pl[s]:
                        counts[c] = seq.occ(head, pb[s], pb[s] + pl[s] - 1)
                if sum(counts) != pl[ident]:
                    raise InvalidTransformError("inconsistent symbol counts")
                acc = pb[ident]
                for c in self.scheme.resolve(self._context(j, ident)).order:
                    if counts[c]:
                        nb[ident * sigma + c], nl[ident * sigma + c] = acc, counts[c]
                        acc += counts[c]
            self.b.append(nb)
            self.l.append(nl)
        k = self.k
        bk, lk = self.b[k], self.l[k]
        self.before = [[seq.rank(c, bk[z] - 1) if lk[z] else 0 for c in range(sigma)]
                       for z in range(sigma ** k)]
        order = sorted((bk[z], z) for z in range(sigma ** k) if lk[z])
        self._ctx_starts = [s for s, _ in order]
        self._ctx_ids = [z for _, z in order]
        ends = np.cumsum([lk[z] for z in self._ctx_ids]).tolist()
        if ends[-1] != n or self._ctx_starts != [1] + [e + 1 for e in ends[:-1]]:
            raise InvalidTransformError("context ranges do not tile the rows")

    def ident(self, codes: bytes) -> int:
        v = 0
        for c in codes:
            v = v * self.sigma + c
        return v

    def table_range(self, codes: bytes) -> Range:
        """Range of a code string of length 1..k+1."""
        j = len(codes)
        if not 1 <= j <= self.k + 1:
            raise ValueError(f"table holds lengths 1..{self.k + 1}")
        i = self.ident(codes)
        size = self.l[j][i]
        return Range(self.b[j][i], size) if size else EMPTY

    def context_of_row(self, i: int) -> int:
        """Id of the length-k context prefixing row ``i``."""
        return self._ctx_ids[bisect.bisect_right(self._ctx_starts, i) - 1]

    def nbytes(self) -> int:
        return self.seq.nbytes() + 16 * sum(len(t) for t in self.b[1:])


def build_local(L, I, scheme: OrderingScheme, k: int | None = None, samples: bool = False) -> LocalIndex:  # noqa: E741
    idx = LocalIndex(L, I, scheme)
    if k is not None and k != idx.k:
        raise ValueError(f"scheme has order {idx.k}, not {k}")
    if samples:
        build_samples(idx)
    return idx


def _lf(idx: LocalIndex) -> np.ndarray:
    """0-based right-shift target of every row."""
    sigma, k, n = idx.sigma, idx.k, idx.n
    ids = np.asarray(idx._ctx_ids, dtype=np.int64)
    lengths = np.asarray([idx.l[k][z] for z in idx._ctx_ids], dtype=np.int64)
    ctx_of_row = np.repeat(ids, lengths)
    base_tab = np.asarray(idx.b[k + 1], dtype=np.int64).reshape(sigma, sigma ** k) - 1
    before_tab = np.asarray(idx.before, dtype=np.int64).reshape(sigma ** k, sigma)
    lf = kernels.local_lf(idx.seq.codes, ctx_of_row, base_tab, before_tab)
    if n and (lf.min() < 0 or lf.max() >= n or np.bincount(lf, minlength=n).max() != 1):
        raise InvalidTransformError("right shift is not a permutation of the rows")
    return lf


def backward_extend(idx: LocalIndex, r: Range, c: int, z: bytes) -> Range:
    """Range of ``c x`` from the range ``r`` of ``x``; ``z`` holds the first k codes of ``x``."""
    if not r.length:
        return EMPTY
    seq = idx.seq
    lo = seq.rank(c, r.b - 1)
    h = seq.rank(c, r.last) - lo
    if not h:
        return EMPTY
    zid = idx.ident(z)
    head = idx.b[idx.k + 1][c * idx.sigma ** idx.k + zid]
    return Range(head + lo - idx.before[zid][c], h)


def count_local(idx: LocalIndex, x) -> Range:
    """Range of ``x`` with at most ``2 (p - k - 1)`` rank queries."""
    codes = idx.alphabet.encode(as_bytes(x))
    p, k = len(codes), idx.k
    if p == 0:
        return Range(1, idx.n)
    if p <= k + 1:
        return idx.table_range(codes)
    r = idx.table_range(codes[p - k - 1:])
    for i in range(p - k - 2, -1, -1):
        if not r.length:
            return EMPTY
        r = backward_extend(idx, r, codes[i], codes[i + 1:i + 1 + k])
    return r


def step_right(idx: LocalIndex, i: int) -> int:
    """Row holding row ``i`` rotated right by one position."""
    if not 1 <= i <= idx.n:
        raise IndexError(f"row {i} outside 1..{idx.n}")
    seq, k = idx.seq, idx.k
    c = seq.access(i)
    z = idx.context_of_row(i)
    return idx.b[k + 1][c * idx.sigma ** k + z] + seq.rank(c, i - 1) - idx.before[z][c]


def invert_local(L, I, scheme: OrderingScheme, k: int | None = None) -> bytes:  # noqa: E741
    """Recover the text by ``n - 1`` right shifts from row ``I``."""
    idx = build_local(L, I, scheme, k)
    lf = _lf(idx)
    sigma = idx.sigma
    order = np.argsort([idx.b[1][c] if idx.l[1][c] else 0 for c in range(sigma)], kind="stable")
    first = np.repeat(order.astype(np.uint8), [idx.l[1][c] for c in order])
    try:
        codes = kernels.lf_walk(lf, first.tobytes(), I - 1)
    except ValueError as exc:
        raise InvalidTransformError(str(exc)) from None
    return idx.alphabet.decode(check_primitive(codes.tobytes()))


def build_samples(idx: LocalIndex) -> ToeholdSamples:
    """Marked run ends of L and last-row starts of every length-k context."""
    lf = _lf(idx)
    try:
        pos = kernels.lf_positions(lf, idx.I - 1)
    except ValueError as exc:
        raise InvalidTransformError(str(exc)) from None
    n, k = idx.n, idx.k
    marks = {}
    for row in run_ends(idx.seq.codes).tolist():
        marks[row] = int(pos[row - 1]) - 1 or n
    last_row = [0] * (idx.sigma ** k)
    for z in idx._ctx_ids:
        last_row[z] = int(pos[idx.b[k][z] + idx.l[k][z] - 2])
    idx.samples = ToeholdSamples(marks, last_row)
    return idx.samples


def count_and_locate(idx: LocalIndex, x) -> tuple:
    """``(range, start of the range's last row)``; the position is ``None``
    when ``x`` is absent or shorter than ``k``."""
    if idx.samples is None:
        build_samples(idx)
    codes = idx.alphabet.encode(as_bytes(x))
    p, k, n = len(codes), idx.k, idx.n
    if p < k:
        return count_local(idx, x), None
    seq, marks = idx.seq, idx.samples.marks
    zid = idx.ident(codes[p - k:])
    r = idx.table_range(codes[p - k:])
    if not r.length:
        return EMPTY, None
    pos = idx.samples.last_row[zid]
    for i in range(p - k - 1, -1, -1):
        c = codes[i]
        end = r.last
        lo = seq.rank(c, r.b - 1)
        hi = seq.rank(c, end)
        if hi == lo:
            return EMPTY, None
        zid = idx.ident(codes[i + 1:i + 1 + k])
        r = Range(idx.b[k + 1][c * idx.sigma ** k + zid] + lo - idx.before[zid][c], hi - lo)
        if seq.access(end) == c:
            pos = pos - 1 or n
        else:
            pos = marks[seq.select(c, hi)]
    return r, pos


def row_position(idx: LocalIndex, i: int) -> int:
    """Start of the rotation in row ``i``, by right shifts to a marked row."""
    if idx.samples is None:
        build_samples(idx)
    marks, n = idx.samples.marks, idx.n
    steps = 0
    while i not in marks:
        i = step_right(idx, i)
        steps += 1
    return (marks[i] + steps) % n + 1


def locate(idx: LocalIndex, x, limit: int | None = None) -> tuple:
    """``(range, positions)``: the toehold first, then further occurrences
    top-down, at most ``limit`` positions in total."""
    r, pos = count_and_locate(idx, x)
    if pos is None:
        return r, []
    out = [pos]
    for i in range(r.b, r.last):
        if limit is not None and len(out) >= limit:
            break
        out.append(row_position(idx, i))
    return r, out
