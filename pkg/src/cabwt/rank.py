"""Access / rank / select over a code sequence, plus run statistics.

Counts are sampled every ``BLOCK`` positions per symbol; a query adds the
sample to a ``bytes.count`` over at most one block.
"""
from __future__ import annotations

import bisect

import numpy as np

from .base import InvalidSymbolError, as_bytes
from .orderings import Alphabet

BLOCK = 256


class IndexedSequence:
    """Immutable code sequence answering 1-based rank/select/access.

    ``rank_calls`` counts rank queries made on this instance; the engines'
    complexity tests read it.
    """

    def __init__(self, codes: bytes, sigma: int, block: int = BLOCK):
        codes = bytes(codes)
        if codes and max(codes) >= sigma:
            raise InvalidSymbolError("code outside alphabet")
        self.codes = codes
        self.n = len(codes)
        self.sigma = sigma
        self.block = block
        arr = np.frombuffer(codes, dtype=np.uint8)
        self.counts = tuple(np.bincount(arr, minlength=sigma).tolist()) if codes else (0,) * sigma
        nblocks = self.n // block + 1
        samples = []
        for c in range(sigma):
            hits = np.zeros(nblocks, dtype=np.int64)
            if self.n:
                per_block = np.bincount(np.flatnonzero(arr == c) // block, minlength=nblocks)[:nblocks]
                hits[1:] = np.cumsum(per_block)[:-1]
            samples.append(hits.tolist())
        self._samples = samples
        self._sym = [bytes([c]) for c in range(sigma)]
        self.rank_calls = 0

    def __len__(self):
        return self.n

    def rank(self, c: int, i: int) -> int:
        """Occurrences of code ``c`` in positions ``1..i``."""
        self.rank_calls += 1
        if not 0 <= i <= self.n:
            raise IndexError(f"rank position {i} outside 0..{self.n}")
        blk = i // self.block
        return self._samples[c][blk] + self.codes.count(self._sym[c], blk * self.block, i)

    def occ(self, c: int, i: int, j: int) -> int:
        """Occurrences of ``c`` in rows ``i..j`` (empty when ``j < i``)."""
        if j < i:
            return 0
        return self.rank(c, j) - self.rank(c, i - 1)

    def select(self, c: int, j: int) -> int:
        """1-based position of the ``j``-th occurrence of ``c``."""
        if not 1 <= j <= self.counts[c]:
            raise IndexError(f"select({c}, {j}) outside 1..{self.counts[c]}")
        samples = self._samples[c]
        blk = bisect.bisect_left(samples, j) - 1
        pos = blk * self.block
        need = j - samples[blk]
        sym = self._sym[c]
        while True:
            pos = self.codes.index(sym, pos) + 1
            need -= 1
            if need == 0:
                return pos

    def access(self, i: int) -> int:
        if not 1 <= i <= self.n:
            raise IndexError(f"access position {i} outside 1..{self.n}")
        return self.codes[i - 1]

    def nbytes(self) -> int:
        return self.n + 8 * sum(len(s) for s in self._samples)


def index(seq, alphabet: Alphabet) -> IndexedSequence:
    return IndexedSequence(alphabet.encode(as_bytes(seq)), alphabet.size)


def run_count(seq) -> int:
    """Number of maximal runs of equal symbols."""
    if isinstance(seq, str):
        seq = seq.encode("latin-1")
    arr = np.frombuffer(bytes(seq), dtype=np.uint8) if isinstance(seq, (bytes, bytearray)) else np.asarray(seq)
    if len(arr) == 0:
        return 0
    return int(np.count_nonzero(arr[1:] != arr[:-1])) + 1


def run_ends(seq) -> np.ndarray:
    """1-based positions holding the last symbol of a run."""
    arr = np.frombuffer(bytes(seq), dtype=np.uint8)
    if len(arr) == 0:
        return np.zeros(0, dtype=np.int64)
    ends = np.flatnonzero(arr[1:] != arr[:-1]) + 1
    return np.append(ends, len(arr)).astype(np.int64)


def histogram(seq) -> dict:
    arr = np.frombuffer(as_bytes(seq), dtype=np.uint8)
    counts = np.bincount(arr, minlength=256)
    return {int(b): int(counts[b]) for b in np.flatnonzero(counts)}
