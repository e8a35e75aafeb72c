"""Forward transform through a suffix array emulating the suffix tree.

With a unique terminator the order of the cyclic rotations equals the order of
the suffixes under every scheme, so the transform is a depth-first leaf
listing in which the children of each internal node are sorted by the
permutation of the node's path label.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, NamedTuple

import numpy as np

from . import kernels
from .base import MissingTerminatorError, TransformOutput, as_bytes
from .orderings import Alphabet, OrderingScheme


def suffix_array(codes: np.ndarray) -> np.ndarray:
    """Prefix doubling; assumes no suffix is a prefix of another (unique terminator)."""
    n = len(codes)
    rank = codes.astype(np.int64)
    if n <= 1:
        return np.zeros(n, dtype=np.int64)
    k = 1
    while True:
        second = np.full(n, -1, dtype=np.int64)
        second[:n - k] = rank[k:]
        sa = np.lexsort((second, rank))
        r, s = rank[sa], second[sa]
        bump = np.empty(n, dtype=np.int64)
        bump[0] = 0
        bump[1:] = (r[1:] != r[:-1]) | (s[1:] != s[:-1])
        new = np.empty(n, dtype=np.int64)
        new[sa] = np.cumsum(bump)
        rank = new
        if rank.max() == n - 1:
            return sa.astype(np.int64)
        k *= 2


@dataclass(frozen=True, eq=False)
class SuffixTreeView:
    """Suffix tree of a terminated text, represented by SA + LCP intervals.

    Leaves are ids ``0..n-1`` (standard suffix-array rows).  Internal node
    ``j`` has id ``n + j``, covers rows ``lb[j]..rb[j]`` and has path depth
    ``depth[j]``; ids grow from children to parents and the root is last.
    """

    alphabet: Alphabet
    codes: np.ndarray
    sa: np.ndarray
    lcp: np.ndarray
    lb: np.ndarray
    rb: np.ndarray
    depth: np.ndarray
    child_ptr: np.ndarray
    child_ids: np.ndarray

    @property
    def n(self) -> int:
        return len(self.sa)

    @property
    def n_internal(self) -> int:
        return len(self.depth)

    @property
    def root(self) -> int:
        return self.n + self.n_internal - 1

    def leaf_symbol(self, leaf: int) -> int:
        """Code of the symbol preceding the leaf's suffix, circularly."""
        return int(self.codes[(self.sa[leaf] - 1) % self.n])

    def children(self, node: int) -> np.ndarray:
        j = node - self.n
        return self.child_ids[self.child_ptr[j]:self.child_ptr[j + 1]]

    def first_row(self, node: int) -> int:
        return node if node < self.n else int(self.lb[node - self.n])

    def context(self, node: int) -> bytes:
        j = node - self.n
        start = int(self.sa[self.lb[j]])
        return self.codes[start:start + int(self.depth[j])].tobytes()

    def child_symbols(self) -> np.ndarray:
        """First edge symbol of every entry of ``child_ids``."""
        parents = np.repeat(np.arange(self.n_internal), np.diff(self.child_ptr))
        rows = np.where(self.child_ids < self.n, self.child_ids,
                        self.lb[np.maximum(self.child_ids - self.n, 0)])
        return self.codes[self.sa[rows] + self.depth[parents]]


class InternalNode(NamedTuple):
    node: int
    context: bytes
    children: list  # (first edge symbol, child id) in standard order


def build(text, alphabet: Alphabet | None = None) -> SuffixTreeView:
    text = as_bytes(text)
    if not text:
        raise MissingTerminatorError("empty text")
    if text.count(text[-1:]) != 1:
        raise MissingTerminatorError("last symbol is not a unique terminator")
    if alphabet is None:
        alphabet = Alphabet.from_text(text)
    codes = np.frombuffer(alphabet.encode(text), dtype=np.uint8).copy()
    sa = suffix_array(codes)
    lcp = kernels.lcp_kasai(codes, sa)
    lb, rb, depth, ptr, kids = kernels.lcp_tree(lcp)
    return SuffixTreeView(alphabet, codes, sa, lcp, lb, rb, depth, ptr, kids)


def internal_nodes(view: SuffixTreeView) -> Iterator[InternalNode]:
    """Internal nodes, children before parents; the root comes last."""
    syms = view.child_symbols().tolist()
    ptr = view.child_ptr.tolist()
    kids = view.child_ids.tolist()
    for j in range(view.n_internal):
        a, b = ptr[j], ptr[j + 1]
        yield InternalNode(view.n + j, view.context(view.n + j), list(zip(syms[a:b], kids[a:b])))


def row_order(view: SuffixTreeView, scheme: OrderingScheme) -> np.ndarray:
    """Standard suffix-array rows listed in the scheme's order."""
    if scheme.alphabet != view.alphabet:
        raise ValueError("scheme alphabet differs from the index alphabet")
    n, m = view.n, view.n_internal
    starts = view.sa[view.lb]
    perm_ids, perms = scheme.node_permutations(view.codes, starts, view.depth)
    sigma = view.alphabet.size
    rank_tab = np.array([p.inverse for p in perms], dtype=np.int64).reshape(len(perms), sigma)
    counts = np.diff(view.child_ptr)
    parents = np.repeat(np.arange(m), counts)
    child_rank = rank_tab[perm_ids[parents], view.child_symbols()]
    reorder = np.lexsort((child_rank, parents))
    return kernels.leaf_order(n, view.child_ptr, view.child_ids[reorder])


def transform_view(view: SuffixTreeView, scheme: OrderingScheme) -> TransformOutput:
    rows = row_order(view, scheme)
    starts = view.sa[rows]
    last_codes = view.codes[(starts - 1) % view.n]
    primary = int(np.flatnonzero(starts == 0)[0]) + 1
    return TransformOutput(view.alphabet.decode(last_codes.tobytes()), primary)


def transform(text, scheme: OrderingScheme) -> TransformOutput:
    """Context-adaptive BWT of a terminator-ended text."""
    return transform_view(build(text, scheme.alphabet), scheme)
