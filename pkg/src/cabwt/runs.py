"""Minimum number of runs over all context-adaptive schemes.

Bottom-up over the suffix tree, each node keeps a table ``rho[i][j]``: the
fewest runs in any feasible arrangement of the node's L symbols that starts
with ``i`` and ends with ``j``.  A node's table is the entrywise minimum,
over all orders of its children, of the min-plus chain of child tables.
Per node the work is O(2^h h sigma^3) for h children (a DP over child
subsets), so the whole program is linear in n only for a constant alphabet.
"""
from __future__ import annotations

from typing import NamedTuple

import numpy as np

from .base import CapExceededError, as_bytes
from .oracle import assignment_scheme
from .rank import run_count
from .suffix_index import build, transform_view

SIGMA_CAP = 8


class MinRuns(NamedTuple):
    opt: int
    assignment: dict  # context codes -> order of the node's branching symbols
    L: bytes
    I: int  # noqa: E741
    scheme: object


def leaf_table(c: int, sigma: int, inf: int) -> np.ndarray:
    t = np.full((sigma, sigma), inf, dtype=np.int64)
    t[c, c] = 1
    return t


def _glue(table: np.ndarray, inf: int) -> np.ndarray:
    """``A[i][m] = min_j table[j][m] - [i == j]``: cost of appending a block after symbol ``i``."""
    col = table.min(axis=0)
    a = np.minimum(col[None, :], table - 1)
    return np.where(a >= inf - 1, inf, a)


def _minplus(m: np.ndarray, a: np.ndarray, inf: int) -> np.ndarray:
    out = (m[:, :, None] + a[None, :, :]).min(axis=1)
    return np.minimum(out, inf)


def combine_children(tables: list, inf: int) -> np.ndarray:
    """Runs table of the children concatenated in the given order."""
    m = tables[0]
    for t in tables[1:]:
        m = _minplus(m, _glue(t, inf), inf)
    return m


def node_table(tables: list, inf: int) -> np.ndarray:
    """Entrywise minimum of :func:`combine_children` over every child order.

    Min-plus products distribute over entrywise minima, so the minimum over
    orders of a child subset only depends on which child comes last; a DP over
    subsets replaces the h! enumeration.
    """
    h = len(tables)
    glued = [_glue(t, inf) for t in tables]
    best = [None] * (1 << h)
    for i in range(h):
        best[1 << i] = tables[i]
    for mask in range(1, 1 << h):
        if best[mask] is not None and mask & (mask - 1) == 0:
            continue
        acc = None
        for i in range(h):
            if mask >> i & 1:
                m = _minplus(best[mask ^ 1 << i], glued[i], inf)
                acc = m if acc is None else np.minimum(acc, m)
        best[mask] = acc
    return best[-1]


def _suffix_tables(glued: list, inf: int) -> list:
    """``suf[mask]``: minimum over orders of the glued chain of the children in ``mask``."""
    h = len(glued)
    sigma = glued[0].shape[0]
    ident = np.full((sigma, sigma), inf, dtype=np.int64)
    np.fill_diagonal(ident, 0)
    suf = [ident] + [None] * ((1 << h) - 1)
    for mask in range(1, 1 << h):
        acc = None
        for i in range(h):
            if mask >> i & 1:
                m = _minplus(glued[i], suf[mask ^ 1 << i], inf)
                acc = m if acc is None else np.minimum(acc, m)
        suf[mask] = acc
    return suf


def best_order(tables: list, a: int, b: int, inf: int) -> list:
    """Lexicographically smallest child order whose chain reaches the node optimum at ``(a, b)``."""
    h = len(tables)
    glued = [_glue(t, inf) for t in tables]
    suf = _suffix_tables(glued, inf)
    full = (1 << h) - 1
    target = min(_minplus(tables[i], suf[full ^ 1 << i], inf)[a, b] for i in range(h))
    order, prefix, left = [], None, full
    while left:
        for i in range(h):
            if left >> i & 1:
                head = tables[i] if prefix is None else _minplus(prefix, glued[i], inf)
                if _minplus(head, suf[left ^ 1 << i], inf)[a, b] == target:
                    break
        order.append(i)
        prefix, left = head, left ^ 1 << i
    return order


def _chain(tables: list, inf: int) -> list:
    ms = [tables[0]]
    for t in tables[1:]:
        ms.append(_minplus(ms[-1], _glue(t, inf), inf))
    return ms


def minimize(text, sigma_cap: int = SIGMA_CAP) -> MinRuns:
    """Optimal child orders for a terminated text, with the witness transform."""
    view = build(as_bytes(text))
    sigma, n = view.alphabet.size, view.n
    if sigma > sigma_cap:
        raise CapExceededError(f"alphabet of {sigma} symbols exceeds the cap of {sigma_cap}")
    inf = n + 1
    syms = view.child_symbols().tolist()
    ptr = view.child_ptr.tolist()
    kids = view.child_ids.tolist()
    last = view.codes[(view.sa - 1) % n].tolist()

    tables = {}

    def table(v):
        return tables[v] if v >= n else leaf_table(last[v], sigma, inf)

    for j in range(view.n_internal):
        children = kids[ptr[j]:ptr[j + 1]]
        tables[n + j] = node_table([table(v) for v in children], inf)

    root = view.root
    rt = table(root)
    opt = int(rt.min())
    a, b = (int(v) for v in np.argwhere(rt == opt)[0])

    assignment = {}
    todo = [(root, a, b)]
    while todo:
        v, a, b = todo.pop()
        if v < n:
            continue
        j = v - n
        lo, hi = ptr[j], ptr[j + 1]
        by_sym = dict(zip(syms[lo:hi], kids[lo:hi]))
        sym_order = sorted(by_sym)
        picked = best_order([table(by_sym[c]) for c in sym_order], a, b, inf)
        order = tuple(sym_order[i] for i in picked)
        chain = _chain([table(by_sym[c]) for c in order], inf)
        assignment[view.context(v)] = order
        # Walk the chain backwards, fixing each child's end symbols.
        end = b
        for k in range(len(order) - 1, 0, -1):
            child = table(by_sym[order[k]])
            want = chain[k][a, end]
            found = None
            for i in range(sigma):
                for jj in range(sigma):
                    if chain[k - 1][a, i] + child[jj, end] - (i == jj) == want:
                        found = (i, jj)
                        break
                if found:
                    break
            i, jj = found
            todo.append((by_sym[order[k]], jj, end))
            end = i
        todo.append((by_sym[order[0]], a, end))

    scheme = assignment_scheme(view.alphabet, assignment)
    out = transform_view(view, scheme)
    if run_count(out.L) != opt:  # pragma: no cover - witness check
        raise AssertionError("witness transform does not reach the optimum")
    return MinRuns(opt, assignment, out.L, out.I, scheme)
