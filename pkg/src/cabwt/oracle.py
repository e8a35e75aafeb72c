"""Ground truth by explicit rotation sorting.

Everything here is quadratic or worse and meant for small inputs (a few
thousand symbols at most).  None of it touches the suffix structures it is
used to check.
"""
from __future__ import annotations

import functools
import itertools
import math
from dataclasses import dataclass

from .base import (EMPTY, NotApplicableError, NotPrimitiveError, OracleTooLargeError, Range,
                   TransformOutput, as_bytes)
from .orderings import (Alphabet, ExplicitScheme, LocalScheme, OrderingScheme, Permutation)


@dataclass(frozen=True)
class RotationMatrix:
    text: bytes
    row_starts: tuple  # 1-based start of the rotation in each row

    def row(self, i: int) -> bytes:
        """Rotation held by 1-based row ``i``."""
        p = self.row_starts[i - 1] - 1
        return self.text[p:] + self.text[:p]

    @functools.cached_property
    def rows(self) -> list:
        return [self.row(i) for i in range(1, len(self.row_starts) + 1)]


def is_primitive(text: bytes) -> bool:
    n = len(text)
    return n > 0 and (text + text).find(text, 1) == n


def _rotation_cmp(codes: bytes, scheme: OrderingScheme):
    n = len(codes)
    doubled = codes + codes

    def cmp(i, j):
        for h in range(n):
            a, b = doubled[i + h], doubled[j + h]
            if a != b:
                pi = scheme.resolve(doubled[i:i + h])
                return -1 if pi.inverse[a] < pi.inverse[b] else 1
        raise NotPrimitiveError("two rotations are equal")

    return cmp


def sorted_rotation_matrix(text, scheme: OrderingScheme) -> RotationMatrix:
    text = as_bytes(text)
    if not text:
        raise ValueError("empty text")
    if not is_primitive(text):
        raise NotPrimitiveError("text is not primitive")
    codes = scheme.alphabet.encode(text)
    order = sorted(range(len(text)), key=functools.cmp_to_key(_rotation_cmp(codes, scheme)))
    return RotationMatrix(text, tuple(p + 1 for p in order))


def oracle_transform(text, scheme: OrderingScheme) -> TransformOutput:
    m = sorted_rotation_matrix(text, scheme)
    n = len(m.text)
    last = bytes(m.text[(p - 2) % n] for p in m.row_starts)
    return TransformOutput(last, m.row_starts.index(1) + 1)


def _periodic_prefix(row: bytes, x: bytes) -> bool:
    n = len(row)
    if len(x) <= n:
        return row.startswith(x)
    return all(row[t % n] == c for t, c in enumerate(x))


def oracle_range(text, scheme: OrderingScheme, x, matrix: RotationMatrix | None = None) -> Range:
    """Rows prefixed by ``x``; rotations are read periodically when ``|x| > n``."""
    x = as_bytes(x)
    m = matrix if matrix is not None else sorted_rotation_matrix(text, scheme)
    hits = [i for i, row in enumerate(m.rows, 1) if _periodic_prefix(row, x)]
    if not hits:
        return EMPTY
    if hits != list(range(hits[0], hits[-1] + 1)):
        raise AssertionError(f"rows prefixed by {x!r} are not contiguous: {hits}")
    return Range(hits[0], len(hits))


def oracle_ranges(text, scheme: OrderingScheme, max_len: int, matrix: RotationMatrix | None = None) -> dict:
    """``{x: R(x)}`` for every pattern of length 1..max_len that occurs; absent patterns are omitted."""
    m = matrix if matrix is not None else sorted_rotation_matrix(text, scheme)
    hits: dict = {}
    for i, row in enumerate(m.rows, 1):
        periodic = row * (max_len // len(row) + 1)
        for h in range(1, max_len + 1):
            hits.setdefault(periodic[:h], []).append(i)
    out = {}
    for x, rows in hits.items():
        if rows != list(range(rows[0], rows[-1] + 1)):
            raise AssertionError(f"rows prefixed by {x!r} are not contiguous: {rows}")
        out[x] = Range(rows[0], len(rows))
    return out


def pair_string(text) -> list:
    text = as_bytes(text)
    n = len(text)
    return [(text[i], text[(i + 1) % n]) for i in range(n)]


def pair_alphabet_bwt(text, scheme: LocalScheme) -> TransformOutput:
    """Classic BWT over symbol pairs ordered by (pi_eps on the first, pi_first on the second)."""
    if not isinstance(scheme, LocalScheme) or scheme.k != 1:
        raise NotApplicableError("pair-alphabet view needs a local scheme with k=1")
    text = as_bytes(text)
    if not is_primitive(text):
        raise NotPrimitiveError("text is not primitive")
    codes = scheme.alphabet.encode(text)
    n = len(codes)
    pi_eps = scheme.resolve(b"")
    keys = []
    for a, b in pair_string(codes):
        keys.append((pi_eps.inverse[a], scheme.resolve(bytes([a])).inverse[b]))
    rotations = sorted(range(n), key=lambda i: keys[i:] + keys[:i])
    pairs = pair_string(text)
    last = bytes(pairs[(i - 1) % n][0] for i in rotations)
    return TransformOutput(last, rotations.index(0) + 1)


def run_count(seq) -> int:
    return sum(1 for i in range(len(seq)) if i == 0 or seq[i] != seq[i - 1])


def branching_contexts(codes: bytes) -> dict:
    """Contexts shared by two or more rotations that continue differently.

    Maps each such context (codes) to the sorted tuple of next symbols.
    """
    n = len(codes)
    doubled = codes + codes
    nexts = {}
    for i in range(n):
        for h in range(n):
            nexts.setdefault(doubled[i:i + h], set()).add(doubled[i + h])
    return {ctx: tuple(sorted(s)) for ctx, s in nexts.items() if len(s) > 1}


def oracle_min_runs(text, budget: int = 10 ** 7):
    """Exhaustive minimum of run_count over all child-order assignments.

    Returns ``(opt, assignment)`` where the assignment maps each branching
    context (codes over the text's own alphabet) to the chosen order of its
    branching symbols.
    """
    text = as_bytes(text)
    if not is_primitive(text):
        raise NotPrimitiveError("text is not primitive")
    alphabet = Alphabet.from_text(text)
    codes = alphabet.encode(text)
    n = len(codes)
    nodes = branching_contexts(codes)
    contexts = sorted(nodes, key=lambda c: (len(c), c))
    total = math.prod(math.factorial(len(nodes[c])) for c in contexts)
    if total > budget:
        raise OracleTooLargeError(f"{total} assignments exceed the budget of {budget}")

    # Along each rotation, the branching contexts it passes and the symbol it takes.
    doubled = codes + codes
    index = {c: i for i, c in enumerate(contexts)}
    paths = []
    for i in range(n):
        steps = []
        for h in range(n):
            ctx = doubled[i:i + h]
            if ctx in index:
                steps.append((index[ctx], doubled[i + h]))
        paths.append(steps)
    last = [codes[(i - 1) % n] for i in range(n)]

    best = None
    choices = [list(itertools.permutations(nodes[c])) for c in contexts]
    for combo in itertools.product(*choices):
        ranks = [{sym: r for r, sym in enumerate(order)} for order in combo]
        rows = sorted(range(n), key=lambda i: [ranks[node][sym] for node, sym in paths[i]])
        runs = run_count([last[i] for i in rows])
        if best is None or runs < best[0]:
            best = (runs, combo)
    return best[0], dict(zip(contexts, best[1]))


def assignment_scheme(alphabet: Alphabet, assignment: dict) -> ExplicitScheme:
    """Explicit scheme realising a child-order assignment; unlisted symbols follow in standard order."""
    mapping = {}
    for ctx, order in assignment.items():
        rest = [c for c in range(alphabet.size) if c not in order]
        mapping[bytes(ctx)] = Permutation(tuple(order) + tuple(rest))
    return ExplicitScheme(alphabet, mapping, Permutation.identity(alphabet.size))
