"""Alphabets, permutations and context-adaptive ordering schemes.

A scheme maps every context (a string of alphabet ranks) to a permutation of
the alphabet.  Contexts are ``bytes`` objects holding ranks, never raw input
bytes, so a scheme is independent of how the text was encoded.

The module also reads and writes the line-based scheme text format::

    kind=local k=1
    alphabet=abc
    default=abc
    ctx:=bca        # empty context
    ctx:a=bac
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from types import MappingProxyType
from typing import Iterable, Mapping

import numpy as np

from .base import InvalidSymbolError, SchemeFormatError, as_bytes

CONSTANT = "constant"
POSMOD = "posmod"
PLUSMINUS = "pm"
LOCAL = "local"
EXPLICIT = "explicit"
KINDS = (CONSTANT, POSMOD, PLUSMINUS, LOCAL, EXPLICIT)


@dataclass(frozen=True)
class Alphabet:
    """Strictly increasing byte values; a symbol's code is its index."""

    symbols: bytes
    _table: bytes = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        symbols = bytes(self.symbols)
        if not 1 <= len(symbols) <= 256:
            raise ValueError("alphabet must hold between 1 and 256 symbols")
        if any(a >= b for a, b in zip(symbols, symbols[1:])):
            raise ValueError("alphabet symbols must be strictly increasing")
        table = bytearray(256)
        for rank, sym in enumerate(symbols):
            table[sym] = rank
        object.__setattr__(self, "symbols", symbols)
        object.__setattr__(self, "_table", bytes(table))

    @classmethod
    def from_text(cls, text) -> "Alphabet":
        return cls(bytes(sorted(set(as_bytes(text)))))

    @property
    def size(self) -> int:
        return len(self.symbols)

    def __len__(self):
        return len(self.symbols)

    def code(self, symbol: int) -> int:
        if symbol not in self.symbols:
            raise InvalidSymbolError(f"symbol {symbol!r} not in alphabet")
        return self._table[symbol]

    def encode(self, text) -> bytes:
        """Map raw symbols to rank codes."""
        text = as_bytes(text)
        stray = text.translate(None, self.symbols)
        if stray:
            raise InvalidSymbolError(f"symbol {stray[:1]!r} not in alphabet {self.symbols!r}")
        return text.translate(self._table)

    def decode(self, codes) -> bytes:
        codes = bytes(codes)
        if codes and max(codes) >= self.size:
            raise InvalidSymbolError("code outside alphabet")
        return codes.translate(self.symbols.ljust(256, b"\0"))


@dataclass(frozen=True)
class Permutation:
    """An ordering of the alphabet, stored as the ranks in increasing order.

    ``order[i]`` is the code of the i-th smallest symbol and ``inverse[c]`` is
    the position of code ``c``.
    """

    order: tuple
    inverse: tuple = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        order = tuple(int(c) for c in self.order)
        if sorted(order) != list(range(len(order))):
            raise ValueError(f"not a permutation: {order}")
        inverse = [0] * len(order)
        for pos, c in enumerate(order):
            inverse[c] = pos
        object.__setattr__(self, "order", order)
        object.__setattr__(self, "inverse", tuple(inverse))

    @classmethod
    def identity(cls, sigma: int) -> "Permutation":
        return cls(tuple(range(sigma)))

    @classmethod
    def from_symbols(cls, alphabet: Alphabet, symbols) -> "Permutation":
        symbols = as_bytes(symbols)
        if len(symbols) != alphabet.size:
            raise ValueError(f"permutation {symbols!r} does not cover alphabet {alphabet.symbols!r}")
        return cls(tuple(alphabet.encode(symbols)))

    @property
    def size(self) -> int:
        return len(self.order)

    def reversed(self) -> "Permutation":
        return Permutation(self.order[::-1])

    def to_symbols(self, alphabet: Alphabet) -> bytes:
        return alphabet.decode(bytes(self.order))


def reverse(p: Permutation) -> Permutation:
    return p.reversed()


def compare(p: Permutation, c1: int, c2: int) -> int:
    """Three-way comparison of two codes under ``p``: -1, 0 or 1."""
    if not (0 <= c1 < p.size and 0 <= c2 < p.size):
        raise InvalidSymbolError("code outside alphabet")
    a, b = p.inverse[c1], p.inverse[c2]
    return (a > b) - (a < b)


def _as_perm(alphabet: Alphabet, given) -> Permutation:
    if isinstance(given, Permutation):
        if given.size != alphabet.size:
            raise ValueError("permutation size does not match alphabet")
        return given
    return Permutation.from_symbols(alphabet, given)


def _as_context(alphabet: Alphabet, ctx) -> bytes:
    return alphabet.encode(ctx)


class OrderingScheme:
    """Base class; subclasses implement :meth:`resolve`."""

    kind: str = ""
    alphabet: Alphabet

    def resolve(self, context: bytes) -> Permutation:
        raise NotImplementedError

    def resolve_span(self, codes: bytes, start: int, end: int) -> Permutation:
        """``resolve(codes[start:end])``; subclasses avoid the copy when they can."""
        return self.resolve(codes[start:end])

    def permutations(self) -> list:
        """Every permutation the scheme can return."""
        raise NotImplementedError

    def node_permutations(self, codes: np.ndarray, starts: np.ndarray, depths: np.ndarray):
        """Resolve the contexts ``codes[starts[i]:starts[i]+depths[i]]`` in bulk.

        Returns ``(ids, perms)`` with ``perms[ids[i]]`` the permutation of
        context ``i``.
        """
        raw = codes.tobytes()
        seen = {}
        perms = []
        ids = np.empty(len(starts), dtype=np.int64)
        for i, (s, d) in enumerate(zip(starts.tolist(), depths.tolist())):
            p = self.resolve_span(raw, s, s + d)
            key = id(p)
            if key not in seen:
                seen[key] = len(perms)
                perms.append(p)
            ids[i] = seen[key]
        return ids, perms

    def _check(self):
        for p in self.permutations():
            if p.size != self.alphabet.size:
                raise ValueError("scheme permutation does not match its alphabet")


@dataclass(frozen=True, eq=False)
class ConstantScheme(OrderingScheme):
    alphabet: Alphabet
    perm: Permutation
    kind = CONSTANT

    def __post_init__(self):
        self._check()

    def resolve(self, context):
        return self.perm

    def resolve_span(self, codes, start, end):
        return self.perm

    def permutations(self):
        return [self.perm]

    def node_permutations(self, codes, starts, depths):
        return np.zeros(len(starts), dtype=np.int64), [self.perm]


@dataclass(frozen=True, eq=False)
class PositionModKScheme(OrderingScheme):
    """``pi_x = perms[|x| mod k]``."""

    alphabet: Alphabet
    perms: tuple
    kind = POSMOD

    def __post_init__(self):
        object.__setattr__(self, "perms", tuple(self.perms))
        if not self.perms:
            raise ValueError("need k >= 1 permutations")
        self._check()

    @property
    def k(self) -> int:
        return len(self.perms)

    def resolve(self, context):
        return self.perms[len(context) % len(self.perms)]

    def resolve_span(self, codes, start, end):
        return self.perms[(end - start) % len(self.perms)]

    def permutations(self):
        return list(self.perms)

    def node_permutations(self, codes, starts, depths):
        return np.asarray(depths, dtype=np.int64) % self.k, list(self.perms)


@dataclass(frozen=True, eq=False)
class PlusMinusScheme(OrderingScheme):
    """Every context resolves to ``base`` or its reversal.

    With ``parity`` the sign flips on odd-length contexts; otherwise the
    contexts in ``negated`` take the sign opposite to the default.
    """

    alphabet: Alphabet
    base: Permutation
    default_negative: bool = False
    negated: frozenset = frozenset()
    parity: bool = False
    kind = PLUSMINUS

    def __post_init__(self):
        object.__setattr__(self, "negated", frozenset(bytes(x) for x in self.negated))
        if self.parity and self.negated:
            raise ValueError("parity rule and explicit negated contexts are exclusive")
        object.__setattr__(self, "_rev", self.base.reversed())
        object.__setattr__(self, "_maxlen", max((len(x) for x in self.negated), default=-1))
        self._check()

    def negative(self, context: bytes) -> bool:
        return self.negative_span(context, 0, len(context))

    def negative_span(self, codes, start, end) -> bool:
        neg = self.default_negative
        if self.parity:
            return neg ^ bool((end - start) & 1)
        if end - start <= self._maxlen and codes[start:end] in self.negated:
            return not neg
        return neg

    def resolve(self, context):
        return self._rev if self.negative(context) else self.base

    def resolve_span(self, codes, start, end):
        return self._rev if self.negative_span(codes, start, end) else self.base

    def permutations(self):
        return [self.base, self._rev]

    def node_permutations(self, codes, starts, depths):
        if self.parity:
            ids = (np.asarray(depths, dtype=np.int64) & 1) ^ int(self.default_negative)
            return ids, [self.base, self._rev]
        return super().node_permutations(codes, starts, depths)


@dataclass(frozen=True, eq=False)
class LocalScheme(OrderingScheme):
    """Permutation depends only on the last ``min(k, |x|)`` symbols of ``x``."""

    alphabet: Alphabet
    k: int
    mapping: Mapping
    default: Permutation
    kind = LOCAL

    def __post_init__(self):
        if self.k < 1:
            raise ValueError("local order k must be >= 1")
        mapping = {bytes(ctx): p for ctx, p in dict(self.mapping).items()}
        for ctx in mapping:
            if len(ctx) > self.k:
                raise ValueError(f"context {ctx!r} longer than k={self.k}")
            if ctx and max(ctx) >= self.alphabet.size:
                raise InvalidSymbolError("context outside alphabet")
        object.__setattr__(self, "mapping", MappingProxyType(mapping))
        self._check()

    def resolve(self, context):
        return self.mapping.get(bytes(context[-self.k:]) if context else b"", self.default)

    def resolve_span(self, codes, start, end):
        return self.mapping.get(codes[max(start, end - self.k):end], self.default)

    def permutations(self):
        return [self.default, *self.mapping.values()]

    def node_permutations(self, codes, starts, depths):
        k, sigma = self.k, self.alphabet.size
        starts = np.asarray(starts, dtype=np.int64)
        depths = np.asarray(depths, dtype=np.int64)
        if len(starts) == 0 or (sigma + 1) ** k >= 2 ** 62:
            return super().node_permutations(codes, starts, depths)
        ctx_len = np.minimum(depths, k)
        key = ctx_len.copy()
        for t in range(k):
            valid = t < ctx_len
            pos = np.where(valid, starts + depths - 1 - t, 0)
            key = key * (sigma + 1) + np.where(valid, codes[pos].astype(np.int64) + 1, 0)
        uniq, first, inverse = np.unique(key, return_index=True, return_inverse=True)
        raw = codes.tobytes()
        perm_ids = {}
        perms = []
        group = np.empty(len(uniq), dtype=np.int64)
        for g, i in enumerate(first.tolist()):
            end = int(starts[i] + depths[i])
            p = self.resolve_span(raw, end - int(ctx_len[i]), end)
            if id(p) not in perm_ids:
                perm_ids[id(p)] = len(perms)
                perms.append(p)
            group[g] = perm_ids[id(p)]
        return group[inverse.reshape(-1)], perms


@dataclass(frozen=True, eq=False)
class ExplicitScheme(OrderingScheme):
    """Exact-context lookup with a single default."""

    alphabet: Alphabet
    mapping: Mapping
    default: Permutation
    kind = EXPLICIT

    def __post_init__(self):
        mapping = {bytes(ctx): p for ctx, p in dict(self.mapping).items()}
        for ctx in mapping:
            if ctx and max(ctx) >= self.alphabet.size:
                raise InvalidSymbolError("context outside alphabet")
        object.__setattr__(self, "mapping", MappingProxyType(mapping))
        object.__setattr__(self, "_maxlen", max((len(c) for c in mapping), default=-1))
        self._check()

    def resolve(self, context):
        return self.mapping.get(bytes(context), self.default)

    def resolve_span(self, codes, start, end):
        if end - start > self._maxlen:
            return self.default
        return self.mapping.get(codes[start:end], self.default)

    def permutations(self):
        return [self.default, *self.mapping.values()]


def resolve(scheme: OrderingScheme, context) -> Permutation:
    """Permutation assigned to ``context`` (a string of codes)."""
    context = bytes(context)
    if context and max(context) >= scheme.alphabet.size:
        raise InvalidSymbolError("context symbol outside alphabet")
    return scheme.resolve(context)


# -- convenience constructors taking raw symbol strings ----------------------

def constant(alphabet: Alphabet, perm=None) -> ConstantScheme:
    p = Permutation.identity(alphabet.size) if perm is None else _as_perm(alphabet, perm)
    return ConstantScheme(alphabet, p)


def bwt(alphabet: Alphabet) -> ConstantScheme:
    return constant(alphabet)


def position_mod_k(alphabet: Alphabet, perms: Iterable) -> PositionModKScheme:
    return PositionModKScheme(alphabet, tuple(_as_perm(alphabet, p) for p in perms))


def abwt(alphabet: Alphabet) -> PositionModKScheme:
    std = Permutation.identity(alphabet.size)
    return PositionModKScheme(alphabet, (std, std.reversed()))


def plus_minus(alphabet: Alphabet, base=None, negated=(), default_sign="+", parity=False):
    p = Permutation.identity(alphabet.size) if base is None else _as_perm(alphabet, base)
    if default_sign not in ("+", "-"):
        raise ValueError("default sign must be '+' or '-'")
    neg = frozenset(_as_context(alphabet, x) for x in negated)
    return PlusMinusScheme(alphabet, p, default_sign == "-", neg, parity)


def local(alphabet: Alphabet, k: int, mapping: Mapping, default=None) -> LocalScheme:
    d = Permutation.identity(alphabet.size) if default is None else _as_perm(alphabet, default)
    m = {_as_context(alphabet, ctx): _as_perm(alphabet, p) for ctx, p in mapping.items()}
    return LocalScheme(alphabet, k, m, d)


def explicit(alphabet: Alphabet, mapping: Mapping, default=None) -> ExplicitScheme:
    d = Permutation.identity(alphabet.size) if default is None else _as_perm(alphabet, default)
    m = {_as_context(alphabet, ctx): _as_perm(alphabet, p) for ctx, p in mapping.items()}
    return ExplicitScheme(alphabet, m, d)


def preset(name: str, alphabet: Alphabet) -> OrderingScheme:
    """``bwt``, ``abwt``, ``pm-parity`` or ``posmod:k``.

    ``posmod:k`` alternates the standard and reversed order by position.
    """
    if name == "bwt":
        return bwt(alphabet)
    if name == "abwt":
        return abwt(alphabet)
    if name == "pm-parity":
        return plus_minus(alphabet, parity=True)
    if name.startswith("posmod:"):
        try:
            k = int(name.split(":", 1)[1])
        except ValueError:
            raise SchemeFormatError(f"bad preset {name!r}") from None
        if k < 1:
            raise SchemeFormatError("posmod needs k >= 1")
        std = Permutation.identity(alphabet.size)
        return PositionModKScheme(alphabet, tuple(std if i % 2 == 0 else std.reversed() for i in range(k)))
    raise SchemeFormatError(f"unknown preset {name!r}")


# -- text format --------------------------------------------------------------

_PLAIN = re.compile(rb"[!-~]")
_ESCAPED = frozenset(b"\\=#")


def escape_symbols(raw: bytes) -> str:
    out = []
    for b in raw:
        if _PLAIN.fullmatch(bytes([b])) and b not in _ESCAPED:
            out.append(chr(b))
        else:
            out.append(f"\\x{b:02x}")
    return "".join(out)


def unescape_symbols(text: str) -> bytes:
    out = bytearray()
    i = 0
    while i < len(text):
        ch = text[i]
        if ch == "\\":
            if text[i + 1:i + 2] == "\\":
                out.append(0x5C)
                i += 2
                continue
            m = re.match(r"x([0-9a-fA-F]{2})", text[i + 1:i + 4])
            if not m:
                raise SchemeFormatError(f"bad escape in {text!r}")
            out.append(int(m.group(1), 16))
            i += 4
            continue
        if ord(ch) > 0xFF:
            raise SchemeFormatError(f"non-byte symbol {ch!r}")
        out.append(ord(ch))
        i += 1
    return bytes(out)


def scheme_to_text(scheme: OrderingScheme) -> str:
    a = scheme.alphabet

    def perm(p):
        return escape_symbols(p.to_symbols(a))

    def ctx(c):
        return escape_symbols(a.decode(c))

    lines = []
    if isinstance(scheme, ConstantScheme):
        lines.append(f"kind={CONSTANT} perm={perm(scheme.perm)}")
    elif isinstance(scheme, PositionModKScheme):
        pis = " ".join(f"pi{i}={perm(p)}" for i, p in enumerate(scheme.perms))
        lines.append(f"kind={POSMOD} k={scheme.k} {pis}")
    elif isinstance(scheme, PlusMinusScheme):
        sign = "-" if scheme.default_negative else "+"
        parity = "on" if scheme.parity else "off"
        lines.append(f"kind={PLUSMINUS} base={perm(scheme.base)} default={sign} parity={parity}")
    elif isinstance(scheme, LocalScheme):
        lines.append(f"kind={LOCAL} k={scheme.k}")
    elif isinstance(scheme, ExplicitScheme):
        lines.append(f"kind={EXPLICIT}")
    else:
        raise TypeError(f"cannot serialize {type(scheme).__name__}")
    lines.append(f"alphabet={escape_symbols(a.symbols)}")
    if isinstance(scheme, (LocalScheme, ExplicitScheme)):
        lines.append(f"default={perm(scheme.default)}")
        for c in sorted(scheme.mapping, key=lambda c: (len(c), c)):
            lines.append(f"ctx:{ctx(c)}={perm(scheme.mapping[c])}")
    if isinstance(scheme, PlusMinusScheme):
        for c in sorted(scheme.negated, key=lambda c: (len(c), c)):
            lines.append(f"neg:{ctx(c)}")
    return "\n".join(lines) + "\n"


def scheme_from_text(text: str) -> OrderingScheme:
    fields = {}
    ctx_lines = []
    neg_lines = []
    for lineno, line in enumerate(text.splitlines(), 1):
        for tok in line.split():
            if tok.startswith("#"):
                break
            if tok.startswith("ctx:"):
                body = tok[4:]
                if "=" not in body:
                    raise SchemeFormatError(f"line {lineno}: ctx entry needs '='")
                c, p = body.split("=", 1)
                ctx_lines.append((unescape_symbols(c), p))
            elif tok.startswith("neg:"):
                neg_lines.append(unescape_symbols(tok[4:]))
            elif "=" in tok:
                key, value = tok.split("=", 1)
                if key in fields:
                    raise SchemeFormatError(f"line {lineno}: duplicate key {key!r}")
                fields[key] = value
            else:
                raise SchemeFormatError(f"line {lineno}: unexpected token {tok!r}")

    kind = fields.get("kind")
    if kind not in KINDS:
        raise SchemeFormatError(f"unknown or missing kind {kind!r}")

    if "alphabet" in fields:
        alpha_syms = unescape_symbols(fields["alphabet"])
    else:
        first = next((fields[k] for k in ("perm", "base", "pi0", "default") if k in fields
                      and fields[k] not in ("+", "-")), None)
        if first is None:
            raise SchemeFormatError("cannot infer alphabet")
        alpha_syms = bytes(sorted(unescape_symbols(first)))
    try:
        alphabet = Alphabet(alpha_syms)
    except ValueError as exc:
        raise SchemeFormatError(str(exc)) from None

    def perm(value):
        try:
            return Permutation.from_symbols(alphabet, unescape_symbols(value))
        except (ValueError, InvalidSymbolError) as exc:
            raise SchemeFormatError(str(exc)) from None

    def int_field(name, default=None):
        if name not in fields:
            if default is None:
                raise SchemeFormatError(f"missing {name}=")
            return default
        try:
            return int(fields[name])
        except ValueError:
            raise SchemeFormatError(f"{name} must be an integer") from None

    def ctx(raw):
        try:
            return alphabet.encode(raw)
        except InvalidSymbolError as exc:
            raise SchemeFormatError(str(exc)) from None

    try:
        if kind == CONSTANT:
            given = fields.get("perm", fields.get("default"))
            p = perm(given) if given is not None else Permutation.identity(alphabet.size)
            return ConstantScheme(alphabet, p)
        if kind == POSMOD:
            k = int_field("k")
            if k < 1:
                raise SchemeFormatError("k must be >= 1")
            missing = [f"pi{i}" for i in range(k) if f"pi{i}" not in fields]
            if missing:
                raise SchemeFormatError(f"missing {', '.join(missing)}")
            return PositionModKScheme(alphabet, tuple(perm(fields[f"pi{i}"]) for i in range(k)))
        if kind == PLUSMINUS:
            base = perm(fields["base"]) if "base" in fields else Permutation.identity(alphabet.size)
            sign = fields.get("default", "+")
            if sign not in ("+", "-"):
                raise SchemeFormatError("pm default must be + or -")
            parity = fields.get("parity", "off")
            if parity not in ("on", "off"):
                raise SchemeFormatError("parity must be on or off")
            if parity == "on" and neg_lines:
                raise SchemeFormatError("neg: lines are not allowed with parity=on")
            return PlusMinusScheme(alphabet, base, sign == "-",
                                   frozenset(ctx(c) for c in neg_lines), parity == "on")
        default = perm(fields["default"]) if "default" in fields else Permutation.identity(alphabet.size)
        mapping = {}
        for c, p in ctx_lines:
            key = ctx(c)
            if key in mapping:
                raise SchemeFormatError(f"duplicate context {c!r}")
            mapping[key] = perm(p)
        if kind == LOCAL:
            return LocalScheme(alphabet, int_field("k", 1), mapping, default)
        return ExplicitScheme(alphabet, mapping, default)
    except SchemeFormatError:
        raise
    except (ValueError, InvalidSymbolError) as exc:
        raise SchemeFormatError(str(exc)) from None
