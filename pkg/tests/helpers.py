"""Random texts and schemes shared by the test modules."""
import random

from cabwt import orderings as o
from cabwt.orderings import Alphabet, Permutation

TERM = b"$"
BODY = b"abc"
FIG_TEXT = b"aabaaabac"
FIG_ALPHA = Alphabet(b"abc")


def fig2():
    return o.explicit(FIG_ALPHA, {b"": b"bac", b"a": b"cab", b"aa": b"bac", b"aaba": b"acb"})


def fig3():
    return o.position_mod_k(FIG_ALPHA, [b"cab", b"bca", b"bac"])


def fig4():
    return o.local(FIG_ALPHA, 1, {b"": b"bca", b"a": b"bac"})


def fig5():
    return o.plus_minus(FIG_ALPHA, b"bac", [b"a", b"aaba"])


def random_text(rng: random.Random, n_max: int, sigma: int) -> bytes:
    """Body over ``sigma - 1`` letters plus the unique terminator ``$``."""
    body_syms = BODY[:max(sigma - 1, 1)]
    n = rng.randint(0, max(n_max - 1, 0))
    return bytes(rng.choice(body_syms) for _ in range(n)) + TERM


def random_perm(rng, sigma):
    order = list(range(sigma))
    rng.shuffle(order)
    return Permutation(tuple(order))


def substrings(codes: bytes, max_len: int):
    n = len(codes)
    doubled = codes + codes
    return sorted({doubled[i:i + h] for i in range(n) for h in range(min(max_len, n) + 1)})


def random_scheme(rng, alphabet: Alphabet, codes: bytes, kind: str):
    sigma = alphabet.size
    if kind == o.CONSTANT:
        return o.ConstantScheme(alphabet, random_perm(rng, sigma))
    if kind == o.POSMOD:
        return o.PositionModKScheme(alphabet, tuple(random_perm(rng, sigma) for _ in range(rng.randint(1, 3))))
    if kind == o.PLUSMINUS:
        base = random_perm(rng, sigma)
        neg = rng.random() < 0.5
        if rng.random() < 0.3:
            return o.PlusMinusScheme(alphabet, base, neg, frozenset(), True)
        pool = substrings(codes, 4)
        chosen = frozenset(c for c in pool if rng.random() < 0.3)
        return o.PlusMinusScheme(alphabet, base, neg, chosen, False)
    if kind == o.LOCAL:
        k = rng.randint(1, 3)
        pool = [c for c in substrings(codes, k)]
        mapping = {c: random_perm(rng, sigma) for c in pool if rng.random() < 0.6}
        return o.LocalScheme(alphabet, k, mapping, random_perm(rng, sigma))
    if kind == o.EXPLICIT:
        pool = substrings(codes, 6)
        mapping = {c: random_perm(rng, sigma) for c in pool if rng.random() < 0.4}
        return o.ExplicitScheme(alphabet, mapping, random_perm(rng, sigma))
    raise ValueError(kind)


def random_case(rng, n_max=64, sigma_max=4, kind=None):
    sigma = rng.randint(1, sigma_max)
    text = random_text(rng, n_max, sigma)
    alphabet = Alphabet.from_text(text)
    kind = kind or rng.choice(o.KINDS)
    return text, random_scheme(rng, alphabet, alphabet.encode(text), kind)
