import itertools

import pytest
from hypothesis import given

from cabwt import orderings as o
from cabwt.base import EMPTY, InvalidSymbolError, InvalidTransformError, NotApplicableError, Range
from cabwt.general import GeneralIndex, count
from cabwt.oracle import oracle_range, sorted_rotation_matrix
from cabwt.orderings import Alphabet
from cabwt.pm import PmIndex, count_pm, extend_pm, invert_pm, pm_view
from cabwt.suffix_index import transform

from helpers import FIG_ALPHA, FIG_TEXT, fig2, fig3, fig4, fig5
from strategies import text_and_scheme

A = FIG_ALPHA
PM_KINDS = (o.PLUSMINUS, o.CONSTANT, o.POSMOD)


@pytest.fixture(scope="module")
def idx5():
    L, I = transform(FIG_TEXT, fig5())
    return PmIndex(L, I, fig5())


def test_view():
    base, neg = pm_view(fig5())
    assert base.to_symbols(A) == b"bac"
    assert neg(b"\x00", 0, 1) and not neg(b"\x01", 0, 1)
    base, neg = pm_view(o.abwt(A))
    assert neg(b"\x00", 0, 1) and not neg(b"\x00\x00", 0, 2)
    for bad in (fig2(), fig3(), fig4()):
        with pytest.raises(NotApplicableError):
            pm_view(bad)


def test_extend_examples(idx5):
    a, c = 0, 2
    r_aba = count_pm(idx5, b"aba")
    r_ba = count_pm(idx5, b"ba")
    assert count_pm(idx5, b"bac") == Range(2, 1)
    got = extend_pm(idx5, r_aba, r_ba, Range(2, 1), a, False, False)
    assert got == Range(8, 1)
    assert extend_pm(idx5, count_pm(idx5, b"a"), idx5.full, count_pm(idx5, b"a"), a, True, False) == Range(4, 3)
    assert extend_pm(idx5, count_pm(idx5, b"c"), idx5.full, count_pm(idx5, b"c"), c, False, False) == EMPTY


@pytest.mark.parametrize("x,want", [(b"abac", Range(8, 1)), (b"aa", Range(4, 3)), (b"ccc", EMPTY),
                                    (b"", Range(1, 9))])
def test_count_examples(idx5, x, want):
    assert count_pm(idx5, x) == want


def test_invalid_symbol(idx5):
    with pytest.raises(InvalidSymbolError):
        count_pm(idx5, b"q")


def test_abwt_every_substring():
    scheme = o.abwt(A)
    L, I = transform(FIG_TEXT, scheme)
    pidx, gidx = PmIndex(L, I, scheme), GeneralIndex(L, I, scheme)
    doubled = FIG_TEXT * 2
    for i in range(9):
        for h in range(1, 10):
            x = doubled[i:i + h]
            assert count_pm(pidx, x) == count(gidx, x) == oracle_range(FIG_TEXT, scheme, x)


@given(text_and_scheme(max_len=48, kinds=PM_KINDS))
def test_count_oracle(case):
    text, scheme = case
    try:
        pm_view(scheme)
    except NotApplicableError:
        return
    L, I = transform(text, scheme)
    pidx, gidx = PmIndex(L, I, scheme), GeneralIndex(L, I, scheme)
    m = sorted_rotation_matrix(text, scheme)
    for h in range(1, 5):
        for p in itertools.product(scheme.alphabet.symbols, repeat=h):
            p = bytes(p)
            assert count_pm(pidx, p) == oracle_range(text, scheme, p, m) == count(gidx, p)


def test_invert_figures():
    assert invert_pm(b"aabacbaaa", 5, fig5()) == FIG_TEXT
    assert invert_pm(b"a", 1, o.plus_minus(Alphabet(b"a"))) == b"a"
    assert invert_pm(b"baabcaaaa", 5, o.abwt(A)) == FIG_TEXT


@given(text_and_scheme(max_len=64, kinds=(o.PLUSMINUS,)))
def test_round_trip(case):
    text, scheme = case
    L, I = transform(text, scheme)
    assert invert_pm(L, I, scheme) == text


@pytest.mark.parametrize("L,I", [(b"", 1), (b"abc", 9), (b"aabb", 1), (b"abab", 2)])
def test_invalid(L, I):
    with pytest.raises(InvalidTransformError):
        invert_pm(L, I, o.bwt(A))
