import itertools
import random

import pytest
from hypothesis import given

from cabwt import orderings as o
from cabwt.base import EMPTY, CapExceededError, InvalidSymbolError, InvalidTransformError, NotApplicableError, Range
from cabwt.local import (LocalIndex, backward_extend, build_local, count_and_locate, count_local, invert_local,
                         local_view, locate, row_position, step_right)
from cabwt.oracle import oracle_range, oracle_transform, sorted_rotation_matrix
from cabwt.orderings import Alphabet
from cabwt.rank import run_count
from cabwt.suffix_index import transform

from helpers import FIG_ALPHA, FIG_TEXT, fig2, fig4, fig5, random_case
from strategies import text_and_scheme

A = FIG_ALPHA
LOCAL_KINDS = (o.LOCAL, o.CONSTANT)


@pytest.fixture(scope="module")
def idx4():
    return build_local(b"aaaaacabb", 6, fig4(), k=1, samples=True)


def test_view():
    assert local_view(fig4()) is fig4() or local_view(fig4()).k == 1
    assert local_view(o.bwt(A)).k == 1
    assert local_view(o.position_mod_k(A, [b"cab"])).default.to_symbols(A) == b"cab"
    for bad in (fig2(), fig5(), o.abwt(A)):
        with pytest.raises(NotApplicableError):
            local_view(bad)


class TestTable:
    def test_fig4(self, idx4):
        assert idx4.table_range(A.encode(b"a")) == Range(4, 6)
        assert idx4.table_range(A.encode(b"b")) == Range(1, 2)
        assert idx4.table_range(A.encode(b"c")) == Range(3, 1)
        assert idx4.table_range(A.encode(b"aa")) == Range(6, 3)
        assert idx4.table_range(A.encode(b"cc")) == EMPTY

    def test_unary(self):
        idx = build_local(b"a", 1, o.bwt(Alphabet(b"a")))
        assert idx.table_range(b"\x00") == Range(1, 1)
        idx = build_local(b"a$", 2, o.bwt(Alphabet(b"$a")))
        assert idx.table_range(b"\x01") == Range(2, 1)

    def test_children_tile_parent(self):
        rng = random.Random(5)
        for _ in range(30):
            text, scheme = random_case(rng, 40, kind=o.LOCAL)
            idx = build_local(*transform(text, scheme), scheme)
            for j in range(1, idx.k + 1):
                for ident in range(idx.sigma ** j):
                    kids = [idx.l[j + 1][ident * idx.sigma + c] for c in range(idx.sigma)]
                    assert sum(kids) == idx.l[j][ident]

    def test_cap(self):
        with pytest.raises(CapExceededError):
            LocalIndex(b"aaaaacabb", 6, o.local(A, 3, {}), cap=50)

    def test_wrong_k(self):
        with pytest.raises(ValueError):
            build_local(b"aaaaacabb", 6, fig4(), k=2)

    @pytest.mark.parametrize("L,I", [(b"", 1), (b"abc", 0), (b"abc", 4)])
    def test_bad_input(self, L, I):
        with pytest.raises(InvalidTransformError):
            build_local(L, I, o.bwt(A))


class TestCount:
    def test_backward_extend(self, idx4):
        assert backward_extend(idx4, Range(4, 2), 0, A.encode(b"a")) == Range(6, 2)
        assert backward_extend(idx4, EMPTY, 0, A.encode(b"a")) == EMPTY

    @pytest.mark.parametrize("x,want", [(b"aab", Range(6, 2)), (b"a", Range(4, 6)), (b"cb", EMPTY),
                                        (b"aabaaabac", Range(6, 1)), (b"abaab", EMPTY)])
    def test_examples(self, idx4, x, want):
        assert count_local(idx4, x) == want

    def test_invalid_symbol(self, idx4):
        with pytest.raises(InvalidSymbolError):
            count_local(idx4, b"d")

    @given(text_and_scheme(max_len=48, kinds=LOCAL_KINDS))
    def test_oracle(self, case):
        text, scheme = case
        idx = build_local(*transform(text, scheme), scheme)
        m = sorted_rotation_matrix(text, scheme)
        syms = scheme.alphabet.symbols
        pats = [bytes(p) for h in range(1, 5) for p in itertools.product(syms, repeat=h)]
        doubled = text * 3
        pats += [doubled[i:i + 8] for i in range(len(text))]
        for p in pats:
            assert count_local(idx, p) == oracle_range(text, scheme, p, m)

    def test_rank_budget(self):
        rng = random.Random(2)
        text = bytes(rng.choice(b"acg") for _ in range(5000)) + b"$"
        alpha = Alphabet.from_text(text)
        for k in (1, 2, 3):
            scheme = o.LocalScheme(alpha, k, {}, o.Permutation((3, 1, 0, 2)))
            idx = build_local(*transform(text, scheme), scheme)
            for p in (4, 16, 64):
                start = rng.randrange(len(text) - p)
                idx.seq.rank_calls = 0
                r = count_local(idx, text[start:start + p])
                assert r.length >= 1
                assert idx.seq.rank_calls <= 2 * p


class TestStepRight:
    def test_fig4(self, idx4):
        assert step_right(idx4, 6) == 3

    def test_single(self):
        assert step_right(build_local(b"a", 1, o.bwt(Alphabet(b"a"))), 1) == 1

    def test_range_error(self, idx4):
        with pytest.raises(IndexError):
            step_right(idx4, 10)

    @given(text_and_scheme(max_len=40, kinds=LOCAL_KINDS))
    def test_matches_rotation(self, case):
        text, scheme = case
        out = transform(text, scheme)
        idx = build_local(*out, scheme)
        m = sorted_rotation_matrix(text, scheme)
        where = {start: row for row, start in enumerate(m.row_starts, 1)}
        n = len(text)
        for i in range(1, n + 1):
            start = m.row_starts[i - 1]
            assert step_right(idx, i) == where[(start - 2) % n + 1]
        cur = 1
        for _ in range(n):
            cur = step_right(idx, cur)
        assert cur == 1

    @given(text_and_scheme(max_len=40, kinds=LOCAL_KINDS))
    def test_consecutive_rows_stay_consecutive(self, case):
        text, scheme = case
        idx = build_local(*transform(text, scheme), scheme)
        m = sorted_rotation_matrix(text, scheme)
        for i in range(1, len(text)):
            u, v = m.row(i), m.row(i + 1)
            if u[:idx.k] == v[:idx.k] and u[-1] == v[-1]:
                assert step_right(idx, i) + 1 == step_right(idx, i + 1)

    def test_fails_for_general_schemes(self):
        # Generalized ordering for s = baaabaabaac: rows 3 and 4 share first and last
        # symbols, yet their right rotations land on rows 11 and 9.
        alpha = Alphabet(b"abc")
        text = b"baaabaabaac"
        scheme = o.explicit(alpha, {b"": b"acb", b"baa": b"cab"})
        rows = sorted_rotation_matrix(text, scheme).rows
        u, v = rows[2], rows[3]
        assert u[0] == v[0] and u[-1] == v[-1]
        assert rows.index(u[-1:] + u[:-1]) + 1 == 11
        assert rows.index(v[-1:] + v[:-1]) + 1 == 9
        local_rows = sorted_rotation_matrix(text, o.local(alpha, 1, {b"": b"acb"})).rows
        for i in range(len(local_rows) - 1):
            u, v = local_rows[i], local_rows[i + 1]
            if u[0] == v[0] and u[-1] == v[-1]:
                assert local_rows.index(v[-1:] + v[:-1]) == local_rows.index(u[-1:] + u[:-1]) + 1


class TestInvert:
    def test_figure(self):
        assert invert_local(b"aaaaacabb", 6, fig4()) == FIG_TEXT
        assert invert_local(b"a", 1, o.bwt(Alphabet(b"a"))) == b"a"

    @pytest.mark.parametrize("L,I", [(b"aabb", 1), (b"abab", 2), (b"ccc", 1)])
    def test_invalid(self, L, I):
        with pytest.raises(InvalidTransformError):
            invert_local(L, I, o.bwt(A))

    def test_round_trips(self):
        rng = random.Random(7)
        for _ in range(300):
            text, scheme = random_case(rng, 64, kind=o.LOCAL)
            assert invert_local(*transform(text, scheme), scheme) == text


class TestToehold:
    def test_fig4_samples(self, idx4):
        marks = idx4.samples.marks
        assert sorted(marks) == [5, 6, 7, 9]
        assert [marks[r] for r in (5, 6, 7, 9)] == [5, 9, 4, 7]
        last = idx4.samples.last_row
        assert (last[A.code(ord("b"))], last[A.code(ord("c"))], last[A.code(ord("a"))]) == (7, 9, 8)
        assert len(marks) == run_count(b"aaaaacabb")

    def test_fig4_locate(self, idx4):
        assert count_and_locate(idx4, b"c") == (Range(3, 1), 9)
        assert count_and_locate(idx4, b"aab") == (Range(6, 2), 5)
        assert count_and_locate(idx4, b"cc") == (EMPTY, None)
        assert locate(idx4, b"a")[1][0] == 8
        assert sorted(locate(idx4, b"a")[1]) == [1, 2, 4, 5, 6, 8]
        assert locate(idx4, b"a", limit=2)[1] == [8, locate(idx4, b"a")[1][1]]
        assert locate(idx4, b"cb") == (EMPTY, [])

    def test_short_pattern_is_count_only(self):
        idx = build_local(*transform(FIG_TEXT, o.local(A, 2, {b"a": b"cab"})), o.local(A, 2, {b"a": b"cab"}))
        r, pos = count_and_locate(idx, b"a")
        assert r.length == 6 and pos is None

    @given(text_and_scheme(max_len=48, kinds=LOCAL_KINDS))
    def test_oracle(self, case):
        text, scheme = case
        idx = build_local(*transform(text, scheme), scheme, samples=True)
        m = sorted_rotation_matrix(text, scheme)
        n = len(text)
        assert len(idx.samples.marks) == run_count(idx.seq.codes)
        for i in range(1, n + 1):
            assert row_position(idx, i) == m.row_starts[i - 1]
        doubled = text * (idx.k + 8)
        for i in range(n):
            for h in range(idx.k, idx.k + 6):
                x = doubled[i:i + h]
                r, pos = count_and_locate(idx, x)
                assert r == oracle_range(text, scheme, x, m)
                assert pos == m.row_starts[r.last - 1]
                assert doubled[pos - 1:pos - 1 + h] == x
                _, every = locate(idx, x)
                assert sorted(every) == sorted(m.row_starts[r.b - 1:r.last])


def test_matches_pair_alphabet_view():
    from cabwt.oracle import pair_alphabet_bwt
    rng = random.Random(9)
    for _ in range(50):
        text, scheme = random_case(rng, 32, kind=o.LOCAL)
        if scheme.k == 1:
            assert pair_alphabet_bwt(text, scheme) == oracle_transform(text, scheme) == transform(text, scheme)
