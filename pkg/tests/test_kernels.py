"""The compiled kernels and the pure-Python fallback agree."""
import numpy as np
import pytest
from hypothesis import given

from cabwt import _fallback, kernels
from cabwt.local import build_local
from cabwt.suffix_index import build, row_order, transform_view

from helpers import random_case
from strategies import text_and_scheme

native = pytest.importorskip("cabwt._native")
BACKENDS = [_fallback, native]


def test_backend_selected():
    assert kernels.BACKEND in ("cython", "python")


def test_pure_env(monkeypatch):
    import importlib
    monkeypatch.setenv("CABWT_PURE", "1")
    mod = importlib.reload(kernels)
    try:
        assert mod.BACKEND == "python" and mod.lcp_tree is _fallback.lcp_tree
    finally:
        monkeypatch.delenv("CABWT_PURE")
        importlib.reload(kernels)


@given(text_and_scheme(max_len=80))
def test_tree_kernels_agree(case):
    text, scheme = case
    view = build(text, scheme.alphabet)
    lcps = [m.lcp_kasai(view.codes, view.sa) for m in BACKENDS]
    assert np.array_equal(*lcps)
    trees = [m.lcp_tree(view.lcp) for m in BACKENDS]
    for a, b in zip(*trees):
        assert np.array_equal(a, b)
    orders = [m.leaf_order(view.n, view.child_ptr, view.child_ids) for m in BACKENDS]
    assert np.array_equal(*orders)


@pytest.mark.parametrize("seed", range(30))
def test_lf_kernels_agree(seed):
    import random
    text, scheme = random_case(random.Random(seed), 80, kind="local")
    view = build(text, scheme.alphabet)
    out = transform_view(view, scheme)
    idx = build_local(out.L, out.I, scheme)
    ids = np.asarray(idx._ctx_ids, dtype=np.int64)
    ctx = np.repeat(ids, [idx.l[idx.k][z] for z in idx._ctx_ids])
    k, sigma = idx.k, idx.sigma
    base = np.asarray(idx.b[k + 1]).reshape(sigma, sigma ** k) - 1
    before = np.asarray(idx.before).reshape(sigma ** k, sigma)
    lfs = [m.local_lf(idx.seq.codes, ctx, base, before) for m in BACKENDS]
    assert np.array_equal(*lfs)
    lf = lfs[0]
    rows = row_order(view, scheme)
    first = view.codes[view.sa[rows]].tobytes()
    walks = [m.lf_walk(lf, first, out.I - 1) for m in BACKENDS]
    assert np.array_equal(*walks)
    assert scheme.alphabet.decode(walks[0].tobytes()) == text
    pos = [m.lf_positions(lf, out.I - 1) for m in BACKENDS]
    assert np.array_equal(*pos)
    assert np.array_equal(pos[0] - 1, view.sa[rows])


@pytest.mark.parametrize("mod", BACKENDS, ids=["python", "cython"])
def test_walk_errors(mod):
    lf = np.array([1, 0, 2], dtype=np.int64)  # two cycles
    with pytest.raises(ValueError):
        mod.lf_walk(lf, b"abc", 0)
    with pytest.raises(ValueError):
        mod.lf_positions(lf, 0)


@pytest.mark.parametrize("mod", BACKENDS, ids=["python", "cython"])
def test_single_leaf(mod):
    lb, rb, depth, ptr, kids = mod.lcp_tree(np.zeros(1, dtype=np.int64))
    assert lb.tolist() == [0] and kids.tolist() == [0] and ptr.tolist() == [0, 1]
    assert mod.leaf_order(1, ptr, kids).tolist() == [0]
