# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels; see ``_fallback`` for the reference semantics."""
import numpy as np
cimport numpy as cnp

cnp.import_array()

ctypedef cnp.int64_t i64
ctypedef cnp.uint8_t u8


def lcp_kasai(codes, sa):
    cdef const u8[::1] text = np.ascontiguousarray(codes, dtype=np.uint8)
    cdef const i64[::1] s = np.ascontiguousarray(sa, dtype=np.int64)
    cdef Py_ssize_t n = s.shape[0]
    cdef cnp.ndarray[i64, ndim=1] rank_arr = np.empty(n, dtype=np.int64)
    cdef cnp.ndarray[i64, ndim=1] lcp_arr = np.zeros(n, dtype=np.int64)
    cdef i64[::1] rank = rank_arr
    cdef i64[::1] lcp = lcp_arr
    cdef Py_ssize_t i, p, q, r
    cdef i64 h = 0
    for i in range(n):
        rank[s[i]] = i
    for p in range(n):
        r = rank[p]
        if r == 0:
            h = 0
            continue
        q = s[r - 1]
        while p + h < n and q + h < n and text[p + h] == text[q + h]:
            h += 1
        lcp[r] = h
        if h > 0:
            h -= 1
    return lcp_arr


def lcp_tree(lcp_in):
    cdef const i64[::1] lcp = np.ascontiguousarray(lcp_in, dtype=np.int64)
    cdef Py_ssize_t n = lcp.shape[0]
    cdef Py_ssize_t cap = n if n > 1 else 1
    lb_a = np.empty(cap, dtype=np.int64)
    rb_a = np.empty(cap, dtype=np.int64)
    depth_a = np.empty(cap, dtype=np.int64)
    ptr_a = np.zeros(cap + 1, dtype=np.int64)
    kids_a = np.empty(n + cap, dtype=np.int64)
    cdef i64[::1] lb_out = lb_a
    cdef i64[::1] rb_out = rb_a
    cdef i64[::1] depth_out = depth_a
    cdef i64[::1] ptr = ptr_a
    cdef i64[::1] kids = kids_a
    # Pending children live on a second stack; each node records where its run starts.
    st_depth_a = np.empty(n + 1, dtype=np.int64)
    st_lb_a = np.empty(n + 1, dtype=np.int64)
    st_kid0_a = np.empty(n + 1, dtype=np.int64)
    pend_a = np.empty(2 * n + 1, dtype=np.int64)
    cdef i64[::1] st_depth = st_depth_a
    cdef i64[::1] st_lb = st_lb_a
    cdef i64[::1] st_kid0 = st_kid0_a
    cdef i64[::1] pend = pend_a
    cdef Py_ssize_t top = 0, npend = 0, nodes = 0, nkids = 0
    cdef Py_ssize_t i, t
    cdef i64 h, last, last_lb, d, lb, k0
    st_depth[0] = 0
    st_lb[0] = 0
    st_kid0[0] = 0
    for i in range(n):
        h = lcp[i + 1] if i + 1 < n else 0
        last = i
        last_lb = i
        while st_depth[top] > h:
            d = st_depth[top]
            lb = st_lb[top]
            k0 = st_kid0[top]
            top -= 1
            pend[npend] = last
            npend += 1
            for t in range(k0, npend):
                kids[nkids] = pend[t]
                nkids += 1
            npend = k0
            lb_out[nodes] = lb
            rb_out[nodes] = i
            depth_out[nodes] = d
            nodes += 1
            ptr[nodes] = nkids
            last = n + nodes - 1
            last_lb = lb
        if st_depth[top] == h:
            pend[npend] = last
            npend += 1
        else:
            top += 1
            st_depth[top] = h
            st_lb[top] = last_lb
            st_kid0[top] = npend
            pend[npend] = last
            npend += 1
    for t in range(st_kid0[0], npend):
        kids[nkids] = pend[t]
        nkids += 1
    lb_out[nodes] = st_lb[0]
    rb_out[nodes] = n - 1
    depth_out[nodes] = st_depth[0]
    nodes += 1
    ptr[nodes] = nkids
    return (lb_a[:nodes].copy(), rb_a[:nodes].copy(), depth_a[:nodes].copy(),
            ptr_a[:nodes + 1].copy(), kids_a[:nkids].copy())


def leaf_order(Py_ssize_t n, child_ptr, child_ids):
    cdef const i64[::1] ptr = np.ascontiguousarray(child_ptr, dtype=np.int64)
    cdef const i64[::1] kids = np.ascontiguousarray(child_ids, dtype=np.int64)
    cdef Py_ssize_t m = ptr.shape[0] - 1
    out_a = np.empty(n, dtype=np.int64)
    stack_a = np.empty(kids.shape[0] + 1, dtype=np.int64)
    cdef i64[::1] out = out_a
    cdef i64[::1] stack = stack_a
    cdef Py_ssize_t sp = 0, k = 0, t
    cdef i64 v, j
    stack[0] = n + m - 1
    sp = 1
    while sp > 0:
        sp -= 1
        v = stack[sp]
        if v < n:
            out[k] = v
            k += 1
            continue
        j = v - n
        t = ptr[j + 1] - 1
        while t >= ptr[j]:
            stack[sp] = kids[t]
            sp += 1
            t -= 1
    return out_a


def local_lf(last, ctx_of_row, base_tab, before_tab):
    cdef const u8[::1] L = np.frombuffer(bytes(last), dtype=np.uint8)
    cdef const i64[::1] ctx = np.ascontiguousarray(ctx_of_row, dtype=np.int64)
    cdef const i64[:, ::1] base = np.ascontiguousarray(base_tab, dtype=np.int64)
    cdef const i64[:, ::1] before = np.ascontiguousarray(before_tab, dtype=np.int64)
    cdef Py_ssize_t n = L.shape[0]
    seen_a = np.zeros(base.shape[0], dtype=np.int64)
    lf_a = np.empty(n, dtype=np.int64)
    cdef i64[::1] seen = seen_a
    cdef i64[::1] lf = lf_a
    cdef Py_ssize_t i
    cdef u8 x
    cdef i64 z
    for i in range(n):
        x = L[i]
        z = ctx[i]
        lf[i] = base[x, z] + seen[x] - before[z, x]
        seen[x] += 1
    return lf_a


def lf_walk(lf_in, first_in, Py_ssize_t start):
    cdef const i64[::1] lf = np.ascontiguousarray(lf_in, dtype=np.int64)
    cdef const u8[::1] first = np.frombuffer(bytes(first_in), dtype=np.uint8)
    cdef Py_ssize_t n = lf.shape[0]
    out_a = np.empty(n, dtype=np.uint8)
    cdef u8[::1] out = out_a
    cdef Py_ssize_t t
    cdef i64 cur
    out[0] = first[start]
    cur = lf[start]
    t = n - 1
    while t > 0:
        if cur == start:
            raise ValueError("walk closed early")
        out[t] = first[cur]
        cur = lf[cur]
        t -= 1
    if cur != start:
        raise ValueError("walk did not close")
    return out_a


def lf_positions(lf_in, Py_ssize_t start):
    cdef const i64[::1] lf = np.ascontiguousarray(lf_in, dtype=np.int64)
    cdef Py_ssize_t n = lf.shape[0]
    pos_a = np.zeros(n, dtype=np.int64)
    cdef i64[::1] pos = pos_a
    cdef Py_ssize_t p
    cdef i64 cur = start
    for p in range(1, n + 1):
        if pos[cur] != 0:
            raise ValueError("walk is not a single cycle")
        pos[cur] = 1 if p == 1 else n - p + 2
        cur = lf[cur]
    if cur != start:
        raise ValueError("walk is not a single cycle")
    return pos_a
