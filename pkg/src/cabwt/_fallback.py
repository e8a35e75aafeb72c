"""Pure-Python kernels; same signatures and results as the compiled ``_native``."""
import numpy as np


def lcp_kasai(codes, sa):
    """``lcp[i]`` = longest common prefix of suffixes ``sa[i-1]`` and ``sa[i]``; ``lcp[0] = 0``."""
    text = codes.tobytes() if hasattr(codes, "tobytes") else bytes(codes)
    sa_list = np.asarray(sa, dtype=np.int64).tolist()
    n = len(sa_list)
    rank = [0] * n
    for i, p in enumerate(sa_list):
        rank[p] = i
    lcp = [0] * n
    h = 0
    for p in range(n):
        r = rank[p]
        if r == 0:
            h = 0
            continue
        q = sa_list[r - 1]
        while p + h < n and q + h < n and text[p + h] == text[q + h]:
            h += 1
        lcp[r] = h
        if h:
            h -= 1
    return np.asarray(lcp, dtype=np.int64)


def lcp_tree(lcp):
    """Internal nodes of the suffix tree from the LCP array, children before parents.

    Returns ``(lb, rb, depth, child_ptr, child_ids)``.  Leaves are ids
    ``0..n-1`` (suffix-array rows), internal node ``j`` has id ``n + j`` and
    children ``child_ids[child_ptr[j]:child_ptr[j+1]]`` in row order.
    """
    lcp = np.asarray(lcp, dtype=np.int64).tolist()
    n = len(lcp)
    lb_out, rb_out, depth_out = [], [], []
    ptr = [0]
    kids = []
    # stack entries: [depth, lb, children]
    stack = [[0, 0, []]]
    for i in range(n):
        h = lcp[i + 1] if i + 1 < n else 0
        last, last_lb = i, i
        while stack[-1][0] > h:
            depth, lb, children = stack.pop()
            children.append(last)
            last = n + len(depth_out)
            last_lb = lb
            lb_out.append(lb)
            rb_out.append(i)
            depth_out.append(depth)
            kids.extend(children)
            ptr.append(len(kids))
        if stack[-1][0] == h:
            stack[-1][2].append(last)
        else:
            stack.append([h, last_lb, [last]])
    depth, lb, children = stack.pop()
    lb_out.append(lb)
    rb_out.append(n - 1)
    depth_out.append(depth)
    kids.extend(children)
    ptr.append(len(kids))
    as64 = lambda v: np.asarray(v, dtype=np.int64)  # noqa: E731
    return as64(lb_out), as64(rb_out), as64(depth_out), as64(ptr), as64(kids)


def leaf_order(n, child_ptr, child_ids):
    """Leaves in depth-first order, children visited as stored; the root is the last node."""
    ptr = np.asarray(child_ptr, dtype=np.int64).tolist()
    kids = np.asarray(child_ids, dtype=np.int64).tolist()
    root = n + len(ptr) - 2
    out = []
    stack = [root]
    while stack:
        v = stack.pop()
        if v < n:
            out.append(v)
            continue
        j = v - n
        stack.extend(reversed(kids[ptr[j]:ptr[j + 1]]))
    return np.asarray(out, dtype=np.int64)


def local_lf(last, ctx_of_row, base_tab, before_tab):
    """0-based row reached from each row by one circular right shift.

    ``base_tab[x, z]`` is the 0-based first row prefixed by symbol ``x``
    followed by context ``z``; ``before_tab[z, x]`` counts ``x`` in L above
    the first row of context ``z``.
    """
    last = bytes(last)
    ctx = np.asarray(ctx_of_row, dtype=np.int64).tolist()
    base = np.asarray(base_tab, dtype=np.int64).tolist()
    before = np.asarray(before_tab, dtype=np.int64).tolist()
    seen = [0] * len(base)
    lf = [0] * len(last)
    for i, x in enumerate(last):
        z = ctx[i]
        lf[i] = base[x][z] + seen[x] - before[z][x]
        seen[x] += 1
    return np.asarray(lf, dtype=np.int64)


def lf_walk(lf, first, start):
    """Text codes read off the first column while walking ``lf`` from ``start``.

    Raises ``ValueError`` unless the walk is a single cycle through all rows.
    """
    lf = np.asarray(lf, dtype=np.int64).tolist()
    first = bytes(first)
    n = len(lf)
    out = bytearray(n)
    out[0] = first[start]
    cur = lf[start]
    for t in range(n - 1, 0, -1):
        if cur == start:
            raise ValueError("walk closed early")
        out[t] = first[cur]
        cur = lf[cur]
    if cur != start:
        raise ValueError("walk did not close")
    return np.frombuffer(bytes(out), dtype=np.uint8).copy()


def lf_positions(lf, start):
    """1-based text position of the rotation held by each row."""
    lf = np.asarray(lf, dtype=np.int64).tolist()
    n = len(lf)
    pos = [0] * n
    cur = start
    for p in range(1, n + 1):
        pos[cur] = 1 if p == 1 else n - p + 2
        cur = lf[cur]
    if cur != start or 0 in pos:
        raise ValueError("walk is not a single cycle")
    return np.asarray(pos, dtype=np.int64)
