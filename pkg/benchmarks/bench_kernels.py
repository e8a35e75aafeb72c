"""Time the compiled kernels against the pure-Python fallback.

    python benchmarks/bench_kernels.py --sizes 100000 1000000
"""
import argparse
import random
import time

import numpy as np

from cabwt import _fallback, orderings, suffix_index
from cabwt.local import _lf, build_local

try:
    from cabwt import _native
except ImportError:  # extension not built
    _native = None


def timed(fn, *args, repeat=3):
    best = float("inf")
    for _ in range(repeat):
        t = time.perf_counter()
        fn(*args)
        best = min(best, time.perf_counter() - t)
    return best


def workload(n, seed):
    rng = np.random.default_rng(seed)
    text = rng.choice(np.frombuffer(b"acg", dtype=np.uint8), n - 1).tobytes() + b"$"
    alpha = orderings.Alphabet.from_text(text)
    r = random.Random(seed)

    def perm():
        order = list(range(alpha.size))
        r.shuffle(order)
        return orderings.Permutation(tuple(order))

    scheme = orderings.LocalScheme(alpha, 1, {bytes([c]): perm() for c in range(alpha.size)}, perm())
    view = suffix_index.build(text, alpha)
    out = suffix_index.transform_view(view, scheme)
    idx = build_local(out.L, out.I, scheme)
    lf = _lf(idx)
    rows = suffix_index.row_order(view, scheme)
    first = view.codes[view.sa[rows]].tobytes()
    return view, lf, first, out.I - 1


def main():
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("--sizes", type=int, nargs="+", default=[10 ** 4, 10 ** 5, 10 ** 6])
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()

    backends = [("python", _fallback)] + ([("cython", _native)] if _native else [])
    print(f"{'kernel':<14}{'n':>10}" + "".join(f"{name:>12}" for name, _ in backends) + f"{'speedup':>10}")
    for n in args.sizes:
        view, lf, first, start = workload(n, args.seed)
        cases = {
            "lcp_kasai": lambda m: m.lcp_kasai(view.codes, view.sa),
            "lcp_tree": lambda m: m.lcp_tree(view.lcp),
            "leaf_order": lambda m: m.leaf_order(n, view.child_ptr, view.child_ids),
            "lf_walk": lambda m: m.lf_walk(lf, first, start),
            "lf_positions": lambda m: m.lf_positions(lf, start),
        }
        for name, fn in cases.items():
            times = [timed(fn, mod, repeat=args.repeat) for _, mod in backends]
            speed = f"{times[0] / times[-1]:>9.1f}x" if len(times) > 1 else ""
            print(f"{name:<14}{n:>10}" + "".join(f"{t:>11.4f}s" for t in times) + speed)


if __name__ == "__main__":
    main()
