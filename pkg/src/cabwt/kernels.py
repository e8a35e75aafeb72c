"""Hot loops, compiled when the extension is built.

Set ``CABWT_PURE=1`` to force the pure-Python versions.
"""
import os

from . import _fallback

if os.environ.get("CABWT_PURE"):
    _impl = _fallback
    BACKEND = "python"
else:
    try:
        from . import _native as _impl
        BACKEND = "cython"
    except ImportError:
        _impl = _fallback
        BACKEND = "python"

lcp_kasai = _impl.lcp_kasai
lcp_tree = _impl.lcp_tree
leaf_order = _impl.leaf_order
local_lf = _impl.local_lf
lf_walk = _impl.lf_walk
lf_positions = _impl.lf_positions

__all__ = ["BACKEND", "lcp_kasai", "lcp_tree", "leaf_order", "local_lf", "lf_walk", "lf_positions"]
