"""Backend selection for the hot subset-enumeration kernels.

Both backends expose the same two functions:

  exists_avoiding_scheme(adj, n, k, member, memo, choice) -> (found, top_w)
      Decides whether some W (|W| <= k) makes every component of G - W
      "refinable" against the flap-membership table; fills memo/choice so
      callers can reconstruct the witness decomposition.

  dp_treewidth(adj, n) -> int
      Exact tree-width by subset DP over elimination orderings.

The numba backend is the default; set TWD_PURE_PYTHON=1 (or run without
numba installed) to get the pure-Python reference implementation.  Both
follow identical iteration orders, so results are bit-for-bit equal.
"""
import os


def _select():
    if os.environ.get("TWD_PURE_PYTHON") == "1":
        from . import python_impl as impl

        return impl, "python"
    try:
        from . import numba_impl as impl

        return impl, "numba"
    except ImportError:
        from . import python_impl as impl

        return impl, "python"


_impl, BACKEND = _select()
exists_avoiding_scheme = _impl.exists_avoiding_scheme
dp_treewidth = _impl.dp_treewidth
