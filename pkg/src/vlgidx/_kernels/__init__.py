"""Kernel backend selection.

The compiled Cython extension is preferred; the numpy fallback is used
when the extension is missing or when ``VLGIDX_PURE=1`` is set in the
environment.  Both backends expose the same functions with identical
observable behaviour:

    suffix_array_bytes, radix_sort, baseline_sort, intersect_gapped,
    filter_predecessors, mark_forward, mark_backward, prune, kmp_search,
    text_check_forward, text_check_backward, crc64
"""

import os

from . import pure

if os.environ.get("VLGIDX_PURE"):
    backend = pure
else:
    try:
        from . import _core as backend  # type: ignore[no-redef]
    except ImportError:
        backend = pure

BACKEND_NAME = backend.NAME


def get_backend(name: str | None = None):
    """Return a kernel module by name ('compiled', 'pure', or None=active)."""
    if name is None:
        return backend
    if name == "pure":
        return pure
    if name == "compiled":
        from . import _core
        return _core
    raise ValueError(f"unknown backend {name!r}")
