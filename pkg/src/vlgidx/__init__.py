"""vlgidx: suffix-array text index with fast variable-length-gap search.

Hot kernels run in a compiled Cython extension when available, with a
numpy fallback selected at import (``vlgidx._kernels.BACKEND_NAME`` tells
which one is active; set ``VLGIDX_PURE=1`` to force the fallback).
"""

from ._kernels import BACKEND_NAME
from .block_filter import BlockFilter, choose_block_size
from .engine import (MatchResult, Strategy, intersect_gapped, kmp_search,
                     oracle_search, plan_pair, radix_sort, search,
                     text_check_backward, text_check_forward)
from .pattern import (GapConstraint, PatternSyntaxError, VlgPattern,
                      generate_patterns, parse_pattern, render_pattern,
                      top_frequent_substrings)
from .text_index import (CapacityError, IndexChecksumError, IndexFormatError,
                         IndexTruncatedError, SaInterval, SuffixArrayIndex,
                         build_index, extract_positions, find_interval,
                         load_index, save_index)

__version__ = "0.1.0"

__all__ = [
    "BACKEND_NAME", "BlockFilter", "CapacityError", "GapConstraint",
    "IndexChecksumError", "IndexFormatError", "IndexTruncatedError",
    "MatchResult", "PatternSyntaxError", "SaInterval", "Strategy",
    "SuffixArrayIndex", "VlgPattern", "build_index", "choose_block_size",
    "extract_positions", "find_interval", "generate_patterns",
    "intersect_gapped", "kmp_search", "load_index", "oracle_search",
    "parse_pattern", "plan_pair", "radix_sort", "render_pattern",
    "save_index", "search", "text_check_backward", "text_check_forward",
    "top_frequent_substrings",
]
