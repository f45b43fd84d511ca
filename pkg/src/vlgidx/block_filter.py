"""Block-granular candidate filter.

One bit per block of ``block_size`` consecutive text positions (bit i
covers positions [i*b, (i+1)*b) clipped to the text).  Marking covers the
gap window of each occurrence so that partner candidates in unmarked
blocks can be discarded; pruning is sound (may keep extra candidates,
never drops a gap-consistent one).
"""

from __future__ import annotations

import numpy as np

from ._kernels import backend

DEFAULT_FILTER_BUDGET = 16 * 1024 * 1024  # bytes of bitvector the filter may use
MAX_BITS_PER_OCCURRENCE = 4


def choose_block_size(n: int, delta: int, Delta: int,
                      budget_bytes: int = DEFAULT_FILTER_BUDGET) -> int:
    """Smallest power-of-two block size keeping the filter within budget
    and the per-occurrence marking cost at most MAX_BITS_PER_OCCURRENCE bits."""
    width = Delta - delta
    b = 1
    while (-(-n // b) > budget_bytes * 8) or (-(-width // b) > MAX_BITS_PER_OCCURRENCE):
        b <<= 1
    return b


class BlockFilter:
    """Single-writer scratch bitvector; reuse via clear() between rounds."""

    def __init__(self, n: int, block_size: int):
        if block_size < 1 or block_size & (block_size - 1):
            raise ValueError("block size must be a power of two")
        self.n = n
        self.block_size = block_size
        self.shift = block_size.bit_length() - 1
        self.nblocks = max(1, -(-n // block_size))
        self.words = np.zeros((self.nblocks + 63) // 64, dtype=np.uint64)

    def mark_forward(self, positions, delta: int, Delta: int) -> None:
        backend.mark_forward(self.words, self.nblocks, self.shift,
                             _positions(positions), delta, Delta)

    def mark_backward(self, positions, delta: int, Delta: int) -> None:
        backend.mark_backward(self.words, self.nblocks, self.shift,
                              _positions(positions), delta, Delta)

    def prune(self, candidates) -> np.ndarray:
        return backend.prune(self.words, self.shift, _positions(candidates))

    def clear(self) -> None:
        self.words[:] = 0

    def test(self, position: int) -> bool:
        blk = position >> self.shift
        return bool((int(self.words[blk >> 6]) >> (blk & 63)) & 1)


def _positions(a) -> np.ndarray:
    arr = np.ascontiguousarray(a)
    if arr.dtype not in (np.dtype(np.int32), np.dtype(np.int64)):
        arr = arr.astype(np.int64)
    return arr
