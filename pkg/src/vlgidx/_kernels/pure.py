"""Pure numpy/Python fallback kernels.

Mirrors the function set of the compiled ``_core`` extension; selected at
import time when the extension is unavailable or ``VLGIDX_PURE=1`` is set.
Correctness-identical, but large inputs are markedly slower (notably
suffix-array construction, which here is prefix doubling rather than
SA-IS).
"""

from __future__ import annotations

import numpy as np

NAME = "pure"


def suffix_array_bytes(data: bytes) -> np.ndarray:
    """Suffix array by prefix doubling (O(n log n) lexsort rounds)."""
    n = len(data)
    if n == 0:
        return np.empty(0, dtype=np.int32)
    rank = np.frombuffer(data, dtype=np.uint8).astype(np.int64)
    order = np.empty(n, dtype=np.int64)
    k = 1
    while True:
        key_lo = np.full(n, -1, dtype=np.int64)
        if k < n:
            key_lo[: n - k] = rank[k:]
        order = np.lexsort((key_lo, rank))
        changed = np.ones(n, dtype=bool)
        changed[1:] = (rank[order[1:]] != rank[order[:-1]]) | (
            key_lo[order[1:]] != key_lo[order[:-1]]
        )
        new_rank = np.empty(n, dtype=np.int64)
        new_rank[order] = np.cumsum(changed) - 1
        rank = new_rank
        if rank[order[-1]] == n - 1:
            break
        k *= 2
    dtype = np.int32 if n < 2**31 else np.int64
    return order.astype(dtype)


def _as_positions(a) -> np.ndarray:
    arr = np.ascontiguousarray(a)
    if arr.dtype not in (np.dtype(np.int32), np.dtype(np.int64)):
        raise TypeError("expected int32 or int64 positions")
    return arr


def radix_sort(a) -> np.ndarray:
    """LSD radix sort, radix 256, as stable byte-keyed passes."""
    arr = _as_positions(a)
    if arr.shape[0] <= 1:
        return arr.copy()
    out = arr.copy()
    nbytes = 1
    mx = int(out.max())
    while (mx >> (8 * nbytes)) != 0:
        nbytes += 1
    for p in range(nbytes):
        key = (out >> (8 * p)) & 0xFF
        out = out[np.argsort(key, kind="stable")]
    return out


def baseline_sort(a) -> np.ndarray:
    """The library comparison sort of this backend: numpy's introsort."""
    return np.sort(_as_positions(a), kind="quicksort")


def intersect_gapped(a, b, delta: int, Delta: int) -> np.ndarray:
    a = _as_positions(a)
    b = _as_positions(b)
    if a.shape[0] == 0 or b.shape[0] == 0:
        return b[:0].copy()
    lo = np.searchsorted(a, b.astype(np.int64) - Delta, side="left")
    hi = np.searchsorted(a, b.astype(np.int64) - delta, side="right")
    return b[hi > lo].copy()


def filter_predecessors(a, b, delta: int, Delta: int) -> np.ndarray:
    a = _as_positions(a)
    b = _as_positions(b)
    if a.shape[0] == 0 or b.shape[0] == 0:
        return a[:0].copy()
    lo = np.searchsorted(b, a.astype(np.int64) + delta, side="left")
    hi = np.searchsorted(b, a.astype(np.int64) + Delta, side="right")
    return a[hi > lo].copy()


def _set_block_ranges(words: np.ndarray, nblocks: int, lo: np.ndarray,
                      hi: np.ndarray) -> None:
    """OR the block ranges [lo_i, hi_i] into the bit words."""
    if lo.shape[0] == 0:
        return
    diff = np.zeros(nblocks + 1, dtype=np.int64)
    np.add.at(diff, lo, 1)
    np.add.at(diff, hi + 1, -1)
    covered = np.cumsum(diff[:-1]) > 0
    pad = (-covered.shape[0]) % 64
    if pad:
        covered = np.concatenate([covered, np.zeros(pad, dtype=bool)])
    packed = np.packbits(covered, bitorder="little").view(np.uint64)
    words |= packed


def mark_forward(words: np.ndarray, nblocks: int, shift: int, positions,
                 delta: int, Delta: int) -> None:
    pos = _as_positions(positions).astype(np.int64)
    lo = (pos + delta) >> shift
    hi = (pos + Delta) >> shift
    keep = lo < nblocks
    lo = lo[keep]
    hi = np.minimum(hi[keep], nblocks - 1)
    _set_block_ranges(words, nblocks, lo, hi)


def mark_backward(words: np.ndarray, nblocks: int, shift: int, positions,
                  delta: int, Delta: int) -> None:
    pos = _as_positions(positions).astype(np.int64)
    keep = pos - delta >= 0
    pos = pos[keep]
    lo = np.maximum(pos - Delta, 0) >> shift
    hi = np.minimum((pos - delta) >> shift, nblocks - 1)
    _set_block_ranges(words, nblocks, lo, hi)


def prune(words: np.ndarray, shift: int, candidates) -> np.ndarray:
    cand = _as_positions(candidates)
    if cand.shape[0] == 0:
        return cand.copy()
    blk = cand.astype(np.int64) >> shift
    bits = (words[blk >> 6] >> (blk & 63).astype(np.uint64)) & 1
    return cand[bits.astype(bool)].copy()


def _kmp_failure(needle: bytes) -> list[int]:
    m = len(needle)
    fail = [0] * m
    k = 0
    for i in range(1, m):
        while k > 0 and needle[i] != needle[k]:
            k = fail[k - 1]
        if needle[i] == needle[k]:
            k += 1
        fail[i] = k
    return fail


def _kmp_scan(hay, start: int, end: int, needle: bytes, fail: list[int]):
    """Yield match start offsets of needle in hay[start:end], ascending."""
    m = len(needle)
    k = 0
    for i in range(start, end):
        c = hay[i]
        while k > 0 and c != needle[k]:
            k = fail[k - 1]
        if c == needle[k]:
            k += 1
        if k == m:
            yield i - m + 1
            k = fail[k - 1]


def kmp_search(hay, needle) -> np.ndarray:
    hay = bytes(hay)
    needle = bytes(needle)
    if not needle:
        raise ValueError("empty needle")
    fail = _kmp_failure(needle)
    return np.array(list(_kmp_scan(hay, 0, len(hay), needle, fail)),
                    dtype=np.int64)


def text_check_forward(text, anchors, needle, delta: int, Delta: int) -> np.ndarray:
    text = bytes(text)
    anchors_arr = _as_positions(anchors)
    needle = bytes(needle)
    if not needle:
        raise ValueError("empty subpattern")
    n = len(text)
    m = len(needle)
    fail = _kmp_failure(needle)
    out: list[int] = []
    last = -1
    scanned = 0
    for a in anchors_arr.tolist():
        s = a + delta
        if s >= n:
            continue
        e = min(n, a + Delta + m)
        if e - s < m:
            continue
        start = max(s, scanned - m + 1)
        if start < e:
            for pos in _kmp_scan(text, start, e, needle, fail):
                if pos > last:
                    out.append(pos)
                    last = pos
        if e > scanned:
            scanned = e
    return np.array(out, dtype=anchors_arr.dtype)


def text_check_backward(text, anchors, needle, delta: int, Delta: int,
                        allowed=None) -> np.ndarray:
    text = bytes(text)
    anchors_arr = _as_positions(anchors)
    needle = bytes(needle)
    if not needle:
        raise ValueError("empty subpattern")
    n = len(text)
    m = len(needle)
    fail = _kmp_failure(needle)
    allow = None if allowed is None else _as_positions(allowed)
    keep = np.zeros(anchors_arr.shape[0], dtype=bool)
    for idx, a in enumerate(anchors_arr.tolist()):
        if a - delta < 0:
            continue
        lo = max(0, a - Delta)
        e = min(n, a - delta + m)
        if e - lo < m:
            continue
        for pos in _kmp_scan(text, lo, e, needle, fail):
            if allow is None:
                keep[idx] = True
                break
            j = int(np.searchsorted(allow, pos))
            if j < allow.shape[0] and allow[j] == pos:
                keep[idx] = True
                break
    return anchors_arr[keep].copy()


_CRC_POLY = 0xC96C5795D7870F42
_CRC_TABLE: list[int] = []


def _crc_table() -> list[int]:
    if not _CRC_TABLE:
        for i in range(256):
            crc = i
            for _ in range(8):
                crc = (crc >> 1) ^ _CRC_POLY if crc & 1 else crc >> 1
            _CRC_TABLE.append(crc)
    return _CRC_TABLE


def crc64(data, crc: int = 0) -> int:
    """Running CRC-64/XZ; chain calls by passing the previous value."""
    table = _crc_table()
    c = ~crc & 0xFFFFFFFFFFFFFFFF
    for byte in bytes(data):
        c = table[(c ^ byte) & 0xFF] ^ (c >> 8)
    return ~c & 0xFFFFFFFFFFFFFFFF
