"""Suffix-array index over a byte text: build, query, persist.

The text is kept as raw bytes (no encoding assumptions, no sentinel); a
shorter suffix that is a prefix of a longer one sorts first.  All
occurrences of a substring occupy one contiguous interval of the suffix
array, found by two binary searches.

Index file format (little-endian):

    magic   8 bytes  b"VLGIDX01"
    width   u8       bytes per stored SA entry, 5 or 8 (default 5)
    pad     7 bytes  reserved, zero
    n       u64      text length
    text    n bytes
    sa      n*width  positions, each a width-byte little-endian integer
    crc     u64      CRC-64/XZ of everything preceding it
"""

from __future__ import annotations

import io
import os
from dataclasses import dataclass

import numpy as np

from ._kernels import backend

MAGIC = b"VLGIDX01"
POSITION_LIMIT = 1 << 40  # index format stores positions in 5 bytes
_HEADER_LEN = 8 + 1 + 7 + 8


class IndexFormatError(ValueError):
    """File is not a well-formed index (bad magic, width, or layout)."""


class IndexTruncatedError(IndexFormatError):
    """File ends before the declared payload is complete."""


class IndexChecksumError(IndexFormatError):
    """Payload bytes do not match the stored checksum."""


class CapacityError(ValueError):
    """Text too large for the index format."""


@dataclass(frozen=True)
class SaInterval:
    """Inclusive rank interval [start, end] of a suffix-array; may be empty."""

    start: int
    end: int

    @property
    def is_empty(self) -> bool:
        return self.end < self.start

    @property
    def width(self) -> int:
        return 0 if self.is_empty else self.end - self.start + 1


EMPTY_INTERVAL = SaInterval(0, -1)


def _position_dtype(n: int):
    return np.int32 if n < 2**31 else np.int64


class SuffixArrayIndex:
    """Immutable suffix-array index; safe for concurrent readers."""

    def __init__(self, text: bytes, sa: np.ndarray):
        self.text = text
        self.n = len(text)
        self.sa = sa
        self._text_arr = np.frombuffer(text, dtype=np.uint8)

    @classmethod
    def build(cls, text: bytes) -> "SuffixArrayIndex":
        if len(text) >= POSITION_LIMIT:
            raise CapacityError(
                f"text of {len(text)} bytes exceeds the 2**40 format limit")
        sa = backend.suffix_array_bytes(text)
        return cls(bytes(text), sa)

    def interval(self, sub: bytes) -> SaInterval:
        """Maximal SA interval of suffixes starting with sub (two bisections)."""
        if len(sub) == 0:
            raise ValueError("empty subpattern")
        sub = bytes(sub)
        lo = self._lower_bound(sub, strict=False)
        hi = self._lower_bound(sub, strict=True)
        if lo >= hi:
            return EMPTY_INTERVAL
        return SaInterval(lo, hi - 1)

    def _lower_bound(self, sub: bytes, strict: bool) -> int:
        """First rank whose length-|sub| suffix prefix is >= sub (> if strict)."""
        text, sa, m = self.text, self.sa, len(sub)
        lo, hi = 0, self.n
        while lo < hi:
            mid = (lo + hi) // 2
            p = int(sa[mid])
            probe = text[p:p + m]
            if probe < sub or (strict and probe == sub):
                lo = mid + 1
            else:
                hi = mid
        return lo

    def positions(self, iv: SaInterval) -> np.ndarray:
        """SA entries of the interval, copied in SA (not text) order."""
        if iv.is_empty:
            return self.sa[:0].copy()
        return self.sa[iv.start:iv.end + 1].copy()

    def save(self, destination, width: int = 5) -> None:
        save_index(self, destination, width=width)


def build_index(text: bytes) -> SuffixArrayIndex:
    return SuffixArrayIndex.build(text)


def find_interval(index: SuffixArrayIndex, sub: bytes) -> SaInterval:
    return index.interval(sub)


def extract_positions(index: SuffixArrayIndex, iv: SaInterval) -> np.ndarray:
    return index.positions(iv)


def _pack_positions(sa: np.ndarray, width: int) -> bytes:
    as_u64 = sa.astype("<u8", copy=True)
    octets = as_u64.view(np.uint8).reshape(-1, 8)
    return octets[:, :width].tobytes()


def _unpack_positions(raw: bytes, n: int, width: int) -> np.ndarray:
    octets = np.frombuffer(raw, dtype=np.uint8).reshape(n, width)
    full = np.zeros((n, 8), dtype=np.uint8)
    full[:, :width] = octets
    values = full.view("<u8").reshape(n)
    return values.astype(_position_dtype(n))


def save_index(index: SuffixArrayIndex, destination, width: int = 5) -> None:
    """Write the index file; destination is a path or binary file object."""
    if width not in (5, 8):
        raise ValueError("width must be 5 or 8")
    if index.n >= POSITION_LIMIT:
        raise CapacityError("text exceeds the 2**40 format limit")
    header = MAGIC + bytes([width]) + b"\x00" * 7 + index.n.to_bytes(8, "little")
    body = _pack_positions(index.sa, width)
    crc = backend.crc64(np.frombuffer(header, dtype=np.uint8))
    crc = backend.crc64(index._text_arr, crc)
    crc = backend.crc64(np.frombuffer(body, dtype=np.uint8), crc)
    if hasattr(destination, "write"):
        out = destination
        close = False
    else:
        out = open(destination, "wb")
        close = True
    try:
        out.write(header)
        out.write(index.text)
        out.write(body)
        out.write(crc.to_bytes(8, "little"))
    finally:
        if close:
            out.close()


def load_index(source) -> SuffixArrayIndex:
    """Read an index file; raises a distinct error per failure mode."""
    if hasattr(source, "read"):
        data = source.read()
    else:
        with open(source, "rb") as fh:
            data = fh.read()
    if len(data) < _HEADER_LEN:
        if data[: len(MAGIC)] != MAGIC[: len(data)]:
            raise IndexFormatError("bad magic")
        raise IndexTruncatedError("file shorter than the fixed header")
    if data[:8] != MAGIC:
        raise IndexFormatError("bad magic")
    width = data[8]
    if width not in (5, 8):
        raise IndexFormatError(f"unsupported position width {width}")
    if data[9:16] != b"\x00" * 7:
        raise IndexFormatError("nonzero reserved bytes")
    n = int.from_bytes(data[16:24], "little")
    expected = _HEADER_LEN + n + n * width + 8
    if len(data) < expected:
        raise IndexTruncatedError(
            f"expected {expected} bytes, file has {len(data)}")
    if len(data) > expected:
        raise IndexFormatError("trailing bytes after checksum")
    stored_crc = int.from_bytes(data[expected - 8:], "little")
    payload = np.frombuffer(data[: expected - 8], dtype=np.uint8)
    if backend.crc64(payload) != stored_crc:
        raise IndexChecksumError("checksum mismatch")
    text = data[_HEADER_LEN:_HEADER_LEN + n]
    sa = _unpack_positions(data[_HEADER_LEN + n:expected - 8], n, width)
    return SuffixArrayIndex(text, sa)
