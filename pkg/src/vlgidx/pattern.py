"""VLG pattern objects: parsing, rendering, and synthetic generation.

Pattern text grammar (shared by the CLI and pattern files):

    pattern := subpat (gap subpat)*
    gap     := '[' int ',' int ']'      (whitespace inside brackets ok)
    subpat  := one or more literal chars; '[', ']' and '\\' must be
               escaped as '\\[', '\\]', '\\\\'; raw bytes as '\\xNN'

Gap bounds are start-to-start distances internally.  With
``gap_mode="end"`` the written bounds count from the end of the preceding
subpattern and are converted by adding its length.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass

import numpy as np


class PatternSyntaxError(ValueError):
    """Pattern text rejected; ``offset`` is the character position."""

    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} (at offset {offset})")
        self.offset = offset


@dataclass(frozen=True)
class GapConstraint:
    """Start-to-start distance bounds between consecutive subpatterns."""

    delta: int
    Delta: int

    def __post_init__(self):
        if self.delta < 0:
            raise ValueError(f"negative gap lower bound {self.delta}")
        if self.delta > self.Delta:
            raise ValueError(
                f"gap lower bound {self.delta} exceeds upper bound {self.Delta}")


@dataclass(frozen=True)
class VlgPattern:
    subpatterns: tuple[bytes, ...]
    gaps: tuple[GapConstraint, ...]

    def __post_init__(self):
        if len(self.subpatterns) < 1:
            raise ValueError("pattern needs at least one subpattern")
        if any(len(s) == 0 for s in self.subpatterns):
            raise ValueError("empty subpattern")
        if len(self.gaps) != len(self.subpatterns) - 1:
            raise ValueError("pattern needs exactly k-1 gap constraints")

    @property
    def k(self) -> int:
        return len(self.subpatterns)


_HEX = "0123456789abcdefABCDEF"


def parse_pattern(s: str, gap_mode: str = "start") -> VlgPattern:
    """Parse pattern text; errors carry the offending character offset."""
    if gap_mode not in ("start", "end"):
        raise ValueError(f"unknown gap_mode {gap_mode!r}")
    if not s:
        raise PatternSyntaxError("empty pattern", 0)
    subpatterns: list[bytes] = []
    raw_gaps: list[tuple[int, int, int]] = []  # (delta, Delta, offset)
    cur = bytearray()
    cur_start = 0
    i = 0
    while i < len(s):
        c = s[i]
        if c == "\\":
            if i + 1 >= len(s):
                raise PatternSyntaxError("dangling escape", i)
            nxt = s[i + 1]
            if nxt in "[]\\":
                cur.extend(nxt.encode())
                i += 2
            elif nxt == "x":
                if i + 3 >= len(s) or s[i + 2] not in _HEX or s[i + 3] not in _HEX:
                    raise PatternSyntaxError("malformed \\xNN escape", i)
                cur.append(int(s[i + 2:i + 4], 16))
                i += 4
            else:
                raise PatternSyntaxError(f"unknown escape \\{nxt}", i)
        elif c == "]":
            raise PatternSyntaxError("unmatched ']'", i)
        elif c == "[":
            if not cur:
                raise PatternSyntaxError("empty subpattern before gap", i)
            subpatterns.append(bytes(cur))
            cur = bytearray()
            close = s.find("]", i + 1)
            if close < 0:
                raise PatternSyntaxError("unterminated gap bracket", i)
            body = s[i + 1:close]
            parts = body.split(",")
            if len(parts) != 2:
                raise PatternSyntaxError("gap must be '[min,max]'", i)
            try:
                delta = int(parts[0].strip())
                Delta = int(parts[1].strip())
            except ValueError:
                raise PatternSyntaxError("non-integer gap bound", i) from None
            if delta < 0:
                raise PatternSyntaxError("negative gap bound", i)
            if delta > Delta:
                raise PatternSyntaxError(
                    f"gap lower bound {delta} exceeds upper bound {Delta}"
                    " (δ > Δ)", i)
            raw_gaps.append((delta, Delta, i))
            i = close + 1
            cur_start = i
        else:
            cur.extend(c.encode("utf-8"))
            i += 1
    if not cur:
        raise PatternSyntaxError("empty subpattern at end", cur_start)
    subpatterns.append(bytes(cur))

    gaps = []
    for idx, (delta, Delta, off) in enumerate(raw_gaps):
        if gap_mode == "end":
            m = len(subpatterns[idx])
            delta, Delta = delta + m, Delta + m
        gaps.append(GapConstraint(delta, Delta))
    return VlgPattern(tuple(subpatterns), tuple(gaps))


def _render_subpattern(sub: bytes) -> str:
    out = []
    for byte in sub:
        ch = chr(byte)
        if ch in "[]\\":
            out.append("\\" + ch)
        elif 0x20 <= byte < 0x7F:
            out.append(ch)
        else:
            out.append(f"\\x{byte:02x}")
    return "".join(out)


def render_pattern(p: VlgPattern) -> str:
    """Inverse of parse_pattern (start gap mode): parse(render(p)) == p."""
    parts = [_render_subpattern(p.subpatterns[0])]
    for gap, sub in zip(p.gaps, p.subpatterns[1:]):
        parts.append(f"[{gap.delta},{gap.Delta}]")
        parts.append(_render_subpattern(sub))
    return "".join(parts)


def load_pattern_file(path, gap_mode: str = "start") -> list[VlgPattern]:
    """One pattern per line; blank lines and '#' comment lines skipped."""
    patterns = []
    with open(path, "r", encoding="utf-8") as fh:
        for line in fh:
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            patterns.append(parse_pattern(line, gap_mode=gap_mode))
    return patterns


def top_frequent_substrings(text: bytes, m: int, count: int) -> list[bytes]:
    """The ``count`` most frequent length-m substrings, most frequent first.

    Ties break by ascending byte order.  Fewer are returned when the text
    has fewer distinct length-m substrings.
    """
    n = len(text)
    if m < 1:
        raise ValueError("substring length must be positive")
    if m > n:
        raise ValueError(f"substring length {m} exceeds text length {n}")
    if count < 1:
        raise ValueError("count must be positive")
    windows = n - m + 1
    if m <= 8:
        arr = np.frombuffer(text, dtype=np.uint8)
        packed = np.zeros(windows, dtype=np.uint64)
        for i in range(m):  # big-endian packing: numeric order == byte order
            packed = (packed << np.uint64(8)) | arr[i:i + windows]
        values, freqs = np.unique(packed, return_counts=True)
        order = np.lexsort((values, -freqs))[:count]
        result = []
        for v in values[order]:
            result.append(int(v).to_bytes(m, "big"))
        return result
    counter = Counter(bytes(text[i:i + m]) for i in range(windows))
    ranked = sorted(counter.items(), key=lambda kv: (-kv[1], kv[0]))
    return [sub for sub, _ in ranked[:count]]


class SplitMix64:
    """Deterministic 64-bit generator with portable integer semantics.

    state' = state + 0x9E3779B97F4A7C15;  output = mix(state')  (SplitMix64)
    """

    MASK = 0xFFFFFFFFFFFFFFFF

    def __init__(self, seed: int):
        self.state = seed & self.MASK

    def next(self) -> int:
        self.state = (self.state + 0x9E3779B97F4A7C15) & self.MASK
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & self.MASK
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & self.MASK
        return z ^ (z >> 31)

    def choice_index(self, bound: int) -> int:
        return self.next() % bound


def derive_seed(base: int, *values: int) -> int:
    """Stable sub-seed from a base seed and integer coordinates."""
    rng = SplitMix64(base)
    acc = rng.next()
    for v in values:
        rng.state ^= v & SplitMix64.MASK
        acc = rng.next()
    return acc


POOL_SIZE = 200


def patterns_from_pool(pool: list[bytes], k: int, gap: GapConstraint,
                       how_many: int, seed: int) -> list[VlgPattern]:
    """Draw subpatterns uniformly (with replacement) from a frequency pool."""
    if not pool:
        raise ValueError("empty subpattern pool")
    rng = SplitMix64(seed)
    out = []
    for _ in range(how_many):
        subs = tuple(pool[rng.choice_index(len(pool))] for _ in range(k))
        out.append(VlgPattern(subs, (gap,) * (k - 1)))
    return out


def generate_patterns(text: bytes, k: int, m: int, gap: GapConstraint,
                      how_many: int, seed: int) -> list[VlgPattern]:
    """Synthetic patterns over the POOL_SIZE most common length-m substrings."""
    if k < 1 or how_many < 1:
        raise ValueError("k and how_many must be positive")
    pool = top_frequent_substrings(text, m, POOL_SIZE)
    return patterns_from_pool(pool, k, gap, how_many, seed)
