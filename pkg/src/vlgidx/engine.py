"""VLG match engine: interchangeable pair-combining strategies over the index.

A query chains left-to-right over the k-1 adjacencies.  The anchor set
starts as the occurrences of the first subpattern; each adjacency combines
it with the next subpattern's occurrences under the gap constraint, and
the survivors become the next anchor set.  Endpoints are the positions of
the last subpattern completing at least one chain; full k-tuples are
enumerated on request via a backward filtering pass.

Strategies differ only in how one adjacency is combined:

    BASELINE_SORT  library comparison sort both sides, merge-intersect
    RADIX_SORT     LSD radix sort both sides, merge-intersect
    FILTER_SORT    block-filter prune, then radix sort and intersect
    TEXT_CHECK     scan text windows around the smaller side with KMP
    AUTO           pick TEXT_CHECK or FILTER_SORT per adjacency by cost model
"""

from __future__ import annotations

import enum
from bisect import bisect_left, bisect_right
from dataclasses import dataclass, field

import numpy as np

from ._kernels import backend
from .block_filter import BlockFilter, choose_block_size
from .pattern import VlgPattern
from .text_index import SuffixArrayIndex

DEFAULT_SORT_CONSTANT = 4.0


class Strategy(enum.Enum):
    BASELINE_SORT = "baseline"
    RADIX_SORT = "radix"
    FILTER_SORT = "filter"
    TEXT_CHECK = "textcheck"
    AUTO = "auto"


@dataclass
class AdjacencyStats:
    """Candidate counts for one adjacency: raw occurrences of the next
    subpattern, survivors of block-filter pruning (== raw when no filter
    ran), and the resulting anchor count.  raw >= filtered >= out."""

    strategy: Strategy
    raw: int
    filtered: int
    out: int
    block_size: int | None = None


@dataclass
class QueryStats:
    adjacencies: list[AdjacencyStats] = field(default_factory=list)
    resolved_block_size: int | None = None


@dataclass
class MatchResult:
    """Endpoints (ascending, duplicate-free) and optionally full k-tuples."""

    endpoints: np.ndarray
    tuples: list[tuple[int, ...]] | None = None
    truncated: bool = False

    @property
    def count(self) -> int:
        return int(self.endpoints.shape[0])


def _empty_result(dtype, want_tuples: bool) -> MatchResult:
    return MatchResult(np.empty(0, dtype=dtype),
                       [] if want_tuples else None, False)


def radix_sort(a) -> np.ndarray:
    return backend.radix_sort(_positions(a))


def intersect_gapped(a_sorted, b_sorted, delta: int, Delta: int) -> np.ndarray:
    a, b = _positions(a_sorted), _positions(b_sorted)
    if a.dtype != b.dtype:
        a = a.astype(np.int64)
        b = b.astype(np.int64)
    return backend.intersect_gapped(a, b, delta, Delta)


def kmp_search(hay, needle) -> np.ndarray:
    if len(needle) == 0:
        raise ValueError("empty needle")
    return backend.kmp_search(_text_array(hay), _text_array(needle))


def text_check_forward(anchors, text: bytes, next_sub: bytes,
                       delta: int, Delta: int) -> np.ndarray:
    return backend.text_check_forward(_text_array(text), _positions(anchors),
                                      _text_array(next_sub), delta, Delta)


def text_check_backward(anchors, text: bytes, prev_sub: bytes,
                        delta: int, Delta: int, allowed=None) -> np.ndarray:
    anchors = _positions(anchors)
    if allowed is not None:
        allowed = _positions(allowed).astype(anchors.dtype)
    return backend.text_check_backward(_text_array(text), anchors,
                                       _text_array(prev_sub), delta, Delta,
                                       allowed)


def filter_pair(pos_small, pos_large, direction: str, delta: int, Delta: int,
                block_size: int, n: int,
                filt: BlockFilter | None = None) -> tuple[np.ndarray, np.ndarray]:
    """Block-filter a candidate pair; returns (small, large) possibly pruned.

    direction="forward" means the small side precedes the large side in the
    text (its windows extend right); "backward" the reverse.  A second
    filtering round prunes the small side too when the first round cut the
    large side below half the small side's size.
    """
    small, large = _positions(pos_small), _positions(pos_large)
    if direction not in ("forward", "backward"):
        raise ValueError(f"unknown direction {direction!r}")
    f = filt if filt is not None else BlockFilter(n, block_size)
    if direction == "forward":
        f.mark_forward(small, delta, Delta)
        large2 = f.prune(large)
        if large2.shape[0] < small.shape[0] / 2:
            f.clear()
            f.mark_backward(large2, delta, Delta)
            small = f.prune(small)
    else:
        f.mark_backward(small, delta, Delta)
        large2 = f.prune(large)
        if large2.shape[0] < small.shape[0] / 2:
            f.clear()
            f.mark_forward(large2, delta, Delta)
            small = f.prune(small)
    return small, large2


def plan_pair(occ_a: int, occ_b: int, m_next: int, delta: int, Delta: int,
              c_sort: float = DEFAULT_SORT_CONSTANT) -> Strategy:
    """Cost-model choice between TEXT_CHECK and FILTER_SORT for one adjacency."""
    if occ_a == 0:
        return Strategy.TEXT_CHECK
    text_cost = min(occ_a, occ_b) * (Delta - delta + m_next)
    sort_cost = c_sort * (occ_a + occ_b)
    return Strategy.TEXT_CHECK if text_cost < sort_cost else Strategy.FILTER_SORT


def _positions(a) -> np.ndarray:
    arr = np.ascontiguousarray(a)
    if arr.dtype not in (np.dtype(np.int32), np.dtype(np.int64)):
        arr = arr.astype(np.int64)
    return arr


def _text_array(data) -> np.ndarray:
    if isinstance(data, np.ndarray):
        return data
    return np.frombuffer(bytes(data), dtype=np.uint8)


def search(index: SuffixArrayIndex, pattern: VlgPattern,
           strategy: Strategy = Strategy.AUTO, *, want_tuples: bool = False,
           tuple_cap: int | None = None, block_size: int | None = None,
           c_sort: float = DEFAULT_SORT_CONSTANT,
           stats: QueryStats | None = None) -> MatchResult:
    """Run a VLG query; all strategies return identical results."""
    n = index.n
    text_arr = index._text_arr
    for gap in pattern.gaps:
        if gap.Delta >= n:
            raise ValueError(
                f"gap upper bound {gap.Delta} must be below the text length {n}")

    intervals = [index.interval(sub) for sub in pattern.subpatterns]
    dtype = index.sa.dtype
    if any(iv.is_empty for iv in intervals):
        return _empty_result(dtype, want_tuples)

    anchors = index.positions(intervals[0])
    anchors_sorted = False
    k = pattern.k
    levels: list[np.ndarray | None] = [None] * k

    for j, gap in enumerate(pattern.gaps):
        nxt_iv = intervals[j + 1]
        nxt_sub = pattern.subpatterns[j + 1]
        strat = strategy
        if strat is Strategy.AUTO:
            strat = plan_pair(anchors.shape[0], nxt_iv.width, len(nxt_sub),
                              gap.delta, gap.Delta, c_sort)
        raw = nxt_iv.width
        filtered = raw
        used_block = None

        if strat in (Strategy.BASELINE_SORT, Strategy.RADIX_SORT):
            sortfn = (backend.baseline_sort if strat is Strategy.BASELINE_SORT
                      else backend.radix_sort)
            if not anchors_sorted:
                anchors = sortfn(anchors)
            b_sorted = sortfn(index.positions(nxt_iv))
            out = backend.intersect_gapped(anchors, b_sorted, gap.delta, gap.Delta)

        elif strat is Strategy.FILTER_SORT:
            b_raw = index.positions(nxt_iv)
            used_block = block_size or choose_block_size(n, gap.delta, gap.Delta)
            if anchors.shape[0] <= b_raw.shape[0]:
                a2, b2 = filter_pair(anchors, b_raw, "forward",
                                     gap.delta, gap.Delta, used_block, n)
            else:
                b2, a2 = filter_pair(b_raw, anchors, "backward",
                                     gap.delta, gap.Delta, used_block, n)
            filtered = int(b2.shape[0])
            if not anchors_sorted:  # pruning preserves order
                a2 = backend.radix_sort(a2)
            out = backend.intersect_gapped(a2, backend.radix_sort(b2),
                                           gap.delta, gap.Delta)

        elif strat is Strategy.TEXT_CHECK:
            if anchors.shape[0] <= nxt_iv.width:
                if not anchors_sorted:
                    anchors = backend.radix_sort(anchors)
                out = backend.text_check_forward(
                    text_arr, anchors, _text_array(nxt_sub),
                    gap.delta, gap.Delta)
            else:
                b_sorted = backend.radix_sort(index.positions(nxt_iv))
                # later adjacencies carry a chained (not full-occurrence)
                # anchor set: hits must be checked against it
                allowed = None if j == 0 else anchors
                out = backend.text_check_backward(
                    text_arr, b_sorted, _text_array(pattern.subpatterns[j]),
                    gap.delta, gap.Delta, allowed)
        else:
            raise ValueError(f"unknown strategy {strat!r}")

        if want_tuples:
            if j == 0:
                levels[0] = anchors if anchors_sorted else backend.radix_sort(anchors)
            levels[j + 1] = out
        if stats is not None:
            stats.adjacencies.append(AdjacencyStats(
                strat, raw, filtered, int(out.shape[0]), used_block))
            if used_block is not None:
                stats.resolved_block_size = used_block
        anchors = out
        anchors_sorted = True
        if anchors.shape[0] == 0:
            return _empty_result(dtype, want_tuples)

    if k == 1 and not anchors_sorted:
        anchors = backend.radix_sort(anchors)
        if want_tuples:
            levels[0] = anchors

    tuples = None
    truncated = False
    if want_tuples:
        tuples, truncated = _enumerate_tuples(pattern, levels, tuple_cap)
    return MatchResult(anchors, tuples, truncated)


def _enumerate_tuples(pattern: VlgPattern, levels: list[np.ndarray | None],
                      tuple_cap: int | None) -> tuple[list[tuple[int, ...]], bool]:
    """Backward-filter the per-level survivor sets, then DFS in lexicographic
    tuple order, stopping at tuple_cap."""
    k = pattern.k
    surviving: list[list[int]] = [None] * k  # type: ignore[list-item]
    surviving[k - 1] = levels[k - 1].tolist()
    for j in range(k - 2, -1, -1):
        gap = pattern.gaps[j]
        kept = backend.filter_predecessors(
            levels[j], np.asarray(levels[j + 1], dtype=levels[j].dtype),
            gap.delta, gap.Delta)
        levels[j] = kept
        surviving[j] = kept.tolist()

    tuples: list[tuple[int, ...]] = []
    prefix: list[int] = []
    stop_at = None if tuple_cap is None else tuple_cap + 1  # +1 detects overflow

    def walk(level: int) -> bool:
        if level == k:
            tuples.append(tuple(prefix))
            return stop_at is None or len(tuples) < stop_at
        if level == 0:
            candidates = surviving[0]
        else:
            gap = pattern.gaps[level - 1]
            row = surviving[level]
            lo = bisect_left(row, prefix[-1] + gap.delta)
            hi = bisect_right(row, prefix[-1] + gap.Delta)
            candidates = row[lo:hi]
        for value in candidates:
            prefix.append(value)
            more = walk(level + 1)
            prefix.pop()
            if not more:
                return False
        return True

    walk(0)
    if stop_at is not None and len(tuples) == stop_at:
        return tuples[:tuple_cap], True
    return tuples, False


def _occurrences(text: bytes, sub: bytes) -> list[int]:
    out = []
    start = text.find(sub)
    while start != -1:
        out.append(start)
        start = text.find(sub, start + 1)
    return out


def oracle_search(text: bytes, pattern: VlgPattern,
                  want_tuples: bool = True) -> MatchResult:
    """Brute-force reference: naive occurrence scans plus level-by-level
    dynamic programming.  Used by tests and --verify only."""
    text = bytes(text)
    occ = [_occurrences(text, sub) for sub in pattern.subpatterns]
    if any(not o for o in occ):
        return _empty_result(np.int64, want_tuples)
    levels = [occ[0]]
    for j, gap in enumerate(pattern.gaps):
        prev = levels[-1]
        nxt = [q for q in occ[j + 1]
               if any(p + gap.delta <= q <= p + gap.Delta for p in prev)]
        levels.append(nxt)
        if not nxt:
            return _empty_result(np.int64, want_tuples)
    endpoints = np.array(levels[-1], dtype=np.int64)

    tuples = None
    if want_tuples:
        k = pattern.k
        surv = [None] * k
        surv[k - 1] = levels[k - 1]
        for j in range(k - 2, -1, -1):
            gap = pattern.gaps[j]
            surv[j] = [p for p in levels[j]
                       if any(p + gap.delta <= q <= p + gap.Delta
                              for q in surv[j + 1])]
        tuples = []

        def expand(level: int, prefix: tuple[int, ...]):
            if level == k:
                tuples.append(prefix)
                return
            if level == 0:
                for p in surv[0]:
                    expand(1, (p,))
                return
            gap = pattern.gaps[level - 1]
            for q in surv[level]:
                if prefix[-1] + gap.delta <= q <= prefix[-1] + gap.Delta:
                    expand(level + 1, prefix + (q,))

        expand(0, ())
    return MatchResult(endpoints, tuples, False)
