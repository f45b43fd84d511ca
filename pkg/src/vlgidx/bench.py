"""Benchmark harness: synthetic corpora, strategy sweeps, CSV reports.

The sweep grid is (k, subpattern length, gap band, strategy[, block size]);
each cell gets a seeded pattern set drawn from the 200 most frequent
substrings, each pattern timed over warm repetitions with the median kept.

CSV schema (RFC 4180):

    dataset,strategy,k,m,gap_lo,gap_hi,block_size,pattern_id,micros,
    endpoints,cand_stage0,cand_stage1,...,verified

Stage columns hold, per adjacency in query order, the triple (raw
occurrences of the next subpattern, survivors of block-filter pruning,
resulting anchors); within each triple counts never increase.  block_size
is the swept filter block size and is empty when the sweep was not
configured; verified is empty unless the run was oracle-checked.
"""

from __future__ import annotations

import csv
import io
import itertools
import statistics
import time
from dataclasses import dataclass, fields

import numpy as np

from .engine import (DEFAULT_SORT_CONSTANT, QueryStats, Strategy,
                     oracle_search, search)
from .pattern import (POOL_SIZE, GapConstraint, derive_seed,
                      patterns_from_pool, top_frequent_substrings)
from .text_index import SuffixArrayIndex


class BenchConfigError(ValueError):
    """Bad benchmark configuration (unknown key or invalid value)."""


DEFAULT_BANDS = ((100, 110), (1000, 1100), (10000, 11000))


@dataclass(frozen=True)
class BenchConfig:
    dataset: str = "synthetic"
    k_values: tuple[int, ...] = (2, 4, 8, 16, 32)
    lengths: tuple[int, ...] = (3, 5, 7)
    bands: tuple[tuple[int, int], ...] = DEFAULT_BANDS
    patterns_per_cell: int = 20
    strategies: tuple[Strategy, ...] = (Strategy.AUTO,)
    block_sizes: tuple[int, ...] | None = None
    seed: int = 1
    repetitions: int = 3
    verify: bool = False
    c_sort: float = DEFAULT_SORT_CONSTANT

    def __post_init__(self):
        for name in ("k_values", "lengths", "bands", "strategies"):
            if not getattr(self, name):
                raise BenchConfigError(f"{name} must be non-empty")
        if self.patterns_per_cell < 1 or self.repetitions < 1:
            raise BenchConfigError("patterns_per_cell and repetitions must be >= 1")


@dataclass(frozen=True)
class BenchRecord:
    dataset: str
    strategy: str
    k: int
    m: int
    gap_lo: int
    gap_hi: int
    block_size: int | None
    pattern_id: int
    micros: int
    endpoints: int
    stages: tuple[int, ...]
    verified: bool | None


def run_bench(config: BenchConfig, index: SuffixArrayIndex) -> list[BenchRecord]:
    """Time every (k, m, band, strategy[, block]) cell on seeded patterns.

    Timing covers search() only (index ready, patterns prebuilt); one
    untimed warm-up run per pattern precedes the timed repetitions.
    """
    n = index.n
    if n == 0:
        raise BenchConfigError("cannot benchmark an empty text")
    for m in config.lengths:
        if m > n:
            raise BenchConfigError(f"subpattern length {m} exceeds text length {n}")
        for lo, hi in config.bands:
            if n <= hi + m:
                raise BenchConfigError(
                    f"text of {n} bytes shorter than gap bound {hi} + length {m}")

    pools = {m: top_frequent_substrings(index.text, m, POOL_SIZE)
             for m in config.lengths}
    block_sweep: tuple[int | None, ...] = config.block_sizes or (None,)
    records: list[BenchRecord] = []

    for k, m, band in itertools.product(config.k_values, config.lengths,
                                        config.bands):
        lo, hi = band
        cell_seed = derive_seed(config.seed, k, m, lo, hi)
        patterns = patterns_from_pool(pools[m], k, GapConstraint(lo, hi),
                                      config.patterns_per_cell, cell_seed)
        for strategy, block in itertools.product(config.strategies, block_sweep):
            for pid, pat in enumerate(patterns):
                stats = QueryStats()
                result = search(index, pat, strategy, block_size=block,
                                c_sort=config.c_sort, stats=stats)  # warm-up
                times = []
                for _ in range(config.repetitions):
                    t0 = time.perf_counter_ns()
                    search(index, pat, strategy, block_size=block,
                           c_sort=config.c_sort)
                    times.append(time.perf_counter_ns() - t0)
                verified = None
                if config.verify:
                    want = oracle_search(index.text, pat, want_tuples=False)
                    verified = want.endpoints.tolist() == result.endpoints.tolist()
                stages = tuple(v for adj in stats.adjacencies
                               for v in (adj.raw, adj.filtered, adj.out))
                records.append(BenchRecord(
                    dataset=config.dataset, strategy=strategy.value, k=k, m=m,
                    gap_lo=lo, gap_hi=hi, block_size=block, pattern_id=pid,
                    micros=int(statistics.median(times)) // 1000,
                    endpoints=result.count, stages=stages, verified=verified))
    return records


_FIXED_COLUMNS = ["dataset", "strategy", "k", "m", "gap_lo", "gap_hi",
                  "block_size", "pattern_id", "micros", "endpoints"]


def records_to_csv(records: list[BenchRecord]) -> str:
    n_stages = max((len(r.stages) for r in records), default=0)
    header = (_FIXED_COLUMNS
              + [f"cand_stage{i}" for i in range(n_stages)] + ["verified"])
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for r in records:
        stages = list(r.stages) + [""] * (n_stages - len(r.stages))
        writer.writerow([
            r.dataset, r.strategy, r.k, r.m, r.gap_lo, r.gap_hi,
            "" if r.block_size is None else r.block_size,
            r.pattern_id, r.micros, r.endpoints, *stages,
            "" if r.verified is None else str(r.verified).lower()])
    return buf.getvalue()


def csv_to_records(text: str) -> list[BenchRecord]:
    rows = list(csv.reader(io.StringIO(text)))
    if not rows:
        raise ValueError("empty CSV")
    header = rows[0]
    stage_cols = [i for i, name in enumerate(header)
                  if name.startswith("cand_stage")]
    col = {name: i for i, name in enumerate(header)}
    records = []
    for row in rows[1:]:
        block = row[col["block_size"]]
        verified = row[col["verified"]]
        records.append(BenchRecord(
            dataset=row[col["dataset"]], strategy=row[col["strategy"]],
            k=int(row[col["k"]]), m=int(row[col["m"]]),
            gap_lo=int(row[col["gap_lo"]]), gap_hi=int(row[col["gap_hi"]]),
            block_size=None if block == "" else int(block),
            pattern_id=int(row[col["pattern_id"]]),
            micros=int(row[col["micros"]]),
            endpoints=int(row[col["endpoints"]]),
            stages=tuple(int(row[i]) for i in stage_cols if row[i] != ""),
            verified=None if verified == "" else verified == "true"))
    return records


def summarize(records: list[BenchRecord]) -> str:
    """Cell totals and medians, grouped the way the result tables read:
    one section per (k, m), one row per strategy variant, one column per
    gap band."""
    if not records:
        return "no records\n"
    bands = sorted({(r.gap_lo, r.gap_hi) for r in records})
    out = []
    verified = [r for r in records if r.verified is not None]
    if verified:
        good = sum(1 for r in verified if r.verified)
        out.append(f"verified: {good}/{len(verified)} records match the oracle")
    for (k, m) in sorted({(r.k, r.m) for r in records}):
        out.append(f"k={k} m={m}  (total ms over patterns; median µs per pattern)")
        variants = sorted({(r.strategy, r.block_size) for r in records
                           if r.k == k and r.m == m},
                          key=lambda v: (v[0], v[1] or 0))
        for strategy, block in variants:
            label = strategy if block is None else f"{strategy}[b={block}]"
            cells = []
            for lo, hi in bands:
                rows = [r for r in records
                        if (r.k, r.m, r.strategy, r.block_size,
                            r.gap_lo, r.gap_hi) == (k, m, strategy, block, lo, hi)]
                if not rows:
                    cells.append(f"{'-':>18}")
                    continue
                total_ms = sum(r.micros for r in rows) / 1000.0
                med = statistics.median(r.micros for r in rows)
                cells.append(f"{total_ms:10.1f} {med:6.0f}µ")
            out.append(f"  {label:<18}" + " ".join(cells))
    header_cells = " ".join(f"<{lo},{hi}>".rjust(18) for lo, hi in bands)
    out.insert(1 if verified else 0, " " * 20 + header_cells)
    return "\n".join(out) + "\n"


def emit_report(records: list[BenchRecord], csv_path) -> str:
    """Write the CSV and return the grouped summary text."""
    with open(csv_path, "w", encoding="utf-8", newline="") as fh:
        fh.write(records_to_csv(records))
    return summarize(records)


# ---------------------------------------------------------------------------
# Synthetic corpus generation
# ---------------------------------------------------------------------------

def generate_synthetic_text(size: int, seed: int = 1, *,
                            alphabet: bytes = bytes(range(97, 123)),
                            vocab: int = 400, token_len: int = 3,
                            zipf_s: float = 1.2,
                            repeat_fraction: float = 0.0) -> bytes:
    """Seeded corpus of Zipf-distributed length-``token_len`` tokens.

    Token strings are drawn over ``alphabet``; token ranks follow a Zipf
    law with exponent ``zipf_s``, so the most frequent substrings of the
    output have a heavy-tailed frequency profile.  ``repeat_fraction``
    rewrites that fraction of the output as copies of earlier regions,
    raising repetitiveness.  Same arguments, same bytes.
    """
    if size <= 0:
        return b""
    if token_len < 1 or vocab < 1 or not alphabet:
        raise ValueError("token_len, vocab and alphabet must be non-trivial")
    if len(set(alphabet)) ** token_len < vocab:
        raise ValueError("alphabet**token_len smaller than the vocabulary")
    rng = np.random.default_rng(seed)
    alpha = np.frombuffer(bytes(alphabet), dtype=np.uint8)

    tokens: dict[bytes, None] = {}
    while len(tokens) < vocab:
        batch = alpha[rng.integers(0, alpha.shape[0],
                                   size=(vocab, token_len))]
        for row in batch:
            tokens.setdefault(row.tobytes(), None)
            if len(tokens) == vocab:
                break
    token_arr = np.frombuffer(b"".join(tokens), dtype=np.uint8)
    token_arr = token_arr.reshape(vocab, token_len)

    weights = 1.0 / np.arange(1, vocab + 1, dtype=np.float64) ** zipf_s
    cdf = np.cumsum(weights / weights.sum())
    n_tokens = -(-size // token_len)
    draws = rng.random(n_tokens)
    ids = np.searchsorted(cdf, draws, side="right")
    data = token_arr[ids].reshape(-1)[:size].copy()

    if repeat_fraction > 0:
        chunk = 8192
        n_copies = int(size * repeat_fraction) // chunk
        for _ in range(n_copies):
            dst = int(rng.integers(chunk, max(chunk + 1, size - chunk)))
            src = int(rng.integers(0, dst))
            length = min(chunk, size - dst)
            data[dst:dst + length] = data[src:src + length]
    return data.tobytes()


# ---------------------------------------------------------------------------
# Flat key=value config files (CLI flags win on conflict)
# ---------------------------------------------------------------------------

_CONFIG_KEYS = {f.name for f in fields(BenchConfig)}


def _parse_band_list(text: str) -> tuple[tuple[int, int], ...]:
    bands = []
    for part in text.split(","):
        lo, _, hi = part.partition(":")
        bands.append((int(lo), int(hi)))
    return tuple(bands)


def parse_config_text(text: str) -> dict:
    """Parse 'key=value' lines into BenchConfig-shaped keyword arguments."""
    out: dict = {}
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        key, eq, value = line.partition("=")
        key = key.strip()
        value = value.strip()
        if not eq or key not in _CONFIG_KEYS:
            raise BenchConfigError(f"bad config key {key!r} on line {lineno}")
        try:
            out[key] = _coerce_config_value(key, value)
        except (ValueError, KeyError) as exc:
            raise BenchConfigError(
                f"bad value for {key!r} on line {lineno}: {exc}") from None
    return out


def _coerce_config_value(key: str, value: str):
    if key in ("dataset",):
        return value
    if key in ("patterns_per_cell", "seed", "repetitions"):
        return int(value)
    if key == "c_sort":
        return float(value)
    if key == "verify":
        if value.lower() in ("1", "true", "yes"):
            return True
        if value.lower() in ("0", "false", "no"):
            return False
        raise ValueError(f"not a boolean: {value!r}")
    if key in ("k_values", "lengths", "block_sizes"):
        return tuple(int(v) for v in value.split(","))
    if key == "bands":
        return _parse_band_list(value)
    if key == "strategies":
        return tuple(Strategy(v.strip()) for v in value.split(","))
    raise KeyError(key)


def make_config(file_kwargs: dict | None = None, **cli_kwargs) -> BenchConfig:
    merged = dict(file_kwargs or {})
    merged.update({k: v for k, v in cli_kwargs.items() if v is not None})
    try:
        return BenchConfig(**merged)
    except TypeError as exc:
        raise BenchConfigError(str(exc)) from None


# ---------------------------------------------------------------------------
# Planner calibration
# ---------------------------------------------------------------------------

def calibrate_sort_constant(size: int = 1 << 20, seed: int = 0) -> dict:
    """Measure sort cost per element and text-check cost per byte on this
    host; their ratio is the planner's c_sort."""
    from ._kernels import backend

    rng = np.random.default_rng(seed)
    n = size * 4
    positions = np.sort(rng.choice(n, size=size, replace=False)).astype(np.int64)
    shuffled = rng.permutation(positions)

    t0 = time.perf_counter()
    backend.radix_sort(shuffled)
    sort_per_elt = (time.perf_counter() - t0) / size

    text = generate_synthetic_text(n, seed=seed)
    window = 110
    anchors = positions[positions < n - 2 * window][:size // 4]
    needle = text[:3]
    t0 = time.perf_counter()
    backend.text_check_forward(np.frombuffer(text, dtype=np.uint8),
                               anchors.astype(np.int64),
                               np.frombuffer(needle, dtype=np.uint8),
                               window, window + 10)
    tc_per_byte = (time.perf_counter() - t0) / (anchors.shape[0] * 13)

    return {
        "sort_ns_per_element": sort_per_elt * 1e9,
        "text_check_ns_per_byte": tc_per_byte * 1e9,
        "c_sort": sort_per_elt / tc_per_byte if tc_per_byte else float("nan"),
    }
