"""Command-line interface: build, search, bench, calibrate, synth.

Exit codes follow the grep convention plus two extensions:

    0  success (search: at least one match)
    1  search ran fine but found nothing
    2  usage, parse, format, or configuration error
    3  text exceeds the index format capacity
    4  --verify found a mismatch between the engine and the oracle
"""

from __future__ import annotations

import argparse
import sys
import time

from . import bench as bench_mod
from .engine import QueryStats, Strategy, oracle_search, search
from .pattern import PatternSyntaxError, parse_pattern
from .text_index import (CapacityError, IndexFormatError, build_index,
                         load_index, save_index)

EXIT_OK = 0
EXIT_NO_MATCH = 1
EXIT_USAGE = 2
EXIT_CAPACITY = 3
EXIT_VERIFY_FAILED = 4


def _perr(message: str) -> None:
    print(f"vlgidx: {message}", file=sys.stderr)


def _parse_size(text: str) -> int:
    """Integer byte count, with optional K/M/G suffix (binary units)."""
    text = text.strip()
    factor = 1
    if text and text[-1].upper() in "KMG":
        factor = {"K": 1 << 10, "M": 1 << 20, "G": 1 << 30}[text[-1].upper()]
        text = text[:-1]
    return int(text) * factor


def cmd_build(args) -> int:
    try:
        with open(args.text, "rb") as fh:
            data = fh.read()
    except OSError as exc:
        _perr(f"cannot read {args.text}: {exc}")
        return EXIT_USAGE
    started = time.perf_counter()
    try:
        index = build_index(data)
        save_index(index, args.out, width=args.width)
    except CapacityError as exc:
        _perr(str(exc))
        return EXIT_CAPACITY
    except OSError as exc:
        _perr(f"cannot write {args.out}: {exc}")
        return EXIT_USAGE
    elapsed = time.perf_counter() - started
    print(f"n={index.n} built+saved in {elapsed:.2f}s", file=sys.stderr)
    return EXIT_OK


def cmd_search(args) -> int:
    try:
        index = load_index(args.index)
    except (OSError, IndexFormatError) as exc:
        _perr(f"cannot load index: {exc}")
        return EXIT_USAGE
    try:
        pattern = parse_pattern(args.pattern, gap_mode=args.gap_mode)
    except PatternSyntaxError as exc:
        _perr(f"pattern error: {exc}")
        return EXIT_USAGE
    stats = QueryStats() if args.trace else None
    try:
        result = search(index, pattern, Strategy(args.strategy),
                        want_tuples=args.tuples, tuple_cap=args.tuple_cap,
                        block_size=args.block_size, c_sort=args.c_sort,
                        stats=stats)
    except ValueError as exc:
        _perr(str(exc))
        return EXIT_USAGE
    if stats is not None:
        for i, adj in enumerate(stats.adjacencies):
            block = "" if adj.block_size is None else f" b={adj.block_size}"
            print(f"adjacency {i}: {adj.strategy.value}{block} "
                  f"raw={adj.raw} filtered={adj.filtered} out={adj.out}",
                  file=sys.stderr)
    if args.verify:
        want = oracle_search(index.text, pattern, want_tuples=args.tuples)
        ok = want.endpoints.tolist() == result.endpoints.tolist()
        if ok and args.tuples and not result.truncated:
            ok = want.tuples == result.tuples
        if not ok:
            _perr("verification FAILED: engine disagrees with the oracle")
            return EXIT_VERIFY_FAILED
    if args.count:
        print(result.count)
    elif args.tuples:
        for tup in result.tuples:
            print("\t".join(str(v) for v in tup))
        if result.truncated:
            _perr(f"tuple list truncated at {args.tuple_cap}")
    else:
        for endpoint in result.endpoints:
            print(int(endpoint))
    return EXIT_OK if result.count else EXIT_NO_MATCH


def cmd_bench(args) -> int:
    try:
        index = load_index(args.index)
    except (OSError, IndexFormatError) as exc:
        _perr(f"cannot load index: {exc}")
        return EXIT_USAGE
    file_kwargs = {}
    if args.config:
        try:
            with open(args.config, "r", encoding="utf-8") as fh:
                file_kwargs = bench_mod.parse_config_text(fh.read())
        except OSError as exc:
            _perr(f"cannot read config: {exc}")
            return EXIT_USAGE
        except bench_mod.BenchConfigError as exc:
            _perr(str(exc))
            return EXIT_USAGE
    try:
        config = bench_mod.make_config(
            file_kwargs,
            dataset=args.dataset,
            k_values=tuple(args.k) if args.k else None,
            lengths=tuple(args.lengths) if args.lengths else None,
            bands=bench_mod._parse_band_list(args.bands) if args.bands else None,
            patterns_per_cell=args.patterns,
            strategies=tuple(Strategy(s) for s in args.strategies)
            if args.strategies else None,
            block_sizes=tuple(args.block_sizes) if args.block_sizes else None,
            seed=args.seed, repetitions=args.reps,
            verify=True if args.verify else None, c_sort=args.c_sort)
        records = bench_mod.run_bench(config, index)
    except bench_mod.BenchConfigError as exc:
        _perr(str(exc))
        return EXIT_USAGE
    summary = bench_mod.emit_report(records, args.out)
    print(summary, end="")
    print(f"{len(records)} records -> {args.out}", file=sys.stderr)
    return EXIT_OK


def cmd_calibrate(args) -> int:
    measured = bench_mod.calibrate_sort_constant(size=args.size, seed=args.seed)
    print(f"sort:       {measured['sort_ns_per_element']:8.2f} ns/element")
    print(f"text check: {measured['text_check_ns_per_byte']:8.2f} ns/byte")
    print(f"suggested planner constant: --c-sort {measured['c_sort']:.1f}")
    return EXIT_OK


def cmd_synth(args) -> int:
    try:
        data = bench_mod.generate_synthetic_text(
            _parse_size(args.size), seed=args.seed,
            alphabet=bytes(range(97, 97 + args.alphabet_size)),
            vocab=args.vocab, token_len=args.token_len, zipf_s=args.zipf,
            repeat_fraction=args.repeat_fraction)
    except ValueError as exc:
        _perr(str(exc))
        return EXIT_USAGE
    try:
        with open(args.out, "wb") as fh:
            fh.write(data)
    except OSError as exc:
        _perr(f"cannot write {args.out}: {exc}")
        return EXIT_USAGE
    print(f"wrote {len(data)} bytes to {args.out}", file=sys.stderr)
    return EXIT_OK


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="vlgidx",
        description="Suffix-array index for variable-length-gap pattern search")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("build", help="build and save an index")
    p.add_argument("text", help="path of the byte text to index")
    p.add_argument("-o", "--out", required=True, help="index file to write")
    p.add_argument("--width", type=int, choices=(5, 8), default=5,
                   help="bytes per stored SA entry")
    p.set_defaults(func=cmd_build)

    p = sub.add_parser("search", help="run one VLG query")
    p.add_argument("index", help="index file")
    p.add_argument("pattern", help="pattern, e.g. 'ab[2,5]ra'")
    p.add_argument("--gap-mode", choices=("start", "end"), default="start",
                   help="whether written gaps count from subpattern starts or ends")
    p.add_argument("--strategy",
                   choices=tuple(s.value for s in Strategy), default="auto")
    p.add_argument("--block-size", type=int, default=None,
                   help="filter block size override (power of two)")
    p.add_argument("--c-sort", type=float, default=4.0,
                   help="planner sort-cost constant (see calibrate)")
    p.add_argument("--tuples", action="store_true",
                   help="print full k-tuples instead of endpoints")
    p.add_argument("--tuple-cap", type=int, default=None)
    p.add_argument("--count", action="store_true",
                   help="print only the endpoint count")
    p.add_argument("--verify", action="store_true",
                   help="cross-check against the brute-force oracle")
    p.add_argument("--trace", action="store_true",
                   help="per-adjacency strategy and candidate counts on stderr")
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("bench", help="run the benchmark sweep")
    p.add_argument("index", help="index file")
    p.add_argument("--out", default="bench.csv", help="CSV output path")
    p.add_argument("--config", default=None, help="key=value config file")
    p.add_argument("--dataset", default=None, help="dataset id for the CSV")
    p.add_argument("--k", type=int, nargs="+", default=None)
    p.add_argument("--lengths", type=int, nargs="+", default=None)
    p.add_argument("--bands", default=None,
                   help="comma list of lo:hi gap bands, e.g. 100:110,1000:1100")
    p.add_argument("--patterns", type=int, default=None,
                   help="patterns per cell")
    p.add_argument("--strategies", nargs="+", default=None,
                   choices=tuple(s.value for s in Strategy))
    p.add_argument("--block-sizes", type=int, nargs="+", default=None)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--reps", type=int, default=None)
    p.add_argument("--verify", action="store_true")
    p.add_argument("--c-sort", type=float, default=None)
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("calibrate", help="measure the planner's c_sort here")
    p.add_argument("--size", type=int, default=1 << 20)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_calibrate)

    p = sub.add_parser("synth", help="generate a seeded synthetic corpus")
    p.add_argument("-o", "--out", required=True)
    p.add_argument("--size", required=True, help="bytes, with optional K/M/G")
    p.add_argument("--seed", type=int, default=1)
    p.add_argument("--alphabet-size", type=int, default=26)
    p.add_argument("--vocab", type=int, default=400)
    p.add_argument("--token-len", type=int, default=3)
    p.add_argument("--zipf", type=float, default=1.2)
    p.add_argument("--repeat-fraction", type=float, default=0.0)
    p.set_defaults(func=cmd_synth)
    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
