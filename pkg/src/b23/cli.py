"""Command-line interface: ``b23 {encode,decode,stats,table,analyze,mc}``."""

from __future__ import annotations

import argparse
import csv
import sys
from pathlib import Path

from . import codec
from .combinatorics import (
    BRUTEFORCE_CAP,
    compression_ratio_bound,
    counting_report,
)
from .encoding import B23Bitstream, encode_b23
from .montecarlo import TritDistribution, pair_frequency_monte_carlo
from .trits import TableMode, UnsupportedCharacterError, get_table

EXIT_UNSUPPORTED = 1
EXIT_MALFORMED = 2


class UsageError(Exception):
    pass


def _read_input(path: str | None) -> bytes:
    if path in (None, "-"):
        return sys.stdin.buffer.read()
    return Path(path).read_bytes()


def _write_output(path: str | None, data: bytes) -> None:
    if path in (None, "-"):
        sys.stdout.buffer.write(data)
        sys.stdout.buffer.flush()
    else:
        Path(path).write_bytes(data)


def _decode_text(raw: bytes) -> str:
    try:
        return raw.decode("utf-8")
    except UnicodeDecodeError as e:
        # report the character offset of the first undecodable byte
        offset = len(raw[: e.start].decode("utf-8"))
        raise UnsupportedCharacterError(repr(raw[e.start:e.start + 1]), offset) from None


def table_dump(mode=TableMode.CORRECTED) -> str:
    """One tab-separated row per entry: decimal, symbol, ternary, B23 bits."""
    table = get_table(mode)
    lines = [
        f"{i}\t{sym}\t{code}\t{encode_b23(code).bits}"
        for i, (sym, code) in enumerate(table.entries)
    ]
    return "\n".join(lines) + "\n"


def parse_range(spec: str) -> range:
    lo, sep, hi = spec.partition("..")
    try:
        a = int(lo)
        b = int(hi) if sep else a
    except ValueError:
        raise UsageError(f"bad range {spec!r}, expected A..B") from None
    if a < 1 or b < a:
        raise UsageError(f"bad range {spec!r}")
    return range(a, b + 1)


def parse_dist(spec: str, table_mode=TableMode.CORRECTED) -> TritDistribution:
    kind, _, arg = spec.partition(":")
    try:
        if kind == "iid":
            p = [float(x) for x in arg.split(",")]
            if len(p) != 3:
                raise ValueError("iid needs three probabilities")
            return TritDistribution.iid(*p)
        if kind == "uniform":
            return TritDistribution.uniform()
        if kind == "markov":
            return TritDistribution.from_json(arg)
        if kind == "empirical":
            text = Path(arg).read_text(encoding="utf-8")
            return TritDistribution.empirical(text, get_table(table_mode))
    except (ValueError, KeyError, OSError) as e:
        raise UsageError(f"bad distribution {spec!r}: {e}") from None
    raise UsageError(f"unknown distribution kind {kind!r}")


def cmd_encode(args) -> int:
    table = get_table(args.table_mode)
    text = _decode_text(_read_input(args.input))
    bits = codec.encode_text(text, table)
    if args.bits_text:
        _write_output(args.output, bits.bits.encode() + b"\n")
    else:
        _write_output(args.output, codec.Container.from_bits(bits, table.mode).to_bytes())
    return 0


def cmd_decode(args) -> int:
    raw = _read_input(args.input)
    if args.bits_text:
        bits = B23Bitstream(raw.decode("ascii", errors="replace").strip())
        text = codec.decode_text(bits, get_table(args.table_mode))
    else:
        container = codec.Container.from_bytes(raw)
        table = get_table(args.table_mode) if args.table_mode_given else None
        text = codec.decompress(container, table)
    _write_output(args.output, text.encode("utf-8"))
    return 0


def cmd_stats(args) -> int:
    text = _decode_text(_read_input(args.input))
    s = codec.stats(text, get_table(args.table_mode))
    rows = [
        ("input_chars", s.input_chars),
        ("b23_bits", s.b23_bits),
        ("a23_bits", s.a23_bits),
        ("baseline_bits", s.baseline_bits),
        ("ratio_vs_baseline", f"{s.ratio_vs_baseline:.6f}"),
        ("baseline_overhead", f"{s.baseline_overhead:.6f}"),
        ("pairs_fused", s.pairs_fused),
        ("cross_boundary_pairs", s.cross_boundary_pairs),
    ]
    _write_output(args.output, "".join(f"{k:<22}{v}\n" for k, v in rows).encode())
    return 0


def cmd_table(args) -> int:
    _write_output(args.output, table_dump(args.table_mode).encode("utf-8"))
    return 0


def cmd_analyze(args) -> int:
    reports = [counting_report(n) for n in parse_range(args.n)]
    header = ["n", "s_bruteforce", "s_recurrence", "s_closed", "p_n"]
    rows = [
        [
            r.n,
            "" if r.s_n_bruteforce is None else r.s_n_bruteforce,
            r.s_n_recurrence,
            f"{r.s_n_closed_form:.6f}",
            f"{r.p_n:.12f}",
        ]
        for r in reports
    ]
    if args.csv:
        w = csv.writer(sys.stdout, lineterminator="\n")
        w.writerow(header)
        w.writerows(rows)
        return 0
    cells = [header] + [[str(c) for c in row] for row in rows]
    widths = [max(len(row[i]) for row in cells) for i in range(len(header))]
    for row in cells:
        print("  ".join(c.rjust(w) for c, w in zip(row, widths)))
    print(f"\ncompression ratio bound: {compression_ratio_bound(table=get_table(args.table_mode)):.6f}")
    return 0


def cmd_mc(args) -> int:
    dist = parse_dist(args.dist, args.table_mode)
    n_values = parse_range(args.n)
    print("n\ttrials\tmean_pairs\tvariance\tstderr\tmean_bits_saved")
    for n in n_values:
        s = pair_frequency_monte_carlo(dist, n, args.trials, args.seed, workers=args.workers)
        print(
            f"{s.n}\t{s.trials}\t{s.mean_pairs:.6f}\t{s.variance:.6f}"
            f"\t{s.stderr:.6f}\t{s.mean_bits_saved:.6f}"
        )
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="b23", description="B23 ternary text codec")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument(
        "--table-mode",
        choices=[m.value for m in TableMode],
        default=None,
        help="coding table variant (default: corrected)",
    )
    common.add_argument("--output", "-o", help="output path (default: stdout)")
    sub = parser.add_subparsers(dest="command", required=True)

    for name, func, helptext in [
        ("encode", cmd_encode, "compress text into a container"),
        ("decode", cmd_decode, "decompress a container back to text"),
        ("stats", cmd_stats, "print compression statistics"),
    ]:
        p = sub.add_parser(name, parents=[common], help=helptext)
        p.add_argument("input", nargs="?", default="-", help="input path, '-' for stdin")
        if name != "stats":
            p.add_argument("--bits-text", action="store_true", help="textual '0'/'1' bitstring I/O")
        p.set_defaults(func=func)

    p = sub.add_parser("table", parents=[common], help="dump the coding table")
    p.set_defaults(func=cmd_table)

    p = sub.add_parser("analyze", parents=[common], help="counting report for a range of n")
    p.add_argument("--n", default=f"1..{BRUTEFORCE_CAP}", help="range A..B")
    p.add_argument("--csv", action="store_true")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("mc", parents=[common], help="Monte Carlo 12-pair statistics")
    p.add_argument("--n", default="10", help="string length or range A..B")
    p.add_argument("--trials", type=int, default=100_000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--dist", default="uniform", help="iid:p0,p1,p2 | markov:FILE | empirical:FILE")
    p.add_argument("--workers", type=int, default=1)
    p.set_defaults(func=cmd_mc)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    args.table_mode_given = args.table_mode is not None
    args.table_mode = TableMode(args.table_mode or TableMode.CORRECTED)
    try:
        return args.func(args)
    except UnsupportedCharacterError as e:
        print(f"b23: error: {e}", file=sys.stderr)
        return EXIT_UNSUPPORTED
    except codec.ContainerError as e:
        print(f"b23: error: malformed container: {e}", file=sys.stderr)
        return EXIT_MALFORMED
    except (UsageError, OSError) as e:
        print(f"b23: error: {e}", file=sys.stderr)
        return EXIT_MALFORMED
    except ValueError as e:
        # bit-text decoding errors (odd length, bad characters)
        print(f"b23: error: malformed input: {e}", file=sys.stderr)
        return EXIT_MALFORMED


if __name__ == "__main__":
    sys.exit(main())
