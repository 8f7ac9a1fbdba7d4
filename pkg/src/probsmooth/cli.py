"""Command-line front end.

Exit codes: 0 success, 1 I/O or data error, 2 usage/config error,
3 a mathematical check failed.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

import numpy as np

from . import __version__
from .bounds import verify_bounds
from .codec import CodecError, ModelConfig, decode, encode, parse_header
from .experiment import (
    ConfigError,
    ExperimentConfig,
    emit_csv,
    emit_plot,
    format_config,
    parse_config,
    run_experiment,
)
from .lemmas import LEMMA_NAMES, fuzz_lemmas

EXIT_OK = 0
EXIT_IO = 1
EXIT_USAGE = 2
EXIT_MATH = 3


def _fail(code: int, message: str) -> int:
    print(f"probsmooth: {message}", file=sys.stderr)
    return code


def _cmd_compress(args) -> int:
    n = args.alphabet
    if not 2 <= n <= 256:
        return _fail(EXIT_USAGE, f"--alphabet must lie in 2..256, got {n}")
    try:
        raw = Path(args.input).read_bytes()
    except OSError as exc:
        return _fail(EXIT_IO, f"cannot read {args.input}: {exc}")
    letters = np.frombuffer(raw, dtype=np.uint8).astype(np.int64) + 1
    if letters.size and letters.max() > n:
        return _fail(EXIT_USAGE,
                     f"input byte {letters.max() - 1} outside alphabet of size {n}")
    try:
        config = ModelConfig.for_sequence(args.model, n, letters.size,
                                          alpha=args.alpha, eps=args.eps)
        stream = encode(config, letters)
    except (CodecError, ValueError) as exc:
        return _fail(EXIT_USAGE, str(exc))
    try:
        Path(args.output).write_bytes(stream)
    except OSError as exc:
        return _fail(EXIT_IO, f"cannot write {args.output}: {exc}")
    bits = 8.0 * len(stream) / max(letters.size, 1)
    print(f"{len(raw)} bytes -> {len(stream)} bytes ({bits:.4f} bits/letter)")
    return EXIT_OK


def _cmd_decompress(args) -> int:
    try:
        stream = Path(args.input).read_bytes()
    except OSError as exc:
        return _fail(EXIT_IO, f"cannot read {args.input}: {exc}")
    try:
        config, _, _ = parse_header(stream)
        if config.n > 256:
            return _fail(EXIT_IO, f"stream alphabet {config.n} does not map to bytes")
        letters = decode(stream)
    except CodecError as exc:
        return _fail(EXIT_IO, str(exc))
    try:
        Path(args.output).write_bytes((letters - 1).astype(np.uint8).tobytes())
    except OSError as exc:
        return _fail(EXIT_IO, f"cannot write {args.output}: {exc}")
    print(f"{len(stream)} bytes -> {letters.size} bytes ({config.name})")
    return EXIT_OK


def _cmd_experiment(args) -> int:
    if args.config is None:
        config = ExperimentConfig()
    else:
        path = Path(args.config)
        if not path.exists():
            return _fail(EXIT_IO, f"config file {path} not found")
        try:
            config = parse_config(path.read_text())
        except ConfigError as exc:
            return _fail(EXIT_USAGE, f"{path}: {exc}")
        except OSError as exc:
            return _fail(EXIT_IO, f"cannot read {path}: {exc}")
    if args.dry_run:
        print(format_config(config), end="")
        return EXIT_OK

    def progress(segments):
        print(f"  S = {segments} done", file=sys.stderr)

    table = run_experiment(config, progress=progress if args.verbose else None)
    try:
        emit_csv(table, config.output)
    except OSError as exc:
        return _fail(EXIT_IO, f"cannot write {config.output}: {exc}")
    print(f"wrote {len(table.rows)} rows to {config.output}")
    if args.plot:
        plot_path = str(Path(config.output).with_suffix(".svg"))
        try:
            emit_plot(table, plot_path)
        except OSError as exc:
            return _fail(EXIT_IO, f"cannot write {plot_path}: {exc}")
        print(f"wrote plot to {plot_path}")
    return EXIT_OK


def _cmd_verify_bounds(args) -> int:
    if args.t < 2:
        return _fail(EXIT_USAGE, f"--t must be at least 2, got {args.t}")
    report = verify_bounds(args.n, args.t, args.samples, seed=args.seed)
    for family in sorted(report.worst_slack):
        slack = report.worst_slack[family]
        print(f"{family}-schedule bound: worst slack {slack:.6g} nats "
              f"over {report.samples} samples")
    if not report.ok:
        for v in report.violations:
            print(f"VIOLATED: {v.family} sample {v.iteration} (seed {v.seed}): "
                  f"measured {v.report.measured:.6g} > bound {v.report.bound:.6g}",
                  file=sys.stderr)
        return EXIT_MATH
    return EXIT_OK


def _cmd_fuzz_lemmas(args) -> int:
    report = fuzz_lemmas(args.iterations, seed=args.seed)
    for name in LEMMA_NAMES:
        if name in report.min_margins:
            print(f"{name}: min slack {report.min_margins[name]:.6g}")
    if not report.ok:
        for v in report.violations:
            print(f"VIOLATED: {v.lemma} iteration {v.iteration} "
                  f"(rerun with --seed {v.seed} --iterations 1): margin {v.margin:.6g}",
                  file=sys.stderr)
        return EXIT_MATH
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="probsmooth",
        description="Adaptive-probability compression toolkit: compress and "
                    "decompress files, run the segment-sweep benchmark, and "
                    "machine-check the redundancy guarantees.")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    c = sub.add_parser("compress", help="compress a file under a chosen model")
    c.add_argument("input")
    c.add_argument("output")
    c.add_argument("--model", default="PS1",
                   help="PS1, PS2, KT, KT-CS, KT-H, KT-R, or PTW-KT (default PS1)")
    c.add_argument("--alphabet", type=int, default=256,
                   help="alphabet size; bytes must be below it (default 256)")
    c.add_argument("--alpha", type=float, default=None,
                   help="override the PS1 smoothing rate")
    c.add_argument("--eps", type=float, default=None,
                   help="override the PS1 share factor")
    c.set_defaults(func=_cmd_compress)

    d = sub.add_parser("decompress", help="restore a compressed file")
    d.add_argument("input")
    d.add_argument("output")
    d.set_defaults(func=_cmd_decompress)

    e = sub.add_parser("experiment", help="run the segment-sweep benchmark")
    e.add_argument("--config", default=None,
                   help="config file (key = value); defaults reproduce the full sweep")
    e.add_argument("--plot", action="store_true", help="also write an SVG plot")
    e.add_argument("--dry-run", action="store_true",
                   help="print the resolved config and exit")
    e.add_argument("--verbose", action="store_true", help="progress to stderr")
    e.set_defaults(func=_cmd_experiment)

    v = sub.add_parser("verify-bounds",
                       help="check measured redundancy against the guarantees")
    v.add_argument("--n", type=int, default=2, help="alphabet size (default 2)")
    v.add_argument("--t", type=int, default=1024, help="sequence length (default 1024)")
    v.add_argument("--samples", type=int, default=1000,
                   help="random (source, sequence) pairs (default 1000)")
    v.add_argument("--seed", type=int, default=0)
    v.set_defaults(func=_cmd_verify_bounds)

    f = sub.add_parser("fuzz-lemmas", help="fuzz the per-step inequality oracles")
    f.add_argument("--iterations", type=int, default=100_000)
    f.add_argument("--seed", type=int, default=0)
    f.set_defaults(func=_cmd_fuzz_lemmas)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
