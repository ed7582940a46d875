"""
Command Line Module

    ncmckay verify <suite> --n K [--deg-xy N] [--deg-t M] [--deg D] [--out report.json]
    ncmckay dims <kind> --n K [--src A --tgt B | --i I --j J --deg D] [--out table.json]

Exit status: 0 when every check passes, 1 when a check fails, 2 for usage
errors, 3 for I/O and configuration errors.
"""

import argparse
import logging
import sys
from typing import List, Optional

from .config import load_config, resolve, setup_logging
from .errors import ConfigError, NcMcKayError
from .generate_report import TABLE_KINDS, build_table, serialize_table, write_table
from .pipeline import VerificationPipeline
from .report_builder import ReportBuilder, failed_results
from .suites import SUITE_NAMES

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_USAGE = 2
EXIT_IO = 3


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ncmckay",
        description="Verify the deformed McKay correspondence for the A_n singularity.",
    )
    parser.add_argument("--config", help="YAML file merged over the packaged defaults")
    sub = parser.add_subparsers(dest="command", required=True)

    verify = sub.add_parser("verify", help="Run a verification suite")
    verify.add_argument("suite", choices=SUITE_NAMES + ("all",))
    verify.add_argument("--n", type=int, help="Singularity index")
    verify.add_argument("--deg-xy", type=int, help="Chart-0 filtration degree bound")
    verify.add_argument("--deg-t", type=int, help="t-degree bound")
    verify.add_argument("--deg", type=int, help="Degree bound for sampled elements of S")
    verify.add_argument("--out", help="Write the JSON report to this path")

    dims = sub.add_parser("dims", help="Compute a dimension table")
    dims.add_argument("kind", choices=TABLE_KINDS)
    dims.add_argument("--n", type=int, help="Singularity index")
    dims.add_argument("--src", type=int, default=0, help="Source summand R(-D_src)")
    dims.add_argument("--tgt", type=int, default=0, help="Target summand R(-D_tgt)")
    dims.add_argument("--i", type=int, default=0, help="Row idempotent for s-block")
    dims.add_argument("--j", type=int, default=0, help="Column idempotent for s-block")
    dims.add_argument("--deg", type=int, help="Top degree for s-block; sets both bounds for hom and ext1")
    dims.add_argument("--deg-xy", type=int, help="Chart-0 filtration degree bound")
    dims.add_argument("--deg-t", type=int, help="t-degree bound")
    dims.add_argument("--out", help="Write the JSON table to this path")
    return parser


def cmd_verify(args: argparse.Namespace, config: dict) -> int:
    defaults = config.get('defaults', {})
    if args.deg is not None:
        config.setdefault('verification', {})['phi_degree'] = args.deg
    pipeline = VerificationPipeline(config)
    report = pipeline.run(
        args.suite,
        resolve(args.n, defaults.get('n', 2)),
        resolve(args.deg_xy, defaults.get('deg_xy', 6)),
        resolve(args.deg_t, defaults.get('deg_t', 3)),
    )
    builder = ReportBuilder()
    if args.out:
        builder.write_report(report, args.out)
        logger.info(f"Report written to {args.out}")
    else:
        sys.stdout.write(builder.serialize_to_json(report))

    failures = failed_results(report)
    if failures:
        first = failures[0]
        logger.error(f"First failing check {first['name']}: {first.get('witness')}")
        return EXIT_FAILED
    return EXIT_OK


def cmd_dims(args: argparse.Namespace, config: dict) -> int:
    defaults = config.get('defaults', {})
    n = resolve(args.n, defaults.get('n', 2))
    max_n = config.get('limits', {}).get('max_n', 4)
    if not 0 <= n <= max_n:
        raise ValueError(f"n must lie in [0, {max_n}], got {n}")
    deg_xy = resolve(args.deg_xy, resolve(args.deg, defaults.get('deg_xy', 6)))
    deg_t = resolve(args.deg_t, resolve(args.deg, defaults.get('deg_t', 3)))
    table = build_table(
        args.kind,
        n=n,
        src=args.src,
        tgt=args.tgt,
        i=args.i,
        j=args.j,
        deg=resolve(args.deg, 3),
        deg_xy=deg_xy,
        deg_t=deg_t,
        max_unknowns=config.get('limits', {}).get('max_unknowns'),
    )
    if args.out:
        write_table(table, args.out)
    else:
        sys.stdout.write(serialize_table(table))
    return EXIT_OK


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_USAGE if e.code else EXIT_OK

    try:
        config = load_config(args.config)
        setup_logging(config)
        if args.command == "verify":
            return cmd_verify(args, config)
        return cmd_dims(args, config)
    except (OSError, ConfigError) as e:
        logger.error(f"{type(e).__name__}: {e}")
        return EXIT_IO
    except NcMcKayError as e:
        logger.error(f"Computation failed: {e}")
        return EXIT_FAILED
    except (ValueError, IndexError) as e:
        logger.error(f"Invalid arguments: {e}")
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
