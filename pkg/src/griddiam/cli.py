"""Command line: ``griddiam gen | run | compare``.

Exit status is 0 on success, 1 for usage errors (bad flags, unreadable or
malformed input) and 2 when a method fails at run time.
"""
from __future__ import annotations

import argparse
import logging
import sys

from .errors import UsageError
from .generators import KINDS, generate
from .harness import ExperimentConfig, GeneratorSpec, ORACLE_CEILING, run
from .pointio import write_points

EXIT_OK, EXIT_USAGE, EXIT_RUNTIME = 0, 1, 2

_METHOD_ALIASES = {"two-approx": "two_approx"}
CLI_METHODS = ("exact", "two-approx", "agarwal", "chan", "paper")


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _eps_list(text: str) -> list:
    try:
        return [float(tok) for tok in text.split(",") if tok.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad eps list {text!r}") from None


def _method_list(text: str) -> list:
    out = []
    for tok in text.split(","):
        tok = tok.strip()
        if tok not in CLI_METHODS:
            raise argparse.ArgumentTypeError(f"unknown method {tok!r}")
        out.append(_METHOD_ALIASES.get(tok, tok))
    return out


def _generator(text: str) -> GeneratorSpec:
    parts = text.split(",")
    if len(parts) != 4:
        raise argparse.ArgumentTypeError("expected KIND,N,D,SEED")
    try:
        return GeneratorSpec(parts[0], int(parts[1]), int(parts[2]), int(parts[3]))
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad generator spec {text!r}") from None


def _add_run_options(p, methods_flag):
    if methods_flag == "--method":
        p.add_argument("--method", required=True, choices=CLI_METHODS)
    else:
        p.add_argument("--methods", required=True, type=_method_list,
                       help="comma-separated list of " + ", ".join(CLI_METHODS))
    p.add_argument("--eps", type=_eps_list, default=[0.1], help="E[,E...] in (0, 1]")
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--input", help="CSV point file")
    src.add_argument("--generate", type=_generator, metavar="KIND,N,D,SEED")
    p.add_argument("--oracle", action="store_true", help="also compute the exact diameter")
    p.add_argument("--oracle-ceiling", type=int, default=ORACLE_CEILING)
    p.add_argument("--cap", type=int, default=4096, help="diametrical pair list cap")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--out", required=True)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="griddiam", description="Approximate point-set diameter.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    g = sub.add_parser("gen", help="write a synthetic point cloud as CSV")
    g.add_argument("--kind", required=True, choices=KINDS)
    g.add_argument("--n", type=int, required=True)
    g.add_argument("--d", type=int, required=True)
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--out", required=True)

    _add_run_options(sub.add_parser("run", help="run one method over an eps sweep"), "--method")
    _add_run_options(sub.add_parser("compare", help="run several methods side by side"), "--methods")
    return parser


def main(argv=None) -> int:
    logging.basicConfig(level=logging.WARNING, format="%(levelname)s: %(message)s")
    args = build_parser().parse_args(argv)
    try:
        if args.command == "gen":
            write_points(generate(args.kind, args.n, args.d, args.seed), args.out)
            return EXIT_OK
        methods = args.methods if args.command == "compare" else [_METHOD_ALIASES.get(args.method, args.method)]
        config = ExperimentConfig(
            methods=methods,
            eps=args.eps,
            input=args.input,
            generator=args.generate,
            output=args.out,
            cap=args.cap,
            oracle=args.oracle,
            oracle_ceiling=args.oracle_ceiling,
            workers=args.workers,
        )
        config.validate()
    except (UsageError, OSError) as exc:
        print(f"griddiam: {exc}", file=sys.stderr)
        return EXIT_USAGE
    try:
        run(config)
    except (UsageError, OSError) as exc:
        print(f"griddiam: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except Exception as exc:  # noqa: BLE001 - report any method failure
        print(f"griddiam: {args.command} failed: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_RUNTIME
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
