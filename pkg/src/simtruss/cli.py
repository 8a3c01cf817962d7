"""Command-line entry point.

Exit codes: 0 success, 1 usage error, 2 I/O or input error, 3 memory budget
exhausted, 4 engine and oracle disagree.
"""
from __future__ import annotations

import argparse
import logging
import sys
import warnings

from .analysis import export_filtration, format_filtration, joist_stats
from .core import ComplexParseError, read_complex
from .engine import decompose, top_n
from .generators import FlagParams, ManifoldParams, gen_flag_complex, gen_manifold
from .joists import RECORD_BYTES, BudgetExceededError, find_joists
from .oracle import brute_joists, brute_trussness, compare

EXIT_USAGE, EXIT_IO, EXIT_BUDGET, EXIT_MISMATCH = 1, 2, 3, 4

log = logging.getLogger("simtruss")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _positive(name, minimum=1):
    def check(text):
        value = int(text)
        if value < minimum:
            raise argparse.ArgumentTypeError(f"{name} must be at least {minimum}")
        return value
    return check


def _memory_args(p):
    g = p.add_mutually_exclusive_group()
    g.add_argument("--memory-budget", type=_positive("budget"), metavar="RECORDS",
                   help="candidate records held in memory before spilling (default: unlimited)")
    g.add_argument("--memory-bytes", type=_positive("bytes", RECORD_BYTES), metavar="BYTES",
                   help=f"same budget in bytes, {RECORD_BYTES} bytes per record")
    p.add_argument("--chunks", type=_positive("chunks"), default=8, help="spill chunk count M")
    p.add_argument("--workdir", help="directory for spill chunks (default: a temporary one)")
    p.add_argument("--keep-workdir", action="store_true", help="keep chunk files after each level")
    p.add_argument("--strict-budget", action="store_true",
                   help="fail when one simplex's candidates alone exceed the budget")


def _decompose_args(p):
    p.add_argument("--input", required=True)
    p.add_argument("--max-size", type=_positive("max-size", 2))
    p.add_argument("--parallel-components", type=_positive("parallel-components"), default=1,
                   metavar="N")
    _memory_args(p)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="simtruss", description="Truss decomposition of simplicial complexes.")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("-q", "--quiet", action="store_true", help="suppress the progress log")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("decompose", parents=[common], help="trussness of every simplex as TSV")
    _decompose_args(p)
    p.add_argument("--non-trivial-only", action="store_true",
                   help="omit rows whose trussness equals the lower bound")
    p.add_argument("--output")

    p = sub.add_parser("topn", parents=[common],
                       help="the n simplices of size q with largest trussness")
    p.add_argument("--input", required=True)
    p.add_argument("--n", type=_positive("n"), required=True)
    p.add_argument("--q", type=_positive("q", 2), required=True)
    p.add_argument("--output")
    _memory_args(p)

    p = sub.add_parser("generate", help="write a synthetic complex")
    gen = p.add_subparsers(dest="model", required=True, parser_class=_Parser)
    m = gen.add_parser("manifold", parents=[common], help="growing simplicial manifold")
    m.add_argument("--d", type=_positive("d"), required=True)
    m.add_argument("--s", type=_positive("s"), required=True)
    m.add_argument("--seed", type=int, default=0)
    m.add_argument("--output")
    f = gen.add_parser("flag", parents=[common], help="random flag complex over G(n, p)")
    f.add_argument("--n", type=_positive("n", 0), required=True)
    f.add_argument("--p", type=float, required=True)
    f.add_argument("--max-size", type=_positive("max-size", 2), required=True)
    f.add_argument("--seed", type=int, default=0)
    f.add_argument("--output")

    p = sub.add_parser("stats", parents=[common], help="joist and trussness statistics")
    _decompose_args(p)
    p.add_argument("--output")

    p = sub.add_parser("filtration", parents=[common], help="reverse-trussness filtration")
    _decompose_args(p)
    p.add_argument("--output")

    p = sub.add_parser("oracle", parents=[common],
                       help="compare the engine with the brute-force reference")
    p.add_argument("--input", required=True)
    p.add_argument("--max-size", type=_positive("max-size", 2))
    _memory_args(p)
    return parser


def _write(path, text):
    if path is None:
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)


def _budget(args):
    if args.memory_bytes is not None:
        return args.memory_bytes // RECORD_BYTES
    return args.memory_budget


def _run_decompose(args):
    K = read_complex(args.input)
    dec = decompose(K, max_size=args.max_size, budget=_budget(args), chunks=args.chunks,
                    workdir=args.workdir, keep_workdir=args.keep_workdir,
                    strict_budget=args.strict_budget,
                    workers=args.parallel_components)
    return K, dec


def _dispatch(args) -> int:
    if args.command == "decompose":
        _, dec = _run_decompose(args)
        _write(args.output, dec.to_tsv(include_trivial=not args.non_trivial_only))
    elif args.command == "topn":
        K = read_complex(args.input)
        with warnings.catch_warnings(record=True) as caught:
            warnings.simplefilter("always")
            ranked = top_n(K, args.n, args.q, budget=_budget(args), chunks=args.chunks,
                           workdir=args.workdir)
        for w in caught:
            log.warning("%s", w.message)
        _write(args.output, "".join(
            f"{' '.join(map(str, K.external(s)))}\t{t}\n" for s, t in ranked))
    elif args.command == "generate":
        if args.model == "manifold":
            K = gen_manifold(ManifoldParams(args.d, args.s, args.seed))
        else:
            if not 0 <= args.p <= 1:
                raise UsageError("--p must lie in [0, 1]")
            K = gen_flag_complex(FlagParams(args.n, args.p, args.max_size, args.seed))
        _write(args.output, K.to_text())
    elif args.command == "stats":
        K, dec = _run_decompose(args)
        _write(args.output, joist_stats(K, dec).to_tsv())
    elif args.command == "filtration":
        K, dec = _run_decompose(args)
        _write(args.output, format_filtration(K, export_filtration(K, dec)))
    elif args.command == "oracle":
        K = read_complex(args.input)
        dec = decompose(K, max_size=args.max_size, budget=_budget(args), chunks=args.chunks,
                        workdir=args.workdir, strict_budget=args.strict_budget)
        ref = brute_trussness(K, args.max_size)
        problems = compare(dec.tr, dec.lb, ref)
        top = K.max_size if args.max_size is None else min(args.max_size, K.max_size)
        for q in range(2, top + 1):
            E = K.faces(q)
            if find_joists(E) != brute_joists(E):
                problems.append(f"joists differ at size {q}")
        for line in problems:
            print(line, file=sys.stderr)
        print(f"checked={len(ref.tr)} mismatches={len(problems)}")
        return EXIT_MISMATCH if problems else 0
    return 0


def run(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    handler = logging.StreamHandler(sys.stderr)
    handler.setFormatter(logging.Formatter("%(message)s"))
    root = logging.getLogger("simtruss")
    root.handlers[:] = [handler]
    root.setLevel(logging.WARNING if args.quiet else logging.INFO)
    root.propagate = False
    try:
        return _dispatch(args)
    except UsageError as exc:
        print(f"simtruss: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (OSError, ComplexParseError) as exc:
        print(f"simtruss: error: {exc}", file=sys.stderr)
        return EXIT_IO
    except BudgetExceededError as exc:
        print(f"simtruss: error: {exc}", file=sys.stderr)
        return EXIT_BUDGET


def main():
    sys.exit(run())
