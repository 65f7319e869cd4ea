"""Command-line front end.

Exit codes: 0 answered, 2 input error, 3 self-check mismatch,
4 at least one query range failed.
"""

from __future__ import annotations

import argparse
import csv
import logging
import sys
from pathlib import Path

from . import bench
from .cliquegen import Graph, brute_force_clique, build_instance, parse_graph
from .dictionary import Dictionary
from .engine import (
    DEFAULT_MEMORY_CAP, build_index, folklore_solve, load_index, query, save_index, solve,
    solve_compressed, witness,
)
from .errors import WordBreakError
from .formats import InputError, format_words, read_ranges, read_text, read_words
from .slp import build_balanced_slp, expand, format_slp, parse_slp

log = logging.getLogger("slpwordbreak")

EXIT_OK, EXIT_INPUT, EXIT_MISMATCH, EXIT_QUERY = 0, 2, 3, 4


class CliError(Exception):
    pass


def _load_slp(path: str):
    return parse_slp(Path(path).read_text())


def _load_dict(path: str, tokens: bool) -> Dictionary:
    return Dictionary(read_words(path, tokens))


def cmd_build_slp(args) -> int:
    text = read_text(args.text, args.tokens)
    if not text:
        raise CliError(f"{args.text}: empty input")
    slp = build_balanced_slp(text, 256 if not args.tokens else None)
    Path(args.out).write_text(format_slp(slp))
    log.info("wrote %s: %d rules, N=%d, height %d", args.out, slp.size, len(slp),
             slp.height[slp.root])
    return EXIT_OK


def cmd_solve(args) -> int:
    slp = _load_slp(args.slp)
    d = _load_dict(args.dict, args.tokens)
    if args.index:
        answer = solve(build_index(slp, d, balance_first=False, memory_cap=args.memory_cap))
    else:
        answer = solve_compressed(slp, d)
    print("YES" if answer else "NO")
    status = EXIT_OK
    if args.expand_check:
        text = expand(slp, args.limit)
        if bool(folklore_solve(text, d)[-1]) != answer:
            print("MISMATCH")
            status = EXIT_MISMATCH
    if args.witness is not None:
        factors = witness(slp, d, args.witness)
        print(" ".join(map(str, factors)) if factors is not None else "-")
    return status


def cmd_index(args) -> int:
    slp = _load_slp(args.slp)
    d = _load_dict(args.dict, args.tokens)
    index = build_index(slp, d, balance_first=not args.no_balance, memory_cap=args.memory_cap)
    save_index(index, args.out, slp)
    log.info("index: %s", index.stats)
    return EXIT_OK


def cmd_query(args) -> int:
    slp = _load_slp(args.slp)
    d = _load_dict(args.dict, args.tokens)
    if args.index:
        index = load_index(args.index, slp, d)
    else:
        index = build_index(slp, d, balance_first=not args.no_balance,
                            memory_cap=args.memory_cap)
    status = EXIT_OK
    for lineno, rng in read_ranges(args.ranges):
        try:
            if rng is None:
                raise InputError(f"line {lineno}: expected 'i j'")
            print("1" if query(index, *rng) else "0")
        except (WordBreakError, InputError) as exc:
            log.warning("ranges line %d: %s", lineno, exc)
            print("ERR")
            status = EXIT_QUERY
    return status


def cmd_gen_clique(args) -> int:
    if args.k < 1:
        raise CliError("--k must be at least 1")
    if args.edges:
        g = parse_graph(Path(args.edges).read_text())
        if args.n is not None and args.n != g.n:
            raise CliError(f"--n {args.n} disagrees with graph file (n={g.n})")
        source = f"edges={args.edges}"
    else:
        if args.n is None or args.random is None:
            raise CliError("give --edges FILE, or --n with --random P")
        if args.n < 1 or not 0.0 <= args.random <= 1.0:
            raise CliError("need --n >= 1 and 0 <= P <= 1")
        g = Graph.random(args.n, args.random, args.seed)
        source = f"random p={args.random} seed={args.seed}"
    log.info("graph n=%d, %d edges (%s)", g.n, len(g.edges), source)
    if 4 * args.k > g.n:
        log.warning("4k=%d exceeds n=%d: the instance is trivially NO", 4 * args.k, g.n)
    inst = build_instance(g, args.k)
    words = list(dict.fromkeys(inst.dict_words))
    prefix = args.out
    header = [f"clique instance n={g.n} k={args.k} N={inst.N} {source}"]
    Path(f"{prefix}.slp").write_text(format_slp(inst.slp, header))
    Path(f"{prefix}.dict").write_text(format_words(words))
    fields = [str(g.n), str(args.k), str(inst.N)]
    if args.oracle:
        fields.append("YES" if brute_force_clique(g, 4 * args.k) else "NO")
    else:
        fields.append("-")
    Path(f"{prefix}.manifest").write_text(" ".join(fields) + "\n")
    log.info("wrote %s.{slp,dict,manifest}: |w|=%d, %d rules, %d words", prefix,
             len(inst.slp), inst.slp.size, len(words))
    return EXIT_OK


def cmd_expand(args) -> int:
    slp = _load_slp(args.slp)
    tokens = expand(slp, args.limit)
    if args.tokens:
        sys.stdout.write(" ".join(map(str, tokens)) + "\n")
    else:
        if any(t > 255 for t in tokens):
            raise CliError("expansion has tokens above 255; use --tokens")
        sys.stdout.flush()
        sys.stdout.buffer.write(bytes(tokens))
        sys.stdout.buffer.flush()
    return EXIT_OK


def cmd_bench(args) -> int:
    if args.suite == "scaling-N":
        params = {"tmin": args.tmin, "tmax": args.tmax, "seed": args.seed}
    elif args.suite == "scaling-m":
        params = {"ms": tuple(args.m), "seed": args.seed}
    else:
        params = {"n": args.n, "k": args.k, "p": args.p, "seed": args.seed}
    log.info("bench %s %s", args.suite, params)
    out = open(args.csv, "w", newline="") if args.csv else sys.stdout
    try:
        writer = csv.DictWriter(out, fieldnames=bench.COLUMNS)
        writer.writeheader()
        for row in bench.run_suite(args.suite, **params):
            writer.writerow(row)
            out.flush()
    finally:
        if out is not sys.stdout:
            out.close()
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="slpwordbreak",
                                description="Word Break on SLP-compressed text.")
    p.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = p.add_subparsers(dest="command", required=True)

    def with_dict(sp):
        sp.add_argument("slp", help="SLP file")
        sp.add_argument("dict", help="dictionary file (one word per line)")
        sp.add_argument("--tokens", action="store_true",
                        help="dictionary lines are space-separated decimal tokens")
        sp.add_argument("--memory-cap", type=int, default=DEFAULT_MEMORY_CAP,
                        help="refuse to build indexes estimated above this many bytes")

    sp = sub.add_parser("build-slp", help="build a balanced SLP from a text file")
    sp.add_argument("text")
    sp.add_argument("--out", required=True)
    sp.add_argument("--tokens", action="store_true", help="text is decimal tokens")
    sp.set_defaults(func=cmd_build_slp)

    sp = sub.add_parser("solve", help="decide Word Break for the whole text")
    with_dict(sp)
    sp.add_argument("--expand-check", action="store_true",
                    help="also run the uncompressed algorithm on the expansion")
    sp.add_argument("--limit", type=int, default=10**7,
                    help="largest expansion --expand-check will materialize")
    sp.add_argument("--witness", type=int, metavar="LIMIT",
                    help="print one factorization's word lengths (expands up to LIMIT)")
    sp.add_argument("--index", action="store_true",
                    help="keep every per-rule table (as the index does) while solving")
    sp.set_defaults(func=cmd_solve)

    sp = sub.add_parser("index", help="build and save a substring query index")
    with_dict(sp)
    sp.add_argument("--out", required=True)
    sp.add_argument("--no-balance", action="store_true")
    sp.set_defaults(func=cmd_index)

    sp = sub.add_parser("query", help="answer substring queries from a ranges file")
    with_dict(sp)
    sp.add_argument("ranges", help="file with one 'i j' pair per line (1-based, inclusive)")
    sp.add_argument("--index", help="saved index built from the same SLP and dictionary")
    sp.add_argument("--no-balance", action="store_true")
    sp.set_defaults(func=cmd_query)

    sp = sub.add_parser("gen-clique", help="emit a 4k-clique Word Break instance")
    sp.add_argument("--n", type=int)
    sp.add_argument("--k", type=int, default=1)
    sp.add_argument("--edges", help="graph file: 'G n m' then 'u v' lines")
    sp.add_argument("--random", type=float, metavar="P", help="Erdos-Renyi edge probability")
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--oracle", action="store_true",
                    help="record the brute-force answer in the manifest")
    sp.add_argument("--out", required=True, help="output prefix")
    sp.set_defaults(func=cmd_gen_clique)

    sp = sub.add_parser("expand", help="print the text an SLP generates")
    sp.add_argument("slp")
    sp.add_argument("--tokens", action="store_true")
    sp.add_argument("--limit", type=int, default=10**7)
    sp.set_defaults(func=cmd_expand)

    sp = sub.add_parser("bench", help="run a smoke benchmark suite, CSV to stdout")
    sp.add_argument("suite", choices=sorted(bench.SUITES))
    sp.add_argument("--csv", help="write CSV here instead of stdout")
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--tmin", type=int, default=10)
    sp.add_argument("--tmax", type=int, default=30)
    sp.add_argument("--m", type=int, nargs="+", default=[8, 16, 32, 64])
    sp.add_argument("--n", type=int, default=20)
    sp.add_argument("--k", type=int, default=1)
    sp.add_argument("--p", type=float, default=0.5)
    sp.set_defaults(func=cmd_bench)
    return p


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s: %(message)s")
    try:
        return args.func(args)
    except (WordBreakError, InputError, CliError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
