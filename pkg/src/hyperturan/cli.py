"""Command-line front end.

    hyperturan formula   --kind loose --r 3 --lengths 3,3 --n 12
    hyperturan construct --kind linear --r 3 --lengths 4,4 --n 20 --out ext.hg
    hyperturan check     --input ext.hg --kind linear --lengths 4,4
    hyperturan oracle    --kind linear --r 3 --lengths 2 --n 6
    hyperturan verify    --kind matching --r 3 --s 1 --n-range 4..7
    hyperturan kmw       --r 3 --n 6
    hyperturan selftest  --seed 0

Exit codes: 0 free / agree, 1 contains / disagree, 2 usage or infeasible
input, 3 inexact (a search budget ran out).
"""

from __future__ import annotations

import argparse
import csv
import io
import logging
import random
import sys
from pathlib import Path

from . import __version__, naive
from .cache import OracleCache, cached_turan_exact, resolve_path
from .errors import HyperTuranError
from .hypercore import Hypergraph, read_hg, write_hg
from .oracle import Budget, VerifyReport, kmw_max, verify_threshold
from .patterns import KINDS, ForestSpec, PathSpec, contains_forest
from .problem import PROBLEM_KINDS, Problem

EXIT_OK = 0
EXIT_FOUND = 1
EXIT_USAGE = 2
EXIT_INEXACT = 3

DEFAULT_SEED = 20240601

log = logging.getLogger("hyperturan")


class UsageError(Exception):
    pass


# -- argument helpers ---------------------------------------------------------


def parse_lengths(text: str) -> tuple[int, ...]:
    try:
        values = tuple(int(x) for x in text.split(",") if x.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"lengths must be a comma list of integers, got {text!r}")
    if not values:
        raise argparse.ArgumentTypeError("lengths list is empty")
    return values


def parse_range(text: str) -> range:
    lo, sep, hi = text.partition("..")
    try:
        a, b = int(lo), int(hi)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected A..B, got {text!r}")
    if not sep or a > b:
        raise argparse.ArgumentTypeError(f"expected A..B with A <= B, got {text!r}")
    return range(a, b + 1)


def _problem(args, r: int | None = None) -> Problem:
    r = r if r is not None else args.r
    if args.kind == "graph" and r is None:
        r = 2
    if r is None:
        raise UsageError("--r is required for this kind")
    if args.kind == "matching":
        if args.s is None:
            raise UsageError("--s is required for kind matching")
        return Problem("matching", r, s=args.s)
    if args.lengths is None:
        raise UsageError(f"--lengths is required for kind {args.kind}")
    return Problem(args.kind, r, args.lengths)


def _n_values(args) -> range:
    if getattr(args, "n_range", None) is not None:
        return args.n_range
    if getattr(args, "n", None) is not None:
        return range(args.n, args.n + 1)
    raise UsageError("give --n or --n-range")


def _cache(args) -> OracleCache | None:
    path = resolve_path(args.cache, args.no_cache)
    return OracleCache(path) if path is not None else None


def _budget(args) -> Budget:
    return Budget(args.node_budget, args.time_budget_sec)


def emit_table(header: list[str], rows: list[list], fmt: str, out) -> None:
    cells = [[("" if c is None else str(c)) for c in row] for row in rows]
    if fmt in ("csv", "tsv"):
        buf = io.StringIO()
        writer = csv.writer(buf, delimiter="," if fmt == "csv" else "\t", lineterminator="\n")
        writer.writerow(header)
        writer.writerows(cells)
        out.write(buf.getvalue())
        return
    esc = [[c.replace("|", "\\|") for c in row] for row in [header] + cells]
    out.write("| " + " | ".join(esc[0]) + " |\n")
    out.write("|" + "|".join("---" for _ in header) + "|\n")
    for row in esc[1:]:
        out.write("| " + " | ".join(row) + " |\n")


def _fmt_lengths(problem: Problem) -> str:
    if problem.kind == "matching":
        return f"s={problem.s}"
    return ",".join(map(str, problem.lengths))


# -- subcommands --------------------------------------------------------------


def cmd_formula(args) -> int:
    problem = _problem(args)
    header = ["n", "kind", "r", "lengths", "t", "star_sum", "correction", "value", "validity", "warnings"]
    rows = []
    for n in _n_values(args):
        res = problem.formula(n)
        rows.append([n, problem.kind, problem.r, _fmt_lengths(problem), res.t, res.star_sum,
                     res.correction, res.value, res.validity, "; ".join(res.warnings)])
    emit_table(header, rows, args.format, sys.stdout)
    return EXIT_OK


def cmd_construct(args) -> int:
    problem = _problem(args)
    target = problem.formula(args.n).value
    out = Path(args.out)
    if problem.kind == "matching":
        from .constructions import matching_candidates

        cands = matching_candidates(args.n, problem.r, problem.s)
        written = []
        for tag, h in (("A", cands.clique), ("B", cands.star)):
            path = out.with_name(f"{out.stem}.{tag}{out.suffix or '.hg'}")
            write_hg(path, h, [f"{problem.label()} n={args.n} candidate {tag}"])
            written.append(h.m)
            print(f"{path}\tedges={h.m}")
        count = max(written)
    else:
        h = problem.construction(args.n)
        write_hg(out, h, [f"{problem.label()} r={problem.r} n={args.n}"])
        count = h.m
        print(f"{out}\tedges={h.m}")
    agree = count == target
    print(f"formula={target}\t{'agree' if agree else 'DISAGREE'}")
    return EXIT_OK if agree else EXIT_FOUND


def _forest_for_check(args, h: Hypergraph) -> ForestSpec:
    if args.spec:
        parts = []
        for item in args.spec.split(","):
            kind, _, length = item.strip().partition(":")
            try:
                parts.append(PathSpec(kind, int(length)))
            except ValueError:
                raise UsageError(f"bad --spec item {item!r}; expected kind:length")
        return ForestSpec(tuple(parts))
    if args.kind is None:
        raise UsageError("give --kind or --spec")
    if args.r is not None and args.r != h.r:
        raise UsageError(f"--r {args.r} does not match the input file (r={h.r})")
    if args.kind == "berge":
        if args.lengths is None:
            raise UsageError("--lengths is required for kind berge")
        return ForestSpec.of("berge", args.lengths)
    return _problem(args, r=h.r).forest()


def cmd_check(args) -> int:
    h = read_hg(args.input)
    spec = _forest_for_check(args, h)
    witness = contains_forest(h, spec)
    if witness is None:
        print("FREE")
        return EXIT_OK
    print("CONTAINS")
    text = witness.to_json()
    print(text)
    if args.witness_out:
        Path(args.witness_out).write_text(text + "\n", encoding="utf-8")
    return EXIT_FOUND


def cmd_oracle(args) -> int:
    problem = _problem(args)
    spec = problem.forest()
    res = cached_turan_exact(_cache(args), args.n, problem.r, spec, budget=_budget(args),
                             mode=args.mode, workers=args.workers)
    print(f"value={res.value}\texact={str(res.exact).lower()}\tmode={res.mode}")
    comment = [f"extremal {problem.label()} r={problem.r} n={args.n} value={res.value}"]
    if args.witness_out:
        write_hg(args.witness_out, res.witness, comment)
        print(f"witness={args.witness_out}")
    else:
        sys.stdout.write(res.witness.to_hg(comment))
    return EXIT_OK if res.exact else EXIT_INEXACT


def _print_report(report: VerifyReport, fmt: str) -> None:
    header = ["n", "oracle", "exact", "formula", "construction", "agree"]
    rows = [
        [row.n, row.oracle, str(row.exact).lower(), row.formula, row.construction,
         "yes" if row.agree else "no"]
        for row in report.rows
    ]
    emit_table(header, rows, fmt, sys.stdout)
    threshold = report.threshold
    if threshold is None:
        print("empirical threshold: no agreement in range")
    else:
        print(f"empirical threshold: n >= {threshold}")


def cmd_verify(args) -> int:
    problem = _problem(args)
    report = verify_threshold(problem, _n_values(args), _budget(args), args.mode, args.workers, _cache(args))
    _print_report(report, args.format)
    if not report.all_exact:
        return EXIT_INEXACT
    return EXIT_OK if report.threshold is not None else EXIT_FOUND


def cmd_kmw(args) -> int:
    res = kmw_max(args.n, args.r, _budget(args), args.mode, args.workers)
    print(f"value={res.value}\texact={str(res.exact).lower()}\tmode={res.mode}")
    sys.stdout.write(res.witness.to_hg([f"no singleton intersections r={args.r} n={args.n}"]))
    return EXIT_OK if res.exact else EXIT_INEXACT


def random_hypergraph(rng: random.Random, n: int, r: int, m: int) -> Hypergraph:
    from .hypercore import all_r_subsets

    pool = all_r_subsets(n, r)
    return Hypergraph(n, r, tuple(rng.sample(pool, min(m, len(pool)))))


def selftest_specs() -> list[ForestSpec]:
    singles = [PathSpec(k, ell) for k in ("loose", "linear", "berge") for ell in (1, 2, 3)]
    specs = [ForestSpec((p,)) for p in singles]
    specs += [ForestSpec((a, b)) for i, a in enumerate(singles) for b in singles[i:]
              if a.kind == b.kind]
    return specs


def cmd_selftest(args) -> int:
    rng = random.Random(args.seed)
    specs = selftest_specs()
    mismatches = 0
    for _ in range(args.graphs):
        n = rng.randint(3, 8)
        h = random_hypergraph(rng, n, 3, rng.randint(0, 10))
        for spec in specs:
            fast = contains_forest(h, spec) is not None
            slow = naive.naive_contains_forest(h, spec)
            if fast != slow:
                mismatches += 1
                print(f"MISMATCH {spec} fast={fast} naive={slow}\n{h.to_hg()}")
    print(f"graphs={args.graphs}\tspecs={len(specs)}\tmismatches={mismatches}")
    return EXIT_OK if mismatches == 0 else EXIT_FOUND


# -- parser -------------------------------------------------------------------


def _pattern_flags(p: argparse.ArgumentParser, kinds=PROBLEM_KINDS, r_required=False):
    p.add_argument("--kind", choices=kinds, required=True)
    p.add_argument("--r", type=int, required=r_required)
    p.add_argument("--lengths", type=parse_lengths, help="comma list; vertex counts for kind graph")
    p.add_argument("--s", type=int, help="matching: forbid s+1 pairwise disjoint edges")


def _search_flags(p: argparse.ArgumentParser):
    p.add_argument("--mode", choices=("auto", "exhaustive", "bnb"), default="auto")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--node-budget", type=int)
    p.add_argument("--time-budget-sec", type=float)


def _cache_flags(p: argparse.ArgumentParser):
    p.add_argument("--cache", help="JSON-lines cache path (default: $TURAN_CACHE or ~/.cache)")
    p.add_argument("--no-cache", action="store_true")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="hyperturan", description="Turán numbers of hypergraph path forests.")
    parser.add_argument("--version", action="version", version=__version__)
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("formula", help="evaluate a closed form")
    _pattern_flags(p, kinds=PROBLEM_KINDS[:-1])
    p.add_argument("--n", type=int)
    p.add_argument("--n-range", type=parse_range)
    p.add_argument("--format", choices=("csv", "md", "tsv"), default="csv")
    p.set_defaults(func=cmd_formula)

    p = sub.add_parser("construct", help="write an extremal construction")
    _pattern_flags(p, kinds=PROBLEM_KINDS[:-1])
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("check", help="test a .hg file for a forbidden forest")
    p.add_argument("--input", required=True)
    p.add_argument("--kind", choices=PROBLEM_KINDS)
    p.add_argument("--r", type=int)
    p.add_argument("--lengths", type=parse_lengths)
    p.add_argument("--s", type=int)
    p.add_argument("--spec", help=f"explicit forest, e.g. loose:2,linear:1 (kinds: {', '.join(KINDS)})")
    p.add_argument("--witness-out")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("oracle", help="exact Turán number by search")
    _pattern_flags(p)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--witness-out")
    _search_flags(p)
    _cache_flags(p)
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("verify", help="compare oracle, formula and construction over a range of n")
    _pattern_flags(p)
    p.add_argument("--n-range", type=parse_range, required=True)
    p.add_argument("--format", choices=("csv", "md", "tsv"), default="csv")
    _search_flags(p)
    _cache_flags(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("kmw", help="largest r-graph with no two edges meeting in one vertex")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--r", type=int, required=True)
    _search_flags(p)
    p.set_defaults(func=cmd_kmw)

    p = sub.add_parser("selftest", help="compare the embedder with brute force on random inputs")
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.add_argument("--graphs", type=int, default=50)
    p.set_defaults(func=cmd_selftest)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except (UsageError, HyperTuranError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
