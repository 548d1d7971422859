"""Command-line front end: run case studies with cost reports, solve
recurrence specs, check amortized ledgers, and emit the consolidated table.

Exit codes: 0 all checks passed, 1 a check failed, 2 invalid input.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from typing import Optional

from .amortized import NoMultiplier, collect_corpus, minimal_multiplier, run_sequence
from .algorithms import ALGORITHM_NAMES, all_bundles, get_bundle
from .algorithms.dynarray import dynarray_scheme, new_dynarray
from .algorithms.skew_heap import new_skew_heap, skew_scheme, skew_shape
from .algorithms.splay_tree import new_splay_tree, splay_scheme, splay_shape
from .recurrence import RecurrenceError, akra_bazzi_class, empirical_ratio_check, load_spec
from .algorithms.sorting import merge_sort_recurrence
from .algorithms.karatsuba import karatsuba_recurrence
from .algorithms.search import bsearch_recurrence
from .algorithms.select import select_recurrence

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_BAD_INPUT = 2

BUILTIN_SPECS = {
    "merge_sort": merge_sort_recurrence,
    "karatsuba": karatsuba_recurrence,
    "binary_search": bsearch_recurrence,
    "select": select_recurrence,
}

SCHEMES = {
    "dynarray": (dynarray_scheme, new_dynarray, lambda n: 1),
    "skew_heap": (skew_scheme, new_skew_heap, skew_shape),
    "splay_tree": (splay_scheme, new_splay_tree, splay_shape),
}


def _emit(lines: list[str], out: Optional[str]) -> None:
    text = "\n".join(lines) + "\n"
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _table(header: list[str], rows: list[list], fmt: str) -> list[str]:
    cells = [[str(c) for c in row] for row in rows]
    if fmt == "csv":
        lines = ["# report v1"]
        lines.append(",".join(header))
        lines.extend(",".join(row) for row in cells)
        return lines
    widths = [max(len(h), *(len(r[i]) for r in cells)) if cells else len(h) for i, h in enumerate(header)]
    def fmt_row(row):
        return "| " + " | ".join(c.ljust(w) for c, w in zip(row, widths)) + " |"
    lines = [fmt_row(header), "|" + "|".join("-" * (w + 2) for w in widths) + "|"]
    lines.extend(fmt_row(r) for r in cells)
    return lines


def cmd_run(args) -> int:
    try:
        bundle = get_bundle(args.algo)
    except KeyError:
        print(f"error: unknown algorithm {args.algo!r}; known: {', '.join(ALGORITHM_NAMES)}",
              file=sys.stderr)
        return EXIT_BAD_INPUT
    try:
        sizes = [int(s) for s in args.sizes.split(",") if s != ""]
        if not sizes or any(s < 0 for s in sizes):
            raise ValueError
    except ValueError:
        print(f"error: bad --sizes {args.sizes!r}", file=sys.stderr)
        return EXIT_BAD_INPUT

    rows = []
    failed = False
    for size in sizes:
        for trial in range(args.trials):
            rng = random.Random((args.seed, size, trial).__hash__() & 0x7FFFFFFF)
            case = bundle.gen_input(rng, size)
            result = bundle.run(case)
            bound = bundle.bound(result.size)
            within = result.cost <= bound
            if not (within and result.ok):
                failed = True
            ratio = result.cost / bound if bound else 0.0
            rows.append(
                [size, trial, result.cost, bound, f"{ratio:.4f}",
                 "yes" if result.ok else "NO", "yes" if within else "NO"]
            )
    header = ["n", "trial", "cost", "bound", "ratio", "correct", "within_bound"]
    _emit(_table(header, rows, args.format), args.out)
    return EXIT_CHECK_FAILED if failed else EXIT_OK


def cmd_recurrence(args) -> int:
    if args.builtin:
        if args.builtin not in BUILTIN_SPECS:
            print(f"error: unknown builtin {args.builtin!r}; known: {', '.join(BUILTIN_SPECS)}",
                  file=sys.stderr)
            return EXIT_BAD_INPUT
        spec = BUILTIN_SPECS[args.builtin]()
    else:
        if not args.spec:
            print("error: provide a spec file or --builtin NAME", file=sys.stderr)
            return EXIT_BAD_INPUT
        try:
            spec = load_spec(args.spec)
        except (OSError, json.JSONDecodeError, KeyError, RecurrenceError, ValueError) as exc:
            print(f"error: cannot load spec: {exc}", file=sys.stderr)
            return EXIT_BAD_INPUT
    try:
        result = akra_bazzi_class(spec)
    except RecurrenceError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BAD_INPUT
    residual = abs(
        sum(float(t.a) * float(t.b) ** result.p for t in spec.terms) - 1.0
    )
    lines = [
        f"characteristic exponent p = {result.p:.9f}",
        f"case: {result.case}",
        f"result: Theta({result.result_class.render()})",
        f"residual: {residual:.2e}",
    ]
    code = EXIT_OK
    if spec.g_concrete is not None:
        report = empirical_ratio_check(spec, result.result_class, 2 ** 8, 2 ** 16)
        lines.append(f"empirical check: {report.render()}")
        if not report.passed:
            code = EXIT_CHECK_FAILED
    else:
        lines.append("empirical check: skipped (no concrete toll in spec)")
    _emit(lines, args.out)
    return code


def cmd_amortized(args) -> int:
    if args.scheme not in SCHEMES:
        print(f"error: unknown scheme {args.scheme!r}; known: {', '.join(SCHEMES)}",
              file=sys.stderr)
        return EXIT_BAD_INPUT
    factory, fresh, shape = SCHEMES[args.scheme]
    scheme = factory(args.multiplier) if args.multiplier else factory()
    bundle = get_bundle(
        {"dynarray": "dynarray", "skew_heap": "skew_heap", "splay_tree": "splay_tree"}[args.scheme]
    )
    rng = random.Random(args.seed)
    script = bundle.gen_input(rng, args.ops)
    report = run_sequence(scheme, script, fresh(), seed=args.seed)
    lines = []
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(report.to_csv())
        lines.append(f"ledger written to {args.out}")
    lines.append(
        f"ops: {len(report.entries)}, total actual: {report.total_actual}, "
        f"total amortized: {report.total_amortized}"
    )
    lines.append(
        f"potential: initial {report.initial_potential}, final {report.final_potential}"
    )
    lines.append(f"per-op inequality: {'pass' if report.per_op_ok else 'FAIL'}")
    lines.append(f"telescoped inequality: {'pass' if report.telescoped_ok else 'FAIL'}")
    if not report.passed:
        lines.append(report.render_failure())
        _emit(lines, None)
        return EXIT_CHECK_FAILED
    corpus = collect_corpus(scheme, script[: min(len(script), 2000)], fresh())
    try:
        found = minimal_multiplier(scheme, shape, corpus)
        lines.append(f"minimal multiplier on this corpus: K = {found.multiplier}")
    except NoMultiplier as exc:
        lines.append(f"minimal multiplier: none up to 1024 ({exc})")
        _emit(lines, None)
        return EXIT_CHECK_FAILED
    _emit(lines, None)
    return EXIT_OK


def cmd_report(args) -> int:
    bundles = all_bundles()
    rows = []
    failed = False
    rng = random.Random(args.seed)
    sizes = {
        "merge_sort": 512, "insertion_sort": 128, "binary_search": 1024,
        "karatsuba": 64, "select": 500, "knapsack": 24,
        "dynarray": 2000, "skew_heap": 1500, "splay_tree": 1500,
    }
    for name in ALGORITHM_NAMES:
        bundle = bundles[name]
        size = sizes[name]
        worst_ratio = 0.0
        ok = True
        for _ in range(args.trials):
            case = bundle.gen_input(rng, size)
            result = bundle.run(case)
            bound = bundle.bound(result.size)
            worst_ratio = max(worst_ratio, result.cost / bound if bound else 0.0)
            ok = ok and result.ok and result.cost <= bound
        class_ok = bundle.class_check()
        if not (ok and class_ok):
            failed = True
        rows.append(
            [name, size, f"{worst_ratio:.4f}", bundle.claim().render(),
             "pass" if class_ok else "FAIL", "pass" if ok else "FAIL"]
        )
    header = ["case study", "max n", "max cost/bound", "class", "class check", "runs"]
    _emit(_table(header, rows, args.format), args.out)
    return EXIT_CHECK_FAILED if failed else EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="timecredits",
        description="Run cost-instrumented case studies and check their "
        "runtime bounds, recurrences, and amortized claims.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_run = sub.add_parser("run", help="run one case study across sizes")
    p_run.add_argument("algo")
    p_run.add_argument("--sizes", default="16,64,256")
    p_run.add_argument("--trials", type=int, default=3)
    p_run.add_argument("--seed", type=int, default=0)
    p_run.add_argument("--format", choices=("csv", "markdown"), default="csv")
    p_run.add_argument("--out")
    p_run.set_defaults(fn=cmd_run)

    p_rec = sub.add_parser("recurrence", help="solve a recurrence spec file")
    p_rec.add_argument("spec", nargs="?")
    p_rec.add_argument("--builtin", choices=sorted(BUILTIN_SPECS))
    p_rec.add_argument("--out")
    p_rec.set_defaults(fn=cmd_recurrence)

    p_am = sub.add_parser("amortized", help="check an amortized ledger")
    p_am.add_argument("scheme", choices=sorted(SCHEMES))
    p_am.add_argument("--ops", type=int, default=10000)
    p_am.add_argument("--seed", type=int, default=1)
    p_am.add_argument("--multiplier", type=int, default=0)
    p_am.add_argument("--out")
    p_am.set_defaults(fn=cmd_amortized)

    p_rep = sub.add_parser("report", help="consolidated table over all nine case studies")
    p_rep.add_argument("--trials", type=int, default=2)
    p_rep.add_argument("--seed", type=int, default=0)
    p_rep.add_argument("--format", choices=("csv", "markdown"), default="markdown")
    p_rep.add_argument("--out")
    p_rep.set_defaults(fn=cmd_report)

    return parser


def main(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits 2 on bad usage already; normalize other codes
        return EXIT_BAD_INPUT if exc.code not in (0,) else 0
    return args.fn(args)


if __name__ == "__main__":
    sys.exit(main())
