"""Command line front end.

    surfjones compute FILE NAME [--format json|text|latex] [--dump-states] [--dump-surface]
    surfjones eval CODE [...same flags]
    surfjones table FILE [--format text|latex]
    surfjones verify FILE SUITE
    surfjones list FILE

FILE may be ``-`` for the bundled corpus.  Exit status: 0 success, 1 a
verification failure, 2 usage or input errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ProcessPoolExecutor

from .corpus import Corpus, CorpusError, load_corpus
from .gauss import Diagram, GaussCodeError, parse_link
from .invariants import InvariantReport, NotCheckerboardError, prepare, report
from .states import StateCapError, enumerate_states, worker_count
from .verify import SUITES, run_suite

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2

INPUT_ERRORS = (CorpusError, GaussCodeError, StateCapError, NotCheckerboardError, KeyError, OSError)


def _corpus(path: str) -> Corpus:
    return load_corpus(None if path == "-" else path)


def _yes(flag: bool) -> str:
    return "yes" if flag else "no"


def format_text(r: InvariantReport) -> str:
    def poly(p):
        return "-" if p is None else p.render()

    rows = [
        ("name", r.name),
        ("code", r.code),
        ("crossings", r.n),
        ("writhe", r.w),
        ("genus", r.genus),
        ("components", r.components),
        ("alternating", _yes(r.is_alternating)),
        ("checkerboard", _yes(r.is_checkerboard)),
        ("reduced", _yes(r.is_reduced)),
        ("split", _yes(r.is_split)),
        ("adequate", f"A={_yes(r.a_adequate)} B={_yes(r.b_adequate)}"),
        ("bracket", r.bracket.render()),
        ("span", r.span),
        ("jk_unreduced", poly(r.jk_unreduced)),
        ("jk_reduced", poly(r.jk_reduced)),
        ("jones", poly(r.jones)),
        ("determinant", "-" if r.determinant is None else r.determinant),
    ]
    width = max(len(k) for k, _ in rows)
    return "\n".join(f"{k.ljust(width)}  {v}" for k, v in rows)


def _latex_name(r: InvariantReport) -> str:
    return f"{{\\bf {r.name}}}" if r.is_classical else r.name


def table_poly(r: InvariantReport):
    return r.jk_reduced if r.is_checkerboard else r.jk_unreduced


def format_latex(r: InvariantReport) -> str:
    return f"{_latex_name(r)} & ${table_poly(r).latex()}$ \\\\ \\hline"


def format_report(r: InvariantReport, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(r.as_dict(), indent=2)
    if fmt == "latex":
        return format_latex(r)
    return format_text(r)


def dump_states(d: Diagram) -> str:
    p = prepare(d)
    lines = ["mask word a b |S| r k"]
    for s in enumerate_states(d, p.surface, p.h1):
        lines.append(f"{s.mask} {s.word() or '-'} {s.a} {s.b} {s.size} {s.r} {s.k}")
    return "\n".join(lines)


def _report_job(args) -> InvariantReport:
    name, code, max_crossings = args
    return report(parse_link(code), name, workers=1, max_crossings=max_crossings)


def reports(corpus: Corpus, max_crossings: int | None, workers: int | None = None) -> list[InvariantReport]:
    """Reports for every entry, in corpus order; batch-parallel over entries."""
    jobs = [(e.name, e.code, max_crossings) for e in corpus]
    workers = worker_count() if workers is None else workers
    if workers <= 1 or len(jobs) < 2:
        return [_report_job(j) for j in jobs]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(_report_job, jobs))


def render_table(rs: list[InvariantReport], fmt: str) -> str:
    unreduced = [r for r in rs if not r.is_checkerboard]
    reduced = [r for r in rs if r.is_checkerboard]
    if fmt == "latex":
        out = ["\\begin{tabular}{c|c}"]
        for head, group in (("\\widetilde{J}_K(t,z)", unreduced), ("J_K(t,z)", reduced)):
            if not group:
                continue
            out.append(f"Link & ${head}$ \\\\ \\hline \\hline")
            out += [format_latex(r) for r in group]
        out.append("\\end{tabular}")
        return "\n".join(out)
    out = []
    for head, group in (("unreduced", unreduced), ("reduced", reduced)):
        if not group:
            continue
        width = max(len(r.name) for r in group) + 2
        out.append(f"# {head}")
        for r in group:
            name = f"*{r.name}" if r.is_classical else r.name
            out.append(f"{name.ljust(width)}{table_poly(r).render()}")
    if out:
        out.append("# * classical (genus 0)")
    return "\n".join(out)


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="surfjones", description="Jones-Krushkal polynomials of virtual links")
    ap.add_argument("--max-crossings", type=int, default=None, help="state enumeration cap (default 28)")
    ap.add_argument("--workers", type=int, default=None, help="worker processes (default $SURFJONES_WORKERS or 1)")
    sub = ap.add_subparsers(dest="command", required=True)

    def report_flags(p):
        p.add_argument("--format", choices=("text", "json", "latex"), default="text")
        p.add_argument("--dump-states", action="store_true")
        p.add_argument("--dump-surface", action="store_true")

    p = sub.add_parser("compute", help="report for one corpus entry")
    p.add_argument("file")
    p.add_argument("name")
    report_flags(p)

    p = sub.add_parser("eval", help="report for a Gauss code given inline")
    p.add_argument("code")
    report_flags(p)

    p = sub.add_parser("table", help="polynomial table for a corpus")
    p.add_argument("file")
    p.add_argument("--format", choices=("text", "latex"), default="text")

    p = sub.add_parser("verify", help="run a property suite")
    p.add_argument("file")
    p.add_argument("suite", choices=sorted(SUITES) + ["all"])
    p.add_argument("--quiet", action="store_true", help="print failures and the summary only")

    p = sub.add_parser("list", help="list corpus entries")
    p.add_argument("file")
    return ap


def _compute(d: Diagram, name: str, args) -> str:
    parts = []
    if args.dump_surface:
        parts.append(prepare(d).surface.dump())
    if args.dump_states:
        parts.append(dump_states(d))
    r = report(d, name, workers=args.workers, max_crossings=args.max_crossings)
    parts.append(format_report(r, args.format))
    return "\n".join(parts)


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "compute":
            e = _corpus(args.file).get(args.name)
            print(_compute(e.diagram, e.name, args))
        elif args.command == "eval":
            print(_compute(parse_link(args.code), "", args))
        elif args.command == "table":
            rs = reports(_corpus(args.file), args.max_crossings, args.workers)
            text = render_table(rs, args.format)
            if text:
                print(text)
        elif args.command == "list":
            for e in _corpus(args.file):
                print(f"{e.name} {e.code}")
        elif args.command == "verify":
            checks = run_suite(_corpus(args.file), args.suite, args.max_crossings)
            failed = [c for c in checks if not c.ok]
            flagged = [c for c in checks if c.flagged]
            for c in checks:
                if not args.quiet or not c.ok or c.flagged:
                    print(c.line())
            print(f"{len(checks)} checks, {len(failed)} failed, {len(flagged)} flagged")
            return EXIT_FAIL if failed else EXIT_OK
    except KeyError as exc:
        print(f"error: no such entry or suite: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except INPUT_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    return EXIT_OK


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
