"""
Command-line front end.

Exit codes: 0 when every enabled method agrees, 1 for usage, schema or
input errors, 2 when two index methods disagree.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
import warnings
from contextlib import contextmanager
from typing import Optional, Sequence

import numpy as np

from . import __version__
from .analysis import METHODS, analyze_spec, parse_range, sweep, sweep_specs, write_reports
from .errors import SSWalkError
from .operators import (
    Window,
    assemble_coin,
    assemble_evolution_and_supercharge,
    assemble_gamma,
    assemble_q_plus,
    write_triplets,
)
from .scenario import load_scenario
from .suites import DEFAULT_COUNTS, QUICK_COUNTS, SUITES, run_suite

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_DISAGREE = 2


class _Parser(argparse.ArgumentParser):
    """argparse exits with 2 on bad usage; this contract reserves 2 for disagreement."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


@contextmanager
def _output(path: Optional[str]):
    if path is None or path == "-":
        yield sys.stdout
    else:
        with open(path, "w", newline="") as fh:
            yield fh


def _methods(text: str) -> tuple[str, ...]:
    names = tuple(m.strip() for m in text.split(",") if m.strip())
    bad = [m for m in names if m not in METHODS]
    if bad:
        raise argparse.ArgumentTypeError(f"unknown method(s) {bad}; choose from {list(METHODS)}")
    return names


def _range(text: str) -> np.ndarray:
    try:
        return parse_range(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _half_width(text: str) -> int:
    n = int(text)
    if n < 4:
        raise argparse.ArgumentTypeError("window half-width must be at least 4")
    return n


def _counts(text: str) -> dict[str, int]:
    """``N`` for every suite, or ``name=N,name=N`` for selected suites."""
    text = text.strip()
    if "=" not in text:
        n = int(text)
        return {name: n for name in SUITES}
    out = {}
    for item in text.split(","):
        name, _, val = item.partition("=")
        name = name.strip()
        if name not in SUITES:
            raise argparse.ArgumentTypeError(f"unknown suite {name!r}; choose from {list(SUITES)}")
        out[name] = int(val)
    return out


# subcommands -----------------------------------------------------------------

def cmd_analyze(args) -> int:
    spec = load_scenario(args.config)
    window = Window(-args.window, args.window) if args.window else None
    kw = {"window": window} if window else {}
    report = analyze_spec(spec, args.methods, **kw)
    with _output(args.out) as fh:
        write_reports([report], fh)
    if not report.fredholm:
        print(f"not Fredholm: {report.reason}", file=sys.stderr)
    if not report.agree:
        print("method disagreement: " + "; ".join(report.disagreements), file=sys.stderr)
        return EXIT_DISAGREE
    return EXIT_OK


def cmd_sweep(args) -> int:
    specs = sweep_specs(args.p, args.a_plus, args.a_minus, args.b_phase)
    reports = sweep(specs, args.methods, args.jobs)
    with _output(args.out) as fh:
        write_reports(reports, fh)
    fredholm = sum(r.fredholm for r in reports)
    agree = sum(r.agree for r in reports)
    print(
        f"sweep: {len(reports)} points, {fredholm} Fredholm, "
        f"{len(reports) - fredholm} not Fredholm, {agree}/{len(reports)} agree",
        file=sys.stderr,
    )
    return EXIT_OK if agree == len(reports) else EXIT_DISAGREE


def cmd_verify(args) -> int:
    counts = dict(QUICK_COUNTS if args.quick else DEFAULT_COUNTS)
    counts.update(args.counts or {})
    first_failure = None
    any_vacuous = False
    for name in SUITES:
        with warnings.catch_warnings():
            warnings.simplefilter("ignore")
            res = run_suite(name, args.seed, counts[name])
        print(res.line())
        for note in res.notes:
            print(f"  note: {note}")
        any_vacuous |= res.total == 0
        if not res.ok and first_failure is None:
            first_failure = (name, res.failure)
    if any_vacuous:
        print("warning: some suites ran no cases; their pass is vacuous", file=sys.stderr)
    if first_failure is not None:
        name, case = first_failure
        print(f"first failing case ({name}):")
        print(json.dumps(case, indent=2, sort_keys=True, default=str))
        return EXIT_USAGE
    return EXIT_OK


def cmd_spectrum(args) -> int:
    spec = load_scenario(args.config)
    w = Window(-args.window, args.window)
    U, Q = assemble_evolution_and_supercharge(spec, w)
    ev_u = np.linalg.eigvals(U.block)
    ev_u = ev_u[np.lexsort((ev_u.imag, np.angle(ev_u)))]
    ev_q = np.linalg.eigvalsh(Q.block)
    with _output(args.out) as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(("operator", "index", "re", "im"))
        for k, z in enumerate(ev_u):
            writer.writerow(("U", k, f"{z.real:.17g}", f"{z.imag:.17g}"))
        for k, lam in enumerate(ev_q):
            writer.writerow(("Q", k, f"{lam:.17g}", f"{0.0:.17g}"))
    return EXIT_OK


def cmd_dump_operator(args) -> int:
    spec = load_scenario(args.config)
    w = Window(-args.window, args.window, boundary=args.boundary)
    if args.which == "gamma":
        mat = assemble_gamma(spec.shift, w)
    elif args.which == "coin":
        mat = assemble_coin(spec.coin, w)
    elif args.which == "qplus":
        mat = assemble_q_plus(spec, w)
    else:
        U, Q = assemble_evolution_and_supercharge(spec, w)
        mat = U if args.which == "u" else Q
    with _output(args.out) as fh:
        write_triplets(mat, fh)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="sswalk", description="Witten index of split-step quantum walks.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("analyze", help="index of one scenario by every requested method")
    p.add_argument("--config", required=True, help="scenario JSON file or inline JSON object")
    p.add_argument("--methods", type=_methods, default=METHODS,
                   help="comma-separated subset of %(default)s (formula and winding always run)")
    p.add_argument("--window", type=_half_width, default=None,
                   help="half-width of the spectral window (default 150)")
    p.add_argument("--out", default=None, help="CSV output path (default stdout)")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("sweep", help="phase diagram over (p, a+) for step coins")
    p.add_argument("--p", type=_range, required=True, help="lo:hi:step")
    p.add_argument("--a-plus", type=_range, required=True, help="lo:hi:step")
    p.add_argument("--a-minus", type=float, required=True)
    p.add_argument("--b-phase", type=float, default=0.0, help="phase of b on both sides (rad)")
    p.add_argument("--methods", type=_methods, default=("formula", "winding"))
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("verify", help="seeded cross-method verification suites")
    p.add_argument("--seed", type=int, default=42)
    p.add_argument("--quick", action="store_true", help="reduced case counts")
    p.add_argument("--counts", type=_counts, default=None, help="N, or name=N,name=N")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("spectrum", help="eigenvalues of U and Q on an open window")
    p.add_argument("--config", required=True)
    p.add_argument("--window", type=_half_width, required=True, help="half-width N, sites -N..N")
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_spectrum)

    p = sub.add_parser("dump-operator", help="sparse triplets of an assembled operator")
    p.add_argument("--config", required=True)
    p.add_argument("--which", choices=("gamma", "coin", "u", "q", "qplus"), required=True)
    p.add_argument("--window", type=_half_width, required=True, help="half-width N, sites -N..N")
    p.add_argument("--boundary", choices=("open", "periodic"), default="open")
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_dump_operator)
    return parser


_RANGE_OPTIONS = ("--p", "--a-plus", "--a-minus", "--b-phase")


def _attach_negative_values(argv: Sequence[str]) -> list[str]:
    """Rewrite ``--p -0.9:0.9:0.3`` as ``--p=-0.9:0.9:0.3``.

    argparse would otherwise read a leading minus in a range as an option flag.
    """
    out: list[str] = []
    it = iter(argv)
    for tok in it:
        if tok in _RANGE_OPTIONS:
            nxt = next(it, None)
            if nxt is not None and nxt.startswith("-") and nxt[1:2] in tuple("0123456789."):
                out.append(f"{tok}={nxt}")
                continue
            out.append(tok)
            if nxt is not None:
                out.append(nxt)
            continue
        out.append(tok)
    return out


def main(argv: Optional[Sequence[str]] = None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    args = build_parser().parse_args(_attach_negative_values(argv))
    try:
        return args.func(args)
    except (SSWalkError, ValueError, OSError) as exc:
        print(f"sswalk {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
