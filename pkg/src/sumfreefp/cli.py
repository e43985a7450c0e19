"""Command-line interface.

Subcommands:
  verify       run one verification suite over a prime range
  discrepancy  per-coset interval discrepancies of one subgroup, as CSV
  sf           exact or dilation-bounded maximal solution-free subset
  lvalue       L(1, chi) for a character mod p, optionally twisted mod 3/4/8
  sweep        run suites from a key=value config file, writing artifacts

Exit codes: 0 all assertions pass, 1 at least one failed, 2 usage/config
error (domain errors such as ZeroInSet are reported on stderr).
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .characters import Character
from .discrepancy import delta_table
from .errors import SumfreeError
from .lfunctions import CHI3, CHI4, CHI8, ProductCharacter, l_one, l_one_truncated
from .modp import build_context, interval_of_kind, subgroup_of_index
from .report import report_to_csv, report_to_json
from .suites import SUITES, SweepConfig, parse_config_file, run_suite, sweep
from .sumfree import sf_dilation_bound, sf_exact

_SMALL = {3: CHI3, 4: CHI4, 8: CHI8}


def _parse_set(text: str) -> list[int]:
    try:
        return [int(tok) for tok in text.split(",") if tok.strip()]
    except ValueError:
        raise SumfreeError(f"--set expects comma-separated integers, got {text!r}")


def _cmd_verify(args) -> int:
    tolerances = {args.suite: args.tol} if args.tol is not None else {}
    cfg = SweepConfig(
        p_min=args.pmin, p_max=args.pmax,
        indices=(args.index,) if args.index is not None else None,
        suites=(args.suite,), seed=args.seed, tolerances=tolerances,
    )
    report = run_suite(args.suite, cfg)
    text = report_to_json(report) if args.format == "json" else report_to_csv(report)
    if args.out:
        Path(args.out).parent.mkdir(parents=True, exist_ok=True)
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    if args.plot:
        from .plots import render_report_figures

        figdir = Path(args.out).parent if args.out else Path(".")
        for path in render_report_figures(report, figdir):
            print(f"figure: {path}", file=sys.stderr)
    s = report.summary
    print(f"{args.suite}: {s['passed']}/{s['total']} cases pass", file=sys.stderr)
    return 0 if report.all_passed else 1


def _cmd_discrepancy(args) -> int:
    ctx = build_context(args.p)
    sub = subgroup_of_index(ctx, args.index)
    interval = interval_of_kind(args.p, args.interval)
    table = delta_table(sub, interval)
    lines = ["p,n,coset_rep,delta_num,delta_den"]
    for j in range(sub.n):
        frac = table.delta(j)
        lines.append(f"{args.p},{sub.n},{sub.coset_reps[j]},{frac.numerator},{frac.denominator}")
    text = "\n".join(lines) + "\n"
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    return 0


def _cmd_sf(args) -> int:
    A = _parse_set(args.set)
    if args.dilation:
        interval = interval_of_kind(args.p, "thirds" if args.k == 2 else "eighths")
        value, dilator, subset = sf_dilation_bound(args.p, A, interval)
        print(f"value={value}")
        print(f"dilator={dilator}")
        print(f"subset={','.join(map(str, subset))}")
        print("exact=false")
        return 0
    rep = sf_exact(args.p, A, args.k, cap=args.cap)
    print(f"value={rep.value}")
    print(f"psi={rep.psi}")
    print(f"witness={','.join(map(str, rep.witness))}")
    print("exact=true")
    return 0


def _cmd_lvalue(args) -> int:
    ctx = build_context(args.p)
    chi = Character(ctx, args.char_exp)
    psi = ProductCharacter(chi, _SMALL[args.small]) if args.small else chi
    value = l_one(psi)
    q = psi.modulus if args.small else args.p
    print(f"p={args.p}")
    print(f"char_exp={args.char_exp}")
    print(f"q={q}")
    print(f"L_re={value.real!r}")
    print(f"L_im={value.imag!r}")
    print(f"L_abs={abs(value)!r}")
    if args.check_truncated:
        approx, tail = l_one_truncated(psi, args.check_truncated)
        print(f"truncated_re={approx.real!r}")
        print(f"truncated_tail_bound={tail!r}")
    return 0


def _cmd_sweep(args) -> int:
    cfg = parse_config_file(args.config)
    status, reports, paths = sweep(cfg)
    for rep in reports:
        s = rep.summary
        print(f"{rep.suite}: {s['passed']}/{s['total']} cases pass", file=sys.stderr)
    for path in paths:
        print(f"artifact: {path}", file=sys.stderr)
    return status


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="sumfreefp", description=__doc__,
                                     formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = parser.add_subparsers(dest="command", required=True)

    v = sub.add_parser("verify", help="run one suite over a prime range")
    v.add_argument("--suite", required=True, choices=SUITES)
    v.add_argument("--pmin", required=True, type=int)
    v.add_argument("--pmax", required=True, type=int)
    v.add_argument("--index", type=int, default=None, help="restrict to one subgroup index")
    v.add_argument("--tol", type=float, default=None, help="override the suite tolerance")
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--format", choices=("csv", "json"), default="csv")
    v.add_argument("--out", default=None, help="write the report here instead of stdout")
    v.add_argument("--plot", action="store_true", help="render a PNG figure next to the report")
    v.set_defaults(func=_cmd_verify)

    d = sub.add_parser("discrepancy", help="per-coset interval discrepancies as CSV")
    d.add_argument("--p", required=True, type=int)
    d.add_argument("--index", required=True, type=int)
    d.add_argument("--interval", choices=("thirds", "eighths"), default="thirds")
    d.add_argument("--out", default=None)
    d.set_defaults(func=_cmd_discrepancy)

    s = sub.add_parser("sf", help="maximal solution-free subset of a given set")
    s.add_argument("--p", required=True, type=int)
    s.add_argument("--set", required=True, help="comma-separated residues")
    s.add_argument("--k", type=int, default=2, choices=(2, 3))
    mode = s.add_mutually_exclusive_group()
    mode.add_argument("--exact", action="store_true", help="exact search (default)")
    mode.add_argument("--dilation", action="store_true", help="dilation lower bound only")
    s.add_argument("--cap", type=int, default=None, help="override the exact-search cap")
    s.set_defaults(func=_cmd_sf)

    l = sub.add_parser("lvalue", help="L(1, chi_t) or L(1, chi_t * chi_{3,4,8})")
    l.add_argument("--p", required=True, type=int)
    l.add_argument("--char-exp", required=True, type=int, dest="char_exp")
    l.add_argument("--small", type=int, choices=(3, 4, 8), default=None)
    l.add_argument("--check-truncated", type=int, default=None, metavar="M",
                   dest="check_truncated", help="also print the M-term series value")
    l.set_defaults(func=_cmd_lvalue)

    w = sub.add_parser("sweep", help="run suites from a key=value config file")
    w.add_argument("--config", required=True)
    w.set_defaults(func=_cmd_sweep)
    return parser


def cli(argv: list[str]) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except SumfreeError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"io error: {exc}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(cli(sys.argv[1:]))


if __name__ == "__main__":
    main()
