"""Command line interface: ``qeuclid nf|eq|d|matrix|frame|verify``."""
from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import calculus as calc_mod
from .checks import SUITES, run_suite
from .dsl import DSLSyntaxError, DSLTypeError, differentiate, evaluate, parse, show, values_equal
from .rmatrix import rmatrix_data
from .scalars import QS, PoleError

MATRICES = ("rhat", "ps", "pa", "pt", "metric")
IDX = ("-", "0", "+")


def _matrix(name):
    data = rmatrix_data(QS)
    return {"rhat": data.rhat, "ps": data.ps, "pa": data.pa, "pt": data.pt, "metric": data.metric}[name]


def format_table(rows, row_labels=None, col_labels=None) -> str:
    """Align a grid of strings into columns."""
    grid = [list(r) for r in rows]
    if col_labels is not None:
        grid.insert(0, list(col_labels))
    if row_labels is not None:
        labels = ([""] if col_labels is not None else []) + list(row_labels)
        grid = [[lab] + r for lab, r in zip(labels, grid)]
    widths = [max(len(r[j]) for r in grid) for j in range(len(grid[0]))]
    return "\n".join("  ".join(c.rjust(w) for c, w in zip(r, widths)).rstrip() for r in grid)


def _pair_labels():
    return [a + b for a in IDX for b in IDX]


def cmd_nf(args):
    print(show(evaluate(parse(args.expr)), args.basis))
    return 0


def cmd_eq(args):
    same = values_equal(evaluate(parse(args.left)), evaluate(parse(args.right)))
    print("equal" if same else "not equal")
    return 0 if same else 1


def cmd_d(args):
    print(show(differentiate(evaluate(parse(args.expr))), args.basis))
    return 0


def cmd_matrix(args):
    m = _matrix(args.name)
    cells = [[QS.fmt(v) for v in row] for row in m]
    if args.json:
        print(json.dumps({"name": args.name, "matrix": cells}, indent=2))
    else:
        labels = list(IDX) if len(m) == 3 else _pair_labels()
        print(format_table(cells, labels, labels))
    return 0


def frame_tables(calc):
    fr = calc.frame
    c = calc_mod.xi_star_matrix(calc)
    return {
        "theta": [[str(v) for v in row] for row in fr.theta_mat],
        "e": [[str(v) for v in row] for row in fr.e_mat],
        "lambda": [str(v) for v in fr.lambdas],
        "c": [[str(v) for v in row] for row in c],
    }


def cmd_frame(args):
    tables = frame_tables(calc_mod.calculus(QS))
    if args.json:
        print(json.dumps(tables, indent=2))
        return 0
    out = []
    for a in range(3):
        for i in range(3):
            out.append(f"theta^{IDX[a]}_{IDX[i]} = {tables['theta'][a][i]}")
    out.append("")
    for i in range(3):
        for a in range(3):
            out.append(f"e^{IDX[i]}_{IDX[a]} = {tables['e'][i][a]}")
    out.append("")
    for a in range(3):
        out.append(f"lambda_{IDX[a]} = {tables['lambda'][a]}")
    out.append("")
    for j in range(3):
        for i in range(3):
            out.append(f"c_{IDX[j]}{IDX[i]} = {tables['c'][j][i]}")
    print("\n".join(out))
    return 0


def parse_numeric(text: str) -> Fraction:
    """Parse ``s=P/Q`` (or just ``P/Q``) into a Fraction."""
    value = text.split("=", 1)[1] if "=" in text else text
    if "=" in text and text.split("=", 1)[0].strip() != "s":
        raise ValueError(f"expected s=P/Q, got {text!r}")
    try:
        return Fraction(value.strip())
    except (ValueError, ZeroDivisionError):
        raise ValueError(f"expected s=P/Q, got {text!r}") from None


def cmd_verify(args):
    s0 = parse_numeric(args.numeric) if args.numeric else None
    report = run_suite(args.suite, s0=s0, seed=args.seed)
    print(report.to_json() if args.json else report.to_text())
    return report.exit_code


def build_parser():
    p = argparse.ArgumentParser(prog="qeuclid", description="Exact computations on the quantum Euclidean space R_q^3.")
    sub = p.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("nf", help="print the normal form of an expression")
    sp.add_argument("expr")
    sp.add_argument("--basis", choices=("frame", "xi"), default="frame", help="basis for printing 1-forms")
    sp.set_defaults(func=cmd_nf)

    sp = sub.add_parser("eq", help="decide equality of two expressions (exit 1 if different)")
    sp.add_argument("left")
    sp.add_argument("right")
    sp.set_defaults(func=cmd_eq)

    sp = sub.add_parser("d", help="apply the exterior derivative")
    sp.add_argument("expr")
    sp.add_argument("--basis", choices=("frame", "xi"), default="frame")
    sp.set_defaults(func=cmd_d)

    sp = sub.add_parser("matrix", help="print a 9x9 or 3x3 matrix")
    sp.add_argument("name", choices=MATRICES)
    sp.add_argument("--json", action="store_true")
    sp.set_defaults(func=cmd_matrix)

    sp = sub.add_parser("frame", help="print theta^a_i, e^i_a, lambda_a and c_ji")
    sp.add_argument("--json", action="store_true")
    sp.set_defaults(func=cmd_frame)

    sp = sub.add_parser("verify", help="run a verification suite")
    sp.add_argument("--suite", choices=SUITES + ("all",), default="all")
    sp.add_argument("--numeric", metavar="s=P/Q", help="evaluate at a rational value of s")
    sp.add_argument("--seed", type=int, default=0, help="seed for randomized checks")
    sp.add_argument("--json", action="store_true")
    sp.set_defaults(func=cmd_verify)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (DSLSyntaxError, DSLTypeError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except PoleError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
