"""Command-line front end.

One subcommand per capability; every command writes a CSV (default) or JSON
table to standard output or ``--out``.  Functions are given either as a
catalog key (ex3.1 .. ex4.6) or as an expression in x (and y); ``--fd``
forces finite-difference derivative channels for cross-checking.

Exit codes: 0 success, 2 argument or expression errors, 3 precondition
violations, 4 numerical failures.
"""

import argparse
import sys

from bernakr import catalog
from bernakr.bounds import BOUND_KINDS, verify_bound
from bernakr.calculus import BivariateFunction, GridSpec, ScalarFunction
from bernakr.classes import (
    check_decreasing_convex,
    check_haar_convex,
    check_Kj1,
    check_Kj2,
)
from bernakr.errors import ExpressionError, NumericalError, PreconditionError
from bernakr.experiments import (
    CHAIN_KINDS,
    chain_check,
    figure_data,
    node_data,
    table_example_3_1,
    table_example_4_4,
)
from bernakr.operators import (
    OperatorSpec,
    eval_akr,
    eval_akr_2d,
    eval_bernstein,
    eval_bernstein_2d,
)
from bernakr.tabular import render
from bernakr.voronovskaja import (
    DEFAULT_DEGREES_1D,
    DEFAULT_DEGREES_2D,
    conjecture_probe_2d,
    vor_probe_1d,
)

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_PRECONDITION = 3
EXIT_NUMERICAL = 4


def _resolve(src, dim, fd=False):
    """A catalog key or an expression, as a function of the given dimension."""
    if src in catalog.CATALOG_KEYS:
        if catalog.dimension(src) != dim:
            raise PreconditionError(
                f"catalog function {src!r} is {catalog.dimension(src)}-dimensional, "
                f"but this invocation needs dimension {dim}"
            )
        return catalog.get(src, finite_diff=fd)
    if dim == 1:
        return ScalarFunction.from_expression(src, finite_diff=fd)
    return BivariateFunction.from_expression(src, finite_diff=fd)


def _floats(text):
    try:
        return [float(tok) for tok in text.split(",") if tok.strip()]
    except ValueError as exc:
        raise PreconditionError(f"cannot parse number list {text!r}") from exc


def _ints(text):
    try:
        return [int(tok) for tok in text.split(",") if tok.strip()]
    except ValueError as exc:
        raise PreconditionError(f"cannot parse integer list {text!r}") from exc


def _point_str(pt):
    if pt is None:
        return ""
    if isinstance(pt, (tuple, list)):
        return ";".join(f"{float(v):.15g}" for v in pt)
    return f"{float(pt):.15g}"


def cmd_nodes(args):
    return node_data(args.n, args.j, args.m)


def cmd_eval(args):
    xs = _floats(args.x)
    ys = _floats(args.y) if args.y is not None else None
    bivariate = args.m is not None or ys is not None
    if bivariate:
        if ys is None or args.m is None:
            raise PreconditionError("bivariate evaluation needs both --m and --y")
        if len(xs) != len(ys):
            raise PreconditionError("--x and --y must list the same number of points")
        f = _resolve(args.f, 2, args.fd)
        rows = []
        for x, y in zip(xs, ys):
            if args.op == "bernstein":
                v = eval_bernstein_2d(f, args.n, args.m, x, y)
            else:
                v = eval_akr_2d(f, args.n, args.m, _need_j(args), x, y)
            rows.append([x, y, float(v)])
        return ["x", "y", "value"], rows
    f = _resolve(args.f, 1, args.fd)
    rows = []
    for x in xs:
        if args.op == "bernstein":
            v = eval_bernstein(f, args.n, x)
        else:
            v = eval_akr(f, args.n, _need_j(args), x)
        rows.append([x, float(v)])
    return ["x", "value"], rows


def _need_j(args):
    if args.j is None:
        raise PreconditionError("the AKR operator needs --j")
    return args.j


def cmd_table(args):
    if args.example == "3.1":
        degrees = _ints(args.degrees) if args.degrees else (5, 10, 20, 30, 40, 50, 60)
        grid = GridSpec(args.grid or 1001)
        rows = table_example_3_1(degrees, grid, args.norm or "sup")
        columns = ["n", "err_bernstein", "err_akr",
                   "published_err_bernstein", "published_err_akr", "swap_match"]
        return columns, rows
    degrees = _ints(args.degrees) if args.degrees else (10, 20, 30, 40, 50, 60)
    rows = table_example_4_4(degrees, args.norm or "rel2",
                             speed_grid=not args.no_speed_grid)
    columns = ["n", "err_bernstein", "err_akr",
               "published_err_bernstein", "published_err_akr"]
    return columns, rows


def cmd_chain(args):
    dim = 2 if args.m is not None else 1
    f = _resolve(args.f, dim, args.fd)
    grid = GridSpec(args.grid, dim) if args.grid else None
    report = chain_check(f, args.n, _need_j(args), m=args.m, grid=grid,
                         tol=args.tol, kind=args.kind)
    (name1, margin1), (name2, margin2) = report.links
    row = [report.chain_kind, name1, margin1, name2, margin2,
           report.holds, _point_str(report.violating_point)]
    return ["chain_kind", "link1", "link1_margin", "link2", "link2_margin",
            "holds", "violating_point"], [row]


def cmd_classify(args):
    dim = 2 if args.class_id == "kj2" else 1
    f = _resolve(args.f, dim, args.fd)
    grid = GridSpec(args.grid, dim) if args.grid else None
    kwargs = {} if grid is None else {"grid": grid}
    if args.tol is not None:
        kwargs["tol"] = args.tol
    if args.class_id == "kj1":
        report = check_Kj1(f, args.j, **kwargs)
    elif args.class_id == "kj2":
        report = check_Kj2(f, args.j, **kwargs)
    elif args.class_id == "decreasing-convex":
        report = check_decreasing_convex(f, **kwargs)
    else:  # haar
        f0 = _resolve(args.f0 or "1", 1, args.fd)
        f1 = _resolve(args.f1 or f"x^{args.j}", 1, args.fd)
        report = check_haar_convex(f, f0, f1, **kwargs)
    row = [args.class_id, report.verdict, report.min_margin,
           _point_str(report.witness), report.tolerance, report.boundary]
    return ["class", "verdict", "min_margin", "witness", "tolerance", "boundary"], [row]


def cmd_voronovskaja(args):
    if args.y is not None:
        f = _resolve(args.f, 2, args.fd)
        degrees = _ints(args.degrees) if args.degrees else list(DEFAULT_DEGREES_2D)
        probe = conjecture_probe_2d(f, args.j, (args.x, args.y), degrees)
    else:
        f = _resolve(args.f, 1, args.fd)
        degrees = _ints(args.degrees) if args.degrees else list(DEFAULT_DEGREES_1D)
        probe = vor_probe_1d(f, args.j, args.x, degrees)
    columns = ["n", "scaled_residual", "predicted", "extrapolated",
               "abs_dev", "rel_dev", "conjectural"]
    rows = [
        [n, float(r), probe.predicted, probe.extrapolated,
         probe.abs_dev, probe.rel_dev, probe.conjectural]
        for n, r in zip(probe.degrees, probe.residuals)
    ]
    return columns, rows


def cmd_figure(args):
    if args.example == "3.1":
        f = catalog.get("ex3.1")
        n = args.n or 5
        j = args.j or 2
        specs = [OperatorSpec("akr", n, j=j), OperatorSpec("bernstein", n)]
        grid = GridSpec(args.grid or 1001)
        columns, rows = figure_data(f, specs, grid)
        return columns, rows
    f = catalog.get("ex4.4")
    n = args.n or 3
    m = args.m or 4
    j = args.j or 2
    specs = [OperatorSpec("akr", n, m, j), OperatorSpec("bernstein", n, m)]
    grid = GridSpec(args.grid or 201, 2)
    columns, rows = figure_data(f, specs, grid)
    # the two difference surfaces shown in the source figures
    columns = columns + ["akr_minus_f", "bernstein_minus_akr"]
    for row in rows:
        fval, akr, bern = row[2], row[3], row[4]
        row.extend([akr - fval, bern - akr])
    return columns, rows


def cmd_bounds(args):
    kind = args.bound
    bivariate = kind in ("bivariate-old", "bivariate-mixed", "bivariate-new", "akr-2d")
    operator = "akr" if kind.startswith("akr") else "bernstein"
    dim = 2 if bivariate else 1
    f = _resolve(args.f, dim, args.fd)
    if bivariate and args.m is None:
        raise PreconditionError(f"bound {kind!r} needs --m")
    j = _need_j(args) if operator == "akr" else None
    spec = OperatorSpec(operator, args.n, args.m if bivariate else None, j)
    grid = GridSpec(args.grid, dim) if args.grid else None
    report = verify_bound(f, spec, kind, grid)
    row = [kind, spec.label(), report.grid.resolution,
           report.max_bound, report.max_error, report.max_slack,
           report.violated, report.extras.get("modulus_bound")]
    return ["bound", "operator", "grid", "max_bound", "max_error",
            "max_slack", "violated", "modulus_bound"], [row]


def build_parser():
    parser = argparse.ArgumentParser(
        prog="bernakr",
        description="Bernstein and AKR operator computations on [0,1] and [0,1]^2",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p):
        p.add_argument("--out", help="write the table to this path instead of stdout")
        p.add_argument("--format", choices=("csv", "json"), default="csv",
                       help="output format (default: %(default)s)")

    def add_function(p):
        p.add_argument("--f", required=True,
                       help="catalog key (ex3.1..ex4.6) or expression in x[,y]")
        p.add_argument("--fd", action="store_true",
                       help="force finite-difference derivative channels")

    p = sub.add_parser("nodes", help="AKR nodes next to uniform nodes")
    p.add_argument("--n", type=int, required=True, help="degree (first axis)")
    p.add_argument("--j", type=int, required=True, help="AKR exponent (j >= 2)")
    p.add_argument("--m", type=int, help="second-axis degree for bivariate nodes")
    add_common(p)
    p.set_defaults(run=cmd_nodes)

    p = sub.add_parser("eval", help="evaluate an operator at points")
    add_function(p)
    p.add_argument("--op", choices=("bernstein", "akr"), required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--m", type=int, help="second-axis degree (bivariate)")
    p.add_argument("--j", type=int, help="AKR exponent")
    p.add_argument("--x", required=True, help="comma-separated x coordinates")
    p.add_argument("--y", help="comma-separated y coordinates (bivariate)")
    add_common(p)
    p.set_defaults(run=cmd_eval)

    p = sub.add_parser("table", help="reproduce an error table")
    p.add_argument("--example", choices=("3.1", "4.4"), required=True)
    p.add_argument("--degrees", help="comma-separated degrees "
                   "(default: the published degrees)")
    p.add_argument("--grid", type=int, help="grid resolution (example 3.1; default 1001)")
    p.add_argument("--norm", choices=("sup", "rel2"),
                   help="error norm (default: sup for 3.1, rel2 for 4.4)")
    p.add_argument("--no-speed-grid", action="store_true",
                   help="keep the 201x201 grid even for degrees above 40 (example 4.4)")
    add_common(p)
    p.set_defaults(run=cmd_table)

    p = sub.add_parser("chain", help="verify a pointwise operator inequality chain")
    add_function(p)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--m", type=int, help="second-axis degree (bivariate chain)")
    p.add_argument("--j", type=int, required=True)
    p.add_argument("--kind", choices=CHAIN_KINDS,
                   help="chain kind (default: bivariate when --m is given, else akr-below)")
    p.add_argument("--grid", type=int, help="grid resolution (default 1001 / 201)")
    p.add_argument("--tol", type=float, default=1e-9,
                   help="margin tolerance (default: %(default)s)")
    add_common(p)
    p.set_defaults(run=cmd_chain)

    p = sub.add_parser("classify", help="grid-certified class membership test")
    add_function(p)
    p.add_argument("--class", dest="class_id", required=True,
                   choices=("kj1", "kj2", "decreasing-convex", "haar"))
    p.add_argument("--j", type=int, default=2, help="class exponent (default: %(default)s)")
    p.add_argument("--grid", type=int, help="grid resolution (default 501 / 101)")
    p.add_argument("--tol", type=float,
                   help="margin tolerance (default: 1e-9 analytic, 1e-6 finite-difference)")
    p.add_argument("--f0", help="first Haar function (haar only; default 1)")
    p.add_argument("--f1", help="second Haar function (haar only; default x^j)")
    add_common(p)
    p.set_defaults(run=cmd_classify)

    p = sub.add_parser("voronovskaja", help="scaled-residual limit probe")
    add_function(p)
    p.add_argument("--j", type=int, required=True)
    p.add_argument("--x", type=float, required=True)
    p.add_argument("--y", type=float, help="probe the bivariate operator at (x, y)")
    p.add_argument("--degrees", help="comma-separated degree schedule "
                   "(default: 25..1600 univariate, 25..400 bivariate)")
    add_common(p)
    p.set_defaults(run=cmd_voronovskaja)

    p = sub.add_parser("figure", help="curve/surface samples for the worked examples")
    p.add_argument("--example", choices=("3.1", "4.4"), required=True)
    p.add_argument("--n", type=int, help="degree override (default 5 / 3)")
    p.add_argument("--m", type=int, help="second-axis degree override (default 4)")
    p.add_argument("--j", type=int, help="AKR exponent override (default 2)")
    p.add_argument("--grid", type=int, help="grid resolution (default 1001 / 201)")
    add_common(p)
    p.set_defaults(run=cmd_figure)

    p = sub.add_parser("bounds", help="verify an error bound against measured error")
    add_function(p)
    p.add_argument("--bound", choices=BOUND_KINDS, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--m", type=int, help="second-axis degree (bivariate bounds)")
    p.add_argument("--j", type=int, help="AKR exponent (AKR bounds)")
    p.add_argument("--grid", type=int, help="grid resolution (default 1001 / 201)")
    add_common(p)
    p.set_defaults(run=cmd_bounds)

    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        columns, rows = args.run(args)
    except ExpressionError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except PreconditionError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION
    except NumericalError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    text = render(columns, rows, args.format)
    if args.out:
        with open(args.out, "w", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
