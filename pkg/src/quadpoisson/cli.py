"""Command-line entry point.

Exit codes: 0 when every check passes, 1 when a mathematical check fails
(Jacobi violated, non-confluent rewriting, non-splitting ideal, nonzero
residual, ...), 2 for unreadable input or bad usage.  Reports go to
standard output, diagnostics to standard error.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import lang
from .bracket import dualize, jacobi_residual, p_data
from .exact.linalg import SingularMatrix
from .exact.ratfunc import RatFunc

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _read(path: str) -> str:
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None


def _bracket(path: str):
    try:
        return lang.parse_bracket(_read(path))
    except lang.ParseError as exc:
        raise UsageError(f"{path}: {exc}") from None


def _render(value, indent: int = 0) -> list[str]:
    pad = "  " * indent
    if isinstance(value, dict):
        lines = []
        for k, v in value.items():
            if isinstance(v, (dict, list)) and v and not _flat_list(v):
                lines.append(f"{pad}{k}:")
                lines.extend(_render(v, indent + 1))
            else:
                lines.append(f"{pad}{k}: {_inline(v)}")
        return lines
    if isinstance(value, list):
        lines = []
        for v in value:
            if isinstance(v, (dict, list)) and v and not _flat_list(v):
                lines.append(f"{pad}-")
                lines.extend(_render(v, indent + 1))
            else:
                lines.append(f"{pad}- {_inline(v)}")
        return lines
    return [f"{pad}{_inline(value)}"]


def _flat_list(v) -> bool:
    return isinstance(v, list) and all(not isinstance(x, (dict, list)) for x in v)


def _inline(v) -> str:
    if isinstance(v, list):
        return "[" + ", ".join(_inline(x) for x in v) + "]"
    if isinstance(v, bool):
        return "yes" if v else "no"
    if v is None:
        return "-"
    if isinstance(v, dict) and not v:
        return "{}"
    return str(v)


def _emit(report: dict, fmt: str) -> None:
    if fmt == "json":
        sys.stdout.write(lang.dumps_report(report))
    else:
        sys.stdout.write("\n".join(_render(lang.to_report(report))) + "\n")


# ---------------------------------------------------------------------------
# subcommands: each returns (report, passed)
# ---------------------------------------------------------------------------

def cmd_check(args):
    b = _bracket(args.bracket)
    linear, triple = jacobi_residual(b)
    pd = p_data(b)
    report = {
        "bracket": lang.format_bracket(b).strip().split("\n"),
        "jacobi_linear_residual": linear,
        "jacobi_triple_residual": triple,
        "poisson": not triple,
        "v": list(pd.v),
        "P": pd.P,
        "trace": pd.P.trace(),
        "rank": pd.rank,
    }
    return report, not triple


def cmd_classify(args):
    from .classify import NotPoisson, classify

    b = _bracket(args.bracket)
    try:
        rep = classify(b)
    except NotPoisson as exc:
        return {"error": str(exc), "poisson": False}, False
    return rep.to_report(), True


def cmd_quantize(args):
    from .quantize import (
        NonTerminating,
        SingularSystem,
        diamond_residual,
        graded_dimension,
        pbw_dimension,
        relations,
        triangularize,
    )

    b = _bracket(args.bracket)
    rels = relations(b)
    report: dict = {"relations": [repr(r) for r in rels]}
    ok = True
    try:
        rs = triangularize(rels)
        report["rules"] = rs.lines()
        res = diamond_residual(rs)
        report["diamond_residual"] = lang.format_ncpoly(res)
        ok = not res
    except SingularSystem as exc:
        report["rules"] = str(exc)
        ok = False
    except NonTerminating as exc:
        report["diamond_residual"] = f"rewriting does not terminate: {exc}"
        ok = False
    degrees = list(range(1, args.degree + 1))
    dims = [graded_dimension(rels, d) for d in degrees]
    report["degrees"] = " ".join(str(d) for d in degrees)
    report["dimension_generic"] = " ".join(str(g) for g, _ in dims)
    report["dimension_h0"] = " ".join(str(z) for _, z in dims)
    report["pbw"] = " ".join(str(pbw_dimension(d)) for d in degrees)
    ok = ok and all(g == z == pbw_dimension(d) for d, (g, z) in zip(degrees, dims))
    report["pbw_ok"] = ok
    return report, ok


def cmd_flatness(args):
    from .classify import NotPoisson, classify
    from .flatness import intersection_W, splitting_check
    from .quantize import relations

    b = _bracket(args.bracket)
    rels = relations(b)
    rows = []
    ok = True
    for k in range(3, args.degree + 1):
        z, g, split = splitting_check(rels, k)
        rows.append({"degree": k, "rank_h0": z, "rank_generic": g, "splitting": split})
        ok = ok and split
    case = None
    try:
        rep = classify(b)
        # the explicit cyclic witness is written for the canonical forms only
        if rep.case_label in ("a", "b", "cb") and rep.canonical == b:
            case = rep.case_label
    except NotPoisson:
        pass
    W = intersection_W(rels, case)
    ok = ok and W.witness_ok and W.dim_generic == W.dim_zero == 1
    return {"splitting": rows, "W": W.to_report(), "flat": ok}, ok


def cmd_dualize(args):
    b = _bracket(args.bracket)
    d = dualize(b)
    nonzero = {}
    for i in range(3):
        for j in range(3):
            for k in range(3):
                for m in range(3):
                    v = d.c[i][j][k][m]
                    if v:
                        nonzero[f"c[{i + 1}{j + 1}][{k + 1}{m + 1}]"] = v
    return {"parity": d.parity, "structure_constants": nonzero, "involution": dualize(d) == b}, dualize(d) == b


def cmd_orbit(args):
    from .classify import orbit_fingerprint, orbit_verify

    try:
        f = lang.parse_cubic(_read(args.cubic))
    except lang.ParseError as exc:
        raise UsageError(f"{args.cubic}: {exc}") from None
    rep = orbit_fingerprint(f).to_report()
    report = {"f": f, "fingerprint": rep}
    ok = True
    if args.witness is not None:
        if args.id is None:
            raise UsageError("--witness needs --id")
        try:
            A = lang.parse_matrix(args.witness)
        except lang.ParseError as exc:
            raise UsageError(f"--witness: {exc}") from None
        if any(isinstance(x, RatFunc) for row in A.rows for x in row):
            raise UsageError("--witness must be a rational matrix")
        try:
            ok = orbit_verify(f, A, args.id, args.c)
        except (ValueError, SingularMatrix) as exc:
            raise UsageError(str(exc)) from None
        report["witness_ok"] = ok
    return report, ok


def _parse_params(items):
    out = {}
    for item in items or ():
        if "=" not in item:
            raise UsageError(f"parameter {item!r} is not of the form name=value")
        k, v = item.split("=", 1)
        out[k.strip()] = v.strip()
    return out


def cmd_realize(args):
    from .realize import CASE_IDS, DegenerateParams, catalog, monomial_rank, verify
    from .realize.operators import UnsupportedSymbol

    if args.case not in CASE_IDS:
        raise UsageError(f"unknown case {args.case!r}; choose from {', '.join(CASE_IDS)}")
    params = _parse_params(args.params)
    try:
        R = catalog(args.case, **params)
    except (DegenerateParams, UnsupportedSymbol, ValueError, ZeroDivisionError) as exc:
        raise UsageError(f"{args.case}: {exc}") from None
    report = R.to_report()
    ok = True
    if args.verify:
        res = verify(R)
        report["residuals"] = [lang.format_operator(r) for r in res]
        ok = all(r.is_zero() for r in res)
    if args.independence is not None:
        if not 0 <= args.independence <= 4:
            raise UsageError("--independence expects a degree between 0 and 4")
        rank, n = monomial_rank(R, args.independence)
        report["independence"] = {"degree": args.independence, "rank": rank, "monomials": n, "independent": rank == n}
        ok = ok and rank == n
    return report, ok


def cmd_series10(args):
    from fractions import Fraction

    from .realize import solve_case10

    try:
        c1, c2 = Fraction(args.c1), Fraction(args.c2)
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError(str(exc)) from None
    if args.order < 2:
        raise UsageError("--order must be at least 2")
    sol = solve_case10(c1, c2, args.order)
    return sol.to_report(), sol.ok()


# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="quadpoisson", description="Quadratic Poisson brackets and their quantizations.")
    parser.add_argument("--format", choices=("text", "json"), default="text", help="report format (default: text)")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", help="Jacobi identity, divergence matrix P and its trace")
    p.add_argument("bracket")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("classify", help="case label and normal form")
    p.add_argument("bracket")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("quantize", help="relations, rewriting rules, diamond residual and dimensions")
    p.add_argument("bracket")
    p.add_argument("--degree", type=int, default=4, help="largest degree of the dimension table (default 4)")
    p.set_defaults(func=cmd_quantize)

    p = sub.add_parser("flatness", help="splitting ranks and the space W")
    p.add_argument("bracket")
    p.add_argument("--degree", type=int, required=True)
    p.set_defaults(func=cmd_flatness)

    p = sub.add_parser("dualize", help="structure constants of the dual bracket")
    p.add_argument("bracket")
    p.set_defaults(func=cmd_dualize)

    p = sub.add_parser("orbit", help="orbit fingerprint of a cubic form")
    p.add_argument("cubic")
    p.add_argument("--witness", help='matrix "a,b,c; d,e,f; g,h,i" with f(A x) = representative')
    p.add_argument("--id", type=int, choices=range(1, 11), metavar="K")
    p.add_argument("--c", help="parameter of orbit 10")
    p.set_defaults(func=cmd_orbit)

    p = sub.add_parser("realize", help="explicit operator realization of a case")
    p.add_argument("--case", required=True)
    p.add_argument("--params", nargs="*", metavar="NAME=VALUE")
    p.add_argument("--verify", action="store_true")
    p.add_argument("--independence", type=int, metavar="D")
    p.set_defaults(func=cmd_realize)

    p = sub.add_parser("series10", help="formal-series realization for orbit 10")
    p.add_argument("--c1", required=True)
    p.add_argument("--c2", required=True)
    p.add_argument("--order", type=int, required=True)
    p.set_defaults(func=cmd_series10)
    return parser


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # argparse reports usage errors with status 2
        return int(exc.code or 0)
    try:
        if getattr(args, "degree", None) is not None and args.degree > 8:
            raise UsageError("--degree is limited to 8")
        if args.command == "flatness" and args.degree < 3:
            raise UsageError("--degree must be at least 3")
        report, ok = args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    _emit(report, args.format)
    if not ok:
        print("check failed", file=sys.stderr)
    return EXIT_OK if ok else EXIT_FAIL


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
