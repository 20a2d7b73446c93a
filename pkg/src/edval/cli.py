"""Command line front end.

Plain output puts the primary value on the last line; ``--json`` prints one
JSON object.  Exit status is 0 on success, 1 when the input violates a
mathematical precondition, 2 for usage errors (bad flags, malformed matrix
or expression text).
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Sequence

from . import essdim, intmat, laurent
from .intmat import IntMatrix, MatrixParseError, ShapeError
from .laurent import ExpressionError

SEARCH_MAX_CELLS = 9
SEARCH_MAX_BOUND = 6
_INT64 = 2**63


class UsageError(Exception):
    pass


def _j(x):
    """JSON-safe copy: ints beyond 64 bits become decimal strings."""
    if isinstance(x, bool):
        return x
    if isinstance(x, int):
        return x if -_INT64 <= x < _INT64 else str(x)
    if isinstance(x, IntMatrix):
        return [[_j(v) for v in row] for row in x]
    if isinstance(x, dict):
        return {k: _j(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_j(v) for v in x]
    return x


def _vec(v) -> str:
    return "(" + ",".join(str(x) for x in v) + ")"


def _read_matrix(args) -> IntMatrix:
    if args.matrix is not None and args.matrix_file is not None:
        raise UsageError("give --matrix or --matrix-file, not both")
    if args.matrix_file is not None:
        try:
            with open(args.matrix_file) as fh:
                text = fh.read()
        except OSError as exc:
            raise UsageError(f"cannot read {args.matrix_file}: {exc.strerror}") from None
    elif args.matrix is not None:
        text = args.matrix
    else:
        raise UsageError("a matrix is required (--matrix or --matrix-file)")
    try:
        return intmat.parse_matrix(text)
    except MatrixParseError as exc:
        raise UsageError(f"matrix: {exc}") from None


def _read_poly(text: str, names: list[str]) -> laurent.LaurentPoly:
    try:
        return laurent.parse_laurent(text, names)
    except ExpressionError as exc:
        raise UsageError(f"expression {text!r}: {exc}") from None


def _read_vars(text: str) -> list[str]:
    try:
        return laurent.parse_varlist(text)
    except ValueError as exc:
        raise UsageError(f"--vars: {exc}") from None


def _int_list(text: str) -> list[int]:
    try:
        return [int(s) for s in text.replace(",", " ").split()]
    except ValueError:
        raise UsageError(f"expected a list of integers, got {text!r}") from None


# each handler returns (plain lines, json object)

def _cmd_snf(args):
    a = _read_matrix(args)
    s = intmat.smith_normal_form(a)
    lines = ["P =", str(s.p), "D =", str(s.d), "Q =", str(s.q), _vec(s.divisors)]
    return lines, {"divisors": list(s.divisors), "p": s.p, "q": s.q, "d": s.d}


def _cmd_rank(args):
    r = intmat.rank_rational(_read_matrix(args))
    return [str(r)], {"rank": r}


def _cmd_rank_mod(args):
    r = intmat.rank_mod(_read_matrix(args), args.modulus)
    return [str(r)], {"rank": r, "modulus": args.modulus}


def _ed_result(e: IntMatrix, ed: int):
    divs = intmat.elementary_divisors(e)
    return [f"divisors {_vec(divs)}", str(ed)], {"ed": ed, "divisors": list(divs)}


def _cmd_ed_torus(args):
    a = _read_matrix(args)
    return _ed_result(a, essdim.ed_torus(a))


def _cmd_ed_projective(args):
    a = _read_matrix(args)
    ed = essdim.ed_projective(a)
    return _ed_result(essdim.extend_projective(a), ed)


def _cmd_cd_torus(args):
    a = _read_matrix(args)
    cd = essdim.cd_torus(a)
    divs = intmat.elementary_divisors(a)
    return [f"divisors {_vec(divs)}", str(cd)], {"cd": cd, "divisors": list(divs)}


def _cmd_ed_forms(args):
    e = essdim.forms_matrix(args.m, args.d)
    return _ed_result(e, essdim.ed_forms(args.m, args.d))


def _cmd_ed_hypersurface(args):
    e = essdim.forms_matrix(args.m, args.d)
    return _ed_result(essdim.extend_projective(e), essdim.ed_hypersurface(args.m, args.d))


def _cmd_ed_abelian(args):
    moduli = [int(x) for x in args.moduli]
    g = essdim.AbelianGroupSpec.from_moduli(moduli)
    return (
        [f"invariant factors {_vec(g.invariant_factors)}", str(g.rank)],
        {"ed": g.rank, "divisors": list(g.invariant_factors)},
    )


def _cmd_val(args):
    names = _read_vars(args.vars)
    f = _read_poly(args.expr, names)
    if args.den is not None:
        g = _read_poly(args.den, names)
        v = laurent.valuation_rat(laurent.RationalFunction(f, g))
    else:
        v = laurent.valuation(f)
    return [_vec(v)], {"valuation": list(v)}


def _cmd_initial(args):
    names = _read_vars(args.vars)
    v = laurent.initial_exponent(_read_poly(args.expr, names))
    return [_vec(v)], {"initial": list(v)}


def _cmd_indep(args):
    c = essdim.construct_independent(_read_matrix(args))
    lines = [
        f"rows {_vec(c.row_select)} cols {_vec(c.col_select)}",
        "Lambda =", str(c.lambda_mat),
        "g exponents =", str(c.g_exponents),
        str(c.lam),
    ]
    return lines, {
        "lambda": c.lam,
        "Lambda": c.lambda_mat,
        "rows": list(c.row_select),
        "cols": list(c.col_select),
        "g_exponents": c.g_exponents,
    }


def _cmd_search(args):
    a = _read_matrix(args)
    cells = a.rows * a.cols
    if (cells > SEARCH_MAX_CELLS or args.bound > SEARCH_MAX_BOUND) and not args.force:
        raise UsageError(
            f"search limited to m*n <= {SEARCH_MAX_CELLS} and bound <= {SEARCH_MAX_BOUND} "
            f"(got m*n = {cells}, bound = {args.bound}); pass --force to override"
        )
    w = essdim.compression_search(a, args.bound, exhaustive=args.exhaustive)
    lines = ["U =", str(w.u), "I + E U =", str(w.fs_exponents), str(w.achieved_rank)]
    return lines, {"min_rank": w.achieved_rank, "witness": w.u, "nodes": w.nodes}


def _cmd_check_abelian(args):
    moduli = _int_list(args.moduli)
    names = _read_vars(args.vars) if args.vars else laurent.default_names(len(moduli))
    if len(names) != len(moduli):
        raise UsageError(f"{len(moduli)} moduli but {len(names)} variables")
    if len(args.polys) != len(moduli):
        raise UsageError(f"{len(moduli)} moduli need {len(moduli)} polynomials, got {len(args.polys)}")
    polys = [_read_poly(t, names) for t in args.polys]
    rep = essdim.abelian_obstruction_check(moduli, polys, args.p)
    if not rep.equivariant:
        lines = [f"term {_vec(e)} of f{j + 1} breaks equivariance" for j, e in rep.violations]
        lines.append("not equivariant")
        return lines, {"equivariant": False, "violations": [[j, list(e)] for j, e in rep.violations]}
    lines = [
        "valuation matrix =", str(rep.valuation_matrix),
        f"identity mod {args.p}: {'yes' if rep.identity_mod_p else 'no'}",
        f"rank mod {args.p}: {rep.rank_mod_p}",
        str(rep.rank),
    ]
    return lines, {
        "equivariant": True,
        "valuation_matrix": rep.valuation_matrix,
        "identity_mod_p": rep.identity_mod_p,
        "rank_mod_p": rep.rank_mod_p,
        "rank": rep.rank,
    }


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="edval", description="Essential dimension and monomial valuations.")
    parser.add_argument("--json", action="store_true", help="emit a single JSON object")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def with_matrix(name, func, help):
        p = sub.add_parser(name, help=help)
        p.add_argument("--matrix", help='inline matrix, e.g. "2 0; 1 1; 0 2"')
        p.add_argument("--matrix-file", metavar="PATH")
        p.add_argument("--json", action="store_true", default=argparse.SUPPRESS)
        p.set_defaults(func=func)
        return p

    def with_md(name, func, help):
        p = sub.add_parser(name, help=help)
        p.add_argument("-m", type=int, required=True, help="dimension of the space")
        p.add_argument("-d", type=int, required=True, help="degree")
        p.add_argument("--json", action="store_true", default=argparse.SUPPRESS)
        p.set_defaults(func=func)
        return p

    with_matrix("snf", _cmd_snf, "Smith normal form")
    with_matrix("rank", _cmd_rank, "rank over Q")
    p = with_matrix("rank-mod", _cmd_rank_mod, "determinantal rank mod m")
    p.add_argument("--modulus", "-M", type=int, required=True)
    with_matrix("ed-torus", _cmd_ed_torus, "ed of the torus-orbit functor")
    with_matrix("ed-projective", _cmd_ed_projective, "ed of the projective orbit functor")
    with_matrix("cd-torus", _cmd_cd_torus, "canonical dimension of the torus action")
    with_md("ed-forms", _cmd_ed_forms, "ed of rigid degree-d forms in m variables")
    with_md("ed-hypersurface", _cmd_ed_hypersurface, "ed of rigid degree-d hypersurfaces")

    p = sub.add_parser("ed-abelian", help="ed of Z/d1 x ... x Z/dn")
    p.add_argument("moduli", nargs="+", type=int)
    p.add_argument("--json", action="store_true", default=argparse.SUPPRESS)
    p.set_defaults(func=_cmd_ed_abelian)

    for name, func, help in (("val", _cmd_val, "lex-min valuation"), ("initial", _cmd_initial, "lex-max exponent")):
        p = sub.add_parser(name, help=help)
        p.add_argument("--vars", required=True, help="ordered variable names, e.g. x1,x2")
        p.add_argument("expr")
        if name == "val":
            p.add_argument("--den", help="optional denominator")
        p.add_argument("--json", action="store_true", default=argparse.SUPPRESS)
        p.set_defaults(func=func)

    with_matrix("indep", _cmd_indep, "independence certificate for valuation rows")
    p = with_matrix("search", _cmd_search, "brute-force monomial compression search")
    p.add_argument("--bound", type=int, required=True)
    p.add_argument("--force", action="store_true", help="lift the size limits")
    p.add_argument("--exhaustive", action="store_true", help="visit every grid point")

    p = sub.add_parser("check-abelian", help="valuation obstruction for an equivariant map")
    p.add_argument("--moduli", required=True, help="e.g. 2,4")
    p.add_argument("--vars", help="variable names (default x1..xn)")
    p.add_argument("-p", type=int, required=True, help="prime dividing every modulus")
    p.add_argument("polys", nargs="+")
    p.add_argument("--json", action="store_true", default=argparse.SUPPRESS)
    p.set_defaults(func=_cmd_check_abelian)
    return parser


def _glue_values(argv: list[str]) -> list[str]:
    # values such as "-2 1; 3 1" would otherwise be read as flags
    out = []
    it = iter(argv)
    for a in it:
        if a in ("--matrix", "--den"):
            nxt = next(it, None)
            out.append(a if nxt is None else f"{a}={nxt}")
        else:
            out.append(a)
    return out


def main(argv: Sequence[str] | None = None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    argv = _glue_values(list(sys.argv[1:] if argv is None else argv))
    try:
        args = build_parser().parse_args(argv)
        lines, obj = args.func(args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=stderr)
        return 2
    except (ValueError, ShapeError, ZeroDivisionError) as exc:
        print(f"error: {exc}", file=stderr)
        return 1
    if args.json:
        print(json.dumps(_j(obj)), file=stdout)
    else:
        print("\n".join(lines), file=stdout)
    return 0


if __name__ == "__main__":
    sys.exit(main())
