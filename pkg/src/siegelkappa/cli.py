"""Command-line surface.

Subcommands: cohen (Cohen-number table), series (named q-series), lvalue
(L-function values/derivatives), kappa-mu (one Laurent coefficient with its
breakdown), borcherds (full report for one input form), check (the built-in
verification suite; exits nonzero on any failure).

Exact rationals serialize as "p/q" strings, numerics as decimal strings with
an explicit digit count; exit code 2 for usage errors, 1 for computation
errors ({"error", "detail"} on stdout under --json).
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from fractions import Fraction

from mpmath import mp

from . import acceptance, arith, borcherds, eisen, jacobi, lfun, qseries


@dataclass(frozen=True)
class RunConfig:
    digits: int = 50
    prec: Fraction = Fraction(12)
    output: str = "text"

    def __post_init__(self):
        if self.digits < 15:
            raise ValueError("--digits must be at least 15")
        if self.prec < 2:
            raise ValueError("--prec must be at least 2")
        if self.output not in ("text", "json"):
            raise ValueError("output must be text or json")

    def precision(self) -> lfun.PrecisionConfig:
        return lfun.PrecisionConfig(digits=self.digits)


def _frac(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"not a rational: {text!r}") from exc


def _emit(data: dict, args, text_lines) -> None:
    if args.json:
        print(json.dumps(data, indent=2))
    else:
        for line in text_lines:
            print(line)


def _num(x, digits: int) -> str:
    return mp.nstr(x, digits, strip_zeros=False)


def cmd_cohen(args) -> int:
    cfg = RunConfig(digits=args.digits, prec=args.prec)
    rows = []
    for n in range(0, args.max_n + 1):
        h = arith.cohen_H(args.r, n)
        if n and h == 0:
            continue
        rows.append({"N": n, "H": str(h), "minus120H": str(-120 * h)})
    _emit({"r": args.r, "rows": rows}, args,
          [f"N={row['N']:4d}  H({args.r},N) = {row['H']:>12}   -120H = {row['minus120H']}"
           for row in rows])
    return 0


_SERIES_BUILDERS = {
    "delta": lambda prec: qseries.build_delta(prec),
    "e4": lambda prec: qseries.build_e4(prec),
    "e6": lambda prec: qseries.build_e6(prec),
    "j": lambda prec: qseries.build_j(prec),
    "inv-delta": lambda prec: qseries.build_delta(prec + 2).inverse(),
    "h0": lambda prec: jacobi.phi12_theta_components(prec)[0],
    "h1": lambda prec: jacobi.phi12_theta_components(prec)[1],
    "f0": lambda prec: jacobi.build_vv_form(prec).f0,
    "f1": lambda prec: jacobi.build_vv_form(prec).f1,
}


def cmd_series(args) -> int:
    cfg = RunConfig(digits=args.digits, prec=args.prec)
    series = _SERIES_BUILDERS[args.name](cfg.prec)
    _emit(series.to_json_dict(), args, [series.text()])
    return 0


def cmd_lvalue(args) -> int:
    cfg = RunConfig(digits=args.digits, prec=args.prec)
    s = _frac(args.s)
    s = int(s) if s.denominator == 1 else s
    res = lfun.dirichlet_L_deriv(s, args.d, cfg.precision())
    data = {"d": args.d, "s": str(s),
            "value": _num(res.value, args.digits),
            "err": _num(res.err_estimate, 3),
            "digits": args.digits}
    lines = [f"L({s}, chi_{args.d}) = {data['value']}"]
    if args.deriv:
        data["deriv"] = _num(res.deriv, args.digits)
        data["logderiv"] = _num(res.logderiv, args.digits)
        lines += [f"L'({s}, chi_{args.d}) = {data['deriv']}",
                  f"L'/L({s}, chi_{args.d}) = {data['logderiv']}"]
    lines.append(f"err estimate = {data['err']}")
    _emit(data, args, lines)
    return 0


def cmd_kappa_mu(args) -> int:
    cfg = RunConfig(digits=args.digits, prec=args.prec)
    pcfg = cfg.precision()
    m = _frac(args.m)
    term = eisen.kappa_mu(args.mu, m, pcfg)
    data = {"mu": args.mu, "m": str(m),
            "kappa_mu": _num(term.numeric, args.digits), "digits": args.digits}
    lines = [f"kappa_{args.mu}({m}) = {data['kappa_mu']}"]
    if term.breakdown is not None:
        bd = term.breakdown
        data["breakdown"] = {
            "prefactor_120H": str(bd.prefactor),
            "const_block": _num(bd.const_block, args.digits),
            "log_d_term": _num(bd.log_d_term, args.digits),
            "l_logderiv_term": _num(bd.l_logderiv_term, args.digits),
            "conductor": bd.conductor,
            "discriminant": bd.discriminant,
            "prime_terms": [{"p": t.p, "log_coeff": str(t.coeff),
                             "value": _num(t.value, args.digits)}
                            for t in bd.prime_terms],
        }
        lines.append(f"  = 120 H(2,{4 * m}) * bracket, 120H = {bd.prefactor}, "
                     f"4m = {bd.conductor}^2 * {bd.discriminant}")
        for t in bd.prime_terms:
            lines.append(f"  prime term p={t.p}: ({t.coeff}) * log {t.p}")
    if args.v is not None:
        b = eisen.b_mu(args.mu, m, _frac(args.v), pcfg)
        data["b_at_v"] = _num(b, args.digits)
        data["v"] = args.v
        lines.append(f"b_{args.mu}({m}, v={args.v}) = {data['b_at_v']}")
    _emit(data, args, lines)
    return 0


def cmd_borcherds(args) -> int:
    cfg = RunConfig(digits=args.digits, prec=args.prec)
    pcfg = cfg.precision()
    if args.input:
        with open(args.input, "r", encoding="utf-8") as fh:
            form = jacobi.vv_form_from_json(fh.read())
        label = args.input
    else:
        form = jacobi.scale_by_j_power(jacobi.build_vv_form(cfg.prec), args.t)
        label = f"j^{args.t} * f"
    report = borcherds.kappa_psi(form, pcfg)
    data = borcherds.kappa_report_to_json_dict(report, args.digits)
    data["input"] = label
    pp = borcherds.extract_principal_part(form)
    data["principal_part"] = [
        {"m": str(m), "mu": mu, "coefficient": c}
        for (m, mu), c in sorted(pp.items()) if c != 0]
    disc = arith.b2_logderiv_discrepancy()
    data["local_derivative_note"] = {
        "derived_b2_logderiv": f"{disc['derived_coeff']} * log 2",
        "published_alt": f"{disc['published_alt_coeff']} * log 2",
        "difference": f"{disc['difference_coeff']} * log 2",
    }

    def pp_label(m, mu):
        return f"c_{mu}({-m})" if m > 0 else f"c_{mu}(0)"

    lines = [f"input: {label}",
             f"principal part: " + ", ".join(
                 f"{pp_label(m, mu)} = {c}" for (m, mu), c in sorted(pp.items()) if c != 0),
             f"weight of Psi^2: {report.weight}  (Psi has weight {report.weight_half})",
             f"divisor: {report.divisor}",
             f"degree check: sum c deg Z = {report.degree_lhs} = -vol(X) c_0(0) = {report.degree_rhs}",
             f"kappa = {_num(report.kappa, args.digits)}"]
    with mp.workdps(pcfg.wdps):
        for m, mu, c, term in report.breakdown:
            lines.append(f"  {c} * kappa_{mu}({m}) = {_num(c * term.numeric, args.digits)}")
    lines.append(f"  constant term c_0(0) C0/2 = {_num(report.constant_contribution, args.digits)}")
    if report.closed_form_check is not None:
        lines.append(f"closed form: {_num(report.closed_form_check.closed_form, args.digits)} "
                     f"(difference {_num(report.closed_form_check.difference, 3)})")
    lines.append("note: b'_2(2,-1)/b_2(2,-1) = -2 log 2 by direct differentiation; "
                 "a published value -9/11 log 2 does not match (difference -13/11 log 2)")
    _emit(data, args, lines)
    return 0


def cmd_check(args) -> int:
    cfg = RunConfig(digits=args.digits, prec=args.prec)
    results = acceptance.run_all(cfg.precision())
    if args.json:
        print(json.dumps({
            "digits": args.digits,
            "results": [{"criterion": r.number, "name": r.name,
                         "passed": r.passed, "detail": r.detail} for r in results],
            "all_passed": all(r.passed for r in results),
        }, indent=2))
    else:
        for r in results:
            print(r.line())
        npass = sum(r.passed for r in results)
        print(f"{npass}/{len(results)} criteria passed")
    return 0 if all(r.passed for r in results) else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="siegelkappa",
        description="Exact and high-precision computation of Borcherds-form "
                    "divisors, cycle degrees, and log-norm integrals on the "
                    "Siegel threefold.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--digits", type=int, default=50,
                       help="decimal working precision (default 50)")
        p.add_argument("--prec", type=_frac, default=Fraction(12),
                       help="q-series precision bound (default 12)")
        p.add_argument("--json", action="store_true", help="emit JSON")

    p = sub.add_parser("cohen", help="table of Cohen numbers H(r, N)")
    p.add_argument("--r", type=int, default=2)
    p.add_argument("--max-N", dest="max_n", type=int, default=20)
    common(p)
    p.set_defaults(fn=cmd_cohen)

    p = sub.add_parser("series", help="print a named q-series")
    p.add_argument("--name", choices=sorted(_SERIES_BUILDERS), required=True)
    common(p)
    p.set_defaults(fn=cmd_series)

    p = sub.add_parser("lvalue", help="Dirichlet L value (and derivative) at real s")
    p.add_argument("--d", type=int, required=True,
                   help="1 or a fundamental discriminant")
    p.add_argument("--s", type=str, required=True)
    p.add_argument("--deriv", action="store_true")
    common(p)
    p.set_defaults(fn=cmd_lvalue)

    p = sub.add_parser("kappa-mu", help="one Laurent coefficient kappa_mu(m)")
    p.add_argument("--mu", type=int, choices=(0, 1), required=True)
    p.add_argument("--m", type=str, required=True, help='rational like "5/4"')
    p.add_argument("--v", type=str, default=None,
                   help="also evaluate the finite-v coefficient b_mu(m, v)")
    common(p)
    p.set_defaults(fn=cmd_kappa_mu)

    p = sub.add_parser("borcherds", help="full report for one Borcherds input form")
    p.add_argument("--t", type=int, default=0, help="power of j multiplying the base form")
    p.add_argument("--input", type=str, default=None,
                   help="JSON file with a vector-valued form (overrides --t)")
    common(p)
    p.set_defaults(fn=cmd_borcherds)

    p = sub.add_parser("check", help="run the verification suite")
    common(p)
    p.set_defaults(fn=cmd_check)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except (arith.ArithError, jacobi.JacobiError, lfun.LfunError,
            eisen.EisenError, borcherds.BorcherdsError, qseries.QSeriesError,
            ValueError, OSError) as exc:
        if getattr(args, "json", False):
            print(json.dumps({"error": type(exc).__name__, "detail": str(exc)}))
        else:
            print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
