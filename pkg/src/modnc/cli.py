"""Command-line interface.

Every command emits one machine-readable record, JSON by default:

    {"schema_version": "1", "command": ..., "parameters": ..., "results": ...}

Exact integers and rationals are serialized as decimal/ratio strings, never
as floating point; floating estimates carry an ``exact: false`` marker and a
tolerance.  Output for a given invocation is deterministic (the selftest
command additionally reports wall-clock seconds, which of course vary).

Exit codes: 0 success, 1 usage error, 2 computation failure, 3 verification
failure.
"""

from __future__ import annotations

import argparse
import csv
import dataclasses
import json
import sys

from gmpy2 import mpq

from . import diagram_gf, oracle, selfcheck, shape_gf
from .asymptotics import (
    constant_fit,
    growth_report,
    growth_table,
    subexp_fit,
    subexponential_exponent,
)
from .matchings import table1_root_check
from .series_kernel import ComputationError, as_integer

SCHEMA_VERSION = "1"


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _record(command, parameters, results):
    return {
        "schema_version": SCHEMA_VERSION,
        "command": command,
        "parameters": parameters,
        "results": results,
    }


def _parse_tol(text):
    try:
        if "e" in text or "E" in text:
            mantissa, _, exponent = text.lower().partition("e")
            return mpq(mantissa or "1") * mpq(10) ** int(exponent)
        return mpq(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError(f"cannot parse tolerance {text!r}") from exc


def _interval_strings(interval):
    lo, hi = interval
    return [f"{lo.numerator}/{lo.denominator}", f"{hi.numerator}/{hi.denominator}"]


# ---------------------------------------------------------------------------
# command handlers: each returns (record, csv_rows_or_None, exit_code)
# ---------------------------------------------------------------------------

def _require_k_n(args):
    if not 2 <= args.k <= 9:
        raise UsageError("--k must be between 2 and 9")
    if args.n < 0:
        raise UsageError("--n must be nonnegative")


def _cmd_coeffs(args):
    _require_k_n(args)
    series = (diagram_gf.q2_series(args.n) if args.k == 2
              else diagram_gf.qk_series(args.k, args.n))
    values = [str(as_integer(c)) for c in series]
    record = _record("coeffs", {"k": args.k, "n": args.n},
                     {"coefficients": values, "exact": True})
    rows = [("n", "Q_k_n")] + [(str(n), v) for n, v in enumerate(values)]
    return record, rows, 0


def _cmd_oracle(args):
    _require_k_n(args)
    values = [str(oracle.count_modular(args.k, n)) for n in range(args.n + 1)]
    record = _record("oracle", {"k": args.k, "n": args.n},
                     {"coefficients": values, "exact": True})
    rows = [("n", "Q_k_n")] + [(str(n), v) for n, v in enumerate(values)]
    return record, rows, 0


def _cmd_shapes(args):
    if args.classes == 2:
        table = shape_gf.ik_bivariate(args.k, args.s)
        headers = ("s", "u1")
    elif args.classes == 3:
        table = shape_gf.wk_trivariate(args.k, args.s)
        headers = ("s", "u1", "u2")
    else:
        table = shape_gf.ik_colored(args.k, args.s)
        headers = ("s", "u1", "u2", "u3", "u4")
    entries = [{"index": list(key), "count": str(val)}
               for key, val in sorted(table.entries.items())]
    record = _record("shapes",
                     {"k": args.k, "s": args.s, "classes": args.classes},
                     {"indices": list(headers), "entries": entries,
                      "exact": True})
    rows = [headers + ("count",)]
    rows += [tuple(str(i) for i in key) + (str(val),)
             for key, val in sorted(table.entries.items())]
    return record, rows, 0


def _cmd_table1_check(args):
    results = {str(k): table1_root_check(k) for k in range(2, 10)}
    ok = all(results.values())
    record = _record("table1-check", {}, {"per_k": results, "all_pass": ok})
    rows = [("k", "ok")] + [(k, str(v).lower()) for k, v in results.items()]
    return record, rows, 0 if ok else 3


def _cmd_table2(args):
    reports = growth_table(9, args.digits)
    rows_json = []
    for rep in reports:
        rows_json.append({
            "k": rep.k,
            "growth_rate": rep.growth_rate,
            "exact": True,
            "gamma_interval": _interval_strings(rep.gamma_interval),
            "theta_derivative_nonzero": rep.theta_derivative_nonzero,
        })
    record = _record("table2", {"digits": args.digits}, {"rows": rows_json})
    rows = [("k", "growth_rate")]
    rows += [(str(r.k), r.growth_rate) for r in reports]
    return record, rows, 0


def _cmd_asympt(args):
    rep = growth_report(args.k, args.digits, tol=_parse_tol(args.tol))
    results = {
        "k": args.k,
        "gamma_interval": _interval_strings(rep.gamma_interval),
        "growth_rate": rep.growth_rate,
        "exact": True,
        "theta_derivative_nonzero": rep.theta_derivative_nonzero,
        "fitted_exponent": None,
        "fitted_constant": None,
    }
    if args.fit_order:
        n = args.fit_order
        if n < 64:
            raise UsageError("--fit-order must be at least 64")
        series = (diagram_gf.q2_series(n) if args.k == 2
                  else diagram_gf.qk_series(args.k, n))
        coeffs = list(series)
        lo, hi = rep.gamma_interval
        gamma = (lo + hi) / 2
        theta = subexponential_exponent(args.k)
        expo = subexp_fit(coeffs, gamma, (1, n))
        expo_half = subexp_fit(coeffs, gamma, (1, n // 2))
        const = constant_fit(coeffs, gamma, theta, (1, n))
        const_half = constant_fit(coeffs, gamma, theta, (1, n // 2))
        rep = dataclasses.replace(rep, fitted_exponent=expo,
                                  fitted_constant=const)
        results["fitted_exponent"] = {
            "value": rep.fitted_exponent, "exact": False,
            "tolerance": abs(expo - expo_half),
        }
        results["fitted_constant"] = {
            "value": rep.fitted_constant, "exact": False,
            "tolerance": abs(const - const_half),
            "power_law_exponent": str(theta),
        }
    record = _record("asympt",
                     {"k": args.k, "digits": args.digits, "tol": args.tol,
                      "fit_order": args.fit_order},
                     results)
    return record, None, 0


def _cmd_remark(args):
    idx = diagram_gf.remark_mismatch(args.n)
    record = _record("remark", {"n": args.n},
                     {"first_mismatch": idx, "exact": True})
    return record, None, 0


def _cmd_selftest(args):
    results = selfcheck.run_checks(args.level)
    ok = all(r.passed for r in results)
    checks = [{
        "name": r.name,
        "passed": r.passed,
        "detail": r.detail,
        "seconds": round(r.seconds, 2),
    } for r in results]
    record = _record("selftest", {"level": args.level},
                     {"checks": checks, "all_pass": ok,
                      "failed": [r.name for r in results if not r.passed]})
    return record, None, 0 if ok else 3


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="modnc",
                     description="modular k-noncrossing diagram toolkit")
    sub = parser.add_subparsers(dest="command", required=True,
                                parser_class=_Parser)

    def add(name, handler, help_text, csv_ok=True):
        p = sub.add_parser(name, help=help_text)
        p.set_defaults(handler=handler)
        if csv_ok:
            p.add_argument("--format", choices=("json", "csv"),
                           default="json")
        else:
            p.set_defaults(format="json")
        return p

    p = add("coeffs", _cmd_coeffs, "diagram counts from the closed form")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--n", type=int, required=True)

    p = add("oracle", _cmd_oracle,
            "diagram counts by brute-force enumeration (exponential cost)")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--n", type=int, required=True)

    p = add("shapes", _cmd_shapes, "shape count tables")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--s", type=int, required=True)
    p.add_argument("--classes", type=int, choices=(2, 3, 5), default=2,
                   help="statistics tracked: 2=(s,u1), 3=+u2, 5=+u3,u4")

    add("table1-check", _cmd_table1_check,
        "verify the tabulated singularity polynomials and roots")

    p = add("table2", _cmd_table2, "certified growth rates for k=3..9")
    p.add_argument("--digits", type=int, default=4)

    p = add("asympt", _cmd_asympt,
            "certified singularity data for one k, optional fits",
            csv_ok=False)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--digits", type=int, default=6)
    p.add_argument("--tol", default="1e-10")
    p.add_argument("--fit-order", type=int, default=0,
                   help="fit exponent/constant from this many coefficients")

    p = add("remark", _cmd_remark,
            "first coefficient where the k>2 form fails at k=2", csv_ok=False)
    p.add_argument("--n", type=int, default=20)

    p = add("selftest", _cmd_selftest, "run verification checks",
            csv_ok=False)
    p.add_argument("--level", choices=("quick", "full"), default="quick")

    return parser


def _emit(record, rows, fmt):
    if fmt == "csv":
        writer = csv.writer(sys.stdout, lineterminator="\n")
        writer.writerows(rows)
    else:
        json.dump(record, sys.stdout, indent=2)
        sys.stdout.write("\n")


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        record, rows, code = args.handler(args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 1
    except ValueError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 1
    except ComputationError as exc:
        print(f"computation failed: {exc}", file=sys.stderr)
        return 2
    if args.format == "csv" and rows is None:
        print("usage error: this command has no CSV form", file=sys.stderr)
        return 1
    _emit(record, rows, args.format)
    return code


def run():
    sys.exit(main())


if __name__ == "__main__":
    run()
