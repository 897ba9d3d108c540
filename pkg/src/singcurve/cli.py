"""Command-line front end.

Exit codes: 0 success, 1 a verification check failed, 2 bad input,
3 internally inconsistent data, 4 precision cap reached.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from .errors import (
    FixtureError,
    InvalidCharExponents,
    MalformedGraph,
    NonPolynomialError,
    NotCofinite,
    NotDivisibleError,
    PrecisionError,
    SingCurveError,
    SynthesisError,
)
from .fixtures import corpus_files, load_fixture, shipped_corpus
from .graph import (
    acampo_zeta,
    alexander_one_variable,
    alexander_polynomial,
    euler_smooth_parts,
    graph_from_branch,
    linear_system_rows,
    solve_multiplicities,
)
from .poincare import (
    DIAGONAL_WINDOW,
    curve_window,
    fit_laurent_window,
    graph_window,
    p_prime,
    poincare_from_jets,
    verify_curve,
    x_series,
)
from .semigroup import (
    branch_data_from_char_exponents,
    poincare_at_infinity,
    poincare_closed_form,
    semigroup_at_infinity,
    semigroup_series,
)
from .series import IntPolynomial, MultiIndex, specialize_diagonal

EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_INCONSISTENT, EXIT_PRECISION = range(5)

DEFAULT_BOUND = 100
CAP_VAR = "SINGCURVE_PRECISION_CAP"


class InputError(Exception):
    """Missing payload or unusable flag value."""


def _status(ok):
    return "PASS" if ok else "FAIL"


def _require(bundle, attr):
    value = getattr(bundle, attr)
    if value is None:
        raise InputError(f"fixture {bundle.name!r} has no {attr} payload")
    return value


def parse_window(text, r):
    """``LO..HI`` with LO and HI either one integer or r comma-separated integers."""
    try:
        lo_text, hi_text = text.split("..")
        lo = [int(x) for x in lo_text.split(",")]
        hi = [int(x) for x in hi_text.split(",")]
    except ValueError as exc:
        raise InputError(f"bad window {text!r}, expected LO..HI") from exc
    lo = lo * r if len(lo) == 1 else lo
    hi = hi * r if len(hi) == 1 else hi
    if len(lo) != r or len(hi) != r:
        raise InputError(f"window {text!r} does not have {r} axes")
    return MultiIndex(lo), MultiIndex(hi)


# ---------------------------------------------------------------------------
# Reports


def branch_report(ce, bound):
    data = branch_data_from_char_exponents(ce)
    closed = poincare_closed_form(data)
    g = graph_from_branch(data)
    zeta = acampo_zeta(g)
    chi = euler_smooth_parts(g)
    table = solve_multiplicities(g)
    w = (bound,)
    enumerated = semigroup_series(data.gens, bound)
    ok = closed.expand(w) == zeta.expand(w) == enumerated
    return {
        "char_exponents": list(ce.beta),
        "generators": list(data.gens),
        "star_multiplicities": list(data.star),
        "conductor": data.conductor,
        "closed_form": closed.to_text(),
        "graph": {
            "vertices": len(g.vertices),
            "dead_ends": sorted(table.total(v) for v in g.ids if chi[v] == 1),
            "rupture_vertices": sorted(table.total(v) for v in g.ids if chi[v] < 0),
        },
        "zeta": zeta.to_text(),
        "bound": bound,
        "status": _status(ok),
    }


def graph_report(g, window):
    table = solve_multiplicities(g)
    residuals = linear_system_rows(g, table)
    chi = euler_smooth_parts(g)
    zeta = acampo_zeta(g)
    delta = alexander_polynomial(g)
    checks = {
        "zero_residual": all(not any(res) for res in residuals.values()),
        "euler_sum": sum(chi.values()) == 2 - g.r,
    }
    out = {
        "r": g.r,
        "multiplicities": {str(v): list(table.values[v]) for v in g.ids},
        "chi": {str(v): chi[v] for v in g.ids},
        "zeta": zeta.to_text(),
        "alexander": delta.to_text(),
    }
    w = (window,)
    if g.r == 1:
        out["alexander_one_variable"] = alexander_one_variable(g).to_text()
        # Delta(t) / (1 - t) must reproduce zeta
        one_var = IntPolynomial(1, {(i,): 1 for i in range(window + 1)}) * alexander_one_variable(g)
        checks["one_variable_matches_zeta"] = one_var.to_series(w) == zeta.expand(w)
    else:
        checks["diagonal_matches_zeta"] = specialize_diagonal(delta).to_series(w) == zeta.expand(w)
    out["window"] = window
    out["checks"] = {k: _status(v) for k, v in checks.items()}
    out["status"] = _status(all(checks.values()))
    return out


def _c_table_rows(lw):
    return [[list(v), c] for v, c in sorted(lw.values.items())]


def curve_report(curve, graph=None, window=None):
    r = curve.r
    if window is not None:
        lo, hi = window
    else:
        lo = MultiIndex((-2,) * r)
        hi = graph_window(graph) if graph is not None else curve_window(curve)
    lw = fit_laurent_window(curve, lo, hi)
    pp = p_prime(lw)
    pc = poincare_from_jets(lw)
    xs = x_series(curve, lw.hi, lw.jet_degree)
    out = {
        "r": r,
        "window": {"lo": list(lw.lo), "hi": list(lw.hi)},
        "jet_degree": lw.jet_degree,
        "c": _c_table_rows(lw),
        "p_prime": pp.to_text(),
        "poincare": pc.to_text(),
        "euler": xs.to_text(),
    }
    ok = xs == pc
    if graph is not None:
        rep = verify_curve(curve, graph, lw.lo, lw.hi)
        out["verification"] = rep.to_dict()
        ok = ok and rep.passed
    out["status"] = _status(ok)
    return out


def infinity_report(delta, bound):
    gamma = semigroup_at_infinity(delta)
    series, rational, product = poincare_at_infinity(gamma, bound)
    w = (bound,)
    ok = rational.expand(bound) == series
    out = {
        "delta": list(gamma.delta),
        "conductor": gamma.conductor,
        "series": series.to_text(),
        "rational_form": rational.to_text(),
        "product_form": product.to_text() if product is not None else None,
        "bound": bound,
    }
    if product is not None:
        ok = ok and product.expand(w) == series
    out["status"] = _status(ok)
    return out


def fixture_checks(bundle, bound=DEFAULT_BOUND):
    """Every applicable check for one fixture, as a list of (name, status, detail)."""
    checks = []
    if bundle.char_exponents is not None:
        rep = branch_report(bundle.char_exponents, bound)
        checks.append(("closed_form_equals_zeta", rep["status"], rep["closed_form"]))
    if bundle.graph is not None:
        rep = graph_report(bundle.graph, DIAGONAL_WINDOW)
        for name, status in rep["checks"].items():
            checks.append((name, status, rep["zeta"]))
    if bundle.curve is not None:
        rep = curve_report(bundle.curve, bundle.graph)
        if "verification" in rep:
            for c in rep["verification"]["checks"]:
                checks.append((c["name"], c["status"], c["error"] or c["lhs"]))
        else:
            checks.append(("euler_equals_poincare", rep["status"], rep["poincare"]))
    if bundle.delta_sequence is not None:
        rep = infinity_report(bundle.delta_sequence, min(bound, DIAGONAL_WINDOW))
        checks.append(("enumeration_equals_rational_form", rep["status"], rep["rational_form"]))
    return checks


def verify_corpus(directory):
    files = corpus_files(directory)
    if not files:
        raise InputError(f"no fixtures in {directory}")
    results = []
    for path in files:
        entry = {"fixture": path.stem, "checks": []}
        try:
            bundle = load_fixture(path)
            entry["fixture"] = bundle.name
            for name, status, detail in fixture_checks(bundle):
                entry["checks"].append({"name": name, "status": status, "detail": detail})
        except SingCurveError as exc:
            entry["checks"].append(
                {"name": "load_and_compute", "status": "FAIL", "detail": f"{type(exc).__name__}: {exc}"}
            )
        entry["status"] = _status(all(c["status"] == "PASS" for c in entry["checks"]))
        results.append(entry)
    results.sort(key=lambda e: e["fixture"])
    return {
        "fixtures": results,
        "passed": sum(e["status"] == "PASS" for e in results),
        "failed": sum(e["status"] == "FAIL" for e in results),
        "status": _status(all(e["status"] == "PASS" for e in results)),
    }


# ---------------------------------------------------------------------------
# Output


def _text_lines(obj, indent=0):
    pad = "  " * indent
    if isinstance(obj, dict):
        for k, v in obj.items():
            if isinstance(v, (dict, list)) and v and not _flat_list(v):
                yield f"{pad}{k}:"
                yield from _text_lines(v, indent + 1)
            else:
                yield f"{pad}{k}: {_scalar(v)}"
    elif isinstance(obj, list):
        for item in obj:
            if isinstance(item, dict):
                yield f"{pad}-"
                yield from _text_lines(item, indent + 1)
            else:
                yield f"{pad}{_scalar(item)}"
    else:
        yield f"{pad}{_scalar(obj)}"


def _flat_list(v):
    return isinstance(v, list) and all(not isinstance(x, (dict, list)) for x in v)


def _scalar(v):
    if v is None:
        return "-"
    if isinstance(v, list):
        return "[" + ", ".join(_scalar(x) if not isinstance(x, list) else json.dumps(x) for x in v) + "]"
    if isinstance(v, dict):
        return "{}"
    return str(v)


def _corpus_text(report):
    for entry in report["fixtures"]:
        for check in entry["checks"]:
            yield f"{check['status']}  {entry['fixture']}  {check['name']}"
            if check["status"] == "FAIL":
                yield f"      {check['detail']}"
    yield f"{report['passed']} fixtures passed, {report['failed']} failed: {report['status']}"


def render(report, fmt):
    if fmt == "json":
        return json.dumps(report, indent=2, sort_keys=True)
    if "fixtures" in report:
        return "\n".join(_corpus_text(report))
    return "\n".join(_text_lines(report))


# ---------------------------------------------------------------------------
# Commands


def cmd_branch(args):
    bundle = load_fixture(args.fixture)
    return branch_report(_require(bundle, "char_exponents"), args.bound)


def cmd_graph(args):
    bundle = load_fixture(args.fixture)
    return graph_report(_require(bundle, "graph"), args.window)


def cmd_curve(args):
    bundle = load_fixture(args.fixture)
    curve = _require(bundle, "curve")
    window = parse_window(args.window, curve.r) if args.window else None
    return curve_report(curve, bundle.graph, window)


def cmd_infinity(args):
    bundle = load_fixture(args.fixture)
    return infinity_report(_require(bundle, "delta_sequence"), args.bound)


def cmd_verify(args):
    return verify_corpus(args.corpus or shipped_corpus())


def build_parser():
    def common(fmt_default, cap_default):
        p = argparse.ArgumentParser(add_help=False)
        p.add_argument("--format", choices=("text", "json"), default=fmt_default)
        p.add_argument("--jet-cap", type=int, default=cap_default, help="upper bound on the jet degree")
        return p

    parser = argparse.ArgumentParser(
        prog="singcurve", description="Invariants of plane curve singularities", parents=[common("text", None)]
    )
    sub = parser.add_subparsers(dest="command", required=True)
    # SUPPRESS so a flag given after the subcommand does not reset one given before it
    sub_common = common(argparse.SUPPRESS, argparse.SUPPRESS)

    def add(name, func, help_text):
        p = sub.add_parser(name, help=help_text, parents=[sub_common])
        p.set_defaults(func=func)
        return p

    p = add("branch", cmd_branch, "semigroup, closed form and zeta of a branch")
    p.add_argument("fixture")
    p.add_argument("--bound", type=int, default=DEFAULT_BOUND)

    p = add("graph", cmd_graph, "multiplicities, zeta and Alexander polynomial of a graph")
    p.add_argument("fixture")
    p.add_argument("--window", type=int, default=DIAGONAL_WINDOW)

    p = add("curve", cmd_curve, "jet-side invariants of a curve")
    p.add_argument("fixture")
    p.add_argument("--window", default=None, help="LO..HI, per axis comma-separated")

    p = add("infinity", cmd_infinity, "semigroup at infinity from a delta sequence")
    p.add_argument("fixture")
    p.add_argument("--bound", type=int, default=DIAGONAL_WINDOW)

    p = add("verify", cmd_verify, "run every check on a corpus directory")
    p.add_argument("--corpus", default=None)
    return parser


def run(argv=None, out=sys.stdout, err=sys.stderr) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    saved_cap = os.environ.get(CAP_VAR)
    if args.jet_cap is not None:
        os.environ[CAP_VAR] = str(args.jet_cap)
    try:
        report = args.func(args)
    except (InputError, FixtureError, InvalidCharExponents) as exc:
        print(f"input error: {exc}", file=err)
        return EXIT_INPUT
    except MalformedGraph as exc:
        row = f" (row {exc.row})" if exc.row is not None else ""
        print(f"malformed graph{row}: {exc}", file=err)
        return EXIT_INCONSISTENT
    except (NotCofinite, SynthesisError, NonPolynomialError, NotDivisibleError) as exc:
        print(f"inconsistent data: {type(exc).__name__}: {exc}", file=err)
        return EXIT_INCONSISTENT
    except PrecisionError as exc:
        state = json.dumps(exc.state, sort_keys=True, default=str)
        print(f"precision cap reached: {exc}; state {state}", file=err)
        return EXIT_PRECISION
    except SingCurveError as exc:
        print(f"{type(exc).__name__}: {exc}", file=err)
        return EXIT_INCONSISTENT
    finally:
        if saved_cap is None:
            os.environ.pop(CAP_VAR, None)
        else:
            os.environ[CAP_VAR] = saved_cap
    print(render(report, args.format), file=out)
    return EXIT_OK if report.get("status") == "PASS" else EXIT_FAIL


def main(argv=None):
    sys.exit(run(argv))


if __name__ == "__main__":
    main()
