"""Command-line front end: ``xjacobi <command> [flags]``.

Exit codes: 0 when every check is certified, 1 when a mathematical check
fails, 2 for configuration or parameter-regime errors.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction

import numpy as np

from .errors import (
    BetaZero,
    DegenerateFamily,
    DomainError,
    InconclusiveNearThreshold,
    RegimeViolation,
    XJacobiError,
)
from .families import (
    DEGREE_CAP,
    ClassicalFamily,
    NonClassicalFamily,
    Regime,
    X1Family,
    nonclassical_eigenvalue,
    polynomial_record,
    validate_parameters,
)
from .operators import (
    LHat,
    MMinus2,
    THat,
    TMinus2,
    classify_endpoints,
    operator_matrix,
    verify_frobenius_numeric,
)
from .roots import x1_root_report
from .sobolev import t_matrix
from .suites import Tolerances, exceptional_suite, extreme_suite

EXIT_OK, EXIT_FAIL, EXIT_CONFIG = 0, 1, 2
CONFIG_ERRORS = (RegimeViolation, DegenerateFamily, DomainError, BetaZero)


class ConfigError(Exception):
    pass


# --------------------------------------------------------------------------
# parsing helpers
# --------------------------------------------------------------------------

def parse_number(text: str, exact: bool):
    """Integers and p/q literals are exact; decimals are exact only with --exact."""
    text = text.strip()
    try:
        if "/" in text or exact:
            return Fraction(text)
        value = Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise ConfigError(f"not a number: {text!r}") from None
    return value if value.denominator == 1 and "." not in text and "e" not in text.lower() else float(text)


def parse_range(text: str) -> list[int]:
    try:
        if ".." in text:
            lo, hi = text.split("..", 1)
            out = list(range(int(lo), int(hi) + 1))
        else:
            out = [int(text)]
    except ValueError:
        raise ConfigError(f"bad degree range {text!r}; use N or A..B") from None
    if not out:
        raise ConfigError(f"empty degree range {text!r}")
    if max(out) > DEGREE_CAP:
        raise ConfigError(f"degree {max(out)} exceeds the cap {DEGREE_CAP}")
    return out


def parse_grid(text: str, exact: bool) -> list[tuple]:
    try:
        alphas, betas = text.split(":")
    except ValueError:
        raise ConfigError("grid must look like A1,A2,...:B1,B2,...") from None
    al = [parse_number(a, exact) for a in alphas.split(",") if a]
    be = [parse_number(b, exact) for b in betas.split(",") if b]
    return [(a, b) for a in al for b in be]


def _num_json(v):
    if isinstance(v, Fraction):
        return str(v)
    if isinstance(v, (np.floating, np.integer)):
        return float(v)
    return v


def _default(o):
    if isinstance(o, Fraction):
        return str(o)
    if isinstance(o, np.ndarray):
        return o.tolist()
    if isinstance(o, (np.floating, np.integer, np.bool_)):
        return o.item()
    raise TypeError(f"not JSON serialisable: {type(o).__name__}")


# --------------------------------------------------------------------------
# commands; each returns (payload, rows_for_csv, exit_code)
# --------------------------------------------------------------------------

def _base(args, command: str) -> dict:
    return {
        "command": command,
        "seed": args.seed,
        "tolerances": Tolerances(args.tol_orth, args.tol_resid, args.tol_boundary).to_json(),
    }


def _require(value, name):
    if value is None:
        raise ConfigError(f"--{name} is required")
    return value


def cmd_family(args):
    exact = args.exact
    ns = parse_range(args.n or "0..3")
    if args.kind == "x1":
        p = validate_parameters(parse_number(_require(args.alpha, "alpha"), exact),
                                parse_number(_require(args.beta, "beta"), exact), args.regime)
        fam = X1Family(p)
    elif args.kind == "nonclassical":
        be = parse_number(_require(args.beta, "beta"), exact)
        if not be > -1:
            raise RegimeViolation("beta > -1 violated")
        fam = NonClassicalFamily(be)
    else:
        fam = ClassicalFamily(parse_number(_require(args.alpha, "alpha"), exact),
                              parse_number(_require(args.beta, "beta"), exact))
    members = []
    for n in ns:
        rec = polynomial_record(fam, n)
        rec["eigenvalue"] = _num_json(fam.eigenvalue(n))
        if isinstance(fam, X1Family) or (isinstance(fam, NonClassicalFamily) and n >= 2):
            rec["norm_squared"] = _num_json(fam.norm_squared(n))
        members.append(rec)
    payload = _base(args, "family")
    payload["members"] = members
    rows = [[m["family"], m["n"], *m["coeffs"]] for m in members]
    return payload, rows, EXIT_OK


def _extreme_beta(args):
    be = parse_number(_require(args.beta, "beta"), args.exact)
    validate_parameters(0, be, Regime.EXTREME_ALPHA_ZERO, full_basis=True)
    if args.sobolev and be == 0:
        raise BetaZero("beta != 0 violated: the Sobolev inner product contains 2/beta")
    return be


def cmd_verify(args):
    tol = Tolerances(args.tol_orth, args.tol_resid, args.tol_boundary)
    n_max = args.n_max
    if n_max > DEGREE_CAP:
        raise ConfigError(f"--n-max exceeds the cap {DEGREE_CAP}")
    payload = _base(args, "verify")
    if args.regime == "extreme":
        if args.sobolev and args.beta is not None and parse_number(args.beta, args.exact) == 0:
            raise BetaZero("beta != 0 violated: the Sobolev inner product contains 2/beta")
        be = _extreme_beta(args)
        if n_max < 3:
            raise ConfigError("--n-max must be at least 3 in the extreme regime")
        checks = extreme_suite(be, n_max, tol, args.seed, args.sobolev)
        payload["parameters"] = {"alpha": 0, "beta": _num_json(be), "regime": "extreme"}
    else:
        p = validate_parameters(parse_number(_require(args.alpha, "alpha"), args.exact),
                                parse_number(_require(args.beta, "beta"), args.exact))
        if n_max < 2:
            raise ConfigError("--n-max must be at least 2")
        checks = exceptional_suite(p, n_max, tol)
        payload["parameters"] = p.as_dict()
    payload["checks"] = [c.to_json() for c in checks]
    payload["certified"] = all(c.passed for c in checks)
    rows = [[c.name, c.claim, c.value, c.tolerance, c.passed] for c in checks]
    return payload, rows, EXIT_OK if payload["certified"] else EXIT_FAIL


def _classify_point(point):
    alpha, beta, regime = point
    if regime == "extreme":
        expr = MMinus2(beta)
    else:
        expr = LHat(validate_parameters(alpha, beta))
    up, down = classify_endpoints(expr)
    numeric = {}
    for e in (1, -1):
        try:
            numeric[str(e)] = "agrees" if verify_frobenius_numeric(expr, e).agrees else "disagrees"
        except InconclusiveNearThreshold:
            numeric[str(e)] = "inconclusive"
    return {
        "alpha": _num_json(alpha),
        "beta": _num_json(beta),
        "endpoint_analysis": [up.to_json(), down.to_json()],
        "deficiency": list(up.deficiency),
        "numeric_check": numeric,
    }


def cmd_classify(args):
    exact = args.exact
    if args.grid:
        points = parse_grid(args.grid, exact)
    else:
        be = parse_number(_require(args.beta, "beta"), exact)
        al = 0 if args.regime == "extreme" else parse_number(_require(args.alpha, "alpha"), exact)
        points = [(al, be)]
    for al, be in points:
        # validate every point before any work so a bad grid fails fast
        if args.regime == "extreme":
            validate_parameters(0, be, Regime.EXTREME_ALPHA_ZERO)
        else:
            validate_parameters(al, be)
    with ThreadPoolExecutor() as pool:
        rows = list(pool.map(_classify_point, [(a, b, args.regime) for a, b in points]))
    payload = _base(args, "classify")
    payload["points"] = rows
    certified = all(v != "disagrees" for r in rows for v in r["numeric_check"].values())
    payload["certified"] = certified
    csv_rows = [[r["alpha"], r["beta"], r["endpoint_analysis"][0]["classification"],
                 r["endpoint_analysis"][1]["classification"], *r["deficiency"],
                 r["numeric_check"]["1"], r["numeric_check"]["-1"]] for r in rows]
    return payload, csv_rows, EXIT_OK if certified else EXIT_FAIL


def cmd_spectrum(args):
    payload = _base(args, "spectrum")
    n_max = args.n_max
    if args.regime == "extreme":
        be = _extreme_beta(args)
        if args.sobolev:
            rep = t_matrix(be, n_max)
            computed = rep.eigenvalues
            closed = rep.expected()
            payload["sobolev"] = rep.to_json()
        else:
            mat = operator_matrix(TMinus2(be), NonClassicalFamily(be), range(2, n_max + 1))
            computed = sorted(float(v) for v in np.linalg.eigvalsh((mat + mat.T) / 2))
            closed = [float(nonclassical_eigenvalue(n, be)) for n in range(2, n_max + 1)]
    else:
        p = validate_parameters(parse_number(_require(args.alpha, "alpha"), args.exact),
                                parse_number(_require(args.beta, "beta"), args.exact))
        fam = X1Family(p)
        mat = operator_matrix(THat(p), fam, range(1, n_max + 1))
        computed = sorted(float(v) for v in np.linalg.eigvalsh((mat + mat.T) / 2))
        closed = [float(fam.eigenvalue(n)) for n in range(1, n_max + 1)]
    err = max(abs(a - b) / max(1.0, abs(b)) for a, b in zip(computed, closed))
    payload.update({"computed": computed, "closed_form": closed, "max_error": err,
                    "certified": err <= args.tol_resid})
    rows = [[i, a, b] for i, (a, b) in enumerate(zip(computed, closed))]
    return payload, rows, EXIT_OK if payload["certified"] else EXIT_FAIL


def cmd_roots(args):
    p = validate_parameters(parse_number(_require(args.alpha, "alpha"), args.exact),
                            parse_number(_require(args.beta, "beta"), args.exact))
    ns = parse_range(args.n or "1..6")
    if min(ns) < 1:
        raise DomainError("the X1 family has no member of degree < 1")
    with ThreadPoolExecutor() as pool:
        reports = list(pool.map(lambda n: x1_root_report(n, p), ns))
    entries = [r.to_json() for r in reports]
    ok = all(r["interior_count"] == r["n"] - 1 and r["outside_count"] == 1 and r["simple_interior"]
             for r in entries)
    payload = _base(args, "roots")
    payload["parameters"] = p.as_dict()
    payload["roots"] = entries
    payload["exceptional_root_conflicts"] = [r["n"] for r in entries if r["negative_root_claim_conflict"]]
    if args.asymptotics:
        dist = [r["distance_to_b"] for r in entries]
        decreasing = all(a is not None and b is not None and b < a for a, b in zip(dist, dist[1:]))
        payload["asymptotics"] = {
            "distances": dist,
            "strictly_decreasing": decreasing,
            "reduction_factor": (dist[0] / dist[-1]) if dist and dist[-1] else None,
        }
        ok = ok and decreasing
    payload["certified"] = ok
    rows = [[r["n"], r["interior_count"], r["outside_count"], r["exceptional_root"], r["distance_to_b"]]
            for r in entries]
    return payload, rows, EXIT_OK if ok else EXIT_FAIL


COMMANDS = {
    "family": cmd_family,
    "verify": cmd_verify,
    "classify": cmd_classify,
    "spectrum": cmd_spectrum,
    "roots": cmd_roots,
}


# --------------------------------------------------------------------------
# output
# --------------------------------------------------------------------------

def render(payload: dict, rows: list, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(payload, sort_keys=True, indent=2, default=_default) + "\n"
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        for row in rows:
            writer.writerow([f"{v:.17g}" if isinstance(v, float) else _num_json(v) for v in row])
        return buf.getvalue()
    lines = [f"{payload['command']}  (seed {payload['seed']})"]
    for row in rows:
        lines.append("  " + "  ".join(str(_num_json(v)) for v in row))
    if "certified" in payload:
        lines.append("certified" if payload["certified"] else "NOT certified")
    return "\n".join(lines) + "\n"


def _positive(text: str) -> float:
    v = float(text)
    if not v > 0:
        raise argparse.ArgumentTypeError("tolerances must be positive")
    return v


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="xjacobi",
                                     description="Exceptional and non-classical Jacobi polynomial verification")
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        sp = sub.add_parser(name)
        sp.add_argument("--kind", choices=["x1", "nonclassical", "classical"], default="x1")
        sp.add_argument("--alpha")
        sp.add_argument("--beta")
        sp.add_argument("--n", help="degree N or range A..B")
        sp.add_argument("--n-max", type=int, default=8)
        sp.add_argument("--regime", choices=["exceptional", "extreme"], default="exceptional")
        sp.add_argument("--sobolev", action="store_true")
        sp.add_argument("--grid", help="A1,A2,...:B1,B2,... parameter sweep")
        sp.add_argument("--asymptotics", action="store_true")
        sp.add_argument("--format", choices=["json", "csv", "pretty"], default="json")
        sp.add_argument("--out")
        sp.add_argument("--seed", type=int, default=0)
        sp.add_argument("--exact", action="store_true", help="read decimal parameters as exact rationals")
        sp.add_argument("--tol-orth", type=_positive, default=1e-10)
        sp.add_argument("--tol-resid", type=_positive, default=1e-9)
        sp.add_argument("--tol-boundary", type=_positive, default=1e-8)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        payload, rows, code = COMMANDS[args.command](args)
    except (ConfigError, *CONFIG_ERRORS) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except XJacobiError as exc:
        print(f"failed: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_FAIL
    text = render(payload, rows, args.format)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
