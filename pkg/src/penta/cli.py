"""Command-line interface: ``penta <subcommand> ...``.

Exit status: 0 on success, 1 when a verification FAILED, 2 on usage
errors, 3 when a resource cap (chain length, precision) is exhausted.
"""

from __future__ import annotations

import argparse
import inspect
import json
import random
import sys
from typing import List, Optional, Sequence

from . import bounds, geometry, series, verify
from .arith import DEFAULT_PRECISION, Verdict
from .errors import DomainError, PreconditionError, ResourceError, VerificationFailure, IndeterminacyError
from .multidegree import MultiDegree, interval_chain

EXIT_OK, EXIT_FAILED, EXIT_USAGE, EXIT_RESOURCE = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _dump(obj) -> str:
    return json.dumps(obj, indent=2)


def _table(header: Sequence[str], rows: Sequence[Sequence]) -> str:
    cells = [list(map(str, header))] + [list(map(str, r)) for r in rows]
    widths = [max(len(row[k]) for row in cells) for k in range(len(header))]
    lines = ["  ".join(c.rjust(w) for c, w in zip(row, widths)) for row in cells]
    return "\n".join(lines)


def _csv(header: Sequence[str], rows: Sequence[Sequence]) -> str:
    return "\n".join(",".join(map(str, r)) for r in [header, *rows])


def _render(args, header, rows, json_obj) -> str:
    if args.json:
        return _dump(json_obj)
    if args.csv:
        return _csv(header, rows)
    return _table(header, rows)


# ---------------------------------------------------------------------------
# subcommands


def cmd_nd(args) -> int:
    if args.d < 1:
        raise UsageError("degree must be positive")
    report = bounds.n_of_degree(args.d) if args.d >= 3 else bounds.n_of_multidegree(MultiDegree.of(args.d))
    if args.json:
        print(_dump(report.to_json()))
    elif args.csv:
        print(_csv(["d", "r", "n"], [[args.d, report.r_value, report.n_value_integer]]))
    else:
        print(report.n_value_integer)
    return EXIT_OK


def cmd_r(args) -> int:
    if args.d < 1:
        raise UsageError("degree must be positive")
    r = bounds.r_of_degree(args.d) if args.d >= 3 else bounds.r_bound(MultiDegree.of(args.d))
    print(_dump({"d": str(args.d), "r": str(r)}) if args.json else r)
    return EXIT_OK


def cmd_bound(args) -> int:
    d = _multidegree(args.multidegree)
    report = bounds.n_of_multidegree(d, max_chain=args.max_chain)
    data = report.to_json()
    if args.json:
        print(_dump(data))
    else:
        keys = ["multidegree", "r", "n", "n_exact", "n0_at_r", "chain_length"]
        print(_render(args, keys, [[data[k] if data[k] is not None else "-" for k in keys]], data)
              if args.csv else "\n".join(f"{k}: {data[k] if data[k] is not None else '-'}" for k in keys))
    return EXIT_OK


def cmd_mtable(args) -> int:
    if args.imin < 0 or args.imin > args.imax:
        raise UsageError("need 0 <= imin <= imax")
    table = bounds.m_table(args.imax, args.jmax)
    if args.csv:
        sys.stdout.write(table.to_csv(args.imin, args.imax, args.jmax))
        return EXIT_OK
    header = ["i"] + [f"j={j}" for j in range(args.jmax + 1)]
    rows = [[i, *table.rows[i]] for i in range(args.imin, args.imax + 1)]
    json_obj = {"provenance": table.provenance,
                "rows": {str(i): [str(v) for v in table.rows[i]] for i in range(args.imin, args.imax + 1)}}
    print(_render(args, header, rows, json_obj))
    return EXIT_OK


def cmd_series(args) -> int:
    order = args.order if args.order is not None else series.default_order(args.imax, 3)
    levels = series.generate(args.imax, order)
    header = ["i", "m_i", "coefficients of x^i .. x^order"]
    rows = [[lv.i, lv.m, " ".join(map(str, lv.row))] for lv in levels]
    json_obj = {"order": order, "levels": [{"i": lv.i, "coefficients": [str(v) for v in lv.row]} for lv in levels]}
    print(_render(args, header, rows, json_obj))
    return EXIT_OK


def cmd_decompose(args) -> int:
    if args.i < 3:
        raise UsageError("the decomposition exists for i >= 3")
    dec = series.basis_decomposition(args.i)
    if args.json:
        print(_dump({"i": str(args.i), "size": str(dec.size), "a": [str(a) for a in dec.a]}))
    else:
        print(_render(args, ["k", "a_k"], [[k, a] for k, a in enumerate(dec.a, start=1)], None))
    return EXIT_OK


def _parse_scope(text: Optional[str]) -> dict:
    scope = {}
    if not text:
        return scope
    for item in text.split(","):
        key, _, value = item.partition("=")
        if not value:
            raise UsageError(f"scope entries look like key=value, got {item!r}")
        if "/" in value or ";" in value:
            scope[key.strip()] = [int(v) for v in value.replace(";", "/").split("/")]
        else:
            scope[key.strip()] = int(value)
    return scope


def cmd_verify(args) -> int:
    if args.check and args.all:
        raise UsageError("use either --all or --check")
    ids = [args.check] if args.check else list(verify.CHECKS)
    scope = _parse_scope(args.scope)
    if scope and not args.check:
        raise UsageError("--scope applies to a single --check")
    reports = []
    for check_id in ids:
        if check_id not in verify.CHECKS:
            raise UsageError(f"unknown check {check_id!r}; choose from {', '.join(verify.CHECKS)}")
        params = inspect.signature(verify.CHECKS[check_id]).parameters
        kwargs = dict(scope)
        unknown = set(kwargs) - set(params)
        if unknown:
            raise UsageError(f"check {check_id} has no scope parameter(s) {sorted(unknown)}")
        if "precision" in params and args.precision is not None:
            kwargs["precision"] = args.precision
        if "max_chain" in params and args.max_chain is not None:
            kwargs["max_chain"] = args.max_chain
        reports.append(verify.run_check(check_id, **kwargs))
    if args.json:
        print(_dump({"reports": [r.to_json() for r in reports],
                     "failed": sum(r.status is Verdict.FAILED for r in reports)}))
    elif args.csv:
        print(_csv(["check_id", "status", "margin", "scope"],
                   [[r.check_id, r.status.value, r.margin or "", f'"{r.scope}"'] for r in reports]))
    else:
        for r in reports:
            print(r.summary_line())
            for w in r.witnesses if r.status is not Verdict.VERIFIED else []:
                print(f"    {w}")
    if any(r.status is Verdict.FAILED for r in reports):
        return EXIT_FAILED
    if any(r.status is Verdict.INCONCLUSIVE for r in reports):
        return EXIT_RESOURCE
    return EXIT_OK


def cmd_resmap(args) -> int:
    F = geometry.field_from_spec(args.field)
    try:
        with open(args.poly) as fh:
            raw = json.load(fh)
    except OSError as exc:
        raise UsageError(f"cannot read {args.poly}: {exc}") from None
    if isinstance(raw, dict) and "field" in raw and args.field is None:
        F = geometry.field_from_spec(raw["field"])
    f = geometry.HomogeneousPolynomial.from_json(raw, F)
    z = geometry.ProjectivePoint.parse(F, args.point)
    exp = geometry.expand_at_point(f, z)
    out = {
        "field": F.name,
        "degree": str(exp.degree),
        "matrix": [[F.format(a) for a in row] for row in exp.matrix],
        "components": {str(i): exp.component(i).to_json() for i in range(1, exp.degree + 1)},
        "penta_degrees": [str(e.degree) for e in geometry.penta_equations(exp)],
        "residual_map": [p.to_json() for p in geometry.residual_map_polynomials(exp)],
    }
    samples = []
    if args.samples:
        if not isinstance(F, geometry.PrimeField):
            raise UsageError("--samples needs --field p")
        rng = random.Random(args.seed)
        for y in geometry.sample_penta_points(exp, args.samples, rng):
            try:
                res = exp.to_original(geometry.residual_point(exp, y))
            except IndeterminacyError:
                samples.append({"direction": y.to_json(), "residual": None, "note": "line lies in X"})
                continue
            mult = geometry.line_multiplicity(f, z, res) if res != z else None
            samples.append({"direction": y.to_json(), "residual": res.to_json(),
                            "on_hypersurface": f(res.coordinates) == 0,
                            "multiplicity_at_z": None if mult is None else str(mult)})
        out["samples"] = samples
    if args.json:
        print(_dump(out))
    else:
        print(f"field: {F.name}   degree: {exp.degree}   point: {z}")
        for i in range(1, exp.degree + 1):
            print(f"f_{i} = {exp.component(i)}")
        print("residual map: (" + " : ".join(str(p) for p in geometry.residual_map_polynomials(exp)) + ")")
        for s in samples:
            res = "undefined" if s["residual"] is None else "(" + ":".join(s["residual"]) + ")"
            extra = "" if s["residual"] is None else f"  on X: {s['on_hypersurface']}  mult at z: {s['multiplicity_at_z']}"
            print(f"y = ({':'.join(s['direction'])}) -> {res}{extra}")
    if any(s.get("on_hypersurface") is False for s in samples):
        return EXIT_FAILED
    return EXIT_OK


def cmd_chain(args) -> int:
    d = _multidegree(args.multidegree)
    cap = args.max_chain
    chain = interval_chain(d, cap) if cap is not None else interval_chain(d)
    rows = [[k, str(e), bounds.r0(e)] for k, e in enumerate(chain)]
    json_obj = {"multidegree": str(d), "length": str(len(chain)),
                "chain": [{"multidegree": str(e), "r0": str(bounds.r0(e))} for e in chain]}
    print(_render(args, ["position", "multidegree", "r0"], rows, json_obj))
    return EXIT_OK


def _multidegree(text: str) -> MultiDegree:
    try:
        return MultiDegree.parse(text)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    fmt = common.add_mutually_exclusive_group()
    fmt.add_argument("--json", action="store_true", help="machine-readable JSON output")
    fmt.add_argument("--csv", action="store_true", help="CSV output where tabular")
    common.add_argument("--precision", type=int, default=None,
                        help=f"starting interval precision in bits (default {DEFAULT_PRECISION})")
    common.add_argument("--max-chain", type=int, default=None, help="cap on chain elements (env PENTA_MAX_CHAIN)")

    parser = argparse.ArgumentParser(prog="penta", description="Dimension bounds for penultimate-tangent constructions.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("nd", parents=[common], help="n(d) for a single degree")
    p.add_argument("d", type=int)
    p.set_defaults(func=cmd_nd)

    p = sub.add_parser("r", parents=[common], help="r(d) for a single degree")
    p.add_argument("d", type=int)
    p.set_defaults(func=cmd_r)

    p = sub.add_parser("bound", parents=[common], help="r and n for a multi-degree such as [2,3]")
    p.add_argument("multidegree")
    p.set_defaults(func=cmd_bound)

    p = sub.add_parser("mtable", parents=[common], help="the integers m_{i,j}")
    p.add_argument("--imax", type=int, required=True)
    p.add_argument("--jmax", type=int, required=True)
    p.add_argument("--imin", type=int, default=0)
    p.set_defaults(func=cmd_mtable)

    p = sub.add_parser("series", parents=[common], help="truncated series F_0 .. F_imax")
    p.add_argument("--imax", type=int, required=True)
    p.add_argument("--order", type=int, default=None)
    p.set_defaults(func=cmd_series)

    p = sub.add_parser("decompose", parents=[common], help="coefficients a_{i,k} of F_i in the (1-x)^-k basis")
    p.add_argument("--i", type=int, required=True)
    p.set_defaults(func=cmd_decompose)

    p = sub.add_parser("verify", parents=[common], help="run the verification checks")
    p.add_argument("--all", action="store_true", help="run every check (the default)")
    p.add_argument("--check", choices=list(verify.CHECKS), default=None)
    p.add_argument("--scope", default=None, help="comma-separated key=value overrides, e.g. i_max=11,j_max=5")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("resmap", parents=[common], help="expansion and residual point map at a point")
    p.add_argument("--poly", required=True, help="JSON file with the polynomial terms")
    p.add_argument("--point", required=True, help="base point, e.g. 0,0,1")
    p.add_argument("--field", default=None, help="prime p for GF(p); rationals when omitted")
    p.add_argument("--samples", type=int, default=0)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_resmap)

    p = sub.add_parser("chain", parents=[common], help="the chain below a multi-degree")
    p.add_argument("multidegree")
    p.set_defaults(func=cmd_chain)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        parser.error(str(exc))
    except ResourceError as exc:
        print(f"penta: resource limit: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except VerificationFailure as exc:
        print(f"penta: verification failed: {exc}", file=sys.stderr)
        return EXIT_FAILED
    except (DomainError, PreconditionError, IndeterminacyError, ValueError) as exc:
        print(f"penta: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
