"""Command-line front end.

Exit codes: 0 success, 1 a property check failed, 2 malformed input,
3 input outside a valuation's domain.
"""

from __future__ import annotations

import argparse
import csv
import json
import os
import sys
from fractions import Fraction

from .harness import BlackBoxValuation, NotClassifiable, extract_classification, named_zeta, run_suite
from .harness.extract import default_grid
from .harness.suites import SUITES
from .io import (
    InputError,
    classification_from_json,
    classification_to_json,
    load_json,
    measure_to_json,
    polytope_from_json,
    tensor_to_json,
    zeta_from_json,
)
from .measures import cone_volume_measure, projection_mixed, surface_area_measure, volume
from .polytope import euler
from .scalar import format_scalar, parse_scalar
from .tensors import contract, m0p
from .valuations import (
    ClassificationData,
    DomainError,
    euler_hit,
    euler_local,
    pi_zeta,
    pi_zeta_tilde,
    z_origin,
    z_general,
)

EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_DOMAIN = 0, 1, 2, 3

VALUATIONS = (
    "pi_zeta",
    "pi_zeta_tilde",
    "z_origin",
    "z_general",
    "m0p",
    "projection",
    "volume",
    "euler",
    "euler_local",
    "euler_hit",
)


def _parse_vector(text: str) -> tuple:
    try:
        return tuple(parse_scalar(c.strip()) for c in text.split(","))
    except (ValueError, ZeroDivisionError) as exc:
        raise InputError(f"bad vector {text!r}") from exc


def _parse_range(text: str) -> list[Fraction]:
    """``"lo:hi:step"`` with exact endpoints, inclusive."""
    try:
        lo, hi, step = (Fraction(p) for p in text.split(":"))
    except (ValueError, ZeroDivisionError) as exc:
        raise InputError(f"range must look like lo:hi:step, got {text!r}") from exc
    if step <= 0 or hi < lo:
        raise InputError("range needs step > 0 and lo <= hi")
    out, t = [], lo
    while t <= hi:
        out.append(t)
        t += step
    return out


def _show(v, as_float: bool) -> str:
    if isinstance(v, float):
        return repr(v)
    text = format_scalar(v)
    if not isinstance(text, str):
        text = json.dumps(text)
    return f"{text}\t{float(v)!r}" if as_float else text


def _zeta(args):
    if getattr(args, "zeta_file", None):
        return zeta_from_json(load_json(args.zeta_file))
    try:
        return named_zeta(args.zeta)
    except ValueError as exc:
        raise InputError(str(exc)) from exc


def _data(args) -> ClassificationData:
    if args.data:
        return classification_from_json(load_json(args.data))
    z = _zeta(args)
    return ClassificationData(zeta1=z)


def _evaluator(args):
    name = args.valuation
    if name in ("pi_zeta", "pi_zeta_tilde"):
        z = _zeta(args)
        fn = pi_zeta if name == "pi_zeta" else pi_zeta_tilde
        return lambda P, x: fn(P, z, x, strict=not args.lenient)
    if name in ("z_origin", "z_general"):
        data = _data(args)
        fn = z_origin if name == "z_origin" else z_general
        return lambda P, x: fn(P, data, x, strict=not args.lenient)
    if name == "projection":
        return lambda P, x: projection_mixed(P, x)
    simple = {"volume": volume, "euler": euler, "euler_local": euler_local, "euler_hit": euler_hit}
    f = simple[name]
    return lambda P, x: f(P)


def cmd_eval(args) -> int:
    P = polytope_from_json(load_json(args.polytope))
    if args.valuation == "m0p":
        T = m0p(P, p=args.p)
        if args.x:
            print(_show(contract(T, _parse_vector(args.x)), args.float))
        elif args.p == 1:
            vec = [T[(i,)] for i in range(P.ambient_dim)]
            print("(" + ", ".join(format_scalar(c) for c in vec) + ")")
        else:
            print(json.dumps(tensor_to_json(T)))
        return EXIT_OK
    Z = _evaluator(args)
    if args.along:
        direction = _parse_vector(args.along)
        writer = csv.writer(sys.stdout)
        writer.writerow(["t", "value", "value_float"])
        for t in _parse_range(args.ts):
            x = tuple(t * c for c in direction)
            if not args.lenient and all(c == 0 for c in x):
                continue
            v = Z(P, x)
            writer.writerow([format_scalar(t), _show(v, False), float(v)])
        return EXIT_OK
    x = _parse_vector(args.x) if args.x else tuple(Fraction(int(i == P.ambient_dim - 1)) for i in range(P.ambient_dim))
    if len(x) != P.ambient_dim:
        raise InputError(f"x has {len(x)} entries, polytope lives in R^{P.ambient_dim}")
    if args.valuation == "projection" and all(c == 0 for c in x):
        raise DomainError("projection function needs x != o")
    print(_show(Z(P, x), args.float))
    return EXIT_OK


def cmd_check(args) -> int:
    seed = int(os.environ.get("VALLAB_SEED", args.seed))
    zeta = None
    if args.zeta_file:
        zeta = zeta_from_json(load_json(args.zeta_file))
    elif args.zeta:
        zeta = _zeta(args)
    report = run_suite(args.suite, seed=seed, trials=args.trials, n=args.n, scalar_mode=args.scalar_mode, zeta=zeta)
    text = report.to_json(indent=2)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)
    status = "PASS" if report.passed else "FAIL"
    print(f"{status} {args.suite}: {report.checked} checks, {len(report.failures)} failures", file=sys.stderr)
    return EXIT_OK if report.passed else EXIT_FAIL


def _facet_rows(P, as_float: bool) -> list[dict]:
    rows = []
    for f in P.facets:
        row = {
            "normal": " ".join(format_scalar(c) for c in f.normal),
            "support": format_scalar(f.support),
            "normalized_area": format_scalar(f.normalized_area),
            "cone_volume": format_scalar(f.cone_volume),
            "in_N_o": f.support != 0,
        }
        if as_float:
            row["area_float"] = f.area()
            row["cone_volume_float"] = float(f.cone_volume)
        rows.append(row)
    return rows


def _emit(rows: list[dict], fmt: str, header: list[str]) -> None:
    if fmt == "csv":
        writer = csv.DictWriter(sys.stdout, fieldnames=header)
        writer.writeheader()
        for r in rows:
            writer.writerow({k: json.dumps(v) if isinstance(v, dict) else v for k, v in r.items()})
    else:
        print(json.dumps(rows, indent=2))


def cmd_facets(args) -> int:
    P = polytope_from_json(load_json(args.polytope))
    rows = _facet_rows(P, args.float)
    header = ["normal", "support", "normalized_area", "cone_volume", "in_N_o"]
    if args.float:
        header += ["area_float", "cone_volume_float"]
    _emit(rows, args.format, header)
    return EXIT_OK


def cmd_measure(args) -> int:
    P = polytope_from_json(load_json(args.polytope))
    M = cone_volume_measure(P) if args.kind == "cone_volume" else surface_area_measure(P)
    out = measure_to_json(M)
    if args.format == "csv":
        rows = [{"normal": " ".join(a["normal"]), "weight": a["weight"]} for a in out["atoms"]]
        _emit(rows, "csv", ["normal", "weight"])
    else:
        print(json.dumps(out, indent=2))
    return EXIT_OK


def cmd_tensor(args) -> int:
    P = polytope_from_json(load_json(args.polytope))
    T = m0p(P, p=args.p)
    out = tensor_to_json(T)
    if args.x:
        out["contraction"] = format_scalar(contract(T, _parse_vector(args.x)))
    print(json.dumps(out, indent=2))
    return EXIT_OK


def cmd_extract(args) -> int:
    args.lenient = False
    if args.valuation not in ("pi_zeta", "pi_zeta_tilde", "z_origin", "z_general"):
        raise InputError("extraction needs one of pi_zeta, pi_zeta_tilde, z_origin, z_general")
    domain = "o" if args.valuation == "z_origin" else args.mode
    if args.valuation == "z_origin" and args.mode == "all":
        raise InputError("z_origin is only defined on polytopes containing o; use --mode o")
    Z = BlackBoxValuation(_evaluator(args), domain, args.valuation)
    try:
        data = extract_classification(Z, n=args.n, mode=args.mode)
    except NotClassifiable as exc:
        print(json.dumps({"classifiable": False, "reason": str(exc), "witness": exc.witness}, indent=2))
        return EXIT_FAIL
    out = classification_to_json(data)
    out["classifiable"] = True
    out["grid"] = [format_scalar(t) for t in default_grid()]
    print(json.dumps(out, indent=2))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="vallab", description="Exact SL(n) contravariant polytope valuations.")
    sub = parser.add_subparsers(dest="command", required=True)

    def zeta_opts(p):
        p.add_argument("--zeta", default="linear_t", help="named zeta (default: linear_t)")
        p.add_argument("--zeta-file", help="ZetaSpec JSON file (overrides --zeta)")
        p.add_argument("--data", help="classification data JSON for z_origin/z_general")

    p = sub.add_parser("eval", help="evaluate a valuation")
    p.add_argument("--polytope", required=True)
    p.add_argument("--valuation", choices=VALUATIONS, default="pi_zeta")
    p.add_argument("--x", help='comma-separated vector, e.g. "0,0,1" (default e_n)')
    p.add_argument("--p", type=int, default=1, help="tensor order for m0p")
    p.add_argument("--along", help="direction for a CSV sweep x = t * direction")
    p.add_argument("--ts", default="-3:3:1/4", help="sweep range lo:hi:step")
    p.add_argument("--lenient", action="store_true", help="allow x = o")
    p.add_argument("--float", action="store_true", help="add decimal values")
    zeta_opts(p)
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("check", help="run a property suite")
    p.add_argument("--suite", choices=sorted(SUITES), required=True)
    p.add_argument("--trials", type=int)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--n", type=int, default=3)
    p.add_argument("--scalar-mode", choices=("rational", "quad"), default="rational")
    p.add_argument("--zeta", help="named zeta replacing the default family")
    p.add_argument("--zeta-file")
    p.add_argument("--out", help="write the report here instead of stdout")
    p.set_defaults(func=cmd_check)

    for name, fn, helptext in (
        ("facets", cmd_facets, "dump facet data"),
        ("measure", cmd_measure, "dump a normal measure"),
    ):
        p = sub.add_parser(name, help=helptext)
        p.add_argument("polytope")
        p.add_argument("--format", choices=("json", "csv"), default="json")
        if name == "measure":
            p.add_argument("--kind", choices=("cone_volume", "normalized_area"), default="cone_volume")
        else:
            p.add_argument("--float", action="store_true")
        p.set_defaults(func=fn)

    p = sub.add_parser("tensor", help="M^{0,p} tensor of a polytope")
    p.add_argument("--polytope", required=True)
    p.add_argument("--p", type=int, default=2)
    p.add_argument("--x")
    p.set_defaults(func=cmd_tensor)

    p = sub.add_parser("extract", help="recover classification data from a valuation")
    p.add_argument("--valuation", default="z_origin")
    p.add_argument("--mode", choices=("o", "all"), default="o")
    p.add_argument("--n", type=int, default=3)
    zeta_opts(p)
    p.set_defaults(func=cmd_extract)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    try:
        return args.func(args)
    except DomainError as exc:
        print(f"domain error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except (InputError, ValueError, TypeError) as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
