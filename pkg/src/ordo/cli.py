"""Command-line surface with JSON input and output.

Every subcommand prints a single JSON document on standard output with keys
in sorted order and canonical witness ordering, so identical invocations are
byte-identical.  Exit codes: 0 for a clean result, 1 when the run succeeded
but found violations, an unsatisfiable problem, a counterexample, or an
incoherent tower, and 2 for usage or input errors.

The environment variable ``ORDO_BUDGET`` caps search nodes and subset counts.
"""

from __future__ import annotations

import argparse
import json
import os
import random
import sys
from fractions import Fraction

from . import constructions as cons
from . import diffuse as diff
from . import extend as ext
from .cones import cone_axiom_report, embed_left_order, iota, act, field_from_order, standard_cone, left_order_oracle, reversed_cone
from .errors import OrdoError, ParseError
from .groups import Window, generate_ball, parse_group
from .orders import find_disagreement, oracle_table

DEFAULT_BUDGET = 1_000_000


def _budget() -> int:
    raw = os.environ.get("ORDO_BUDGET")
    if raw is None:
        return DEFAULT_BUDGET
    try:
        value = int(raw)
    except ValueError:
        raise ParseError(f"ORDO_BUDGET must be an integer, got {raw!r}")
    if value < 1:
        raise ParseError("ORDO_BUDGET must be positive")
    return value


def _parse_window(group, spec: str) -> Window:
    if spec.startswith("ball:"):
        try:
            radius = int(spec.split(":", 1)[1])
        except ValueError:
            raise ParseError(f"bad window spec {spec!r}")
        return generate_ball(group, radius)
    with open(spec, encoding="utf-8") as fh:
        payload = json.load(fh)
    if "ball" in payload:
        return generate_ball(group, int(payload["ball"]))
    return Window(group, (group.decode(e) for e in payload["elements"]))


def _default_alpha() -> cons.QuadraticIrrational:
    return cons.QuadraticIrrational(Fraction(0), Fraction(1), 2)


def _order_from_spec(group, spec: str, window=None):
    """Mini-language for order oracles: standard, reversed, alpha:LIT,
    rf:PHISPEC, lex (Klein-bottle scheme with the default parameters)."""
    if spec == "standard":
        return left_order_oracle(standard_cone(group))
    if spec == "reversed":
        return left_order_oracle(reversed_cone(standard_cone(group)))
    if spec.startswith("alpha:"):
        return cons.alpha_order(group, cons.parse_quadratic(spec.split(":", 1)[1]))
    if spec.startswith("rf:"):
        field = cons.rf_field(
            standard_cone(group),
            cons.default_cofinal_scheme(group),
            cons.parse_phi(spec.split(":", 1)[1]),
            validate_window=window,
        )
        from .cones import order_from_field

        return order_from_field(field)
    if spec == "lex":
        scheme = cons.klein_lex_scheme()
        scheme.group.check_same(group)
        return cons.lex_order(scheme)
    raise ParseError(f"unknown order spec {spec!r}")


def _order_spec_from_json(group, payload: dict):
    kind = payload.get("kind")
    if kind == "standard":
        return left_order_oracle(standard_cone(group))
    if kind == "reversed":
        return left_order_oracle(reversed_cone(standard_cone(group)))
    if kind == "alpha":
        return cons.alpha_order(group, cons.parse_quadratic(payload["alpha"]))
    if kind == "rf":
        from .cones import order_from_field

        return order_from_field(
            cons.rf_field(
                standard_cone(group),
                cons.default_cofinal_scheme(group),
                cons.parse_phi(payload.get("phi", "affine:1")),
            )
        )
    raise ParseError(f"unknown order kind {kind!r}")


def _build_field(group, construct: str, window, args):
    """Construct a cone field by name; returns (field, description dict)."""
    if construct == "embed":
        cone = standard_cone(group)
        return embed_left_order(cone), {"kind": "embed", "cone": cone.name}
    if construct == "iota":
        cone = standard_cone(group)
        return iota(cone), {"kind": "iota", "cone": cone.name}
    if construct == "alpha":
        alpha = cons.parse_quadratic(args.alpha) if args.alpha else _default_alpha()
        oracle = cons.alpha_order(group, alpha)
        return field_from_order(oracle), {"kind": "alpha", "alpha": str(alpha)}
    if construct == "rf":
        phi = cons.parse_phi(args.phi) if args.phi else cons.affine_phi(1)
        field = cons.rf_field(
            standard_cone(group),
            cons.default_cofinal_scheme(group),
            phi,
            validate_window=window,
        )
        return field, {"kind": "rf", "phi": phi.label}
    if construct == "lex":
        quotient_order = None
        kernel_order = None
        if args.config:
            with open(args.config, encoding="utf-8") as fh:
                payload = json.load(fh)
            lex_cfg = payload.get("lex", payload)
            quotient_group = parse_group(lex_cfg.get("group", "klein"))
            if quotient_group != group:
                raise ParseError("lex config group differs from --group")
            if "quotient" in lex_cfg:
                quotient_order = _order_spec_from_json(
                    cons.klein_lex_scheme().quotient_group, lex_cfg["quotient"]
                )
            if "kernel" in lex_cfg and lex_cfg["kernel"].get("kind") != "standard":
                raise ParseError("only the standard kernel order is configurable here")
        scheme = cons.klein_lex_scheme(quotient_order=quotient_order, kernel_order=kernel_order)
        scheme.group.check_same(group)
        return field_from_order(cons.lex_order(scheme)), {"kind": "lex", "scheme": "klein"}
    raise ParseError(f"unknown construction {construct!r}")


def _parse_rset(group, window, raw: str, seed: int):
    if raw == "canonical":
        return ext.canonical_rset(window)
    if raw == "random":
        return ext.random_rset(window, random.Random(seed), full_coverage=False)
    if raw.startswith("["):
        encoded = json.loads(raw)
    else:
        path = raw[1:] if raw.startswith("@") else raw
        with open(path, encoding="utf-8") as fh:
            encoded = json.load(fh)
    return ext.RSet(group, (group.decode(e) for e in encoded))


def _emit(payload: dict, code: int) -> int:
    sys.stdout.write(json.dumps(payload, sort_keys=True) + "\n")
    return code


def _cmd_check_axioms(args) -> int:
    group = parse_group(args.group)
    window = _parse_window(group, args.window)
    field, _ = _build_field(group, args.construct, window, args)
    report = cone_axiom_report(field, window, check_total=args.total)
    return _emit(report.to_json(), 1 if report.has_violations else 0)


def _cmd_construct(args) -> int:
    group = parse_group(args.group)
    window = _parse_window(group, args.window)
    field, description = _build_field(group, args.construct, window, args)
    report = cone_axiom_report(field, window, check_total=args.total)
    payload = {"construction": description, "provenance": field.provenance, "report": report.to_json()}
    return _emit(payload, 1 if report.has_violations else 0)


def _cmd_extreme_points(args) -> int:
    group = parse_group(args.group)
    window = _parse_window(group, args.window)
    report = diff.extreme_points(window.elements, group)
    return _emit(report.to_json(), 0)


def _cmd_diffuse_scan(args) -> int:
    group = parse_group(args.group)
    window = _parse_window(group, args.window)
    report = diff.diffuse_scan(group, window, args.max_subset_size, budget=_budget())
    return _emit(report.to_json(), 1 if report.counterexample is not None else 0)


def _load_problem(args):
    group = parse_group(args.group) if args.group else None
    if args.problem:
        with open(args.problem, encoding="utf-8") as fh:
            payload = json.load(fh)
        group = parse_group(payload["group"])
        wspec = payload["window"]
        if "ball" in wspec:
            window = generate_ball(group, int(wspec["ball"]))
        else:
            window = Window(group, (group.decode(e) for e in wspec["elements"]))
        rset = ext.RSet(group, (group.decode(e) for e in payload.get("R", [])))
        total = bool(payload.get("total", False))
        return group, window, rset, total
    if group is None or not args.window or args.R is None:
        raise ParseError("solve needs either --problem or --group/--window/--R")
    window = _parse_window(group, args.window)
    rset = _parse_rset(group, window, args.R, args.seed)
    return group, window, rset, args.total


def _cmd_solve(args) -> int:
    group, window, rset, total = _load_problem(args)
    if args.mode == "tower":
        radii = [int(r) for r in args.radius_list.split(",")] if args.radius_list else None
        if not radii:
            raise ParseError("solve tower needs --radius-list r1,r2,...")
        if rset is None:
            raise ParseError("solve tower needs an R set")
        report = ext.tower_solve(group, radii, rset, require_total=total)
        return _emit(report.to_json(), 0 if report.all_coherent else 1)
    problem = ext.ExtensionProblem(window, rset, require_total=total)
    if args.mode == "peel":
        table = ext.peel_solve(problem)
        return _emit(table.to_json(), 0)
    result = ext.backtrack_solve(problem, node_cap=_budget())
    if isinstance(result, ext.UnsatCertificate):
        return _emit(result.to_json(), 1)
    return _emit(result.to_json(), 0)


def _cmd_compare_orders(args) -> int:
    group = parse_group(args.group)
    window = _parse_window(group, args.window)
    o1 = _order_from_spec(group, args.o1, window)
    o2 = _order_from_spec(group, args.o2, window)
    witness = find_disagreement(o1, o2, window)
    payload = {
        "witness": None if witness is None else [group.encode(witness[0]), group.encode(witness[1])]
    }
    return _emit(payload, 0)


def _cmd_act(args) -> int:
    group = parse_group(args.group)
    window = _parse_window(group, args.window)
    field, description = _build_field(group, args.construct, window, args)
    g = group.decode(args.g)
    h = group.decode(args.h)
    moved = act(g, h, field)
    adjusted = window.conjugated(h)
    report = cone_axiom_report(moved, adjusted, check_total=args.total)
    payload = {
        "construction": description,
        "g": group.encode(g),
        "h": group.encode(h),
        "report": report.to_json(),
    }
    return _emit(payload, 1 if report.has_violations else 0)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ordo",
        description="Locally invariant orderings of concrete torsion-free groups, "
        "checked exhaustively on finite windows.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p, window=True):
        p.add_argument("--group", required=True, help="zn:N | q-sub:p1[,p2...] | free:K | klein")
        if window:
            p.add_argument("--window", required=True, help="ball:r or a JSON window file")

    def add_construct(p):
        p.add_argument("--construct", required=True, choices=["embed", "iota", "alpha", "rf", "lex"])
        p.add_argument("--alpha", help="quadratic literal a+b√d, e.g. 0+1√2")
        p.add_argument("--phi", help="phi spec, e.g. affine:1")
        p.add_argument("--config", help="JSON construction config file")
        p.add_argument("--total", action="store_true", help="also check the totality condition")

    p = sub.add_parser("check-axioms", help="check cone-field conditions on a window")
    add_common(p)
    add_construct(p)
    p.set_defaults(fn=_cmd_check_axioms)

    p = sub.add_parser("construct", help="build a field and report its axiom scan")
    p.add_argument("construct", choices=["alpha", "iota", "embed", "rf", "lex"])
    add_common(p)
    p.add_argument("--alpha")
    p.add_argument("--phi")
    p.add_argument("--config")
    p.add_argument("--total", action="store_true")
    p.set_defaults(fn=_cmd_construct)

    p = sub.add_parser("extreme-points", help="classify the extreme points of a window")
    add_common(p)
    p.set_defaults(fn=_cmd_extreme_points)

    p = sub.add_parser("diffuse-scan", help="search window subsets for one with no extreme point")
    add_common(p)
    p.add_argument("--max-subset-size", type=int, default=4)
    p.set_defaults(fn=_cmd_diffuse_scan)

    p = sub.add_parser("solve", help="build an ordering on a window")
    p.add_argument("mode", choices=["peel", "backtrack", "tower"])
    p.add_argument("--group")
    p.add_argument("--window")
    p.add_argument("--R", help='inline JSON (e.g. \'["1"]\'), a file path, "canonical", or "random"')
    p.add_argument("--problem", help="problem JSON file")
    p.add_argument("--total", action="store_true")
    p.add_argument("--radius-list", help="tower radii, e.g. 1,2,3")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(fn=_cmd_solve)

    p = sub.add_parser("compare-orders", help="first canonical disagreement of two orders")
    add_common(p)
    p.add_argument("--o1", required=True)
    p.add_argument("--o2", required=True)
    p.set_defaults(fn=_cmd_compare_orders)

    p = sub.add_parser("act", help="apply the two-sided action and re-check axioms")
    add_common(p)
    add_construct(p)
    p.add_argument("--g", required=True, help="first action parameter (element encoding)")
    p.add_argument("--h", required=True, help="second action parameter (element encoding)")
    p.set_defaults(fn=_cmd_act)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    try:
        return args.fn(args)
    except (OrdoError, OSError, json.JSONDecodeError, ValueError) as exc:
        print(f"ordo: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
