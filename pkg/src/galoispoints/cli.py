"""Batch front door: JSON in, deterministic JSON verification reports out.

Subcommands (all inputs and outputs are JSON; there is no interactive mode):

    check  <curve.json> --point "x:y:z" [--strategy ...]   -> galois_report
    pair   <curve.json> --inner "x:y:z" --outer "x:y:z"    -> pair_report
    embed  <groups.json> [--point t]                       -> embedding_result
    family <spec.json>                                     -> family_verdict
    branch --d {3,4} --field p^k                           -> branch_certificate

Exit codes: 0 when the operation completed and every expected check passed,
2 when a verification-type check failed (family verdict failure, embedding
verification failure, degenerate branch), 1 on malformed input.  Two runs
with identical inputs and configuration produce byte-identical reports.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Optional

from . import __version__
from .config import RunConfig
from .curve import PlaneCurve, curve_from_affine, line_intersection_divisor
from .embedder import construct_embedding
from .errors import (
    CenterSingular,
    ConditionBFails,
    DegenerateOnly,
    GaloisPointError,
    InputError,
    VerificationFailed,
)
from .families import FamilySpec, branch_certificate, build_family, verify_family
from .galois import is_galois_point
from .gf import FieldCtx, parse_field_spec
from .polyring import parse_poly
from .projective import (
    PointDivisor,
    Projectivity,
    ProjPoint,
    generate_group,
    line_through,
    product_structure,
)
from .schema import validate_report


def _emit(payload: dict, kind: str, cfg: RunConfig) -> str:
    report = dict(payload)
    report["kind"] = kind
    report["tool"] = {"name": "galoispoints", "version": __version__}
    report["config"] = {
        "trials": cfg.trials,
        "seed": cfg.seed,
        "ext_cap": cfg.ext_cap,
        "closure_cap": cfg.closure_cap,
        "brute_q_cap": cfg.brute_q_cap,
    }
    validate_report(kind, payload)
    return json.dumps(report, sort_keys=True, indent=2) + "\n"


def _write(text: str, cfg: RunConfig) -> None:
    if cfg.output and cfg.output != "-":
        with open(cfg.output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _load_json(path: str) -> dict:
    try:
        with open(path) as fh:
            return json.load(fh)
    except FileNotFoundError:
        raise InputError(f"no such file: {path}")
    except json.JSONDecodeError as exc:
        raise InputError(
            f"{path}: invalid JSON at line {exc.lineno}, column {exc.colno}: "
            f"{exc.msg}")


def _field_from_file(data: dict, path: str) -> FieldCtx:
    if "field" not in data:
        raise InputError(f"{path}: missing 'field'")
    ctx = parse_field_spec(str(data["field"]))
    if "modulus" in data:
        modulus = tuple(int(c) for c in data["modulus"])
        if modulus != ctx.modulus:
            ctx = FieldCtx(ctx.p, ctx.k, modulus)
    return ctx


def load_curve(path: str) -> PlaneCurve:
    """Read a curve file: {"field", "modulus"?, "affine_poly",
    "assume_irreducible"?}."""
    data = _load_json(path)
    if not isinstance(data, dict):
        raise InputError(f"{path}: curve file must be a JSON object")
    ctx = _field_from_file(data, path)
    if "affine_poly" not in data:
        raise InputError(f"{path}: missing 'affine_poly'")
    poly = parse_poly(str(data["affine_poly"]), ctx, 2)
    assume = bool(data.get("assume_irreducible", True))
    try:
        return curve_from_affine(poly, assume_irreducible=assume)
    except GaloisPointError as exc:
        raise InputError(f"{path}: bad curve: {exc}")


def parse_point(text: str, ctx: FieldCtx) -> ProjPoint:
    parts = text.strip().split(":")
    if len(parts) not in (2, 3):
        raise InputError(f"point {text!r} must have 2 or 3 coordinates")
    try:
        coords = [ctx.element(int(p)) for p in parts]
    except ValueError:
        raise InputError(f"point {text!r}: coordinates must be integers "
                         f"(base-{ctx.p} encodings)")
    if not any(coords):
        raise InputError(f"point {text!r} is the zero vector")
    return ProjPoint(ctx, coords)


def _galois_payload(curve: PlaneCurve, point: ProjPoint, strategy: str,
                    cfg: RunConfig) -> dict:
    report = is_galois_point(curve, point, strategy=strategy, cfg=cfg)
    return report.to_jsonable()


def cmd_check(args, cfg: RunConfig) -> int:
    curve = load_curve(args.curve)
    point = parse_point(args.point, curve.ctx)
    try:
        payload = _galois_payload(curve, point, args.strategy, cfg)
    except CenterSingular as exc:
        raise InputError(str(exc))
    _write(_emit(payload, "galois_report", cfg), cfg)
    return 0


def _pair_side(curve: PlaneCurve, pt: ProjPoint, cfg: RunConfig):
    """One side of a pair report; a singular center yields an 'invalid'
    entry instead of aborting the whole pair."""
    try:
        report = is_galois_point(curve, pt, cfg=cfg)
        return report.to_jsonable(), report
    except CenterSingular as exc:
        stub = {
            "point": {"coords": list(pt.encoding()), "field": pt.ctx.spec},
            "point_class": "invalid",
            "projection_degree": 0,
            "verdict": "inconclusive",
            "method": None,
            "trials": 0,
            "notes": [str(exc)],
            "group": None,
            "descriptor": None,
            "witness": None,
        }
        return stub, None


def cmd_pair(args, cfg: RunConfig) -> int:
    curve = load_curve(args.curve)
    inner_pt = parse_point(args.inner, curve.ctx)
    outer_pt = parse_point(args.outer, curve.ctx)
    inner_payload, inner = _pair_side(curve, inner_pt, cfg)
    outer_payload, outer = _pair_side(curve, outer_pt, cfg)
    joint = None
    if (inner is not None and outer is not None
            and inner.group is not None and outer.group is not None
            and inner.group.n == outer.group.n):
        joint = product_structure(inner.group, outer.group,
                                  cap=cfg.closure_cap)
    pq = line_through(inner_pt, outer_pt)
    div = line_intersection_divisor(curve, pq, ext_cap=cfg.ext_cap)
    d = curve.degree
    support_size = len(div.support)
    is_dp = div == PointDivisor(inner_pt.ctx, 2, {inner_pt: d})
    meets = any(curve.contains(pt) and not curve.is_smooth_at(pt)
                for pt in div.support)
    payload = {
        "inner": inner_payload,
        "outer": outer_payload,
        "joint": joint.to_jsonable() if joint else None,
        "lemma_line": {
            "support_size": support_size,
            "is_1_or_d": support_size in (1, d),
            "is_dP": bool(is_dp),
            "support_meets_singular": bool(meets),
        },
    }
    _write(_emit(payload, "pair_report", cfg), cfg)
    return 0


def _load_group(data, ctx: FieldCtx, name: str, cap: int):
    mats = data.get(name)
    if not isinstance(mats, list) or not mats:
        raise InputError(f"groups file: '{name}' must be a nonempty list of "
                         "2x2 row-major matrices")
    gens = []
    for m in mats:
        if not (isinstance(m, list) and len(m) == 4):
            raise InputError(f"groups file: each {name} matrix needs 4 entries")
        try:
            gens.append(Projectivity(ctx, [[ctx.element(int(m[0])), ctx.element(int(m[1]))],
                                           [ctx.element(int(m[2])), ctx.element(int(m[3]))]]))
        except ValueError as exc:
            raise InputError(f"groups file: bad matrix {m}: {exc}")
    return generate_group(gens, cap=cap)


def cmd_embed(args, cfg: RunConfig) -> int:
    data = _load_json(args.groups)
    if not isinstance(data, dict):
        raise InputError(f"{args.groups}: groups file must be a JSON object")
    ctx = _field_from_file(data, args.groups)
    G1 = _load_group(data, ctx, "g1", cfg.closure_cap)
    G2 = _load_group(data, ctx, "g2", cfg.closure_cap)
    point_text = args.point if args.point is not None else data.get("point")
    if point_text is None:
        raise InputError("no point given (groups file 'point' or --point)")
    from .projective import point_p1
    if str(point_text).strip() in ("inf", "oo", "infinity"):
        P = point_p1(ctx, infinity=True)
    else:
        try:
            P = point_p1(ctx, ctx.element(int(point_text)))
        except ValueError:
            raise InputError(f"bad point {point_text!r}")
    try:
        result = construct_embedding(G1, G2, P, cfg)
    except (ConditionBFails, VerificationFailed) as exc:
        _write(_emit({"error": type(exc).__name__, "message": str(exc)},
                     "error", cfg), cfg)
        return 2
    _write(_emit(result.to_jsonable(), "embedding_result", cfg), cfg)
    return 0


def cmd_family(args, cfg: RunConfig) -> int:
    data = _load_json(args.spec)
    spec = FamilySpec.from_dict(data)
    curve, expected = build_family(spec, ext_cap=cfg.ext_cap)
    verdict = verify_family(curve, expected, cfg)
    _write(_emit(verdict.to_jsonable(), "family_verdict", cfg), cfg)
    return 0 if verdict.success else 2


def cmd_branch(args, cfg: RunConfig) -> int:
    ctx = parse_field_spec(args.field)
    try:
        cert = branch_certificate(args.d, ctx, ext_cap=cfg.ext_cap)
    except DegenerateOnly as exc:
        _write(_emit({"error": "DegenerateOnly", "message": str(exc)},
                     "error", cfg), cfg)
        return 2
    _write(_emit(cert.to_jsonable(), "branch_certificate", cfg), cfg)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="galoispoints",
        description="Construct, detect and certify Galois points of plane "
                    "curves over finite fields.")
    parser.add_argument("--version", action="version",
                        version=f"galoispoints {__version__}")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--trials", type=int, default=64)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--ext-cap", type=int, default=12)
    common.add_argument("--closure-cap", type=int, default=4096)
    common.add_argument("--brute-q-cap", type=int, default=64)
    common.add_argument("--output", default=None,
                        help="write the report here instead of stdout")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", parents=[common],
                       help="classify one projection center")
    p.add_argument("curve", help="curve JSON file")
    p.add_argument("--point", required=True, help='projective point "x:y:z"')
    p.add_argument("--strategy", default="auto",
                   choices=["auto", "collineation", "deck", "monte_carlo"])
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("pair", parents=[common],
                       help="analyze an inner/outer pair and their joint group")
    p.add_argument("curve")
    p.add_argument("--inner", required=True)
    p.add_argument("--outer", required=True)
    p.set_defaults(func=cmd_pair)

    p = sub.add_parser("embed", parents=[common],
                       help="build a plane model from two PGL(2) groups")
    p.add_argument("groups", help="groups JSON file (g1, g2 matrices)")
    p.add_argument("--point", default=None,
                   help="base point t (field encoding or 'inf')")
    p.set_defaults(func=cmd_embed)

    p = sub.add_parser("family", parents=[common],
                       help="build and verify a classified family curve")
    p.add_argument("spec", help="family spec JSON file")
    p.set_defaults(func=cmd_family)

    p = sub.add_parser("branch", parents=[common],
                       help="solve and certify the d=3/d=4 branch systems")
    p.add_argument("--d", type=int, required=True, choices=[3, 4])
    p.add_argument("--field", required=True, help='field spec "p^k"')
    p.set_defaults(func=cmd_branch)
    return parser


def dispatch(argv: Optional[list] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    cfg = RunConfig(trials=args.trials, seed=args.seed, ext_cap=args.ext_cap,
                    closure_cap=args.closure_cap, brute_q_cap=args.brute_q_cap,
                    output=args.output)
    try:
        return args.func(args, cfg)
    except InputError as exc:
        sys.stderr.write(json.dumps(
            {"kind": "error", "error": "InputError", "message": str(exc)},
            sort_keys=True, indent=2) + "\n")
        return 1
    except GaloisPointError as exc:
        sys.stderr.write(json.dumps(
            {"kind": "error", "error": type(exc).__name__, "message": str(exc)},
            sort_keys=True, indent=2) + "\n")
        return 2


def main() -> None:
    sys.exit(dispatch())


if __name__ == "__main__":
    main()
