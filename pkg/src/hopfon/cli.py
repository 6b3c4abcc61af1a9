"""Command-line front end.

Subcommands: classify | structures | verify | normal-form | sections |
cases.  Input surfaces and group elements are JSON files; all output
is JSON on stdout.  Exit codes: 0 success, 1 verification failure,
2 invalid input.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from .classify import (
    ClassifyError,
    brute_force_admissible,
    enumerate_structures,
    reproduce_case_table,
)
from .devmaps import DevMapError
from .group import GroupElt, HomogPoly, Mat2
from .hopf import HopfSurface, SurfaceError, bihol_group, classify_surface, function_field
from .normalform import NormalFormError, normal_form, resonant_degrees
from .scalars import (
    BasisMismatchError,
    EigenBasis,
    GaussRat,
    Scalar,
    ScalarDomainError,
)
from .sections import SectionError, line_bundle_sections, proj_bundle_sections
from .verify import VerifyConfig, check_group_axioms, verify_structure


class InputError(Exception):
    pass


def _load_json(path: str):
    try:
        with open(path) as fh:
            return json.load(fh)
    except FileNotFoundError as exc:
        raise InputError("cannot open %s: %s" % (path, exc)) from exc
    except json.JSONDecodeError as exc:
        raise InputError(
            "%s: invalid JSON at line %d column %d: %s"
            % (path, exc.lineno, exc.colno, exc.msg)
        ) from exc


def _surface_from_spec(spec: dict) -> HopfSurface:
    if "surface" in spec:
        spec = spec["surface"]
    try:
        return HopfSurface.from_record(spec)
    except (SurfaceError, KeyError, TypeError, ValueError) as exc:
        raise InputError("surface record: %s" % exc) from exc


def _quad(value, where: str) -> GaussRat:
    try:
        return GaussRat.from_quad(value)
    except (TypeError, ValueError, ZeroDivisionError) as exc:
        raise InputError("%s: expected [re_num, re_den, im_num, im_den]" % where) from exc


def _verify_config(spec: dict, args) -> VerifyConfig:
    over = dict(spec.get("verify", {}))
    if getattr(args, "samples", None):
        over["samples"] = args.samples
    if getattr(args, "tol", None):
        over["tol_equiv"] = args.tol
    if getattr(args, "seed", None) is not None:
        over["seed"] = args.seed
    allowed = {"samples", "tol_equiv", "tol_jac", "seed", "annulus"}
    bad = set(over) - allowed
    if bad:
        raise InputError("verify config: unknown keys %s" % sorted(bad))
    if "annulus" in over:
        over["annulus"] = tuple(over["annulus"])
    return VerifyConfig(**over)


def _emit(payload, args) -> None:
    json.dump(payload, sys.stdout, indent=None if getattr(args, "compact", False) else 2)
    sys.stdout.write("\n")


def cmd_classify(args) -> int:
    spec = _load_json(args.spec)
    s = _surface_from_spec(spec)
    payload = {
        "classification": classify_surface(s).to_record(),
        "function_field": function_field(s).to_record(),
        "bihol_group": bihol_group(s).to_record(),
    }
    _emit(payload, args)
    return 0


def _params_from(spec, args):
    if args.params:
        groups = []
        for chunk in args.params.split(";"):
            groups.append([Fraction(tok) for tok in chunk.split(",") if tok.strip()])
        return groups
    raw = spec.get("params")
    if raw is None:
        return None
    return [[_quad(q, "params") for q in group] for group in raw]


def cmd_structures(args) -> int:
    spec = _load_json(args.spec)
    s = _surface_from_spec(spec)
    n = args.n or spec.get("n")
    if n is None:
        raise InputError("the bundle degree is required (--n or spec key 'n')")
    params = _params_from(spec, args)
    try:
        records = enumerate_structures(s, int(n), hyper_params=params)
    except ClassifyError as exc:
        raise InputError(str(exc)) from exc
    payload = {"n": int(n), "count": len(records), "structures": []}
    if s.kind == "exceptional" and int(n) < s.m:
        payload["warning"] = "n < m: an exceptional surface of degree m admits structures only for n >= m"
    failed = False
    for rec in records:
        entry = rec.to_record()
        if args.verify:
            reports = verify_structure(rec, s, _verify_config(spec, args))
            entry["verification"] = [r.to_record() for r in reports]
            failed = failed or not all(r.passed for r in reports)
        payload["structures"].append(entry)
    _emit(payload, args)
    return 1 if failed else 0


def cmd_verify(args) -> int:
    spec = _load_json(args.spec)
    s = _surface_from_spec(spec)
    n = args.n or spec.get("n")
    if n is None:
        raise InputError("the bundle degree is required (--n or spec key 'n')")
    cfg = _verify_config(spec, args)
    params = _params_from(spec, args)
    try:
        records = enumerate_structures(s, int(n), hyper_params=params)
    except ClassifyError as exc:
        raise InputError(str(exc)) from exc
    axioms = check_group_axioms(int(n), trials=args.trials, seed=cfg.seed)
    reports = [axioms.to_record()]
    ok = axioms.passed
    for rec in records:
        for rep in verify_structure(rec, s, cfg):
            entry = rep.to_record()
            entry["structure"] = rec.provenance
            reports.append(entry)
            ok = ok and rep.passed
    if args.deg_bound:
        from .classify import canonical_key

        bf = brute_force_admissible(s, int(n), deg_bound=args.deg_bound)
        keys_bf = sorted({repr(canonical_key(d, int(n))) for d in bf})
        keys_enum = sorted({repr(canonical_key(r.dev, int(n))) for r in records})
        match = keys_bf == keys_enum
        reports.append(
            {
                "check": "bounded_completeness",
                "passed": match,
                "detail": {"enumerated": len(keys_enum), "brute_force": len(keys_bf)},
            }
        )
        ok = ok and match
    _emit({"passed": ok, "reports": reports}, args)
    return 0 if ok else 1


def cmd_cases(args) -> int:
    rows = reproduce_case_table(args.n, args.m1, args.m2)
    payload = {
        "n": args.n,
        "m1": args.m1,
        "m2": args.m2,
        "rows": [r.to_record() for r in rows],
        "feasible": sum(1 for r in rows if r.feasible),
        "impossible": sum(1 for r in rows if r.impossible),
    }
    _emit(payload, args)
    return 0


def _element_from_record(rec: dict):
    if "basis" in rec:
        braw = rec["basis"]
        if "values" in braw:
            v1 = _quad(braw["values"][0], "basis.values[0]")
            v2 = _quad(braw["values"][1], "basis.values[1]")
            basis = EigenBasis.from_gauss_values(v1, v2)
        else:
            try:
                witness = [complex(w[0], w[1]) for w in braw["witness"]]
                basis = EigenBasis(("l1", "l2"), braw.get("relations", ()), witness)
            except (KeyError, TypeError, ValueError) as exc:
                raise InputError("basis record: %s" % exc) from exc
    else:
        basis = EigenBasis(("l1", "l2"), (), (0.5, 0.3))
    try:
        n = int(rec["n"])
        g_rows = rec["g"]
        p_raw = rec.get("p")
    except KeyError as exc:
        raise InputError("element record needs keys n and g") from exc

    def scal(v, where):
        if isinstance(v, list) and len(v) == 4 and all(isinstance(t, int) for t in v):
            return basis.gauss(_quad(v, where))
        if isinstance(v, dict):
            c = _quad(v.get("coeff", [1, 1, 0, 1]), where + ".coeff")
            e = v.get("exps", [0, 1, 0, 1])
            return Scalar.monomial(
                basis, c, (Fraction(e[0], e[1]), Fraction(e[2], e[3]))
            )
        raise InputError("%s: expected a quadruple or {coeff, exps}" % where)

    g = Mat2(
        basis,
        tuple(
            tuple(scal(v, "g[%d][%d]" % (i, j)) for j, v in enumerate(row))
            for i, row in enumerate(g_rows)
        ),
    )
    if p_raw is None:
        p = HomogPoly.zero(basis, n)
    else:
        if len(p_raw) != n + 1:
            raise InputError("p must list n+1 coefficients")
        p = HomogPoly(basis, n, [scal(v, "p[%d]" % i) for i, v in enumerate(p_raw)])
    return GroupElt(g, p)


def cmd_normal_form(args) -> int:
    rec = _load_json(args.element)
    x = _element_from_record(rec)
    try:
        nf = normal_form(x)
        report = resonant_degrees(nf.element.g, x.degree, nf.element.p)
    except (NormalFormError, ScalarDomainError) as exc:
        raise InputError(str(exc)) from exc
    g = nf.element.g
    payload = {
        "unique": nf.unique,
        "swap_applied": nf.swap_applied,
        "resonance": report.to_record(),
        "g": [[_scalar_json(e) for e in row] for row in g.entries],
        "p": [_scalar_json(c) for c in nf.element.p.coeffs],
    }
    _emit(payload, args)
    return 0


def _scalar_json(s: Scalar):
    return [
        [c.as_quad(), [e[0].numerator, e[0].denominator, e[1].numerator, e[1].denominator]]
        for c, e in s.terms
    ]


def cmd_sections(args) -> int:
    spec = _load_json(args.spec)
    s = _surface_from_spec(spec)
    try:
        if args.twist:
            a = s.basis.gauss(_quad(json.loads(args.twist), "--twist"))
            fam = line_bundle_sections(s, a)
        elif args.power is not None:
            if s.kind == "exceptional":
                a = s.lam ** args.power
            else:
                raise InputError("--power applies to exceptional surfaces; use --powers")
            fam = line_bundle_sections(s, a)
        elif args.powers:
            k1, k2 = (int(t) for t in args.powers.split(","))
            fam = line_bundle_sections(s, s.l1**k1 * s.l2**k2)
        elif args.bundle:
            rows = json.loads(args.bundle)
            g = tuple(
                tuple(s.basis.gauss(_quad(v, "--bundle")) for v in row) for row in rows
            )
            fam = proj_bundle_sections(s, g)
        elif args.jordan:
            a = s.basis.gauss(_quad(json.loads(args.jordan), "--jordan"))
            g = ((a, s.basis.one()), (s.basis.zero(), a))
            fam = proj_bundle_sections(s, g)
        else:
            raise InputError(
                "choose a bundle: --twist/--power/--powers (line) or --bundle/--jordan (P^1)"
            )
    except (SectionError, ScalarDomainError, ValueError) as exc:
        if isinstance(exc, InputError):
            raise
        raise InputError(str(exc)) from exc
    _emit(fam.to_record(), args)
    return 0


def build_parser():
    ap = argparse.ArgumentParser(
        prog="hopfon",
        description="Classify O(n)-structures on primary Hopf surfaces and verify them.",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    def add_common(p, spec=True):
        if spec:
            p.add_argument("--spec", required=True, help="surface spec JSON file")
        p.add_argument("--compact", action="store_true", help="single-line JSON output")
        p.add_argument(
            "--json", action="store_true", default=True,
            help="JSON output (the only format; accepted for interface stability)",
        )

    p = sub.add_parser("classify", help="classify a surface spec")
    add_common(p)
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("structures", help="enumerate the O(n)-structures")
    add_common(p)
    p.add_argument("--n", type=int, help="bundle degree")
    p.add_argument("--params", help="hyperresonant parameter lists, e.g. '2;2,3'")
    p.add_argument("--verify", action="store_true", help="verify each record")
    p.add_argument("--samples", type=int)
    p.add_argument("--tol", type=float)
    p.add_argument("--seed", type=int)
    p.set_defaults(func=cmd_structures)

    p = sub.add_parser("verify", help="run the verification suite")
    add_common(p)
    p.add_argument("--n", type=int)
    p.add_argument("--params", help="hyperresonant parameter lists")
    p.add_argument("--trials", type=int, default=300, help="group-axiom trials")
    p.add_argument("--deg-bound", dest="deg_bound", type=int, help="run the brute-force completeness oracle")
    p.add_argument("--samples", type=int)
    p.add_argument("--tol", type=float)
    p.add_argument("--seed", type=int)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("cases", help="re-derive the developing-map case table")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--m1", type=int, required=True)
    p.add_argument("--m2", type=int, required=True)
    p.add_argument("--compact", action="store_true")
    p.set_defaults(func=cmd_cases)

    p = sub.add_parser("normal-form", help="conjugacy normal form of a group element")
    p.add_argument("--element", required=True, help="element JSON file")
    p.add_argument("--compact", action="store_true")
    p.set_defaults(func=cmd_normal_form)

    p = sub.add_parser("sections", help="meromorphic section families")
    add_common(p)
    p.add_argument("--twist", help="line-bundle twist as a JSON quadruple")
    p.add_argument("--power", type=int, help="twist lam^k on an exceptional surface")
    p.add_argument("--powers", help="twist l1^k1 l2^k2 as 'k1,k2'")
    p.add_argument("--bundle", help="diagonal projective class as JSON [[quad,quad],[quad,quad]]")
    p.add_argument("--jordan", help="Jordan-block projective class; pass the quad of a")
    p.set_defaults(func=cmd_sections)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        return args.func(args)
    except InputError as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 2
    except (SurfaceError, ClassifyError, SectionError, DevMapError, BasisMismatchError) as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
