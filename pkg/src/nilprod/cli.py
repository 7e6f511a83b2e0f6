"""Command-line front end.

Subcommands: describe, mul, center, lcs, quotient, capable, witness,
presentation11, extraspecial, verify.  Exit codes: 0 success, 1 NOT_CAPABLE
under --strict, 2 input error, 3 budget exhaustion.

JSON reports are deterministic for a fixed seed: keys are sorted and no
wall-clock data is included (timings appear only in the pretty output).
"""

from __future__ import annotations

import argparse
import json
import sys
import time

from . import capability, engine, oracle
from .errors import BudgetExceeded, NilprodError, ParseError, SpecError
from .specs import GroupSpec, load_group_spec
from .words import format_normal_form, parse_word

EXIT_OK = 0
EXIT_NOT_CAPABLE = 1
EXIT_INPUT = 2
EXIT_BUDGET = 3


def _emit(doc: dict, as_json: bool, elapsed: float | None = None) -> None:
    if as_json:
        print(json.dumps(doc, sort_keys=True, default=str))
        return
    for key, value in doc.items():
        if isinstance(value, list) and value and isinstance(value[0], dict):
            print(f"{key}:")
            for item in value:
                print("  " + json.dumps(item, sort_keys=True, default=str))
        else:
            print(f"{key}: {value}")
    if elapsed is not None:
        print(f"elapsed: {elapsed:.3f}s")


def _load_spec(args) -> GroupSpec:
    if not args.spec:
        raise SpecError("this subcommand needs --spec FILE")
    return load_group_spec(args.spec)


def _build(args):
    return engine.build_group(_load_spec(args), args.budget)


def _word(view, a: int) -> str:
    return format_normal_form(view.nf(a))


def _subgroup_doc(view, sub) -> dict:
    return {
        "order": sub.order,
        "generators": sorted({_word(view, g) for g in sub.gens} or {"e"}),
    }


def cmd_describe(args) -> int:
    spec = _load_spec(args)
    if spec.presentation11 is not None:
        view, assign = capability.build_presentation11(spec.p, spec.presentation11, args.budget)
        doc = {
            "command": "describe",
            "presentation11": spec.presentation11.__dict__,
            "order": view.order,
            "generators": {k: _word(view, v) for k, v in assign.items()},
        }
        _emit(doc, args.json)
        return EXIT_OK
    view = engine.build_group(spec, args.budget)
    basis = view.basis
    doc = {
        "command": "describe",
        "group": view.describe(),
        "order": view.order,
        "basis": [
            {"entry": basis.entry_name(i), "weight": basis.entries[i].weight, "modulus": basis.moduli[i]}
            for i in range(len(basis.entries))
        ],
    }
    if spec.relators:
        doc["note"] = "basis and moduli describe the covering nilpotent product"
        doc["cover_order"] = basis.group_order
    _emit(doc, args.json)
    return EXIT_OK


def cmd_mul(args) -> int:
    view = _build(args)
    a = engine.evaluate_in_view(view, parse_word(args.left), {})
    b = engine.evaluate_in_view(view, parse_word(args.right), {})
    doc = {
        "command": "mul",
        "left": _word(view, a),
        "right": _word(view, b),
        "product": _word(view, view.mul(a, b)),
    }
    _emit(doc, args.json)
    return EXIT_OK


def cmd_center(args) -> int:
    t0 = time.perf_counter()
    view = _build(args)
    z = engine.center(view)
    doc = {"command": "center", "group": view.describe(), "center": _subgroup_doc(view, z)}
    _emit(doc, args.json, time.perf_counter() - t0)
    return EXIT_OK


def cmd_lcs(args) -> int:
    t0 = time.perf_counter()
    view = _build(args)
    series = engine.lower_central_series(view)
    doc = {
        "command": "lcs",
        "group": view.describe(),
        "orders": [t.order for t in series],
        "terms": [_subgroup_doc(view, t) for t in series[1:]],
    }
    _emit(doc, args.json, time.perf_counter() - t0)
    return EXIT_OK


def cmd_quotient(args) -> int:
    view = _build(args)
    values = [engine.evaluate_in_view(view, parse_word(w), {}) for w in args.by]
    values = [v for v in values if v != view.identity]
    if values:
        n = engine.normal_closure(view, values)
        q, _ = engine.quotient(view, n)
    else:
        n = engine.Subgroup(view, [view.identity], [])
        q = view
    doc = {
        "command": "quotient",
        "group": view.describe(),
        "by": list(args.by),
        "normal_closure_order": n.order,
        "quotient_order": q.order,
    }
    _emit(doc, args.json)
    return EXIT_OK


def cmd_capable(args) -> int:
    spec = _load_spec(args)
    if spec.presentation11 is not None:
        pres = spec.presentation11
        verdict = capability.capable_presentation11(
            spec.p, pres.alpha, pres.beta, pres.gamma, pres.sigma,
            want_witness=args.witness, budget=args.budget,
        )
    elif not spec.relators:
        verdict = capability.capable_nilprod(
            spec.p, spec.k, spec.sorted_orders(), want_witness=args.witness, budget=args.budget
        )
    else:
        view = engine.build_group(spec, args.budget)
        gen_orders = sorted(engine.element_order(view, g) for g in view.generators)
        exps = []
        for o in gen_orders:
            e = 0
            while o > 1:
                o //= spec.p
                e += 1
            exps.append(e)
        if not capability.necessity_check(spec.p, spec.k, exps):
            verdict = capability.Verdict(
                capability.NOT_CAPABLE,
                "necessity bound violated on the generator orders",
                {"p": spec.p, "k": spec.k, "generator_order_exponents": exps},
            )
        else:
            verdict = capability.Verdict(
                capability.UNKNOWN,
                "necessity holds; no decision procedure for this presentation",
                {"p": spec.p, "k": spec.k, "generator_order_exponents": exps},
            )
            if args.witness:
                report = capability.witness_search(spec, budget=args.budget)
                verdict.witness = report
                if report.verified:
                    verdict.status = capability.CAPABLE
                    verdict.justification = "verified witness: central quotient realizes the group"
    doc = {"command": "capable", "verdict": verdict.to_dict()}
    _emit(doc, args.json)
    if args.strict and verdict.status == capability.NOT_CAPABLE:
        return EXIT_NOT_CAPABLE
    return EXIT_OK


def cmd_witness(args) -> int:
    spec = _load_spec(args)
    k_orders = None
    if args.k_orders:
        k_orders = tuple(int(t) for t in args.k_orders.split(","))
    report = capability.witness_search(spec, k_orders=k_orders, budget=args.budget)
    _emit({"command": "witness", "report": report.to_dict()}, args.json)
    return EXIT_OK


def cmd_presentation11(args) -> int:
    spec = _load_spec(args)
    if spec.presentation11 is None:
        raise SpecError("spec file has no presentation11 block")
    pres = spec.presentation11
    view, assign = capability.build_presentation11(spec.p, pres, args.budget)
    verdict = capability.capable_presentation11(
        spec.p, pres.alpha, pres.beta, pres.gamma, pres.sigma,
        want_witness=args.witness, budget=args.budget,
    )
    doc = {
        "command": "presentation11",
        "order": view.order,
        "verdict": verdict.to_dict(),
    }
    _emit(doc, args.json)
    return EXIT_OK


def cmd_extraspecial(args) -> int:
    verdict = capability.capable_extraspecial(args.p, args.n, args.kind)
    doc = {"command": "extraspecial", "verdict": verdict.to_dict()}
    if args.showcase:
        if args.n != 5:
            raise SpecError("--showcase builds the order-p^5 example; use --n 5")
        view = capability.build_extraspecial_p5(args.p, args.budget)
        z = engine.center(view)
        doc["showcase"] = {
            "order": view.order,
            "center_order": z.order,
            "generator_orders": [engine.element_order(view, g) for g in view.generators],
            "necessity_check": capability.necessity_check(args.p, 2, [1, 1, 1, 1]),
        }
    _emit(doc, args.json)
    return EXIT_OK


def cmd_verify(args) -> int:
    t0 = time.perf_counter()
    reports: list[oracle.CheckReport] = []
    suites = [args.suite] if args.suite != "all" else [
        "arith", "order", "axioms", "identities", "center", "exponent"
    ]
    spec = load_group_spec(args.spec) if args.spec else None
    for suite in suites:
        if suite == "arith":
            reports.extend(oracle.verify_arith(samples=args.samples, seed=args.seed))
            continue
        if spec is None:
            if args.suite != "all":
                raise SpecError(f"suite {suite!r} needs --spec FILE")
            continue
        if suite == "order":
            if not spec.relators and spec.presentation11 is None:
                reports.append(oracle.verify_struik_order(spec, args.budget))
        elif suite == "axioms":
            view = engine.build_group(spec, args.budget)
            reports.append(oracle.verify_group_axioms(view, samples=args.samples * 100, seed=args.seed))
        elif suite == "identities":
            reports.extend(oracle.run_identity_suite(spec, samples=args.samples, seed=args.seed, budget=args.budget))
        elif suite == "center":
            reports.append(oracle.verify_center_theorem(spec, args.budget))
        elif suite == "exponent":
            view = engine.build_group(spec, args.budget)
            orders = spec.sorted_orders()
            a = orders[-2] if len(orders) > 1 else orders[-1]
            reports.append(
                oracle.verify_exponent_bounds(view, view.generators[-1], view.generators[0], a)
            )
        else:
            raise SpecError(f"unknown suite {suite!r}")
    doc = {
        "command": "verify",
        "seed": args.seed,
        "reports": [r.to_dict() for r in reports],
        "status": "PASS" if all(r.status != oracle.FAIL for r in reports) else "FAIL",
    }
    _emit(doc, args.json, time.perf_counter() - t0)
    return EXIT_OK if doc["status"] == "PASS" else EXIT_INPUT


def make_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="nilprod",
        description="Exact computation in k-nilpotent products of cyclic p-groups",
    )
    sub = ap.add_subparsers(dest="cmd", required=True)

    def common(sp, spec_required=False):
        sp.add_argument("--spec", help="GroupSpec JSON file", required=spec_required)
        sp.add_argument("--budget", type=int, default=engine.DEFAULT_BUDGET,
                        help="enumeration budget (max group order)")
        sp.add_argument("--seed", type=int, default=0)
        sp.add_argument("--json", action="store_true", help="machine-readable output")

    sp = sub.add_parser("describe", help="basis listing, moduli, order")
    common(sp, spec_required=True)
    sp.set_defaults(func=cmd_describe)

    sp = sub.add_parser("mul", help="multiply two words")
    common(sp, spec_required=True)
    sp.add_argument("left")
    sp.add_argument("right")
    sp.set_defaults(func=cmd_mul)

    sp = sub.add_parser("center", help="brute-force center")
    common(sp, spec_required=True)
    sp.set_defaults(func=cmd_center)

    sp = sub.add_parser("lcs", help="lower central series")
    common(sp, spec_required=True)
    sp.set_defaults(func=cmd_lcs)

    sp = sub.add_parser("quotient", help="quotient by the normal closure of words")
    common(sp, spec_required=True)
    sp.add_argument("--by", action="append", required=True, help="relator word (repeatable)")
    sp.set_defaults(func=cmd_quotient)

    sp = sub.add_parser("capable", help="capability verdict")
    common(sp, spec_required=True)
    sp.add_argument("--witness", action="store_true", help="attach a witness construction")
    sp.add_argument("--strict", action="store_true", help="exit 1 on NOT_CAPABLE")
    sp.set_defaults(func=cmd_capable)

    sp = sub.add_parser("witness", help="run the witness search")
    common(sp, spec_required=True)
    sp.add_argument("--k-orders", help="comma-separated order exponents for the witness group")
    sp.set_defaults(func=cmd_witness)

    sp = sub.add_parser("presentation11", help="2-generator class-2 presentation tools")
    common(sp, spec_required=True)
    sp.add_argument("--witness", action="store_true")
    sp.set_defaults(func=cmd_presentation11)

    sp = sub.add_parser("extraspecial", help="extra-special capability classification")
    sp.add_argument("--p", type=int, required=True)
    sp.add_argument("--n", type=int, required=True, help="order exponent (odd)")
    sp.add_argument("--kind", required=True,
                    help="exponent_p | exponent_p_squared | dihedral | quaternion")
    sp.add_argument("--showcase", action="store_true",
                    help="build the order-p^5 example and report its shape")
    sp.add_argument("--budget", type=int, default=engine.DEFAULT_BUDGET)
    sp.add_argument("--json", action="store_true")
    sp.set_defaults(func=cmd_extraspecial)

    sp = sub.add_parser("verify", help="run oracle suites")
    common(sp)
    sp.add_argument("--suite", default="all",
                    choices=["arith", "order", "axioms", "identities", "center", "exponent", "all"])
    sp.add_argument("--samples", type=int, default=120)
    sp.set_defaults(func=cmd_verify)

    return ap


def main(argv=None) -> int:
    ap = make_parser()
    args = ap.parse_args(argv)
    try:
        return args.func(args)
    except BudgetExceeded as exc:
        print(f"budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (ParseError, SpecError, FileNotFoundError, json.JSONDecodeError) as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except NilprodError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
