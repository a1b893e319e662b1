"""Command-line front end.

Subcommands: ope-check (bracket and mode relation suites), character
(basis enumeration vs product formula), brst (differential, homotopy,
cohomology table), cr (orbifold Poincare polynomial), genus (elliptic
genus by both routes), selftest (the full invariant battery).

Output is deterministic; --format json switches to machine-readable
reports.  Exit codes: 0 success, 1 invariant failure, 2 input error.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import examples, verify
from .brst import cohomology_table, homotopy_identity_check
from .fock import FockError, TwistData, character_product, make_module
from .genus import ConsistencyError, GenusError, ell_orb, ell_orb_via_traces
from .orbifold import (GroupError, OrbifoldError, cr_poincare,
                       poincare_report)
from .scalars import rat
from .schema import InputError, parse_orbifold_input
from .series import series_report, series_to_json

EXIT_OK, EXIT_INVARIANT, EXIT_INPUT = 0, 1, 2


def parse_twist(spec: str | None, n: int) -> TwistData:
    if not spec:
        return TwistData.identity(n)
    try:
        exps, mg = spec.split("/")
        return TwistData(n, int(mg), tuple(int(x) for x in exps.split(",")))
    except (ValueError, TypeError) as e:
        raise InputError(f"bad twist spec {spec!r} (want 'm1,...,mN/mg'): {e}")


def _emit_reports(reports, fmt) -> int:
    ok = all(r.ok for r in reports)
    if fmt == "json":
        payload = [{"title": r.title, "ok": r.ok,
                    "items": [{"name": i.name, "ok": i.ok, "checked": i.checked,
                               "detail": i.detail} for i in r.items]}
                   for r in reports]
        print(json.dumps({"ok": ok, "reports": payload}, indent=2))
    else:
        for r in reports:
            print("\n".join(r.lines()))
    return EXIT_OK if ok else EXIT_INVARIANT


def cmd_ope_check(args) -> int:
    twist = parse_twist(args.twist, args.n)
    module = make_module(twist)
    w = rat(args.max_weight)
    reports = [
        verify.generator_relations(module, min(w, rat(2)), args.modes),
        verify.bracket_suite(module, w, args.modes),
        verify.equivariance_zero_modes(module, min(w, rat(2))),
    ]
    code = _emit_reports(reports, args.format)
    if args.format == "text":
        print("all brackets verified" if code == EXIT_OK
              else "bracket suite FAILED")
    return code


def cmd_character(args) -> int:
    twist = parse_twist(args.twist, args.n)
    module = make_module(twist)
    qmax = rat(args.qmax)
    enum = module.character(qmax)
    prod = character_product(twist, qmax)
    agree = enum == prod
    if args.format == "json":
        print(json.dumps({"character": series_to_json(enum),
                          "matches_product_formula": agree}, indent=2))
    else:
        print(f"character (twist {twist}, q <= {qmax}):")
        print("  " + series_report(enum))
        print(f"matches product formula: {'yes' if agree else 'NO'}")
    return EXIT_OK if agree else EXIT_INVARIANT


def cmd_brst(args) -> int:
    twist = parse_twist(args.twist, args.n)
    module = make_module(twist)
    w = rat(args.max_weight)
    hom = homotopy_identity_check(module, w)
    table = cohomology_table(module, w)
    zero_dirs = len(twist.zero_directions())
    concentrated = table.max_nonzero_weight() in (None, 0)
    expected_total = 2 ** zero_dirs
    total_ok = table.total_cohomology_dim() == expected_total
    ok = hom.ok and concentrated and total_ok
    if args.format == "json":
        print(json.dumps({
            "homotopy_sign": hom.sign,
            "homotopy_ok": hom.ok,
            "cohomology": [{"weight": str(w_), "charge": str(c),
                            "dim": v[3]}
                           for (w_, c), v in table.blocks.items() if v[3]],
            "weight0_concentrated": concentrated,
            "total_dim": table.total_cohomology_dim(),
            "ok": ok}, indent=2))
    else:
        print(f"d^2 = 0: yes (asserted during construction)")
        print(f"homotopy {{G_0, d}} = {hom.sign:+d} * L_0: "
              f"{'holds on all blocks' if hom.ok else 'FAILS'}")
        print("cohomology blocks (weight, charge) -> dim:")
        for (w_, c), v in table.blocks.items():
            if v[3]:
                print(f"  ({w_}, {c}) -> {v[3]}")
        print(f"concentrated in weight 0: {'yes' if concentrated else 'NO'}; "
              f"total dim {table.total_cohomology_dim()} "
              f"(expected {expected_total})")
    return EXIT_OK if ok else EXIT_INVARIANT


def _load_input(args):
    return parse_orbifold_input(args.input)


def cmd_cr(args) -> int:
    inp = _load_input(args)
    poly = cr_poincare(inp)
    if args.format == "json":
        print(json.dumps({"poincare": [{"degree": str(d), "dim": v}
                                       for d, v in poly.items()]}, indent=2))
    else:
        print("orbifold Poincare polynomial:")
        print("  " + poincare_report(poly))
    return EXIT_OK


def cmd_genus(args) -> int:
    inp = _load_input(args)
    qmax = rat(args.qmax)
    jobs = max(1, args.jobs)
    direct = ell_orb(inp, qmax, jobs=jobs)
    traces = ell_orb_via_traces(inp, qmax, compare=False, jobs=jobs)
    agree = direct == traces
    if args.format == "json":
        print(json.dumps({"ell_orb": series_to_json(direct),
                          "ell_orb_via_traces": series_to_json(traces),
                          "paths_agree": agree}, indent=2))
    else:
        print(f"Ell_orb (q <= {qmax}):")
        print("  " + series_report(direct))
        print("trace route:")
        print("  " + series_report(traces))
        print(f"paths agree: {'yes' if agree else 'NO'}")
    return EXIT_OK if agree else EXIT_INVARIANT


def cmd_selftest(args) -> int:
    quick = args.quick
    seed = args.seed
    reports = [verify.scalar_axioms(seed), verify.series_ring_axioms(seed)]
    twists = [TwistData.identity(1), TwistData(1, 2, (1,)),
              TwistData(1, 3, (2,)), TwistData(2, 2, (0, 1))]
    if not quick:
        twists += [TwistData(2, 1, (0, 0)), TwistData(2, 3, (1, 2))]
    for tw in twists:
        module = make_module(tw)
        wb = rat(3, 2) if quick else rat(2)
        reports.append(verify.character_suite(tw, wb))
        reports.append(verify.spectrum_suite(module, wb))
        reports.append(verify.bracket_suite(module, wb, 1 if quick else 2))
    module = make_module(TwistData.identity(1))
    reports.append(verify.generator_relations(module, 2, 2))
    reports.append(verify.vector_field_suite(module, 2, 2))
    code = _emit_reports(reports, args.format)

    failures = []
    try:
        inp = parse_orbifold_input(examples.p1_z2())
        poly = cr_poincare(inp)
        if poincare_report(poly) != "1 + 2*t + t^2":
            failures.append(f"CR of the bundled involution input: {poly}")
        qq = rat(1, 2) if quick else rat(1)
        ell_orb_via_traces(inp, qq, compare=True)
        s3 = parse_orbifold_input(examples.s3_p1())
        ell_orb_via_traces(s3, rat(1, 2), compare=True)
    except (InputError, GenusError, OrbifoldError) as e:
        failures.append(str(e))
    for f in failures:
        print(f"[FAIL] {f}")
    if args.format == "text" and not failures:
        print("bundled inputs: ok")
    return EXIT_INVARIANT if (failures or code) else EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="orbifock",
        description="exact twisted Fock module workbench and orbifold "
                    "elliptic genus calculator")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--jobs", type=int, default=1,
                   help="worker threads for independent sector computations")
    sub = p.add_subparsers(dest="command", required=True)

    q = sub.add_parser("ope-check", help="verify the bracket relation suites")
    q.add_argument("--n", type=int, required=True)
    q.add_argument("--twist", help="'m1,...,mN/mg' (default: identity)")
    q.add_argument("--max-weight", default="2")
    q.add_argument("--modes", type=int, default=2)
    q.set_defaults(fn=cmd_ope_check)

    q = sub.add_parser("character", help="module character vs product formula")
    q.add_argument("--n", type=int, required=True)
    q.add_argument("--twist")
    q.add_argument("--qmax", default="2")
    q.set_defaults(fn=cmd_character)

    q = sub.add_parser("brst", help="differential, homotopy, cohomology")
    q.add_argument("--n", type=int, required=True)
    q.add_argument("--twist")
    q.add_argument("--max-weight", default="2")
    q.set_defaults(fn=cmd_brst)

    q = sub.add_parser("cr", help="orbifold Poincare polynomial")
    q.add_argument("--input", required=True)
    q.set_defaults(fn=cmd_cr)

    q = sub.add_parser("genus", help="orbifold elliptic genus, both routes")
    q.add_argument("--input", required=True)
    q.add_argument("--qmax", default="1")
    q.set_defaults(fn=cmd_genus)

    q = sub.add_parser("selftest", help="run the invariant battery")
    q.add_argument("--quick", action="store_true")
    q.add_argument("--seed", type=int, default=0)
    q.set_defaults(fn=cmd_selftest)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        code = args.fn(args)
    except (InputError, OrbifoldError, GroupError, FockError) as e:
        print(f"input error: {e}", file=sys.stderr)
        return EXIT_INPUT
    except ConsistencyError as e:
        print(f"invariant failure: {e}", file=sys.stderr)
        return EXIT_INVARIANT
    except GenusError as e:
        print(f"input error: {e}", file=sys.stderr)
        return EXIT_INPUT
    except FileNotFoundError as e:
        print(f"input error: {e}", file=sys.stderr)
        return EXIT_INPUT
    return code


if __name__ == "__main__":
    sys.exit(main())
