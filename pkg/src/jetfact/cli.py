"""Command-line front end.

Subcommands build jet presentations, extract vertex modes, and run the
check suites; every command emits one JSON report of the form
{command, params, checks: [{name, status, detail}], timing_ms} to stdout
or --out.  Exit status is 0 when every check passes, 1 on check failures,
and 2 on parse errors.  All randomness flows from the --seed flag.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from fractions import Fraction

from .diskgeom import BasisElement
from .exprs import ExprError, free_names
from .factalg import (
    SupportedOpen,
    TensorSection,
    adjunction_theta,
    adjunction_theta_prime,
    check_coequalizer_chain,
    check_pfa_axioms,
)
from .grading import format_element
from .jetalg import AlgebraPresentation, lift_hom
from .numcx import mode_agreement_check, residue_swap_check
from .reconstruct import eta_roundtrip_check
from .reports import all_pass, check_entry, make_report
from .sampling import Sampler
from .vertex import VertexAlgebra, check_vertex_axioms, vertex_op

PARSE_ERROR = 2


def load_preset(path):
    with open(path, "r", encoding="utf-8") as fh:
        return json.load(fh)


def build_presentation(args, exprs=()):
    """Presentation from flags or preset; generators are inferred from the
    element expressions when not given explicitly."""
    preset = load_preset(args.preset) if getattr(args, "preset", None) else {}
    doc = preset.get("presentation", {})
    if isinstance(doc, str):
        doc = load_preset(doc)
    gens = getattr(args, "gens", None)
    if gens:
        gens = [g.strip() for g in gens.split(",") if g.strip()]
    elif doc.get("generators"):
        gens = doc["generators"]
    else:
        inferred = sorted({name for e in exprs for name in free_names(e)})
        gens = inferred or ["x"]
    relations = getattr(args, "relations", None)
    if relations is None:
        relations = doc.get("relations", [])
    else:
        relations = [r for r in relations.split(";") if r.strip()]
    wmax = getattr(args, "max_weight", None)
    if wmax is None:
        wmax = int(doc.get("max_weight", 6))
    return AlgebraPresentation(gens, relations, wmax), preset


def emit(report: dict, args) -> int:
    text = json.dumps(report, indent=2, default=str)
    if getattr(args, "out", None):
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    else:
        print(text)
    return 0 if all_pass(report) else 1


def cmd_jet_build(args) -> int:
    t0 = time.perf_counter()
    P, _ = build_presentation(args)
    checks = []
    detail = {"generators": list(P.generators), "max_weight": P.wmax}
    if args.dims:
        detail["dims"] = P.dims()
    if args.basis is not None:
        from .grading import format_monomial

        detail["basis"] = [format_monomial(m) for m in P.weight_basis(args.basis)]
    checks.append(check_entry("build", True, detail))
    report = make_report("jet build", vars_of(args), checks, t0)
    return emit(report, args)


def cmd_vertex_modes(args) -> int:
    t0 = time.perf_counter()
    P, _ = build_presentation(args, exprs=[args.a, args.b])
    V = VertexAlgebra(P)
    a = P.parse(args.a)
    b = P.parse(args.b)
    table = vertex_op(a, b, V)
    if args.n is not None:
        detail = {"n": args.n, "mode": format_element(table[args.n])}
    else:
        detail = {"modes": {str(n): format_element(e) for n, e in table.items()}}
    report = make_report("vertex modes", vars_of(args), [check_entry("mode", True, detail)], t0)
    return emit(report, args)


def cmd_vertex_check(args) -> int:
    t0 = time.perf_counter()
    P, _ = build_presentation(args)
    result = check_vertex_axioms(VertexAlgebra(P), samples=args.samples, seed=args.seed)
    report = make_report("vertex check", vars_of(args), result["checks"], t0)
    return emit(report, args)


def cmd_fact_check(args) -> int:
    t0 = time.perf_counter()
    P, preset = build_presentation(args)
    checks = []
    # Named geometry in the scenario is validated up front: construction
    # enforces disjointness for basis elements and connectivity plus
    # region disjointness for supported opens ({"regions": [[...], ...]}).
    for name, doc in preset.get("geometry", {}).items():
        try:
            if isinstance(doc, dict) and "regions" in doc:
                U = SupportedOpen.from_json(doc["regions"])
                detail = {"regions": len(U)}
            else:
                detail = {"disks": len(BasisElement.from_json(doc))}
            checks.append(check_entry(f"geometry_{name}", True, detail))
        except (ValueError, KeyError) as exc:
            checks.append(check_entry(f"geometry_{name}", False, {"error": str(exc)}))
    for entry in preset.get("checks", [{}]):
        samples = entry.get("samples", args.samples)
        seed = entry.get("seed", args.seed)
        result = check_pfa_axioms(P, samples=samples, seed=seed)
        checks.extend(result["checks"])
    report = make_report("fact check", vars_of(args), checks, t0)
    return emit(report, args)


def cmd_fact_coeq(args) -> int:
    t0 = time.perf_counter()
    P, _ = build_presentation(args)
    radii = [Fraction(r) for r in args.radii.split(",")]
    result = check_coequalizer_chain(P, radii)
    report = make_report("fact coeq", vars_of(args), result["checks"], t0)
    return emit(report, args)


def cmd_fact_adjunction(args) -> int:
    t0 = time.perf_counter()
    P, _ = build_presentation(args)
    sampler = Sampler(args.seed)
    target = AlgebraPresentation(["u"], [], P.wmax)
    failures = 0
    for _ in range(args.samples):
        f0 = {g: sampler.element(target, max_terms=2) for g in P.generators}
        hom = lift_hom(f0, P, target)
        phi = adjunction_theta_prime(hom)
        extracted = adjunction_theta(phi)
        # Extract-then-wrap fixes the morphism on every variable ...
        ok = all(
            extracted.image_of_variable(*var) == img
            for var, img in hom.variable_items()
        )
        if ok:
            # ... and wrap-then-extract fixes the action on sampled sections.
            L = sampler.disjoint_disks(2)
            s = TensorSection.simple(
                L, [sampler.element(P, max_terms=2) for _ in range(2)], P
            )
            ok = adjunction_theta_prime(extracted).apply(s) == phi.apply(s)
        if not ok:
            failures += 1
    checks = [
        check_entry(
            "adjunction_round_trips",
            failures == 0,
            {"samples": args.samples, "failures": failures},
        )
    ]
    report = make_report("fact adjunction", vars_of(args), checks, t0)
    return emit(report, args)


def cmd_reconstruct_roundtrip(args) -> int:
    t0 = time.perf_counter()
    P, _ = build_presentation(args)
    result = eta_roundtrip_check(VertexAlgebra(P), nmax=args.nmax, seed=args.seed)
    report = make_report("reconstruct roundtrip", vars_of(args), result["checks"], t0)
    return emit(report, args)


def cmd_num_laurent(args) -> int:
    t0 = time.perf_counter()
    P, _ = build_presentation(args)
    V = VertexAlgebra(P)
    sampler = Sampler(args.seed)
    checks = []
    for i in range(max(args.samples, 1)):
        a = sampler.homogeneous_element(P)
        b = sampler.homogeneous_element(P)
        result = mode_agreement_check(
            a, b, V, nmax=args.nmax, nodes=args.nodes, tolerance=args.tolerance
        )
        for c in result["checks"]:
            c = dict(c)
            c["name"] = f"sample_{i}_{c['name']}"
            checks.append(c)
    report = make_report("num laurent", vars_of(args), checks, t0)
    return emit(report, args)


def cmd_num_swap(args) -> int:
    t0 = time.perf_counter()
    P, _ = build_presentation(args)
    V = VertexAlgebra(P)
    sampler = Sampler(args.seed)
    checks = []
    for i in range(max(args.samples, 1)):
        a = sampler.homogeneous_element(P)
        b = sampler.homogeneous_element(P)
        c = sampler.homogeneous_element(P)
        m = -sampler.rng.randint(1, 2)
        n = -sampler.rng.randint(1, 2)
        N = sampler.rng.randint(0, args.nmax)
        result = residue_swap_check(
            a, b, c, m, n, N, V, nodes=args.nodes, tolerance=args.tolerance
        )
        ok = all_pass(result["checks"])
        checks.append(
            check_entry(
                f"sample_{i}",
                ok,
                {"m": m, "n": n, "N": N, "subchecks": result["checks"]},
            )
        )
    report = make_report("num swap", vars_of(args), checks, t0)
    return emit(report, args)


def vars_of(args) -> dict:
    skip = {"func", "out"}
    return {k: v for k, v in vars(args).items() if k not in skip and v is not None}


def _add_common(p, presentation=True):
    p.add_argument("--preset", help="scenario JSON file")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", help="write the JSON report here instead of stdout")
    if presentation:
        p.add_argument("--gens", help="comma-separated generator names")
        p.add_argument("--relations", help="semicolon-separated relation expressions")
        p.add_argument("--max-weight", dest="max_weight", type=int)


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="jetfact")
    sub = ap.add_subparsers(dest="group", required=True)

    jet = sub.add_parser("jet").add_subparsers(dest="cmd", required=True)
    b = jet.add_parser("build", help="build a presentation and list dimensions")
    _add_common(b)
    b.add_argument("--dims", action="store_true", help="list weight-space dimensions")
    b.add_argument("--basis", type=int, help="list the basis of this weight")
    b.set_defaults(func=cmd_jet_build)

    vx = sub.add_parser("vertex").add_subparsers(dest="cmd", required=True)
    m = vx.add_parser("modes", help="modes of the field of one state on another")
    _add_common(m)
    m.add_argument("--a", required=True)
    m.add_argument("--b", required=True)
    m.add_argument("--n", type=int)
    m.set_defaults(func=cmd_vertex_modes)
    c = vx.add_parser("check", help="vacuum, translation, locality axiom suite")
    _add_common(c)
    c.add_argument("--samples", type=int, default=50)
    c.set_defaults(func=cmd_vertex_check)

    fa = sub.add_parser("fact").add_subparsers(dest="cmd", required=True)
    c = fa.add_parser("check", help="structure-map and equivariance axiom suite")
    _add_common(c)
    c.add_argument("--samples", type=int, default=30)
    c.set_defaults(func=cmd_fact_check)
    c = fa.add_parser("coeq", help="gluing check on a nested disk chain")
    _add_common(c)
    c.add_argument("--radii", default="1,2,4")
    c.set_defaults(func=cmd_fact_coeq)
    c = fa.add_parser("adjunction", help="round trips of the morphism correspondence")
    _add_common(c)
    c.add_argument("--samples", type=int, default=20)
    c.set_defaults(func=cmd_fact_adjunction)

    rc = sub.add_parser("reconstruct").add_subparsers(dest="cmd", required=True)
    c = rc.add_parser("roundtrip", help="reconstructed structure against the source")
    _add_common(c)
    c.add_argument("--nmax", type=int, default=6)
    c.set_defaults(func=cmd_reconstruct_roundtrip)

    nm = sub.add_parser("num").add_subparsers(dest="cmd", required=True)
    c = nm.add_parser("laurent", help="numeric Laurent coefficients against exact modes")
    _add_common(c)
    c.add_argument("--samples", type=int, default=3)
    c.add_argument("--nmax", type=int, default=6)
    c.add_argument("--nodes", type=int, default=128)
    c.add_argument("--tolerance", type=float, default=1e-9)
    c.set_defaults(func=cmd_num_laurent)
    c = nm.add_parser("swap", help="iterated contour orders of the weighted insertion")
    _add_common(c)
    c.add_argument("--samples", type=int, default=5)
    c.add_argument("--nmax", type=int, default=2)
    c.add_argument("--nodes", type=int, default=128)
    c.add_argument("--tolerance", type=float, default=1e-8)
    c.set_defaults(func=cmd_num_swap)

    return ap


def run(argv) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return PARSE_ERROR if exc.code not in (0,) else 0
    try:
        return args.func(args)
    except (ExprError, ValueError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return PARSE_ERROR


def main():
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
