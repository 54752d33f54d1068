"""Command-line front end: every verification suite, with machine-readable reports.

Exit codes: 0 when every check passes, 1 when some check fails or errors,
2 on usage errors (unknown subcommand, name or file).
"""

from __future__ import annotations

import argparse
import json
import os
import random
import sys
import time
from dataclasses import dataclass
from typing import Any, Callable, Sequence

from .report import ERROR, FAIL, PASS, SKIPPED, Check, Report, render

REPORT_VERSION = "1.0"


class UsageError(Exception):
    pass


@dataclass
class Stage:
    """One independently runnable part of a suite."""

    id: str
    run: Callable[[], Report]


def run_stages(stages: Sequence[Stage], fail_fast: bool = False) -> tuple[list[Check], dict]:
    """Run stages in order; under ``fail_fast`` everything after the first failure is skipped."""
    checks: list[Check] = []
    data: dict = {}
    failed = False
    for st in stages:
        if failed and fail_fast:
            checks.append(Check(st.id, SKIPPED))
            continue
        try:
            rep = st.run()
        except (KeyboardInterrupt, SystemExit):
            raise
        except Exception as exc:  # a crashing verifier is an "error" check, not a crash of the CLI
            checks.append(Check(st.id, ERROR, detail=f"{type(exc).__name__}: {exc}"))
            failed = True
            continue
        if rep.data:
            data[st.id] = rep.data
        for c in sorted(rep.checks, key=_check_key):
            cid = f"{st.id}/{c.id}"
            if failed and fail_fast:
                checks.append(Check(cid, SKIPPED, degree=c.degree))
                continue
            checks.append(Check(cid, c.status, c.degree, c.witness, c.lhs, c.rhs, c.detail))
            if c.status != PASS:
                failed = True
    return checks, data


def _check_key(c: Check) -> tuple:
    return (c.id, -1 if c.degree is None else c.degree)


def build_report(command: str, inputs: dict, checks: list[Check], data: dict, elapsed_ms: int) -> dict:
    from . import __version__

    ordered = sorted(checks, key=_check_key)
    out: dict[str, Any] = {
        "command": command,
        "inputs": render(inputs),
        "checks": [c.to_dict() for c in ordered],
        "timing_ms": elapsed_ms,
        "version": REPORT_VERSION,
        "tool_version": __version__,
        "ok": bool(ordered) and all(c.status == PASS for c in ordered),
    }
    if data:
        out["data"] = render(data)
    return out


def exit_code(checks: Sequence[Check]) -> int:
    return 0 if checks and all(c.status == PASS for c in checks) else 1


# input resolution ------------------------------------------------------------------------------


def _load_file(path: str):
    from .serialize import FormatError, load

    if not os.path.exists(path):
        raise UsageError(f"no such file: {path}")
    try:
        return load(path)
    except (FormatError, ValueError, KeyError, TypeError) as exc:
        raise UsageError(f"cannot read {path}: {exc}") from exc


def resolve_hopf(spec: str):
    from .catalog import HOPF_ALGEBRAS
    from .hopf import FinHopf

    if spec in HOPF_ALGEBRAS:
        return HOPF_ALGEBRAS[spec]()
    if spec.endswith(".json") or os.path.sep in spec:
        obj = _load_file_unvalidated_hopf(spec)
        if not isinstance(obj, FinHopf):
            raise UsageError(f"{spec} does not hold a Hopf algebra")
        return obj
    raise UsageError(f"unknown Hopf algebra {spec!r}")


def _load_file_unvalidated_hopf(path: str):
    from .serialize import FormatError, hopf_from_json

    if not os.path.exists(path):
        raise UsageError(f"no such file: {path}")
    try:
        with open(path) as fh:
            return hopf_from_json(json.load(fh), validate=False)
    except (FormatError, ValueError, KeyError, TypeError) as exc:
        raise UsageError(f"cannot read {path}: {exc}") from exc


def resolve_h_algebra(args):
    from .actions import HAlgebra
    from .catalog import H_ALGEBRAS

    if getattr(args, "file", None):
        obj = _load_file(args.file)
        if not isinstance(obj, HAlgebra):
            raise UsageError(f"{args.file} does not hold an H-algebra")
        return obj
    key = (args.hopf, args.algebra)
    if key not in H_ALGEBRAS:
        raise UsageError(f"no catalog H-algebra {args.algebra!r} over {args.hopf!r}")
    return H_ALGEBRAS[key]()


def resolve_rep(name: str, hopf=None):
    from .actions import Representation
    from .catalog import REPRESENTATIONS

    if name in REPRESENTATIONS:
        return REPRESENTATIONS[name]()
    if name.endswith(".json"):
        obj = _load_file(name)
        if not isinstance(obj, Representation):
            raise UsageError(f"{name} does not hold a representation")
        return obj
    raise UsageError(f"unknown representation {name!r}")


def resolve_idempotent(spec: str):
    from .catalog import IDEMPOTENTS
    from .ktheory import MatrixElem

    if spec in IDEMPOTENTS:
        return IDEMPOTENTS[spec]()
    if spec.endswith(".json"):
        obj = _load_file(spec)
        if not isinstance(obj, MatrixElem):
            raise UsageError(f"{spec} does not hold an idempotent")
        return obj
    raise UsageError(f"unknown idempotent {spec!r}")


def resolve_presentation(spec: str):
    from .rewrite import PRESENTATIONS, Presentation

    if spec in PRESENTATIONS:
        return PRESENTATIONS[spec]()
    if spec.endswith(".json"):
        obj = _load_file(spec)
        if not isinstance(obj, Presentation):
            raise UsageError(f"{spec} does not hold a presentation")
        return obj
    raise UsageError(f"unknown presentation {spec!r}")


# commands ----------------------------------------------------------------------------------------


def _ha_inputs(args, HA) -> dict:
    if getattr(args, "file", None):
        return {"file": args.file, "name": HA.name}
    return {"hopf": args.hopf, "algebra": args.algebra}


def cmd_verify_hopf(args):
    H = resolve_hopf(args.target)
    return {"target": args.target}, [Stage("hopf-axioms", H.verify_hopf_axioms)]


def cmd_verify_module_algebra(args):
    from .actions import twisted_product, verify_module_algebra

    HA = resolve_h_algebra(args)
    stages = [Stage("module-algebra", lambda: verify_module_algebra(HA.hopf, HA.algebra, HA.action))]
    if args.twist_with:
        from .actions import endo_conj_algebra, is_yd

        V = resolve_rep(args.twist_with)

        def twisted():
            if not is_yd(HA):
                raise ValueError("the twisted product needs a Yetter-Drinfeld algebra")
            T = twisted_product(HA, endo_conj_algebra(V))
            rep = verify_module_algebra(T.hopf, T.algebra, T.action)
            rep.extend(T.algebra.verify(), "associativity/")
            return rep

        stages.append(Stage("twisted-product", twisted))
    return _ha_inputs(args, HA) | {"twist_with": args.twist_with}, stages


def cmd_verify_yd(args):
    from .actions import perturbed_coactions, verify_yd, yd_condition_compat, yd_condition_explicit

    HA = resolve_h_algebra(args)
    if HA.coaction is None:
        raise UsageError(f"{HA.name} carries no coaction")

    def agreement():
        rep = Report("agreement on perturbations")
        H, A = HA.hopf, HA.algebra
        verdicts = []
        for k, co in enumerate(perturbed_coactions(HA, args.perturbations, args.seed)):
            a = yd_condition_compat(H, A, HA.action, co) is None
            b = yd_condition_explicit(H, A, HA.action, co) is None
            verdicts.append(a)
            rep.record(f"forms agree on perturbation {k:03d}", None if a == b else k, a, b)
        rep.data["compatible_perturbations"] = sum(verdicts)
        return rep

    return _ha_inputs(args, HA) | {"perturbations": args.perturbations, "seed": args.seed}, [
        Stage("yd", lambda: verify_yd(HA)),
        Stage("perturbations", agreement),
    ]


def cmd_verify_cocyclic(args):
    from .cyclic import verify_cocyclic

    HA = resolve_h_algebra(args)
    return _ha_inputs(args, HA) | {"n_max": args.n_max}, [Stage("cocyclic", lambda: verify_cocyclic(HA, args.n_max, args.mutated))]


def cmd_verify_phi_psi(args):
    from .cyclic import verify_phi_psi

    HA = resolve_h_algebra(args)
    return _ha_inputs(args, HA) | {"n_max": args.n_max}, [Stage("phi-psi", lambda: verify_phi_psi(HA, args.n_max))]


def cmd_verify_cylindrical(args):
    from .cyclic import verify_cylindrical

    HA = resolve_h_algebra(args)
    inputs = _ha_inputs(args, HA) | {"p_max": args.p_max, "q_max": args.q_max}
    return inputs, [Stage("cylindrical", lambda: verify_cylindrical(HA, args.p_max, args.q_max))]


def cmd_verify_trace_map(args):
    from .actions import is_yd
    from .ktheory import verify_beta_transport, verify_trace

    HA = resolve_h_algebra(args)
    V = resolve_rep(args.rep)
    stages = [Stage("trace", lambda: verify_trace(HA, V, args.n_max, tag=args.structure))]
    if is_yd(HA):
        stages.append(Stage("beta-transport", lambda: verify_beta_transport(HA, V, args.n_max)))
    return _ha_inputs(args, HA) | {"rep": args.rep, "n_max": args.n_max, "structure": args.structure}, stages


def cmd_verify_isomorphisms(args):
    from .actions import is_yd, verify_beta, verify_t
    from .catalog import kc2_r_matrix

    HA = resolve_h_algebra(args)
    V = resolve_rep(args.rep)
    stages = []
    if is_yd(HA):
        stages.append(Stage("beta", lambda: verify_beta(HA, V)))
    if args.r_matrix:
        if args.r_matrix != "kc2-r":
            raise UsageError(f"unknown R-matrix {args.r_matrix!r}")
        stages.append(Stage("t", lambda: verify_t(HA, V, kc2_r_matrix())))
    if not stages:
        raise UsageError("nothing to verify: the algebra is not Yetter-Drinfeld and no R-matrix was given")
    return _ha_inputs(args, HA) | {"rep": args.rep, "r_matrix": args.r_matrix}, stages


def homotopy_case(name: str):
    """The catalog test cases for the inner homotopies: (matrix algebra, invertible invariant b)."""
    from .catalog import point_matrices, sign_line_conjugator

    if name == "point":
        M = point_matrices()
        return M, M.elem({0: 1}, [[2, 1], [1, 2]])
    if name == "sign-line":
        g, _ = sign_line_conjugator()
        return g.M, dict(g.vec)
    raise UsageError(f"unknown homotopy case {name!r}")


def cmd_verify_homotopies(args):
    from .ktheory import verify_homotopies

    M, b = homotopy_case(args.case)
    return {"case": args.case, "n_max": args.n_max}, [Stage("homotopies", lambda: verify_homotopies(M, b, args.n_max))]


def cmd_verify_rewrite(args):
    from .rewrite import check_confluence

    p = resolve_presentation(args.presentation)
    stages = [Stage("confluence", lambda: check_confluence(p, args.bound))]
    if args.presentation in ("uq-su2", "podles"):
        from .rewrite import podles_action, uq_su2

        if args.presentation == "uq-su2":
            stages.append(Stage("hopf", lambda: uq_su2()[1].verify()))
        else:
            stages.append(Stage("action", lambda: podles_action().verify()))
    stages.append(Stage("multiplicative", lambda: multiplicativity(p, args.samples, args.seed)))
    return {"presentation": args.presentation, "bound": args.bound, "samples": args.samples, "seed": args.seed}, stages


def multiplicativity(p, samples: int, seed: int, max_len: int = 4) -> Report:
    """``nf(nf(x) nf(y)) = nf(xy)`` on seeded random words."""
    rng = random.Random(seed)
    rep = Report("multiplicativity")
    bad = None
    n = len(p.generators)
    for k in range(samples):
        x = tuple(rng.randrange(n) for _ in range(rng.randint(0, max_len)))
        y = tuple(rng.randrange(n) for _ in range(rng.randint(0, max_len)))
        lhs = p.normal_form({x: 1}) * p.normal_form({y: 1})
        rhs = p.normal_form({x + y: 1})
        if lhs != rhs:
            bad = (p.word(x) + " . " + p.word(y), str(lhs), str(rhs))
            break
    rep.record("nf(x) nf(y) = nf(xy)", *(bad if bad else (None,)))
    return rep


def cmd_monopole(args):
    from .monopole import monopole_suite

    return {}, [Stage("monopole", monopole_suite)]


def cmd_pairing(args):
    from .ktheory import _trace_for, in_invariant_functionals, pair_even, pair_periodic, verify_pairing, verify_periodic_pairing

    e = resolve_idempotent(args.idempotent)
    inputs = {"idempotent": args.idempotent, "cocycle": args.cocycle, "periodic": args.periodic}
    if args.cocycle is None:
        if args.periodic:
            return inputs, [Stage("periodic-pairing", lambda: verify_periodic_pairing(e))]
        return inputs, [Stage("pairing", lambda: verify_pairing(e, (0, 1)))]
    if not os.path.exists(args.cocycle):
        raise UsageError(f"no such file: {args.cocycle}")
    from .serialize import FormatError, cochain_from_json

    try:
        with open(args.cocycle) as fh:
            obj = json.load(fh)
        comps = obj["components"] if obj.get("kind") == "periodic-cochain" else [obj]
        cochains = [cochain_from_json(c) for c in comps]
    except (FormatError, ValueError, KeyError, TypeError) as exc:
        raise UsageError(f"cannot read {args.cocycle}: {exc}") from exc

    def run():
        P = _trace_for(e.M)
        H = P.H
        rep = Report("pairing")
        if args.periodic:
            if [n for n, _ in cochains] != [2 * k for k in range(len(cochains))]:
                raise ValueError("periodic cochain components must have degrees 0, 2, 4, ...")
            val = pair_periodic(e, [f for _, f in cochains], P)
        else:
            if len(cochains) != 1:
                raise ValueError("give a single cochain, or use --periodic")
            n, f = cochains[0]
            val = pair_even(e, f, n, P)
        ok = in_invariant_functionals(H, val)
        rep.record("value lies in R(H)", None if ok else "value", val)
        rep.data["value"] = {H.labels[g]: c for g, c in sorted(val.items())}
        rep.data["in_R_H"] = ok
        return rep

    return inputs, [Stage("pairing", run)]


def cmd_cohomology(args):
    from .cyclic import EquivariantComplex, cohomology_dims

    HA = resolve_h_algebra(args)
    return _ha_inputs(args, HA) | {"n_max": args.n_max}, [Stage("cohomology", lambda: cohomology_dims(EquivariantComplex(HA), args.n_max))]


# argument parsing --------------------------------------------------------------------------------


def _global_flags(p: argparse.ArgumentParser, top: bool) -> None:
    d = (lambda v: v) if top else (lambda v: argparse.SUPPRESS)
    p.add_argument("--json", action="store_true", default=d(False), help="print the report as JSON")
    p.add_argument("--seed", type=int, default=d(0), help="seed for randomized property subsets")
    p.add_argument("--fail-fast", action="store_true", default=d(False), help="skip remaining checks after a failure")


def _ha_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--hopf", default="kc2", help="catalog Hopf algebra")
    p.add_argument("--algebra", default="sign-line", help="catalog H-algebra over it")
    p.add_argument("--file", help="H-algebra JSON file (overrides --hopf/--algebra)")


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="hopf-cyclic", description="Exact verification of Hopf-cyclic identities.")
    _global_flags(parser, True)
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)
    sub.required = True

    def add(name, func, helptext, parent=sub):
        p = parent.add_parser(name, help=helptext)
        _global_flags(p, False)
        p.set_defaults(func=func, command_name=name)
        return p

    verify = sub.add_parser("verify", help="run a verification suite")
    vsub = verify.add_subparsers(dest="suite", parser_class=_Parser)
    vsub.required = True

    p = add("hopf", cmd_verify_hopf, "Hopf algebra axioms", vsub)
    p.add_argument("target", help="catalog name or JSON file")
    p = add("module-algebra", cmd_verify_module_algebra, "module-algebra axioms", vsub)
    _ha_flags(p)
    p.add_argument("--twist-with", help="also verify the twisted product with End of this representation")
    p = add("yd", cmd_verify_yd, "Yetter-Drinfeld conditions and their agreement", vsub)
    _ha_flags(p)
    p.add_argument("--perturbations", type=int, default=50)
    p = add("cocyclic", cmd_verify_cocyclic, "cocyclic-module identities", vsub)
    _ha_flags(p)
    p.add_argument("--n-max", type=int, default=2)
    p.add_argument("--mutated", action="store_true", help="use a deliberately wrong cyclic operator")
    p = add("phi-psi", cmd_verify_phi_psi, "crossed-product comparison maps", vsub)
    _ha_flags(p)
    p.add_argument("--n-max", type=int, default=2)
    p = add("cylindrical", cmd_verify_cylindrical, "cylindrical-module identities", vsub)
    _ha_flags(p)
    p.add_argument("--p-max", type=int, default=2)
    p.add_argument("--q-max", type=int, default=2)
    p = add("trace-map", cmd_verify_trace_map, "generalized trace map", vsub)
    _ha_flags(p)
    p.add_argument("--rep", default="kc2-regular")
    p.add_argument("--n-max", type=int, default=2)
    p.add_argument("--structure", choices=["nondiagonal", "diagonal"], default="nondiagonal")
    p = add("isomorphisms", cmd_verify_isomorphisms, "the isomorphisms between the two matrix structures", vsub)
    _ha_flags(p)
    p.add_argument("--rep", default="kc2-regular")
    p.add_argument("--r-matrix", help="catalog R-matrix for the t isomorphism")
    p = add("homotopies", cmd_verify_homotopies, "inner homotopy identities", vsub)
    p.add_argument("--case", default="point", choices=["point", "sign-line"])
    p.add_argument("--n-max", type=int, default=2)
    p = add("rewrite", cmd_verify_rewrite, "confluence and soundness of a presentation", vsub)
    p.add_argument("presentation", nargs="?", default="uq-su2")
    p.add_argument("--bound", type=int, default=6)
    p.add_argument("--samples", type=int, default=200)

    add("monopole", cmd_monopole, "the quantum monopole suite")
    p = add("pairing", cmd_pairing, "pair an invariant idempotent with a cyclic cocycle")
    p.add_argument("--idempotent", required=True, help="catalog name or JSON file")
    p.add_argument("--cocycle", help="cochain JSON file; omit to run the exhaustive pairing suite")
    p.add_argument("--periodic", action="store_true")
    p = add("cohomology", cmd_cohomology, "Hochschild and cyclic cohomology dimensions")
    _ha_flags(p)
    p.add_argument("--n-max", type=int, default=2)

    p = add("export", None, "export a catalog entry")
    p.add_argument("name")
    p.add_argument("--format", default="json", choices=["json"])
    cat = sub.add_parser("catalog", help="catalog operations")
    csub = cat.add_subparsers(dest="catalog_command", parser_class=_Parser)
    csub.required = True
    add("list", None, "list catalog entries", csub)
    return parser


def _print_human(report: dict, out) -> None:
    for c in report["checks"]:
        line = f"[{c['status']}] {c['id']}"
        if "degree" in c:
            line += f" (n={c['degree']})"
        if c["status"] in (FAIL, ERROR):
            extra = {k: c[k] for k in ("witness", "lhs", "rhs", "detail") if k in c}
            line += "  " + json.dumps(extra, ensure_ascii=False)
        print(line, file=out)
    n_pass = sum(c["status"] == PASS for c in report["checks"])
    print(f"{report['command']}: {n_pass}/{len(report['checks'])} checks pass ({report['timing_ms']} ms)", file=out)


def main(argv: Sequence[str] | None = None, out=None) -> int:
    out = out or sys.stdout
    argv = list(sys.argv[1:] if argv is None else argv)
    try:
        args = build_parser().parse_args(argv)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 2
    try:
        if args.command == "export":
            from .catalog import entry
            from .serialize import dumps

            try:
                e = entry(args.name)
            except KeyError as exc:
                raise UsageError(str(exc)) from exc
            print(dumps(e.payload), file=out)
            return 0
        if args.command == "catalog":
            from .catalog import catalog

            entries = catalog()
            if args.json:
                print(json.dumps([{"name": e.name, "kind": e.kind, "description": e.description} for e in entries], indent=2), file=out)
            else:
                for e in entries:
                    print(f"{e.name:32s} {e.kind:26s} {e.description}", file=out)
            return 0
        start = time.perf_counter()
        inputs, stages = args.func(args)
        checks, data = run_stages(stages, args.fail_fast)
        elapsed = int((time.perf_counter() - start) * 1000)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 2
    name = args.command if args.command != "verify" else f"verify {args.suite}"
    report = build_report(name, inputs, checks, data, elapsed)
    if args.json:
        print(json.dumps(report, indent=2, sort_keys=True, ensure_ascii=False), file=out)
    else:
        _print_human(report, out)
    return exit_code(checks)


def main_entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    main_entry()
