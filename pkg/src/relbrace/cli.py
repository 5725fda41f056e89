"""Command line front end.

Every subcommand prints a JSON report (or a plain table with ``--table``),
optionally writes it to ``--output``, and exits 0 when every check passes,
1 when a verification fails and 2 on usage errors.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from . import __version__
from .trees import Signature, TreeError, parse

SCHEMA = "relbrace-report/1"


class UsageError(Exception):
    pass


def _max_inputs(value: int | None, default: int) -> int:
    if value is not None:
        return value
    env = os.environ.get("RBR_MAX_INPUTS")
    if env:
        try:
            return int(env)
        except ValueError:
            raise UsageError(f"RBR_MAX_INPUTS={env!r} is not an integer") from None
    return default


def _element(args, prefix: str = ""):
    sig = getattr(args, prefix + "sig")
    tree = getattr(args, prefix + "tree")
    if sig is None or tree is None:
        raise UsageError(f"--{prefix}sig and --{prefix}tree are required")
    return parse(tree, sig)


def _action(args):
    from .hochschild.algebra import bundled, load_algebra

    if args.input and args.example:
        raise UsageError("give either --input or --example")
    if args.input:
        return load_algebra(args.input, p=args.p)
    return bundled(args.example or "dual_numbers", args.p)


# ---------------------------------------------------------------- commands


def cmd_basis(args):
    from . import rbr, rs

    sig = Signature.parse(args.sig)
    enum = rbr.enumerate_basis if args.operad == "rbr" else rs.enumerate_basis_rs
    elems = enum(sig, args.degree, args.convention)
    rows = [{"element": e.encode(), "degree": e.degree(args.convention)} for e in elems]
    return True, {"operad": args.operad, "signature": str(sig), "count": len(rows), "elements": rows}


def _operad_diff(operad):
    from . import rbr, rs

    return rbr.differential if operad == "rbr" else rs.differential_rs


def cmd_diff(args):
    e = _element(args)
    d = _operad_diff(args.operad)(e)
    return True, {"operad": args.operad, "element": e.encode(), "signature": str(e.sig), "differential": d.to_json()}


def cmd_compose(args):
    from . import rbr, rs

    a = _element(args, "a_")
    b = _element(args, "b_")
    fn = rbr.compose_at if args.operad == "rbr" else rs.compose_rs
    try:
        r = fn(a, args.slot, b)
    except (TreeError, ValueError) as exc:
        raise UsageError(str(exc)) from None
    sig = r.sig
    return True, {"operad": args.operad, "slot": args.slot, "signature": str(sig) if sig else None, "result": r.to_json()}


def cmd_d2check(args):
    from . import rbr, rs

    k = _max_inputs(args.max_inputs, 3)
    bad, count = [], 0
    for sig in rbr.all_signatures(k):
        if args.operad == "rbr":
            elems, d = rbr.enumerate_basis(sig), rbr.differential
        else:
            elems, d = rs.enumerate_basis_rs(sig), rs.differential_rs
        for e in elems:
            count += 1
            dd = d(d(e))
            if dd and len(bad) < 5:
                bad.append({"signature": str(sig), "element": e.encode(), "dd": dd.to_json()})
    return not bad, {"operad": args.operad, "max_inputs": k, "checked": count, "failures": bad}


def cmd_phi(args):
    from . import rs

    e = _element(args)
    return True, {"element": e.encode(), "signature": str(e.sig), "image": rs.project(e).to_json()}


def cmd_homology(args):
    from .homology import boundary_matrices, homology_of

    sig = Signature.parse(args.sig)
    h = homology_of(boundary_matrices(args.operad, sig, args.convention))
    return True, {"operad": args.operad, "signature": str(sig), "convention": args.convention, "homology": h.to_json()}


def cmd_compare(args):
    from .homology import compare_homology

    sig = Signature.parse(args.sig)
    c = compare_homology(sig, args.convention)
    return c.equal and c.phi_iso, c.to_json()


def cmd_poset(args):
    from .posets import face_poset

    e = _element(args)
    fp = face_poset(e, quotient=args.quotient)
    return True, {"top": e.encode(), "signature": str(e.sig), "quotient": args.quotient, **fp.to_json()}


def cmd_cells(args):
    from .homology import homology_of
    from .posets import DownSet, Theta, ThetaInf, cell_complex, is_contractible

    e = _element(args)
    kind = {"downset": DownSet, "theta": Theta, "theta-inf": ThetaInf}[args.kind]
    c = cell_complex(kind(e))
    ok = is_contractible(c)
    return ok, {"cell": args.kind, "element": e.encode(), "cells": sum(c.rank(k) for k in c.degrees()), "homology": homology_of(c).to_json(), "contractible": ok}


def cmd_hochschild(args):
    from .hochschild.classical import cohomology_dims, bimodule

    act = _action(args)
    M = bimodule(act, args.coefficients)
    dims = cohomology_dims(M, args.max_degree, normalized=args.method == "normalized")
    return True, {
        "algebra": act.name,
        "field": str(act.field),
        "coefficients": args.coefficients,
        "method": args.method,
        "dims": {str(k): v for k, v in sorted(dims.items())},
    }


def cmd_mc_check(args):
    from .hochschild.algebra import validate_affine_action
    from .hochschild.cochains import mc_check, mc_element

    act = _action(args)
    v = validate_affine_action(act)
    m = mc_check(mc_element(act, args.N))
    return v.ok and m.ok, {"algebra": act.name, "field": str(act.field), "N": args.N, "action": v.to_json(), "maurer_cartan": m.to_json()}


def cmd_braces_check(args):
    from .hochschild.braces import verify_appendix_relations

    act = _action(args)
    k = _max_inputs(args.max_inputs, 4)
    r = verify_appendix_relations(act, samples=args.samples, seed=args.seed, max_inputs=k, N=args.N)
    return r.ok, {"algebra": act.name, **r.to_json()}


def cmd_koszul_check(args):
    from .hochschild.koszul import koszul_confluence_check

    r = koszul_confluence_check()
    return r.ok, r.to_json()


COMMANDS = {
    "basis": cmd_basis,
    "diff": cmd_diff,
    "compose": cmd_compose,
    "d2check": cmd_d2check,
    "phi": cmd_phi,
    "homology": cmd_homology,
    "compare": cmd_compare,
    "poset": cmd_poset,
    "cells": cmd_cells,
    "hochschild": cmd_hochschild,
    "mc-check": cmd_mc_check,
    "braces-check": cmd_braces_check,
    "koszul-check": cmd_koszul_check,
}


# ---------------------------------------------------------------- parser and output


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="relbrace", description="Relative brace operad workbench.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp):
        out = sp.add_mutually_exclusive_group()
        out.add_argument("--json", dest="fmt", action="store_const", const="json", help="JSON report (default)")
        out.add_argument("--table", dest="fmt", action="store_const", const="table", help="plain text table")
        sp.add_argument("--output", "-o", help="also write the report to this path")
        sp.set_defaults(fmt="json")

    def operad(sp):
        sp.add_argument("--operad", choices=("rbr", "rs"), default="rbr")

    def grading(sp):
        sp.add_argument("--convention", choices=("lambda", "standard"), default="standard")

    def element(sp, prefix=""):
        sp.add_argument(f"--{prefix}sig".replace("_", "-"), dest=f"{prefix}sig", help="signature such as 'cc;c'")
        sp.add_argument(f"--{prefix}tree".replace("_", "-"), dest=f"{prefix}tree", help="tree word such as '(n c1 c2)'")

    def algebra(sp):
        sp.add_argument("--input", "-i", help="algebra/action JSON file")
        sp.add_argument("--example", help="bundled example name")
        sp.add_argument("--p", type=int, default=None, help="prime field override (0 for the rationals)")

    s = sub.add_parser("basis", help="enumerate a basis")
    operad(s)
    s.add_argument("--sig", required=True)
    s.add_argument("--degree", type=int)
    grading(s)
    common(s)

    s = sub.add_parser("diff", help="differential of a basis element")
    operad(s)
    element(s)
    common(s)

    s = sub.add_parser("compose", help="partial composition a o_slot b")
    operad(s)
    element(s, "a_")
    element(s, "b_")
    s.add_argument("--slot", type=int, required=True)
    common(s)

    s = sub.add_parser("d2check", help="exhaustive d^2 = 0")
    operad(s)
    s.add_argument("--max-inputs", type=int)
    common(s)

    s = sub.add_parser("phi", help="image in the surjection quotient")
    element(s)
    common(s)

    s = sub.add_parser("homology", help="integral homology of one arity component")
    operad(s)
    s.add_argument("--sig", required=True)
    grading(s)
    common(s)

    s = sub.add_parser("compare", help="compare rbr and rs homology and test the projection")
    s.add_argument("--sig", required=True)
    grading(s)
    common(s)

    s = sub.add_parser("poset", help="face poset below a tree")
    element(s)
    s.add_argument("--quotient", action="store_true", help="use the quotient order")
    common(s)

    s = sub.add_parser("cells", help="homology of a cell")
    element(s)
    s.add_argument("--kind", choices=("downset", "theta", "theta-inf"), default="theta")
    common(s)

    s = sub.add_parser("hochschild", help="Hochschild cohomology dimensions")
    algebra(s)
    s.add_argument("--coefficients", choices=("A", "EndPlus"), default="A")
    s.add_argument("--max-degree", type=int, default=4)
    s.add_argument("--method", choices=("classical", "normalized"), default="classical")
    common(s)

    s = sub.add_parser("mc-check", help="validate an action and its Maurer-Cartan element")
    algebra(s)
    s.add_argument("--N", type=int, default=5, help="truncation bound")
    common(s)

    s = sub.add_parser("braces-check", help="chain-map law of the brace action on random arguments")
    algebra(s)
    s.add_argument("--samples", type=int, default=100)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--max-inputs", type=int)
    s.add_argument("--N", type=int, default=5)
    common(s)

    s = sub.add_parser("koszul-check", help="confluence of the three critical pairs")
    common(s)
    return p


def _json_default(x):
    if hasattr(x, "to_json"):
        return x.to_json()
    if hasattr(x, "item"):
        return x.item()
    return str(x)


def render_json(report: dict) -> str:
    return json.dumps(report, sort_keys=True, indent=2, default=_json_default) + "\n"


def render_table(report: dict) -> str:
    lines = []

    def walk(prefix, val):
        if isinstance(val, dict):
            for k in val:
                walk(f"{prefix}.{k}" if prefix else str(k), val[k])
        elif isinstance(val, list) and val and all(isinstance(v, dict) for v in val):
            for i, v in enumerate(val):
                walk(f"{prefix}[{i}]", v)
        else:
            lines.append(f"{prefix.replace('_', ' ')}: {json.dumps(val, default=_json_default)}")

    walk("", report)
    return "\n".join(lines) + "\n"


def run(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    from .hochschild.algebra import ActionError

    try:
        ok, result = COMMANDS[args.command](args)
    except UsageError as exc:
        parser.error(str(exc))
    except TreeError as exc:
        print(f"relbrace: error: {exc}", file=sys.stderr)
        return 2
    except ActionError as exc:
        print(f"relbrace: error: {exc}", file=sys.stderr)
        return 2 if exc.law == "schema" else 1
    report = {"schema": SCHEMA, "command": args.command, "ok": bool(ok), "result": result}
    text = render_table({"ok": bool(ok), **result}) if args.fmt == "table" else render_json(report)
    sys.stdout.write(text)
    if args.output:
        Path(args.output).write_text(render_json(report))
    return 0 if ok else 1


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
