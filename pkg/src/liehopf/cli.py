"""Command-line front end.

Exit codes: 0 success, 1 a verification or law check failed, 2 bad input,
3 unsupported mode.
"""

from __future__ import annotations

import argparse
import json
import sys

from .envelope import ModeError, validate_pmap
from .freeprod import FreeProduct
from .hopf import coproduct, is_primitive
from .liealg import LiePresentation, validate_presentation
from .parser import evaluate_text
from .properties import check_laws
from .theorems import adjoin_closure, verify_derivations, verify_endomorphisms

EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_MODE = 0, 1, 2, 3


class InputError(Exception):
    pass


def _common() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "text"), default="text")
    common.add_argument("--mode", choices=("full", "restricted"), default=None,
                        help="default: restricted when the presentation has a p-map")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--parallel", type=int, default=1, metavar="N", help="worker cap")
    common.add_argument("--timing", action="store_true", help="include wall times in reports")
    return common


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    parser = argparse.ArgumentParser(prog="liehopf", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", parents=[common], help="check Lie and restricted axioms")
    p.add_argument("file")
    for name, help_ in (("nf", "normal form of an expression"),
                        ("primitive", "primitivity test with witness")):
        p = sub.add_parser(name, parents=[common], help=help_)
        p.add_argument("file")
        p.add_argument("expr")
    p = sub.add_parser("coprod", parents=[common], help="coproduct of an expression")
    p.add_argument("file")
    p.add_argument("expr")
    p.add_argument("--degree", type=int, default=None)
    p = sub.add_parser("derivations", parents=[common], help="universal derivatives are L")
    p.add_argument("file")
    p.add_argument("--degree", type=int, required=True)
    p.add_argument("--expect", action="append", default=[], metavar="EXPR",
                   help="extra element claimed to be a universal derivative (negative control)")
    p = sub.add_parser("endos", parents=[common], help="universal endomorphisms are 0 and id")
    p.add_argument("file")
    p.add_argument("--degree", type=int, required=True)
    p.add_argument("--no-scan", action="store_true", help="skip the exhaustive F_p pair scan")
    p = sub.add_parser("closure", parents=[common], help="Lie subalgebra generated by L and x")
    p.add_argument("file")
    p.add_argument("--degree", type=int, required=True)
    p = sub.add_parser("props", parents=[common], help="randomized algebraic law checks")
    p.add_argument("file")
    p.add_argument("--samples", type=int, default=100)
    return parser


def _load(args, validate: bool = True) -> FreeProduct:
    try:
        P = LiePresentation.load(args.file)
    except OSError as exc:
        raise InputError(f"cannot read {args.file}: {exc.strerror or exc}") from None
    if validate:
        report = validate_presentation(P)
        if not report.ok:
            raise InputError(f"{args.file}: presentation fails the Lie axioms: "
                             + json.dumps(report.violations))
    A = FreeProduct.of(P, args.mode)
    if validate and A.mode == "restricted":
        report = validate_pmap(P)
        if not report.ok:
            raise InputError(f"{args.file}: p-map fails the restricted axioms: "
                             + json.dumps(report.violations))
    return A


def _degree(args):
    if args.degree is not None and args.degree < 0:
        raise InputError("--degree must be non-negative")
    return args.degree


def _emit(args, doc: dict, text: str, out) -> None:
    if args.format == "json":
        out.write(json.dumps(doc, indent=2) + "\n")
    else:
        out.write(text.rstrip("\n") + "\n")


def cmd_validate(args, out) -> int:
    P = LiePresentation.load(args.file)
    report = validate_presentation(P)
    doc = {"file": args.file, "lie": report.to_dict()}
    ok = report.ok
    lines = [f"{args.file}: Lie axioms {'ok' if report.ok else 'FAILED'}"]
    lines += [f"  {v['kind']}: {v.get('triple') or v.get('pair')} {v.get('value', v.get('reason', ''))}"
              for v in report.violations]
    if P.pmap is not None and args.mode != "full":
        pm = validate_pmap(P)
        doc["pmap"] = pm.to_dict()
        ok = ok and pm.ok
        lines.append(f"  p-map {'ok' if pm.ok else 'FAILED'}")
        lines += [f"  {v['kind']}: " + ", ".join(f"{k}={v[k]}" for k in v if k != "kind")
                  for v in pm.violations]
        lines += [f"  info: {i}" for i in pm.info]
    doc["ok"] = ok
    _emit(args, doc, "\n".join(lines), out)
    return EXIT_OK if ok else EXIT_INPUT


def cmd_nf(args, out) -> int:
    A = _load(args)
    a = evaluate_text(args.expr, A)
    _emit(args, {"expression": A.format(a), "terms": A.serialize(a)}, A.format(a), out)
    return EXIT_OK


def cmd_coprod(args, out) -> int:
    A = _load(args)
    a = evaluate_text(args.expr, A)
    try:
        t = coproduct(a, _degree(args))
    except ValueError as exc:
        raise InputError(str(exc)) from None
    text = "\n".join(t.format_term(k, c) for k, c in t.sorted_terms()) or "0"
    _emit(args, {"expression": A.format(a), "coproduct": t.serialize()}, text, out)
    return EXIT_OK


def cmd_primitive(args, out) -> int:
    A = _load(args)
    a = evaluate_text(args.expr, A)
    ok, term = is_primitive(a)
    doc = {"expression": A.format(a), "primitive": ok, "witness": None}
    text = "true" if ok else "false"
    if term is not None:
        u, v, c = term
        doc["witness"] = {"left": A.format_word(u), "right": A.format_word(v),
                          "coeff": A.field.format(c)}
        text += f"  witness {A.field.format(c)}*({A.expression_word(u)} (x) {A.expression_word(v)})"
    _emit(args, doc, text, out)
    return EXIT_OK


def cmd_derivations(args, out) -> int:
    A = _load(args)
    extra = []
    for src in args.expect:
        el = evaluate_text(src, A)
        if not A.is_x_free(el):
            raise InputError(f"--expect {src!r} involves x")
        extra.append(A.env.element({(w[0][1] if w else A.env.identity_monomial): c
                                    for w, c in el.terms.items()}))
    report = verify_derivations(A, _degree(args), args.parallel, extra)
    _emit(args, report.to_dict(args.timing), report.to_text(args.timing), out)
    return EXIT_OK if report.passed else EXIT_FAIL


def cmd_endos(args, out) -> int:
    A = _load(args)
    report = verify_endomorphisms(A, _degree(args), args.parallel, scan=not args.no_scan)
    _emit(args, report.to_dict(args.timing), report.to_text(args.timing), out)
    return EXIT_OK if report.passed else EXIT_FAIL


def cmd_closure(args, out) -> int:
    A = _load(args)
    d = _degree(args)
    if d < 1:
        raise InputError("--degree must be at least 1")
    closure = adjoin_closure(A, d)
    profile = closure.degree_profile()
    doc = {"degree": d, "dimension": closure.dim,
           "by_degree": {str(k): v for k, v in profile.items()},
           "basis": [A.format(e) for e in closure.elements]}
    text = [f"closure of L and x up to degree {d}: dimension {closure.dim}"]
    text += [f"  degree {k}: {v}" for k, v in profile.items()]
    _emit(args, doc, "\n".join(text), out)
    return EXIT_OK


def cmd_props(args, out) -> int:
    A = _load(args)
    if args.samples < 1:
        raise InputError("--samples must be positive")
    results = check_laws(A, args.samples, args.seed)
    doc = {"seed": args.seed, "samples": args.samples,
           "laws": [{"name": r.name, "cases": r.cases, "failures": len(r.failures),
                     "first_failure": list(r.failures[0]) if r.failures else None}
                    for r in results]}
    text = "\n".join(f"[{'ok  ' if r.passed else 'FAIL'}] {r.name}: {r.cases} cases, "
                     f"{len(r.failures)} failures" for r in results)
    _emit(args, doc, text, out)
    return EXIT_OK if all(r.passed for r in results) else EXIT_FAIL


COMMANDS = {
    "validate": cmd_validate, "nf": cmd_nf, "coprod": cmd_coprod, "primitive": cmd_primitive,
    "derivations": cmd_derivations, "endos": cmd_endos, "closure": cmd_closure, "props": cmd_props,
}


def run(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    if args.parallel < 1:
        err.write("error: --parallel must be at least 1\n")
        return EXIT_INPUT
    try:
        return COMMANDS[args.command](args, out)
    except ModeError as exc:
        err.write(f"unsupported mode: {exc}\n")
        return EXIT_MODE
    except (InputError, ValueError) as exc:
        err.write(f"error: {exc}\n")
        return EXIT_INPUT
    except OSError as exc:
        err.write(f"error: {exc}\n")
        return EXIT_INPUT


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
