"""Command-line front end: data ingestion, dispatch to the engines, seeded
random-instance suites, and report emission.

Exit codes: 0 all verdicts pass, 1 a mathematical verdict failed (the
counterexample is in the report), 2 usage or input error.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import archeck, funcalc, fundseq, resolve, uct
from .errors import (
    HomstabError, HypothesisViolated, NotAComplex, NotWellDefined, SchemaError,
    UnknownSuite, UnsupportedRing, WrongShape, DimensionMismatch,
)
from .exactlin import RingDesc, ZZ, Zmod
from .fpmod import (
    FPModule, canonical_invariants, dual, hom_module, tensor_module, transpose,
)
from .instances import InstanceSpec
from .seqreport import SequenceReport
from .serialize import (
    parse_complex, parse_module, parse_morphism, serialize_module,
)
from .suites import SUITES, run_suite

USAGE_ERRORS = (SchemaError, NotWellDefined, NotAComplex, UnsupportedRing,
                HypothesisViolated, UnknownSuite, WrongShape,
                DimensionMismatch, FileNotFoundError, ValueError)


def parse_ring_flag(text: str) -> RingDesc:
    text = text.strip()
    if text in ("Z", "ZZ"):
        return ZZ
    for prefix in ("Z/", "Zmod", "Z%"):
        if text.startswith(prefix):
            return Zmod(int(text[len(prefix):]))
    raise SchemaError(f"cannot parse ring {text!r}; use Z or Z/n")


def load_doc(path: str):
    with open(path) as handle:
        return json.load(handle)


def load_module(path: str) -> FPModule:
    return parse_module(load_doc(path))


def format_invariants(m: FPModule) -> str:
    divisors, free = canonical_invariants(m)
    body = "[" + ", ".join(str(d) for d in divisors) + "]"
    if free:
        tag = "Z" if m.ring.modulus is None else f"Z/{m.ring.modulus}"
        body += f" + {tag}^{free}"
    return body


def parse_functor_spec(spec: str, half_exact: bool = False):
    """hom:M.json | homcontra:M.json | tensor:M.json | fp:f.json | tc:f.json
    | ext:M.json:i | tor:M.json:i"""
    parts = spec.split(":")
    kind = parts[0]
    if kind in ("hom", "homcontra", "tensor") and len(parts) == 2:
        m = load_module(parts[1])
        return {"hom": funcalc.HomCov, "homcontra": funcalc.HomContra,
                "tensor": funcalc.TensorLeft}[kind](m)
    if kind in ("fp", "tc") and len(parts) == 2:
        f = parse_morphism(load_doc(parts[1]))
        cls = funcalc.FP if kind == "fp" else funcalc.TC
        return cls(f, half_exact=half_exact)
    if kind in ("ext", "tor") and len(parts) == 3:
        m = load_module(parts[1])
        maker = funcalc.ExtFixedFirst if kind == "ext" else funcalc.TorFixedFirst
        return maker(m, int(parts[2]))
    raise SchemaError(f"cannot parse functor spec {spec!r}")


def report_to_json(rep: SequenceReport) -> dict:
    return {
        "nodes": [{"label": n.label, "kind": n.kind,
                   "invariants": format_invariants(n.module)}
                  for n in rep.nodes],
        "composite_zero": rep.composite_zero,
        "exact_at": rep.exact_at,
        "metadata": {k: v for k, v in rep.metadata.items()
                     if isinstance(v, (str, int, bool, type(None)))},
    }


def print_report(rep: SequenceReport, out):
    labels = " -> ".join(f"{n.label}{format_invariants(n.module)}"
                         for n in rep.nodes)
    print(labels, file=out)
    for line in rep.failures():
        print(f"  FAIL {line}", file=out)
    verdict = "exact" if rep.exact_everywhere() else (
        "complex (inexact nodes marked)" if rep.is_complex() else "NOT a complex")
    print(f"  verdict: {verdict}", file=out)
    for key, val in sorted(rep.metadata.items()):
        if key != "display":
            print(f"  {key}: {val}", file=out)


def emit(payload: dict, args, out):
    if args.json_out:
        with open(args.json_out, "w") as handle:
            json.dump(payload, handle, indent=2, sort_keys=True)
            handle.write("\n")


def _sequence_exit(rep: SequenceReport, expect: str = "exact") -> int:
    if expect == "exact":
        return 0 if rep.exact_everywhere() else 1
    if expect == "complex-away-from-derived":
        return 0 if rep.is_complex() and rep.exact_away_from("derived") else 1
    return 0


# ---------------------------------------------------------------------------
# command handlers


def cmd_module(args, out) -> int:
    m = load_module(args.module)
    if args.action == "show":
        print(f"{m} (gens {m.gens}, relations {m.rel.cols})", file=out)
        emit(serialize_module(m), args, out)
        return 0
    if args.action == "invariants":
        print(format_invariants(m), file=out)
        emit({"invariants": format_invariants(m)}, args, out)
        return 0
    if args.action == "dual":
        result = dual(m)
    elif args.action == "transpose":
        result = transpose(m)
    elif args.action == "hom":
        result = hom_module(m, load_module(args.other)).module
    elif args.action == "tensor":
        result = tensor_module(m, load_module(args.other)).module
    else:
        raise SchemaError(f"unknown module action {args.action}")
    print(format_invariants(result), file=out)
    emit(serialize_module(result), args, out)
    return 0


def cmd_resolve(args, out) -> int:
    if args.action in ("ext", "tor"):
        a = load_module(args.A)
        b = load_module(args.B)
        fn = resolve.ext if args.action == "ext" else resolve.tor
        result = fn(a, b, args.i)
        print(format_invariants(result), file=out)
        emit(serialize_module(result), args, out)
        return 0
    m = load_module(args.module)
    if args.action == "proj":
        res = resolve.proj_resolution(m, args.depth)
        for k, t in enumerate(res.terms):
            print(f"P_{k}: {format_invariants(t)}", file=out)
        emit({"terms": [serialize_module(t) for t in res.terms]}, args, out)
        return 0
    if args.action == "inj":
        res = resolve.inj_resolution(m, args.depth)
        for k, t in enumerate(res.terms):
            print(f"I^{k}: {format_invariants(t)}", file=out)
        emit({"terms": [serialize_module(t) for t in res.terms]}, args, out)
        return 0
    if args.action == "syzygy":
        result = resolve.syzygy(m, args.k)
    elif args.action == "cosyzygy":
        result = resolve.cosyzygy(m, args.k)
    else:
        raise SchemaError(f"unknown resolve action {args.action}")
    print(format_invariants(result), file=out)
    emit(serialize_module(result), args, out)
    return 0


def cmd_functor(args, out) -> int:
    if args.action == "fourterm":
        rep = funcalc.auslander_four_term(load_module(args.A),
                                          load_module(args.X), args.which)
        print_report(rep, out)
        emit(report_to_json(rep), args, out)
        return _sequence_exit(rep)
    if args.action == "torsionradical":
        rad, _ = funcalc.torsion_radical(load_module(args.A))
        print(format_invariants(rad), file=out)
        emit(serialize_module(rad), args, out)
        return 0
    expr = parse_functor_spec(args.functor, half_exact=args.half_exact)
    if args.action == "defect":
        result = funcalc.defect(expr)
    elif args.action == "eval":
        result = expr.eval_obj(load_module(args.at))
    elif args.action == "substab":
        result = funcalc.sub_stabilize(expr, load_module(args.at))[0]
    elif args.action == "quotstab":
        result = funcalc.quot_stabilize(expr, load_module(args.at))[0]
    elif args.action == "satellite":
        result = funcalc.satellite(expr, args.i, args.side, load_module(args.at))
    elif args.action == "derived":
        result = funcalc.derived_eval(expr, args.i, args.side,
                                      load_module(args.at))
    else:
        raise SchemaError(f"unknown functor action {args.action}")
    print(format_invariants(result), file=out)
    emit(serialize_module(result), args, out)
    return 0


def cmd_seq(args, out) -> int:
    if args.action == "circular":
        rep = fundseq.circular_sequence(parse_morphism(load_doc(args.f)),
                                        parse_morphism(load_doc(args.g)))
        print_report(rep, out)
        emit(report_to_json(rep), args, out)
        return _sequence_exit(rep)
    if args.action == "split":
        i = parse_morphism(load_doc(args.f))
        p = parse_morphism(load_doc(args.g))
        rep = fundseq.short_exact(i, p)
        ok, _ = fundseq.splitting_test(rep)
        print(f"split: {ok}", file=out)
        emit({"split": ok}, args, out)
        return 0 if ok else 1
    if args.action == "hereditary":
        expr = parse_functor_spec(args.functor, half_exact=True)
        spec = InstanceSpec(args.seed, ZZ, args.gens, args.rels, args.entries,
                            args.samples)
        rng = spec.rng()
        from .instances import random_module
        xs = [random_module(rng, ZZ, spec.max_gens, spec.max_rels,
                            spec.max_entry) for _ in range(args.samples)]
        dec = fundseq.hereditary_decomposition(expr, xs)
        ok = dec.all_ok()
        print(f"w(F): {format_invariants(dec.w)}; decomposition ok: {ok}",
              file=out)
        emit({"ok": ok, "w": serialize_module(dec.w)}, args, out)
        return 0 if ok else 1
    expr = parse_functor_spec(args.functor, half_exact=args.half_exact)
    b = load_module(args.b)
    if args.action == "right-cov":
        rep = fundseq.right_fund_cov(expr, b, args.depth)
    elif args.action == "left-cov":
        rep = fundseq.left_fund_cov(expr, b, args.depth)
    elif args.action == "contra-right":
        rep = fundseq.contra_fund(expr, b, args.depth, "right")
    elif args.action == "contra-left":
        rep = fundseq.contra_fund(expr, b, args.depth, "left")
    else:
        raise SchemaError(f"unknown seq action {args.action}")
    print_report(rep, out)
    emit(report_to_json(rep), args, out)
    expect = "exact" if expr.half_exact else "complex-away-from-derived"
    return _sequence_exit(rep, expect)


def cmd_uct(args, out) -> int:
    c = parse_complex(load_doc(args.C))
    b = load_module(args.B)
    if args.action == "classical":
        rep = uct.uct_classical(c, b, args.n, args.which)
        print_report(rep, out)
        emit(report_to_json(rep), args, out)
        split_ok = rep.metadata.get("split", False)
        return 0 if rep.exact_everywhere() and split_ok else 1
    if args.action == "general":
        rep = uct.uct_general(c, b, args.n, args.depth, args.which)
        print_report(rep, out)
        emit(report_to_json(rep), args, out)
        return _sequence_exit(rep, "complex-away-from-derived")
    if args.action in ("projective", "flat"):
        which = "cohomology" if args.action == "projective" else "homology"
        rep = uct.uct_special(c, b, args.n, args.depth, which)
        print_report(rep, out)
        emit(report_to_json(rep), args, out)
        metadata_ok = all(v for k, v in rep.metadata.items()
                          if k.endswith("_iso"))
        return 0 if rep.exact_everywhere() and metadata_ok else 1
    if args.action == "delta-checks":
        checks = uct.delta_functor_checks(c, b, args.n)
        for key, val in sorted(checks.items()):
            print(f"{key}: {val}", file=out)
        emit(checks, args, out)
        return 0 if all(checks.values()) else 1
    raise SchemaError(f"unknown uct action {args.action}")


def cmd_ar(args, out) -> int:
    if args.action == "formula":
        result = archeck.ar_formula_check(load_module(args.A),
                                          load_module(args.B))
        print(f"lhs {format_invariants(result['lhs'])} "
              f"rhs {format_invariants(result['rhs'])} "
              f"verdict {result['verdict']}", file=out)
        emit({"verdict": result["verdict"]}, args, out)
        return 0 if result["verdict"] else 1
    if args.action == "adjunction":
        result = archeck.stab_adjunction_check(load_module(args.A),
                                               load_module(args.B), args.side)
        print(f"verdict {result['verdict']}", file=out)
        emit({"verdict": result["verdict"]}, args, out)
        return 0 if result["verdict"] else 1
    if args.action == "bidual":
        rep = archeck.bidual_check(load_module(args.A))
        print_report(rep, out)
        emit(report_to_json(rep), args, out)
        return _sequence_exit(rep)
    raise SchemaError(f"unknown ar action {args.action}")


def cmd_suite(args, out) -> int:
    if args.action == "list":
        for name in sorted(SUITES):
            print(name, file=out)
        return 0
    spec = InstanceSpec(seed=args.seed, ring=parse_ring_flag(args.ring),
                        max_gens=args.gens, max_rels=args.rels,
                        max_entry=args.entries, count=args.count)
    report = run_suite(args.name, spec, workers=args.workers)
    print(report.summary(), file=out)
    for warning in report.warnings:
        print(f"  warning: {warning}", file=out)
    for failure in report.failures[:3]:
        print(f"  counterexample at index {failure['index']}: "
              f"{failure['node']}", file=out)
    emit(report.to_json(), args, out)
    return 0 if report.ok else 1


# ---------------------------------------------------------------------------
# argument parsing


def _common_flags() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json-out", metavar="PATH", default=argparse.SUPPRESS,
                        help="write a machine-readable report to PATH")
    common.add_argument("--ring", default=argparse.SUPPRESS,
                        help="base ring: Z or Z/n")
    common.add_argument("--seed", type=int, default=argparse.SUPPRESS)
    common.add_argument("--depth", type=int, default=argparse.SUPPRESS)
    common.add_argument("--samples", type=int, default=argparse.SUPPRESS)
    return common


_GLOBAL_DEFAULTS = {"json_out": None, "ring": "Z", "seed": 0, "depth": 4,
                    "samples": 5}


def build_parser() -> argparse.ArgumentParser:
    common = _common_flags()
    parser = argparse.ArgumentParser(
        prog="fundseq", parents=[common],
        description="Exact homological algebra workbench over Z and Z/n: "
                    "modules, resolutions, functor stabilizations, "
                    "fundamental sequences, universal coefficient theorems.")
    sub = parser.add_subparsers(dest="group", required=True)

    p = sub.add_parser("module", help="module-level constructions",
                       parents=[common])
    p.add_argument("action", choices=["show", "invariants", "dual",
                                      "transpose", "hom", "tensor"])
    p.add_argument("module")
    p.add_argument("other", nargs="?")

    p = sub.add_parser("resolve", help="resolutions, syzygies, Ext/Tor",
                       parents=[common])
    p.add_argument("action", choices=["proj", "inj", "syzygy", "cosyzygy",
                                      "ext", "tor"])
    p.add_argument("module", nargs="?")
    p.add_argument("--A")
    p.add_argument("--B")
    p.add_argument("--i", type=int, default=1)
    p.add_argument("--k", type=int, default=1)

    p = sub.add_parser("functor", help="functor calculus",
                       parents=[common])
    p.add_argument("action", choices=["eval", "substab", "quotstab",
                                      "satellite", "derived", "defect",
                                      "fourterm", "torsionradical"])
    p.add_argument("--functor", help="hom:M.json | tensor:M.json | "
                                     "homcontra:M.json | fp:f.json | tc:f.json "
                                     "| ext:M.json:i | tor:M.json:i")
    p.add_argument("--at", help="module file to evaluate at")
    p.add_argument("--i", type=int, default=1)
    p.add_argument("--side", choices=["right", "left"], default="right")
    p.add_argument("--A")
    p.add_argument("--X")
    p.add_argument("--which", choices=["tensor", "hom"], default="tensor")
    p.add_argument("--half-exact", action="store_true",
                   help="declare the functor half-exact (caller's assertion)")

    p = sub.add_parser("seq", help="circular and fundamental sequences",
                       parents=[common])
    p.add_argument("action", choices=["circular", "right-cov", "left-cov",
                                      "contra-right", "contra-left", "split",
                                      "hereditary"])
    p.add_argument("--f", help="morphism file")
    p.add_argument("--g", help="morphism file")
    p.add_argument("--functor")
    p.add_argument("--b", help="module file to evaluate at")
    p.add_argument("--half-exact", action="store_true")
    p.add_argument("--gens", type=int, default=3)
    p.add_argument("--rels", type=int, default=3)
    p.add_argument("--entries", type=int, default=6)

    p = sub.add_parser("uct", help="universal coefficient theorems",
                       parents=[common])
    p.add_argument("action", choices=["classical", "general", "projective",
                                      "flat", "delta-checks"])
    p.add_argument("--C", required=True, help="complex file")
    p.add_argument("--B", required=True, help="coefficient module file")
    p.add_argument("--n", type=int, default=1)
    p.add_argument("--which", choices=["cohomology", "homology"],
                   default="cohomology")

    p = sub.add_parser("ar", help="duality and adjunction checks",
                       parents=[common])
    p.add_argument("action", choices=["formula", "adjunction", "bidual"])
    p.add_argument("--A", required=True)
    p.add_argument("--B")
    p.add_argument("--side", choices=["right", "left"], default="right")

    p = sub.add_parser("suite", help="named property suites",
                       parents=[common])
    p.add_argument("action", choices=["run", "list"])
    p.add_argument("name", nargs="?")
    p.add_argument("--count", type=int, default=100)
    p.add_argument("--gens", type=int, default=4)
    p.add_argument("--rels", type=int, default=4)
    p.add_argument("--entries", type=int, default=8)
    p.add_argument("--workers", type=int, default=1)
    return parser


ALIASES = {"ext": ["resolve", "ext"], "tor": ["resolve", "tor"],
           "check": ["seq"]}


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    for i, token in enumerate(argv):
        if token.startswith("-"):
            continue
        if token in ALIASES:
            argv[i:i + 1] = ALIASES[token]
        break
    parser = build_parser()
    args = parser.parse_args(argv)
    for key, value in _GLOBAL_DEFAULTS.items():
        if not hasattr(args, key):
            setattr(args, key, value)
    out = sys.stdout
    handlers = {"module": cmd_module, "resolve": cmd_resolve,
                "functor": cmd_functor, "seq": cmd_seq, "uct": cmd_uct,
                "ar": cmd_ar, "suite": cmd_suite}
    try:
        return handlers[args.group](args, out)
    except USAGE_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except HomstabError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
