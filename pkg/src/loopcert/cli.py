"""Command-line front end: run named certificate suites, dump generator
families, and emit deterministic human-readable or JSON reports.

Exit status is 0 iff every check in the job passed.  Rationals are parsed
and serialized as "p/q" strings; no floats enter any computation.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from typing import List, Optional

from . import certify
from .errors import LoopcertError
from .liealg import LieAlgebraData, load_config, preset


def _parse_list(spec: str) -> List[str]:
    return [s for s in spec.split(",") if s]


def _resolve_algebra(spec: str) -> LieAlgebraData:
    if spec.endswith(".json") or os.path.sep in spec:
        return load_config(spec)
    return preset(spec)


def _bounded(value: int, lo: int, hi: int, what: str) -> int:
    if not (lo <= value <= hi):
        raise LoopcertError(f"{what} = {value} outside documented bounds [{lo}, {hi}]")
    return value


def _gl_size(name: str) -> int:
    if not name.startswith("gl") or not name[2:].isdigit():
        raise LoopcertError(f"this suite needs a gl_n preset, got {name!r}")
    return int(name[2:])


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="loopcert",
        description="Exact certificates for commutative subalgebra families "
                    "of loop algebras and Yangians.")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", metavar="PATH", default=None,
                        help="write the JSON report to PATH ('-' for stdout)")
    sub = ap.add_subparsers(dest="command", required=True)

    def add(name, help_):
        return sub.add_parser(name, help=help_, parents=[common])

    p = add("verify-rtt", "certify the RTT defining relation")
    p.add_argument("--n", type=int, default=2)
    p.add_argument("--order", type=int, default=4)

    p = add("verify-bethe", "pairwise commutators of tau_k^(s)")
    p.add_argument("--algebra", default="gl2")
    p.add_argument("--C", required=True, help="diagonal entries, e.g. 1,2")
    p.add_argument("--max-deg", type=int, default=4)
    p.add_argument("--workers", type=int, default=None)

    p = add("verify-gaudin", "bihamiltonian commutativity of D^k Phi_i")
    p.add_argument("--algebra", default="sl2")
    p.add_argument("--kmax", type=int, default=3)

    p = add("verify-soa", "shift-of-argument family checks")
    p.add_argument("--algebra", default="sl3")
    p.add_argument("--chi", required=True, help="diagonal entries of chi")
    p.add_argument("--seed", type=int, default=0)

    p = add("verify-talalaev", "cdet coefficients: commutativity and spans")
    p.add_argument("--n", type=int, default=2)
    p.add_argument("--R", type=int, default=3)
    p.add_argument("--max-deg", type=int, default=4)

    p = add("gr", "associated-graded comparisons")
    p.add_argument("--comparison", choices=["theorem-A", "centralizer"],
                   default="theorem-A")
    p.add_argument("--algebra", default="gl2")
    p.add_argument("--C", default=None, help="diagonal entries (theorem-A)")
    p.add_argument("--max-deg", type=int, default=4)

    p = add("poincare", "graded component dimensions")
    p.add_argument("--family", choices=["bethe", "gr1"], default="bethe")
    p.add_argument("--algebra", default="gl2")
    p.add_argument("--C", default=None)
    p.add_argument("--cutoff", type=int, default=4)

    p = add("limit", "eps->0 limit of Bethe along C0 exp(eps chi)")
    p.add_argument("--algebra", default="gl3")
    p.add_argument("--C0", required=True)
    p.add_argument("--chi", required=True)
    p.add_argument("--deg", type=int, default=3)
    p.add_argument("--compare", choices=["product"], default="product")
    p.add_argument("--eps-cap", type=int, default=8)

    p = add("eval-gaudin", "Gaudin evaluation into U(g)^{x n}")
    p.add_argument("--algebra", default="sl2")
    p.add_argument("--z", required=True, help="distinct rational points")
    p.add_argument("--kmax", type=int, default=5)

    p = add("gens", "dump a generator family")
    p.add_argument("--family", required=True,
                   choices=["bethe", "classical-bethe", "gaudin", "soa", "talalaev"])
    p.add_argument("--algebra", default="gl2")
    p.add_argument("--C", default=None)
    p.add_argument("--chi", default=None)
    p.add_argument("--n", type=int, default=2)
    p.add_argument("--R", type=int, default=3)
    p.add_argument("--max-deg", type=int, default=3)
    return ap


def run(args: argparse.Namespace) -> certify.Report:
    cmd = args.command
    if cmd == "verify-rtt":
        return certify.verify_rtt(_bounded(args.n, 1, 3, "n"),
                                  _bounded(args.order, 1, 6, "order"))
    if cmd == "verify-bethe":
        n = _gl_size(args.algebra)
        return certify.verify_bethe(_bounded(n, 1, 4, "n"), _parse_list(args.C),
                                    _bounded(args.max_deg, 1, 8, "max-deg"),
                                    workers=args.workers)
    if cmd == "verify-gaudin":
        return certify.verify_gaudin(args.algebra, _bounded(args.kmax, 0, 6, "kmax"))
    if cmd == "verify-soa":
        return certify.verify_soa(args.algebra, _parse_list(args.chi), seed=args.seed)
    if cmd == "verify-talalaev":
        return certify.verify_talalaev(_bounded(args.n, 1, 3, "n"),
                                       _bounded(args.R, 1, 4, "R"),
                                       _bounded(args.max_deg, 1, 6, "max-deg"))
    if cmd == "gr":
        if args.comparison == "centralizer":
            return certify.verify_centralizer(args.algebra,
                                              _bounded(args.max_deg, 0, 6, "max-deg"))
        n = _gl_size(args.algebra)
        if args.C is None:
            raise LoopcertError("gr --comparison theorem-A needs --C")
        return certify.verify_theorem_A(n, _parse_list(args.C),
                                        _bounded(args.max_deg, 1, 5, "max-deg"))
    if cmd == "poincare":
        if args.family == "gr1":
            n = _gl_size(args.algebra)
            return certify.poincare_gr1_count(n, _bounded(args.cutoff, 1, 8, "cutoff"))
        n = _gl_size(args.algebra)
        if args.C is None:
            raise LoopcertError("poincare --family bethe needs --C")
        return certify.poincare_bethe(n, _parse_list(args.C),
                                      _bounded(args.cutoff, 1, 6, "cutoff"))
    if cmd == "limit":
        n = _gl_size(args.algebra)
        return certify.verify_theorem_B(n, _parse_list(args.C0), _parse_list(args.chi),
                                        _bounded(args.deg, 1, 4, "deg"),
                                        eps_order_cap=args.eps_cap)
    if cmd == "eval-gaudin":
        return certify.verify_eval_gaudin(args.algebra, _parse_list(args.z),
                                          _bounded(args.kmax, 1, 8, "kmax"))
    if cmd == "gens":
        kw = {}
        if args.family in ("bethe", "classical-bethe"):
            kw = {"n": _gl_size(args.algebra), "C": _parse_list(args.C or "1,2"),
                  "smax": _bounded(args.max_deg, 1, 6, "max-deg")}
        elif args.family == "gaudin":
            kw = {"algebra": args.algebra, "kmax": _bounded(args.max_deg, 0, 6, "max-deg")}
        elif args.family == "soa":
            if args.chi is None:
                raise LoopcertError("gens --family soa needs --chi")
            kw = {"algebra": args.algebra, "chi": _parse_list(args.chi)}
        elif args.family == "talalaev":
            kw = {"n": _bounded(args.n, 1, 3, "n"), "R": _bounded(args.R, 1, 4, "R")}
        return certify.dump_generators(args.family, **kw)
    raise LoopcertError(f"unknown command {cmd!r}")


def main(argv: Optional[List[str]] = None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        report = run(args)
    except LoopcertError as exc:
        print(f"error [{type(exc).__name__}]: {exc}", file=sys.stderr)
        return 2
    for line in report.summary_lines():
        print(line)
    if args.json:
        payload = json.dumps(report.to_dict(), indent=2, sort_keys=True)
        if args.json == "-":
            print(payload)
        else:
            with open(args.json, "w", encoding="utf-8") as fh:
                fh.write(payload + "\n")
    return 0 if report.passed else 1


if __name__ == "__main__":
    sys.exit(main())
