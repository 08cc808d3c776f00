"""Command line workbench: ``eqcdr kernel | verify | integrate``.

Exit codes: 0 success, 1 a verification check failed, 2 usage error.
Log verbosity comes from the ``EQCDR_LOG`` environment variable
(DEBUG, INFO, WARNING, ...; default WARNING).
"""
from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from typing import List, Optional

from .bm_kernel import beta_eq, chi_eq
from .serialize import form_to_json_expanded, form_to_latex, form_to_sexpr
from .sphere import sphere_integrate_exact, sphere_integrate_mc
from .verify import SUITES, Options, parse_l_range, run_suites

KERNEL_MAX_L = 4

log = logging.getLogger("eqcdr")


def _setup_logging():
    level = os.environ.get("EQCDR_LOG", "WARNING").upper()
    logging.basicConfig(level=getattr(logging, level, logging.WARNING), stream=sys.stderr,
                        format="%(levelname)s %(name)s: %(message)s")


def _kernel_text(l: int, fmt: str) -> str:
    beta, chi = beta_eq(l), chi_eq(l)
    if fmt == "json":
        doc = {"l": l, "beta": form_to_json_expanded(beta), "chi": form_to_json_expanded(chi)}
        doc["termCount"] = len(doc["beta"]["terms"])
        return json.dumps(doc, sort_keys=True, indent=2)
    if fmt == "sexpr":
        return f"(kernel {l}\n  (beta {form_to_sexpr(beta)})\n  (chi {form_to_sexpr(chi)}))"
    lines = [f"\\beta_{{eq}}(X) = {form_to_latex(beta)}",
             f"\\chi_{{eq}}(X) = {form_to_latex(chi)}"]
    if l == 1:
        # on C^1, zb dz / |z|^2 = dz / z
        lines.append("\\beta_{eq}(X) = \\frac{\\sqrt{-1}}{2\\pi}\\frac{dz}{z}")
    return "\n".join(lines)


def cmd_kernel(args, parser) -> int:
    if not 1 <= args.l <= KERNEL_MAX_L:
        parser.error(f"--l must be between 1 and {KERNEL_MAX_L}")
    print(_kernel_text(args.l, args.format))
    return 0


def cmd_verify(args, parser) -> int:
    suites = [s.strip() for s in args.suite.split(",") if s.strip()]
    for s in suites:
        if s != "all" and s not in SUITES:
            parser.error(f"unknown suite {s!r}; choose from all, {', '.join(SUITES)}")
    try:
        ls = parse_l_range(args.l)
    except ValueError as exc:
        parser.error(str(exc))
    if args.jobs < 1 or args.random_connections < 0 or args.random_triples < 0 or args.mc_samples < 0:
        parser.error("counts must be non-negative and --jobs positive")
    opts = Options(seed=args.seed, random_connections=args.random_connections,
                   random_triples=args.random_triples, mc_samples=args.mc_samples,
                   mc_sigmas=args.mc_sigmas)
    try:
        report = run_suites(suites, ls, opts, jobs=args.jobs)
    except ValueError as exc:
        parser.error(str(exc))
    text = json.dumps(report.to_dict(), sort_keys=True, indent=2)
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text + "\n")
    print(text)
    return 0 if report.passed else 1


def cmd_integrate(args, parser) -> int:
    if not 1 <= args.l <= KERNEL_MAX_L:
        parser.error(f"--l must be between 1 and {KERNEL_MAX_L}")
    w = beta_eq(args.l).set_x_zero()
    if args.method == "exact":
        value = sphere_integrate_exact(w)
        doc = {"l": args.l, "method": "exact", "value": str(value.as_scalar())}
    else:
        if args.samples is None or args.samples <= 0:
            parser.error("--method mc needs --samples > 0")
        res = sphere_integrate_mc(w, args.samples, args.seed)
        doc = {"l": args.l, "method": "mc", "value": res.value.real, "imag": res.value.imag,
               "stderr": res.stderr, "samples": res.samples, "seed": args.seed}
    print(json.dumps(doc, sort_keys=True))
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="eqcdr", description="Equivariant Bochner-Martinelli workbench")
    sub = p.add_subparsers(dest="command", required=True)

    k = sub.add_parser("kernel", help="emit beta_eq(l) and chi_eq(l)")
    k.add_argument("--l", type=int, required=True)
    k.add_argument("--format", choices=("latex", "json", "sexpr"), default="latex")
    k.set_defaults(func=cmd_kernel)

    v = sub.add_parser("verify", help="run verification suites and print a JSON report")
    v.add_argument("--suite", default="all", help="all or a comma separated list of " + ", ".join(SUITES))
    v.add_argument("--l", default="1..3", help="single value or range like 1..3")
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--jobs", type=int, default=1)
    v.add_argument("--random-connections", type=int, default=20)
    v.add_argument("--random-triples", type=int, default=10)
    v.add_argument("--mc-samples", type=int, default=0, help="add a Monte Carlo integral check when > 0")
    v.add_argument("--mc-sigmas", type=float, default=3.0)
    v.add_argument("--output", help="also write the report to this file")
    v.set_defaults(func=cmd_verify)

    i = sub.add_parser("integrate", help="integrate the kernel over the unit sphere")
    i.add_argument("--l", type=int, required=True)
    i.add_argument("--method", choices=("exact", "mc"), default="exact")
    i.add_argument("--samples", type=int)
    i.add_argument("--seed", type=int, default=0)
    i.set_defaults(func=cmd_integrate)
    return p


def main(argv: Optional[List[str]] = None) -> int:
    _setup_logging()
    parser = build_parser()
    args = parser.parse_args(argv)
    return args.func(args, parser)


if __name__ == "__main__":
    sys.exit(main())
