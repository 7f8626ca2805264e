"""Command-line interface.

Exit codes: 0 success, 1 check or verdict failure, 2 parse/usage error,
3 budget exceeded.
"""
from __future__ import annotations

import argparse
import os
import sys

from . import fpdim as fp
from .errors import BudgetExceeded, FusionRingError, GradingInconsistent, ParseError, \
    PreconditionError
from .modular import check_all, parse_smatrix
from .report import Report
from .ring import load_ring, validate_ring
from .rules import Outcome, classify_dimension, classify_ring, factorize
from .structure import (adjoint_subring, invertibles, nichols_richmond, nilpotency_chain,
                        stabilizer, type_of, universal_grading)
from .typeenum import PRESETS, DiophantineProblem, enumerate_types, read_golden, \
    solve_diophantine

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_BUDGET = 0, 1, 2, 3


class _Fail(Exception):
    """Signals exit code 1 after the report has been produced."""


def _labels(ring, idx):
    return [ring.labels[i] for i in idx]


def _dims_section(rep, ring, dims):
    sec = rep.section("dimensions")
    for lab, v in zip(ring.labels, dims.values):
        sec.add(lab, v)
    rep.add("fpdim", dims.total)


def _grading_section(rep, ring, dims):
    sec = rep.section("universal_grading")
    try:
        g = universal_grading(ring, dims)
    except GradingInconsistent as exc:
        sec.add("error", str(exc))
        return None
    sec.add("order", g.order)
    sec.add("cyclic", g.is_cyclic())
    blocks = sec.section("blocks")
    for n, (b, d) in enumerate(zip(g.blocks, g.block_dims)):
        blocks.add(str(n), f"{_fmt_list(_labels(ring, b))} dim {d:.12g}")
    return g


def _fmt_list(xs):
    return "{" + ", ".join(str(x) for x in xs) + "}"


def _verdict_section(rep, verdict):
    sec = rep.section("verdict")
    sec.add("outcome", verdict.outcome.value)
    tr = sec.section("trace")
    for t in verdict.trace:
        binding = ", ".join(f"{k}={v}" for k, v in t.binding.items())
        tr.add(t.rule, f"{t.conclusion.value} [{binding}] {t.citation}")
    if verdict.annotations:
        ann = sec.section("annotations")
        for n, a in enumerate(verdict.annotations, 1):
            ann.add(str(n), a)


def _require_valid(ring, rep):
    viol = validate_ring(ring)
    if viol:
        sec = rep.section("violations")
        for v in viol:
            sec.add(v.kind.value, f"({','.join(map(str, v.indices))}) {v.detail}")
        raise _Fail()


# -- subcommands ------------------------------------------------------------

def cmd_validate(args, rep):
    ring = load_ring(args.file)
    viol = validate_ring(ring)
    rep.add("rank", ring.rank)
    rep.add("violations", len(viol))
    if viol:
        sec = rep.section("details")
        for v in viol:
            sec.add(v.kind.value, f"({','.join(map(str, v.indices))}) {v.detail}")
        raise _Fail()


def cmd_fpdim(args, rep):
    ring = load_ring(args.file)
    _require_valid(ring, rep)
    dims = fp.fp_dim_vector(ring, args.tolerance)
    _dims_section(rep, ring, dims)
    rep.add("certified", [c if c is not None else "-" for c in dims.certified_integers])
    rep.add("integral", fp.is_integral(ring, dims))
    rep.add("weakly_integral", fp.is_weakly_integral(ring, dims))


def cmd_type(args, rep):
    ring = load_ring(args.file)
    _require_valid(ring, rep)
    rep.add("type", str(type_of(ring, fp.fp_dim_vector(ring, args.tolerance, certify=False))))


def cmd_grading(args, rep):
    ring = load_ring(args.file)
    _require_valid(ring, rep)
    dims = fp.fp_dim_vector(ring, args.tolerance, certify=False)
    rep.add("adjoint", _fmt_list(_labels(ring, adjoint_subring(ring).members)))
    if _grading_section(rep, ring, dims) is None:
        raise _Fail()


def cmd_analyze(args, rep):
    ring = load_ring(args.file)
    sec = rep.section("ring")
    sec.add("rank", ring.rank)
    sec.add("labels", list(ring.labels))
    sec.add("unit", ring.labels[ring.unit])
    sec.add("dual", _labels(ring, ring.dual))
    _require_valid(ring, rep)
    dims = fp.fp_dim_vector(ring, args.tolerance, certify=False)
    _dims_section(rep, ring, dims)
    rep.add("type", str(type_of(ring, dims)))
    G = invertibles(ring)
    rep.add("invertibles", _fmt_list(G.subring.labels))
    stabs = rep.section("stabilizers")
    for i in range(ring.rank):
        stabs.add(ring.labels[i], _fmt_list(_labels(ring, stabilizer(ring, i))))
    rep.add("adjoint", _fmt_list(_labels(ring, adjoint_subring(ring).members)))
    _grading_section(rep, ring, dims)
    chain_sec = rep.section("nilpotency_chain")
    try:
        chain = nilpotency_chain(ring)
        for n, members in enumerate(chain.subrings):
            chain_sec.add(str(n), _fmt_list(_labels(ring, members)))
        chain_sec.add("groups", [f"order {o}{' cyclic' if c else ''}" for o, c in chain.groups])
        chain_sec.add("nilpotent", chain.is_nilpotent)
        chain_sec.add("cyclically_nilpotent", chain.is_cyclically_nilpotent)
    except GradingInconsistent as exc:
        chain_sec.add("error", str(exc))
    _verdict_section(rep, classify_ring(ring, args.tolerance).verdict)


def cmd_enumerate(args, rep):
    cons = PRESETS[args.preset]
    types = enumerate_types(args.N, cons, budget=args.budget)
    rep.add("N", args.N)
    rep.add("preset", args.preset)
    rep.add("count", len(types))
    sec = rep.section("types")
    for n, t in enumerate(types, 1):
        sec.add(str(n), str(t))
    if args.golden:
        golden = read_golden(args.golden)
        have = set(types)
        missing = [t for t in golden if t not in have]
        g = rep.section("golden")
        g.add("file", os.path.basename(args.golden))
        g.add("lines", len(golden))
        g.add("found", len(golden) - len(missing))
        g.add("missing", [str(t) for t in missing])
        g.add("extra", len(set(types) - set(golden)))
        if missing:
            raise _Fail()


def cmd_diophantine(args, rep):
    coeffs = [int(c) for c in args.coefficients.split(",") if c.strip()]
    prob = DiophantineProblem(args.target, coeffs)
    sols = solve_diophantine(prob, budget=args.budget)
    rep.add("target", prob.target)
    rep.add("coefficients", list(prob.coefficients))
    rep.add("count", len(sols))
    sec = rep.section("solutions")
    for n, s in enumerate(sols, 1):
        sec.add(str(n), list(s))
    if sols:
        firsts = sorted({s[0] for s in sols})
        rep.add("first_coordinate_values", firsts)
        rep.add("first_coordinate_min", firsts[0])
    if args.claim_first:
        claimed = sorted({int(c) for c in args.claim_first.split(",") if c.strip()})
        have = {s[0] for s in sols}
        missing = [c for c in claimed if c not in have]
        sec = rep.section("claim")
        sec.add("first_coordinate_values", claimed)
        sec.add("unreproduced", missing)
        sec.add("unclaimed", sorted(have - set(claimed)))
        if missing:
            raise _Fail()


def cmd_classify(args, rep):
    if args.ring:
        ring = load_ring(args.ring)
        _require_valid(ring, rep)
        res = classify_ring(ring, args.tolerance)
        rep.add("fpdim", res.fpdim)
        rep.add("integral", res.integral)
        rep.add("weakly_integral", res.weakly_integral)
        rep.add("pointed", res.pointed)
        verdict = res.verdict
    else:
        if args.N is None:
            raise ParseError("classify needs N or --ring")
        prof = factorize(args.N,
                         integral=True if args.integral else None,
                         weakly_integral=True if (args.weakly_integral or args.integral) else None,
                         weakly_group_theoretical=True if args.weakly_group_theoretical else None)
        rep.add("N", prof.N)
        rep.add("factorization", " * ".join(f"{p}^{e}" if e > 1 else str(p)
                                             for p, e in prof.factorization) or "1")
        verdict = classify_dimension(prof)
    _verdict_section(rep, verdict)
    if verdict.outcome is Outcome.Unknown:
        raise _Fail()


def cmd_smatrix(args, rep):
    with open(args.file) as fh:
        m = parse_smatrix(fh.read())
    tol = args.tolerance if args.tolerance_given else 1e-9
    results = check_all(m, tol, args.x0)
    rep.add("order", m.order)
    sec = rep.section("checks")
    for r in results:
        sec.add(f"{r.name}[{r.x0}]", f"{'pass' if r.passed else 'FAIL'} "
                                      f"deviation {r.value:.12g} threshold {r.threshold:.12g}")
    ok = all(r.passed for r in results)
    rep.add("passed", ok)
    if not ok:
        raise _Fail()


def cmd_nichols_richmond(args, rep):
    ring = load_ring(args.file)
    _require_valid(ring, rep)
    i = ring.index(args.object)
    res = nichols_richmond(ring, i, budget=args.budget)
    rep.add("object", ring.labels[i])
    rep.add("stabilizer", _fmt_list(_labels(ring, res.stabilizer)))
    rep.add("cases", list(res.cases))
    if res.case2_witnesses:
        sec = rep.section("case2")
        for n, (members, g) in enumerate(res.case2_witnesses, 1):
            sec.add(str(n), f"{_fmt_list(_labels(ring, members))} g={ring.labels[g]}")
    if res.case3_witnesses:
        sec = rep.section("case3")
        for n, members in enumerate(res.case3_witnesses, 1):
            sec.add(str(n), _fmt_list(_labels(ring, members)))
    rep.add("subring_dimensions", list(res.subring_dimensions))
    rep.add("status", res.status)
    if res.status != "ok":
        raise _Fail()


# -- parser -----------------------------------------------------------------

def _global_options(p, suppress):
    d = (lambda v: argparse.SUPPRESS) if suppress else (lambda v: v)
    p.add_argument("--tolerance", type=float, default=d(fp.DEFAULT_TOL),
                   help="numeric tolerance (default 1e-10; S-matrix checks 1e-9)")
    p.add_argument("--format", choices=("text", "json"), default=d("text"))
    p.add_argument("--budget", type=int, default=d(None),
                   help="search budget (default: $FRW_BUDGET or built-in)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="fusionring",
                                     description="Fusion-ring analysis workbench.")
    _global_options(parser, suppress=False)
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, help):
        p = sub.add_parser(name, help=help)
        _global_options(p, suppress=True)
        p.set_defaults(func=func)
        return p

    for name, func, help in (("validate", cmd_validate, "check the ring axioms"),
                             ("analyze", cmd_analyze, "full structural report"),
                             ("fpdim", cmd_fpdim, "Frobenius-Perron dimensions"),
                             ("type", cmd_type, "type vector"),
                             ("grading", cmd_grading, "adjoint subring and universal grading")):
        add(name, func, help).add_argument("file")

    p = add("enumerate", cmd_enumerate, "enumerate dimension types")
    p.add_argument("N", type=int)
    p.add_argument("--preset", choices=sorted(PRESETS), default="base")
    p.add_argument("--golden")

    p = add("diophantine", cmd_diophantine, "solve sum a_i c_i = target over a_i >= 0")
    p.add_argument("target", type=int)
    p.add_argument("coefficients", help="comma-separated positive integers")
    p.add_argument("--claim-first", help="comma-separated values claimed for the first "
                                         "coordinate; exit 1 if any is not attained")

    p = add("classify", cmd_classify, "classification verdict with rule trace")
    p.add_argument("N", type=int, nargs="?")
    p.add_argument("--ring")
    p.add_argument("--weakly-integral", action="store_true")
    p.add_argument("--integral", action="store_true")
    p.add_argument("--weakly-group-theoretical", action="store_true")

    p = add("smatrix", cmd_smatrix, "S-matrix orthogonality and norm checks")
    p.add_argument("file")
    p.add_argument("--x0", type=int)

    p = add("nichols-richmond", cmd_nichols_richmond, "case analysis for a 2-dimensional simple")
    p.add_argument("file")
    p.add_argument("--object", required=True)
    return parser


def run(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    args.tolerance_given = "--tolerance" in (argv if argv is not None else sys.argv[1:])
    if args.budget is None:
        env = os.environ.get("FRW_BUDGET")
        args.budget = int(env) if env else 10**6
    rep = Report()
    rep.add("command", args.command)
    code = EXIT_OK
    try:
        args.func(args, rep)
    except _Fail:
        code = EXIT_FAIL
    except BudgetExceeded as exc:
        rep.add("error", str(exc))
        code = EXIT_BUDGET
    except (ParseError, PreconditionError, OSError, ValueError) as exc:
        rep.add("error", str(exc))
        code = EXIT_USAGE
    except FusionRingError as exc:
        rep.add("error", str(exc))
        code = EXIT_FAIL
    out.write(rep.render(args.format))
    return code


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
