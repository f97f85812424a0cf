"""Command-line entry point.

Exit status: 0 when everything checked out, 2 when a verification failed
(a counterexample), 1 for usage, input, resource or checkpoint errors.
"""

from __future__ import annotations

import argparse
import logging
import sys
import time
from pathlib import Path
from typing import Optional, Sequence

from . import engine, integral, poly, verifier
from .errors import VerificationFailure, ZeroSumError
from .field import FpVector2, check_prime
from .files import dumps_report, make_report, parse_vector_file, write_report

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_FAILURE = 2

log = logging.getLogger("zerosum")


class UsageError(ZeroSumError):
    pass


class _Parser(argparse.ArgumentParser):
    # argparse exits with 2 on bad usage; 2 is reserved for counterexamples here
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _prime(text: str) -> int:
    try:
        return check_prime(int(text))
    except (ValueError, ZeroSumError) as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _common(sub: argparse.ArgumentParser, *, seed=False, inp=False):
    sub.add_argument("--p", type=_prime, required=True, help="odd prime modulus")
    sub.add_argument("--output", type=Path, help="write the JSON report here (atomically)")
    if seed:
        sub.add_argument("--seed", type=int, default=0)
        sub.add_argument("--trials", type=int)
    if inp:
        sub.add_argument("--input", type=Path, help="vector file: one element per line")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="zerosum", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="store_true")
    subs = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = subs.add_parser("verify-theorem1", help="zero-sum subsets of canonical covering sets")
    _common(s, seed=True)
    s.add_argument("--mode", choices=["exhaustive", "sampled"], default="exhaustive")
    s.add_argument("--workers", type=int, default=1)
    s.add_argument("--checkpoint", type=Path)
    s.add_argument("--resume", action="store_true")
    s.add_argument("--checkpoint-every", type=int, default=verifier.CHECKPOINT_EVERY_CASES)

    s = subs.add_parser("lemma5", help="no full-support monomial in the lemma polynomial")
    _common(s)
    s.add_argument("--route", choices=["expansion", "derivative", "targeted", "all"])

    s = subs.add_parser("integral", help="signed cube sum of a polynomial, both routes")
    _common(s, inp=True)
    s.add_argument("--n", type=int, required=True, help="number of variables")
    s.add_argument("--poly", help="polynomial text, e.g. '2*x1^2*x3 + x2'")

    for name, text in (("find-zerosum", "zero-sum subset of a set"), ("sigma", "subset-sum images")):
        s = subs.add_parser(name, help=text)
        _common(s, inp=True)
        s.add_argument("--group", choices=["fp", "fp2"], default="fp2")

    s = subs.add_parser("olson", help="Olson constant by branch and bound")
    _common(s)
    s.add_argument("--group", choices=["fp", "fp2"], default="fp")

    s = subs.add_parser("balandraud", help="subset-sum size bounds for A disjoint from -A")
    _common(s)

    s = subs.add_parser("theorem4", help="zero-sum subsequences in F_p^2")
    _common(s, seed=True, inp=True)
    s.add_argument("--exhaustive", action="store_true", help="all multisets of the given length")
    s.add_argument("--length", type=int, help="sequence length (default 2p-1)")

    s = subs.add_parser("cw-search", help="nonzero common zero of the degree-(p-1) system")
    _common(s, inp=True)

    s = subs.add_parser("grt-report", help="OL(F_p^2) next to p + OL(F_p) - 1")
    _common(s)

    s = subs.add_parser("proof-trace", help="P/Q signed-sum trace for covering sets")
    _common(s, seed=True, inp=True)
    s.add_argument("--a", help="canonical coefficients, comma separated")
    s.add_argument("--exhaustive", action="store_true", help="every canonical tuple (p <= 5)")
    s.add_argument("--expand", action=argparse.BooleanOptionalAction, default=None)
    s.add_argument("--direct", action="store_true", help="also search the whole input set, not only its transversal")
    return parser


# ---------------------------------------------------------------------------


def _single(command, p, result, ok=True, failures=None, **kw):
    return make_report(
        command,
        p,
        totals={"cases": 1, "verified": 1 if ok else 0},
        failures=failures or ([] if ok else [result]),
        result=result,
        **kw,
    )


def _need_input(args):
    if args.input is None:
        raise UsageError(f"{args.command} needs --input")


def cmd_verify_theorem1(args):
    def progress(rep):
        log.info("cursor %d / %d", rep.cursor, rep.total_cases)

    if args.resume and not args.checkpoint:
        raise UsageError("--resume needs --checkpoint")
    rep = verifier.verify_theorem1(
        args.p,
        args.mode,
        trials=args.trials,
        seed=args.seed,
        checkpoint=args.checkpoint,
        resume=args.resume,
        workers=args.workers,
        checkpoint_every=args.checkpoint_every,
        progress=progress,
    )
    d = rep.as_dict()
    return make_report(
        "verify-theorem1",
        args.p,
        mode=rep.mode,
        seed=rep.seed,
        totals=d["totals"],
        failures=d["failures"],
        result={"trials": d["trials"], "witness_size": d["witness_size"], "cursor": d["cursor"]},
    )


def cmd_lemma5(args):
    routes = ["expansion", "derivative", "targeted"] if args.route == "all" else [args.route]
    results = [verifier.verify_lemma5(args.p, r) for r in routes]
    failed = [r.as_dict() for r in results if not r.holds]
    return make_report(
        "lemma5",
        args.p,
        totals={"cases": len(results), "verified": len(results) - len(failed)},
        failures=failed,
        result={
            "routes": [r.as_dict() for r in results],
            "statement": "no monomial with every variable present"
            if not failed
            else "full-support monomial found",
        },
    )


def cmd_integral(args):
    if args.poly is None:
        _need_input(args)
        text = args.input.read_text().strip()
    else:
        text = args.poly
    f = poly.parse(text, args.n, args.p)
    by_eval = integral.signed_cube_sum_eval(f).value
    by_coeff = integral.signed_cube_sum_coeff(f).value
    vertex = integral.nonvanishing_vertex(f) if by_eval else None
    ok = by_eval == by_coeff and (by_eval == 0 or vertex is not None)
    return _single(
        "integral",
        args.p,
        {
            "polynomial": poly.render(f),
            "n": args.n,
            "evaluation": by_eval,
            "coefficient_extraction": by_coeff,
            "agree": by_eval == by_coeff,
            "nonvanishing_vertex": list(vertex) if vertex else None,
        },
        ok=ok,
    )


def _group_input(args, allow_duplicates=False):
    _need_input(args)
    group = engine.Group.named(args.group, args.p)
    elements = parse_vector_file(args.input, args.p, rank=group.rank, allow_duplicates=allow_duplicates)
    return group, elements


def _json_elem(e):
    return list(e) if isinstance(e, tuple) else e


def cmd_find_zerosum(args):
    group, elements = _group_input(args)
    w = engine.find_zero_sum_subset(elements, group)
    return _single(
        "find-zerosum",
        args.p,
        {
            "group": group.name,
            "elements": [_json_elem(e) for e in elements],
            "zero_sum_free": w is None,
            "witness": w.positions if w else None,
            "witness_elements": [_json_elem(elements[i]) for i in w.indices] if w else None,
        },
    )


def cmd_sigma(args):
    group, elements = _group_input(args)
    sigma, star = engine.sigma_sets(elements, group)
    return _single(
        "sigma",
        args.p,
        {
            "group": group.name,
            "elements": [_json_elem(e) for e in elements],
            "sigma": [_json_elem(e) for e in sorted(sigma)],
            "sigma_star": [_json_elem(e) for e in sorted(star)],
            "sigma_size": len(sigma),
            "sigma_star_size": len(star),
        },
    )


def cmd_olson(args):
    res = engine.olson_constant(engine.Group.named(args.group, args.p))
    return _single("olson", args.p, res.as_dict(), mode="exhaustive")


def cmd_balandraud(args):
    rep = engine.balandraud_check(args.p)
    return make_report(
        "balandraud",
        args.p,
        mode="exhaustive",
        totals={"cases": rep.total_sets, "verified": rep.total_sets - len(rep.violations)},
        failures=rep.violations,
        result=rep.as_dict(),
    )


def cmd_theorem4(args):
    p = args.p
    if args.input is not None:
        seq = parse_vector_file(args.input, p, allow_duplicates=True)
        try:
            w = engine.theorem4_check(seq, p)
        except VerificationFailure as exc:
            return _single("theorem4", p, {"sequence": [list(v) for v in seq], "error": str(exc)}, ok=False)
        return _single(
            "theorem4",
            p,
            {
                "sequence": [list(v) for v in seq],
                "length": len(seq),
                "bound": 2 * p - 1,
                "witness": w.positions if w else None,
            },
        )
    if args.exhaustive:
        survey = engine.theorem4_exhaustive(p, args.length)
    elif args.trials:
        survey = engine.theorem4_sampled(p, args.trials, args.seed, args.length)
    else:
        raise UsageError("theorem4 needs --input, --exhaustive or --trials")
    # absence only counts as a failure at or above the bound
    bad = survey.without_witness if survey.length >= 2 * p - 1 else 0
    return make_report(
        "theorem4",
        p,
        mode=survey.mode,
        seed=args.seed,
        totals={"cases": survey.total_cases, "verified": survey.with_witness},
        failures=[survey.first_absent] if bad else [],
        result=survey.as_dict(),
    )


def cmd_cw_search(args):
    _need_input(args)
    vectors = parse_vector_file(args.input, args.p, allow_duplicates=True)
    hit = engine.cw_witness_search(vectors, args.p)
    return _single(
        "cw-search",
        args.p,
        {
            "vectors": [list(v) for v in vectors],
            "common_zero": list(hit.point) if hit else None,
            "support": hit.support.positions if hit else None,
        },
    )


def cmd_grt_report(args):
    rep = verifier.grt_report(args.p)
    return _single("grt-report", args.p, rep.as_dict(), mode="exhaustive")


def cmd_proof_trace(args):
    p = args.p
    if args.exhaustive or (args.trials and args.input is None and args.a is None):
        mode = "exhaustive" if args.exhaustive else "sampled"
        survey = verifier.proof_trace_survey(p, mode, args.trials, args.seed, expand=bool(args.expand))
        return make_report(
            "proof-trace",
            p,
            mode=mode,
            seed=args.seed,
            totals={"cases": survey.total_cases, "verified": survey.verified_cases},
            failures=survey.failures,
            result=survey.as_dict(),
        )
    result = {}
    if args.a is not None:
        coeffs = [int(t) for t in args.a.replace(" ", "").split(",") if t]
        trace = verifier.proof_trace_for(coeffs, p, expand=args.expand)
    elif args.input is not None:
        vectors = [
            FpVector2.of(x, y, p)
            for x, y in parse_vector_file(args.input, p, allow_zero=False)
        ]
        trace = verifier.proof_trace(vectors, p, expand=args.expand)
        result["input_witness"] = [i + 1 for i in verifier.theorem1_witness(vectors, p).indices]
        if args.direct:
            result["direct_witness"] = [
                i + 1 for i in verifier.theorem1_witness(vectors, p, direct=True).indices
            ]
    else:
        raise UsageError("proof-trace needs --a, --input, --exhaustive or --trials")
    result.update(trace.as_dict())
    return _single("proof-trace", p, result)


COMMANDS = {
    "verify-theorem1": cmd_verify_theorem1,
    "lemma5": cmd_lemma5,
    "integral": cmd_integral,
    "find-zerosum": cmd_find_zerosum,
    "sigma": cmd_sigma,
    "olson": cmd_olson,
    "balandraud": cmd_balandraud,
    "theorem4": cmd_theorem4,
    "cw-search": cmd_cw_search,
    "grt-report": cmd_grt_report,
    "proof-trace": cmd_proof_trace,
}


def run(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(
        level=logging.INFO if args.verbose else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
    )
    started = time.monotonic()
    try:
        report = COMMANDS[args.command](args)
    except VerificationFailure as exc:
        # raised only when a checked statement is false on a concrete input
        print(f"zerosum: verification failure: {exc}", file=sys.stderr)
        return EXIT_FAILURE
    except ZeroSumError as exc:
        print(f"zerosum: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    report["elapsed_seconds"] = round(time.monotonic() - started, 3)
    if args.output:
        write_report(report, args.output)
        print(f"report written to {args.output}")
    else:
        sys.stdout.write(dumps_report(report))
    return EXIT_FAILURE if report["failures"] else EXIT_OK


def main():
    sys.exit(run())
