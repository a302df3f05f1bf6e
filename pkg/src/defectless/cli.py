"""Command-line front end.

Exit codes: 0 success, 1 validation or precondition failure, 2 mathematical
cross-check failure, 3 parse or schema error.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass

from . import maclane, okutsu, oracle
from .ground import GroundContext, parse_rational
from .maclane import ChainError, InconsistencyError, MacLaneChain
from .poly import ParseError, Polynomial, parse

EXIT_OK, EXIT_INVALID, EXIT_MISMATCH, EXIT_PARSE = 0, 1, 2, 3


class ProblemError(ValueError):
    """Malformed problem file; exit code 3."""


@dataclass
class ProblemFile:
    p: int
    chain: MacLaneChain
    F: Polynomial
    seed: int | None = None
    degree_bound: int | None = None
    count: int | None = None


def _expr(text, where: str) -> Polynomial:
    if not isinstance(text, str):
        raise ProblemError(f"{where}: expected an expression string")
    try:
        return parse(text)
    except ParseError as exc:
        raise ProblemError(
            f"{where}: {exc.message} at offset {exc.offset}\n  {text}\n  {' ' * exc.offset}^"
        ) from None


def _int(doc, key, required=False):
    if key not in doc:
        if required:
            raise ProblemError(f"missing key {key!r}")
        return None
    val = doc[key]
    if isinstance(val, bool) or not isinstance(val, int):
        raise ProblemError(f"{key!r} must be an integer")
    return val


def load_problem(text: str) -> ProblemFile:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ProblemError(f"invalid JSON at line {exc.lineno} column {exc.colno} "
                           f"(offset {exc.pos}): {exc.msg}") from None
    if not isinstance(doc, dict):
        raise ProblemError("problem file must be a JSON object")
    p = _int(doc, "p", required=True)
    try:
        ctx = GroundContext(p)
    except ValueError as exc:
        raise ProblemError(str(exc)) from None
    levels = doc.get("chain")
    if not isinstance(levels, list) or not levels:
        raise ProblemError("'chain' must be a nonempty array of {\"phi\", \"gamma\"} objects")
    parsed = []
    for i, level in enumerate(levels):
        if not isinstance(level, dict) or "phi" not in level or "gamma" not in level:
            raise ProblemError(f"chain[{i}] must have keys 'phi' and 'gamma'")
        phi = _expr(level["phi"], f"chain[{i}].phi")
        gamma = level["gamma"]
        if not isinstance(gamma, str):
            raise ProblemError(f"chain[{i}].gamma must be a rational string")
        try:
            gamma = parse_rational(gamma)
        except (ValueError, ZeroDivisionError) as exc:
            raise ProblemError(f"chain[{i}].gamma: {exc}") from None
        parsed.append((phi, gamma))
    if "F" not in doc:
        raise ProblemError("missing key 'F'")
    F = _expr(doc["F"], "F")
    return ProblemFile(
        p=p,
        chain=MacLaneChain(ctx, parsed),
        F=F,
        seed=_int(doc, "seed"),
        degree_bound=_int(doc, "degree_bound"),
        count=_int(doc, "count"),
    )


def problem_document(chain: MacLaneChain, F: Polynomial, seed: int | None = None) -> dict:
    doc = {
        "p": chain.p,
        "chain": [{"phi": str(phi), "gamma": str(g)} for phi, g in chain.levels],
        "F": str(F),
    }
    if seed is not None:
        doc["seed"] = seed
    return doc


def _dump(obj) -> str:
    return json.dumps(obj, separators=(",", ":"))


def _read(path: str) -> ProblemFile:
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise ProblemError(f"cannot read {path}: {exc.strerror}") from None
    return load_problem(text)


def _structural(prob: ProblemFile, out, key: bool = False) -> bool:
    report = maclane.validate(prob.chain)
    for v in report.violations:
        print(f"invalid: {v}", file=out)
    if not report.ok or not key:
        return report.ok
    check = maclane.key_poly_necessary_check(prob.chain, prob.F)
    for r in check.results:
        if not r.passed:
            print(f"invalid: F fails {r.name}: {r.detail}", file=out)
    return check.ok


def cmd_validate(args, out) -> int:
    prob = _read(args.path)
    report = maclane.validate(prob.chain)
    payload = {"valid": report.ok,
               "violations": [{"code": v.code, "level": v.level, "message": v.message}
                              for v in report.violations]}
    status = EXIT_OK if report.ok else EXIT_INVALID
    key_ok = None
    if report.ok:
        try:
            key = maclane.key_poly_necessary_check(prob.chain, prob.F)
            key_ok = key.ok
            payload["key_polynomial"] = [{"name": r.name, "passed": r.passed, "detail": r.detail}
                                         for r in key.results]
        except ChainError as exc:
            key_ok = False
            payload["key_polynomial"] = [{"name": "degree", "passed": False, "detail": str(exc)}]
        if not key_ok:
            status = EXIT_INVALID
    if args.json:
        print(_dump(payload), file=out)
    else:
        for v in report.violations:
            print(f"FAIL {v}", file=out)
        for r in payload.get("key_polynomial", []):
            print(f"{'PASS' if r['passed'] else 'FAIL'} {r['name']}: {r['detail']}", file=out)
        print("valid" if status == EXIT_OK else "invalid", file=out)
    return status


def _render_report(rep: okutsu.OkutsuReport, out):
    lines = [
        f"Okutsu depth r        {rep.depth}",
        f"frame degrees         {rep.frame_degrees}",
        f"weight w(F)           {rep.weight}",
        f"secondary slopes      {[str(x) for x in rep.lambdas]}",
        f"e_i (index form)      {rep.e_rel}",
        f"e_i (e_0 = 1 form)    {rep.e_rel_literal}",
        f"e(phi_i), e(F-level)  {rep.e_phi}",
        f"f(phi_i)              {rep.f_phi}",
        f"delta_i               {[str(x) for x in rep.delta_seq]}",
        f"main invariant        {rep.main_invariant}",
        f"Krasner constant      {rep.krasner}",
        f"Omega                 {rep.omega}",
        f"e(F), f(F)            {rep.e_F}, {rep.f_F}",
        f"tameness              {rep.tameness} (residue characteristic {rep.effective_chain.p})",
    ]
    if rep.flags:
        lines.append(f"flags                 {', '.join(rep.flags)}")
    if okutsu.FLAG_UNVERIFIED in rep.flags:
        lines.append("note: hypothesis unverified; Omega, delta and omega come from the "
                     "closed forms and are not guaranteed")
    print("\n".join(lines), file=out)


def cmd_report(args, out) -> int:
    prob = _read(args.path)
    if not _structural(prob, out, key=True):
        return EXIT_INVALID
    rep = okutsu.full_report(prob.chain, prob.F)
    if args.json:
        print(_dump(rep.to_json()), file=out)
    else:
        _render_report(rep, out)
    return EXIT_OK


def cmd_crosscheck(args, out) -> int:
    prob = _read(args.path)
    if not _structural(prob, out):
        return EXIT_INVALID
    try:
        report = oracle.crosscheck(prob.chain, prob.F)
    except InconsistencyError as exc:
        print(f"FAIL internal consistency: {exc}", file=out)
        return EXIT_MISMATCH
    if args.json:
        print(_dump(report.to_json()), file=out)
    else:
        for c in report.checks:
            tag = {"pass": "PASS", "fail": "FAIL"}.get(c.verdict, "WARN")
            print(f"{tag} {c.name}: {c.detail}", file=out)
    if report.failed:
        print("crosscheck failed: formula/oracle disagreement", file=out)
        return EXIT_MISMATCH
    if report.violations:
        print(f"warning: {oracle.HYPOTHESIS_VIOLATION} ({report.tameness} input)", file=out)
    return EXIT_OK


def cmd_sample_weight(args, out) -> int:
    prob = _read(args.path)
    if not _structural(prob, out, key=True):
        return EXIT_INVALID
    n = prob.F.degree
    bound = args.degree_bound if args.degree_bound is not None else prob.degree_bound
    bound = n - 1 if bound is None else bound
    count = args.count if args.count is not None else prob.count
    count = 1000 if count is None else count
    seed = args.seed if args.seed is not None else prob.seed
    seed = 0 if seed is None else seed
    if count < 0:
        print("count must be nonnegative", file=out)
        return EXIT_INVALID
    sample = oracle.sample_weight(prob.chain, prob.F, bound, count, seed=seed)
    if args.json:
        print(_dump({
            "weight": str(sample.weight),
            "max_sampled": str(sample.max_ratio),
            "witness": str(sample.witness),
            "seed": sample.seed,
            "count": sample.count,
            "degree_bound": sample.degree_bound,
            "exceeded": len(sample.exceeded),
        }), file=out)
    else:
        print(f"w(F)          {sample.weight}", file=out)
        print(f"max sampled   {sample.max_ratio}  (witness {sample.witness})", file=out)
        print(f"samples       {count} random + 1 key polynomial, degree <= {bound}, seed {seed}",
              file=out)
        print("bound holds" if sample.ok else "BOUND EXCEEDED", file=out)
    return EXIT_OK if sample.ok else EXIT_MISMATCH


def cmd_radical(args, out) -> int:
    try:
        c = parse_rational(args.c)
        oracle.omega_radical_family(args.p, args.m, c, args.k)
    except (ValueError, ZeroDivisionError) as exc:
        print(f"not admissible: {exc}", file=out)
        return EXIT_INVALID
    chain, F = oracle.radical_problem(args.p, args.m, c, args.k)
    print(_dump(problem_document(chain, F, seed=args.seed)), file=out)
    return EXIT_OK


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        sys.exit(EXIT_PARSE)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="defectless",
                     description="Invariants of defectless polynomials from MacLane chains.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def with_path(name, func, help_):
        sp = sub.add_parser(name, help=help_)
        sp.add_argument("path", help="problem file (JSON)")
        sp.add_argument("--json", action="store_true", help="machine-readable output")
        sp.set_defaults(func=func)
        return sp

    with_path("validate", cmd_validate, "check the chain and the key polynomial condition")
    with_path("report", cmd_report, "print every invariant of F")
    with_path("crosscheck", cmd_crosscheck, "compare closed forms against the Newton oracle")
    sp = with_path("sample-weight", cmd_sample_weight, "probe the weight by random sampling")
    sp.add_argument("--degree-bound", type=int)
    sp.add_argument("--count", type=int)
    sp.add_argument("--seed", type=int)

    sp = sub.add_parser("radical", help="emit the problem file for x^m - c p^k")
    sp.add_argument("p", type=int)
    sp.add_argument("m", type=int)
    sp.add_argument("c")
    sp.add_argument("k", type=int)
    sp.add_argument("--seed", type=int)
    sp.set_defaults(func=cmd_radical)
    return parser


def main(argv=None, out=None) -> int:
    out = sys.stdout if out is None else out
    args = build_parser().parse_args(argv)
    try:
        return args.func(args, out)
    except ProblemError as exc:
        print(f"parse error: {exc}", file=out)
        return EXIT_PARSE
    except InconsistencyError as exc:
        print(f"inconsistency: {exc}", file=out)
        return EXIT_MISMATCH
    except ChainError as exc:
        print(f"precondition failed: {exc}", file=out)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
