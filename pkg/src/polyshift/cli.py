"""Command-line front end.

Exit codes: 0 success or verified, 1 refuted (the report names the first
failing identity), 2 usage, input or I/O error, 3 factorization could not
be certified.
"""

from __future__ import annotations

import argparse
import sys

from . import factor, formats
from .matrix import RingCapabilityError, ShapeError, det, mat_pow, rank
from .ring import PolyRing
from .sphere import verify_counterexample
from .sse import (
    NilpotencyWitness,
    Report,
    compose_chain_to_se,
    sse_to_nonsingular,
    verify_se,
    verify_sse_chain,
)

EXIT_OK, EXIT_REFUTED, EXIT_USAGE, EXIT_INCOMPLETE = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _say(args, *lines):
    if not args.quiet:
        for line in lines:
            print(line)


def _ring(args):
    return formats.ring_for(formats.RING_FLAGS[args.ring]) if args.ring else None


def _load_matrix(args, path, what="--in"):
    if not path:
        raise UsageError(f"{what} FILE is required")
    return formats.matrix_from_dict(formats.load_json(path), _ring(args))


def _poly_matrix(args, path, what="--in"):
    m = _load_matrix(args, path, what)
    if not isinstance(m.ring, PolyRing):
        raise UsageError(f"{args.command} needs a Z[x] or Q[x] matrix, got {m.ring.tag}")
    return m


def _emit(args, doc):
    if args.out:
        formats.dump_json(doc, args.out)


def _report_lines(report: Report):
    lines = [f"  [{'ok' if c.ok else 'FAIL'}] {c.name}" + (f" ({c.where})" if c.where else "")
             for c in report.checks]
    fail = report.first_failure
    if fail is not None:
        lines.append(f"first failure: {fail.name}" + (f" at {fail.where}" if fail.where else ""))
    return lines


def cmd_rank(args):
    m = _poly_matrix(args, args.input)
    r = rank(m)
    _emit(args, {"rank": r})
    _say(args, f"rank {r}")
    return EXIT_OK


def cmd_frf(args):
    m = _poly_matrix(args, args.input)
    f = factor.full_rank_factorization(m)
    _emit(args, formats.frf_to_dict(f))
    _say(args, f"full rank factorization of a {m.rows}x{m.cols} matrix, r = {f.r}",
         f"P = {f.P}", f"Q = {f.Q}")
    return EXIT_OK


def cmd_verify_frf(args):
    if not args.input:
        raise UsageError("--in FILE (the factorization document) is required")
    doc = formats.load_json(args.input)
    a = _poly_matrix(args, args.a, "--a")
    try:
        p = formats.matrix_from_dict(doc["P"], a.ring)
        q = formats.matrix_from_dict(doc["Q"], a.ring)
        r = int(doc["r"])
    except (KeyError, TypeError, ValueError) as exc:
        if isinstance(exc, formats.FormatError):
            raise
        raise formats.FormatError(f"factorization document needs P, Q, r ({exc})") from None
    report = Report()
    shapes = p.rows == a.rows and q.cols == a.cols and p.cols == q.rows == r
    report.add("shapes P (m x r), Q (r x n)", shapes, f"P {p.shape}, Q {q.shape}, r={r}")
    if shapes:
        report.add("A=PQ", p * q == a)
        ra = rank(a)
        report.add("rank A = r", ra == r, f"rank A = {ra}")
        report.add("rank P = r", rank(p) == r)
        report.add("rank Q = r", rank(q) == r)
    _emit(args, report.to_dict())
    _say(args, *_report_lines(report))
    return EXIT_OK if report else EXIT_REFUTED


def cmd_lu(args):
    m = _poly_matrix(args, args.input)
    lu = factor.lu_gcd_factor(m)
    _emit(args, formats.lu_to_dict(lu))
    _say(args, f"d = {lu.d}", f"L = {lu.L}", f"U = {lu.U}")
    return EXIT_OK


def cmd_mlp(args):
    m = _poly_matrix(args, args.input)
    ok = factor.is_mlp(m)
    g = factor.minors_gcd(m)
    _emit(args, {"mlp": ok, "minors_gcd": str(g)})
    _say(args, f"minor left prime: {'yes' if ok else 'no'} (gcd of maximal minors = {g})")
    return EXIT_OK if ok else EXIT_REFUTED


def cmd_cert(args):
    m = _poly_matrix(args, args.input)
    try:
        cert = factor.mlp_certificate(m)
    except factor.NotMLP as exc:
        _say(args, f"no certificate: {exc}")
        return EXIT_REFUTED
    _emit(args, formats.certificate_to_dict(cert))
    _say(args, f"{len(cert.witnesses)} witness(es): d = " + ", ".join(str(d) for _, d in cert.witnesses))
    return EXIT_OK


def cmd_sse(args):
    m = _poly_matrix(args, args.input)
    result = sse_to_nonsingular(m)
    nilpotent = isinstance(result, NilpotencyWitness)
    if nilpotent and (args.u or args.v or args.b):
        raise UsageError("nilpotent input has no shift-equivalence pair to write")
    _emit(args, formats.chain_to_dict(result))
    if nilpotent:
        _say(args, f"nilpotent: A^{result.lag + 1} = 0 (lag {result.lag})")
    else:
        pair = compose_chain_to_se(result)
        # --b/--u/--v name output files here: core and the composed pair
        for path, m in ((args.b, result.core), (args.u, pair.U), (args.v, pair.V)):
            if path:
                formats.dump_json(formats.matrix_to_dict(m), path)
        _say(args, f"lag {result.lag}, core {result.core.rows}x{result.core.cols}: {result.core}",
             f"shift equivalence U = {pair.U}, V = {pair.V}")
    return EXIT_OK


def cmd_verify_sse(args):
    path = args.chain or args.input
    if not path:
        raise UsageError("--chain FILE is required")
    kind, chain = formats.chain_from_dict(formats.load_json(path), _ring(args))
    report = verify_sse_chain(chain)
    if kind == "nilpotent":
        report.add("core = 0", chain.core.is_zero())
        if chain.source.is_square():
            report.add("A^(l+1) = 0", mat_pow(chain.source, chain.lag + 1).is_zero(), f"l={chain.lag}")
    else:
        report.add("core nonsingular", chain.core.is_square() and bool(det(chain.core)))
    _emit(args, report.to_dict())
    _say(args, *_report_lines(report))
    return EXIT_OK if report else EXIT_REFUTED


def cmd_verify_se(args):
    a = _load_matrix(args, args.a, "--a")
    b = _load_matrix(args, args.b, "--b")
    u = _load_matrix(args, args.u, "--u")
    v = _load_matrix(args, args.v, "--v")
    if args.lag is None or args.lag < 1:
        raise UsageError("--lag N (N >= 1) is required")
    if len({m.ring for m in (a, b, u, v)}) != 1:
        raise UsageError("A, B, U, V must be over the same ring")
    report = verify_se(a, b, u, v, args.lag)
    _emit(args, report.to_dict())
    _say(args, *_report_lines(report))
    return EXIT_OK if report else EXIT_REFUTED


def cmd_counterexample(args):
    report = verify_counterexample()
    _emit(args, report.to_dict())
    doc = report.to_dict()
    lines = [f"  [{'ok' if c['ok'] else 'FAIL'}] {c['identity']}" for c in doc["checks"]]
    lines.append(f"det(I - t phi(A^4)) = {report.zeta}")
    _say(args, *lines)
    return EXIT_OK if report.ok else EXIT_REFUTED


COMMANDS = {
    "rank": (cmd_rank, "rank over the fraction field"),
    "frf": (cmd_frf, "full rank factorization A = PQ"),
    "verify-frf": (cmd_verify_frf, "re-check a factorization document against --a"),
    "lu": (cmd_lu, "A = LU with det L = gcd of maximal minors"),
    "mlp": (cmd_mlp, "test minor left primeness"),
    "cert": (cmd_cert, "MLP certificate C Z_j = d_j I"),
    "sse": (cmd_sse, "strong shift equivalence to a nonsingular core"),
    "verify-sse": (cmd_verify_sse, "verify a chain document"),
    "verify-se": (cmd_verify_se, "verify AU=UB, VA=BV, A^l=UV, B^l=VU"),
    "counterexample": (cmd_counterexample, "identities of the skew 3x3 counterexample"),
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--ring", choices=sorted(formats.RING_FLAGS), help="expected ring of all inputs")
    common.add_argument("--in", dest="input", metavar="FILE", help="input document")
    common.add_argument("--out", metavar="FILE", help="write the artifact or report here")
    common.add_argument("--a", metavar="FILE")
    common.add_argument("--b", metavar="FILE")
    common.add_argument("--u", metavar="FILE")
    common.add_argument("--v", metavar="FILE")
    common.add_argument("--lag", type=int, metavar="N")
    common.add_argument("--chain", metavar="FILE")
    common.add_argument("--quiet", action="store_true", help="suppress the summary on stdout")

    parser = argparse.ArgumentParser(
        prog="polyshift",
        description="Full rank factorization and shift equivalence over Z[x] and Q[x].",
    )
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")
    for name, (_, help_text) in COMMANDS.items():
        sub.add_parser(name, parents=[common], help=help_text)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    handler = COMMANDS[args.command][0]
    try:
        return handler(args)
    except factor.FactorizationIncomplete as exc:
        print(f"error: factorization incomplete: {exc}", file=sys.stderr)
        return EXIT_INCOMPLETE
    except (UsageError, formats.FormatError, OSError, ShapeError, RingCapabilityError,
            factor.RankDeficient, factor.SingularMatrix) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
