"""Command-line front end.

    semitree rst FILE
    semitree reduce FILE [--normalize] [--trace] [--count-ops] [--permute P]
    semitree check FILE [--balance] [--eigen] [--lemma2] [--all]
    semitree cayley --kind KIND [--universe U] [--base KIND] [--root R] (XS... | --random SEED --n N)
    semitree count-ops N [--kind KIND] [--seed S]

Reports are JSON on stdout; diagnostics go to stderr.  Exit codes:
0 success, 1 a requested check failed, 2 parse error, 3 oracle cap
exceeded, 4 algebra unsuitable for the command, 5 precondition violated,
6 floating-point overflow.
"""

from __future__ import annotations

import argparse
import json
import random
import sys

from . import matrixfile
from .algebra import Semiring, make_algebra
from .errors import (
    AlgebraError,
    InternalInvariantViolated,
    NotASemifield,
    OracleCapExceeded,
    PreconditionViolated,
    SemitreeError,
)
from .matrix import SquareMatrix, is_stochastic, transpose_apply
from .oracle import balance_report, cayley_check, rst_vector_bruteforce
from .reduction import expected_op_counts, phase1, phase2, count_ops, verify_lemma2
from .sampling import random_scalar

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_PARSE = 2
EXIT_CAP = 3
EXIT_ALGEBRA = 4
EXIT_PRECONDITION = 5
EXIT_OVERFLOW = 6

ZERO_WARNING = "all-zero vector: no rooted spanning tree has nonzero weight"


class UsageError(SemitreeError, ValueError):
    pass


def _encode_vector(alg: Semiring, xs) -> list:
    return [alg.encode(x) for x in xs]


def _header(command: str, A: SquareMatrix) -> dict:
    return {"command": command, "algebra": A.algebra.descriptor(), "n": A.n}


def _counts(c) -> dict:
    return {"adds": c.adds, "muls": c.muls, "invs": c.invs}


def _parse_permutation(text: str, n: int) -> list[int]:
    try:
        perm = [int(tok) - 1 for tok in text.split(",")]
    except ValueError:
        raise UsageError(f"--permute expects comma-separated integers, got {text!r}") from None
    if sorted(perm) != list(range(n)):
        raise UsageError(f"--permute must be a permutation of 1..{n}")
    return perm


# --------------------------------------------------------------------------
# commands


def cmd_rst(A: SquareMatrix) -> dict:
    w = rst_vector_bruteforce(A)
    report = _header("rst", A)
    report["w"] = _encode_vector(A.algebra, w)
    report["warnings"] = [ZERO_WARNING] if w.is_zero() else []
    return report


def cmd_reduce(
    A: SquareMatrix,
    normalize: bool = False,
    trace: bool = False,
    count: bool = False,
    permute: str | None = None,
) -> dict:
    alg = A.algebra
    if not alg.is_semifield:
        raise NotASemifield(f"reduce needs a semifield; {alg.kind} is not one")
    perm = _parse_permutation(permute, A.n) if permute else None
    work = A.permuted(perm) if perm else A
    tr = phase1(work)
    w = phase2(tr)
    values = list(w)
    if perm:
        values = [None] * A.n
        for k, p in enumerate(perm):
            values[p] = w[k]

    report = _header("reduce", A)
    report["w"] = _encode_vector(alg, values)
    warnings = []
    if w.is_zero():
        warnings.append(ZERO_WARNING)
    if normalize:
        if alg.kind != "classical-nonneg" or not is_stochastic(A):
            warnings.append("--normalize applies to classical stochastic matrices only; skipped")
        elif not w.is_zero():
            total = sum(values)
            report["distribution"] = [alg.encode(x / total) for x in values]
    if trace:
        report["s"] = _encode_vector(alg, tr.s)
        if perm:
            report["elimination_order"] = [p + 1 for p in perm]
    if count:
        report["op_counts"] = _counts(tr.counts)
    report["warnings"] = warnings
    return report


def cmd_check(
    A: SquareMatrix,
    balance: bool = False,
    eigen: bool = False,
    lemma2: bool = False,
    all_checks: bool = False,
) -> dict:
    alg = A.algebra
    if not (balance or eigen or lemma2):
        all_checks = True
    if all_checks:
        balance = eigen = True
    if lemma2 and not alg.is_semifield:
        raise NotASemifield(f"the lemma2 check needs a semifield; {alg.kind} is not one")
    if all_checks and alg.is_semifield:
        lemma2 = True

    w = rst_vector_bruteforce(A)
    report = _header("check", A)
    report["w"] = _encode_vector(alg, w)
    checks = {}
    passed = True
    warnings = []
    if balance:
        rows = balance_report(A, w)
        ok = all(r.holds for r in rows)
        checks["balance"] = "pass" if ok else "fail"
        report["balance"] = [
            {
                "vertex": r.vertex + 1,
                "lhs": alg.encode(r.lhs),
                "rhs": alg.encode(r.rhs),
                "unicyclic": alg.encode(r.unicyclic),
                "holds": r.holds,
            }
            for r in rows
        ]
        passed &= ok
    if eigen:
        if is_stochastic(A):
            ok = transpose_apply(A, w).eq(w)
            checks["eigen"] = "pass" if ok else "fail"
            passed &= ok
        else:
            checks["eigen"] = "not stochastic: eigen check skipped"
    if lemma2:
        steps = [verify_lemma2(A, i) for i in range(1, A.n)]
        ok = all(steps)
        checks["lemma2"] = "pass" if ok else "fail"
        report["lemma2"] = [{"step": i + 1, "holds": s} for i, s in enumerate(steps)]
        passed &= ok
    elif all_checks and not alg.is_semifield:
        checks["lemma2"] = "not a semifield: lemma2 check skipped"
    if w.is_zero():
        warnings.append(ZERO_WARNING)
    report["checks"] = checks
    report["passed"] = bool(passed)
    report["warnings"] = warnings
    return report


def _decode_token(alg: Semiring, token: str):
    try:
        obj = json.loads(token)
    except json.JSONDecodeError:
        obj = token
    return alg.decode(obj)


def cmd_cayley(
    alg: Semiring,
    xs: list | None = None,
    seed: int | None = None,
    n: int | None = None,
    root: int | None = None,
) -> dict:
    """``xs`` are already-decoded scalars; with ``seed`` they are drawn at random."""
    if seed is not None:
        if n is None:
            raise UsageError("--random needs --n")
        rng = random.Random(seed)
        xs = [random_scalar(alg, rng, zero_prob=0.1) for _ in range(n)]
    if not xs or len(xs) < 2:
        raise UsageError("cayley needs at least two scalars")
    r = len(xs) - 1 if root is None else root - 1
    lhs, rhs = cayley_check(alg, xs, r)
    ok = alg.eq(lhs, rhs)
    return {
        "command": "cayley",
        "algebra": alg.descriptor(),
        "n": len(xs),
        "root": r + 1,
        "xs": _encode_vector(alg, xs),
        "lhs": alg.encode(lhs),
        "rhs": alg.encode(rhs),
        "passed": ok,
    }


def cmd_count_ops(n: int, kind: str = "classical-nonneg", seed: int = 0) -> dict:
    got = count_ops(n, kind, seed)
    want = expected_op_counts(n)
    return {
        "command": "count-ops",
        "algebra": make_algebra(kind).descriptor(),
        "n": n,
        "op_counts": _counts(got),
        "closed_form": _counts(want),
        "passed": got == want,
    }


# --------------------------------------------------------------------------
# entry point


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="semitree",
        description="Rooted spanning tree vectors and state reduction over semirings.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("rst", help="rooted spanning tree vector by exhaustive enumeration")
    p.add_argument("file")

    p = sub.add_parser("reduce", help="rooted spanning tree vector by state reduction")
    p.add_argument("file")
    p.add_argument("--normalize", action="store_true", help="also print w / sum(w)")
    p.add_argument("--trace", action="store_true", help="also print the s values")
    p.add_argument("--count-ops", action="store_true", help="also print operation counts")
    p.add_argument("--permute", metavar="P", help="1-based elimination order, e.g. 3,1,2")

    p = sub.add_parser("check", help="verify the tree identities on a matrix")
    p.add_argument("file")
    p.add_argument("--balance", action="store_true")
    p.add_argument("--eigen", action="store_true")
    p.add_argument("--lemma2", action="store_true")
    p.add_argument("--all", action="store_true", dest="all_checks")

    p = sub.add_parser("cayley", help="check the tree enumerator identity")
    p.add_argument("xs", nargs="*", help="scalar encodings (JSON or -inf/+inf)")
    p.add_argument("--kind", required=True)
    p.add_argument("--universe", help="comma-separated names for boolean-subsets")
    p.add_argument("--base", help="base kind for interval")
    p.add_argument("--root", type=int, help="1-based distinguished index (default n)")
    p.add_argument("--random", type=int, metavar="SEED", dest="seed")
    p.add_argument("--n", type=int)

    p = sub.add_parser("count-ops", help="instrumented operation counts")
    p.add_argument("n", type=int)
    p.add_argument("--kind", default="classical-nonneg")
    p.add_argument("--seed", type=int, default=0)
    return parser


def run(args) -> dict:
    if args.command == "cayley":
        universe = args.universe.split(",") if args.universe else None
        alg = make_algebra(args.kind, universe=universe, base=args.base)
        xs = [_decode_token(alg, t) for t in args.xs] if args.seed is None else None
        return cmd_cayley(alg, xs, seed=args.seed, n=args.n, root=args.root)
    if args.command == "count-ops":
        return cmd_count_ops(args.n, args.kind, args.seed)

    A = matrixfile.load(args.file)
    if args.command == "rst":
        return cmd_rst(A)
    if args.command == "reduce":
        return cmd_reduce(A, args.normalize, args.trace, args.count_ops, args.permute)
    return cmd_check(A, args.balance, args.eigen, args.lemma2, args.all_checks)


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        report = run(args)
    except OracleCapExceeded as exc:
        print(f"semitree: {exc}", file=sys.stderr)
        return EXIT_CAP
    except NotASemifield as exc:
        print(f"semitree: {exc}", file=sys.stderr)
        return EXIT_ALGEBRA
    except (PreconditionViolated, InternalInvariantViolated) as exc:
        print(f"semitree: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION
    except OverflowError as exc:
        print(f"semitree: {exc}", file=sys.stderr)
        return EXIT_OVERFLOW
    except (matrixfile.MatrixFileError, AlgebraError, UsageError, ValueError, IndexError) as exc:
        print(f"semitree: {exc}", file=sys.stderr)
        return EXIT_PARSE

    for warning in report.get("warnings", []):
        print(f"semitree: warning: {warning}", file=sys.stderr)
    sys.stdout.write(json.dumps(report, indent=2, ensure_ascii=False) + "\n")
    if report.get("passed") is False:
        return EXIT_CHECK_FAILED
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
