"""Command-line front end.

Exit codes: 0 on success (including "structure does not exist" verdicts),
2 on invalid input, 3 when an internal consistency check fails.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Sequence

from . import linalg as la
from . import lipschitz as lp
from . import obstruction as ob
from . import reps, suites
from .blades import Signature
from .classify import classify, emit_tables
from .errors import InputError, InternalCheckError
from .hyperbolic import hyp_conj, hyp_modulus, hyp_product, parse_hyperbolic, unit_component

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_INTERNAL = 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise InputError(message)


def _eps(text: str | None) -> int | None:
    if text is None:
        return None
    if text in ("+1", "1", "+"):
        return 1
    if text in ("-1", "-"):
        return -1
    raise InputError(f"eps must be +1 or -1, got {text!r}")


def _fmt(x) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def _print_matrix(M, out) -> None:
    for row in M:
        print(" ".join(_fmt(x) for x in row), file=out)


# ------------------------------------------------------------------- verbs


def cmd_classify(args, out) -> int:
    print(classify(Signature(args.p, args.q)).one_line(), file=out)
    return EXIT_OK


def cmd_table(args, out) -> int:
    out.write(emit_tables(args.range_d))
    return EXIT_OK


def cmd_irrep(args, out) -> int:
    sig = Signature(args.p, args.q)
    rep = reps.build_irrep(sig, _eps(args.eps))
    if args.export:
        try:
            with open(args.export, "w", encoding="utf-8") as fh:
                fh.write(reps.export_rep(rep))
        except OSError as exc:
            raise InputError(f"cannot write {args.export}: {exc.strerror}") from exc
    if args.verify:
        reports = suites.rep_structure_report(rep, suites.random.Random(args.seed))
        failed = [r for r in reports if r["status"] != "pass"]
        if failed:
            for r in failed:
                print(f"FAIL {r['property']}: {r['counterexample'].get('reason')}", file=out)
            raise InternalCheckError(f"{len(failed)} representation checks failed")
        print(f"dim={rep.dim}, all checks passed", file=out)
        return EXIT_OK
    if args.show:
        out.write(reps.export_rep(rep))
        return EXIT_OK
    schur = reps.compute_schur(rep)
    eps = "none" if rep.eps is None else f"{rep.eps:+d}"
    print(f"p={sig.p} q={sig.q} dim={rep.dim} eps={eps} S={schur.tag}", file=out)
    return EXIT_OK


def cmd_pairing(args, out) -> int:
    rep = reps.build_irrep(Signature(args.p, args.q), _eps(args.eps))
    form = lp.find_canonical_pairing(rep)
    rec = rep.record
    w = rep.omega()
    beta_ok = form.transpose(w) == la.scale(rec.beta, la.inverse(w))
    print(f"sym={form.sym:+d} type={form.type:+d} beta={rec.beta:+d} omega_law={'ok' if beta_ok else 'FAILED'}", file=out)
    _print_matrix(form.B, out)
    if not beta_ok:
        raise InternalCheckError("omega transpose law fails")
    return EXIT_OK


def cmd_verify(args, out) -> int:
    if args.all:
        names = list(suites.SUITES)
    elif args.suite:
        names = args.suite
    else:
        raise InputError("give --all or at least one --suite")

    def show(r):
        if args.json:
            return
        sig = "" if r["signature"] is None else f" ({r['signature'][0]},{r['signature'][1]})"
        line = f"{r['status'].upper()} {r['suite']}.{r['property']}{sig} samples={r['samples']}"
        if r["status"] != "pass":
            line += f" :: {r['counterexample'].get('reason')}"
        print(line, file=out, flush=True)

    reports = suites.run_suites(names, seed=args.seed, samples=args.samples, progress=show)
    failed = sum(r["status"] != "pass" for r in reports)
    if args.json:
        json.dump(reports, out, indent=1)
        out.write("\n")
    else:
        print(f"{len(reports) - failed} passed, {failed} failed (seed {args.seed})", file=out)
    return EXIT_INTERNAL if failed else EXIT_OK


def cmd_obstruct(args, out) -> int:
    ctx, cands = ob.load_context(args.input)
    verdict = ob.evaluate(ctx, args.structure, cands)
    if args.json:
        payload = verdict.to_json()
        payload["signature"] = [ctx.p, ctx.q]
        json.dump(payload, out, indent=1)
        out.write("\n")
        return EXIT_OK
    label = "elementary pinor bundle" if args.structure == "auto" else None
    print(verdict.summary(label), file=out)
    return EXIT_OK


def cmd_hyp(args, out) -> int:
    z = parse_hyperbolic(args.z)
    op = args.op
    if op == "mul":
        if args.w is None:
            raise InputError("mul needs two operands")
        print(hyp_product(z, parse_hyperbolic(args.w)), file=out)
    elif args.w is not None:
        raise InputError(f"{op} takes one operand")
    elif op == "conj":
        print(hyp_conj(z), file=out)
    elif op == "mod":
        print(hyp_modulus(z), file=out)
    elif op == "inv":
        print(z.inverse(), file=out)
    elif op == "split":
        a, b = z.split()
        print(f"({a}, {b})", file=out)
    elif op == "component":
        print(unit_component(z), file=out)
    return EXIT_OK


# ------------------------------------------------------------------ parsing


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="cliffpin", description="Exact computations with real Clifford algebras and pin representations.")
    sub = parser.add_subparsers(dest="verb", required=True, parser_class=_Parser)

    sp = sub.add_parser("classify", help="mod-8 classification record of Cl(p,q)")
    sp.add_argument("p", type=int)
    sp.add_argument("q", type=int)
    sp.set_defaults(func=cmd_classify)

    sp = sub.add_parser("table", help="CSV classification table for 1 <= p+q <= RANGE_D")
    sp.add_argument("range_d", type=int)
    sp.set_defaults(func=cmd_table)

    sp = sub.add_parser("irrep", help="build an irreducible real representation")
    sp.add_argument("p", type=int)
    sp.add_argument("q", type=int)
    sp.add_argument("--eps", help="+1 or -1; required exactly when p-q = 1 or 5 mod 8")
    sp.add_argument("--verify", action="store_true", help="run the structural checks")
    sp.add_argument("--export", metavar="FILE", help="write the portable text form")
    sp.add_argument("--show", action="store_true", help="print the portable text form")
    sp.add_argument("--seed", type=int, default=suites.DEFAULT_SEED)
    sp.set_defaults(func=cmd_irrep)

    sp = sub.add_parser("pairing", help="canonical pairing of the irrep")
    sp.add_argument("p", type=int)
    sp.add_argument("q", type=int)
    sp.add_argument("--eps")
    sp.set_defaults(func=cmd_pairing)

    sp = sub.add_parser("verify", help="run property suites")
    sp.add_argument("--all", action="store_true")
    sp.add_argument("--suite", action="append", choices=list(suites.SUITES))
    sp.add_argument("--seed", type=int, default=suites.DEFAULT_SEED, help=f"default {suites.DEFAULT_SEED}")
    sp.add_argument("--samples", type=int, default=suites.DEFAULT_SAMPLES, help=f"default {suites.DEFAULT_SAMPLES}")
    sp.add_argument("--json", action="store_true")
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("obstruct", help="evaluate a structure on a cohomology presentation")
    sp.add_argument("--input", required=True, metavar="CTX.json")
    sp.add_argument(
        "--structure",
        default="auto",
        choices=["auto", "spin", "pin", "pin_twisted", "pinq", "pinq_twisted", "spinq", "spino"],
    )
    sp.add_argument("--json", action="store_true")
    sp.set_defaults(func=cmd_obstruct)

    sp = sub.add_parser("hyp", help="hyperbolic number arithmetic; numbers are written x,y")
    sp.add_argument("op", choices=["mul", "conj", "mod", "inv", "split", "component"])
    sp.add_argument("z")
    sp.add_argument("w", nargs="?")
    sp.set_defaults(func=cmd_hyp)
    return parser


def run(argv: Sequence[str] | None = None, out=None, err=None) -> int:
    out = sys.stdout if out is None else out
    err = sys.stderr if err is None else err
    try:
        args = build_parser().parse_args(argv)
        return args.func(args, out)
    except InternalCheckError as exc:
        print(f"internal check failed: {exc}", file=err)
        return EXIT_INTERNAL
    except (InputError, ValueError) as exc:
        print(f"error: {exc}", file=err)
        return EXIT_INPUT
    except SystemExit as exc:  # --help
        return int(exc.code or 0)


def main() -> None:
    sys.exit(run())
