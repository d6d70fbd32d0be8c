"""Command line front end: monoreal {parse,hilbert,polarize,plan,verify,example}.

Exit codes: 0 on success or PASS, 1 when verification fails, 2 on bad input.
"""

from __future__ import annotations

import argparse
import sys

from .monomial import MonomialRing, hilbert_function
from .parser import ParseError, format_presentation, parse_presentation
from .plan import dumps, emit_plan
from .polarization import polarize
from .verify import GOLDEN_DMAX, golden_example, verify_plan

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2


class InputError(Exception):
    pass


def _read_ring(args) -> MonomialRing:
    try:
        if args.input in (None, "-"):
            text = sys.stdin.read()
        else:
            with open(args.input, encoding="utf-8") as fh:
                text = fh.read()
    except OSError as exc:
        raise InputError(f"cannot read input: {exc}") from exc
    try:
        return parse_presentation(text)
    except ParseError as exc:
        name = args.input if args.input not in (None, "-") else "<stdin>"
        raise InputError(f"{name}: {exc}") from exc


def _dmax(args, default: int) -> int:
    d = default if args.dmax is None else args.dmax
    if d < 0:
        raise InputError("--dmax must be non-negative")
    return d


def _ring_doc(ring: MonomialRing) -> dict:
    t = ring.table
    return {
        "presentation": format_presentation(ring),
        "even": [{"name": n, "degree": d} for n, d in t.even_vars],
        "odd": [{"name": n, "degree": d} for n, d in t.odd_vars],
        "ideal": ring.format_ideal(),
    }


def cmd_parse(args):
    ring = _read_ring(args)
    if args.format == "json":
        return dumps(_ring_doc(ring)), EXIT_OK
    return format_presentation(ring) + "\n", EXIT_OK


def cmd_hilbert(args):
    ring = _read_ring(args)
    h = hilbert_function(ring, _dmax(args, 16))
    if args.format == "json":
        return dumps({"presentation": format_presentation(ring), "ranks": list(h.ranks)}), EXIT_OK
    lines = [f"{d:>4}  {r}" for d, r in enumerate(h.ranks)]
    return "   d  rank\n" + "\n".join(lines) + "\n", EXIT_OK


def cmd_polarize(args):
    data = polarize(_read_ring(args))
    doc = {
        "a": list(data.a),
        "omega": [list(p) for p in data.omega],
        "omega_bar": [list(p) for p in data.omega_bar],
        "polarized": format_presentation(data.polarized),
    }
    if args.format == "json":
        return dumps(doc), EXIT_OK
    text = (f"a         = {doc['a']}\n"
            f"omega     = {[tuple(p) for p in data.omega]}\n"
            f"omega_bar = {[tuple(p) for p in data.omega_bar]}\n"
            f"{doc['polarized']}\n")
    return text, EXIT_OK


def _plan_text(doc: dict) -> str:
    z = doc["z_model"]
    fib = doc["fibration"]
    lines = [
        f"source:      {doc['source']['presentation']}",
        f"polarized:   {doc['polarization']['presentation']}",
        f"complex K:   {doc['complex']['description']} on " + ", ".join(doc["complex"]["vertices"]),
        f"             minimal non-faces {doc['complex']['minimal_non_faces']}",
        "factors:     " + ", ".join(f"{f['variable']} -> {f['space']}" for f in doc["factors"]),
        "fibration:   " + (", ".join(f"{tuple(c['pair'])}: {c['rule']}" for c in fib["coordinates"])
                           or "none (fiber is the polyhedral product)"),
        f"fiber {fib['fiber']}: torsion-free cohomology "
        f"{doc['predicted_cohomology']['torsion_free_quotient']}",
        f"Z-model:     c = {z['c']}",
        f"  Q'/L':     {z['q_prime']}",
        f"  Q/L:       {z['q']}",
        "  g:         " + ", ".join(f"{g['source']} -> {g['image']}" for g in z["generator_map"]),
        f"flags:       exact_cohomology={doc['flags']['exact_cohomology']} "
        f"free_split={doc['flags']['free_split']}",
    ]
    return "\n".join(lines) + "\n"


def cmd_plan(args):
    doc = emit_plan(_read_ring(args)).to_dict()
    return (dumps(doc) if args.format == "json" else _plan_text(doc)), EXIT_OK


def cmd_verify(args):
    plan = emit_plan(_read_ring(args))
    report = verify_plan(plan, _dmax(args, 16))
    out = dumps(report.to_dict()) if args.format == "json" else report.format() + "\n"
    return out, EXIT_OK if report.passed else EXIT_FAIL


def cmd_example(args):
    d = _dmax(args, GOLDEN_DMAX)
    if d == GOLDEN_DMAX:
        plan, report = golden_example()
    else:
        plan, _ = golden_example()
        report = verify_plan(plan, d)
    code = EXIT_OK if report.passed else EXIT_FAIL
    if args.format == "json":
        return dumps({"plan": plan.to_dict(), "verification": report.to_dict()}), code
    return _plan_text(plan.to_dict()) + "\n" + report.format() + "\n", code


COMMANDS = {
    "parse": (cmd_parse, "parse and normalize a presentation"),
    "hilbert": (cmd_hilbert, "degreewise ranks up to --dmax"),
    "polarize": (cmd_polarize, "polarize the ideal"),
    "plan": (cmd_plan, "emit the realization plan"),
    "verify": (cmd_verify, "run every algebraic check up to --dmax"),
    "example": (cmd_example, "plan and verification of Z[x] (x) Lambda[y] / (x^2 y)"),
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="monoreal",
        description="Realization plans for graded monomial ideal rings.")
    sub = parser.add_subparsers(dest="command", required=True)
    for name, (_, help_text) in COMMANDS.items():
        p = sub.add_parser(name, help=help_text)
        if name != "example":
            p.add_argument("--input", "-i", help="presentation file (default: stdin)")
        p.add_argument("--dmax", type=int, default=None,
                       help=f"degree bound (default {GOLDEN_DMAX if name == 'example' else 16})")
        p.add_argument("--format", choices=("json", "text"),
                       default="json" if name == "example" else "text")
        p.add_argument("--out", "-o", help="write output here instead of stdout")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    func = COMMANDS[args.command][0]
    try:
        out, code = func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    if args.out:
        try:
            with open(args.out, "w", encoding="utf-8") as fh:
                fh.write(out)
        except OSError as exc:
            print(f"error: cannot write output: {exc}", file=sys.stderr)
            return EXIT_INPUT
    else:
        sys.stdout.write(out)
    return code


if __name__ == "__main__":
    sys.exit(main())
