"""
gerst: Hochschild cohomology and Gerstenhaber brackets of k[x] (x)_tau k[y].

Exit status: 0 on success, 1 if a verification fails, 2 on usage or parse errors.

Cocycle files are JSON objects

    {"hom_degree": 1, "values": {"e1*e0'": "x", "e0*e1'": "y"}}

with polynomial values in the plain-text grammar of ``gerst.parsing``.
Rationals in JSON output are "num/den" strings.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from .algebra import TwistSpec, check_twist_axioms, format_monomial, format_terms
from .cohomology import Cochain, hh_dimensions, is_cocycle
from .parsing import ParseError, parse_polynomial
from .resolution import ALL_GENERATORS, gen_name, parse_gen, resolution, solve_chain_lift


class UsageError(Exception):
    pass


def rational(c):
    c = Fraction(c)
    return f"{c.numerator}/{c.denominator}"


def text_gen(g, flipped=False):
    p, q = g
    return f"e{p}'⊗e{q}" if flipped else f"e{p}⊗e{q}'"


def _twist(text):
    try:
        return TwistSpec.parse(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"bad twist {text!r}: {exc}")


def _bound(text):
    n = int(text)
    if n < 0:
        raise argparse.ArgumentTypeError("N must be nonnegative")
    return n


def load_cocycle(path, twist):
    try:
        with open(path) as fh:
            data = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot read cocycle file {path}: {exc}")
    try:
        values = {parse_gen(k): parse_polynomial(v, twist) for k, v in data["values"].items()}
        c = Cochain(twist, int(data["hom_degree"]), values)
    except (KeyError, TypeError, ValueError) as exc:
        raise UsageError(f"bad cocycle file {path}: {exc}")
    return c


# subcommands --------------------------------------------------------------

def cmd_normal_form(args):
    el = parse_polynomial(args.poly, args.twist)
    text = str(el)
    data = {"twist": str(args.twist), "input": args.poly, "normal_form": text,
            "terms": [{"x": i, "y": j, "coefficient": rational(c)} for (i, j), c in sorted(el.terms.items())]}
    return 0, data, text


def cmd_hh(args):
    report = hh_dimensions(args.twist, args.N)
    lines = [f"HH* of twist ({args.twist}), internal degrees up to {args.N}"]
    for m in (0, 1, 2):
        dims = report.dims(m)
        lines.append(f"HH^{m}: " + ", ".join(f"d={d}: {n}" for d, n in dims.items()))
    lines.append("representatives:")
    for (m, d), piece in sorted(report.pieces.items()):
        for rep in piece.representatives:
            vals = ", ".join(f"{text_gen(g)} -> {format_terms(t)}" for g, t in sorted(rep.values.items()))
            lines.append(f"  HH^{m}, d={d}: {vals}")
    return 0, report.to_dict(), "\n".join(lines)


def cmd_bracket(args):
    from .bracket import engine

    f = load_cocycle(args.f, args.twist)
    g = load_cocycle(args.g, args.twist)
    for name, c in (("f", f), ("g", g)):
        if not is_cocycle(c):
            raise UsageError(f"{name} is not a cocycle")
    prov = {}
    eng = engine(args.twist)
    raw = eng.bracket(f, g, reduce=False, provenance=prov)
    red = eng.bracket(f, g)
    data = {"twist": str(args.twist), "bracket": raw.to_dict(), "reduced": red.to_dict(),
            "provenance": {gen_name(e): {"f_psi_g": str(a), "g_psi_f": str(b)}
                           for e, (a, b) in sorted(prov.items())}}
    lines = [f"[f,g] has homological degree {raw.degree}"]
    for e in sorted(set(raw.values) | set(prov)):
        lines.append(f"  on {text_gen(e)}: {format_terms(raw.values.get(e, {}))}")
        if e in prov:
            a, b = prov[e]
            lines.append(f"    f psi_g = {a}")
            lines.append(f"    g psi_f = {b}")
    if not raw.values:
        lines.append("  zero")
    if red != raw:
        lines.append("reduced: " + ", ".join(f"{text_gen(e)} -> {format_terms(t)}"
                                             for e, t in sorted(red.values.items())))
    return 0, data, "\n".join(lines)


def _records(el, ring_letters):
    return [{"left": format_monomial(mL, ring_letters) or "1", "generator": gen_name(g),
             "right": format_monomial(mR, ring_letters) or "1", "coefficient": rational(c)}
            for (mL, g, mR), c in sorted(el.items())]


def cmd_resolution(args):
    from .koszul import lift_twist

    twist = args.twist
    data = {"twist": str(twist)}
    lines = [f"twisted tensor product resolution for ({twist})"]
    for flipped, name in ((False, "forward"), (True, "flipped")):
        res = resolution(twist, flipped)
        letters = res.ring.letters
        block = {}
        lines.append(f"{name} differential (coefficients written left ⊗ right):")
        for g in ALL_GENERATORS:
            d = res.differential_of_generator(g)
            block[gen_name(g, flipped)] = _records(d, letters)
            terms = " ".join(
                f"{'-' if c < 0 else '+'} {abs(c)}·({format_monomial(mL, letters) or '1'}⊗{format_monomial(mR, letters) or '1'})({text_gen(h, flipped)})"
                for (mL, h, mR), c in sorted(d.items()))
            lines.append(f"  d({text_gen(g, flipped)}) = {terms or '0'}")
        data[name] = block
    lift = solve_chain_lift(twist)
    data["chain_lift"] = {gen_name(h, True): _records(v, ("x", "y")) for h, v in lift.items()}
    for h, v in lift.items():
        vals = " + ".join(f"{c}·{text_gen(g)}" for (_, g, _), c in v.items())
        lines.append(f"  tau({text_gen(h, True)}) = {vals}")
    table = lift_twist(twist)
    data["twist_table"] = {name: {str(k): rational(c) for k, c in sorted(getattr(table, name).rule.items())}
                           for name in ("B_P", "A_Q", "B_P_inv", "A_Q_inv")}
    return 0, data, "\n".join(lines)


def run_suites(twist, N):
    """Every verification suite, as a list of Reports."""
    from . import bracket, koszul
    from . import resolution as res

    reports = [
        check_twist_axioms(twist, N),
        koszul.verify_compatibility(twist, N),
        res.verify_exactness(twist, N),
        res.verify_exactness(twist, N, flipped=True),
        res.verify_bimodule_axioms(twist, 3),
        res.verify_bimodule_axioms(twist, 3, flipped=True),
        res.verify_chain_lift(twist, N),
        res.verify_coalgebra(twist, N),
        bracket.verify_sigma_condition(twist, N),
        bracket.verify_homotopy_equation(twist, N),
        bracket.verify_lie(twist, min(N, 4), jacobi_N=min(N, 2), hh2_powers=min(N, 3)),
    ]
    if twist == TwistSpec(1, 0):
        reports.append(bracket.verify_schouten(min(N, 4)))
    return reports


def cmd_verify(args):
    if args.N < 2:
        raise UsageError("verify needs N >= 2")
    reports = run_suites(args.twist, args.N)
    ok = all(r.passed for r in reports)
    data = {"twist": str(args.twist), "N": args.N, "passed": ok, "suites": [r.to_dict() for r in reports]}
    text = "\n".join(r.summary() for r in reports)
    text += f"\n{'all suites passed' if ok else 'verification FAILED'}"
    return (0 if ok else 1), data, text


# entry point --------------------------------------------------------------

def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--twist", type=_twist, default=TwistSpec(1, 1),
                        help="q,alpha for the relation yx = q xy + alpha x^2 (default 1,1)")
    common.add_argument("-N", type=_bound, default=8, help="internal degree bound (default 8)")
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--out", help="write the output to this file")

    parser = argparse.ArgumentParser(prog="gerst", description=__doc__.strip().splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("hh", parents=[common], help="Hochschild cohomology per internal degree")
    p = sub.add_parser("bracket", parents=[common], help="bracket of two cocycle files")
    p.add_argument("f")
    p.add_argument("g")
    sub.add_parser("verify", parents=[common], help="run every verification suite")
    sub.add_parser("resolution", parents=[common], help="dump differentials and chain lift")
    p = sub.add_parser("normal-form", parents=[common], help="normal form of a polynomial")
    p.add_argument("poly")
    return parser


COMMANDS = {"hh": cmd_hh, "bracket": cmd_bracket, "verify": cmd_verify,
            "resolution": cmd_resolution, "normal-form": cmd_normal_form}


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        status, data, text = COMMANDS[args.command](args)
    except (UsageError, ParseError) as exc:
        print(f"gerst: error: {exc}", file=sys.stderr)
        return 2
    output = json.dumps(data, indent=2, sort_keys=True, ensure_ascii=False) if args.format == "json" else text
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(output + "\n")
    else:
        print(output)
    return status


if __name__ == "__main__":
    sys.exit(main())
