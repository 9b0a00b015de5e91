"""Command-line front end.  JSON goes to stdout, diagnostics to stderr.

Exit codes: 0 success, 1 classification mismatch, 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import os
import re
import sys
from fractions import Fraction

from sympy import isprime

from . import checks
from .algebra import AlgebraError, NoRationalWitness, Octonion, doubling_chain, find_zero_divisor, is_composition_algebra
from .automorphisms import (
    AutomorphismError,
    fixed_subalgebra,
    is_automorphism,
    order,
    quaternion_presentation,
    s_element,
    s_p_element,
    s_times_torus,
    torus_element,
)
from .classify import FIELD_MATRIX, SCHEMA, ClassificationMismatch, classify_field
from .fields import (
    RATIONALS,
    FieldError,
    hilbert_symbol,
    hilbert_symbol_at_place,
    parse_field,
    parse_scalar,
    relevant_places,
)
from .forms import DiagonalForm, FormError, is_isotropic, quaternion_is_split

VERBS = ("classify", "element", "fixed-subalgebra", "hilbert", "form", "double", "verify-paper")
_ELEMENT_RE = re.compile(r"^(s)$|^(t|st):([^,]+),([^,]+)$|^(sp):(\d+)$")


def _field_arg(text):
    try:
        return parse_field(text)
    except FieldError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _scalar_arg(text):
    try:
        return parse_scalar(text)
    except FieldError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _scalar_list_arg(text):
    return [_scalar_arg(t) for t in text.split(",") if t.strip()]


def _prime_list_arg(text):
    try:
        primes = [int(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"malformed prime list {text!r}") from None
    for p in primes:
        if p % 4 != 3 or not isprime(p):
            raise argparse.ArgumentTypeError(f"{p} is not a prime congruent to 3 mod 4")
    return tuple(primes)


def _element_arg(text):
    m = _ELEMENT_RE.match(text.strip())
    if not m:
        raise argparse.ArgumentTypeError(f"malformed element {text!r} (expected s, t:<b>,<g>, st:<b>,<g> or sp:<p>)")
    if m.group(1):
        return ("s",)
    if m.group(2):
        return (m.group(2), _scalar_arg(m.group(3)), _scalar_arg(m.group(4)))
    return ("sp", int(m.group(6)))


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "text"), default="json")

    parser = argparse.ArgumentParser(prog="octoinv", description="Involutions of split G2 over exact fields.")
    sub = parser.add_subparsers(dest="verb", required=True, metavar="{" + ",".join(VERBS) + "}")

    p = sub.add_parser("classify", parents=[common], help="classify involutions over one field")
    p.add_argument("--field", type=_field_arg, required=True)
    p.add_argument("--q-primes", type=_prime_list_arg, default=(3, 7, 11))
    p.add_argument("--probe-samples", type=int, default=0)
    p.add_argument("--out")

    for verb in ("element", "fixed-subalgebra"):
        p = sub.add_parser(verb, parents=[common], help="inspect a named automorphism")
        p.add_argument("--name", type=_element_arg, required=True)
        p.add_argument("--field", type=_field_arg, default=parse_field("Q"))
        if verb == "element":
            p.add_argument("--show", choices=("matrix", "order", "fixed-subalgebra"), default="matrix")
            p.add_argument("--cap", type=int, default=12)

    p = sub.add_parser("hilbert", parents=[common], help="Hilbert symbol (a, b)")
    p.add_argument("--a", type=_scalar_arg, required=True)
    p.add_argument("--b", type=_scalar_arg, required=True)
    p.add_argument("--field", type=_field_arg, required=True)

    p = sub.add_parser("form", parents=[common], help="decide isotropy of a diagonal form")
    p.add_argument("--coeffs", type=_scalar_list_arg, required=True)
    p.add_argument("--field", type=_field_arg, required=True)
    p.add_argument("--decide", choices=("isotropy",), default="isotropy")

    p = sub.add_parser("double", parents=[common], help="doubling chain from k·e")
    p.add_argument("--alphas", type=_scalar_list_arg, default=[Fraction(1)] * 3)
    p.add_argument("--field", type=_field_arg, default=parse_field("Q"))

    p = sub.add_parser("verify-paper", parents=[common], help="classify every field and run the property suites")
    p.add_argument("--probe-samples", type=int, default=0)
    p.add_argument("--full", action="store_true", help="full-size property suites (slower)")
    return parser


def parse_args(argv=None) -> argparse.Namespace:
    return build_parser().parse_args(argv)


def _build_element(name, field):
    kind = name[0]
    if kind == "s":
        return s_element(field)
    if kind == "t":
        return torus_element(name[1], name[2], field)
    if kind == "st":
        return s_times_torus(name[1], name[2], field)
    return s_p_element(name[1], field)


def _element_label(name) -> str:
    if name[0] == "s":
        return "s"
    if name[0] == "sp":
        return f"sp:{name[1]}"
    return f"{name[0]}:{name[1]},{name[2]}"


def _fixed_doc(m) -> dict:
    d = fixed_subalgebra(m)
    doc = {"fixed_basis": [str(x) for x in d.octonions()]}
    if d.dim == 4:
        pres = quaternion_presentation(d)
        inv = quaternion_is_split(pres.alpha, pres.beta, m.field)
        doc["presentation"] = {"alpha": str(pres.alpha), "beta": str(pres.beta)}
        doc["invariant"] = inv.to_json()
        try:
            zd = find_zero_divisor(d)
        except NoRationalWitness:
            zd = None
        if zd is not None:
            doc["zero_divisor"] = [str(Octonion._raw(v, m.field)) for v in zd]
    return doc


def cmd_element(args) -> dict:
    m = _build_element(args.name, args.field)
    doc = {"element": _element_label(args.name), "field": str(args.field)}
    show = getattr(args, "show", "fixed-subalgebra")
    if show == "matrix":
        doc["matrix"] = m.to_json()
        doc["automorphism"] = is_automorphism(m).ok
    elif show == "order":
        n = order(m, args.cap)
        doc["order"] = n if n is not None else "exceeds cap"
    else:
        doc.update(_fixed_doc(m))
    return doc


def cmd_hilbert(args) -> dict:
    f = args.field
    if f.kind == RATIONALS:
        symbols = {str(v): hilbert_symbol_at_place(args.a, args.b, v) for v in relevant_places(args.a, args.b)}
        inv = quaternion_is_split(args.a, args.b, f)
        return {"field": str(f), "symbols": symbols, "verdict": inv.verdict,
                "ramified_places": [str(v) for v in inv.ramified_places]}
    s = hilbert_symbol(f.element(args.a), f.element(args.b), f)
    return {"field": str(f), "symbol": s, "verdict": "split" if s == 1 else "division"}


def cmd_form(args) -> dict:
    f = args.field
    form = DiagonalForm(tuple(args.coeffs), f)
    result = is_isotropic(form)
    doc = {"field": str(f), "coefficients": [str(c) for c in form.coefficients],
           "verdict": "isotropic" if result.isotropic else "anisotropic", "method": result.method}
    if result.witness is not None:
        doc["witness"] = [str(x) for x in result.witness]
    if result.local:
        doc["anisotropic_places"] = [str(v) for v, ok in result.local.items() if not ok]
    return doc


def cmd_double(args) -> dict:
    chain = doubling_chain(args.field, args.alphas)
    levels = []
    for alg in chain:
        levels.append({
            "dim": alg.dim,
            "commutative": alg.is_commutative()[0],
            "associative": alg.is_associative()[0],
            "composition": is_composition_algebra(alg).ok,
        })
    return {"field": str(args.field), "levels": levels, "algebra": chain[-1].to_json()}


def cmd_classify(args):
    report = classify_field(args.field, args.q_primes, args.probe_samples, seed=_seed(), strict=False)
    doc = report.to_json()
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(_dumps(doc) + "\n")
    return doc, (0 if report.ok else 1)


def _seed() -> int:
    return int(os.environ.get("OCTO_SEED", "0"))


def cmd_verify_paper(args):
    seed = _seed()
    counts = {}
    fields = []
    ok = True
    for field in FIELD_MATRIX:
        report = classify_field(field, probe_samples=args.probe_samples, seed=seed, strict=False)
        counts[field.short_name] = report.count
        fields.append({
            "field": str(field),
            "count": report.count,
            "ok": report.ok,
            "classes": [{"members": m, "verdict": c.invariant.verdict} for c, m in zip(report.classes, report.members)],
            "checks": [{"name": n, "ok": o, "detail": d} for n, o, d in report.checks],
            "probes": report.probes,
        })
        ok &= report.ok and all(p["ok"] for p in report.probes)
    suites = checks.run_suites(seed, 1.0 if args.full else 0.2)
    ok &= all(s[1] for s in suites)
    doc = {
        "seed": seed,
        "counts": counts,
        "fields": fields,
        "suites": [{"name": n, "ok": o, "detail": d} for n, o, d in suites],
        "ok": ok,
    }
    return doc, (0 if ok else 1)


def _dumps(doc) -> str:
    return json.dumps(doc, sort_keys=True, ensure_ascii=False, indent=2, default=str)


def _text(doc, indent=0) -> str:
    pad = "  " * indent
    lines = []
    for k in sorted(doc):
        v = doc[k]
        if isinstance(v, dict):
            lines.append(f"{pad}{k}:")
            lines.append(_text(v, indent + 1))
        elif isinstance(v, list) and v and isinstance(v[0], dict):
            lines.append(f"{pad}{k}:")
            for item in v:
                lines.append(_text(item, indent + 1))
                lines.append(f"{pad}  --")
        else:
            lines.append(f"{pad}{k}: {v}")
    return "\n".join(lines)


def run(args) -> int:
    handlers = {
        "element": cmd_element,
        "fixed-subalgebra": cmd_element,
        "hilbert": cmd_hilbert,
        "form": cmd_form,
        "double": cmd_double,
    }
    try:
        if args.verb == "classify":
            doc, code = cmd_classify(args)
        elif args.verb == "verify-paper":
            doc, code = cmd_verify_paper(args)
        else:
            doc, code = handlers[args.verb](args), 0
    except ClassificationMismatch as exc:
        print(f"octoinv: {exc}", file=sys.stderr)
        return 1
    except (FieldError, FormError, AlgebraError, AutomorphismError, ValueError) as exc:
        print(f"octoinv: error: {exc}", file=sys.stderr)
        return 2
    doc = {"schema": SCHEMA, **doc}
    print(_dumps(doc) if args.format == "json" else _text(doc))
    return code


def main(argv=None) -> int:
    return run(parse_args(argv))


if __name__ == "__main__":
    sys.exit(main())
