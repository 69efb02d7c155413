"""Command-line interface.

Every command except ``corpus-run`` reads one input file (see
:mod:`extracta.parsing` for the grammar) and refers to its declarations by
name.  ``--json`` switches to machine-readable output with the fixed shape
``{command, inputs, result, diagnostics, timing_ms}``.

Exit codes: 0 success, 1 refusal (the question is outside what the method
answers, e.g. a non-control order or a missing decomposition), 2 bad input.
"""

import argparse
import json
import sys
import time
from pathlib import Path

from . import __version__
from .corpus import CHECKS, corpus_seed, generate_corpus, run_corpus, summarize
from .errors import DecompositionError, ExtractaError, OrderError, ParseError, RefusedError
from .extraction import extract, extraction_dim, extraction_membership, lift
from .identities import check_identities
from .oracle import decompose, zero_dim_contract_oracle
from .orders import find_control_witness, named_order
from .parsing import parse_input, parse_order
from .standard_basis import (
    LocalizedIdealHandle,
    dim_ideal,
    dim_leading_ideal_loc,
    groebner_basis,
    ideal_membership,
    loc_membership,
    strongly_independent_sets,
)

EXIT_OK, EXIT_REFUSED, EXIT_INPUT = 0, 1, 2


class InputError(ExtractaError):
    """Bad reference into the input file (unknown name, missing option)."""


def _fmt(f, o=None):
    return f.to_str(o)


def _fmt_ideal(gens, o=None):
    return [_fmt(g, o) for g in gens]


def _load(path):
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None
    return parse_input(text, base_dir=path.parent)


def _get(table, name, what):
    if name is None:
        raise InputError(f"missing --{what}")
    try:
        return table[name]
    except KeyError:
        raise InputError(f"no {what} named {name!r} in the input file") from None


def _order(doc, args, default="degrevlex"):
    """--order names a declared order or is an inline spec such as lex."""
    spec = getattr(args, "order", None)
    if spec is None:
        return named_order(doc.ring, default)
    if spec in doc.orders:
        return doc.orders[spec]
    return parse_order(spec, doc.ring)


def _decomposition(doc, ideal_name, dec_name=None):
    if dec_name is not None:
        return _get(doc.named_decompositions, dec_name, "decomposition")
    if ideal_name in doc.decompositions:
        return doc.decompositions[ideal_name]
    ideal = doc.ideals[ideal_name]
    if ideal.is_monomial():
        return decompose(ideal)
    raise RefusedError(
        f"no decomposition of {ideal_name} available: declare one "
        "(decomposition/points/principal) or use a monomial ideal"
    )


def _polys(doc, names):
    if not names:
        raise InputError("missing --poly")
    out = []
    for name in names:
        if name in doc.polys:
            out.append((name, doc.polys[name]))
        else:
            out.append((name, doc.ring.parse(name)))
    return out


# commands: each returns (inputs, result, human-readable lines)


def cmd_classify_order(doc, args):
    o = _order(doc, args)
    result = {
        "class": o.kind,
        "control": o.is_control,
        "characteristic": list(o.characteristic),
        "levels": [c.level for c in o.levels],
        "matrix": [list(r) for r in o.matrix],
    }
    lines = [
        f"order      {o.to_spec_string()}",
        f"class      {o.kind}",
        f"control    {'true' if o.is_control else 'false'}",
        "characteristic " + " ".join(f"{v}:{'+' if c > 0 else '-'}" for v, c in zip(doc.ring.var_names, o.characteristic)),
    ]
    if not o.is_control:
        w = find_control_witness(o)
        if w is not None:
            mono = doc.ring.const(1).mul_term(w, 1)
            result["witness"] = _fmt(mono, o)
            lines.append(f"witness    {result['witness']} > 1 although divisible by a local variable")
    for a, b in args.compare or ():
        fa, fb = doc.ring.parse(a), doc.ring.parse(b)
        if not (fa.is_monomial() and fb.is_monomial()):
            raise InputError("--compare takes two monomials")
        c = o.compare(next(iter(fa.terms)), next(iter(fb.terms)))
        rel = {1: ">", 0: "=", -1: "<"}[c]
        result.setdefault("comparisons", []).append({"a": a, "b": b, "relation": rel})
        lines.append(f"{fa} {rel} {fb}")
    return {"order": o.to_spec_string()}, result, lines


def cmd_sb(doc, args):
    I = _get(doc.ideals, args.ideal, "ideal")
    o = _order(doc, args)
    if o.is_global:
        G = groebner_basis(I, o)
    else:
        G = LocalizedIdealHandle(I, o).standard_basis()
    gens = _fmt_ideal(G, o)
    inputs = {"ideal": _fmt_ideal(I.gens, o), "order": o.to_spec_string()}
    result = {"order_class": o.kind, "standard_basis": gens, "reduced": o.is_global}
    return inputs, result, gens


def cmd_member(doc, args):
    I = _get(doc.ideals, args.ideal, "ideal")
    o = _order(doc, args)
    h = None if o.is_global else LocalizedIdealHandle(I, o)
    answers = {}
    for name, f in _polys(doc, args.poly):
        answers[name] = ideal_membership(f, I) if h is None else loc_membership(f, h)
    inputs = {"ideal": _fmt_ideal(I.gens, o), "order": o.to_spec_string()}
    lines = [f"{n}: {'yes' if v else 'no'}" for n, v in answers.items()]
    return inputs, {"localized": h is not None, "member": answers}, lines


def _IJ(doc, args):
    I = _get(doc.ideals, args.ideal, "ideal")
    J = _get(doc.ideals, args.control, "control")
    return I, J, {"ideal": _fmt_ideal(I.gens), "control": _fmt_ideal(J.gens)}


def cmd_extract_member(doc, args):
    I, J, inputs = _IJ(doc, args)
    q = lift(I, J)
    answers = {name: extraction_membership(f, q) for name, f in _polys(doc, args.poly)}
    lines = [f"{n}: {'yes' if v else 'no'}" for n, v in answers.items()]
    return inputs, {"member": answers}, lines


def cmd_extract(doc, args):
    I, J, inputs = _IJ(doc, args)
    D = _decomposition(doc, args.ideal, args.decomposition)
    r = extract(I, J, decomposition=D)
    gens = _fmt_ideal(r.generators)
    inputs["decomposition"] = {
        "provenance": D.provenance,
        "components": [_fmt_ideal(c.gens) for c in D.components],
    }
    result = {"status": r.status, "generators": gens}
    return inputs, result, [f"status: {r.status}", "<" + ", ".join(gens) + ">"]


def cmd_extract_dim(doc, args):
    I, J, inputs = _IJ(doc, args)
    d = extraction_dim(lift(I, J))
    return inputs, {"dim": d}, [str(d)]


def cmd_dim(doc, args):
    I = _get(doc.ideals, args.ideal, "ideal")
    inputs = {"ideal": _fmt_ideal(I.gens)}
    if args.order is None:
        d = dim_ideal(I)
        result = {"dim": d, "method": "strongly-independent-sets"}
        if d >= 0:
            result["maximal_independent_sets"] = [list(u) for u in strongly_independent_sets(I)]
        return inputs, result, [str(d)]
    o = _order(doc, args)
    inputs["order"] = o.to_spec_string()
    if o.is_global:
        d = dim_ideal(I)
    else:
        d = dim_leading_ideal_loc(LocalizedIdealHandle(I, o))
    return inputs, {"dim": d, "method": "leading-ideal"}, [str(d)]


def cmd_contract_points(doc, args):
    P = _get(doc.points, args.points, "points")
    o = _order(doc, args)
    C = zero_dim_contract_oracle(P, o)
    gens = _fmt_ideal(groebner_basis(C), o)
    local = {doc.ring.var_names[i] for i in o.local_vars()}
    kept = [
        [str(c) for c in p] for p in P.points if all(p[i] == 0 for i in o.local_vars())
    ]
    inputs = {"points": [[str(c) for c in p] for p in P.points], "order": o.to_spec_string()}
    result = {"local_variables": sorted(local), "kept_points": kept, "contraction": gens}
    lines = [f"kept points: {kept}", "<" + ", ".join(gens) + ">"]
    return inputs, result, lines


def cmd_check_identities(doc, args):
    names = {"I": args.ideal, "J": args.control, "H": args.H, "L": args.L}
    ideals = {k: _get(doc.ideals, v, k if k in "HL" else ("ideal" if k == "I" else "control")) for k, v in names.items()}
    decomps = {k: _decomposition(doc, v) for k, v in names.items()}
    report = check_identities(ideals["I"], ideals["J"], ideals["H"], ideals["L"], decomps)
    inputs = {k: _fmt_ideal(v.gens) for k, v in ideals.items()}
    result = {"ok": report.ok, "identities": report.as_dict()}
    lines = [f"({c.key}) {c.name}: {c.status}" + (f"  [{c.detail}]" if c.status != "pass" else "") for c in report.checks]
    return inputs, result, lines


def cmd_corpus_run(args):
    seed = corpus_seed() if args.seed is None else args.seed
    checks = CHECKS if not args.no_identities else tuple(c for c in CHECKS if c != "identities")
    instances = generate_corpus(args.count, seed)
    results = run_corpus(instances, seed=seed, jobs=args.jobs, checks=checks)
    summary = summarize(results)
    inputs = {"count": args.count, "seed": seed, "jobs": args.jobs, "checks": list(checks)}
    lines = [f"{k}: {v}" for k, v in summary.items()]
    return inputs, summary, lines


COMMANDS = {
    "classify-order": cmd_classify_order,
    "sb": cmd_sb,
    "member": cmd_member,
    "extract-member": cmd_extract_member,
    "extract": cmd_extract,
    "extract-dim": cmd_extract_dim,
    "dim": cmd_dim,
    "contract-points": cmd_contract_points,
    "check-identities": cmd_check_identities,
}


def build_parser():
    ap = argparse.ArgumentParser(prog="extracta", description="Extraction of ideals by control ideals.")
    ap.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)

    def cmd(name, help, ideal=False, control=False, order=False, polys=False):
        p = sub.add_parser(name, help=help)
        p.add_argument("input", help="input file")
        p.add_argument("--json", action="store_true", help="machine-readable output")
        if ideal:
            p.add_argument("--ideal", "-I", default="I", help="ideal name (default I)")
        if control:
            p.add_argument("--control", "-J", default="J", help="control ideal name (default J)")
        if order:
            p.add_argument("--order", "-o", help="order name or inline spec (default degrevlex)")
        if polys:
            p.add_argument("--poly", "-p", action="append", help="polynomial name or expression; repeatable")
        return p

    p = cmd("classify-order", "characteristic, class and control test of an order", order=True)
    p.add_argument("--compare", nargs=2, action="append", metavar=("A", "B"), help="compare two monomials")
    cmd("sb", "standard basis (reduced Gröbner basis for global orders)", ideal=True, order=True)
    cmd("member", "membership in I, or in its extension under a non-global order", ideal=True, order=True, polys=True)
    cmd("extract-member", "membership in the extraction of I by J", ideal=True, control=True, polys=True)
    p = cmd("extract", "generators of the extraction from a primary decomposition", ideal=True, control=True)
    p.add_argument("--decomposition", "-D", help="decomposition name (default: the ideal's own)")
    cmd("extract-dim", "Krull dimension of the extraction", ideal=True, control=True)
    cmd("dim", "Krull dimension; with a non-global control order, of the leading ideal", ideal=True, order=True)
    p = cmd("contract-points", "contraction of a rational point ideal", order=True)
    p.add_argument("--points", "-P", default="P", help="points name (default P)")
    p = cmd("check-identities", "run the identity suite on declared ideals", ideal=True, control=True)
    p.add_argument("--H", default="H", help="second ideal name (default H)")
    p.add_argument("--L", default="L", help="second control ideal name (default L)")

    p = sub.add_parser("corpus-run", help="cross-check the randomized corpus")
    p.add_argument("--count", type=int, default=210)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--seed", type=int, default=None, help="default: $EXTRACTA_SEED or built-in")
    p.add_argument("--no-identities", action="store_true")
    p.add_argument("--json", action="store_true")
    return ap


def _emit(args, inputs, result, diagnostics, ms, lines, stream):
    if args.json:
        out = {
            "command": args.command,
            "inputs": inputs,
            "result": result,
            "diagnostics": diagnostics,
            "timing_ms": round(ms, 3),
        }
        stream.write(json.dumps(out, indent=2, ensure_ascii=False) + "\n")
    else:
        for line in lines:
            stream.write(f"{line}\n")
        for d in diagnostics:
            sys.stderr.write(f"{d['level']}: {d['message']}\n")


def main(argv=None, stdout=None):
    stdout = stdout or sys.stdout
    args = build_parser().parse_args(argv)
    t0 = time.perf_counter()
    inputs, result, lines, diagnostics = {}, None, [], []
    code = EXIT_OK
    try:
        if args.command == "corpus-run":
            inputs, result, lines = cmd_corpus_run(args)
            if not result["ok"]:
                diagnostics.append({"level": "error", "message": "corpus cross-checks failed"})
                code = EXIT_REFUSED
        else:
            doc = _load(args.input)
            inputs = {"file": str(args.input)}
            more, result, lines = COMMANDS[args.command](doc, args)
            inputs.update(more)
    except ParseError as exc:
        code, diagnostics = EXIT_INPUT, [{"level": "error", "kind": "parse", "message": str(exc)}]
    except (RefusedError, DecompositionError) as exc:
        code, diagnostics = EXIT_REFUSED, [{"level": "error", "kind": "refused", "message": str(exc)}]
    except OrderError as exc:
        code, diagnostics = EXIT_INPUT, [{"level": "error", "kind": "order", "message": str(exc)}]
    except (InputError, ExtractaError, ValueError) as exc:
        code, diagnostics = EXIT_INPUT, [{"level": "error", "kind": "input", "message": str(exc)}]
    ms = (time.perf_counter() - t0) * 1000
    _emit(args, inputs, result, diagnostics, ms, lines, stdout)
    return code


def run():
    sys.exit(main())


if __name__ == "__main__":
    run()
