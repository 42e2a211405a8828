"""Command-line interface: ``omlat glue|check|audit|scenario``.

Exit codes: 0 success, 1 a check failed under ``--strict``, 2 bad input,
3 size limit exceeded.
"""

import argparse
import os
import sys

from . import io
from .adjunction import adjunction_audit
from .boolean import powerset, two
from .contextuality import builtin, builtin_scenarios, dictionary_harness
from .errors import BadSpec, OmlatError, SizeLimit
from .gluing import glue, glue_n, universal_audit_bound
from .lattice import (
    FiniteOrthoLattice, benzene, chain, check_lattice_laws, diamond,
    is_distributive, is_modular, is_ortholattice, is_orthomodular, pentagon, to_dot,
)

EXIT_OK, EXIT_FAILED, EXIT_INPUT, EXIT_SIZE = 0, 1, 2, 3

BUILTIN_LATTICES = {
    "two": lambda: two().lattice,
    "chain3": lambda: chain(3),
    "diamond": diamond,
    "n5": pentagon,
    "o6": benzene,
    "cube": lambda: powerset(3).lattice,
    "mo2": lambda: glue(powerset(2), powerset(2)),
    "mo3": lambda: glue_n([powerset(2)] * 3),
}


def parse_atoms(text):
    try:
        atoms = [int(part) for part in text.split(",") if part.strip()]
    except ValueError:
        raise BadSpec(f"--atoms expects comma-separated integers, got {text!r}") from None
    if not atoms or any(a < 1 for a in atoms):
        raise BadSpec("--atoms needs one or more positive atom counts")
    return atoms


def _read_json(path):
    try:
        if path == "-":
            return io.loads(sys.stdin.read())
        with open(path, encoding="utf-8") as fh:
            return io.loads(fh.read())
    except OSError as exc:
        raise BadSpec(f"cannot read {path}: {exc.strerror}") from None


def _emit(text, output):
    if output:
        with open(output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


# glue

def cmd_glue(args):
    P = glue_n([powerset(k) for k in parse_atoms(args.atoms)])
    if args.format == "dot":
        return to_dot(P.carrier, name="glued"), EXIT_OK
    if args.format == "text":
        c = P.carrier
        lines = [f"glued lattice: {c.n} elements, {len(P.blocks)} blocks"]
        for j, b in enumerate(P.blocks):
            lines.append(f"  block {j + 1} ({len(b)}): " + " ".join(c.label(x) for x in b))
        lines.append("  ortho: " + " ".join(f"{c.label(x)}->{c.label(y)}" for x, y in enumerate(c.ortho)))
        return "\n".join(lines) + "\n", EXIT_OK
    return io.dumps(io.blocked_to_json(P)), EXIT_OK


# check

def _load_lattice(args):
    if args.builtin:
        L = BUILTIN_LATTICES[args.builtin]()
    elif args.atoms:
        L = glue_n([powerset(k) for k in parse_atoms(args.atoms)])
    elif args.input:
        doc = _read_json(args.input)
        L = io.blocked_from_json(doc) if isinstance(doc, dict) and "blocks" in doc else io.lattice_from_json(doc)
    else:
        raise BadSpec("check needs an input file, --builtin or --atoms")
    return getattr(L, "carrier", L)


def law_report(L):
    lat = L.lattice if isinstance(L, FiniteOrthoLattice) else L
    rows = [check_lattice_laws(lat), is_modular(lat), is_distributive(lat)]
    if isinstance(L, FiniteOrthoLattice):
        rows += [is_ortholattice(lat, L.ortho), is_orthomodular(L)]
    return {"n": lat.n, "verdicts": [v.to_dict() for v in rows]}


def cmd_check(args):
    report = law_report(_load_lattice(args))
    failed = any(not v["ok"] for v in report["verdicts"])
    code = EXIT_FAILED if failed and args.strict else EXIT_OK
    if args.format == "text":
        lines = [f"lattice with {report['n']} elements"]
        for v in report["verdicts"]:
            status = "pass" if v["ok"] else "fail"
            extra = f"  witness {tuple(v['witness'])}: {v['detail']}" if not v["ok"] and v["witness"] else ""
            lines.append(f"  {v['law']:<13} {status}{extra}")
        return "\n".join(lines) + "\n", code
    return io.dumps(report), code


# audit

def _adjunction_table(report):
    lines = [f"adjunction audit, bound {report['bound']}"]
    head = f"  {'source':<8} {'codomain':<16} {'class':<17} {'homs':>4} {'pairs':>5}  bijection  naturality  counterexamples"
    lines.append(head)
    for c in report["cells"]:
        nat = "-" if c["naturality"] is None else ("yes" if c["naturality"] else "NO")
        lines.append(
            f"  {'x'.join(map(str, c['source'])):<8} {c['codomain']:<16} {c['class']:<17} "
            f"{c['hom_count']:>4} {c['pair_count']:>5}  {'yes' if c['bijection'] else 'no':<9}  {nat:<10}  "
            f"{len(c['counterexamples'])}"
        )
    for cls, s in report["summary"].items():
        lines.append(f"  [{cls}] cells={s['cells']} bijection={s['bijection']} "
                     f"naturality={s['naturality']} counterexamples={s['counterexamples']}")
    return "\n".join(lines) + "\n"


def _universal_table(report):
    lines = [f"universal-property audit, bound {report['bound']}"]
    for r in report["reports"]:
        lines.append(f"  sources {r['sources'][0]}x{r['sources'][1]} (glued size {r['glued_size']}):")
        for cls, s in r["summary"].items():
            verdict = "confirmed" if s["confirmed"] else "fails"
            lines.append(f"    {cls:<40} total={s['total']:<4} mediated={s['mediated']:<4} "
                         f"failed={s['failed']:<4} {verdict}")
    return "\n".join(lines) + "\n"


def cmd_audit(args):
    if args.bound < 0:
        raise BadSpec("--bound must be non-negative")
    if args.kind == "adjunction":
        report = adjunction_audit(args.bound)
        table = _adjunction_table
    else:
        report = universal_audit_bound(args.bound)
        table = _universal_table
    if args.format == "text":
        return table(report), EXIT_OK
    return io.dumps(report), EXIT_OK


# scenario

def _dictionary_table(rows):
    lines = []
    for r in rows:
        witness = "" if r["distributivity_witness"] is None else f" (witness {tuple(r['distributivity_witness'])})"
        lines += [
            f"scenario {r['name'] or '<unnamed>'}",
            f"  {'sheaf side':<32} | lattice side",
            f"  {'contexts':<20}{r['contexts']:>12} | {'Boolean blocks':<20}{r['contexts']:>8}",
            f"  {'overlap':<20}{'shared':>12} | {'overlap':<20}{'{0,1}':>8}",
            f"  {'global sections':<20}{r['sections']:>12} | {'glued elements':<20}{r['glued_elements']:>8}",
            f"  {'contextual':<20}{'yes' if r['contextual'] else 'no':>12} | "
            f"{'non-distributive':<20}{'no' if r['glued_distributive'] else 'yes':>8}{witness}",
            f"  dictionary agreement: {'yes' if r['agreement'] else 'no (discrepancy)'}",
        ]
    return "\n".join(lines) + "\n"


def cmd_scenario(args):
    if args.builtin == "all":
        models = builtin_scenarios()
    elif args.builtin:
        models = [builtin(args.builtin)]
    elif args.input:
        models = [io.model_from_json(_read_json(args.input))]
    else:
        raise BadSpec("scenario needs an input file or --builtin")
    rows = [dictionary_harness(M).to_dict() for M in models]
    code = EXIT_FAILED if args.strict and any(r["discrepancy"] for r in rows) else EXIT_OK
    if args.format == "text":
        return _dictionary_table(rows), code
    return io.dumps({"rows": rows}), code


def build_parser():
    parser = argparse.ArgumentParser(prog="omlat", description="Glued orthomodular lattices and their audits.")
    parser.add_argument("--max-elements", type=int, help="element cap (overrides OMLAT_MAX_ELEMENTS)")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("glue", help="glue powerset algebras along their bounds")
    p.add_argument("--atoms", required=True, help="atom counts, e.g. 3,2")
    p.add_argument("--format", choices=("json", "dot", "text"), default="json")
    p.set_defaults(func=cmd_glue)

    p = sub.add_parser("check", help="run the lattice law checkers")
    p.add_argument("input", nargs="?", help="lattice JSON file, or - for stdin")
    p.add_argument("--builtin", choices=sorted(BUILTIN_LATTICES))
    p.add_argument("--atoms", help="check the glue of these powersets")
    p.add_argument("--format", choices=("json", "text"), default="text")
    p.add_argument("--strict", action="store_true", help="exit 1 when any law fails")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("audit", help="adjunction or universal-property audit")
    p.add_argument("kind", choices=("adjunction", "universal"))
    p.add_argument("--bound", type=int, default=2)
    p.add_argument("--format", choices=("json", "text"), default="json")
    p.set_defaults(func=cmd_audit)

    p = sub.add_parser("scenario", help="contextuality dictionary for an empirical model")
    p.add_argument("input", nargs="?", help="model JSON file, or - for stdin")
    p.add_argument("--builtin", choices=sorted([M.name for M in builtin_scenarios()] + ["all"]))
    p.add_argument("--format", choices=("json", "text"), default="text")
    p.add_argument("--strict", action="store_true", help="exit 1 on a dictionary discrepancy")
    p.set_defaults(func=cmd_scenario)

    for name in ("glue", "check", "audit", "scenario"):
        sub.choices[name].add_argument("--output", "-o", help="write here instead of stdout")
    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    saved = os.environ.get("OMLAT_MAX_ELEMENTS")
    if args.max_elements is not None:
        os.environ["OMLAT_MAX_ELEMENTS"] = str(args.max_elements)
    try:
        text, code = args.func(args)
    except SizeLimit as exc:
        print(f"omlat: size limit: {exc}", file=sys.stderr)
        return EXIT_SIZE
    except OmlatError as exc:
        print(f"omlat: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INPUT
    finally:
        # the cap is per invocation; do not leak it to later calls
        if saved is None:
            os.environ.pop("OMLAT_MAX_ELEMENTS", None)
        else:
            os.environ["OMLAT_MAX_ELEMENTS"] = saved
    _emit(text, args.output)
    return code


if __name__ == "__main__":
    sys.exit(main())
