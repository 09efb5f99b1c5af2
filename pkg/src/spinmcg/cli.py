"""Command-line front end.

Words use ``a`` (alpha), ``b`` (beta) and ``t`` with optional ``^k`` powers,
parentheses and ``[x,y]`` commutators.  The rightmost letter acts first.

Exit status: 0 when every check passes, 1 when a check fails, 2 on bad input.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import piecewise, ppslz, relations
from .marking import serialize
from .spinstate import POSITIONS, SpinRule, evaluate, is_identity
from .words import WordSyntaxError, parse_word, pretty


class UsageError(Exception):
    pass


def parse_rule(text: str) -> SpinRule:
    """``default`` or ``ORIENTATION:UNMARKED/MARKED`` such as ``cd:ac/cb`` (empty sets allowed)."""
    if text == "default":
        return relations.DEFAULT_RULE
    try:
        orient, sets = text.split(":")
        unmarked, marked = sets.split("/")
        parse = lambda s: frozenset(p for p in s.split(",") if p)
        rule = SpinRule(parse(unmarked), parse(marked), orient)
    except ValueError as exc:
        raise UsageError(f"bad rule {text!r}: {exc}") from None
    return rule


def _word(text: str) -> str:
    try:
        return parse_word(text)
    except WordSyntaxError as exc:
        raise UsageError(f"bad word {text!r}: {exc}") from None


def _emit(args, doc: dict, lines: list[str]) -> None:
    if args.format == "structured":
        print(json.dumps(doc, indent=2, default=str))
    else:
        print("\n".join(lines))


# -- subcommands ---------------------------------------------------------------

def cmd_eval(args) -> int:
    rule = parse_rule(args.rule)
    w = _word(args.word)
    s = evaluate(w, rule)
    ident = is_identity(s)
    doc = {"word": w, "rule": rule.to_dict(), "state": s.report(), "identity": ident}
    lines = [
        f"word: {pretty(w)}",
        f"doe: {s.doe}",
        f"flipped patch: {len(s.patch)} triangle(s)",
        f"odd edges: {', '.join(serialize(s.marking)) or '-'}",
        f"identity: {ident}",
    ]
    _emit(args, doc, lines)
    return 0


def cmd_check_relations(args) -> int:
    rule = parse_rule(args.rule)
    names = [args.family] if args.family else list(relations.MAIN_FAMILIES)
    reports = [relations.verify_family(relations.get_family(n), rule, args.workers) for n in names]
    extra = []
    if not args.family:
        extra = relations.check_main_relators(rule)
        cat = relations.degeneracy_catalog_check(rule)
    ok = all(r.ok for r in reports) and all(r.ok for r in extra)
    lines = [f"rule: {rule}"]
    for r in reports:
        lines.append(
            f"{'PASS' if r.ok else 'FAIL'} {r.family}: {r.found} solutions, expected {r.expected} "
            f"(rank {r.rank})"
        )
        for v in r.missing[:5]:
            lines.append(f"    expected but not a relator: {v}")
        for v in r.extra[:5]:
            lines.append(f"    relator outside the system: {v}")
    for r in extra:
        lines.append(f"{'PASS' if r.ok else 'FAIL'} {r.group} {r.name}" + (f" ({r.failures}/{r.total} fail)" if not r.ok else ""))
    doc = {"rule": rule.to_dict(), "families": [r.to_dict() for r in reports],
           "relators": [r.to_dict() for r in extra]}
    if not args.family:
        ok = ok and cat.ok
        lines.append(f"{'PASS' if cat.ok else 'FAIL'} degeneracy catalog: {cat.catalog_size} entries")
        doc["degeneracy_catalog"] = cat.to_dict()
    doc["ok"] = ok
    _emit(args, doc, lines)
    return 0 if ok else 1


def cmd_enumerate(args) -> int:
    if not args.family:
        raise UsageError("enumerate needs --family")
    rule = parse_rule(args.rule)
    f = relations.get_family(args.family)
    sols = relations.solution_set(f, rule, args.workers)
    rank = sols.rank() if sols.is_subspace() else None
    doc = {
        "family": f.name,
        "variables": list(f.variables),
        "solutions": len(sols),
        "rank": rank,
        "subspace": sols.is_subspace(),
        "vectors": [list(sols.as_tuple(x)) for x in sols],
    }
    lines = [
        f"family {f.name}: {len(f.variables)} variables ({' '.join(f.variables)})",
        f"{len(sols)} solutions; " + (f"{rank} independent equations" if rank is not None else "not a subspace"),
    ]
    if len(sols) <= 256:
        lines += ["  " + "".join(map(str, sols.as_tuple(x))) for x in sols]
    _emit(args, doc, lines)
    return 0


def cmd_synth_rule(args) -> int:
    res = relations.synthesize_alpha_rule(skip=args.skip or ())
    classes = sorted({relations.rule_class_key(r) for r in res.rules})
    doc = {
        "constraints": list(res.constraints),
        "eliminated": res.counts,
        "rules": [r.to_dict() for r in res.rules],
        "classes": [list(c) for c in classes],
        "near_misses": [r.to_dict() for r in res.near_misses()] if not res.rules else [],
    }
    if res.rules and len(res.rules) > 8:
        reps = {}
        for r in res.rules:
            reps.setdefault(relations.rule_class_key(r), r)
        lines = [f"{len(res.rules)} rule(s) pass, {len(classes)} class(es) up to triangle moves; one per class:"]
        lines += [f"  {r}" for r in reps.values()]
    else:
        lines = [res.summary()]
    _emit(args, doc, lines)
    return 0 if res.ok else 1


def cmd_char_map(args) -> int:
    w = _word(args.word)
    if "t" in w:
        raise UsageError("char-map takes words in a and b only")
    f = piecewise.char_map_of_word(w)
    doc = {"word": w, "pieces": f.to_list(), "valid": f.validate()}
    lines = [f"word: {pretty(w)}"]
    for s, e, m in f.arcs():
        arc = "whole circle" if s is None else f"[{s}, {e}]"
        lines.append(f"  {arc}: ({m[0]} {m[1]}; {m[2]} {m[3]})")
    _emit(args, doc, lines)
    return 0


def cmd_export(args) -> int:
    fmt = "structured" if args.format == "structured" else "text"
    sys.stdout.write(relations.export_presentation(fmt, args.model, not args.compact))
    if fmt == "structured":
        sys.stdout.write("\n")
    return 0


def cmd_verify_appendix(args) -> int:
    depth = args.depth or 5
    reps = {
        "presentation (states)": ppslz.verify_theorem_A(),
        "presentation (piecewise)": piecewise.verify_theorem_A_piecewise(),
        "flip formulas": ppslz.verify_appendix(depth),
        "commutativity": ppslz.commutativity_scan(min(depth, 3)),
    }
    ok = all(r.ok for r in reps.values())
    lines = []
    for name, r in reps.items():
        lines.append(f"{'PASS' if r.ok else 'FAIL'} {name}")
        for k, v in r.checks.items():
            if not v:
                lines.append(f"    failed: {k}")
    doc = {name: r.to_dict() for name, r in reps.items()}
    doc["ok"] = ok
    _emit(args, doc, lines)
    return 0 if ok else 1


# -- argument parsing -----------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "structured"), default="text")
    common.add_argument("--workers", type=int, default=1, help="processes for enumeration")
    common.add_argument("--depth", type=int, default=None, help="address length bound")
    common.add_argument("--family", choices=sorted(relations.FAMILIES), default=None)
    common.add_argument(
        "--rule", default="default",
        help="alpha marking rule: 'default' or ORIENT:UNMARKED/MARKED, e.g. cd:ac/cb; "
             f"positions are {','.join(POSITIONS)}",
    )

    p = argparse.ArgumentParser(
        prog="spinmcg",
        description="Marked tesselation model: words act right to left (the rightmost letter first).",
    )
    sub = p.add_subparsers(dest="command", required=True)

    e = sub.add_parser("eval", parents=[common], help="apply a word to the base state")
    e.add_argument("word", help="e.g. 'a^4', '(ba)^5', '[t,a^2]'")
    e.set_defaults(func=cmd_eval)

    c = sub.add_parser("check-relations", parents=[common], help="verify relation families and relators")
    c.set_defaults(func=cmd_check_relations)

    n = sub.add_parser("enumerate", parents=[common], help="solution set of one family")
    n.set_defaults(func=cmd_enumerate)

    s = sub.add_parser("synth-rule", parents=[common], help="search for the alpha marking rule")
    s.add_argument("--skip", action="append", choices=sorted(relations.SYNTHESIS_CONSTRAINTS),
                   help="leave a constraint out (repeatable)")
    s.set_defaults(func=cmd_synth_rule)

    m = sub.add_parser("char-map", parents=[common], help="piecewise map of a word in a, b")
    m.add_argument("word")
    m.set_defaults(func=cmd_char_map)

    x = sub.add_parser("export", parents=[common], help="print a presentation")
    x.add_argument("--model", choices=("spin", "ppsl"), default="spin")
    x.add_argument("--compact", action="store_true", help="do not expand insertion relators")
    x.set_defaults(func=cmd_export)

    v = sub.add_parser("verify-appendix", parents=[common], help="run the PPSL(2,Z) checks")
    v.set_defaults(func=cmd_verify_appendix)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.workers < 1:
        parser.error("--workers must be positive")
    if args.depth is not None and args.depth < 1:
        parser.error("--depth must be positive")
    try:
        return args.func(args)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"spinmcg: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
