"""Command-line entry point.

Exit codes: 0 success (or conclusion reached), 1 a check failed or the
conclusion was withheld, 2 usage, parse or bound errors.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import __version__
from .certify import render_report, verify_counterexample
from .config import load_config
from .errors import MonoidToposError
from .functors import tensor
from .monoid import check_morphism, check_surjective_on_generators
from .mset import components
from .rewriting import critical_pairs, format_word, orient_relations, parse_word
from .syntax import Cursor

DEFAULT_CONFIG = "paper.cfg"


def _dump(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True, ensure_ascii=False)


def cmd_normalize(args, out):
    cfg = load_config(args.config)
    p = cfg.presentation(args.monoid)
    w = p.normalize(p.check_word(parse_word(args.word)))
    if args.json:
        print(_dump({"monoid": p.name, "word": args.word, "normal_form": format_word(w)}), file=out)
    else:
        print(format_word(w), file=out)
    return 0


def _relations(text: str):
    cur = Cursor.of(text)
    rels = []
    while not cur.at_eof():
        lhs = cur.word()
        cur.expect("=")
        rels.append((lhs, cur.word()))
        if not cur.accept(","):
            break
    cur.expect_eof()
    return rels


def cmd_confluence(args, out):
    if args.relations is not None:
        rules = orient_relations(_relations(args.relations))
        name = "relations"
    else:
        p = load_config(args.config).presentation(args.monoid)
        rules, name = p.rules, p.name
    pairs = critical_pairs(rules)
    ok = all(cp.joinable for cp in pairs)
    if args.json:
        print(_dump({
            "name": name,
            "rules": [str(r) for r in rules],
            "critical_pairs": [{"overlap": format_word(cp.overlap),
                                "left": format_word(cp.left_result),
                                "right": format_word(cp.right_result),
                                "joinable": cp.joinable} for cp in pairs],
            "locally_confluent": ok}), file=out)
    else:
        for r in rules:
            print(f"rule {r}", file=out)
        for cp in pairs:
            print(f"critical pair {cp}", file=out)
        print(f"locally confluent: {'yes' if ok else 'no'}", file=out)
    return 0 if ok else 1


def _count(k: int, noun: str, plural: str = "") -> str:
    return f"{k} {noun if k == 1 else plural or noun + 's'}"


def _classes(part, fmt):
    return [{"representative": fmt(c[0]), "size": len(c)} for c in part.classes]


def cmd_components(args, out):
    cfg = load_config(args.config)
    X = cfg.mset(args.mset)
    bound = cfg.bound if args.bound is None else args.bound
    part = components(X, bound)
    classes = _classes(part, X.format)
    if args.json:
        print(_dump({"mset": X.name, "bound": bound, "classes": classes}), file=out)
    else:
        print(f"{_count(len(classes), 'class', 'classes')} of {X.name} "
              f"(separated up to degree {bound})", file=out)
        for c in classes:
            print(f"  {c['representative']}  [{_count(c['size'], 'element')}]", file=out)
    return 0


def cmd_tensor(args, out):
    cfg = load_config(args.config)
    X = cfg.mset(args.mset)
    if args.along is not None:
        phi = cfg.morphism(args.along)
    elif cfg.counterexample is not None:
        phi = cfg.counterexample.along
    else:
        raise MonoidToposError("no morphism given (use --along)")
    bound = cfg.bound if args.bound is None else args.bound
    t = tensor(X, phi, bound)
    classes = _classes(t, t.format)
    if args.json:
        print(_dump({"mset": X.name, "along": phi.name, "bound": bound,
                     "classes": classes}), file=out)
    else:
        print(f"{_count(len(classes), 'class', 'classes')} of {X.name} (x) {phi.target.name} "
              f"along {phi.name} (distinct up to degree {bound})", file=out)
        for c in classes:
            print(f"  {c['representative']}  [{_count(c['size'], 'pair')}]", file=out)
    return 0


def cmd_morphism(args, out):
    cfg = load_config(args.config)
    m = cfg.morphism(args.name)
    well = check_morphism(m.source, m.target, m.images)
    search = cfg.bound if args.bound is None else args.bound
    surj = check_surjective_on_generators(m, search)
    if args.json:
        print(_dump({"morphism": m.name, "well_defined": well.accepted,
                     "surjective": surj.accepted, "detail": surj.detail}), file=out)
    else:
        print(repr(m), file=out)
        print(f"well defined: {'yes' if well else 'no'} ({well.detail})", file=out)
        print(f"surjective: {'yes' if surj else 'not shown'} ({surj.detail})", file=out)
    return 0 if well else 1


def cmd_verify(args, out):
    cfg = load_config(args.config)
    report = verify_counterexample(cfg, args.bound)
    out.write(render_report(report, "json" if args.json else "text"))
    return 0 if report.concluded else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="monoidtopos",
        description="Monoid presentations, right M-sets and the functors they induce.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, bound=True):
        p.add_argument("-c", "--config", default=DEFAULT_CONFIG,
                       help="config file (bundled: paper.cfg, identity.cfg)")
        p.add_argument("--json", action="store_true", help="machine-readable output")
        if bound:
            p.add_argument("--bound", type=int, default=None, help="degree bound")
        return p

    p = common(sub.add_parser("normalize", help="normal form of a word"), bound=False)
    p.add_argument("-m", "--monoid", required=True)
    p.add_argument("-w", "--word", required=True)
    p.set_defaults(func=cmd_normalize)

    p = common(sub.add_parser("confluence", help="critical pairs of a rule set"), bound=False)
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("-m", "--monoid")
    g.add_argument("-r", "--relations", help="e.g. 'a b = a, b a = b'")
    p.set_defaults(func=cmd_confluence)

    p = common(sub.add_parser("components", help="connected components of an M-set"))
    p.add_argument("-s", "--mset", required=True)
    p.set_defaults(func=cmd_components)

    p = common(sub.add_parser("tensor", help="classes of X tensored along a morphism"))
    p.add_argument("-s", "--mset", required=True)
    p.add_argument("--along", help="morphism (default: the counterexample's)")
    p.set_defaults(func=cmd_tensor)

    p = common(sub.add_parser("morphism", help="well-definedness and surjectivity"))
    p.add_argument("name")
    p.set_defaults(func=cmd_morphism)

    p = common(sub.add_parser("verify", help="certify the counterexample"))
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    try:
        return args.func(args, out)
    except (MonoidToposError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
