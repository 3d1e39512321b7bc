"""Command line front end.

Every command reads one object through ``--input`` (a file name, ``-``
for stdin, or the text itself) or ``--corpus NAME`` (a bundled example).
Net commands also accept a term, which is translated first.

Exit status: 0 success, 1 domain violation, 2 usage or input error,
3 internal invariant breach.
"""

from __future__ import annotations

import argparse
import json
import os
import random
import sys

from . import corpus
from .bisim import check_one_step, cosimulate
from .correctness import check_correct, sequentialize
from .dynamics import find_cuts, step_net
from .errors import FormatError, InvariantBreach, TermSyntaxError, VkerError
from .generate import random_corpus
from .iso import net_iso
from .nets import deserialize, export_dot, serialize, to_json, validate_net
from .structural import vo_equiv
from .terms import (Abs, App, ESub, Var, choose_redex, find_redexes, is_well_named, kernelize, parse_term, show,
                    step, well_name)
from .translation import translate

OK, VIOLATION, USAGE, BREACH = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _corpus_names():
    names = ["delta"] + sorted(corpus.COUNTEREXAMPLES)
    for eq in sorted(corpus.EQUATIONS):
        names += [f"{eq}.lhs", f"{eq}.rhs"]
    return names


def _from_corpus(name):
    if name == "delta":
        return corpus.delta_term()
    if name in corpus.COUNTEREXAMPLES:
        return corpus.counterexample(name)
    eq, _, side = name.partition(".")
    if eq in corpus.EQUATIONS and side in ("lhs", "rhs"):
        return corpus.equation_pair(eq)[side == "rhs"]
    raise UsageError(f"unknown corpus item {name!r}; choose from {', '.join(_corpus_names())}")


def _read_text(value):
    if value == "-":
        return sys.stdin.read()
    if os.path.isfile(value):
        with open(value, encoding="utf-8") as fh:
            return fh.read()
    return value


def _weakenings(args):
    return frozenset(w for w in (args.weakenings or "").split(",") if w.strip())


def load_term(args):
    if args.corpus:
        t = _from_corpus(args.corpus)
        if not isinstance(t, (Var, Abs, App, ESub)):
            raise UsageError(f"{args.corpus} is a net, not a term")
        return t
    if args.input is None:
        raise UsageError("give --input or --corpus")
    text = _read_text(args.input).strip()
    if getattr(args, "kernelize", False):
        return kernelize(parse_term(text, extended=True))
    t = parse_term(text)
    return t if is_well_named(t) else well_name(t)


def load_net(args):
    """A net from JSON, or the translation of a term."""
    if args.corpus:
        obj = _from_corpus(args.corpus)
        return obj if not isinstance(obj, (Var, Abs, App, ESub)) else translate(obj, _weakenings(args))
    if args.input is None:
        raise UsageError("give --input or --corpus")
    text = _read_text(args.input).strip()
    if text.startswith("{"):
        return deserialize(text)
    t = load_term(args)
    return translate(t, _weakenings(args))


def term_json(t):
    if isinstance(t, Var):
        return {"var": t.name}
    if isinstance(t, Abs):
        return {"abs": t.var, "body": term_json(t.body)}
    if isinstance(t, App):
        return {"app": [term_json(t.fun), term_json(t.arg)]}
    return {"sub": t.var, "body": term_json(t.body), "defn": term_json(t.defn)}


def _emit(args, text_lines, payload):
    if args.format == "json":
        print(json.dumps(payload, ensure_ascii=False, sort_keys=True))
    else:
        for line in text_lines:
            print(line)


# ---------------------------------------------------------------------------
# Commands


def cmd_parse(args):
    t = load_term(args)
    _emit(args, [show(t)], {"term": show(t), "ast": term_json(t)})
    return OK


def cmd_translate(args):
    t = load_term(args)
    G = translate(t, _weakenings(args))
    if args.format == "json":
        print(serialize(G))
    else:
        print(f"{len(G.nodes)} nodes, {len(G.links)} links, {len(G.boxes)} boxes, root {G.root}")
        for l in sorted(G.links, key=str):
            print(f"  {l}")
    return OK


def cmd_check(args):
    G = load_net(args)
    problems = validate_net(G)
    report = check_correct(G) if not problems else None
    ok = not problems and report.ok
    payload = {"net": not problems, "violations": [str(v) for v in problems],
               "correct": bool(report and report.ok)}
    if report is not None:
        payload.update(report.to_json())
        payload["correct"] = report.ok
    lines = [f"not a net: {v}" for v in problems] if problems else [str(report)]
    _emit(args, lines, payload)
    return OK if ok else VIOLATION


def cmd_reduce_term(args):
    t = load_term(args)
    X = _weakenings(args)
    rng = random.Random(args.seed)
    steps = []
    for _ in range(args.fuel):
        rs = find_redexes(t)
        if not rs:
            break
        r = choose_redex(rs, args.strategy, rng)
        t2 = step(t, r, avoid=X)
        steps.append({"redex": str(r), "kind": r.kind, "before": show(t), "after": show(t2)})
        t = t2
    normal = not find_redexes(t)
    lines = [f"{i + 1}. {s['redex']}: {s['after']}" for i, s in enumerate(steps)]
    lines.append(f"{'normal form' if normal else 'fuel exhausted'} after {len(steps)} steps: {show(t)}")
    _emit(args, lines, {"steps": steps, "final": show(t), "normal": normal})
    return OK


def cmd_reduce_net(args):
    G = load_net(args)
    rng = random.Random(args.seed)
    steps = []
    for _ in range(args.fuel):
        cuts = find_cuts(G)
        if not cuts:
            break
        c = choose_redex(cuts, args.strategy, rng)
        G2 = step_net(G, c)
        steps.append({"cut": str(c), "kind": c.kind, "links_before": len(G.links), "links_after": len(G2.links)})
        G = G2
    normal = not find_cuts(G)
    if args.format == "json":
        print(json.dumps({"steps": steps, "normal": normal, "final": to_json(G)}, ensure_ascii=False,
                         sort_keys=True))
    else:
        for i, s in enumerate(steps):
            print(f"{i + 1}. {s['cut']}: {s['links_before']} -> {s['links_after']} links")
        print(f"{'normal' if normal else 'fuel exhausted'} after {len(steps)} steps, {len(G.links)} links")
        if not validate_net(G) and check_correct(G).ok:
            t, X = sequentialize(G)
            print(f"reads back as {show(t)}" + (f" with weakenings {','.join(sorted(X))}" if X else ""))
    return OK


def cmd_readback(args):
    G = load_net(args)
    t, X = sequentialize(G)
    line = show(t) + (f"  weakenings: {','.join(sorted(X))}" if X else "")
    _emit(args, [line], {"term": show(t), "weakenings": sorted(X)})
    return OK


def cmd_cosim(args):
    t = load_term(args)
    trace = cosimulate(t, _weakenings(args), strategy=args.strategy, fuel=args.fuel, seed=args.seed)
    if args.format == "json":
        print(trace.json_lines())
    else:
        for s in trace.steps:
            print(f"{s.index}. {s.redex} ~ {s.cut}: {s.term_after}  ({s.links_before} -> {s.links_after} links)")
        state = "both normal" if trace.normal else "fuel exhausted"
        print(f"{state} after {len(trace.steps)} steps ({trace.counts['m']} m, {trace.counts['e']} e)")
    return OK


def cmd_fuzz(args):
    bad = 0
    results = []
    for i, (t, X) in enumerate(random_corpus(args.count, seed=args.seed, max_size=args.max_size)):
        record = {"index": i, "term": show(t), "weakenings": sorted(X)}
        try:
            G = translate(t, X)
            s, Y = sequentialize(G)
            record["roundtrip"] = vo_equiv(t, s) and Y == X and net_iso(translate(s, Y), G)
            record["redexes"] = check_one_step(t, X)
            trace = cosimulate(t, X, strategy=args.strategy, fuel=args.fuel, seed=args.seed + i)
            record["steps"] = len(trace.steps)
            record["normal"] = trace.normal
        except InvariantBreach as exc:
            record["error"] = f"{type(exc).__name__}: {exc}"
        if "error" in record or not record["roundtrip"]:
            bad += 1
        results.append(record)
    if args.format == "json":
        for r in results:
            print(json.dumps(r, ensure_ascii=False, sort_keys=True))
    else:
        for r in results:
            if "error" in r or not r["roundtrip"]:
                print(f"FAIL {r['index']}: {r['term']}  {r.get('error', 'round trip')}")
        print(f"{len(results) - bad}/{len(results)} terms passed")
    return BREACH if bad else OK


def cmd_dot(args):
    G = load_net(args)
    print(export_dot(G), end="")
    return OK


COMMANDS = {
    "parse": (cmd_parse, "parse a term and print it"),
    "translate": (cmd_translate, "translate a term to a net"),
    "check": (cmd_check, "check a net against the correctness criterion"),
    "reduce-term": (cmd_reduce_term, "reduce a term step by step"),
    "reduce-net": (cmd_reduce_net, "eliminate cuts of a net step by step"),
    "readback": (cmd_readback, "read a correct net back as a term"),
    "cosim": (cmd_cosim, "reduce a term and its net side by side"),
    "fuzz": (cmd_fuzz, "round trips and co-simulations on random terms"),
    "dot": (cmd_dot, "print a net in Graphviz DOT"),
}


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--input", "-i", help="file name, '-' for stdin, or the text itself")
    common.add_argument("--corpus", help="bundled item: " + ", ".join(_corpus_names()))
    common.add_argument("--weakenings", "-w", default="", help="comma separated weakened variables")
    common.add_argument("--strategy", choices=("leftmost", "rightmost", "random"), default="leftmost")
    common.add_argument("--fuel", type=int, default=1000)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--kernelize", action="store_true",
                        help="accept applications with non-value heads and name them")

    parser = argparse.ArgumentParser(prog="vkernets", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    for name, (_, help_text) in COMMANDS.items():
        p = sub.add_parser(name, parents=[common], help=help_text)
        if name == "fuzz":
            p.add_argument("--count", type=int, default=100)
            p.add_argument("--max-size", type=int, default=50)
            p.set_defaults(fuel=100)
    return parser


def _error(kind, exc, payload=None):
    record = {"error": kind, "type": type(exc).__name__, "message": str(exc)}
    if payload:
        record["payload"] = payload
    print(json.dumps(record, ensure_ascii=False, sort_keys=True), file=sys.stderr)


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    handler = COMMANDS[args.command][0]
    try:
        return handler(args)
    except (UsageError, TermSyntaxError, FormatError) as exc:
        _error("usage", exc)
        return USAGE
    except InvariantBreach as exc:
        _error("invariant", exc, exc.payload)
        return BREACH
    except VkerError as exc:
        _error("domain", exc)
        return VIOLATION


if __name__ == "__main__":
    sys.exit(main())
