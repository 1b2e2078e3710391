"""Command-line front end.

Exit codes: 0 for equal / true / all checks passed, 1 for unequal / false /
failed checks, 2 for errors (bad input, exhausted budget).
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Optional, Sequence

from .automata import canonical_serialize, linear_graph, to_dot
from .ffbr import VarietyContext, decide_equal, evaluate
from .perfect import eval_p
from .stephen import DEFAULT_BUDGET, BudgetExhausted, close, format_trace, is_idempotent, prepare_word
from .suites import SUITES, run_suite
from .terms import Alphabet, ParseError, Variety, format_term, format_word, parse_term, parse_word

EXIT_TRUE, EXIT_FALSE, EXIT_ERROR = 0, 1, 2


class CliError(Exception):
    pass


def _positive_int(text: str) -> int:
    n = int(text)
    if n < 1:
        raise argparse.ArgumentTypeError("must be at least 1")
    return n


def _common() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--alphabet", default="x,y", help="comma separated generators (default: x,y)")
    p.add_argument("--variety", default="free", choices=[v.value for v in Variety])
    p.add_argument("--budget", type=_positive_int, default=DEFAULT_BUDGET, help="max closure expansion events")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--dot", type=Path, help="write a DOT rendering here")
    p.add_argument("--trace", type=Path, help="write the closure trace here")
    p.add_argument("--format", dest="fmt", default="text", choices=["text", "json"])
    return p


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    parser = argparse.ArgumentParser(prog="birestriction", description="Free F-birestriction monoids as executable algebra.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("decide", parents=[common], help="decide whether two terms are equal")
    p.add_argument("left")
    p.add_argument("right")

    p = sub.add_parser("closure", parents=[common], help="close the linear automaton of a signed word")
    p.add_argument("word")

    p = sub.add_parser("idempotent", parents=[common], help="is the word an idempotent")
    p.add_argument("word")

    p = sub.add_parser("eval", parents=[common], help="coordinates of a term")
    p.add_argument("term")

    p = sub.add_parser("suite", parents=[common], help="run a property suite")
    p.add_argument("name", choices=sorted(SUITES))
    p.add_argument("--count", type=_positive_int, help="override the number of samples")

    p = sub.add_parser("crosscheck", parents=[common], help="compare the two models of the perfect case")
    p.add_argument("--count", type=_positive_int, default=500)
    return parser


def _context(args) -> VarietyContext:
    return VarietyContext(Alphabet.parse(args.alphabet), Variety.parse(args.variety), args.budget, args.seed)


def _emit(args, text: str, record: dict) -> None:
    if args.fmt == "json":
        print(json.dumps(record, sort_keys=True))
    else:
        print(text)


def cmd_decide(args) -> int:
    ctx = _context(args)
    t1, t2 = ctx.parse(args.left), ctx.parse(args.right)
    a, b = evaluate(t1, ctx), evaluate(t2, ctx)
    equal = a == b
    if args.dot:
        args.dot.write_text(to_dot(a.graph, "left") + to_dot(b.graph, "right"))
    verdict = "equal" if equal else "unequal"
    record = {
        "command": "decide",
        "variety": ctx.variety.value,
        "left": format_term(t1),
        "right": format_term(t2),
        "verdict": verdict,
        "elements": [a.to_record(), b.to_record()],
    }
    _emit(args, verdict, record)
    return EXIT_TRUE if equal else EXIT_FALSE


def cmd_closure(args) -> int:
    ctx = _context(args)
    w = parse_word(args.word, ctx.alphabet)
    graph, trace = close(linear_graph(prepare_word(w, ctx.variety)), ctx.variety, ctx.budget)
    data = canonical_serialize(graph)
    if args.dot:
        args.dot.write_text(to_dot(graph))
    if args.trace:
        args.trace.write_text(format_trace(trace))
    record = {
        "command": "closure",
        "variety": ctx.variety.value,
        "word": format_word(w),
        "vertices": len(graph.vertices),
        "edges": len(graph.edges),
        "graph": data.hex(),
        "trace_events": len(trace),
    }
    _emit(args, data.decode().rstrip("\n"), record)
    return EXIT_TRUE


def cmd_idempotent(args) -> int:
    ctx = _context(args)
    w = parse_word(args.word, ctx.alphabet)
    result = is_idempotent(w, ctx.variety, ctx.budget)
    record = {"command": "idempotent", "variety": ctx.variety.value, "word": format_word(w), "idempotent": result}
    _emit(args, "true" if result else "false", record)
    return EXIT_TRUE if result else EXIT_FALSE


def cmd_eval(args) -> int:
    ctx = _context(args)
    t = ctx.parse(args.term)
    el = evaluate(t, ctx)
    if args.dot:
        args.dot.write_text(to_dot(el.graph))
    text = f"u = {''.join(el.u) or '1'}\n" + canonical_serialize(el.graph).decode().rstrip("\n")
    if ctx.variety is Variety.P:
        text += "\ncayley: " + " ".join(f"({s} {lab} {t})" for s, lab, t in eval_p(t, ctx.alphabet).gamma.serialize())
    record = {"command": "eval", "term": format_term(t), **el.to_record()}
    _emit(args, text, record)
    return EXIT_TRUE


def _report(args, results) -> int:
    ok = all(r.ok for r in results)
    if args.fmt == "json":
        print(json.dumps({"ok": ok, "suites": [r.to_record() for r in results]}, sort_keys=True))
    else:
        for r in results:
            print(r.summary())
            for k, v in r.notes.items():
                print(f"  {k}: {v}")
            for f in r.failures:
                print(f"  failure: {f}")
    return EXIT_TRUE if ok else EXIT_FALSE


def cmd_suite(args) -> int:
    return _report(args, [run_suite(args.name, _context(args), args.count)])


def cmd_crosscheck(args) -> int:
    return _report(args, [run_suite("perfect-crosscheck", _context(args), args.count)])


COMMANDS = {
    "decide": cmd_decide,
    "closure": cmd_closure,
    "idempotent": cmd_idempotent,
    "eval": cmd_eval,
    "suite": cmd_suite,
    "crosscheck": cmd_crosscheck,
}


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_ERROR if exc.code else EXIT_TRUE
    try:
        return COMMANDS[args.command](args)
    except (ParseError, BudgetExhausted, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
