"""Command-line interface: encode/decode sets, translate and evaluate
formulas in either language, and run the verification suites.

Exit codes: 0 success (all cases pass / formula true), 1 a case failed or
the formula is false, 2 only budget incompletions, 64 syntax error,
65 language mismatch.
"""

from __future__ import annotations

import argparse
import json
import sys
from datetime import datetime, timezone

from .arith import FAST, LITERAL
from .core import decode, encode, format_set, parse_set_literal
from .errors import (
    BudgetExceeded,
    FormulaSyntaxError,
    LanguageMismatch,
    NotAnOrdinal,
)
from .evaluate import (
    EvalContext,
    eval_arith,
    eval_arith_term,
    eval_set,
    eval_set_term,
)
from .formulas import free_vars, is_bounded, show_arith, show_set
from .interp import get_map
from .parser import (
    parse_arith,
    parse_arith_term,
    parse_set,
    parse_set_term,
)
from .verify import Report, run_suite

SUITES = ("axioms", "opei", "theorem6", "roundtrip-ad", "roundtrip-da",
          "cardinal", "selftest", "all")


def _add_context_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--nat-cutoff", type=int, default=256,
                   help="range of unbounded arithmetic quantifiers")
    p.add_argument("--set-cutoff", type=int, default=256,
                   help="code range of unbounded set quantifiers")
    p.add_argument("--code-budget", type=int, default=1 << 20,
                   help="bit-length cap on computed codes")
    p.add_argument("--enum-budget", type=int, default=1 << 20,
                   help="cap on enumerated collections")
    p.add_argument("--literal-cutoff", type=int, default=64,
                   help="operand position cap for literal-mode arithmetic")
    p.add_argument("--mode", choices=(FAST, LITERAL), default=FAST,
                   help="route for the order-arithmetic operations")
    p.add_argument("--no-solver", action="store_true",
                   help="disable quantifier shortcuts; enumerate honestly")


def _context(args: argparse.Namespace) -> EvalContext:
    return EvalContext(
        nat_cutoff=args.nat_cutoff,
        set_cutoff=args.set_cutoff,
        code_budget=args.code_budget,
        enum_budget=args.enum_budget,
        literal_cutoff=args.literal_cutoff,
        mode=args.mode,
        solver=not args.no_solver,
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hf",
        description="Hereditarily finite sets, their coding as naturals, "
                    "and interpretations between the two languages.")
    sub = parser.add_subparsers(dest="command", required=True)

    enc = sub.add_parser("encode", help="print the code of a set literal")
    enc.add_argument("literal", help="set literal, e.g. '{{}, {{}}}'")

    dec = sub.add_parser("decode", help="print the set literal of a code")
    dec.add_argument("code", type=int)

    tr = sub.add_parser("translate",
                        help="translate a formula through an interpretation")
    tr.add_argument("--map", required=True, dest="map_tag", metavar="TAG",
                    help="map letters, rightmost applied first "
                         "(a, c, o, d, or compositions like da)")
    tr.add_argument("formula")

    ev = sub.add_parser("eval", help="evaluate a formula")
    lang = ev.add_mutually_exclusive_group(required=True)
    lang.add_argument("--arith", action="store_true",
                      help="the formula is arithmetic")
    lang.add_argument("--set", dest="set_lang", action="store_true",
                      help="the formula is set-language")
    ev.add_argument("formula")
    ev.add_argument("-b", "--bind", action="append", default=[],
                    metavar="NAME=TERM",
                    help="bind a free variable to a closed term")
    _add_context_args(ev)

    ve = sub.add_parser("verify", help="run a verification suite")
    ve.add_argument("suite", choices=SUITES)
    ve.add_argument("--max-code", type=int, default=4096,
                    help="exhaustive pair range for the membership suite")
    ve.add_argument("--corpus", default=None,
                    help="corpus file overriding the packaged one")
    ve.add_argument("--format", choices=("human", "json"), default="human",
                    dest="fmt")
    ve.add_argument("--no-timestamp", action="store_true",
                    help="omit the timestamp for byte-stable output")
    _add_context_args(ve)

    return parser


def _cmd_encode(args) -> int:
    x = parse_set_literal(args.literal)
    print(encode(x))
    return 0


def _cmd_decode(args) -> int:
    if args.code < 0:
        raise FormulaSyntaxError("codes are naturals")
    print(format_set(decode(args.code)))
    return 0


def _cmd_translate(args) -> int:
    m = get_map(args.map_tag)
    if m.source == "arith":
        f = parse_arith(args.formula)
    else:
        f = parse_set(args.formula)
    g = m(f)
    print(show_arith(g) if m.target == "arith" else show_set(g))
    return 0


def _parse_bindings(args, ctx: EvalContext) -> dict:
    env = {}
    for item in args.bind:
        if "=" not in item:
            raise FormulaSyntaxError(
                f"binding {item!r} is not of the form NAME=TERM")
        name, text = item.split("=", 1)
        name = name.strip()
        if args.set_lang:
            term = parse_set_term(text.strip())
            if free_vars(term):
                raise FormulaSyntaxError(
                    f"binding for {name} must be a closed term")
            env[name] = eval_set_term(term, {}, ctx)
        else:
            term = parse_arith_term(text.strip())
            if free_vars(term):
                raise FormulaSyntaxError(
                    f"binding for {name} must be a closed term")
            env[name] = eval_arith_term(term, {}, ctx)
    return env


def _cmd_eval(args) -> int:
    ctx = _context(args)
    env = _parse_bindings(args, ctx)
    if args.set_lang:
        f = parse_set(args.formula)
        cutoff = ctx.set_cutoff
    else:
        f = parse_arith(args.formula)
        cutoff = ctx.nat_cutoff
    missing = free_vars(f) - set(env)
    if missing:
        raise FormulaSyntaxError(
            f"unbound variables: {', '.join(sorted(missing))} "
            "(bind them with -b NAME=TERM)")
    value = eval_set(f, env, ctx) if args.set_lang \
        else eval_arith(f, env, ctx)
    verdict = "true" if value else "false"
    if not is_bounded(f):
        verdict += f" at cutoff {cutoff}"
    print(verdict)
    return 0 if value else 1


def _human_report(rep: Report) -> str:
    lines = [f"suite: {rep.suite}"]
    ctx_items = ", ".join(f"{k}={v}" for k, v in rep.context.items())
    lines.append(f"  context: {ctx_items}")
    for c in rep.cases:
        line = f"  [{c.verdict}] {c.id}"
        if c.note:
            line += f" — {c.note}"
        lines.append(line)
        if c.counterexample is not None:
            lines.append(f"      counterexample: "
                         f"{json.dumps(c.counterexample, sort_keys=True)}")
    t = rep.totals
    lines.append(f"  totals: {t['pass']} pass, {t['fail']} fail, "
                 f"{t['budget']} budget")
    return "\n".join(lines)


def _cmd_verify(args) -> int:
    ctx = _context(args)
    reports = run_suite(args.suite, ctx, max_code=args.max_code,
                        corpus=args.corpus)
    status = max(r.exit_status for r in reports)
    if args.fmt == "json":
        payload: dict = {"reports": [r.as_dict() for r in reports],
                         "exit_status": status}
        if not args.no_timestamp:
            payload["timestamp"] = datetime.now(timezone.utc).isoformat()
        print(json.dumps(payload, indent=2))
    else:
        for rep in reports:
            print(_human_report(rep))
        print(f"exit: {status}")
        if not args.no_timestamp:
            print(f"finished: {datetime.now(timezone.utc).isoformat()}")
    return status


def main(argv: "list[str] | None" = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    handlers = {
        "encode": _cmd_encode,
        "decode": _cmd_decode,
        "translate": _cmd_translate,
        "eval": _cmd_eval,
        "verify": _cmd_verify,
    }
    try:
        return handlers[args.command](args)
    except FormulaSyntaxError as e:
        print(f"syntax error: {e}", file=sys.stderr)
        return 64
    except LanguageMismatch as e:
        print(f"language mismatch: {e}", file=sys.stderr)
        return 65
    except (BudgetExceeded, NotAnOrdinal) as e:
        print(f"budget: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
