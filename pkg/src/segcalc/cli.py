"""``segcalc`` command line.

Results go to stdout, progress and diagnostics to stderr.  ``--json`` turns
stdout into a single JSON document carrying ``"schema": 1``.  Exit status is
0 for OK, 1 for a failed check, 2 for a parse error and 3 for a violated
precondition.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Optional, Sequence

from . import checks
from .core import (
    Context,
    LineResolver,
    ParseError,
    SegcalcError,
    load_context,
    parse_multisegment,
)
from .genext import format_word, m_gen, parse_word, serre_equivalent, star, word_of
from .lfactor import divides, expand, l_multisegment
from .order import aperiodic_below, leq
from .polymod import PolyModEll
from .quiver_oracle import DEFAULT_P, generic_ext_oracle

SCHEMA = 1


class Status(str, Enum):
    OK = "OK"
    CHECK_FAILED = "CHECK_FAILED"
    PARSE_ERROR = "PARSE_ERROR"
    PRECONDITION_ERROR = "PRECONDITION_ERROR"


EXIT_CODES = {Status.OK: 0, Status.CHECK_FAILED: 1, Status.PARSE_ERROR: 2, Status.PRECONDITION_ERROR: 3}


@dataclass
class CommandOutcome:
    status: Status
    text: str = ""
    data: Any = None
    diagnostics: list[dict] = field(default_factory=list)

    @property
    def exit_code(self) -> int:
        return EXIT_CODES[self.status]

    def to_json(self, command: Optional[str]) -> dict:
        return {"schema": SCHEMA, "command": command, "status": self.status.value,
                "result": self.data, "diagnostics": self.diagnostics}


class _ArgError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _ArgError(message)


# ---------------------------------------------------------------------------
# Helpers
# ---------------------------------------------------------------------------


def _context(args) -> Optional[Context]:
    if not args.ctx:
        return None
    try:
        with open(args.ctx, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise SegcalcError(f"cannot read context {args.ctx}: {exc.strerror}") from None
    try:
        return load_context(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"context {args.ctx}: {exc.msg}", exc.colno) from None
    except (KeyError, TypeError) as exc:
        raise SegcalcError(f"malformed context {args.ctx}: {exc}") from None


def _resolver(args, ctx: Optional[Context]) -> LineResolver:
    return LineResolver(ctx, args.n, auto=ctx is None)


def _parse(args, text: str, ctx):
    try:
        return parse_multisegment(text, _resolver(args, ctx))
    except ParseError as exc:
        exc.expression = text
        raise


def _ms_json(m) -> dict:
    return {"text": str(m), "segments": [{"line": s.line.id, "a": s.a, "length": s.length} for s in m]}


def _word_json(w) -> list:
    return [[x.line.id, x.i] for x in w]


def _ok(text: str, data: Any) -> CommandOutcome:
    return CommandOutcome(Status.OK, text, data)


def _bool(x: bool) -> str:
    return "true" if x else "false"


# ---------------------------------------------------------------------------
# Subcommands
# ---------------------------------------------------------------------------


def cmd_parse(args, ctx):
    m = _parse(args, args.expr, ctx)
    return _ok(str(m), _ms_json(m))


def cmd_order(args, ctx):
    n, m = _parse(args, args.lower, ctx), _parse(args, args.upper, ctx)
    res = leq(n, m)
    return _ok(_bool(res), {"lower": str(n), "upper": str(m), "leq": res})


def cmd_aperiodic_below(args, ctx):
    m = _parse(args, args.expr, ctx)
    found = sorted(aperiodic_below(m, ctx, maximal_only=not args.all))
    return _ok("\n".join(str(x) for x in found), [_ms_json(x) for x in found])


def cmd_genext(args, ctx):
    resolve = _resolver(args, ctx)
    try:
        w = parse_word(args.word, resolve)
    except ParseError as exc:
        exc.expression = args.word
        raise
    m = m_gen(w)
    return _ok(str(m), _ms_json(m))


def cmd_word_of(args, ctx):
    w = word_of(_parse(args, args.expr, ctx))
    return _ok(format_word(w) or "ε", _word_json(w))


def cmd_star(args, ctx):
    m = star(_parse(args, args.left, ctx), _parse(args, args.right, ctx))
    return _ok(str(m), _ms_json(m))


def cmd_serre_eq(args, ctx):
    resolve = _resolver(args, ctx)
    w1, w2 = parse_word(args.word1, resolve), parse_word(args.word2, resolve)
    res = serre_equivalent(w1, w2, args.relations)
    return _ok(_bool(res), {"equivalent": res, "relations": args.relations})


def cmd_lfactor(args, ctx):
    m, n = _parse(args, args.left, ctx), _parse(args, args.right, ctx)
    L = l_multisegment(m, n, ctx)
    lines = [str(L)]
    data = {"factors": L.to_json(), "text": str(L)}
    if args.expand:
        if ctx is None or not ctx.modular:
            raise SegcalcError("--expand needs a modular context (--ctx)")
        poly = expand(L, ctx)
        lines.append(f"{poly} (mod {ctx.ell})")
        data["expanded"] = {"coefficients": list(poly.coeffs), "ell": ctx.ell, "text": str(poly)}
    return _ok("\n".join(lines), data)


def _poly(text: str, ell: int) -> PolyModEll:
    try:
        return PolyModEll([int(c) for c in text.split(",")], ell)
    except ValueError:
        raise ParseError(f"expected comma-separated coefficients, found {text!r}", 1) from None


def cmd_divides(args, ctx):
    if ctx is None or not ctx.modular:
        raise SegcalcError("divides needs a modular context (--ctx)")
    if args.poly:
        if len(args.items) != 2:
            raise SegcalcError("--poly takes two coefficient lists")
        p1, p2 = (_poly(t, ctx.ell) for t in args.items)
    else:
        if len(args.items) != 4:
            raise SegcalcError("expected M1 N1 M2 N2")
        m1, n1, m2, n2 = (_parse(args, t, ctx) for t in args.items)
        p1 = expand(l_multisegment(m1, n1, ctx), ctx)
        p2 = expand(l_multisegment(m2, n2, ctx), ctx)
    res = divides(p1, p2, ctx)
    return _ok(_bool(res), {"divides": res, "divisor": str(p1), "dividend": str(p2)})


def cmd_oracle_genext(args, ctx):
    m, n = _parse(args, args.left, ctx), _parse(args, args.right, ctx)
    x = generic_ext_oracle(m, n, p=args.p, samples=args.samples, seed=args.seed)
    return _ok(str(x), _ms_json(x))


def _suite_outcome(results: list[checks.SuiteResult]) -> CommandOutcome:
    width = max([len(r.label) for res in results for r in res.rows] + [10])
    lines = []
    for res in results:
        lines.append(f"{res.name}: {'PASS' if res.passed else 'FAIL'} ({res.cases} cases, {res.failures} failures)")
        for r in res.rows:
            lines.append(f"  {r.label:<{width}}  {'PASS' if r.passed else 'FAIL'}  {r.cases:>6}  {r.failures:>4}")
        if res.counterexample:
            lines.append(f"  first counterexample: {res.counterexample}")
    ok = all(r.passed for r in results)
    out = CommandOutcome(Status.OK if ok else Status.CHECK_FAILED, "\n".join(lines),
                         [r.to_json() for r in results])
    for r in results:
        if r.counterexample:
            out.diagnostics.append({"kind": "counterexample", "suite": r.name, "message": r.counterexample})
    return out


def _progress(args):
    if args.quiet:
        return checks._quiet
    return lambda msg: print(msg, file=sys.stderr, flush=True)


def _suite_kwargs(name: str, args) -> dict:
    kw: dict = {"progress": _progress(args)}
    orders = (args.n,) if args.n is not None else None
    if name == "serre":
        if orders:
            kw["orders"] = orders
        if args.max_deg is not None:
            kw["image_len"] = args.max_deg
            kw["relation_len"] = min(args.max_deg, 5)
    elif name in ("order-oracle", "genext-oracle", "monotonicity"):
        if orders:
            kw["orders"] = orders
        if args.max_deg is not None:
            kw["max_deg"] = args.max_deg
            if name == "monotonicity":
                kw["star_deg"] = args.max_deg
        kw["p"] = args.p
        if name in ("genext-oracle", "monotonicity"):
            kw.update(samples=args.samples, seed=args.seed)
    elif name == "roundtrips":
        if orders:
            kw.update(quiver_orders=orders, word_orders=orders, dual_orders=orders)
        if args.max_deg is not None:
            kw["max_deg"] = args.max_deg
        kw["p"] = args.p
    elif name == "lfactor-ratios":
        kw["seed"] = args.seed
        if args.cases is not None:
            kw["cases"] = args.cases
    return kw


def _run_suite(name: str, args) -> checks.SuiteResult:
    res = checks.SUITES[name](**_suite_kwargs(name, args))
    if not args.quiet:
        print(f"{name}: finished in {res.elapsed:.1f}s", file=sys.stderr, flush=True)
    return res


def cmd_oracle_check_order(args, ctx):
    return _suite_outcome([_run_suite("order-oracle", args)])


def cmd_check(args, ctx):
    names = args.suites or list(checks.SUITES)
    unknown = [s for s in names if s not in checks.SUITES]
    if unknown:
        raise SegcalcError(f"unknown suite(s) {', '.join(unknown)}; choose from {', '.join(checks.SUITES)}")
    return _suite_outcome([_run_suite(s, args) for s in names])


# ---------------------------------------------------------------------------
# Argument parsing
# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--ctx", metavar="FILE", help="JSON context with mode, ell, q and lines")
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--n", type=int, default=None,
                        help="order of lines used when no --ctx is given (default: infinite)")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--p", type=int, default=DEFAULT_P, help="prime field of the quiver oracle")
    common.add_argument("--samples", type=int, default=32, help="random extensions sampled by the oracle")
    common.add_argument("--max-deg", type=int, default=None)

    parser = _Parser(prog="segcalc", description="Multisegment, generic extension and L-factor calculator.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name, fn, help_, *positional):
        sp = sub.add_parser(name, parents=[common], help=help_)
        for pos in positional:
            sp.add_argument(pos)
        sp.set_defaults(func=fn)
        return sp

    add("parse", cmd_parse, "parse and print a multisegment in canonical form", "expr")
    add("order", cmd_order, "is LOWER below UPPER in the degeneration order", "lower", "upper")
    sp = add("aperiodic-below", cmd_aperiodic_below, "maximal aperiodic multisegments below EXPR", "expr")
    sp.add_argument("--all", action="store_true", help="list every aperiodic one, not only the maximal")
    sp = add("genext", cmd_genext, "multisegment of a word")
    sp.add_argument("--word", required=True, help='e.g. "L:0,L:1,L:2"')
    add("word-of", cmd_word_of, "a word whose multisegment is EXPR", "expr")
    add("star", cmd_star, "product of two aperiodic multisegments", "left", "right")
    sp = add("serre-eq", cmd_serre_eq, "are two words related by the rewrite rules", "word1", "word2")
    sp.add_argument("--relations", choices=["cyclic", "printed", "literal"], default="cyclic")
    sp = add("lfactor", cmd_lfactor, "inverse L-factor of a pair of multisegments", "left", "right")
    sp.add_argument("--expand", action="store_true", help="also print the expanded polynomial")
    sp = add("divides", cmd_divides, "does the first inverse L-factor divide the second")
    sp.add_argument("items", nargs="+", metavar="ITEM", help="M1 N1 M2 N2, or two coefficient lists with --poly")
    sp.add_argument("--poly", action="store_true", help="items are constant-first coefficient lists")

    oracle = sub.add_parser("oracle", help="brute-force quiver computations")
    osub = oracle.add_subparsers(dest="oracle_command", required=True, parser_class=_Parser)
    sp = osub.add_parser("genext", parents=[common], help="generic extension of LEFT by RIGHT (RIGHT the sub)")
    sp.add_argument("left")
    sp.add_argument("right")
    sp.set_defaults(func=cmd_oracle_genext, default_n=3)
    sp = osub.add_parser("check-order", parents=[common], help="combinatorial order vs Hom-dimension order")
    sp.add_argument("--quiet", action="store_true")
    sp.set_defaults(func=cmd_oracle_check_order)

    sp = add("check", cmd_check, "run property suites")
    sp.add_argument("suites", nargs="*", metavar="SUITE", help=f"any of: {', '.join(checks.SUITES)}")
    sp.add_argument("--cases", type=int, default=None, help="random cases for lfactor-ratios")
    sp.add_argument("--quiet", action="store_true", help="no progress on stderr")
    return parser


def _diagnostic(exc: Exception) -> dict:
    d = {"kind": type(exc).__name__, "message": str(exc)}
    if isinstance(exc, ParseError):
        d["message"] = exc.reason
        d["column"] = exc.column
        if getattr(exc, "expression", None) is not None:
            d["expression"] = exc.expression
    return d


def run(argv: Sequence[str]) -> tuple[CommandOutcome, bool, Optional[str]]:
    """Execute one invocation; returns the outcome, the ``--json`` flag and the command name."""
    want_json = "--json" in argv
    parser = build_parser()
    try:
        args = parser.parse_args(list(argv))
    except _ArgError as exc:
        return CommandOutcome(Status.PRECONDITION_ERROR, diagnostics=[{"kind": "usage", "message": str(exc)}]), \
            want_json, None
    command = args.command + (f" {args.oracle_command}" if args.command == "oracle" else "")
    if args.n is None and getattr(args, "default_n", None):
        args.n = args.default_n
    if not hasattr(args, "quiet"):
        args.quiet = False
    try:
        ctx = _context(args)
        outcome = args.func(args, ctx)
    except ParseError as exc:
        outcome = CommandOutcome(Status.PARSE_ERROR, diagnostics=[_diagnostic(exc)])
    except (SegcalcError, ValueError, ArithmeticError, RuntimeError) as exc:
        outcome = CommandOutcome(Status.PRECONDITION_ERROR, diagnostics=[_diagnostic(exc)])
    return outcome, args.json, command


def _format_diagnostic(status: Status, d: dict) -> str:
    if "column" in d:
        return f"{status.value} at column {d['column']}: {d['message']}"
    return f"{status.value}: {d['message']}"


def main(argv: Optional[Sequence[str]] = None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    if not argv or argv[0] in ("-h", "--help"):
        build_parser().print_help()
        return 0
    try:
        outcome, want_json, command = run(argv)
    except SystemExit as exc:  # --help inside a subcommand
        return int(exc.code or 0)
    if want_json:
        print(json.dumps(outcome.to_json(command), indent=2, sort_keys=True))
    else:
        if outcome.text:
            print(outcome.text)
        for d in outcome.diagnostics:
            if outcome.status is Status.CHECK_FAILED:
                continue
            print(_format_diagnostic(outcome.status, d), file=sys.stderr)
    return outcome.exit_code


if __name__ == "__main__":
    sys.exit(main())
