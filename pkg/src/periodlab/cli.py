"""Command-line interface: ``periodlab <command> [options]``."""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from fractions import Fraction
from typing import Sequence

from .arb import PrecisionPolicy
from .errors import DomainError
from .expr import ExprSemanticError, ExprSyntaxError, evaluate, parse, to_symbolic, to_text, word_from_text
from .ncseries import associator, format_series, linearize, motivic_dims
from .periods import DEFAULT_ALPHA_INVERSE, ae_report, zigzag_period
from .relations import TableSet, dims_upper_bound, generate_relations, reduce
from .words import AlphabetError, MZVIndex, QLinComb, shuffle, stuffle

EXIT_OK, EXIT_DOMAIN, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _frac(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def _emit(args, payload: dict, plain: str, rows: list[list[str]] | None = None) -> None:
    if args.format == "json":
        print(json.dumps(payload, indent=2))
    elif args.format == "plain":
        print(plain)
    else:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        for r in rows if rows is not None else [[k, json.dumps(v) if isinstance(v, (dict, list)) else str(v)] for k, v in payload.items()]:
            writer.writerow(r)
        sys.stdout.write(buf.getvalue())


def _lincomb_payload(comb: QLinComb) -> tuple[list[dict], list[list[str]]]:
    terms = [{"term": str(k), "coeff": _frac(c)} for k, c in comb.sorted_items()]
    return terms, [["term", "coeff"]] + [[t["term"], t["coeff"]] for t in terms]


def _tables(args, level: int) -> TableSet:
    return TableSet(level, cache_dir=args.cache, use_cache=not args.no_cache)


def _policy(args) -> PrecisionPolicy:
    if args.digits < 1:
        raise UsageError("--digits must be positive")
    return PrecisionPolicy(args.digits)


def _index_operand(text: str) -> tuple[int, MZVIndex]:
    e = parse(text)
    sym = to_symbolic(e)
    if len(sym.terms) != 1:
        raise UsageError(f"{text!r} is not a single zeta(...) or phi(...) symbol")
    (mono, c), = sym.terms.items()
    if len(mono) != 1 or mono[0][1] != 1 or abs(c) != 1:
        raise UsageError(f"{text!r} is not a single zeta(...) or phi(...) symbol")
    return int(c), mono[0][0]


# --- commands ----------------------------------------------------------------------


def cmd_shuffle(args) -> int:
    try:
        u, v = word_from_text(args.u), word_from_text(args.v)
    except (ValueError, AlphabetError) as exc:
        raise UsageError(str(exc)) from exc
    if u.level != v.level:
        u, v = u.at_level(2), v.at_level(2)
    result = shuffle(u, v)
    terms, rows = _lincomb_payload(result)
    _emit(args, {"input": [str(u), str(v)], "result": str(result), "terms": terms}, str(result), rows)
    return EXIT_OK


def cmd_stuffle(args) -> int:
    sa, p = _index_operand(args.p)
    sb, q = _index_operand(args.q)
    level = max(p.level, q.level)
    result = stuffle(p.at_level(level), q.at_level(level)) * (sa * sb)
    terms, rows = _lincomb_payload(result)
    _emit(args, {"input": [args.p, args.q], "result": str(result), "terms": terms}, str(result), rows)
    return EXIT_OK


def cmd_reduce(args) -> int:
    e = parse(args.expr)
    comb = linearize(to_symbolic(e))
    level = max((p.level for p in comb), default=1)
    result = reduce(comb, _tables(args, level))
    terms, rows = _lincomb_payload(result)
    _emit(args, {"input": to_text(e), "result": str(result), "terms": terms}, str(result), rows)
    return EXIT_OK


def cmd_eval(args) -> int:
    policy = _policy(args)
    e = parse(args.expr)
    v = evaluate(e, policy)
    value = v.to_decimal(policy.digits)
    payload = {"expr": to_text(e), "value": value, "digits": policy.digits, "error_exp": v.error_exp}
    _emit(args, payload, value)
    return EXIT_OK


def cmd_relations(args) -> int:
    rels = generate_relations(args.weight, args.level)
    texts = [str(r) for r in rels]
    payload = {"weight": args.weight, "level": args.level, "count": len(texts), "relations": texts}
    _emit(args, payload, "\n".join(texts), [["relation"]] + [[t] for t in texts])
    return EXIT_OK


def cmd_dims(args) -> int:
    if args.max < 0:
        raise UsageError("--max must be >= 0")
    dims = dims_upper_bound(args.max, args.level, _tables(args, args.level))
    payload = {"max": args.max, "level": args.level, "dims": dims}
    if args.level == 1:
        payload["zagier"] = motivic_dims(args.max)
    _emit(args, payload, ",".join(map(str, dims)), [["weight", "dim"]] + [[str(n), str(d)] for n, d in enumerate(dims)])
    return EXIT_OK


def cmd_assoc(args) -> int:
    if args.weight < 0:
        raise UsageError("--weight must be >= 0")
    z = associator(args.weight, _tables(args, 1))
    coeffs = {"".join(map(str, w.letters)) or "()": str(c) for w, c in sorted(z.coeffs.items(), key=lambda t: t[0].sort_key())}
    text = format_series(z)
    _emit(args, {"weight": args.weight, "series": text, "coefficients": coeffs}, text,
          [["word", "coeff"]] + [[k, v] for k, v in coeffs.items()])
    return EXIT_OK


def cmd_zigzag(args) -> int:
    policy = _policy(args)
    pv = zigzag_period(args.loops, policy)
    payload = pv.to_dict(policy.digits)
    _emit(args, payload, f"{payload['exact']} = {payload['numeric']}")
    return EXIT_OK


def cmd_ae(args) -> int:
    policy = _policy(args)
    try:
        alpha_inv = Fraction(args.alpha_inv)
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError(f"bad --alpha-inv {args.alpha_inv!r}") from exc
    report = ae_report(alpha_inv, args.loops, policy)
    payload = report.to_dict(policy.digits)
    payload["loops"] = args.loops
    payload["alpha_inverse"] = args.alpha_inv
    plain = payload["numeric"] + ("" if args.loops < 3 else f"  (residual vs reference {payload['residual']})")
    _emit(args, payload, plain)
    return EXIT_OK


def cmd_selftest(args) -> int:
    from .selftest import format_table, run_checks

    results = run_checks(quick=not args.full, tables=_tables(args, 1))
    ok = all(r.passed for r in results)
    payload = {"passed": ok, "checks": [{"name": r.name, "passed": r.passed, "detail": r.detail} for r in results]}
    _emit(args, payload, format_table(results), [["check", "passed", "detail"]] + [[r.name, str(r.passed), r.detail] for r in results])
    return EXIT_OK if ok else EXIT_DOMAIN


# --- parser -------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "plain", "csv"), default="json")
    common.add_argument("--digits", type=int, default=30, help="decimal digits for numeric output")
    common.add_argument("--cache", metavar="DIR", default=None, help="reduction-table cache directory")
    common.add_argument("--no-cache", action="store_true", help="do not read or write cached tables")

    parser = argparse.ArgumentParser(prog="periodlab", description="MZV algebra and numerics")
    sub = parser.add_subparsers(dest="command", metavar="command")
    sub.required = True

    p = sub.add_parser("shuffle", parents=[common], help="shuffle product of two words")
    p.add_argument("u")
    p.add_argument("v")
    p.set_defaults(func=cmd_shuffle)

    p = sub.add_parser("stuffle", parents=[common], help="stuffle product of two indexes")
    p.add_argument("p")
    p.add_argument("q")
    p.set_defaults(func=cmd_stuffle)

    p = sub.add_parser("reduce", parents=[common], help="rewrite an expression in the MZV basis")
    p.add_argument("expr")
    p.set_defaults(func=cmd_reduce)

    p = sub.add_parser("eval", parents=[common], help="evaluate an expression numerically")
    p.add_argument("expr")
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("relations", parents=[common], help="list double-shuffle relations")
    p.add_argument("--weight", type=int, required=True)
    p.add_argument("--level", type=int, choices=(1, 2), default=1)
    p.set_defaults(func=cmd_relations)

    p = sub.add_parser("dims", parents=[common], help="dimension upper bounds per weight")
    p.add_argument("--max", type=int, default=10)
    p.add_argument("--level", type=int, choices=(1, 2), default=1)
    p.set_defaults(func=cmd_dims)

    p = sub.add_parser("assoc", parents=[common], help="generating series of regularised MZVs")
    p.add_argument("--weight", type=int, default=3)
    p.set_defaults(func=cmd_assoc)

    p = sub.add_parser("zigzag", parents=[common], help="zig-zag graph period")
    p.add_argument("--loops", type=int, required=True)
    p.set_defaults(func=cmd_zigzag)

    p = sub.add_parser("ae", parents=[common], help="electron anomalous magnetic moment")
    p.add_argument("--alpha-inv", default=str(float(DEFAULT_ALPHA_INVERSE)),
                   help="inverse fine-structure constant (default 137.035999, an external input)")
    p.add_argument("--loops", type=int, choices=(1, 2, 3), default=3)
    p.set_defaults(func=cmd_ae)

    p = sub.add_parser("selftest", parents=[common], help="run the invariant checks")
    p.add_argument("--full", action="store_true", help="include the slower checks")
    p.set_defaults(func=cmd_selftest)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except (UsageError, ExprSyntaxError, ExprSemanticError) as exc:
        print(f"periodlab: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (DomainError, AlphabetError, ZeroDivisionError) as exc:
        print(f"periodlab: domain error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN


if __name__ == "__main__":
    sys.exit(main())
