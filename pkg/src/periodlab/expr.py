"""Expression language for MZVs, alternating sums, polylogs and hyperlogarithms.

Grammar::

    expr    := ['-'] term (('+'|'-') term)*
    term    := factor ('*' factor)*
    factor  := 'zeta(' sints ')' | 'phi(' ints ')' | 'Li[' ints '](' numbers ')'
             | 'L[' letters '](' number ')' | rational | '(' expr ')'
    letters := ('0'|'1'|'m') {',' ('0'|'1'|'m')}
    number  := ['-'] real [('+'|'-') real 'i'] | ['-'] real 'i'
    real    := decimal | p/q

A negative zeta entry ``-n`` carries the twist -1 on that slot.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

import mpmath

from .arb import ArbComplex, ArbReal, PrecisionPolicy
from .errors import DomainError
from .ncseries import Poly
from .numerics import DEFAULT_POLICY, eval_alternating, eval_Li, eval_mzv, eval_word, phi
from .words import MZVIndex, Word


class ExprSyntaxError(ValueError):
    def __init__(self, message: str, pos: int, text: str = ""):
        self.pos = pos
        self.text = text
        super().__init__(f"{message} at position {pos}")


class ExprSemanticError(ValueError):
    def __init__(self, message: str, span: tuple[int, int] | None = None):
        self.span = span
        super().__init__(message if span is None else f"{message} at position {span[0]}")


# --- AST -----------------------------------------------------------------------------
# spans are excluded from equality so that parse(print(e)) == e


@dataclass(frozen=True)
class RationalLiteral:
    value: Fraction
    span: tuple[int, int] | None = None

    def __eq__(self, other):
        return isinstance(other, RationalLiteral) and self.value == other.value

    def __hash__(self):
        return hash(("q", self.value))


@dataclass(frozen=True)
class ComplexLiteral:
    re: Fraction
    im: Fraction
    span: tuple[int, int] | None = None

    def __eq__(self, other):
        return isinstance(other, ComplexLiteral) and (self.re, self.im) == (other.re, other.im)

    def __hash__(self):
        return hash(("c", self.re, self.im))


Number = Union[RationalLiteral, ComplexLiteral]


@dataclass(frozen=True)
class ZetaIndex:
    entries: tuple[int, ...]
    span: tuple[int, int] | None = None

    def __eq__(self, other):
        return isinstance(other, ZetaIndex) and self.entries == other.entries

    def __hash__(self):
        return hash(("zeta", self.entries))

    @property
    def index(self) -> MZVIndex:
        return MZVIndex.signed(self.entries)


@dataclass(frozen=True)
class PhiIndex:
    exponents: tuple[int, ...]
    span: tuple[int, int] | None = None

    def __eq__(self, other):
        return isinstance(other, PhiIndex) and self.exponents == other.exponents

    def __hash__(self):
        return hash(("phi", self.exponents))


@dataclass(frozen=True)
class LiCall:
    exponents: tuple[int, ...]
    args: tuple[Number, ...]
    span: tuple[int, int] | None = None

    def __eq__(self, other):
        return isinstance(other, LiCall) and (self.exponents, self.args) == (other.exponents, other.args)

    def __hash__(self):
        return hash(("Li", self.exponents, self.args))


@dataclass(frozen=True)
class WordLiteral:
    letters: str
    arg: Number
    span: tuple[int, int] | None = None

    def __eq__(self, other):
        return isinstance(other, WordLiteral) and (self.letters, self.arg) == (other.letters, other.arg)

    def __hash__(self):
        return hash(("L", self.letters, self.arg))


@dataclass(frozen=True)
class Product:
    factors: tuple
    span: tuple[int, int] | None = None

    def __eq__(self, other):
        return isinstance(other, Product) and self.factors == other.factors

    def __hash__(self):
        return hash(("prod", self.factors))


@dataclass(frozen=True)
class Sum:
    terms: tuple  # of (sign, expr) with sign in {+1, -1}
    span: tuple[int, int] | None = None

    def __eq__(self, other):
        return isinstance(other, Sum) and self.terms == other.terms

    def __hash__(self):
        return hash(("sum", self.terms))


Expr = Union[ZetaIndex, PhiIndex, LiCall, WordLiteral, Product, Sum, RationalLiteral, ComplexLiteral]


# --- tokenizer -----------------------------------------------------------------------

_TOKEN_RE = re.compile(
    r"""
    (?P<ws>\s+)
  | (?P<num>\d+(?:\.\d+)?(?:/\d+)?)
  | (?P<name>zeta|phi|Li|L|m|i)
  | (?P<op>[-+*(),\[\]])
    """,
    re.VERBOSE,
)


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    pos: int


def tokenize(text: str) -> list[Token]:
    out = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if not m:
            raise ExprSyntaxError(f"unexpected character {text[pos]!r}", pos, text)
        kind = m.lastgroup
        if kind != "ws":
            out.append(Token(kind, m.group(), pos))
        pos = m.end()
    out.append(Token("end", "", len(text)))
    return out


def _real(text: str, pos: int) -> Fraction:
    if "." in text and "/" in text:
        raise ExprSyntaxError("decimal numerator in a fraction", pos)
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise ExprSyntaxError(f"bad number {text!r}", pos) from None


# --- parser ---------------------------------------------------------------------------


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.toks = tokenize(text)
        self.i = 0

    @property
    def tok(self) -> Token:
        return self.toks[self.i]

    def take(self, text: str | None = None, kind: str | None = None) -> Token:
        t = self.tok
        if (text is not None and t.text != text) or (kind is not None and t.kind != kind):
            want = repr(text) if text is not None else kind
            got = repr(t.text) if t.kind != "end" else "end of input"
            raise ExprSyntaxError(f"expected {want}, got {got}", t.pos, self.text)
        self.i += 1
        return t

    def at(self, text: str) -> bool:
        return self.tok.text == text and self.tok.kind != "end"

    def parse(self) -> Expr:
        e = self.expr()
        if self.tok.kind != "end":
            raise ExprSyntaxError(f"unexpected {self.tok.text!r}", self.tok.pos, self.text)
        return e

    def expr(self) -> Expr:
        start = self.tok.pos
        terms = []
        sign = 1
        if self.at("-"):
            self.take("-")
            sign = -1
        elif self.at("+"):
            raise ExprSyntaxError("unexpected '+'", self.tok.pos, self.text)
        terms.append((sign, self.term()))
        while self.at("+") or self.at("-"):
            sign = 1 if self.take().text == "+" else -1
            terms.append((sign, self.term()))
        if len(terms) == 1 and terms[0][0] == 1:
            return terms[0][1]
        return Sum(tuple(terms), (start, self.tok.pos))

    def term(self) -> Expr:
        start = self.tok.pos
        factors = [self.factor()]
        while self.at("*"):
            self.take("*")
            factors.append(self.factor())
        if len(factors) == 1:
            return factors[0]
        return Product(tuple(factors), (start, self.tok.pos))

    def factor(self) -> Expr:
        t = self.tok
        if t.kind == "name" and t.text == "zeta":
            self.take()
            self.take("(")
            entries = self.int_list(signed=True, closer=")")
            end = self.take(")").pos + 1
            if not entries:
                raise ExprSemanticError("zeta() needs at least one argument", (t.pos, end))
            if any(n == 0 for n in entries):
                raise ExprSemanticError("zeta entries must be non-zero", (t.pos, end))
            return ZetaIndex(tuple(entries), (t.pos, end))
        if t.kind == "name" and t.text == "phi":
            self.take()
            self.take("(")
            exps = self.int_list(signed=False, closer=")")
            end = self.take(")").pos + 1
            if not exps:
                raise ExprSemanticError("phi() needs at least one argument", (t.pos, end))
            if any(n < 1 for n in exps):
                raise ExprSemanticError("phi entries must be >= 1", (t.pos, end))
            return PhiIndex(tuple(exps), (t.pos, end))
        if t.kind == "name" and t.text == "Li":
            self.take()
            self.take("[")
            exps = self.int_list(signed=False, closer="]")
            self.take("]")
            self.take("(")
            args = [self.number()]
            while self.at(","):
                self.take(",")
                args.append(self.number())
            end = self.take(")").pos + 1
            if not exps or any(n < 1 for n in exps):
                raise ExprSemanticError("Li exponents must be >= 1", (t.pos, end))
            if len(args) != len(exps):
                raise ExprSemanticError("Li needs one argument per exponent", (t.pos, end))
            return LiCall(tuple(exps), tuple(args), (t.pos, end))
        if t.kind == "name" and t.text == "L":
            self.take()
            self.take("[")
            letters = self.letters()
            self.take("]")
            self.take("(")
            arg = self.number()
            end = self.take(")").pos + 1
            return WordLiteral(letters, arg, (t.pos, end))
        if t.kind == "num":
            self.take()
            return RationalLiteral(_real(t.text, t.pos), (t.pos, t.pos + len(t.text)))
        if self.at("("):
            self.take("(")
            e = self.expr()
            self.take(")")
            return e
        got = repr(t.text) if t.kind != "end" else "end of input"
        raise ExprSyntaxError(f"expected a factor, got {got}", t.pos, self.text)

    def int_list(self, signed: bool, closer: str) -> list[int]:
        out: list[int] = []
        if self.at(closer):
            return out
        while True:
            neg = False
            if signed and self.at("-"):
                self.take("-")
                neg = True
            t = self.take(kind="num")
            if not t.text.isdigit():
                raise ExprSyntaxError(f"expected an integer, got {t.text!r}", t.pos, self.text)
            out.append(-int(t.text) if neg else int(t.text))
            if not self.at(","):
                return out
            self.take(",")

    def letters(self) -> str:
        out = []
        while True:
            t = self.tok
            if t.kind == "name" and t.text == "m":
                out.append("m")
            elif t.kind == "num" and set(t.text) <= {"0", "1"}:
                out.extend(t.text)
            else:
                raise ExprSyntaxError("expected a letter 0, 1 or m", t.pos, self.text)
            self.take()
            if not self.at(","):
                return "".join(out)
            self.take(",")

    def signed_real(self) -> tuple[Fraction, int]:
        neg = False
        start = self.tok.pos
        if self.at("-"):
            self.take("-")
            neg = True
        elif self.at("+"):
            self.take("+")
        t = self.take(kind="num")
        v = _real(t.text, t.pos)
        return (-v if neg else v), start

    def number(self) -> Number:
        start = self.tok.pos
        re_part, _ = self.signed_real()
        if self.tok.kind == "name" and self.tok.text == "i":
            end = self.take().pos + 1
            return ComplexLiteral(Fraction(0), re_part, (start, end))
        if (self.at("+") or self.at("-")) and self.toks[self.i + 1].kind == "num" and self.toks[self.i + 2].text == "i":
            im, _ = self.signed_real()
            end = self.take("i").pos + 1
            return ComplexLiteral(re_part, im, (start, end))
        return RationalLiteral(re_part, (start, self.tok.pos))


def parse(text: str) -> Expr:
    return _Parser(text).parse()


# --- printing ---------------------------------------------------------------------------


def _frac(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def _number(n: Number) -> str:
    if isinstance(n, RationalLiteral):
        return _frac(n.value)
    if n.re == 0:
        return f"{_frac(n.im)}i"
    sign = "-" if n.im < 0 else "+"
    return f"{_frac(n.re)}{sign}{_frac(abs(n.im))}i"


def to_text(e: Expr) -> str:
    """Canonical text; ``parse(to_text(e)) == e``."""
    if isinstance(e, ZetaIndex):
        return "zeta(" + ",".join(str(n) for n in e.entries) + ")"
    if isinstance(e, PhiIndex):
        return "phi(" + ",".join(str(n) for n in e.exponents) + ")"
    if isinstance(e, LiCall):
        return "Li[" + ",".join(map(str, e.exponents)) + "](" + ",".join(_number(a) for a in e.args) + ")"
    if isinstance(e, WordLiteral):
        return "L[" + ",".join(e.letters) + "](" + _number(e.arg) + ")"
    if isinstance(e, RationalLiteral):
        if e.value < 0:
            return f"({_frac(e.value)})"
        return _frac(e.value)
    if isinstance(e, ComplexLiteral):
        raise ExprSemanticError("complex numbers only appear as function arguments")
    if isinstance(e, Product):
        return "*".join(f"({to_text(f)})" if isinstance(f, (Sum, Product)) else to_text(f) for f in e.factors)
    if isinstance(e, Sum):
        parts = []
        for k, (sign, t) in enumerate(e.terms):
            body = f"({to_text(t)})" if isinstance(t, Sum) else to_text(t)
            if k == 0:
                parts.append(("-" if sign < 0 else "") + body)
            else:
                parts.append((" - " if sign < 0 else " + ") + body)
        return "".join(parts)
    raise TypeError(f"not an expression node: {e!r}")


# --- evaluation -----------------------------------------------------------------------


def _to_mp_arg(n: Number, policy: PrecisionPolicy):
    with policy.workdps():
        if isinstance(n, RationalLiteral):
            return mpmath.mpf(n.value.numerator) / n.value.denominator
        re_ = mpmath.mpf(n.re.numerator) / n.re.denominator
        im_ = mpmath.mpf(n.im.numerator) / n.im.denominator
        return mpmath.mpc(re_, im_)


_LETTER_VALUES = {"0": 0, "1": 1, "m": -1}


def evaluate(e: Expr, policy: PrecisionPolicy = DEFAULT_POLICY) -> ArbReal | ArbComplex:
    if isinstance(e, ZetaIndex):
        p = e.index
        return eval_alternating(p, policy) if p.level == 2 else eval_mzv(p, policy)
    if isinstance(e, PhiIndex):
        return phi(e.exponents, policy)
    if isinstance(e, LiCall):
        return eval_Li(e.exponents, [_to_mp_arg(a, policy) for a in e.args], policy)
    if isinstance(e, WordLiteral):
        return eval_word([_LETTER_VALUES[c] for c in e.letters], _to_mp_arg(e.arg, policy), policy)
    if isinstance(e, RationalLiteral):
        return ArbReal.exact(e.value, policy.digits)
    if isinstance(e, ComplexLiteral):
        return ArbComplex.exact(_to_mp_arg(e, policy), policy.digits)
    if isinstance(e, Product):
        out = ArbReal.exact(1, policy.digits)
        for f in e.factors:
            out = out * evaluate(f, policy)
        return out
    if isinstance(e, Sum):
        out = ArbReal.exact(0, policy.digits)
        for sign, t in e.terms:
            v = evaluate(t, policy)
            out = out + v if sign > 0 else out - v
        return out
    raise TypeError(f"not an expression node: {e!r}")


def to_symbolic(e: Expr) -> Poly:
    """Polynomial in MZV symbols; Li and L calls have no symbolic form here."""
    if isinstance(e, ZetaIndex):
        return Poly.gen(e.index)
    if isinstance(e, PhiIndex):
        return Poly.gen(MZVIndex.phi(e.exponents)) * (-1) ** len(e.exponents)
    if isinstance(e, RationalLiteral):
        return Poly.const(e.value)
    if isinstance(e, (LiCall, WordLiteral, ComplexLiteral)):
        raise DomainError(f"{to_text(e) if not isinstance(e, ComplexLiteral) else 'complex literal'} has no symbolic reduction")
    if isinstance(e, Product):
        out = Poly.const(1)
        for f in e.factors:
            out = out * to_symbolic(f)
        return out
    if isinstance(e, Sum):
        out = Poly()
        for sign, t in e.terms:
            out = out + to_symbolic(t) * sign
        return out
    raise TypeError(f"not an expression node: {e!r}")


def word_from_text(text: str) -> Word:
    """Compact word syntax ``110`` / ``1m0``; ``()`` or the empty string is the empty word."""
    t = text.strip()
    if t in ("", "()"):
        return Word(())
    return Word.parse(t)
