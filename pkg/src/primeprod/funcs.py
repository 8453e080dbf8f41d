"""A small expression language for the functions f in prod_p f(1/p).

Grammar (whitespace-insensitive, left-associative, '^' binds tighter than '*')::

    expr     := term (('+' | '-') term)*
    term     := factor (('*' | '/') factor)*
    factor   := base ('^' exponent)?
    exponent := rational | '(' rational ')'
    rational := ['-'] integer ('/' integer)?
    base     := 'z' | 'pi' | integer | '(' rational ')' | '(' expr ')'
              | ('ln' | 'exp' | 'sqrt') '(' expr ')' | '-' base

There is no implicit multiplication. A unary minus belongs to the base, so
``-z^2`` means ``(-z)^2``; an exponent is read greedily, so ``z^1/2`` is the
square root of z. A parenthesised rational literal such as ``(1/2)`` becomes a
single constant, which is what the printer emits for non-integer constants.

Taylor expansion needs every ln/sqrt/non-integer power argument to have
constant term 1 and every exp argument constant term 0, e.g. write
e^(z/(z-1)) as ``exp(-z/(1-z))``. ``pi`` is accepted for point evaluation
(prefactors such as 1/sqrt(pi)) but has no exact Taylor series.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Union

from . import qseries
from .errors import DomainError, ParseError, PrimeProdError, UnknownConstant, ZeroDivisor
from .mpreal import context
from .qseries import RationalSeries


@dataclass(frozen=True)
class Z:
    pass


@dataclass(frozen=True)
class Pi:
    pass


@dataclass(frozen=True)
class Const:
    value: Fraction

    def __post_init__(self):
        object.__setattr__(self, "value", Fraction(self.value))


@dataclass(frozen=True)
class Add:
    left: "Expr"
    right: "Expr"


@dataclass(frozen=True)
class Sub:
    left: "Expr"
    right: "Expr"


@dataclass(frozen=True)
class Mul:
    left: "Expr"
    right: "Expr"


@dataclass(frozen=True)
class Div:
    left: "Expr"
    right: "Expr"


@dataclass(frozen=True)
class Neg:
    arg: "Expr"


@dataclass(frozen=True)
class Pow:
    arg: "Expr"
    exponent: Fraction

    def __post_init__(self):
        object.__setattr__(self, "exponent", Fraction(self.exponent))


@dataclass(frozen=True)
class Ln:
    arg: "Expr"


@dataclass(frozen=True)
class Exp:
    arg: "Expr"


@dataclass(frozen=True)
class Sqrt:
    arg: "Expr"


Expr = Union[Z, Pi, Const, Add, Sub, Mul, Div, Neg, Pow, Ln, Exp, Sqrt]
FunctionExpr = Expr

_BINARY = {"+": Add, "-": Sub, "*": Mul, "/": Div}
_FUNCS = {"ln": Ln, "exp": Exp, "sqrt": Sqrt}
_TOKEN = re.compile(r"(\d+)|([A-Za-z_]+)|([-+*/^()])")


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    pos = 0
    while True:
        while pos < len(text) and text[pos].isspace():
            pos += 1
        if pos >= len(text):
            break
        m = _TOKEN.match(text, pos)
        if m is None:
            raise ParseError(f"unexpected character {text[pos]!r}", pos)
        kind = ("int", "name", "op")[m.lastindex - 1]
        tokens.append((kind, m.group(0), pos))
        pos = m.end()
    tokens.append(("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self, ahead: int = 0):
        return self.tokens[min(self.i + ahead, len(self.tokens) - 1)]

    def take(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect(self, value: str):
        kind, v, pos = self.peek()
        if v != value or kind == "end":
            raise ParseError(f"expected {value!r}, found {v or 'end of input'!r}", pos)
        return self.take()

    def parse(self) -> Expr:
        e = self.expr()
        kind, v, pos = self.peek()
        if kind != "end":
            raise ParseError(f"unexpected {v!r}", pos)
        return e

    def expr(self) -> Expr:
        left = self.term()
        while self.peek()[1] in ("+", "-") and self.peek()[0] == "op":
            op = self.take()[1]
            left = _BINARY[op](left, self.term())
        return left

    def term(self) -> Expr:
        left = self.factor()
        while self.peek()[1] in ("*", "/") and self.peek()[0] == "op":
            op = self.take()[1]
            left = _BINARY[op](left, self.factor())
        return left

    def factor(self) -> Expr:
        b = self.base()
        if self.peek()[1] == "^":
            self.take()
            if self.peek()[1] == "(":
                self.take()
                r = self.rational()
                self.expect(")")
            else:
                r = self.rational()
            return Pow(b, r)
        return b

    def rational(self) -> Fraction:
        sign = 1
        if self.peek()[1] == "-":
            self.take()
            sign = -1
        kind, v, pos = self.peek()
        if kind != "int":
            raise ParseError(f"expected an integer, found {v or 'end of input'!r}", pos)
        self.take()
        num = int(v)
        den = 1
        if self.peek()[1] == "/":
            self.take()
            kind, v, pos = self.peek()
            if kind != "int":
                raise ParseError(f"expected an integer denominator, found {v or 'end of input'!r}", pos)
            self.take()
            den = int(v)
            if den == 0:
                raise ParseError("zero denominator", pos)
        return Fraction(sign * num, den)

    def _literal_ahead(self) -> bool:
        # '(' ['-'] int ['/' int] ')'
        j = 1
        if self.peek(j)[1] == "-":
            j += 1
        if self.peek(j)[0] != "int":
            return False
        j += 1
        if self.peek(j)[1] == "/":
            if self.peek(j + 1)[0] != "int":
                return False
            j += 2
        return self.peek(j)[1] == ")"

    def base(self) -> Expr:
        kind, v, pos = self.peek()
        if kind == "int":
            self.take()
            return Const(int(v))
        if kind == "name":
            self.take()
            if v == "z":
                return Z()
            if v == "pi":
                return Pi()
            if v in _FUNCS:
                self.expect("(")
                arg = self.expr()
                self.expect(")")
                return _FUNCS[v](arg)
            raise ParseError(f"unknown name {v!r}", pos)
        if v == "(" and kind == "op":
            if self._literal_ahead():
                self.take()
                r = self.rational()
                self.expect(")")
                return Const(r)
            self.take()
            e = self.expr()
            self.expect(")")
            return e
        if v == "-" and kind == "op":
            self.take()
            return Neg(self.base())
        raise ParseError(f"unexpected {v or 'end of input'!r}", pos)


def parse(text: str) -> Expr:
    return _Parser(text).parse()


def _fmt_rational(r: Fraction) -> str:
    return str(r.numerator) if r.denominator == 1 else f"{r.numerator}/{r.denominator}"


def to_text(e: Expr) -> str:
    """Canonical form with explicit parentheses; ``parse(to_text(e)) == e``."""
    if isinstance(e, Z):
        return "z"
    if isinstance(e, Pi):
        return "pi"
    if isinstance(e, Const):
        v = e.value
        if v.denominator == 1 and v >= 0:
            return str(v.numerator)
        return f"({_fmt_rational(v)})"
    if isinstance(e, (Add, Sub, Mul, Div)):
        op = {Add: "+", Sub: "-", Mul: "*", Div: "/"}[type(e)]
        right = to_text(e.right)
        if isinstance(e, Div) and right.isdigit():
            right = f"({right})"  # "(1 / 2)" would read back as a rational literal
        return f"({to_text(e.left)} {op} {right})"
    if isinstance(e, Neg):
        inner = to_text(e.arg)
        return f"-({inner})" if isinstance(e.arg, Pow) else f"-{inner}"
    if isinstance(e, Pow):
        inner = to_text(e.arg)
        if isinstance(e.arg, (Pow, Neg)):
            inner = f"({inner})"
        return f"{inner}^({_fmt_rational(e.exponent)})"
    if isinstance(e, (Ln, Exp, Sqrt)):
        name = {Ln: "ln", Exp: "exp", Sqrt: "sqrt"}[type(e)]
        return f"{name}({to_text(e.arg)})"
    raise TypeError(f"not an expression node: {e!r}")


def size(e: Expr) -> int:
    if isinstance(e, (Z, Pi, Const)):
        return 1
    if isinstance(e, (Add, Sub, Mul, Div)):
        return 1 + size(e.left) + size(e.right)
    return 1 + size(e.arg)


def _series(e: Expr, order: int) -> RationalSeries:
    try:
        if isinstance(e, Z):
            return RationalSeries.z(order)
        if isinstance(e, Const):
            return RationalSeries.constant(e.value, order)
        if isinstance(e, Pi):
            raise DomainError("pi has no exact rational series")
        if isinstance(e, Add):
            return qseries.add(_series(e.left, order), _series(e.right, order))
        if isinstance(e, Sub):
            return qseries.sub(_series(e.left, order), _series(e.right, order))
        if isinstance(e, Mul):
            return qseries.mul(_series(e.left, order), _series(e.right, order))
        if isinstance(e, Div):
            return qseries.div(_series(e.left, order), _series(e.right, order))
        if isinstance(e, Neg):
            return qseries.scale(_series(e.arg, order), -1)
        if isinstance(e, Pow):
            return qseries.pow(_series(e.arg, order), e.exponent)
        if isinstance(e, Sqrt):
            return qseries.pow(_series(e.arg, order), Fraction(1, 2))
        if isinstance(e, Ln):
            return qseries.log(_series(e.arg, order))
        if isinstance(e, Exp):
            return qseries.exp(_series(e.arg, order))
    except _NodeError:
        raise
    except DomainError as exc:
        raise _NodeError(f"{exc} in {to_text(e)}") from exc
    raise TypeError(f"not an expression node: {e!r}")


class _NodeError(DomainError):
    pass


def taylor(e: Expr, N: int) -> RationalSeries:
    """Exact Taylor coefficients b_0..b_N of the expression at z = 0.

    Divisions by powers of z cost known coefficients, so the leaves are
    expanded to a higher order until the result reaches order N.
    """
    work = N
    while True:
        try:
            s = _series(e, work)
        except _NodeError as exc:
            raise DomainError(str(exc)) from None
        if s.order >= N:
            return s.truncate(N)
        work += N - s.order


def eval_point(e: Expr, x, prec: int):
    """Value at the real point x (Fraction, int or a context value) at ``prec`` bits.

    ``x=None`` evaluates a closed expression (no z), e.g. a prefactor.
    """
    ctx = context(prec)
    xv = None if x is None else ctx.real(x)

    def ev(node):
        if isinstance(node, Z):
            if xv is None:
                raise DomainError("expression depends on z but no point was given")
            return xv
        if isinstance(node, Pi):
            return ctx.pi()
        if isinstance(node, Const):
            return ctx.real(node.value)
        if isinstance(node, Add):
            return ev(node.left) + ev(node.right)
        if isinstance(node, Sub):
            return ev(node.left) - ev(node.right)
        if isinstance(node, Mul):
            return ev(node.left) * ev(node.right)
        if isinstance(node, Div):
            d = ev(node.right)
            if not d:
                raise ZeroDivisor(f"division by zero in {to_text(node)}")
            return ev(node.left) / d
        if isinstance(node, Neg):
            return -ev(node.arg)
        try:
            if isinstance(node, Pow):
                return ctx.pow(ev(node.arg), node.exponent)
            if isinstance(node, Sqrt):
                return ctx.sqrt(ev(node.arg))
            if isinstance(node, Ln):
                return ctx.ln(ev(node.arg))
            if isinstance(node, Exp):
                return ctx.exp(ev(node.arg))
        except (_NodeError, ZeroDivisor):
            raise
        except ZeroDivisionError as exc:
            raise ZeroDivisor(f"{exc} in {to_text(node)}") from exc
        except DomainError as exc:
            raise _NodeError(f"{exc} in {to_text(node)}") from exc
        raise TypeError(f"not an expression node: {node!r}")

    try:
        return ev(e)
    except _NodeError as exc:
        raise DomainError(str(exc)) from None


@dataclass(frozen=True)
class ConstantSpec:
    """A constant prefactor * prod_p f(1/p) with the analytic data the error bound needs.

    B must bound |f'/f| on |z| = R; it is supplied, not derived.
    """

    name: str
    f: Expr
    prefactor: Expr
    R: Fraction
    B: Fraction
    m: int = 7
    description: str = field(default="", compare=False)

    def __post_init__(self):
        object.__setattr__(self, "R", Fraction(self.R))
        object.__setattr__(self, "B", Fraction(self.B))

    def validate(self, order: int = 2) -> RationalSeries:
        from .errors import ValidationError

        try:
            b = taylor(self.f, max(order, 1))
        except PrimeProdError as exc:
            raise ValidationError(f"{self.name}: cannot expand f: {exc}") from exc
        if b[0] != 1 or b[1] != 0:
            raise ValidationError(f"{self.name}: need f(0) = 1 and f'(0) = 0, got b_0={b[0]}, b_1={b[1]}")
        return b


# |f'/f| <= 2/|z| + 3/(2(1-|z|)) on 0 < |z| < 1 for both functions below,
# from |(1-z) ln(1-z)| >= |z| - |z|^2; at |z| = 9/10 that is 2/0.9 + 15 < 18.
_BUILTINS = {
    "ramanujan-a1": ConstantSpec(
        name="ramanujan-a1",
        f=parse("(-ln(1-z)/z)*sqrt(1-z)"),
        prefactor=parse("1/sqrt(pi)"),
        R=Fraction(9, 10),
        B=Fraction(18),
        m=7,
        description="Ramanujan's A1 = pi^(-1/2) prod_p sqrt(p^2 - p) ln(p/(p-1))",
    ),
    "avg-divisor-c": ConstantSpec(
        name="avg-divisor-c",
        f=parse("ln(1+z)/(z*sqrt(1-z))"),
        prefactor=parse("1/sqrt(pi)"),
        R=Fraction(9, 10),
        B=Fraction(18),
        m=7,
        description="average of the average divisor, c = pi^(-1/2) prod_p p^(3/2) (p-1)^(-1/2) ln(1 + 1/p)",
    ),
}


def builtin(name: str) -> ConstantSpec:
    try:
        return _BUILTINS[name]
    except KeyError:
        raise UnknownConstant(f"unknown constant {name!r}; known: {', '.join(sorted(_BUILTINS))}") from None


def builtin_names() -> list[str]:
    return sorted(_BUILTINS)
