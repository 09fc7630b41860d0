"""Bivariate scalar expressions: AST, parser, printer and evaluators."""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from .errors import (
    DomainError,
    ExprSyntaxError,
    NonIntegerExponent,
    NotPolynomial,
    UnknownFunction,
)
from .poly import BiPoly, UniPoly, is_exact

Number = Union[int, Fraction, float]


class Expr:
    """Base class of all expression nodes.  Nodes are immutable and hashable."""

    __slots__ = ()

    def __str__(self) -> str:
        return to_text(self)

    # Operator sugar so catalog entries read like the formulas they encode.
    def __add__(self, other):
        return Add(self, _wrap(other))

    def __radd__(self, other):
        return Add(_wrap(other), self)

    def __sub__(self, other):
        return Sub(self, _wrap(other))

    def __rsub__(self, other):
        return Sub(_wrap(other), self)

    def __mul__(self, other):
        return Mul(self, _wrap(other))

    def __rmul__(self, other):
        return Mul(_wrap(other), self)

    def __truediv__(self, other):
        return Div(self, _wrap(other))

    def __neg__(self):
        return Neg(self)

    def __pow__(self, k: int):
        return IntPow(self, k)


def _wrap(v) -> Expr:
    if isinstance(v, Expr):
        return v
    if isinstance(v, float):
        return Const(v)
    return Const(Fraction(v))


@dataclass(frozen=True, eq=True, repr=True, slots=True)
class Const(Expr):
    value: Number


@dataclass(frozen=True, slots=True)
class Var(Expr):
    name: str  # "x" or "y"

    def __post_init__(self):
        if self.name not in ("x", "y"):
            raise ValueError(f"unknown variable {self.name!r}")


@dataclass(frozen=True, slots=True)
class Neg(Expr):
    arg: Expr


@dataclass(frozen=True, slots=True)
class Add(Expr):
    left: Expr
    right: Expr


@dataclass(frozen=True, slots=True)
class Sub(Expr):
    left: Expr
    right: Expr


@dataclass(frozen=True, slots=True)
class Mul(Expr):
    left: Expr
    right: Expr


@dataclass(frozen=True, slots=True)
class Div(Expr):
    left: Expr
    right: Expr


@dataclass(frozen=True, slots=True)
class IntPow(Expr):
    base: Expr
    exp: int

    def __post_init__(self):
        if not isinstance(self.exp, int) or isinstance(self.exp, bool) or self.exp < 0:
            raise ValueError("IntPow exponent must be a non-negative integer")


@dataclass(frozen=True, slots=True)
class Abs(Expr):
    arg: Expr


@dataclass(frozen=True, slots=True)
class Min(Expr):
    left: Expr
    right: Expr


@dataclass(frozen=True, slots=True)
class Max(Expr):
    left: Expr
    right: Expr


@dataclass(frozen=True, slots=True)
class Sin(Expr):
    arg: Expr


@dataclass(frozen=True, slots=True)
class Cos(Expr):
    arg: Expr


@dataclass(frozen=True, slots=True)
class Exp(Expr):
    arg: Expr


X = Var("x")
Y = Var("y")

_UNARY_FUNCS = {"abs": Abs, "sin": Sin, "cos": Cos, "exp": Exp}
_BINARY_FUNCS = {"min": Min, "max": Max}
FUNCTIONS = frozenset(_UNARY_FUNCS) | frozenset(_BINARY_FUNCS)


def is_polynomial(e: Expr) -> bool:
    match e:
        case Const(value=v):
            return is_exact(v)
        case Var():
            return True
        case Neg(arg=a):
            return is_polynomial(a)
        case Add(l, r) | Sub(l, r) | Mul(l, r):
            return is_polynomial(l) and is_polynomial(r)
        case IntPow(base=b):
            return is_polynomial(b)
    return False


# --------------------------------------------------------------------------
# Parsing

_TOKEN_RE = re.compile(
    r"\s*(?:(?P<number>\d+(?:\.\d*)?(?:[eE][+-]?\d+)?|\.\d+(?:[eE][+-]?\d+)?)"
    r"|(?P<ident>[A-Za-z_][A-Za-z_0-9]*)"
    r"|(?P<op>[-+*/^(),]))"
)

_ATOM_START = frozenset({"number", "x", "y", "function", "'('"})
_UNARY_START = _ATOM_START | {"'-'"}


@dataclass(frozen=True, slots=True)
class _Tok:
    kind: str  # number | ident | op | end
    text: str
    offset: int  # byte offset


def _tokenize(text: str) -> list[_Tok]:
    toks = []
    pos = 0
    # byte offsets: track a running count to stay O(n)
    byte_pos = 0
    while True:
        m = _TOKEN_RE.match(text, pos)
        if m is None or m.end() == pos:
            rest = text[pos:]
            stripped = rest.lstrip()
            byte_pos += len(rest[: len(rest) - len(stripped)].encode())
            if not stripped:
                toks.append(_Tok("end", "", byte_pos))
                return toks
            raise ExprSyntaxError(f"unexpected character {stripped[0]!r}", byte_pos)
        kind = m.lastgroup
        start = m.start(kind)
        byte_pos += len(text[pos:start].encode())
        toks.append(_Tok(kind, m.group(kind), byte_pos))
        byte_pos += len(m.group(kind).encode())
        pos = m.end()


class _Parser:
    def __init__(self, text: str):
        self.toks = _tokenize(text)
        self.i = 0

    @property
    def tok(self) -> _Tok:
        return self.toks[self.i]

    def advance(self) -> _Tok:
        t = self.toks[self.i]
        self.i += 1
        return t

    def at_op(self, *ops: str) -> bool:
        return self.tok.kind == "op" and self.tok.text in ops

    def fail(self, expected: frozenset, what: str | None = None):
        t = self.tok
        found = "end of input" if t.kind == "end" else repr(t.text)
        raise ExprSyntaxError(what or f"unexpected {found}", t.offset, expected)

    def expect_op(self, op: str):
        if not self.at_op(op):
            self.fail(frozenset({f"'{op}'"}))
        self.advance()

    def parse(self) -> Expr:
        e = self.expr()
        if self.tok.kind != "end":
            self.fail(frozenset({"'+'", "'-'", "'*'", "'/'", "'^'", "end of input"}))
        return e

    def expr(self) -> Expr:
        left = self.term()
        while self.at_op("+", "-"):
            op = self.advance().text
            right = self.term()
            left = Add(left, right) if op == "+" else Sub(left, right)
        return left

    def term(self) -> Expr:
        left, literal = self.unary()
        while self.at_op("*", "/"):
            op = self.advance().text
            right, rlit = self.unary()
            if op == "*":
                left, literal = Mul(left, right), False
            elif literal and rlit and right.value != 0:
                # a/b between bare literals is a fraction literal
                left = Const(left.value / right.value)
            else:
                left, literal = Div(left, right), False
        return left

    def unary(self) -> tuple[Expr, bool]:
        if self.at_op("-"):
            self.advance()
            arg, _ = self.unary()
            return Neg(arg), False
        return self.power()

    def power(self) -> tuple[Expr, bool]:
        base, literal = self.atom()
        if not self.at_op("^"):
            return base, literal
        self.advance()
        t = self.tok
        if t.kind != "number" or not t.text.isdigit():
            raise NonIntegerExponent(
                "exponent must be a non-negative integer literal", t.offset, frozenset({"integer"})
            )
        self.advance()
        if self.at_op("^"):
            raise NonIntegerExponent(
                "chained exponent is not an integer literal; parenthesize the base",
                self.tok.offset,
            )
        return IntPow(base, int(t.text)), False

    def atom(self) -> tuple[Expr, bool]:
        t = self.tok
        if t.kind == "number":
            self.advance()
            return Const(Fraction(t.text)), True
        if t.kind == "ident":
            name = t.text
            if name in ("x", "y"):
                self.advance()
                return Var(name), False
            self.advance()
            if name not in FUNCTIONS:
                if self.at_op("("):
                    raise UnknownFunction(f"unknown function {name!r}", t.offset, FUNCTIONS)
                raise ExprSyntaxError(f"unknown identifier {name!r}", t.offset, _ATOM_START)
            self.expect_op("(")
            args = [self.expr()]
            while self.at_op(","):
                self.advance()
                args.append(self.expr())
            close = self.tok
            self.expect_op(")")
            if name in _UNARY_FUNCS:
                if len(args) != 1:
                    raise ExprSyntaxError(f"{name} takes exactly one argument", close.offset)
                return _UNARY_FUNCS[name](args[0]), False
            if len(args) < 2:
                raise ExprSyntaxError(f"{name} takes at least two arguments", close.offset)
            node = args[0]
            for a in args[1:]:
                node = _BINARY_FUNCS[name](node, a)
            return node, False
        if self.at_op("("):
            self.advance()
            e = self.expr()
            self.expect_op(")")
            return e, False
        self.fail(_UNARY_START)


def parse(text: str) -> Expr:
    """Parse expression text into an :class:`Expr` tree.

    Grammar (whitespace insignificant)::

        expr  := term (('+'|'-') term)*
        term  := unary (('*'|'/') unary)*
        unary := '-' unary | power
        power := atom ('^' integer)?
        atom  := number | 'x' | 'y' | ident '(' expr (',' expr)* ')' | '(' expr ')'

    A division between two bare number literals (``3/4``) is folded into a
    single exact rational constant.
    """
    if isinstance(text, bytes):
        text = text.decode("utf-8")
    return _Parser(text).parse()


# --------------------------------------------------------------------------
# Printing

_PREC = {Add: 1, Sub: 1, Mul: 2, Div: 2, Neg: 3, IntPow: 4}


def _prec(e: Expr) -> int:
    return _PREC.get(type(e), 5)


def _is_bare_literal(e: Expr) -> bool:
    return (
        isinstance(e, Const)
        and is_exact(e.value)
        and e.value >= 0
        and Fraction(e.value).denominator == 1
    )


def _const_text(v) -> str:
    if is_exact(v):
        v = Fraction(v)
        if v.denominator == 1:
            return str(v.numerator) if v >= 0 else f"({v.numerator})"
        return f"({v.numerator}/{v.denominator})"
    return f"({v!r})"


def to_text(e: Expr) -> str:
    """Render with minimal parentheses; ``parse(to_text(e))`` reproduces ``e``."""

    def wrap(child: Expr, min_prec: int) -> str:
        s = to_text(child)
        return s if _prec(child) >= min_prec else f"({s})"

    match e:
        case Const(value=v):
            return _const_text(v)
        case Var(name=n):
            return n
        case Neg(arg=a):
            return "-" + wrap(a, 3)
        case Add(l, r):
            return f"{wrap(l, 1)} + {wrap(r, 2)}"
        case Sub(l, r):
            return f"{wrap(l, 1)} - {wrap(r, 2)}"
        case Mul(l, r):
            return f"{wrap(l, 2)}*{wrap(r, 3)}"
        case Div(l, r):
            left = wrap(l, 2)
            if _is_bare_literal(l) and _is_bare_literal(r):
                left = f"({left})"  # keep the parser from folding a/b
            return f"{left}/{wrap(r, 3)}"
        case IntPow(base=b, exp=k):
            return f"{wrap(b, 5)}^{k}"
        case Abs(arg=a):
            return f"abs({to_text(a)})"
        case Sin(arg=a):
            return f"sin({to_text(a)})"
        case Cos(arg=a):
            return f"cos({to_text(a)})"
        case Exp(arg=a):
            return f"exp({to_text(a)})"
        case Min(l, r):
            return f"min({to_text(l)}, {to_text(r)})"
        case Max(l, r):
            return f"max({to_text(l)}, {to_text(r)})"
    raise TypeError(f"not an expression node: {e!r}")


# --------------------------------------------------------------------------
# Evaluation


def _fold(e: Expr, x, y, const, ops):
    """Shared recursive evaluator; ``ops`` maps node kinds that Python
    operators cannot express (div, abs, min, max, sin, cos, exp)."""

    def go(n: Expr):
        match n:
            case Const(value=v):
                return const(v)
            case Var(name=name):
                return x if name == "x" else y
            case Neg(arg=a):
                return -go(a)
            case Add(l, r):
                return go(l) + go(r)
            case Sub(l, r):
                return go(l) - go(r)
            case Mul(l, r):
                return go(l) * go(r)
            case Div(l, r):
                return ops["div"](go(l), go(r))
            case IntPow(base=b, exp=k):
                return ops["pow"](go(b), k)
            case Abs(arg=a):
                return ops["abs"](go(a))
            case Min(l, r):
                return ops["min"](go(l), go(r))
            case Max(l, r):
                return ops["max"](go(l), go(r))
            case Sin(arg=a):
                return ops["sin"](go(a))
            case Cos(arg=a):
                return ops["cos"](go(a))
            case Exp(arg=a):
                return ops["exp"](go(a))
        raise TypeError(f"not an expression node: {n!r}")

    return go(e)


def _fdiv(a: float, b: float) -> float:
    if b == 0:
        raise DomainError("division by zero")
    return a / b


def _fexp(a: float) -> float:
    try:
        return math.exp(a)
    except OverflowError as err:
        raise DomainError("exp overflow") from err


def _fpow(a: float, k: int) -> float:
    r = 1.0
    for _ in range(k):
        r *= a
    return r


_FLOAT_OPS = {
    "div": _fdiv,
    "pow": _fpow,
    "abs": abs,
    "min": min,
    "max": max,
    "sin": math.sin,
    "cos": math.cos,
    "exp": _fexp,
}


def eval_value(f: Expr, p) -> float:
    """f(p) in floating point."""
    x, y = float(p[0]), float(p[1])
    return _fold(f, x, y, float, _FLOAT_OPS)


def _not_poly(*_):
    raise NotPolynomial("expression contains a non-polynomial node")


_POLY_OPS = {
    "div": _not_poly,
    "pow": lambda a, k: a**k,
    "abs": _not_poly,
    "min": _not_poly,
    "max": _not_poly,
    "sin": _not_poly,
    "cos": _not_poly,
    "exp": _not_poly,
}


def _poly_const(v):
    if not is_exact(v):
        raise NotPolynomial("polynomial constants must be exact rationals")
    return v


def compose_path(f: Expr, x_of_t: UniPoly, y_of_t: UniPoly) -> UniPoly:
    """phi(t) = f(x(t), y(t)) as a univariate polynomial.

    Exact whenever the component polynomials have rational coefficients.
    """
    if not is_polynomial(f):
        raise NotPolynomial("compose_path requires a polynomial expression")
    return _fold(f, x_of_t, y_of_t, lambda v: UniPoly.const(_poly_const(v)), _POLY_OPS)


def expand(f: Expr, center=(0, 0)) -> BiPoly:
    """f(center + h) as a polynomial in the offsets h = (x, y)."""
    if not is_polynomial(f):
        raise NotPolynomial("expand requires a polynomial expression")
    cx, cy = center
    return _fold(
        f,
        BiPoly.var("x", cx),
        BiPoly.var("y", cy),
        lambda v: BiPoly.const(_poly_const(v)),
        _POLY_OPS,
    )


def polynomial(terms: dict) -> Expr:
    """Build an expression from ``{(i, j): coeff}``, deterministic term order."""
    out: Expr | None = None
    for (i, j), c in sorted(terms.items()):
        if c == 0:
            continue
        mono: Expr | None = None
        for var, k in ((X, i), (Y, j)):
            if k == 0:
                continue
            piece = var if k == 1 else IntPow(var, k)
            mono = piece if mono is None else Mul(mono, piece)
        mag = abs(c)
        if mono is None:
            term = _wrap(mag)
        elif mag == 1:
            term = mono
        else:
            term = Mul(_wrap(mag), mono)
        if out is None:
            out = term if c > 0 else Neg(term)
        else:
            out = Add(out, term) if c > 0 else Sub(out, term)
    return out if out is not None else Const(Fraction(0))
