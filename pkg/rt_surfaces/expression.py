"""Holomorphic expressions in z: parsing, printing and jet evaluation.

Grammar (whitespace is insignificant)::

    expr     = term { ("+" | "-") term } ;
    term     = unary { ("*" | "/") unary } ;
    unary    = ("-" | "+") unary | power ;
    power    = atom [ "^" exponent ] ;
    exponent = [ "-" | "+" ] integer [ "^" exponent ] ;
    atom     = number [ "i" ] | "i" | "z" | func "(" expr ")" | "(" expr ")" ;
    func     = "exp" | "log" | "sin" | "cos" ;

"^" binds tighter than unary minus and is right-associative; its exponent
is always an integer literal, so every expression stays single-valued.
Plain exponents may be any size; an exponent tower is refused once its value
could need more than MAX_TOWER_BITS bits. Overflow is reported at evaluation.
"""
from __future__ import annotations

import cmath
from dataclasses import dataclass
import math
import re

from .const import _LOGGER, IMAGINARY_UNIT, MAX_TOWER_BITS, VARIABLE_NAME
from .exceptions import (
    EvalError,
    EvalErrorKind,
    ExpressionSyntaxError,
    UnsupportedFunction,
)
from .jet import Jet2

_TOKEN_RE = re.compile(
    r"(?P<space>\s+)"
    r"|(?P<number>(?:\d+\.\d*|\.\d+|\d+)(?:[eE][+-]?\d+)?)"
    r"|(?P<ident>[A-Za-z_][A-Za-z_0-9]*)"
    r"|(?P<op>[-+*/^()])"
)
_INTEGER_RE = re.compile(r"\d+")


class ExprNode:
    """Base class of the immutable expression tree."""

    def jet(self, z: complex) -> Jet2:
        """Return the second-order jet of this node at z."""
        raise NotImplementedError

    def __str__(self) -> str:
        """Return the canonical text of the tree."""
        return print_expr(self)


@dataclass(frozen=True)
class Const(ExprNode):
    """Complex constant."""

    value: complex

    def __post_init__(self) -> None:
        """Store the value as a complex number."""
        object.__setattr__(self, "value", complex(self.value))
        if not cmath.isfinite(self.value):
            raise ValueError(f"Constant {self.value!r} is not finite")

    def jet(self, z: complex) -> Jet2:
        """Return the constant with vanishing derivatives."""
        return Jet2.constant(self.value)


@dataclass(frozen=True)
class Var(ExprNode):
    """The variable z."""

    def jet(self, z: complex) -> Jet2:
        """Return the identity jet at z."""
        return Jet2.variable(z)


@dataclass(frozen=True)
class Add(ExprNode):
    """Sum of two expressions."""

    left: ExprNode
    right: ExprNode

    def jet(self, z: complex) -> Jet2:
        """Add the operand jets."""
        return self.left.jet(z) + self.right.jet(z)


@dataclass(frozen=True)
class Sub(ExprNode):
    """Difference of two expressions."""

    left: ExprNode
    right: ExprNode

    def jet(self, z: complex) -> Jet2:
        """Subtract the operand jets."""
        return self.left.jet(z) - self.right.jet(z)


@dataclass(frozen=True)
class Mul(ExprNode):
    """Product of two expressions."""

    left: ExprNode
    right: ExprNode

    def jet(self, z: complex) -> Jet2:
        """Multiply the operand jets."""
        return self.left.jet(z) * self.right.jet(z)


@dataclass(frozen=True)
class Div(ExprNode):
    """Quotient of two expressions."""

    left: ExprNode
    right: ExprNode

    def jet(self, z: complex) -> Jet2:
        """Divide the operand jets, refusing a zero denominator."""
        denominator = self.right.jet(z)
        if denominator.v == 0:
            raise EvalError(EvalErrorKind.DIVISION_BY_ZERO, self)
        return self.left.jet(z) / denominator


@dataclass(frozen=True)
class Neg(ExprNode):
    """Negated expression."""

    operand: ExprNode

    def jet(self, z: complex) -> Jet2:
        """Negate the operand jet."""
        return -self.operand.jet(z)


@dataclass(frozen=True)
class IntPow(ExprNode):
    """Expression raised to an integer power."""

    base: ExprNode
    k: int

    def __post_init__(self) -> None:
        """Reject non-integer exponents."""
        if not isinstance(self.k, int) or isinstance(self.k, bool):
            raise TypeError(f"Exponent {self.k!r} is not an integer")

    def jet(self, z: complex) -> Jet2:
        """Raise the base jet to the integer power k."""
        base = self.base.jet(z)
        if self.k < 0 and base.v == 0:
            raise EvalError(EvalErrorKind.DIVISION_BY_ZERO, self)
        try:
            return base.power(self.k)
        except OverflowError as err:
            raise EvalError(EvalErrorKind.OVERFLOW, self) from err


@dataclass(frozen=True)
class Exp(ExprNode):
    """Complex exponential."""

    arg: ExprNode

    def jet(self, z: complex) -> Jet2:
        """Compose the argument jet with exp."""
        inner = self.arg.jet(z)
        try:
            value = cmath.exp(inner.v)
        except OverflowError as err:
            raise EvalError(EvalErrorKind.OVERFLOW, self) from err
        return inner.compose(value, value, value)


@dataclass(frozen=True)
class Log(ExprNode):
    """Principal branch of the complex logarithm."""

    arg: ExprNode

    def jet(self, z: complex) -> Jet2:
        """Compose the argument jet with the principal log."""
        inner = self.arg.jet(z)
        if inner.v == 0:
            raise EvalError(EvalErrorKind.LOG_OF_ZERO, self)
        reciprocal = 1 / inner.v
        return inner.compose(cmath.log(inner.v), reciprocal, -reciprocal * reciprocal)


@dataclass(frozen=True)
class Sin(ExprNode):
    """Complex sine."""

    arg: ExprNode

    def jet(self, z: complex) -> Jet2:
        """Compose the argument jet with sin."""
        inner = self.arg.jet(z)
        try:
            sin, cos = cmath.sin(inner.v), cmath.cos(inner.v)
        except OverflowError as err:
            raise EvalError(EvalErrorKind.OVERFLOW, self) from err
        return inner.compose(sin, cos, -sin)


@dataclass(frozen=True)
class Cos(ExprNode):
    """Complex cosine."""

    arg: ExprNode

    def jet(self, z: complex) -> Jet2:
        """Compose the argument jet with cos."""
        inner = self.arg.jet(z)
        try:
            sin, cos = cmath.sin(inner.v), cmath.cos(inner.v)
        except OverflowError as err:
            raise EvalError(EvalErrorKind.OVERFLOW, self) from err
        return inner.compose(cos, -sin, -cos)


FUNCTIONS: dict[str, type[ExprNode]] = {
    "exp": Exp,
    "log": Log,
    "sin": Sin,
    "cos": Cos,
}
BINARY_SYMBOLS: dict[type[ExprNode], str] = {
    Add: "+",
    Sub: "-",
    Mul: "*",
    Div: "/",
}


@dataclass(frozen=True)
class _Token:
    kind: str
    text: str
    offset: int


def _tokenize(text: str) -> list[_Token]:
    """Split expression text into tokens carrying byte offsets."""
    tokens: list[_Token] = []
    pos = 0
    while pos < len(text):
        match = _TOKEN_RE.match(text, pos)
        offset = len(text[:pos].encode("utf-8"))
        if match is None:
            raise ExpressionSyntaxError(f"Unexpected character {text[pos]!r}", offset)
        kind = match.lastgroup
        assert kind is not None
        end = match.end()
        if kind == "number" and text.startswith(IMAGINARY_UNIT, end):
            # "2i" is an imaginary literal unless the i starts a longer word
            following = text[end + 1 : end + 2]
            if not (following.isalnum() or following == "_"):
                kind = "imaginary"
                end += 1
        if kind != "space":
            tokens.append(_Token(kind, text[pos:end], offset))
        pos = end
    tokens.append(_Token("end", "", len(text.encode("utf-8"))))
    return tokens


class _Parser:
    """Recursive descent parser over a token list."""

    def __init__(self, tokens: list[_Token]) -> None:
        self._tokens = tokens
        self._index = 0

    @property
    def _current(self) -> _Token:
        return self._tokens[self._index]

    def _advance(self) -> _Token:
        token = self._tokens[self._index]
        self._index += 1
        return token

    def _accept(self, *symbols: str) -> _Token | None:
        token = self._current
        if token.kind == "op" and token.text in symbols:
            return self._advance()
        return None

    def _expect(self, symbol: str) -> None:
        if self._accept(symbol) is None:
            token = self._current
            found = token.text or "end of input"
            raise ExpressionSyntaxError(
                f"Expected '{symbol}', found {found!r}", token.offset
            )

    def parse(self) -> ExprNode:
        node = self._expr()
        token = self._current
        if token.kind != "end":
            raise ExpressionSyntaxError(
                f"Unexpected token {token.text!r}", token.offset
            )
        return node

    def _expr(self) -> ExprNode:
        node = self._term()
        while (token := self._accept("+", "-")) is not None:
            right = self._term()
            node = Add(node, right) if token.text == "+" else Sub(node, right)
        return node

    def _term(self) -> ExprNode:
        node = self._unary()
        while (token := self._accept("*", "/")) is not None:
            right = self._unary()
            node = Mul(node, right) if token.text == "*" else Div(node, right)
        return node

    def _unary(self) -> ExprNode:
        if self._accept("-") is not None:
            return Neg(self._unary())
        if self._accept("+") is not None:
            return self._unary()
        return self._power()

    def _power(self) -> ExprNode:
        base = self._atom()
        if self._accept("^") is not None:
            return IntPow(base, self._exponent())
        return base

    def _exponent(self) -> int:
        sign = 1
        if self._accept("-") is not None:
            sign = -1
        else:
            self._accept("+")
        token = self._current
        if token.kind != "number" or not _INTEGER_RE.fullmatch(token.text):
            raise ExpressionSyntaxError(
                "Exponent must be an integer literal", token.offset
            )
        self._advance()
        try:
            value = int(token.text)
        except ValueError as err:
            raise ExpressionSyntaxError("Exponent too long", token.offset) from err
        if self._accept("^") is not None:
            upper = self._exponent()
            if upper < 0:
                raise ExpressionSyntaxError(
                    "Exponent tower must stay integral", token.offset
                )
            if value > 1 and upper * value.bit_length() > MAX_TOWER_BITS:
                raise ExpressionSyntaxError("Exponent tower too large", token.offset)
            value = value**upper
        return sign * value

    def _atom(self) -> ExprNode:
        token = self._current
        if token.kind in ("number", "imaginary"):
            self._advance()
            return Const(_literal(token))
        if token.kind == "ident":
            self._advance()
            if token.text == VARIABLE_NAME:
                return Var()
            if token.text == IMAGINARY_UNIT:
                return Const(1j)
            if (function := FUNCTIONS.get(token.text)) is None:
                raise UnsupportedFunction(token.text, token.offset)
            self._expect("(")
            arg = self._expr()
            self._expect(")")
            return function(arg)
        if self._accept("(") is not None:
            node = self._expr()
            self._expect(")")
            return node
        found = token.text or "end of input"
        raise ExpressionSyntaxError(f"Unexpected token {found!r}", token.offset)


def _literal(token: _Token) -> complex:
    """Convert a number token into a finite complex value."""
    text = token.text[:-1] if token.kind == "imaginary" else token.text
    value = float(text)
    if not math.isfinite(value):
        raise ExpressionSyntaxError(
            f"Literal {token.text!r} is not finite", token.offset
        )
    return complex(0.0, value) if token.kind == "imaginary" else complex(value, 0.0)


def parse(text: str) -> ExprNode:
    """Parse expression text into an immutable tree."""
    if not text or not text.strip():
        raise ExpressionSyntaxError("Empty expression", 0)
    node = _Parser(_tokenize(text)).parse()
    _LOGGER.debug("Parsed %r as %s", text, print_expr(node))
    return node


def eval_jet2(e: ExprNode, z: complex) -> Jet2:
    """Evaluate value, first and second derivative of e at z."""
    result = e.jet(complex(z))
    if not result.is_finite:
        raise EvalError(EvalErrorKind.OVERFLOW, e)
    return result


def _format_real(value: float) -> str:
    return repr(abs(value))


def _format_const(value: complex) -> str:
    """Format a constant so that parsing the text reproduces its value."""
    re_part, im_part = value.real, value.imag
    if im_part == 0:
        if math.copysign(1.0, re_part) > 0:
            return _format_real(re_part)
        return f"(-{_format_real(re_part)})"
    imaginary = f"{_format_real(im_part)}{IMAGINARY_UNIT}"
    if re_part == 0:
        return imaginary if im_part > 0 else f"(-{imaginary})"
    real = _format_real(re_part) if re_part > 0 else f"-{_format_real(re_part)}"
    sign = "+" if im_part > 0 else "-"
    return f"({real}{sign}{imaginary})"


def print_expr(e: ExprNode) -> str:
    """Return the canonical fully-parenthesized text of e."""
    if isinstance(e, Const):
        return _format_const(e.value)
    if isinstance(e, Var):
        return VARIABLE_NAME
    if isinstance(e, (Add, Sub, Mul, Div)):
        symbol = BINARY_SYMBOLS[type(e)]
        return f"({print_expr(e.left)}{symbol}{print_expr(e.right)})"
    if isinstance(e, Neg):
        return f"(-{print_expr(e.operand)})"
    if isinstance(e, IntPow):
        return f"({print_expr(e.base)}^{e.k})"
    for name, function in FUNCTIONS.items():
        if isinstance(e, function):
            return f"{name}({print_expr(e.arg)})"
    raise TypeError(f"Unknown expression node {e!r}")
