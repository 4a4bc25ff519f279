"""A small expression language in the single variable ``t``.

Grammar (``^`` binds tighter than unary minus, which binds tighter than
``*`` and ``/``; ``^`` is right-associative)::

    expr  := term (('+' | '-') term)*
    term  := unary (('*' | '/') unary)*
    unary := '-' unary | power
    power := atom ('^' unary)?
    atom  := NUMBER | 't' | 'pi' | 'e' | FUNC '(' expr ')' | '(' expr ')'

ASTs are immutable dataclasses compared structurally.  They can be
evaluated on floats or numpy arrays and differentiated symbolically.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from typing import Union

import numpy as np

from .errors import EvaluationError, ExprSyntaxError, UnknownIdentifierError

FUNCTIONS = ("sin", "cos", "exp", "log", "sqrt", "abs")
CONSTANTS = {"pi": math.pi, "e": math.e}
VARIABLE = "t"


class Node:
    """Base class of all AST nodes."""

    precedence = 5

    def __str__(self):
        return to_source(self)


@dataclass(frozen=True, eq=True)
class Num(Node):
    value: float


@dataclass(frozen=True, eq=True)
class Var(Node):
    name: str = VARIABLE


@dataclass(frozen=True, eq=True)
class Const(Node):
    name: str


@dataclass(frozen=True, eq=True)
class Neg(Node):
    operand: Node
    precedence = 3


@dataclass(frozen=True, eq=True)
class BinOp(Node):
    left: Node
    right: Node
    symbol = "?"


@dataclass(frozen=True, eq=True)
class Add(BinOp):
    symbol = "+"
    precedence = 1


@dataclass(frozen=True, eq=True)
class Sub(BinOp):
    symbol = "-"
    precedence = 1


@dataclass(frozen=True, eq=True)
class Mul(BinOp):
    symbol = "*"
    precedence = 2


@dataclass(frozen=True, eq=True)
class Div(BinOp):
    symbol = "/"
    precedence = 2


@dataclass(frozen=True, eq=True)
class Pow(BinOp):
    symbol = "^"
    precedence = 4


@dataclass(frozen=True, eq=True)
class Call(Node):
    func: str
    arg: Node


Expr = Node
Real = Union[float, np.ndarray]

_BINOPS = {"+": Add, "-": Sub, "*": Mul, "/": Div, "^": Pow}


# ---------------------------------------------------------------------------
# tokenizer / parser


_TOKEN_RE = re.compile(
    r"""
    (?P<ws>\s+)
  | (?P<num>(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)
  | (?P<ident>[A-Za-z_][A-Za-z_0-9]*)
  | (?P<op>[-+*/^()])
    """,
    re.VERBOSE,
)


@dataclass(frozen=True)
class _Token:
    kind: str  # 'num', 'ident', 'op', 'eof'
    text: str
    offset: int  # byte offset into the source


def _tokenize(source):
    tokens = []
    pos = 0
    byte_pos = 0
    while pos < len(source):
        m = _TOKEN_RE.match(source, pos)
        if m is None:
            raise ExprSyntaxError(f"unexpected character {source[pos]!r}", byte_pos)
        text = m.group()
        if m.lastgroup != "ws":
            tokens.append(_Token(m.lastgroup, text, byte_pos))
        pos = m.end()
        byte_pos += len(text.encode("utf-8"))
    tokens.append(_Token("eof", "", byte_pos))
    return tokens


class _Parser:
    def __init__(self, source):
        self.tokens = _tokenize(source)
        self.i = 0

    @property
    def tok(self):
        return self.tokens[self.i]

    def advance(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect(self, text):
        if self.tok.text != text or self.tok.kind == "eof":
            found = "end of input" if self.tok.kind == "eof" else repr(self.tok.text)
            raise ExprSyntaxError(f"expected {text!r}, found {found}", self.tok.offset)
        return self.advance()

    def parse(self):
        node = self.expr()
        if self.tok.kind != "eof":
            raise ExprSyntaxError(f"unexpected {self.tok.text!r}", self.tok.offset)
        return node

    def expr(self):
        node = self.term()
        while self.tok.kind == "op" and self.tok.text in "+-":
            op = self.advance().text
            node = _BINOPS[op](node, self.term())
        return node

    def term(self):
        node = self.unary()
        while self.tok.kind == "op" and self.tok.text in "*/":
            op = self.advance().text
            node = _BINOPS[op](node, self.unary())
        return node

    def unary(self):
        if self.tok.kind == "op" and self.tok.text == "-":
            self.advance()
            return Neg(self.unary())
        return self.power()

    def power(self):
        base = self.atom()
        if self.tok.kind == "op" and self.tok.text == "^":
            self.advance()
            return Pow(base, self.unary())
        return base

    def atom(self):
        tok = self.tok
        if tok.kind == "num":
            self.advance()
            return Num(float(tok.text))
        if tok.kind == "ident":
            self.advance()
            name = tok.text
            if name == VARIABLE:
                return Var()
            if name in CONSTANTS:
                return Const(name)
            if name in FUNCTIONS:
                self.expect("(")
                arg = self.expr()
                self.expect(")")
                return Call(name, arg)
            raise UnknownIdentifierError(f"unknown identifier {name!r}", tok.offset)
        if tok.kind == "op" and tok.text == "(":
            self.advance()
            node = self.expr()
            self.expect(")")
            return node
        if tok.kind == "eof":
            raise ExprSyntaxError("unexpected end of input", tok.offset)
        raise ExprSyntaxError(f"unexpected {tok.text!r}", tok.offset)


def parse(source: str) -> Node:
    """Parse ``source`` into an AST.

    Raises :class:`ExprSyntaxError` (with ``offset``) on malformed input and
    :class:`UnknownIdentifierError` on names outside the language.
    """
    if not isinstance(source, str):
        raise TypeError(f"expression source must be str, not {type(source).__name__}")
    if not source.strip():
        raise ExprSyntaxError("empty expression", 0)
    return _Parser(source).parse()


def as_expr(value) -> Node:
    """Coerce a string, number or AST into an AST."""
    if isinstance(value, Node):
        return value
    if isinstance(value, str):
        return parse(value)
    if isinstance(value, (int, float)) and not isinstance(value, bool):
        return Num(float(value))
    raise TypeError(f"cannot build an expression from {value!r}")


# ---------------------------------------------------------------------------
# printing


def _format_number(v):
    if v.is_integer() and abs(v) < 1e15:
        text = str(int(v))
    else:
        text = repr(v)
    return f"({text})" if v < 0 or text.startswith("-") else text


def to_source(node: Node) -> str:
    """Render ``node`` as source text that parses back to the same tree."""
    if isinstance(node, Num):
        return _format_number(node.value)
    if isinstance(node, Var):
        return node.name
    if isinstance(node, Const):
        return node.name
    if isinstance(node, Call):
        return f"{node.func}({to_source(node.arg)})"
    if isinstance(node, Neg):
        inner = to_source(node.operand)
        if node.operand.precedence < Neg.precedence:
            inner = f"({inner})"
        return f"-{inner}"
    if isinstance(node, Pow):
        left = to_source(node.left)
        if node.left.precedence <= Pow.precedence:
            left = f"({left})"
        right = to_source(node.right)
        if node.right.precedence < Neg.precedence:
            right = f"({right})"
        return f"{left}^{right}"
    if isinstance(node, BinOp):
        left = to_source(node.left)
        if node.left.precedence < node.precedence:
            left = f"({left})"
        right = to_source(node.right)
        # + and * are parsed left-assoc, so an equal-precedence right child needs parens too
        if node.right.precedence <= node.precedence:
            right = f"({right})"
        if node.precedence == Add.precedence:
            return f"{left} {node.symbol} {right}"
        return f"{left}{node.symbol}{right}"
    raise TypeError(f"not an expression node: {node!r}")


# ---------------------------------------------------------------------------
# evaluation


def depends_on_t(node: Node) -> bool:
    if isinstance(node, Var):
        return True
    if isinstance(node, (Num, Const)):
        return False
    if isinstance(node, Neg):
        return depends_on_t(node.operand)
    if isinstance(node, Call):
        return depends_on_t(node.arg)
    return depends_on_t(node.left) or depends_on_t(node.right)


def _fail(message, node):
    raise EvaluationError(f"{message} in {to_source(node)!r}")


def _eval(node, t):
    if isinstance(node, Num):
        return node.value
    if isinstance(node, Var):
        return t
    if isinstance(node, Const):
        return CONSTANTS[node.name]
    if isinstance(node, Neg):
        return -_eval(node.operand, t)
    if isinstance(node, Call):
        u = _eval(node.arg, t)
        f = node.func
        if f == "log":
            if np.any(np.asarray(u) <= 0):
                _fail("log of non-positive argument", node)
            return np.log(u)
        if f == "sqrt":
            if np.any(np.asarray(u) < 0):
                _fail("sqrt of negative argument", node)
            return np.sqrt(u)
        return getattr(np, f)(u)
    left = _eval(node.left, t)
    right = _eval(node.right, t)
    if isinstance(node, Add):
        return left + right
    if isinstance(node, Sub):
        return left - right
    if isinstance(node, Mul):
        return left * right
    if isinstance(node, Div):
        if np.any(np.asarray(right) == 0):
            _fail("division by zero", node)
        return left / right
    if isinstance(node, Pow):
        if depends_on_t(node.right):
            # u^v with varying exponent is exp(v log u); the base must stay positive
            if np.any(np.asarray(left) <= 0):
                _fail("non-positive base under a variable exponent", node)
            return np.exp(right * np.log(left))
        base = np.asarray(left)
        if np.any(base == 0) and right < 0:
            _fail("division by zero", node)
        if np.any(base < 0) and not float(right).is_integer():
            _fail("negative base with fractional exponent", node)
        return np.power(left, right)
    raise TypeError(f"not an expression node: {node!r}")


def eval_ast(ast: Node, t: Real) -> Real:
    """Evaluate ``ast`` at ``t`` (a float or an array of floats).

    Raises :class:`EvaluationError` on log/sqrt of invalid arguments,
    division by zero, or any non-finite result.
    """
    scalar = np.ndim(t) == 0
    t = float(t) if scalar else np.asarray(t, dtype=float)
    with np.errstate(all="ignore"):
        value = _eval(ast, t)
    if scalar:
        value = float(value)
        if not math.isfinite(value):
            _fail("non-finite value", ast)
        return value
    value = np.broadcast_to(np.asarray(value, dtype=float), np.shape(t)).copy()
    if not np.all(np.isfinite(value)):
        _fail("non-finite value", ast)
    return value


# ---------------------------------------------------------------------------
# differentiation with local constant folding

ZERO = Num(0.0)
ONE = Num(1.0)


def _is(node, value):
    return isinstance(node, Num) and node.value == value


def _fold(result):
    if math.isfinite(result):
        return Num(float(result))
    return None


def add(a, b):
    if _is(a, 0):
        return b
    if _is(b, 0):
        return a
    if isinstance(a, Num) and isinstance(b, Num):
        return _fold(a.value + b.value) or Add(a, b)
    return Add(a, b)


def sub(a, b):
    if _is(b, 0):
        return a
    if _is(a, 0):
        return neg(b)
    if isinstance(a, Num) and isinstance(b, Num):
        return _fold(a.value - b.value) or Sub(a, b)
    return Sub(a, b)


def neg(a):
    if isinstance(a, Num):
        return Num(-a.value)
    if isinstance(a, Neg):
        return a.operand
    return Neg(a)


def mul(a, b):
    if _is(a, 0) or _is(b, 0):
        return ZERO
    if _is(a, 1):
        return b
    if _is(b, 1):
        return a
    if isinstance(a, Num) and isinstance(b, Num):
        return _fold(a.value * b.value) or Mul(a, b)
    return Mul(a, b)


def div(a, b):
    if _is(b, 1):
        return a
    if _is(a, 0) and not _is(b, 0):
        return ZERO
    if isinstance(a, Num) and isinstance(b, Num) and b.value != 0:
        return _fold(a.value / b.value) or Div(a, b)
    return Div(a, b)


def power(a, b):
    if _is(b, 0):
        return ONE
    if isinstance(a, Num) and isinstance(b, Num) and a.value > 0:
        return _fold(a.value ** b.value) or Pow(a, b)
    return Pow(a, b)


def call(func, a):
    return Call(func, a)


def differentiate(ast: Node) -> Node:
    """Exact symbolic derivative of ``ast`` with respect to ``t``."""
    d = differentiate
    node = ast
    if isinstance(node, (Num, Const)):
        return ZERO
    if isinstance(node, Var):
        return ONE
    if isinstance(node, Neg):
        return neg(d(node.operand))
    if isinstance(node, Add):
        return add(d(node.left), d(node.right))
    if isinstance(node, Sub):
        return sub(d(node.left), d(node.right))
    if isinstance(node, Mul):
        u, v = node.left, node.right
        return add(mul(d(u), v), mul(u, d(v)))
    if isinstance(node, Div):
        u, v = node.left, node.right
        return div(sub(mul(d(u), v), mul(u, d(v))), power(v, Num(2.0)))
    if isinstance(node, Pow):
        u, v = node.left, node.right
        if not depends_on_t(v):
            return mul(mul(v, power(u, sub(v, ONE))), d(u))
        # u^v = exp(v log u)  =>  (u^v)' = u^v (v' log u + v u'/u)
        return mul(node, add(mul(d(v), call("log", u)), div(mul(v, d(u)), u)))
    if isinstance(node, Call):
        u = node.arg
        du = d(u)
        f = node.func
        if f == "sin":
            outer = call("cos", u)
        elif f == "cos":
            outer = neg(call("sin", u))
        elif f == "exp":
            outer = node
        elif f == "log":
            return div(du, u)
        elif f == "sqrt":
            return div(du, mul(Num(2.0), node))
        elif f == "abs":
            outer = div(u, node)
        else:
            raise TypeError(f"unknown function {f!r}")
        return mul(outer, du)
    raise TypeError(f"not an expression node: {node!r}")
