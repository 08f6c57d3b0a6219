"""Parsing and evaluation of real expressions in one or two variables.

Grammar (whitespace ignored)::

    expr   := term (('+' | '-') term)*
    term   := unary (('*' | '/') unary)*
    unary  := '-' unary | '+' unary | power
    power  := atom ('^' unary)?
    atom   := NUMBER | NAME | FUNC '(' expr ')' | '(' expr ')'

so ``^`` binds tighter than unary minus, ``-x^2`` is ``-(x^2)`` and
``x^2^3`` is ``x^(2^3)``.  Evaluation is vectorised over numpy arrays and
raises :class:`~galcurves.errors.EvalError` instead of producing NaN or inf.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, field
from typing import Sequence, Union

import numpy as np

from .errors import EvalError, ParseError

FUNCTIONS = {
    "sin": np.sin,
    "cos": np.cos,
    "tan": np.tan,
    "exp": np.exp,
    "log": np.log,
    "sqrt": np.sqrt,
    "abs": np.abs,
}
CONSTANTS = {"pi": math.pi, "e": math.e}


@dataclass(frozen=True)
class Num:
    value: float
    offset: int = field(default=0, compare=False, repr=False)


@dataclass(frozen=True)
class Var:
    name: str
    offset: int = field(default=0, compare=False, repr=False)


@dataclass(frozen=True)
class Const:
    name: str
    offset: int = field(default=0, compare=False, repr=False)


@dataclass(frozen=True)
class Neg:
    operand: "Node"
    offset: int = field(default=0, compare=False, repr=False)


@dataclass(frozen=True)
class BinOp:
    op: str
    left: "Node"
    right: "Node"
    offset: int = field(default=0, compare=False, repr=False)


@dataclass(frozen=True)
class Call:
    func: str
    arg: "Node"
    offset: int = field(default=0, compare=False, repr=False)


Node = Union[Num, Var, Const, Neg, BinOp, Call]


@dataclass(frozen=True)
class Expression:
    """A parsed expression together with its ordered variable names."""

    root: Node
    variables: tuple
    text: str = field(default="", compare=False)

    def __call__(self, *values):
        return evaluate(self, *values)

    def __str__(self):
        return to_text(self)


_TOKEN_RE = re.compile(
    r"""
    (?P<ws>\s+)
  | (?P<num>(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)
  | (?P<name>[A-Za-z_][A-Za-z_0-9]*)
  | (?P<op>[-+*/^()])
    """,
    re.VERBOSE,
)


def _tokenize(text):
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            raise ParseError(f"unexpected character {text[pos]!r}", pos)
        kind = m.lastgroup
        if kind != "ws":
            tokens.append((kind, m.group(), pos))
        pos = m.end()
    tokens.append(("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text, variables):
        self.tokens = _tokenize(text)
        self.i = 0
        self.variables = variables

    @property
    def tok(self):
        return self.tokens[self.i]

    def advance(self):
        t = self.tokens[self.i]
        self.i += 1
        return t

    def expect(self, value):
        kind, val, pos = self.tok
        if val != value or kind != "op":
            what = "end of input" if kind == "end" else repr(val)
            raise ParseError(f"expected {value!r}, found {what}", pos)
        return self.advance()

    def parse(self):
        node = self.expr()
        kind, val, pos = self.tok
        if kind != "end":
            if val == ")":
                raise ParseError("unbalanced ')'", pos)
            raise ParseError(f"unexpected trailing input {val!r}", pos)
        return node

    def expr(self):
        node = self.term()
        while self.tok[0] == "op" and self.tok[1] in "+-":
            _, op, pos = self.advance()
            node = BinOp(op, node, self.term(), pos)
        return node

    def term(self):
        node = self.unary()
        while self.tok[0] == "op" and self.tok[1] in "*/":
            _, op, pos = self.advance()
            node = BinOp(op, node, self.unary(), pos)
        return node

    def unary(self):
        kind, val, pos = self.tok
        if kind == "op" and val == "-":
            self.advance()
            return Neg(self.unary(), pos)
        if kind == "op" and val == "+":
            self.advance()
            return self.unary()
        return self.power()

    def power(self):
        base = self.atom()
        if self.tok[0] == "op" and self.tok[1] == "^":
            _, _, pos = self.advance()
            return BinOp("^", base, self.unary(), pos)
        return base

    def atom(self):
        kind, val, pos = self.advance()
        if kind == "num":
            return Num(float(val), pos)
        if kind == "name":
            if val in self.variables:
                return Var(val, pos)
            if val in FUNCTIONS:
                if not (self.tok[0] == "op" and self.tok[1] == "("):
                    raise ParseError(f"function {val!r} needs an argument in parentheses", self.tok[2])
                open_pos = self.advance()[2]
                arg = self.expr()
                if self.tok[1] != ")":
                    raise ParseError("unbalanced '(': missing ')'", open_pos)
                self.advance()
                return Call(val, arg, pos)
            if val in CONSTANTS:
                return Const(val, pos)
            raise ParseError(f"unknown identifier {val!r}", pos)
        if kind == "op" and val == "(":
            node = self.expr()
            if self.tok[1] != ")":
                raise ParseError("unbalanced '(': missing ')'", pos)
            self.advance()
            return node
        if kind == "end":
            raise ParseError("unexpected end of input", pos)
        if val == ")":
            raise ParseError("unbalanced ')'", pos)
        raise ParseError(f"unexpected token {val!r}", pos)


def parse(text: str, var_name: Union[str, Sequence[str]] = "x") -> Expression:
    """Parse ``text`` into an :class:`Expression` over ``var_name``.

    ``var_name`` may be a single name or a sequence of names (for surfaces
    in ``u, v``).  Variable names shadow the constants ``pi`` and ``e``.
    """
    if not isinstance(text, str) or not text.strip():
        raise ParseError("empty expression", 0)
    variables = (var_name,) if isinstance(var_name, str) else tuple(var_name)
    root = _Parser(text, variables).parse()
    return Expression(root, variables, text)


def _check(node, value, kind="non_finite"):
    if not np.all(np.isfinite(value)):
        raise EvalError(kind, node.offset)
    return value


def _eval(node, env):
    if isinstance(node, Num):
        return np.float64(node.value)
    if isinstance(node, Var):
        return env[node.name]
    if isinstance(node, Const):
        return np.float64(CONSTANTS[node.name])
    if isinstance(node, Neg):
        return -_eval(node.operand, env)
    if isinstance(node, Call):
        arg = _eval(node.arg, env)
        if node.func == "log" and np.any(arg <= 0):
            raise EvalError("log_domain", node.offset, "log of a non-positive value")
        if node.func == "sqrt" and np.any(arg < 0):
            raise EvalError("sqrt_domain", node.offset, "sqrt of a negative value")
        return _check(node, FUNCTIONS[node.func](arg))
    left = _eval(node.left, env)
    right = _eval(node.right, env)
    op = node.op
    if op == "+":
        return _check(node, left + right)
    if op == "-":
        return _check(node, left - right)
    if op == "*":
        return _check(node, left * right)
    if op == "/":
        if np.any(right == 0):
            raise EvalError("division_by_zero", node.offset)
        return _check(node, left / right)
    return _check(node, np.power(left, right))


def evaluate(expr: Expression, *values):
    """Evaluate ``expr`` with one value (scalar or array) per variable."""
    if len(values) != len(expr.variables):
        raise TypeError(f"expected {len(expr.variables)} value(s) for {expr.variables}, got {len(values)}")
    arrays = [np.asarray(v, dtype=float) for v in values]
    shape = np.broadcast_shapes(*(a.shape for a in arrays)) if arrays else ()
    env = dict(zip(expr.variables, arrays))
    with np.errstate(all="ignore"):
        out = _eval(expr.root, env)
    out = np.broadcast_to(np.asarray(out, dtype=float), shape)
    if out.ndim == 0:
        return float(out)
    return np.array(out)


_PREC = {"+": 1, "-": 1, "*": 2, "/": 2, "^": 4}
_NEG_PREC = 3
_ATOM_PREC = 5


def _prec(node):
    if isinstance(node, BinOp):
        return _PREC[node.op]
    if isinstance(node, Neg):
        return _NEG_PREC
    if isinstance(node, Num) and (node.value < 0 or math.copysign(1.0, node.value) < 0):
        return _NEG_PREC
    return _ATOM_PREC


def _fmt(node):
    if isinstance(node, Num):
        return repr(float(node.value))
    if isinstance(node, (Var, Const)):
        return node.name
    if isinstance(node, Call):
        return f"{node.func}({_fmt(node.arg)})"
    if isinstance(node, Neg):
        return "-" + _wrap(node.operand, _prec(node.operand) < _NEG_PREC)
    p = _PREC[node.op]
    if node.op == "^":
        left = _wrap(node.left, _prec(node.left) < _ATOM_PREC)
        right = _wrap(node.right, _prec(node.right) < _NEG_PREC)
        return f"{left}^{right}"
    left = _wrap(node.left, _prec(node.left) < p)
    right = _wrap(node.right, _prec(node.right) <= p)
    return f"{left} {node.op} {right}"


def _wrap(node, needed):
    s = _fmt(node)
    return f"({s})" if needed else s


def to_text(expr: Union[Expression, Node]) -> str:
    """Render an expression with the minimum parentheses needed to re-parse it."""
    root = expr.root if isinstance(expr, Expression) else expr
    return _fmt(root)
