"""Closed-form radial functions supplied as text.

Grammar (whitespace insignificant)::

    expr    :=  term (("+" | "-") term)*
    term    :=  unary (("*" | "/") unary)*
    unary   :=  "-" unary | power
    power   :=  atom ("^" unary)?          # right-associative
    atom    :=  NUMBER | "r" | "pi" | NAME "(" expr ")" | "(" expr ")"
    NAME    :=  exp | ln | sqrt | sin | cos | tan | sinh | cosh | tanh | atan

Precedence is ``^`` > unary minus > ``* /`` > ``+ -``, so ``-r^2``
means ``-(r^2)`` and ``2^-r`` is accepted.  Evaluation follows IEEE
semantics: out-of-domain operations (``ln`` of a negative number,
division by zero) produce non-finite values rather than exceptions, so
pipelines can inspect whole sampled functions and report every bad node
at once.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Union

import numpy as np

from .errors import ParseError, SingularSampleError
from .grid import RadialGrid, RadialFunction

_FUNCTIONS = {
    "exp": np.exp,
    "ln": np.log,
    "sqrt": np.sqrt,
    "sin": np.sin,
    "cos": np.cos,
    "tan": np.tan,
    "sinh": np.sinh,
    "cosh": np.cosh,
    "tanh": np.tanh,
    "atan": np.arctan,
}

_CONSTANTS = {"pi": math.pi}


@dataclass(frozen=True)
class Num:
    value: float


@dataclass(frozen=True)
class Var:
    """The radial coordinate r."""


@dataclass(frozen=True)
class Const:
    name: str


@dataclass(frozen=True)
class Unary:
    operand: "Node"


@dataclass(frozen=True)
class Binary:
    op: str  # one of + - * / ^
    left: "Node"
    right: "Node"


@dataclass(frozen=True)
class Call:
    func: str
    arg: "Node"


Node = Union[Num, Var, Const, Unary, Binary, Call]


@dataclass(frozen=True)
class Expression:
    """Parsed closed-form function of r."""

    root: Node

    def __call__(self, r):
        return _eval(self.root, np.asarray(r, dtype=np.float64))

    def __str__(self) -> str:
        return to_text(self)


# --- tokenizer -------------------------------------------------------------

_SINGLE = set("+-*/^()")


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    """Return (kind, text, offset) triples; kinds: num, name, op, end."""
    tokens = []
    i, n = 0, len(text)
    while i < n:
        c = text[i]
        if c.isspace():
            i += 1
            continue
        if c in _SINGLE:
            tokens.append(("op", c, i))
            i += 1
            continue
        if c.isdigit() or c == ".":
            j = i
            seen_dot = seen_exp = False
            while j < n:
                d = text[j]
                if d.isdigit():
                    j += 1
                elif d == "." and not seen_dot and not seen_exp:
                    seen_dot = True
                    j += 1
                elif d in "eE" and not seen_exp and j > i and text[j - 1] not in ".":
                    # exponent must be followed by digits (optionally signed)
                    k = j + 1
                    if k < n and text[k] in "+-":
                        k += 1
                    if k < n and text[k].isdigit():
                        seen_exp = True
                        j = k
                    else:
                        break
                else:
                    break
            lit = text[i:j]
            try:
                float(lit)
            except ValueError:
                raise ParseError(f"bad number literal {lit!r}", i, "a number") from None
            tokens.append(("num", lit, i))
            i = j
            continue
        if c.isalpha() or c == "_":
            j = i
            while j < n and (text[j].isalnum() or text[j] == "_"):
                j += 1
            tokens.append(("name", text[i:j], i))
            i = j
            continue
        raise ParseError(f"unexpected character {c!r}", i, "an operand or operator")
    tokens.append(("end", "", n))
    return tokens


# --- parser ----------------------------------------------------------------


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = _tokenize(text)
        self.pos = 0

    def peek(self) -> tuple[str, str, int]:
        return self.tokens[self.pos]

    def advance(self) -> tuple[str, str, int]:
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def expect_op(self, op: str):
        kind, text, offset = self.peek()
        if kind == "op" and text == op:
            self.advance()
            return
        raise ParseError(f"got {text!r}" if text else "input ended", offset, f"{op!r}")

    def parse(self) -> Node:
        node = self.expr()
        kind, text, offset = self.peek()
        if kind != "end":
            raise ParseError(f"trailing input {text!r}", offset, "end of input")
        return node

    def expr(self) -> Node:
        node = self.term()
        while True:
            kind, text, _ = self.peek()
            if kind == "op" and text in "+-":
                self.advance()
                node = Binary(text, node, self.term())
            else:
                return node

    def term(self) -> Node:
        node = self.unary()
        while True:
            kind, text, _ = self.peek()
            if kind == "op" and text in "*/":
                self.advance()
                node = Binary(text, node, self.unary())
            else:
                return node

    def unary(self) -> Node:
        kind, text, _ = self.peek()
        if kind == "op" and text == "-":
            self.advance()
            return Unary(self.unary())
        return self.power()

    def power(self) -> Node:
        base = self.atom()
        kind, text, _ = self.peek()
        if kind == "op" and text == "^":
            self.advance()
            return Binary("^", base, self.unary())  # right-associative
        return base

    def atom(self) -> Node:
        kind, text, offset = self.advance()
        if kind == "num":
            return Num(float(text))
        if kind == "name":
            if text in _FUNCTIONS:
                self.expect_op("(")
                arg = self.expr()
                self.expect_op(")")
                return Call(text, arg)
            if text == "r":
                return Var()
            if text in _CONSTANTS:
                return Const(text)
            raise ParseError(
                f"unknown name {text!r}",
                offset,
                "r, pi, or a function name (" + ", ".join(sorted(_FUNCTIONS)) + ")",
            )
        if kind == "op" and text == "(":
            node = self.expr()
            self.expect_op(")")
            return node
        raise ParseError(
            f"got {text!r}" if text else "input ended",
            offset,
            "a number, name, unary minus, or '('",
        )


def parse(text: str) -> Expression:
    """Parse source text into an :class:`Expression`.

    Raises
    ------
    ParseError
        Carrying the byte offset and a description of what was expected.
    """
    return Expression(_Parser(text).parse())


# --- evaluation ------------------------------------------------------------


def _eval(node: Node, r: np.ndarray) -> np.ndarray:
    with np.errstate(all="ignore"):
        return _eval_inner(node, r)


def _eval_inner(node: Node, r: np.ndarray) -> np.ndarray:
    if isinstance(node, Num):
        return np.broadcast_to(np.float64(node.value), r.shape).copy() if r.shape else np.float64(node.value)
    if isinstance(node, Var):
        return r.copy() if r.shape else r
    if isinstance(node, Const):
        v = np.float64(_CONSTANTS[node.name])
        return np.broadcast_to(v, r.shape).copy() if r.shape else v
    if isinstance(node, Unary):
        return np.negative(_eval_inner(node.operand, r))
    if isinstance(node, Call):
        return _FUNCTIONS[node.func](_eval_inner(node.arg, r))
    if isinstance(node, Binary):
        a = _eval_inner(node.left, r)
        b = _eval_inner(node.right, r)
        if node.op == "+":
            return np.add(a, b)
        if node.op == "-":
            return np.subtract(a, b)
        if node.op == "*":
            return np.multiply(a, b)
        if node.op == "/":
            return np.divide(a, b)
        return np.power(a, b)
    raise TypeError(f"not an expression node: {node!r}")


def evaluate(e: Expression, r: float) -> float:
    """Evaluate at a single radius.  Non-finite results propagate."""
    return float(_eval(e.root, np.float64(r)))


def sample_expression(e: Expression, grid: RadialGrid) -> RadialFunction:
    """Evaluate at every node; reject non-finite samples.

    Raises
    ------
    SingularSampleError
        Listing every node where the value is not finite.
    """
    values = np.asarray(_eval(e.root, grid.r), dtype=np.float64)
    if values.ndim == 0:
        values = np.full(grid.n, float(values))
    bad = np.flatnonzero(~np.isfinite(values))
    if bad.size:
        raise SingularSampleError(
            f"expression {to_text(e)!r} is singular on the grid", bad.tolist()
        )
    return RadialFunction(grid, values)


# --- printing --------------------------------------------------------------

_PREC = {"+": 1, "-": 1, "*": 2, "/": 2, "unary": 3, "^": 4, "atom": 5}


def _prec(node: Node) -> int:
    if isinstance(node, Binary):
        return _PREC[node.op]
    if isinstance(node, Unary):
        return _PREC["unary"]
    return _PREC["atom"]


def _print(node: Node) -> str:
    if isinstance(node, Num):
        return repr(node.value)
    if isinstance(node, Var):
        return "r"
    if isinstance(node, Const):
        return node.name
    if isinstance(node, Call):
        return f"{node.func}({_print(node.arg)})"
    if isinstance(node, Unary):
        inner = _print(node.operand)
        if _prec(node.operand) < _PREC["unary"]:
            inner = f"({inner})"
        return f"-{inner}"
    if isinstance(node, Binary):
        p = _PREC[node.op]
        left = _print(node.left)
        right = _print(node.right)
        # Parenthesize to reproduce this exact grouping on reparse, so a
        # printed tree evaluates bit-identically to the original.
        if node.op == "^":
            if _prec(node.left) <= p:  # '^' groups right; left operand binds tighter
                left = f"({left})"
            if _prec(node.right) < p:
                right = f"({right})"
        else:
            if _prec(node.left) < p:
                left = f"({left})"
            if _prec(node.right) <= p:
                right = f"({right})"
        return f"{left}{node.op}{right}"
    raise TypeError(f"not an expression node: {node!r}")


def to_text(e: Expression) -> str:
    """Render a tree back to source; reparsing reproduces the tree."""
    return _print(e.root)
