"""A small expression language for algebra elements, forms and tensors.

Grammar (whitespace-insensitive)::

    expr   := term (('+' | '-') term)*
    term   := factor (('*' | '/' | 'ox') factor)*
    factor := '-' factor | atom ('^' signed-int)?
    atom   := integer | name | '(' expr ')'

Names are ``x- x0 x+ L r s q xi- xi0 xi+ th- th0 th+``; ``q`` means ``s^2``.
Products keep the written order.  ``/`` only divides by a nonzero scalar,
which is what printed coefficients such as ``1/2*s^3`` or ``s/(s^2-1)`` need.
"""
from __future__ import annotations

from dataclasses import dataclass

from .algebra import AlgElem, alg_equal
from .calculus import FormElem, calculus, d
from .connection import TensorElem, tensor
from .scalars import QS

GENERATOR_NAMES = ("x-", "x0", "x+", "L", "r")
XI_NAMES = ("xi-", "xi0", "xi+")
THETA_NAMES = ("th-", "th0", "th+")
NAMES = GENERATOR_NAMES + XI_NAMES + THETA_NAMES + ("s", "q")


class DSLSyntaxError(ValueError):
    def __init__(self, message, column):
        super().__init__(f"syntax error at column {column}: {message}")
        self.column = column


class DSLTypeError(TypeError):
    pass


# --- AST ---------------------------------------------------------------------


@dataclass(frozen=True)
class Num:
    value: int

    def __str__(self):
        return str(self.value)


@dataclass(frozen=True)
class Name:
    name: str

    def __str__(self):
        return self.name


@dataclass(frozen=True)
class Neg:
    arg: object

    def __str__(self):
        return f"neg({self.arg})"


@dataclass(frozen=True)
class Power:
    base: object
    exp: int

    def __str__(self):
        return f"power({self.base}, {self.exp})"


_OP_NAMES = {"+": "sum", "-": "difference", "*": "product", "/": "quotient", "ox": "tensor"}


@dataclass(frozen=True)
class BinOp:
    op: str
    left: object
    right: object

    def __str__(self):
        return f"{_OP_NAMES[self.op]}({self.left}, {self.right})"


# --- tokenizer ---------------------------------------------------------------


@dataclass(frozen=True)
class Token:
    kind: str  # "num", "name", "op", "end"
    text: str
    column: int


def tokenize(text: str) -> list[Token]:
    out = []
    i, n = 0, len(text)
    while i < n:
        ch = text[i]
        col = i + 1
        if ch.isspace():
            i += 1
        elif ch.isdigit():
            j = i
            while j < n and text[j].isdigit():
                j += 1
            out.append(Token("num", text[i:j], col))
            i = j
        elif text.startswith("ox", i) and not text[i + 2:i + 3].isalnum():
            out.append(Token("op", "ox", col))
            i += 2
        elif ch in "+-*/^()":
            out.append(Token("op", ch, col))
            i += 1
        elif ch.isalpha():
            j = i
            while j < n and text[j].isalpha():
                j += 1
            word = text[i:j]
            if word in ("x", "xi", "th"):
                if j < n and text[j] in "-0+":
                    word += text[j]
                    j += 1
                else:
                    raise DSLSyntaxError(f"'{word}' must be followed by -, 0 or +", j + 1)
            if word not in NAMES:
                raise DSLSyntaxError(f"unknown name '{word}'", col)
            out.append(Token("name", word, col))
            i = j
        else:
            raise DSLSyntaxError(f"unexpected character {ch!r}", col)
    out.append(Token("end", "", n + 1))
    return out


# --- parser ------------------------------------------------------------------


class _Parser:
    def __init__(self, text):
        self.toks = tokenize(text)
        self.pos = 0

    @property
    def tok(self):
        return self.toks[self.pos]

    def take(self):
        t = self.toks[self.pos]
        self.pos += 1
        return t

    def at(self, *ops):
        return self.tok.kind == "op" and self.tok.text in ops

    def fail(self, expected):
        t = self.tok
        found = "end of input" if t.kind == "end" else repr(t.text)
        raise DSLSyntaxError(f"expected {expected}, found {found}", t.column)

    def parse(self):
        e = self.expr()
        if self.tok.kind != "end":
            self.fail("an operator")
        return e

    def expr(self):
        node = self.term()
        while self.at("+", "-"):
            op = self.take().text
            node = BinOp(op, node, self.term())
        return node

    def term(self):
        node = self.factor()
        while self.at("*", "/", "ox"):
            op = self.take().text
            node = BinOp(op, node, self.factor())
        return node

    def factor(self):
        if self.at("-"):
            self.take()
            return Neg(self.factor())
        base = self.atom()
        if self.at("^"):
            self.take()
            sign = 1
            if self.at("-", "+"):
                sign = -1 if self.take().text == "-" else 1
            if self.tok.kind != "num":
                self.fail("an integer exponent")
            return Power(base, sign * int(self.take().text))
        return base

    def atom(self):
        t = self.tok
        if t.kind == "num":
            self.take()
            return Num(int(t.text))
        if t.kind == "name":
            self.take()
            return Name(t.text)
        if self.at("("):
            self.take()
            e = self.expr()
            if not self.at(")"):
                self.fail("')'")
            self.take()
            return e
        self.fail("a number, a name or '('")


def parse(text: str):
    """Parse ``text`` into an AST; raises DSLSyntaxError with a 1-based column."""
    return _Parser(text).parse()


# --- evaluation ----------------------------------------------------------------


def kind(value) -> str:
    if isinstance(value, AlgElem):
        return "function"
    if isinstance(value, FormElem):
        return f"{value.degree()}-form"
    if isinstance(value, TensorElem):
        return "tensor"
    raise DSLTypeError(f"unexpected value {value!r}")


class Evaluator:
    """Evaluate ASTs to AlgElem, FormElem (frame basis) or TensorElem."""

    def __init__(self, field=QS, calc=None):
        self.field = field
        self._calc = calc

    @property
    def calc(self):
        if self._calc is None:
            self._calc = calculus(self.field)
        return self._calc

    def __call__(self, node):
        return getattr(self, "ev_" + type(node).__name__)(node)

    def ev_Num(self, node):
        return AlgElem.const(node.value, self.field)

    def ev_Name(self, node):
        n = node.name
        F = self.field
        if n == "s":
            return AlgElem.const(F.s, F)
        if n == "q":
            return AlgElem.const(F.q, F)
        if n in GENERATOR_NAMES:
            return AlgElem.gen(n, F)
        if n in XI_NAMES:
            return self.calc.xi_in_frame(XI_NAMES.index(n))
        return FormElem.frame(THETA_NAMES.index(n), self.calc)

    def ev_Neg(self, node):
        return -self(node.arg)

    def ev_Power(self, node):
        base = self(node.base)
        if isinstance(base, AlgElem):
            if node.exp < 0 and base.constant_value() is None and len(base.terms) != 1:
                raise DSLTypeError(f"negative power of a non-monomial: {base}")
            return base ** node.exp
        if isinstance(base, FormElem) and node.exp >= 1:
            out = base
            for _ in range(node.exp - 1):
                out = out * base
            return out
        raise DSLTypeError(f"cannot raise a {kind(base)} to the power {node.exp}")

    def ev_BinOp(self, node):
        a, b = self(node.left), self(node.right)
        op = node.op
        if op in "+-":
            ka, kb = kind(a), kind(b)
            if ka != kb:
                raise DSLTypeError(f"cannot add a {ka} and a {kb}")
            return a + b if op == "+" else a - b
        if op == "/":
            c = b.constant_value() if isinstance(b, AlgElem) else None
            if c is None or not c:
                raise DSLTypeError(f"can only divide by a nonzero scalar, not {b}")
            inv = self.field.one / c
            return a.scale(inv) if isinstance(a, AlgElem) else a * AlgElem.const(inv, self.field)
        if op == "ox":
            if kind(a) != "1-form" or kind(b) != "1-form":
                raise DSLTypeError(f"'ox' joins two 1-forms, got a {kind(a)} and a {kind(b)}")
            return tensor(a, b)
        return self._mul(a, b)

    def _mul(self, a, b):
        if isinstance(a, AlgElem) and isinstance(b, AlgElem):
            return a * b
        if isinstance(a, TensorElem) and isinstance(b, TensorElem):
            raise DSLTypeError("cannot multiply two tensors")
        if isinstance(a, TensorElem):
            if isinstance(b, AlgElem):
                return a.rmul(b)
            raise DSLTypeError(f"cannot multiply a tensor by a {kind(b)}")
        if isinstance(b, TensorElem):
            if isinstance(a, AlgElem):
                return b.lmul(a)
            raise DSLTypeError(f"cannot multiply a {kind(a)} by a tensor")
        return a * b


def evaluate(node_or_text, field=QS, calc=None):
    """Evaluate an AST (or source text) to its normal form."""
    node = parse(node_or_text) if isinstance(node_or_text, str) else node_or_text
    return Evaluator(field, calc)(node)


def show(value, basis: str = "frame") -> str:
    """Printed normal form; one-forms may be shown in the xi basis."""
    if basis == "xi" and isinstance(value, FormElem) and value.degree() == 1:
        return str(value.calc.to_xi(value))
    return str(value)


def differentiate(value, calc=None):
    """d of a function or a form."""
    if isinstance(value, AlgElem):
        return d(FormElem.function(value, calc or calculus(value.field)))
    if isinstance(value, FormElem):
        return d(value)
    raise DSLTypeError(f"d is not defined on a {kind(value)}")


def values_equal(a, b) -> bool:
    ka, kb = kind(a), kind(b)
    if ka != kb:
        raise DSLTypeError(f"cannot compare a {ka} and a {kb}")
    if isinstance(a, AlgElem):
        return alg_equal(a, b)
    return (a - b).is_zero()
