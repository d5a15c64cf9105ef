"""Small scalar expression language for curves, surfaces and metrics.

Grammar (recursive descent, `^` binds tightest and is right-associative,
unary minus binds looser than `^`):

    expr   := term (("+"|"-") term)*
    term   := factor (("*"|"/") factor)*
    factor := "-" factor | power
    power  := atom ("^" factor)?
    atom   := NUMBER | IDENT | IDENT "(" expr ")" | "(" expr ")"

Variables come from the fixed binding set {x, y, z, t, u, v, p, q}; the
function set is restricted to smooth or domain-checked functions, so every
parsed expression is C^2 wherever it evaluates.  Implicit multiplication
("2x") is rejected.  A parsed tree is immutable and can be shared freely;
evaluation works uniformly over plain floats and every jet shape.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from . import jets
from .errors import InputError, UnboundVariable

VARIABLE_NAMES = frozenset({"x", "y", "z", "t", "u", "v", "p", "q"})
FUNCTION_NAMES = frozenset(jets.FUNCTION_TABLES)


class ParseError(InputError):
    """Syntax violation with its position in the input."""

    def __init__(self, offset, message, expected=()):
        self.offset = offset
        self.message = message
        self.expected = list(expected)
        super().__init__(f"{message} at offset {offset}")


@dataclass(frozen=True)
class Constant:
    value: float


@dataclass(frozen=True)
class Variable:
    name: str


@dataclass(frozen=True)
class Unary:
    op: str  # "neg" or a function name
    child: "ExprAst"


@dataclass(frozen=True)
class Binary:
    op: str  # one of + - * / ^
    left: "ExprAst"
    right: "ExprAst"


ExprAst = Constant | Variable | Unary | Binary


_SYMBOLS = "+-*/^()"


def _tokenize(text):
    """Yield (kind, value, offset) triples; kind in num/ident/sym/end."""
    tokens = []
    i, n = 0, len(text)
    while i < n:
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        if ch in _SYMBOLS:
            tokens.append(("sym", ch, i))
            i += 1
            continue
        if ch.isdigit() or ch == ".":
            start = i
            while i < n and text[i].isdigit():
                i += 1
            if i < n and text[i] == ".":
                i += 1
                while i < n and text[i].isdigit():
                    i += 1
            if i < n and text[i] in "eE":
                j = i + 1
                if j < n and text[j] in "+-":
                    j += 1
                if j < n and text[j].isdigit():
                    i = j
                    while i < n and text[i].isdigit():
                        i += 1
            lexeme = text[start:i]
            try:
                value = float(lexeme)
            except ValueError:
                raise ParseError(start, f"malformed number {lexeme!r}",
                                 ["number"]) from None
            tokens.append(("num", value, start))
            continue
        if ch.isalpha() or ch == "_":
            start = i
            while i < n and (text[i].isalnum() or text[i] == "_"):
                i += 1
            tokens.append(("ident", text[start:i], start))
            continue
        raise ParseError(i, f"unexpected character {ch!r}", ["expression"])
    tokens.append(("end", None, n))
    return tokens


class _Parser:
    def __init__(self, text):
        self.text = text
        self.tokens = _tokenize(text)
        self.pos = 0

    def peek(self):
        return self.tokens[self.pos]

    def advance(self):
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def expect_sym(self, sym):
        kind, value, offset = self.peek()
        if kind == "sym" and value == sym:
            return self.advance()
        raise ParseError(offset, f"expected {sym!r}", [sym])

    def parse(self):
        node = self.expr()
        kind, value, offset = self.peek()
        if kind != "end":
            raise ParseError(offset, f"unexpected trailing input {value!r}",
                             ["end of input"])
        return node

    def expr(self):
        node = self.term()
        while True:
            kind, value, _ = self.peek()
            if kind == "sym" and value in "+-":
                self.advance()
                node = Binary(value, node, self.term())
            else:
                return node

    def term(self):
        node = self.factor()
        while True:
            kind, value, _ = self.peek()
            if kind == "sym" and value in "*/":
                self.advance()
                node = Binary(value, node, self.factor())
            else:
                return node

    def factor(self):
        kind, value, _ = self.peek()
        if kind == "sym" and value == "-":
            self.advance()
            return Unary("neg", self.factor())
        return self.power()

    def power(self):
        node = self.atom()
        kind, value, _ = self.peek()
        if kind == "sym" and value == "^":
            self.advance()
            node = Binary("^", node, self.factor())
        return node

    def atom(self):
        kind, value, offset = self.advance()
        if kind == "num":
            return Constant(value)
        if kind == "ident":
            next_kind, next_value, _ = self.peek()
            if next_kind == "sym" and next_value == "(":
                if value not in FUNCTION_NAMES:
                    raise ParseError(offset, f"unknown function {value!r}",
                                     sorted(FUNCTION_NAMES))
                self.advance()
                arg = self.expr()
                self.expect_sym(")")
                return Unary(value, arg)
            if value in VARIABLE_NAMES:
                return Variable(value)
            if value in FUNCTION_NAMES:
                raise ParseError(offset,
                                 f"function {value!r} requires an argument list",
                                 ["("])
            raise ParseError(offset, f"unknown identifier {value!r}",
                             sorted(VARIABLE_NAMES))
        if kind == "sym" and value == "(":
            node = self.expr()
            self.expect_sym(")")
            return node
        raise ParseError(offset, "expected expression", ["expression"])


def parse(text):
    """Parse `text` into an immutable ExprAst, or raise ParseError."""
    try:
        return _Parser(text).parse()
    except ParseError as err:
        byte_offset = len(text[:err.offset].encode("utf-8"))
        if byte_offset == err.offset:
            raise
        raise ParseError(byte_offset, err.message, err.expected) from None


def free_variables(ast):
    if isinstance(ast, Constant):
        return set()
    if isinstance(ast, Variable):
        return {ast.name}
    if isinstance(ast, Unary):
        return free_variables(ast.child)
    return free_variables(ast.left) | free_variables(ast.right)


def evaluate(ast, bindings):
    """Evaluate over floats or jets; all bound jets must share one shape."""
    shapes = {type(val) for val in bindings.values() if jets.is_jet(val)}
    if len(shapes) > 1:
        names = sorted(cls.__name__ for cls in shapes)
        raise ValueError(f"mixed jet shapes in bindings: {names}")
    return _eval(ast, bindings)


def _eval(ast, bindings):
    if isinstance(ast, Constant):
        return ast.value
    if isinstance(ast, Variable):
        try:
            return bindings[ast.name]
        except KeyError:
            raise UnboundVariable(f"unbound variable {ast.name!r}") from None
    if isinstance(ast, Unary):
        child = _eval(ast.child, bindings)
        if ast.op == "neg":
            return -child
        return jets.apply_function(ast.op, child)
    left = _eval(ast.left, bindings)
    right = _eval(ast.right, bindings)
    if ast.op == "+":
        return left + right
    if ast.op == "-":
        return left - right
    if ast.op == "*":
        return left * right
    if ast.op == "/":
        if not jets.is_jet(right) and float(right) == 0.0:
            from .errors import DivisionByZero
            raise DivisionByZero("division by zero")
        return left / right
    if ast.op == "^":
        if jets.is_jet(left) or jets.is_jet(right):
            return left ** right
        return _float_pow(float(left), float(right))
    raise ValueError(f"unknown operator {ast.op!r}")


def _float_pow(base, exponent):
    from .errors import DivisionByZero, DomainError
    try:
        if float(exponent).is_integer():
            if base == 0.0 and exponent < 0:
                raise DivisionByZero("zero raised to a negative power")
            return base ** exponent
        if base <= 0.0:
            raise DomainError(
                f"fractional power of non-positive base {base!r}")
        return math.pow(base, exponent)
    except OverflowError:
        raise DomainError(f"power {base!r}**{exponent!r} overflows") from None


_PRECEDENCE = {"+": 1, "-": 1, "*": 2, "/": 2, "^": 4}


def to_text(ast):
    """Canonical printed form; parse(to_text(parse(s))) == parse(s)."""
    return _print(ast, 0)


def _print(ast, parent_prec):
    if isinstance(ast, Constant):
        value = ast.value
        if value == int(value) and abs(value) < 1e16:
            text = str(int(value))
        else:
            text = repr(value)
        if value < 0 and parent_prec > 0:
            return f"({text})"
        return text
    if isinstance(ast, Variable):
        return ast.name
    if isinstance(ast, Unary):
        if ast.op == "neg":
            inner = _print(ast.child, 3)
            text = f"-{inner}"
            return f"({text})" if parent_prec > 1 else text
        return f"{ast.op}({_print(ast.child, 0)})"
    prec = _PRECEDENCE[ast.op]
    if ast.op == "^":
        # right-associative; unary minus on the right re-parses via factor
        text = f"{_print(ast.left, prec + 1)}^{_print(ast.right, prec)}"
    else:
        text = f"{_print(ast.left, prec)}{ast.op}{_print(ast.right, prec + 1)}"
    return f"({text})" if parent_prec > prec else text
